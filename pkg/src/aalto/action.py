# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Subcommands as registered actions, and the code that runs them."""
from logging import getLogger
from typing import Callable, Iterable, List, Tuple

from aalto.context import Context
from aalto.exceptions import BudgetExceeded, ConfigError
from aalto.interface_methods import (dump_csv, dump_json, format_to_table,
                                     write_artifact)
from aalto.operation_manager import OperationManager

logger = getLogger('aalto')

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

# dict containing information of all defined actions
registered_actions = {}

TableFunction = Callable[[dict], Tuple[List[str], Iterable[list]]]


def action(name: str = None, dependencies: List[str] = [], table: TableFunction = None,
           single_m: bool = False) -> Callable[[Context], dict]:
    """Wrapper function for actions.

    Creates and registers an action. An action takes the Context and
    returns a JSON-ready dict.

    Arguments
    ----------
    name
        The name of the action, that acts as a key.
        Also used in printed messages.
    dependencies
        Actions whose output this one builds on; they are noted at action start.
    table
        Turns the returned dict into (header, rows) for CSV output.
        Actions without it only write JSON.
    single_m
        If true, the action refuses an m range.
    """
    def wrapper(func):
        action_name = name
        if action_name is None:
            action_name = func.__name__.replace('_', '-')
        ActionRegisteration(func, action_name, set(dependencies), table=table,
                            single_m=single_m)
        return func
    return wrapper


class ActionRegisteration:
    """The registeration information of an action."""

    def __init__(self, function: Callable[[Context], dict], name: str, dependencies: set = set(),
                 baseactions: set = None, table: TableFunction = None, single_m: bool = False):
        self.function = function
        self.name = name
        self.dependencies = set(dependencies)
        self.baseactions = baseactions if baseactions is not None else {name}
        self.table = table
        self.single_m = single_m
        self.register()

    def register(self):
        """Adds self to a global dictionary of all actions."""
        registered_actions[self.name] = self

    def pre_exec_check(self, context: Context):
        """Notify dependencies and check the run config suits the action.

        Raises
        ------
        ConfigError
            For an m range given to a single-m action, or CSV output
            requested from an action without a table.
        """
        self.notify_dependencies()
        config = context.run_config
        if self.single_m and len(config.m_values) > 1:
            raise ConfigError(f'{self.name} takes a single m, got {len(config.m_values)} values')
        if config.output_format == 'csv' and self.table is None:
            raise ConfigError(f'{self.name} writes JSON only')

    def notify_dependencies(self):
        for dep in sorted(self.dependencies):
            logger.info(f'Note: {self.name} also runs the computations of {dep}')

    def render(self, record: dict, output_format: str) -> str:
        if output_format == 'csv':
            header, rows = self.table(record)
            return dump_csv(header, rows)
        return dump_json(record)


def create_multiaction(action_name: str, subactions: List[str], description: str = '') -> Callable[[Context], dict]:
    """Creates and registers an action that executes the subactions in order
    and collects their records under their names.
    Subactions must be defined first, because the function uses registered definitions!

    A subaction that reports partial output makes the whole record partial;
    skipped parts are listed as 'subaction: part'.
    """
    registerations = [registered_actions[sa] for sa in subactions]
    baseactions = {
        baseaction for r in registerations for baseaction in r.baseactions}
    dependencies = {
        dep for r in registerations for dep in r.dependencies} - baseactions

    def func(context: Context) -> dict:
        record = {'partial': False, 'skipped': []}
        for r in registerations:
            with OperationManager(f'Running "{r.name}"'):
                sub_record = r.function(context)
            record[r.name] = sub_record
            if sub_record.get('partial'):
                record['partial'] = True
                record['skipped'].extend(f'{r.name}: {part}' for part in sub_record.get('skipped', []))
        return record
    func.__doc__ = description
    ActionRegisteration(func, action_name, dependencies, baseactions,
                        single_m=any(r.single_m for r in registerations))
    return func


def check_action_validity(action_name: str) -> bool:
    """Check if given action is registered."""
    if len(registered_actions) == 0:
        logger.error("No actions defined")
        return False
    if registered_actions.get(action_name) is None:
        logger.error("No action " + action_name + " found.")
        logger.error("Available actions: " +
                     ', '.join(sorted(registered_actions.keys())))
        return False
    return True


def execute_action(action_name: str, config_filename: str = None, overrides: dict = None) -> int:
    """Prepare and execute given action, then write its artifact.

    Every artifact embeds the command and the run config.

    Returns
    -------
    int
        0 on success, 2 on a configuration error, 3 when a budget stopped
        the action or parts of its output were skipped, 1 otherwise.
    """
    logger.info('------')
    try:
        with OperationManager('Starting to execute "' + action_name + '"'):
            if not check_action_validity(action_name):
                return EXIT_CONFIG
            context = Context(action_name, config_filename, overrides)
            registeration = registered_actions[action_name]
            registeration.pre_exec_check(context)
        config = context.run_config
        with OperationManager('Computing "' + action_name + '"'):
            record = registeration.function(context)
        record = {'command': action_name, 'config': config.to_dict(), **record}
        write_artifact(registeration.render(record, config.output_format), config.output_path)
    except ConfigError as err:
        logger.error(f'Configuration error: {err}')
        return EXIT_CONFIG
    except BudgetExceeded as err:
        logger.error(f'Budget exceeded: {err}')
        return EXIT_BUDGET
    except Exception as err:
        logger.error(f'{action_name} failed: {err}')
        return EXIT_FAILURE
    if record.get('partial'):
        logger.warning(f'Partial output, skipped: {", ".join(record.get("skipped", []))}')
        return EXIT_BUDGET
    return EXIT_OK


def list_actions():
    logger.info('-------------------------------')
    logger.info('List of available actions')
    logger.info('-------------------------------')
    rows = [[key, registeration.function.__doc__ or 'No description available.']
            for key, registeration in sorted(registered_actions.items())]
    logger.info(format_to_table([[' '.join(str(cell).split()) for cell in row] for row in rows]))
