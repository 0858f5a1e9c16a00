# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

import argparse
import os
import sys
from logging import getLogger
from logging.config import fileConfig

import aalto
import aalto.scripts.master_actions
from aalto.action import execute_action, list_actions

# load logging config
fileConfig(os.path.join(os.path.dirname(aalto.__file__), 'resources/logger.ini'))
logger = getLogger('aalto')

# flag -> RunConfig field
FLAG_FIELDS = {
    'd': 'd',
    'm': 'm',
    'seed': 'seed',
    'samples': 'n_samples',
    'lines': 'n_lines',
    'mc_samples': 'mc_samples',
    'points': 'n_points',
    'singular_samples': 'singular_samples',
    'c6_budget': 'c6_budget',
    'max_table_entries': 'max_table_entries',
    'grid': 'grid',
    'oversample': 'oversample',
    'format': 'output_format',
    'output': 'output_path',
    'strict': 'strict_mode'
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='aalto',
        description='Nodal volume variance toolkit for arithmetic random waves. '
                    'Use "aalto list" to see the actions.')
    parser.add_argument("action", help="Action to execute", type=str)
    parser.add_argument("--config", help="JSONC configuration file with a RUN block", type=str)
    parser.add_argument("--d", help="Dimension", type=int)
    parser.add_argument("--m", help='m or m range, e.g. 5, 1..80, 1..49:odd, 3,5,7, 1..100:3', type=str)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--samples", help="Waves sampled by simulate", type=int)
    parser.add_argument("--lines", help="Crofton lines per wave", type=int)
    parser.add_argument("--mc-samples", dest='mc_samples', help="Monte Carlo samples per K2 point", type=int)
    parser.add_argument("--points", help="K2 diagnostic points", type=int)
    parser.add_argument("--singular-samples", dest='singular_samples', type=int)
    parser.add_argument("--c6-budget", dest='c6_budget', help="Work budget for C(6) and order-6 integrals", type=int)
    parser.add_argument("--max-table-entries", dest='max_table_entries', type=int)
    parser.add_argument("--grid", help="Quadrature points per axis", type=int)
    parser.add_argument("--oversample", help="Transect samples per shortest period", type=int)
    parser.add_argument("--format", choices=['json', 'csv'])
    parser.add_argument("--output", help="Output file, standard output when omitted", type=str)
    parser.add_argument("--strict", action=argparse.BooleanOptionalAction, default=None,
                        help="Reject d = 4 with even m")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logger.debug(f'Action:  {args.action}')
    logger.debug(f'Config file:  {args.config}')
    if args.action == 'list':
        list_actions()
        return 0
    overrides = {field: getattr(args, flag) for flag, field in FLAG_FIELDS.items()}
    return execute_action(args.action, args.config, overrides)


if __name__ == '__main__':
    sys.exit(main())
