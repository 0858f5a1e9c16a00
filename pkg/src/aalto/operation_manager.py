# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Logging and error reporting around long-running computations."""
from datetime import datetime
from logging import getLogger
from time import perf_counter
from traceback import format_exception

logger = getLogger('aalto')


class OperationManager:
    """Context for one logged step.

    Logs the timestamped message on entry, the traceback of an escaping
    exception at ERROR level and a separator on exit. Exceptions are not
    swallowed.
    """

    def __init__(self, message: str):
        self.message = message
        self.started = None

    def __enter__(self):
        self.started = perf_counter()
        logger.info(format_message(self.message))
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if traceback is not None:
            logger.error(''.join(format_exception(
                exc_type, exc_value, traceback)))
        logger.debug(f'{self.message}: {perf_counter() - self.started:.2f} s')
        logger.info('------')


def format_message(mssg: str) -> str:
    '''Add timestamp before the message.'''
    time_string = datetime.now().strftime('%Y-%m-%d %H:%M:%S')
    return f'[{time_string}] {mssg}'
