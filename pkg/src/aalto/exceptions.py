# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Exceptions raised by aalto operations.

The CLI maps ConfigError to exit code 2 and BudgetExceeded to exit code 3.
"""


class ConfigError(ValueError):
    """Invalid run configuration or command line flags."""


class StrictModeError(ConfigError):
    """d = 4 with an even m while strict mode is on."""


class BudgetExceeded(RuntimeError):
    """The estimated work of an operation exceeds its configured budget."""


class TableSizeError(BudgetExceeded):
    """A sum table would exceed its entry cap or the 64-bit key width."""


class DegenerateFrameError(ArithmeticError):
    """|r(x)| = 1, so X(x) and Y(x) are not defined."""


class SeriesDomainError(ArithmeticError):
    """The K2 series is refused outside |r(x)| < 1 - 1/(16d)."""
