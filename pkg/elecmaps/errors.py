#! /usr/bin/env python

"""Exceptions raised by elecmaps.

Every exception carries an --exit_code-- which the command line surface
returns to the shell:
    0  success
    1  usage
    2  input / parse
    3  capability

CLASSES
ElecMapsError(Exception)  Base for all package exceptions.
UsageError(ElecMapsError)  Invalid command line usage.
ArgumentError(ElecMapsError, ValueError)  Invalid argument value.
InputError(ElecMapsError, ValueError)  Input data unsuitable for operation.
DimensionError(InputError)  Mismatched vector or matrix dimensions.
SizeError(InputError)  Mismatched election sizes.
DegenerateInputError(InputError)  Input has no meaningful value.
EmptyInputError(DegenerateInputError)  Election without votes.
PreflibParseError(InputError)  Malformed Preflib file.
StyleError(InputError)  Style file does not match a map.
PairwiseMatrixError(InputError)  One or more cells of a distance matrix
    failed.
CapabilityError(ElecMapsError)  Operation beyond what is supported.

PreflibWarning(UserWarning)  Recoverable Preflib data issue.
"""

from typing import List, Optional, Tuple


class ElecMapsError(Exception):
    """Base class for exceptions raised by elecmaps."""

    exit_code = 2


class UsageError(ElecMapsError):
    exit_code = 1


class ArgumentError(ElecMapsError, ValueError):
    exit_code = 1


class InputError(ElecMapsError, ValueError):
    exit_code = 2


class DimensionError(InputError):
    pass


class SizeError(InputError):
    pass


class DegenerateInputError(InputError):
    pass


class EmptyInputError(DegenerateInputError):
    pass


class StyleError(InputError):
    pass


class PreflibParseError(InputError):
    """Malformed Preflib file.

    ++line_number++  1-based number of the offending line, if known.
    """

    def __init__(self, message: str, line_number: Optional[int] = None,
                 file_name: Optional[str] = None):
        self.line_number = line_number
        self.file_name = file_name
        where = ''
        if file_name is not None:
            where += file_name
        if line_number is not None:
            where += ('' if not where else ', ') + f'line {line_number}'
        super().__init__(f'{where}: {message}' if where else message)


class PairwiseMatrixError(InputError):
    """Failure of one or more cells of a distance matrix.

    ++failures++  List of (label_i, label_j, exception) for every cell
        that failed. Exit code is that of the first failure.
    """

    def __init__(self, failures: List[Tuple[str, str, Exception]]):
        assert failures
        self.failures = failures
        first = failures[0][2]
        self.exit_code = getattr(first, 'exit_code', 2)
        lines = [f'{len(failures)} cell(s) failed:']
        lines += [f'  ({a}, {b}): {type(exc).__name__}: {exc}'
                  for a, b, exc in failures]
        super().__init__('\n'.join(lines))


class CapabilityError(ElecMapsError):
    exit_code = 3


class PreflibWarning(UserWarning):
    pass
