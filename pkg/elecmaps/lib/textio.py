#! /usr/bin/env python

"""Text and CSV input/output helpers.

FUNCTIONS
write_text()  Write text to a path or stream.
read_text()  Read text from a path or stream.
csv_text()  Rows as CSV text.
csv_rows()  Non-empty rows of CSV text.
"""

import csv
import io
from pathlib import Path
from typing import Iterable, List, Sequence, TextIO, Union

Target = Union[str, Path, TextIO, None]
Source = Union[str, Path, TextIO]


def write_text(text: str, target: Target):
    """Write +text+ to +target+, a path or text stream. None is a no-op."""
    if target is None:
        return
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding='utf-8')
    else:
        target.write(text)


def read_text(source: Source) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding='utf-8')
    return source.read()


def csv_text(rows: Iterable[Sequence]) -> str:
    """Return +rows+ as CSV with '\\n' line endings."""
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator='\n').writerows(rows)
    return buffer.getvalue()


def csv_rows(text: str) -> List[List[str]]:
    return [row for row in csv.reader(text.splitlines()) if row]
