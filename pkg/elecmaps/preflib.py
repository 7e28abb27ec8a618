#! /usr/bin/env python

"""Read and write Preflib ordinal election files.

Supports the strict order formats: '.soc' (complete) and '.soi'
(top-truncated). A file comprises a metadata block of '# KEY: VALUE'
lines followed by data lines '<multiplicity>: <id>,<id>,...' listing
1-based alternative ids from most preferred down. Alternatives a line
does not list are in the truncated part of its votes.

Global ATTRIBUTES
The following module attributes are assigned default values that can be
overriden by defining an attribute of the same name in a configuration
file (see elecmaps.config.template.py):
    'MAX_FILES_PER_DATASET', 'SCAN_WORKERS'

CLASSES
PreflibHeader  Metadata of a Preflib file.
DatasetScan  Elections and failures of a directory scan.

FUNCTIONS
parse_preflib()  Header and election of a Preflib file.
read_preflib()  Header and election of a Preflib file on disk.
write_preflib()  Preflib text of an election.
scan_dataset_dir()  Elections of a directory of Preflib files, sampled per
    dataset.
"""

import logging
import re
import warnings
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, TextIO, Tuple, Union

import elecmaps
from .election import Election, Vote
from .errors import CapabilityError, PreflibParseError, PreflibWarning
from .lib import seeding
from .lib.parallel import map_tasks

log = logging.getLogger(__name__)

MAX_FILES_PER_DATASET = 10
SCAN_WORKERS = 1

settings = ['MAX_FILES_PER_DATASET', 'SCAN_WORKERS']
elecmaps._config_import(vars(), settings)

DATA_TYPES = ('soc', 'soi')
# Preflib formats with ties, recognised only to be rejected.
TIED_TYPES = ('toc', 'toi')

_ALTERNATIVE_NAME = re.compile(r'ALTERNATIVE NAME (\d+)$')
_DATASET_PREFIX = re.compile(r'^(\d+)-')


@dataclass
class PreflibHeader:
    """Metadata of a Preflib file.

    ++extra++  Every other 'KEY: VALUE' metadata line, in file order,
        values verbatim.
    """

    file_name: str = ''
    title: str = ''
    data_type: str = 'soc'
    number_alternatives: int = 0
    number_voters: int = 0
    number_unique_orders: int = 0
    alternative_names: Dict[int, str] = field(default_factory=dict)
    extra: Dict[str, str] = field(default_factory=dict)

    def lines(self) -> List[str]:
        """Return metadata lines, known keys first."""
        lines = [f'# FILE NAME: {self.file_name}',
                 f'# TITLE: {self.title}']
        lines += [f'# {key}: {value}' for key, value in self.extra.items()]
        lines += [f'# DATA TYPE: {self.data_type}',
                  f'# NUMBER ALTERNATIVES: {self.number_alternatives}',
                  f'# NUMBER VOTERS: {self.number_voters}',
                  f'# NUMBER UNIQUE ORDERS: {self.number_unique_orders}']
        lines += [f'# ALTERNATIVE NAME {i}: {name}'
                  for i, name in sorted(self.alternative_names.items())]
        return lines


def _integer(value: str, key: str, line_number: int,
             file_name: Optional[str]) -> int:
    try:
        return int(value)
    except ValueError:
        raise PreflibParseError(f"{key} is not an integer: {value!r}",
                                line_number, file_name) from None


def _parse_metadata(line: str, header: PreflibHeader, line_number: int,
                    file_name: Optional[str]):
    key, sep, value = line.lstrip('#').partition(':')
    key, value = key.strip(), value.strip()
    if not sep:
        return
    name = _ALTERNATIVE_NAME.match(key)
    if name:
        header.alternative_names[int(name.group(1))] = value
    elif key == 'FILE NAME':
        header.file_name = value
    elif key == 'TITLE':
        header.title = value
    elif key == 'DATA TYPE':
        header.data_type = value.lower()
    elif key == 'NUMBER ALTERNATIVES':
        header.number_alternatives = _integer(value, key, line_number,
                                              file_name)
    elif key == 'NUMBER VOTERS':
        header.number_voters = _integer(value, key, line_number, file_name)
    elif key == 'NUMBER UNIQUE ORDERS':
        header.number_unique_orders = _integer(value, key, line_number,
                                               file_name)
    else:
        header.extra[key] = value


def _parse_order(line: str, header: PreflibHeader, line_number: int,
                 file_name: Optional[str]) -> Tuple[int, Tuple[int, ...]]:
    count, sep, listed = line.partition(':')
    if not sep:
        raise PreflibParseError("data line lacks a ':'", line_number,
                                file_name)
    if '{' in listed:
        raise CapabilityError(f"{file_name or 'preflib text'} line "
                              f"{line_number}: ties are not supported")
    try:
        multiplicity = int(count.strip())
    except ValueError:
        raise PreflibParseError(f"multiplicity is not an integer: "
                                f"{count.strip()!r}", line_number,
                                file_name) from None
    if multiplicity < 0:
        raise PreflibParseError("negative multiplicity", line_number,
                                file_name)
    m = header.number_alternatives
    top = []
    for item in filter(None, (part.strip() for part in listed.split(','))):
        try:
            alternative = int(item)
        except ValueError:
            raise PreflibParseError(f"alternative id is not an integer: "
                                    f"{item!r}", line_number,
                                    file_name) from None
        if not 1 <= alternative <= m:
            raise PreflibParseError(f"alternative {alternative} out of "
                                    f"range 1..{m}", line_number, file_name)
        if alternative - 1 in top:
            raise PreflibParseError(f"duplicate alternative {alternative}",
                                    line_number, file_name)
        top.append(alternative - 1)
    if header.data_type == 'soc' and len(top) != m:
        raise PreflibParseError(f"soc line ranks {len(top)} of {m} "
                                f"alternatives", line_number, file_name)
    return multiplicity, tuple(top)


def parse_preflib(source: Union[str, TextIO],
                  file_name: Optional[str] = None
                  ) -> Tuple[PreflibHeader, Election]:
    """Return (header, election) of Preflib text.

    +source+  Preflib text or a text stream.
    +file_name+  Name reported in errors and used for the election label
        (stem). Default the header's FILE NAME.

    Each data line expands to multiplicity identical votes, in file
    order. Blank lines are ignored and whitespace around separators
    tolerated. A PreflibWarning is issued if the multiplicities do not
    sum to the declared NUMBER VOTERS.

    Raises PreflibParseError with the line number of a malformed line,
    CapabilityError for formats with ties.
    """
    text = source if isinstance(source, str) else source.read()
    header = PreflibHeader()
    votes: List[Vote] = []
    in_data = False
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith('#'):
            if in_data:
                raise PreflibParseError("metadata after data lines",
                                        line_number, file_name)
            _parse_metadata(line, header, line_number, file_name)
            continue
        if not in_data:
            in_data = True
            if header.data_type in TIED_TYPES:
                raise CapabilityError(f"data type {header.data_type} (ties) "
                                      f"is not supported")
            if header.data_type not in DATA_TYPES:
                raise PreflibParseError(f"unknown data type "
                                        f"{header.data_type!r}", line_number,
                                        file_name)
            if header.number_alternatives < 1:
                raise PreflibParseError("missing NUMBER ALTERNATIVES",
                                        line_number, file_name)
        multiplicity, top = _parse_order(line, header, line_number, file_name)
        votes += [Vote(top, header.number_alternatives)] * multiplicity
    if header.number_alternatives < 1:
        raise PreflibParseError("missing NUMBER ALTERNATIVES", None,
                                file_name)
    file_name = file_name or header.file_name
    if header.number_voters != len(votes):
        message = (f"{file_name or 'preflib text'}: NUMBER VOTERS is "
                   f"{header.number_voters} but lines sum to {len(votes)}")
        log.warning(message)
        warnings.warn(message, PreflibWarning)
    m = header.number_alternatives
    names = None
    if header.alternative_names:
        names = tuple(header.alternative_names.get(i + 1, f'c{i + 1}')
                      for i in range(m))
    label = Path(file_name).stem if file_name else header.title or None
    return header, Election(m, tuple(votes), label, names)


def read_preflib(path: Union[str, Path]) -> Tuple[PreflibHeader, Election]:
    """Return (header, election) of Preflib file at +path+."""
    path = Path(path)
    with path.open(encoding='utf-8') as f:
        return parse_preflib(f, path.name)


def write_preflib(e: Election, file_name: Optional[str] = None,
                  title: Optional[str] = None,
                  alternative_names: Optional[Mapping[int, str]] = None,
                  extra: Optional[Mapping[str, str]] = None) -> str:
    """Return Preflib text of election +e+.

    Data type 'soc' if every vote is complete, otherwise 'soi'. Distinct
    votes are written once each with their multiplicity, sorted
    lexicographically by listed ids.

    +file_name+  Default label of +e+ with the data type extension.
    +title+  Default label of +e+.
    +alternative_names+  1-based id to name. Default candidate names of
        +e+, if any, otherwise 'c<id>'.
    +extra+  Further metadata lines.
    """
    data_type = 'soc' if e.is_complete else 'soi'
    label = e.label or 'election'
    if alternative_names is None:
        names = e.candidate_names or tuple(f'c{i + 1}' for i in range(e.m))
        alternative_names = {i + 1: name for i, name in enumerate(names)}
    unique, counts = e.unique_votes
    orders = sorted((tuple(c + 1 for c in vote.top), int(count))
                    for vote, count in zip(unique, counts))
    header = PreflibHeader(
        file_name=file_name or f'{label}.{data_type}',
        title=label if title is None else title,
        data_type=data_type, number_alternatives=e.m, number_voters=e.n,
        number_unique_orders=len(orders),
        alternative_names=dict(alternative_names), extra=dict(extra or {}))
    lines = header.lines()
    lines += [f'{count}: ' + ','.join(map(str, order))
              for order, count in orders]
    return '\n'.join(lines) + '\n'


@dataclass
class DatasetScan:
    """Result of scan_dataset_dir.

    ++elections++  Parsed elections, labeled by file stem, ordered by file
        name.
    ++failures++  (file name, message) of every file that failed to read
        or parse.
    """

    elections: List[Election] = field(default_factory=list)
    headers: List[PreflibHeader] = field(default_factory=list)
    failures: List[Tuple[str, str]] = field(default_factory=list)


def dataset_of(path: Path) -> str:
    """Return dataset of a Preflib file, its '#####-' file number prefix.

    A file without the prefix is a dataset of its own.
    """
    match = _DATASET_PREFIX.match(path.name)
    return match.group(1) if match else path.stem


def _load(path: Path):
    try:
        header, election = read_preflib(path)
    except (OSError, UnicodeDecodeError, PreflibParseError,
            CapabilityError) as err:
        return path.name, str(err)
    return header, election


def scan_dataset_dir(path: Union[str, Path], seed: int,
                     max_files_per_dataset: Optional[int] = None,
                     workers: Optional[int] = None) -> DatasetScan:
    """Return elections of the Preflib files in directory +path+.

    Of a dataset with more than +max_files_per_dataset+ files, a uniform
    sample of that many, drawn from a stream of +seed+ and the dataset
    name, so independent of other datasets in the directory.

    +max_files_per_dataset+  Default MAX_FILES_PER_DATASET.
    +workers+  Processes parsing files. Default SCAN_WORKERS.

    Failing files are recorded in the result's failures and logged; the
    scan continues. An empty directory warns and returns an empty scan.
    """
    limit = MAX_FILES_PER_DATASET if max_files_per_dataset is None \
        else max_files_per_dataset
    workers = SCAN_WORKERS if workers is None else workers
    files = sorted(p for p in Path(path).iterdir()
                   if p.suffix.lower().lstrip('.') in DATA_TYPES)
    if not files:
        message = f"no .soc or .soi files in {path}"
        log.warning(message)
        warnings.warn(message, PreflibWarning)
        return DatasetScan()
    datasets: Dict[str, List[Path]] = {}
    for p in files:
        datasets.setdefault(dataset_of(p), []).append(p)
    chosen = []
    for name, members in datasets.items():
        if len(members) > limit:
            key = zlib.crc32(name.encode('utf-8'))
            rng = seeding.stream(seed, seeding.SAMPLE_KEY, key)
            picks = rng.choice(len(members), size=limit, replace=False)
            log.info("dataset %s: sampled %d of %d files", name, limit,
                     len(members))
            members = [members[i] for i in sorted(picks)]
        chosen += members
    scan = DatasetScan()
    for result in map_tasks(_load, sorted(chosen), workers):
        if isinstance(result[0], PreflibHeader):
            scan.headers.append(result[0])
            scan.elections.append(result[1])
        else:
            log.warning("skipped %s: %s", *result)
            scan.failures.append(result)
    log.info("scanned %s: %d elections from %d datasets, %d failures", path,
             len(scan.elections), len(datasets), len(scan.failures))
    return scan
