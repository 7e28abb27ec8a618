"""Tests for elecmaps.preflib."""

import io
from collections import Counter

import pytest

from elecmaps.election import Election, Vote
from elecmaps.errors import CapabilityError, PreflibParseError, PreflibWarning
from elecmaps.preflib import (dataset_of, parse_preflib, read_preflib,
                              scan_dataset_dir, write_preflib)

HEADER = """\
# FILE NAME: sample.soc
# TITLE: Sample
# DATA TYPE: soc
# NUMBER ALTERNATIVES: 3
# NUMBER VOTERS: 3
# NUMBER UNIQUE ORDERS: 2
"""


def test_read_soc(preflib_dir):
    header, e = read_preflib(preflib_dir / '00001-00000001.soc')
    assert header.title == 'Committee vote'
    assert header.number_voters == 5 and header.number_unique_orders == 3
    assert header.extra == {'DESCRIPTION': 'Three alternatives, complete '
                                           'orders'}
    assert e.label == '00001-00000001'
    assert e.candidate_names == ('Apple', 'Banana', 'Cherry')
    assert [v.top for v in e.votes] == [(0, 1, 2)] * 2 + [(1, 2, 0)] * 2 \
        + [(2, 0, 1)]


def test_read_soi(preflib_dir):
    header, e = read_preflib(preflib_dir / '00001-00000002.soi')
    assert header.data_type == 'soi'
    assert e.m == 4 and e.n == 4
    assert not e.is_complete
    assert [v.top for v in e.votes] == [(3, 0), (3, 0), (1,), (2, 0, 1, 3)]


def test_parse_stream_and_label():
    text = HEADER + '2: 1,2,3\n1: 3,2,1\n'
    _, e = parse_preflib(io.StringIO(text))
    assert e.label == 'sample'
    _, e = parse_preflib(text, 'other.soc')
    assert e.label == 'other'
    assert e.candidate_names is None


def test_whitespace_and_blank_lines():
    text = HEADER + '\n  2 :  1 , 2 ,3  \n\n1:3,2,1\n'
    _, e = parse_preflib(text)
    assert e == Election.from_orders([(0, 1, 2)] * 2 + [(2, 1, 0)], 3)


@pytest.mark.parametrize('line, message', [
    ('1: 1,x,3', "alternative id is not an integer: 'x'"),
    ('1: 1,2,4', 'alternative 4 out of range 1..3'),
    ('1: 1,1,2', 'duplicate alternative 1'),
    ('1: 1,2', 'soc line ranks 2 of 3 alternatives'),
    ('-1: 1,2,3', 'negative multiplicity'),
    ('two: 1,2,3', "multiplicity is not an integer: 'two'"),
    ('1 1,2,3', "data line lacks a ':'"),
])
def test_malformed_lines(line, message):
    text = HEADER + '2: 1,2,3\n' + line + '\n'
    with pytest.raises(PreflibParseError) as info:
        parse_preflib(text, 'bad.soc')
    assert info.value.line_number == 8
    assert str(info.value) == f'bad.soc, line 8: {message}'


def test_malformed_metadata():
    with pytest.raises(PreflibParseError, match='line 4'):
        parse_preflib(HEADER.replace('ALTERNATIVES: 3', 'ALTERNATIVES: x'))
    with pytest.raises(PreflibParseError, match='metadata after data'):
        parse_preflib(HEADER + '3: 1,2,3\n# NOTE: late\n')
    with pytest.raises(PreflibParseError, match="unknown data type 'xyz'"):
        parse_preflib(HEADER.replace('soc', 'xyz') + '3: 1,2,3\n')
    without = '# DATA TYPE: soc\n3: 1,2,3\n'
    with pytest.raises(PreflibParseError, match='missing NUMBER'):
        parse_preflib(without)


def test_ties_rejected():
    with pytest.raises(CapabilityError, match='ties'):
        parse_preflib(HEADER + '3: {1,2},3\n')
    tied = HEADER.replace('DATA TYPE: soc', 'DATA TYPE: toc')
    with pytest.raises(CapabilityError, match='toc'):
        parse_preflib(tied + '3: 1,2,3\n')


def test_voter_count_mismatch_warns(caplog):
    with pytest.warns(PreflibWarning, match='NUMBER VOTERS is 3 but lines '
                                            'sum to 2'):
        _, e = parse_preflib(HEADER + '2: 1,2,3\n', 'short.soc')
    assert e.n == 2
    assert 'short.soc' in caplog.text


def test_write_preflib():
    e = Election.from_orders([(0, 1, 2), (2, 1, 0), (0, 1, 2)], 3, 'x')
    assert write_preflib(e) == (
        '# FILE NAME: x.soc\n'
        '# TITLE: x\n'
        '# DATA TYPE: soc\n'
        '# NUMBER ALTERNATIVES: 3\n'
        '# NUMBER VOTERS: 3\n'
        '# NUMBER UNIQUE ORDERS: 2\n'
        '# ALTERNATIVE NAME 1: c1\n'
        '# ALTERNATIVE NAME 2: c2\n'
        '# ALTERNATIVE NAME 3: c3\n'
        '2: 1,2,3\n'
        '1: 3,2,1\n')


def test_written_file_reads_back(preflib_dir, tmp_path):
    header, e = read_preflib(preflib_dir / '00001-00000002.soi')
    text = write_preflib(e, extra={'SOURCE': 'tests'})
    assert '# DATA TYPE: soi' in text
    path = tmp_path / 'copy.soi'
    path.write_text(text)
    copy_header, copy = read_preflib(path)
    assert copy_header.extra == {'SOURCE': 'tests'}
    assert copy_header.alternative_names == header.alternative_names
    assert copy.candidate_names == e.candidate_names
    assert Counter(copy.votes) == Counter(e.votes)


def test_dataset_of(preflib_dir):
    assert dataset_of(preflib_dir / '00001-00000002.soi') == '00001'
    assert dataset_of(preflib_dir / 'custom.soc') == 'custom'


def test_scan(preflib_dir):
    scan = scan_dataset_dir(preflib_dir, seed=0)
    assert [e.label for e in scan.elections] == [
        '00001-00000001', '00001-00000002', '00001-00000003',
        '00002-00000001']
    assert [h.title for h in scan.headers][-1] == 'Club election'
    assert scan.failures == [(
        '00003-00000001.soc',
        '00003-00000001.soc, line 8: alternative 7 out of range 1..3')]


def test_scan_samples_per_dataset(preflib_dir):
    scan = scan_dataset_dir(preflib_dir, seed=4, max_files_per_dataset=2)
    labels = [e.label for e in scan.elections]
    assert sum(label.startswith('00001-') for label in labels) == 2
    assert '00002-00000001' in labels
    again = scan_dataset_dir(preflib_dir, seed=4, max_files_per_dataset=2)
    assert [e.label for e in again.elections] == labels


def test_scan_empty_directory(tmp_path):
    (tmp_path / 'notes.txt').write_text('nothing here')
    with pytest.warns(PreflibWarning, match='no .soc or .soi files'):
        scan = scan_dataset_dir(tmp_path, seed=0)
    assert scan.elections == [] and scan.failures == []


def test_truncated_vote_fields():
    _, e = parse_preflib(HEADER.replace('soc', 'soi') + '3: 2\n')
    assert e.votes[0] == Vote((1,), 3)
    assert e.votes[0].truncated == (0, 2)
