"""Tests for elecmaps.render."""

import io

import numpy as np
import pytest

from conftest import antagonism, identity
from elecmaps.cultures import CultureSpec, DatasetEntry, TruncationSpec
from elecmaps.embedding import Embedding2D
from elecmaps.errors import StyleError
from elecmaps.experiments import CurvePoint
from elecmaps.render import (PointStyle, check_styles, default_styles,
                             read_styles, render_curves, render_map,
                             write_styles)


@pytest.fixture
def embedding():
    points = np.array([[0.0, 0.0], [1.0, 0.5], [0.3, 1.0]])
    return Embedding2D(('id', 'an', 'an_topk'), points, 0.0, 'mds')


@pytest.fixture
def entries():
    return [DatasetEntry(identity(4, 2, 'id'), 'ID', CultureSpec('id', 4, 2)),
            DatasetEntry(antagonism(4, 2, 'an'), 'AN',
                         CultureSpec('an', 4, 2)),
            DatasetEntry(antagonism(4, 2, 'an_topk'), 'AN',
                         CultureSpec('an', 4, 2),
                         TruncationSpec('top_k', k=2))]


def test_default_styles(entries):
    styles = default_styles(entries)
    assert list(styles) == ['id', 'an', 'an_topk']
    assert styles['id'].color != styles['an'].color
    assert styles['an'].color == styles['an_topk'].color
    assert (styles['an'].marker, styles['an_topk'].marker) == \
        ('circle', 'triangle')
    assert styles['an'].group == 'AN'
    assert styles['an_topk'].group == 'AN (top k)'
    plain = default_styles(labels=['a', 'b'])
    assert plain['a'] == PointStyle()


def test_styles_csv(entries):
    styles = default_styles(entries)
    text = write_styles(styles)
    assert text.splitlines()[0] == 'label,color,marker,size,group'
    assert read_styles(io.StringIO(text)) == styles


def test_styles_csv_without_group():
    styles = read_styles(io.StringIO('label,color,marker,size\n'
                                     'a,red,star,12\n'))
    assert styles == {'a': PointStyle('red', 'star', 12.0, None)}


@pytest.mark.parametrize('text, message', [
    ('name,color\n', 'header'),
    ('label,color,marker,size\na,red,star\n', 'row 2 has 3 fields'),
    ('label,color,marker,size\na,red,hexagon,3\n', "unknown marker "
                                                   "'hexagon'"),
    ('label,color,marker,size\na,red,star,big\n', "size is not a number"),
])
def test_styles_csv_errors(text, message):
    with pytest.raises(StyleError, match=message):
        read_styles(io.StringIO(text))


def test_check_styles():
    styles = {'a': PointStyle(), 'z': PointStyle()}
    check_styles(styles, ['a', 'z'])
    with pytest.raises(StyleError) as info:
        check_styles(styles, ['a', 'b'])
    assert str(info.value) == \
        'no style for b; style for unknown label(s) z'


def test_render_map(embedding, entries, tmp_path):
    path = tmp_path / 'map.svg'
    text = render_map(embedding, default_styles(entries), path,
                      title='Test map')
    assert '<svg' in text
    assert path.read_text(encoding='utf-8') == text
    assert 'AN (top k)' in text and 'Test map' in text


def test_render_map_deterministic(embedding):
    assert render_map(embedding) == render_map(embedding)


def test_render_map_style_mismatch(embedding):
    with pytest.raises(StyleError, match='no style for an'):
        render_map(embedding, {'id': PointStyle()})


def test_render_curves():
    points = [CurvePoint('top_k', 'ic', k, 1 / k, 0.9 / k, 1.1 / k, 5)
              for k in (1, 2, 3)]
    points += [CurvePoint('top_k', 'id', k, 0.0, 0.0, 0.0, 5)
               for k in (3, 1, 2)]
    buffer = io.StringIO()
    text = render_curves(points, buffer)
    assert buffer.getvalue() == text
    assert '<svg' in text
    assert 'fraction of diameter' in text
    assert render_curves(points) == text
