#! /usr/bin/env python

"""Render maps of elections and robustness curves as SVG.

Output is byte-identical for identical input: the SVG hash salt is fixed
and no date is written.

Global ATTRIBUTES
The following module attributes are assigned default values that can be
overriden by defining an attribute of the same name in a configuration
file (see elecmaps.config.template.py):
    'MAP_SIZE', 'POINT_SIZE', 'PALETTE'

----MARKERS----  Marker names and their matplotlib codes.

CLASSES
PointStyle  Colour, marker, size and legend group of a map point.

FUNCTIONS
default_styles()  Styles by culture group and truncation method.
read_styles()  Styles from a style CSV.
write_styles()  Styles as a style CSV.
check_styles()  Raise if styles and labels do not match.
render_map()  SVG scatter of an embedding.
render_curves()  SVG of robustness curves.
"""

import io
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

import matplotlib
matplotlib.use('Agg')
from matplotlib.figure import Figure  # noqa: E402

import elecmaps
from .cultures import DatasetEntry
from .embedding import Embedding2D
from .errors import StyleError
from .experiments import CurvePoint
from .lib.textio import (Source, Target, csv_rows, csv_text, read_text,
                         write_text)

log = logging.getLogger(__name__)

# Width and height of a map, inches.
MAP_SIZE = 8.0
POINT_SIZE = 30.0
PALETTE = ['#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
           '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22', '#17becf',
           '#393b79', '#637939', '#8c6d31', '#843c39', '#7b4173',
           '#3182bd', '#e6550d', '#31a354', '#756bb1']

settings = ['MAP_SIZE', 'POINT_SIZE', 'PALETTE']
elecmaps._config_import(vars(), settings)

MARKERS = {'circle': 'o', 'triangle': '^', 'cross': 'x', 'star': '*'}

TRUNCATION_MARKERS = {None: 'circle', 'top_k': 'triangle',
                      'random_cut': 'cross', 'random_drop': 'star'}

_SVG_SALT = 'elecmaps'
_STYLE_HEADER = ['label', 'color', 'marker', 'size']


@dataclass(frozen=True)
class PointStyle:
    """Style of a map point.

    ++color++  Matplotlib colour, for example '#1f77b4' or 'black'.
    ++marker++  One of MARKERS.
    ++size++  Marker area, points squared.
    ++group++  Legend entry the point belongs to. Points without a group
        have no legend entry.
    """

    color: str = 'black'
    marker: str = 'circle'
    size: float = POINT_SIZE
    group: Optional[str] = None


def default_styles(entries: Optional[Sequence[DatasetEntry]] = None,
                   labels: Sequence[str] = ()) -> Dict[str, PointStyle]:
    """Return styles of dataset +entries+ or of plain +labels+.

    Dataset elections are coloured by culture group, in order of first
    appearance, and marked by truncation: complete circle, top-k
    triangle, random cut cross, random drop star. Plain labels are
    black circles.
    """
    if entries is None:
        return {label: PointStyle(size=POINT_SIZE) for label in labels}
    colours: Dict[str, str] = {}
    styles = {}
    for entry in entries:
        if entry.group not in colours:
            colours[entry.group] = PALETTE[len(colours) % len(PALETTE)]
        method = entry.truncation.method if entry.truncation else None
        marker = TRUNCATION_MARKERS[method]
        group = entry.group if method is None else \
            f'{entry.group} ({method.replace("_", " ")})'
        styles[entry.election.label] = PointStyle(colours[entry.group],
                                                  marker, POINT_SIZE, group)
    return styles


def read_styles(source: Source) -> Dict[str, PointStyle]:
    """Return styles from CSV 'label,color,marker,size[,group]'.

    Raises StyleError on a malformed row or unknown marker.
    """
    rows = csv_rows(read_text(source))
    if not rows or rows[0][:4] != _STYLE_HEADER:
        raise StyleError("style CSV must start with a "
                         "'label,color,marker,size[,group]' header")
    styles = {}
    for number, row in enumerate(rows[1:], start=2):
        if len(row) < 4:
            raise StyleError(f"style CSV row {number} has {len(row)} "
                             f"fields, expected at least 4")
        label, color, marker, size = row[:4]
        if marker not in MARKERS:
            raise StyleError(f"style CSV row {number}: unknown marker "
                             f"{marker!r}, expected one of "
                             f"{', '.join(MARKERS)}")
        try:
            size = float(size)
        except ValueError:
            raise StyleError(f"style CSV row {number}: size is not a "
                             f"number: {size!r}") from None
        group = row[4] if len(row) > 4 and row[4] else None
        styles[label] = PointStyle(color, marker, size, group)
    return styles


def write_styles(styles: Mapping[str, PointStyle],
                 target: Target = None) -> str:
    rows = [_STYLE_HEADER + ['group']]
    rows += [[label, s.color, s.marker, f'{s.size:g}', s.group or '']
             for label, s in styles.items()]
    text = csv_text(rows)
    write_text(text, target)
    return text


def check_styles(styles: Mapping[str, PointStyle], labels: Sequence[str]):
    """Raise StyleError listing labels without a style and styles
    without a label."""
    missing = [label for label in labels if label not in styles]
    unknown = sorted(set(styles).difference(labels))
    if missing or unknown:
        parts = []
        if missing:
            parts.append(f"no style for {', '.join(missing)}")
        if unknown:
            parts.append(f"style for unknown label(s) {', '.join(unknown)}")
        raise StyleError("; ".join(parts))


def _svg(fig: Figure) -> str:
    buffer = io.StringIO()
    with matplotlib.rc_context({'svg.hashsalt': _SVG_SALT,
                                'svg.fonttype': 'none'}):
        fig.savefig(buffer, format='svg', metadata={'Date': None})
    return buffer.getvalue()


def render_map(embedding: Embedding2D,
               styles: Optional[Mapping[str, PointStyle]] = None,
               target: Target = None, title: Optional[str] = None) -> str:
    """Write SVG scatter of +embedding+ and return the SVG text.

    +styles+  Style of every label. Default black circles.
    +target+  Path or text stream to write to, if any.

    Axes have equal scale and no ticks. Points are drawn in label order;
    the legend lists groups in order of first appearance.

    Raises StyleError if +styles+ and the embedding's labels differ.
    """
    if styles is None:
        styles = default_styles(labels=embedding.labels)
    check_styles(styles, embedding.labels)
    fig = Figure(figsize=(MAP_SIZE, MAP_SIZE))
    ax = fig.add_subplot()
    legend_groups: List[str] = []
    for label, (x, y) in zip(embedding.labels, embedding.points):
        style = styles[label]
        group = style.group
        show = group is not None and group not in legend_groups
        if show:
            legend_groups.append(group)
        ax.scatter([x], [y], c=style.color, marker=MARKERS[style.marker],
                   s=style.size, label=group if show else None,
                   linewidths=1)
    ax.set_aspect('equal', adjustable='datalim')
    ax.set_xticks([])
    ax.set_yticks([])
    if title:
        ax.set_title(title)
    if legend_groups:
        ax.legend(loc='center left', bbox_to_anchor=(1.01, 0.5),
                  fontsize='small', frameon=False)
    fig.tight_layout()
    text = _svg(fig)
    write_text(text, target)
    log.info("rendered map of %d elections, %d legend groups",
             len(embedding.labels), len(legend_groups))
    return text


def render_curves(points: Sequence[CurvePoint], target: Target = None,
                  title: Optional[str] = None) -> str:
    """Write SVG of robustness curves and return the SVG text.

    One line per culture, in order of first appearance, with its
    confidence interval shaded.
    """
    fig = Figure(figsize=(MAP_SIZE, MAP_SIZE * 0.6))
    ax = fig.add_subplot()
    cultures: List[str] = []
    for p in points:
        if p.culture not in cultures:
            cultures.append(p.culture)
    for i, culture in enumerate(cultures):
        curve = sorted((p for p in points if p.culture == culture),
                       key=lambda p: p.parameter)
        xs = [p.parameter for p in curve]
        colour = PALETTE[i % len(PALETTE)]
        ax.plot(xs, [p.mean for p in curve], color=colour, label=culture)
        ax.fill_between(xs, [p.ci_low for p in curve],
                        [p.ci_high for p in curve], color=colour,
                        alpha=0.2, linewidth=0)
    experiments = sorted({p.experiment for p in points})
    xlabel = {'size': 'number of candidates', 'top_k': 'k'}
    ax.set_xlabel(xlabel.get(experiments[0], 'p') if len(experiments) == 1
                  else 'parameter')
    ax.set_ylabel('fraction of diameter')
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    if cultures:
        ax.legend(fontsize='small')
    fig.tight_layout()
    text = _svg(fig)
    write_text(text, target)
    return text
