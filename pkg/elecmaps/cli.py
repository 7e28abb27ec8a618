#! /usr/bin/env python

"""Command line surface.

Subcommands:
    generate  Write a dataset or a single sampled election as Preflib
        files plus a manifest.
    matrix  Distance matrix CSV of a directory of Preflib files or of a
        dataset recipe.
    dap-report  Diversity, agreement and polarization of every election.
    embed  Coordinates CSV, and optionally an SVG map, of a distance CSV.
    render  SVG of a coordinates CSV or of a robustness curves CSV.
    robustness  Size or truncation robustness curves.
    validate  Check Preflib files and distance CSVs.

Every randomised command requires a seed, passed as --seed or defined by
a 'seed' key of an experiment file. Each randomised stage draws from a
seed derived from it (see ExperimentConfig.stage_seed).

Exit codes: 0 success, 1 usage, 2 input or parse, 3 capability.

An experiment file is a python file whose top level assignments of
lowercase names to literals set fields of ExperimentConfig. It is also an
elecmaps configuration file, so any UPPERCASE module settings it defines
are applied. Command line options override the file's values.

CLASSES
ExperimentConfig  Parameters of an experiment run.

FUNCTIONS
main()  Run the command line application.
"""

import argparse
import ast
import logging
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import elecmaps
from . import (cultures, dap, distances, embedding, experiments, preflib,
               render)
from .cultures import CultureSpec, TruncationSpec
from .election import Election, validate_election
from .errors import ElecMapsError, InputError, UsageError
from .lib import seeding
from .lib.textio import csv_text, read_text

log = logging.getLogger(__name__)

# Randomised stages, each drawing from its own derived seed.
STAGES = ('generate', 'truncate', 'scan', 'metric', 'embed', 'robustness')


@dataclass
class ExperimentConfig:
    """Parameters of an experiment run.

    ++recipe++  Dataset recipe, see cultures.RECIPES.
    ++input_dir++  Directory of Preflib files, in place of a recipe.
    ++culture++  Culture spec string of a single sampled election.
    ++truncation++  Truncation spec string applied to a single election.
    ++m++, ++n++  Candidates and voters of a sampled election, or of the
        robustness experiments. Default the module defaults of cultures
        (generate) or experiments (robustness).
    ++metric++  Metric name, see distances.METRICS.
    ++emk++  Empirical Kemeny strategy kind of the dap metric.
    ++del_mode++  'exact' or 'monte_carlo' evaluation of swap_del.
    ++algorithm++  Embedding algorithm, 'mds' or 'kk'.
    ++normalize++  Normalize distance matrices by their largest entry
        before embedding.
    ++experiment++  Robustness experiment, 'size' or a truncation method.
    ++cultures++  Culture spec strings of robustness experiments.
    ++sizes++  Candidate counts of the size experiment.
    ++levels++  Truncation levels of truncation experiments.
    ++samples++  Samples per robustness curve point.
    ++diameter++  Robustness normalizer. None to compute the diameter of
        the reference dataset.
    ++max_files++  Files sampled per Preflib dataset.
    ++output++  Output file or directory.
    ++svg++  SVG output file.
    ++styles++  Style CSV.
    ++seed++  Global seed.
    ++workers++  Worker processes.
    """

    recipe: Optional[str] = None
    input_dir: Optional[str] = None
    culture: Optional[str] = None
    truncation: Optional[str] = None
    m: Optional[int] = None
    n: Optional[int] = None
    metric: str = 'dap'
    emk: str = 'auto'
    del_mode: str = 'exact'
    algorithm: str = 'mds'
    normalize: bool = False
    experiment: str = 'size'
    cultures: Optional[List[str]] = None
    sizes: Optional[List[int]] = None
    levels: Optional[List[float]] = None
    samples: Optional[int] = None
    diameter: Optional[float] = None
    max_files: Optional[int] = None
    output: Optional[str] = None
    svg: Optional[str] = None
    styles: Optional[str] = None
    seed: Optional[int] = None
    workers: int = 1

    @classmethod
    def from_text(cls, text: str) -> 'ExperimentConfig':
        """Return config from the assignments of experiment file +text+.

        Top level assignments of lowercase names to python literals set
        fields. UPPERCASE names are module settings and are ignored here,
        as is everything else.

        Raises UsageError on an unknown lowercase name or a value that is
        not a literal.
        """
        try:
            tree = ast.parse(text)
        except SyntaxError as err:
            raise UsageError(f"experiment file line {err.lineno}: "
                             f"{err.msg}") from None
        names = {f.name for f in fields(cls)}
        values = {}
        for node in tree.body:
            if not (isinstance(node, ast.Assign) and len(node.targets) == 1
                    and isinstance(node.targets[0], ast.Name)):
                continue
            key = node.targets[0].id
            if key.isupper():
                continue
            if key not in names:
                raise UsageError(f"experiment file line {node.lineno}: "
                                 f"unknown key {key!r}")
            try:
                values[key] = ast.literal_eval(node.value)
            except ValueError:
                raise UsageError(f"experiment file line {node.lineno}: "
                                 f"value of {key!r} is not a "
                                 f"literal") from None
        return cls(**values)

    def to_text(self) -> str:
        """Return config as 'key = literal' lines, one per field."""
        return ''.join(f'{f.name} = {getattr(self, f.name)!r}\n'
                       for f in fields(self))

    def stage_seed(self, stage: str) -> int:
        """Return seed of randomised +stage+, one of STAGES.

        Raises UsageError if no seed is defined.
        """
        if self.seed is None:
            raise UsageError("--seed is required")
        return seeding.derive_seed(self.seed, STAGES.index(stage))

    def metric_spec(self) -> distances.MetricSpec:
        seed = self.stage_seed('metric')
        return distances.MetricSpec(
            self.metric,
            del_mode=distances.DelMode(kind=self.del_mode, seed=seed),
            emk=dap.EmkStrategy(kind=self.emk, seed=seed))


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ints(text: str) -> List[int]:
    return [int(v) for v in text.split(',') if v.strip()]


def _floats(text: str) -> List[float]:
    return [float(v) for v in text.split(',') if v.strip()]


def _strings(text: str) -> List[str]:
    return [v.strip() for v in text.split(';') if v.strip()]


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='elecmaps', description="Maps of elections of "
                     "different sizes.")
    parser.add_argument('--version', action='version',
                        version=f'elecmaps {elecmaps.__version__}')
    common = _Parser(add_help=False)
    common.add_argument('--config', help="experiment / configuration file: "
                        "a .py path or the name of a file in "
                        "elecmaps/config")
    common.add_argument('--seed', type=int)
    common.add_argument('--workers', type=int)
    common.add_argument('-o', '--output')
    common.add_argument('-v', '--verbose', action='store_true')
    sub = parser.add_subparsers(dest='command', metavar='command',
                                parser_class=_Parser)
    sub.required = True

    p = sub.add_parser('generate', parents=[common],
                       help="write elections as Preflib files")
    source = p.add_mutually_exclusive_group()
    source.add_argument('--recipe', choices=cultures.RECIPES)
    source.add_argument('--culture', help="culture spec string, for "
                        "example 'mallows' or 'euclidean:dim=2'")
    p.add_argument('--m', type=int)
    p.add_argument('--n', type=int)
    p.add_argument('--norm-phi', type=float)
    p.add_argument('--alpha', type=float)
    p.add_argument('--dim', type=int)
    p.add_argument('--shape', choices=('cube', 'sphere'))
    p.add_argument('--tree', choices=('balanced', 'caterpillar'))
    p.add_argument('--truncation', help="truncation spec string, for "
                   "example 'top_k:k=4'")
    p.add_argument('--label', help="label of a single election")

    for name, text in (('matrix', "write a distance matrix CSV"),
                       ('dap-report', "write a DAP report CSV")):
        p = sub.add_parser(name, parents=[common], help=text)
        source = p.add_mutually_exclusive_group()
        source.add_argument('--in', dest='input_dir')
        source.add_argument('--recipe', choices=cultures.RECIPES)
        p.add_argument('--max-files', type=int)
        p.add_argument('--emk', choices=('auto', 'exact', 'local_search'))
        if name == 'matrix':
            p.add_argument('--metric', help=', '.join(distances.METRICS))
            p.add_argument('--del-mode', choices=('exact', 'monte_carlo'))
            p.add_argument('--normalize', action='store_true', default=None)
        else:
            p.add_argument('--closest', action='store_true',
                           help="name the nearest synthetic culture")

    p = sub.add_parser('embed', parents=[common],
                       help="embed a distance CSV")
    p.add_argument('matrix_csv')
    p.add_argument('--algorithm', choices=embedding.ALGORITHMS)
    p.add_argument('--normalize', action='store_true', default=None)
    p.add_argument('--svg')
    p.add_argument('--styles')

    p = sub.add_parser('render', parents=[common],
                       help="render a coordinates or curves CSV as SVG")
    p.add_argument('csv_file')
    p.add_argument('--styles')

    p = sub.add_parser('robustness', parents=[common],
                       help="size or truncation robustness curves")
    p.add_argument('--experiment',
                   choices=('size',) + cultures.TRUNCATION_METHODS)
    p.add_argument('--metric', help=', '.join(distances.METRICS))
    p.add_argument('--emk', choices=('auto', 'exact', 'local_search'))
    p.add_argument('--cultures', type=_strings,
                   help="';' separated culture spec strings")
    p.add_argument('--sizes', type=_ints, help="candidate counts, for "
                   "example 8,12,16")
    p.add_argument('--levels', type=_floats)
    p.add_argument('--m', type=int)
    p.add_argument('--n', type=int)
    p.add_argument('--samples', type=int)
    p.add_argument('--diameter', type=float)
    p.add_argument('--recipe', choices=cultures.RECIPES,
                   help="reference dataset of the diameter")
    p.add_argument('--svg')

    p = sub.add_parser('validate', parents=[common],
                       help="check Preflib files and distance CSVs")
    p.add_argument('paths', nargs='+')
    return parser


def _config_file(name: str) -> Path:
    path = Path(name)
    if name.endswith('.py') and path.exists():
        return path
    path = Path(elecmaps.__file__).parent / 'config' / \
        (name.replace('.py', '') + '.py')
    if not path.exists():
        raise UsageError(f"no configuration file {name!r}")
    return path


def experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    """Return config of an experiment file overridden by +args+."""
    config = ExperimentConfig()
    if args.config:
        path = _config_file(args.config)
        elecmaps.configure(str(path))
        config = ExperimentConfig.from_text(read_text(path))
    names = {f.name for f in fields(ExperimentConfig)}
    overrides = {key: value for key, value in vars(args).items()
                 if key in names and value is not None}
    return replace(config, **overrides)


def _culture_spec(config: ExperimentConfig,
                  args: argparse.Namespace) -> CultureSpec:
    # parameter flags override parameters of the spec string
    flags = [f'{name}={getattr(args, name)}' for name in
             ('norm_phi', 'alpha', 'dim', 'shape', 'tree')
             if getattr(args, name, None) is not None]
    text = config.culture
    if flags:
        text += (',' if ':' in text else ':') + ','.join(flags)
    m = cultures.BASIC_M if config.m is None else config.m
    n = cultures.BASIC_N if config.n is None else config.n
    return CultureSpec.from_string(text, m, n, config.stage_seed('generate'))


def _output_dir(config: ExperimentConfig) -> Path:
    if not config.output:
        raise UsageError("-o/--output is required")
    path = Path(config.output)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_generate(config: ExperimentConfig, args: argparse.Namespace) -> int:
    if config.recipe:
        entries = cultures.build_dataset(config.recipe,
                                         config.stage_seed('generate'))
    elif config.culture:
        spec = _culture_spec(config, args)
        e = cultures.sample_election(spec, args.label or spec.kind)
        truncation = None
        if config.truncation:
            truncation = TruncationSpec.from_string(
                config.truncation, config.stage_seed('truncate'))
            e = cultures.truncate(e, truncation)
        entries = [cultures.DatasetEntry(e, spec.kind, spec, truncation)]
    else:
        raise UsageError("generate needs --recipe or --culture")
    out = _output_dir(config)
    manifest = [['label', 'culture', 'params', 'm', 'n', 'group',
                 'truncation']]
    for entry in entries:
        e = entry.election
        text = preflib.write_preflib(e)
        suffix = 'soc' if e.is_complete else 'soi'
        (out / f'{e.label}.{suffix}').write_text(text, encoding='utf-8')
        params = ';'.join(f'{k}={v}' for k, v in
                          entry.culture.parameters().items())
        manifest.append([e.label, entry.culture.kind, params, e.m, e.n,
                         entry.group, entry.truncation.describe()
                         if entry.truncation else ''])
    (out / 'manifest.csv').write_text(csv_text(manifest), encoding='utf-8')
    log.info("wrote %d elections and manifest to %s", len(entries), out)
    return 0


def _elections(config: ExperimentConfig) -> List[Election]:
    if config.input_dir:
        scan = preflib.scan_dataset_dir(config.input_dir,
                                        config.stage_seed('scan'),
                                        config.max_files, config.workers)
        for name, message in scan.failures:
            print(f"skipped {name}: {message}", file=sys.stderr)
        if not scan.elections:
            raise InputError(f"no elections read from {config.input_dir}")
        return scan.elections
    if config.recipe:
        return [entry.election for entry in cultures.build_dataset(
            config.recipe, config.stage_seed('generate'))]
    raise UsageError("need --in or --recipe")


def cmd_matrix(config: ExperimentConfig, args: argparse.Namespace) -> int:
    if not config.output:
        raise UsageError("-o/--output is required")
    es = _elections(config)
    d = distances.pairwise_matrix(es, config.metric_spec(), config.workers)
    if config.normalize:
        d = embedding.normalize_matrix(d)
    d.to_csv(config.output)
    log.info("wrote %dx%d %s matrix to %s", d.size, d.size, d.metric_id,
             config.output)
    return 0


def _reference_vectors(config: ExperimentConfig, strategy: dap.EmkStrategy
                       ) -> Dict[str, dap.DapVector]:
    # one election of every culture group and special election
    seed = config.stage_seed('generate')
    references = {}
    for index, (name, kind, _, params) in enumerate(cultures.BASIC_GROUPS):
        extra = {'mallows': {'norm_phi': 0.5}, 'urn': {'alpha': 0.2}}
        spec = CultureSpec(kind, cultures.BASIC_M, cultures.BASIC_N,
                           seeding.derive_seed(seed, index),
                           **params, **extra.get(kind, {}))
        references[name] = dap.dap_vector(cultures.sample_election(spec),
                                          strategy)
    for name, kind in cultures.COMPASS_GROUPS:
        spec = CultureSpec(kind, cultures.BASIC_M, cultures.BASIC_N, seed)
        references[name] = dap.dap_vector(cultures.sample_election(spec),
                                          strategy)
    return references


def cmd_dap_report(config: ExperimentConfig,
                   args: argparse.Namespace) -> int:
    es = _elections(config)
    strategy = dap.EmkStrategy(kind=config.emk,
                               seed=config.stage_seed('metric'))
    references = _reference_vectors(config, strategy) if args.closest \
        else None
    rows = dap.dap_report_rows(es, strategy, references, config.workers)
    text = dap.write_dap_report(rows, config.output)
    if not config.output:
        sys.stdout.write(text)
    return 0


def _styles(config: ExperimentConfig, labels: Sequence[str]):
    if config.styles:
        return render.read_styles(config.styles)
    return render.default_styles(labels=labels)


def cmd_embed(config: ExperimentConfig, args: argparse.Namespace) -> int:
    d = distances.DistanceMatrix.from_csv(args.matrix_csv)
    if config.normalize:
        d = embedding.normalize_matrix(d)
    cfg = embedding.EmbedConfig(seed=config.stage_seed('embed'),
                                workers=config.workers)
    result = embedding.embed(d, config.algorithm, cfg)
    log.info("final stress %.12g", result.final_stress)
    if not config.output:
        raise UsageError("-o/--output is required")
    result.to_csv(config.output)
    if config.svg:
        render.render_map(result, _styles(config, result.labels), config.svg)
    return 0


def cmd_render(config: ExperimentConfig, args: argparse.Namespace) -> int:
    if not config.output:
        raise UsageError("-o/--output is required")
    text = read_text(args.csv_file)
    if text.startswith('experiment,'):
        render.render_curves(experiments.read_curves(args.csv_file),
                             config.output)
        return 0
    result = embedding.Embedding2D.from_csv(args.csv_file)
    render.render_map(result, _styles(config, result.labels), config.output)
    return 0


def cmd_robustness(config: ExperimentConfig,
                   args: argparse.Namespace) -> int:
    metric = config.metric_spec()
    seed = config.stage_seed('robustness')
    diameter = config.diameter
    if diameter is None:
        diameter = experiments.reference_diameter(
            metric, config.stage_seed('generate'), config.recipe,
            config.workers)
    if config.experiment == 'size':
        points = experiments.size_robustness(
            metric, seed, config.cultures, config.sizes, config.n, config.m,
            config.samples, diameter, config.workers)
    else:
        points = experiments.truncation_robustness(
            metric, seed, config.experiment, config.cultures, config.levels,
            config.m, config.n, config.samples, diameter, config.workers)
    text = experiments.write_curves(points, config.output)
    if not config.output:
        sys.stdout.write(text)
    if config.svg:
        render.render_curves(points, config.svg)
    return 0


def _validate_path(path: Path) -> List[str]:
    if path.suffix.lower() == '.csv':
        d = distances.DistanceMatrix.from_csv(path)
        return d.check_pseudodistance()
    _, e = preflib.read_preflib(path)
    return validate_election(e)


def cmd_validate(config: ExperimentConfig, args: argparse.Namespace) -> int:
    paths = []
    for name in args.paths:
        path = Path(name)
        if path.is_dir():
            paths += sorted(p for p in path.iterdir() if p.suffix.lower()
                            in ('.soc', '.soi', '.csv'))
        else:
            paths.append(path)
    exit_code = 0
    for path in paths:
        try:
            problems = _validate_path(path)
        except ElecMapsError as err:
            problems = [str(err)]
            exit_code = max(exit_code, err.exit_code)
        except OSError as err:
            problems = [str(err)]
            exit_code = max(exit_code, 2)
        if problems:
            exit_code = max(exit_code, 2)
        status = 'ok' if not problems else '; '.join(problems)
        print(f"{path}: {status}")
    return exit_code


_COMMANDS = {'generate': cmd_generate, 'matrix': cmd_matrix,
             'dap-report': cmd_dap_report, 'embed': cmd_embed,
             'render': cmd_render, 'robustness': cmd_robustness,
             'validate': cmd_validate}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run command line application with +argv+ and return exit code.

    +argv+  Arguments excluding the program name. Default sys.argv[1:].
    """
    try:
        args = _parser().parse_args(argv)
    except UsageError as err:
        print(err, file=sys.stderr)
        return err.exit_code
    logging.basicConfig(level=logging.DEBUG if args.verbose
                        else logging.INFO, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        config = experiment_config(args)
        return _COMMANDS[args.command](config, args)
    except ElecMapsError as err:
        log.error("%s", err)
        return err.exit_code
    finally:
        if args.config:
            elecmaps.configure(None)


if __name__ == '__main__':
    sys.exit(main())
