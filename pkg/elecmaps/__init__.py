#! /usr/bin/env python

"""elecmaps.

Maps of elections of different sizes. Generate or ingest ordinal elections
(possibly top-truncated, possibly with different numbers of candidates and
voters), compute distances between them and embed the resulting distance
matrices as 2D maps.

RUNNING EXPERIMENTS

From the Command Line:

    $ elecmaps generate --recipe basic --seed 42 -o out/
    $ elecmaps matrix --metric dap --in out/ --seed 1 -o d.csv
    $ elecmaps embed d.csv --seed 1 -o coords.csv --svg map.svg

The same commands are available via:

    $ python -m elecmaps ...

To run with settings defined by a configuration file, for example
'desk.py':

    $ elecmaps robustness --config desk

From python:

    >>> import elecmaps
    >>> elecmaps.configure('desk')
    >>> elecmaps.launch(['matrix', '--metric', 'pos-hat', '--in', 'out/',
    ...                  '-o', 'd.csv'])

See elecmaps/config/template.py for instructions on setting up configuration
files.

FUNCTIONS
configure([config_file])  Apply settings of a configuration file.
launch([argv])  Run the command line application.

elecmaps package comprises:
    Modules:
        __init__  This package initialisation file.
        errors  Exceptions and exit codes.
        election  Votes, elections, vote swap distance, frequency matrices.
        transport  Wasserstein / EMD machinery, stretching, column
            matching.
        distances  Election distances and distance matrices.
        dap  Agreement, empirical Kemeny scores, diversity, polarization
            and the DAP distance.
        cultures  Statistical cultures, special elections, truncation and
            dataset recipes.
        embedding  MDS and Kamada-Kawai embeddings of distance matrices.
        preflib  Preflib .soc / .soi files.
        render  SVG maps and robustness curves.
        experiments  Size and truncation robustness experiments.
        cli  Command line surface.
        lib.seeding  Seed stream derivation.
        lib.combinatorics  Combinatorial helpers.
        lib.parallel  Process pool mapping.
        lib.textio  Text and CSV reading and writing.
        config.template  Configuration file template.
        config.desk  Configuration file for desk-scale experiment runs.
        config.full  Configuration file for full-scale experiment runs.
"""

import importlib
import importlib.util
from pathlib import Path
from types import ModuleType
from typing import List, Optional, Sequence

__version__ = '0.1.0'

CONFIG_PATH: Optional[str] = None

# (module variables dictionary, setting names, default values) for every
# module that has registered settings.
_REGISTERED: List[tuple] = []


def _set_config_path(config_file: Optional[str]):
    global CONFIG_PATH
    if config_file is None:
        CONFIG_PATH = None
    elif config_file.endswith('.py') and Path(config_file).exists():
        CONFIG_PATH = str(Path(config_file).absolute())
    else:
        CONFIG_PATH = '.config.' + config_file.replace('.py', '')


def load_config_module(config_file: str) -> ModuleType:
    """Import and return the configuration module +config_file+.

    +config_file+  Either the name of a configuration file in the
        elecmaps.config package or a path to a .py file.
    """
    path = Path(config_file)
    if config_file.endswith('.py') and path.exists():
        spec = importlib.util.spec_from_file_location(
            'elecmaps_config_' + path.stem, str(path))
        module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(module)
        return module
    name = '.config.' + config_file.replace('.py', '')
    return importlib.import_module(name, 'elecmaps')


def _apply(mod_vars: dict, settings: Sequence[str], defaults: dict):
    for setting in settings:
        mod_vars[setting] = defaults[setting]
    if CONFIG_PATH is None:
        return
    if CONFIG_PATH.endswith('.py'):
        config_mod = load_config_module(CONFIG_PATH)
    else:
        config_mod = importlib.import_module(CONFIG_PATH, 'elecmaps')
    for setting in settings:
        try:
            mod_vars[setting] = getattr(config_mod, setting)
        except AttributeError:
            pass


def _config_import(mod_vars: dict, settings: List[str]):
    """Override default settings with configuration file settings.

    Overrides a module's default settings with settings defined in any
    configuration file. Makes no change to any setting not defined in
    the configuration file. Registers the module so that later calls to
    configure() also apply to it.

    +settings+ List of attribute names that each define a default setting
        on the module with variables dictionary passed as +mod_vars+.
    +mod_vars+ Module's variables dictionary as returned by vars() when
        called from the module.
    """
    defaults = {setting: mod_vars[setting] for setting in settings}
    _REGISTERED.append((mod_vars, settings, defaults))
    _apply(mod_vars, settings, defaults)


def configure(config_file: Optional[str] = None):
    """Apply settings of a configuration file.

    +config_file+  Name of configuration file in the elecmaps.config
        directory or path to a .py configuration file. If not passed
        all settings are restored to their defaults.
    """
    _set_config_path(config_file)
    for mod_vars, settings, defaults in _REGISTERED:
        _apply(mod_vars, settings, defaults)


def launch(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line application with arguments +argv+.

    Returns exit code.
    """
    from elecmaps import cli
    return cli.main(argv)
