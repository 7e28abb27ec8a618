#! /usr/bin/env python

"""Run the elecmaps command line application."""

import sys

from elecmaps.cli import main

sys.exit(main())
