"""Run the command-line interface with ``python -m eigenbound``."""

import sys

from .cli import main

sys.exit(main())
