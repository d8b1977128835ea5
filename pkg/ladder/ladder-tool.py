#!/usr/bin/env python3

# Entry point for the command line interface, run it from within the ladder/ directory, e.g.
#   ./ladder-tool.py structure --system aniso --l1 3 --l2 1

import sys

from report import cli


if __name__ == "__main__":
    sys.exit(cli.main())
