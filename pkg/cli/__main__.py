"""Permite `python -m cli ...`."""

import sys

from cli.app import run

if __name__ == "__main__":
    sys.exit(run())
