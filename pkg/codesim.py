#!/usr/bin/env python3
"""
codesim - deteção de plágio em código fonte.

Uso:
    ./codesim.py compare a.mj b.mj
    ./codesim.py corpus generate --out corpus
    ./codesim.py corpus evaluate --corpus corpus
"""

import sys

from cli.app import run

if __name__ == "__main__":
    sys.exit(run())
