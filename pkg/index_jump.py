"""
Date: 18-10-2026
Entry point for the index toolkit command line.
Usage: python index_jump.py index clifford --r2 0.2 --exact
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
