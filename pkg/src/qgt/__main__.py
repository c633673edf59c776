"""Entry point for python -m qgt."""

import sys

from qgt.cli import main

if __name__ == "__main__":
    sys.exit(main())
