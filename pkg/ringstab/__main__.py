# ringstab/__main__.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
