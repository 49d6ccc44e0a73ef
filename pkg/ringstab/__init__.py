# ringstab/__init__.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
"""Linear stability of regular n-gon relative equilibria of the (1+n)-body problem."""

__version__ = "0.1.0"
