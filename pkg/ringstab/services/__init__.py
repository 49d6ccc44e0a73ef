# ringstab/services/__init__.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
