# tests/conftest.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
import logging

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(autouse=True)
def _reset_ringstab_logger():
    yield
    logger = logging.getLogger("ringstab")
    for handler in list(logger.handlers):
        handler.close()
    logger.handlers.clear()
