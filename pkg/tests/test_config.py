# tests/test_config.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
import logging

import pytest

from ringstab.core.errors import ConfigurationError
from ringstab.utils.config import Settings, load_settings, load_yaml_config
from ringstab.utils.logger import DailyFileHandler, get_logger, setup_logger


class TestSettings:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("RINGSTAB_ZERO_TOL_FACTOR", raising=False)
        settings = Settings()
        assert settings.ZERO_TOL_FACTOR == 1e-9
        assert settings.RANK_TOL_FACTOR == 1e-8
        assert settings.MAX_SWEEPS == 50
        assert settings.LOG_DIR is None

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("RINGSTAB_MAX_SWEEPS", "80")
        assert Settings().MAX_SWEEPS == 80

    def test_yaml_override(self, tmp_path):
        path = tmp_path / "ringstab.yaml"
        path.write_text("ringstab:\n  zero_tol_factor: 1.0e-8\n  verify_workers: 4\n", encoding="utf-8")
        settings = load_settings(path)
        assert settings.ZERO_TOL_FACTOR == 1e-8
        assert settings.VERIFY_WORKERS == 4

    def test_flat_yaml(self, tmp_path):
        path = tmp_path / "flat.yaml"
        path.write_text("SWEEP_TOL: 1.0e-12\n", encoding="utf-8")
        assert load_settings(path).SWEEP_TOL == 1e-12

    def test_no_config(self):
        assert load_yaml_config(None) == {}

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_yaml_config(tmp_path / "absent.yaml")

    def test_non_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_yaml_config(path)


class TestLogger:
    def test_setup_replaces_handlers(self):
        logger = setup_logger("ringstab", level="DEBUG")
        logger = setup_logger("ringstab", level="DEBUG")
        assert len(logger.handlers) == 1
        assert logger.level == logging.DEBUG
        assert logger.propagate is False

    def test_unknown_level_falls_back(self):
        assert setup_logger("ringstab", level="LOUD").level == logging.WARNING

    def test_daily_file(self, tmp_path):
        logger = setup_logger("ringstab", with_console=False, level="INFO", log_dir=tmp_path)
        assert any(isinstance(h, DailyFileHandler) for h in logger.handlers)
        get_logger("stability").info("hello")
        files = list(tmp_path.glob("ringstab-*.log"))
        assert len(files) == 1
        assert "ringstab.stability | hello" in files[0].read_text(encoding="utf-8")

    def test_get_logger_names(self):
        assert get_logger("oracle").name == "ringstab.oracle"
        assert get_logger("ringstab.cli").name == "ringstab.cli"
