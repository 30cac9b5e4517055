"""
Tests for environment-driven settings.
"""

import pytest
from pydantic import ValidationError as PydanticValidationError

from src.config import Settings


class TestSettings:
    def test_defaults(self, monkeypatch):
        for key in ("TBSIM_LOG_LEVEL", "TBSIM_MAX_QUBITS", "TBSIM_DEFAULT_THREADS"):
            monkeypatch.delenv(key, raising=False)
        s = Settings(_env_file=None)
        assert s.log_level == "WARNING"
        assert s.max_qubits == 26
        assert s.max_tree_depth == 24
        assert s.default_threads == "auto"
        assert s.validation_tolerance == 1e-10
        assert s.tie_threshold == 1e-15

    def test_environment_prefix(self, monkeypatch):
        monkeypatch.setenv("TBSIM_MAX_QUBITS", "12")
        monkeypatch.setenv("TBSIM_LOG_LEVEL", "debug")
        s = Settings(_env_file=None)
        assert s.max_qubits == 12
        assert s.log_level == "debug"

    def test_numeric_thread_count_from_environment(self, monkeypatch):
        monkeypatch.setenv("TBSIM_DEFAULT_THREADS", "4")
        assert Settings(_env_file=None).default_threads == 4

    def test_qubit_cap_is_bounded(self, monkeypatch):
        monkeypatch.setenv("TBSIM_MAX_QUBITS", "40")
        with pytest.raises(PydanticValidationError):
            Settings(_env_file=None)

    def test_environment_flags(self):
        assert Settings(_env_file=None, environment="production").is_production
        assert Settings(_env_file=None, environment="development").is_development
