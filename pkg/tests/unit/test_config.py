import logging

import pytest

from segre_index.config import Settings, configure_logging
from segre_index.errors import SchemaError


class TestSettings:
    def test_defaults(self):
        settings = Settings.from_env({})
        assert settings.max_threads == 1
        assert settings.log_level == "WARNING"

    def test_reads_environment(self):
        settings = Settings.from_env({"SEGRE_MAX_THREADS": "4", "SEGRE_LOG_LEVEL": "debug"})
        assert settings == Settings(max_threads=4, log_level="DEBUG")

    def test_blank_values_fall_back(self):
        settings = Settings.from_env({"SEGRE_MAX_THREADS": " ", "SEGRE_LOG_LEVEL": ""})
        assert settings == Settings()

    @pytest.mark.parametrize("value", ["zero", "0", "-2", "1.5"])
    def test_invalid_thread_count(self, value):
        with pytest.raises(SchemaError, match="SEGRE_MAX_THREADS"):
            Settings.from_env({"SEGRE_MAX_THREADS": value})

    def test_invalid_log_level(self):
        with pytest.raises(SchemaError, match="SEGRE_LOG_LEVEL"):
            Settings.from_env({"SEGRE_LOG_LEVEL": "chatty"})

    def test_os_environ_is_the_default(self, monkeypatch):
        monkeypatch.setenv("SEGRE_MAX_THREADS", "3")
        assert Settings.from_env().max_threads == 3


class TestConfigureLogging:
    def test_level_from_settings(self):
        configure_logging(Settings(log_level="ERROR"))
        assert logging.getLogger().level == logging.ERROR

    def test_verbose_forces_debug(self):
        configure_logging(Settings(log_level="ERROR"), verbose=True)
        assert logging.getLogger().level == logging.DEBUG
        configure_logging(Settings())
