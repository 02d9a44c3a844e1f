from __future__ import annotations

from src import config
from src.config import DEFAULT_ORACLE_BUDGET, load_config

KEYS = ("ORACLE_BUDGET", "ENGINE_THREADS", "DEFAULT_Q", "LOG_LEVEL", "NO_COLOR")


def _clear(monkeypatch):
    monkeypatch.setattr(config, "load_dotenv", None)
    for key in KEYS:
        monkeypatch.delenv(key, raising=False)


def test_defaults(monkeypatch):
    _clear(monkeypatch)
    cfg = load_config()
    assert cfg.oracle_budget == DEFAULT_ORACLE_BUDGET
    assert cfg.threads == 1
    assert cfg.default_q == "2"
    assert cfg.log_level == "WARNING"
    assert cfg.color


def test_environment_overrides(monkeypatch):
    _clear(monkeypatch)
    monkeypatch.setenv("ORACLE_BUDGET", "4096")
    monkeypatch.setenv("ENGINE_THREADS", "3")
    monkeypatch.setenv("DEFAULT_Q", " 3^2 ")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    monkeypatch.setenv("NO_COLOR", "")
    cfg = load_config()
    assert (cfg.oracle_budget, cfg.threads, cfg.default_q, cfg.log_level) == (4096, 3, "3^2", "DEBUG")
    assert not cfg.color


def test_bad_integers_fall_back(monkeypatch, caplog):
    _clear(monkeypatch)
    monkeypatch.setenv("ORACLE_BUDGET", "lots")
    monkeypatch.setenv("ENGINE_THREADS", "0")
    cfg = load_config()
    assert cfg.oracle_budget == DEFAULT_ORACLE_BUDGET
    assert cfg.threads == 1
    assert "ORACLE_BUDGET" in caplog.text
