# tests/unit/test_config.py
from src.config import Settings, settings


def test_default_settings(monkeypatch):
    """Test default caps and options"""
    for name in ("DFA_STATE_CAP", "MONOID_CAP", "POWER_MONOID_CAP", "RNG_ALGORITHM", "LOG_LEVEL"):
        monkeypatch.delenv(f"SIMONLEARN_{name}", raising=False)
    s = Settings(_env_file=None)
    assert s.dfa_state_cap == 1_000_000
    assert s.monoid_cap == 100_000
    assert s.power_monoid_cap == 100_000
    assert s.verify_index is True
    assert s.rng_algorithm == "PCG64"
    assert s.log_level == "INFO"


def test_settings_from_env(monkeypatch):
    """Test settings can be loaded from SIMONLEARN_ environment variables"""
    monkeypatch.setenv("SIMONLEARN_MONOID_CAP", "50")
    monkeypatch.setenv("SIMONLEARN_VERIFY_INDEX", "false")
    s = Settings(_env_file=None)
    assert s.monoid_cap == 50
    assert s.verify_index is False


def test_caps_dict_lists_every_cap():
    """Test the caps that feed config hashes"""
    s = Settings(_env_file=None, dfa_state_cap=10, monoid_cap=20, power_monoid_cap=30)
    assert s.caps_dict() == {"dfa_state_cap": 10, "monoid_cap": 20, "power_monoid_cap": 30}


def test_global_settings_instance():
    """Test global settings instance exists"""
    assert settings is not None
    assert isinstance(settings, Settings)
