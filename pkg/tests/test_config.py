import pytest
from pydantic import ValidationError

from dspc.config import Settings


def test_defaults():
    settings = Settings(_env_file=None)
    assert settings.for_epsilon == 1e-9
    assert settings.default_trials == 10
    assert settings.audit_cells is False
    assert settings.heap_hint is None
    assert settings.oracle_stack_mb == 256


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("DSPC_AUDIT_CELLS", "true")
    monkeypatch.setenv("DSPC_DEFAULT_TRIALS", "3")
    monkeypatch.setenv("DSPC_HEAP_HINT", "64M")
    settings = Settings(_env_file=None)
    assert settings.audit_cells is True
    assert settings.default_trials == 3
    assert settings.heap_hint == "64M"


def test_env_file(tmp_path):
    env = tmp_path / ".env"
    env.write_text("DSPC_FOR_EPSILON=1e-6\nDSPC_LOG_LEVEL=INFO\n", encoding="utf-8")
    settings = Settings(_env_file=str(env))
    assert settings.for_epsilon == 1e-6
    assert settings.log_level == "INFO"


@pytest.mark.parametrize("name, value", [("DSPC_FOR_EPSILON", "0"), ("DSPC_DEFAULT_TRIALS", "0"),
                                         ("DSPC_ORACLE_STACK_MB", "1")])
def test_rejects_out_of_range(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValidationError):
        Settings(_env_file=None)
