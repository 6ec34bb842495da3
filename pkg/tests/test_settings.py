import pytest
from pydantic import ValidationError

from config import FlowSettings, Settings, SolverSettings, get_settings, reset_settings
from flows import FlowConfig, FlowKind


def test_defaults():
    settings = Settings()
    assert settings.flow.step == 0.01
    assert settings.flow.t_max == 300.0
    assert settings.flow.tol_converge == 1e-10
    assert settings.flow.l_max == 1e3
    assert settings.solver.armijo_c1 == 1e-4
    assert settings.logging.log_level == "WARNING"
    assert settings.trace.trace_dir is None


def test_load_from_env(monkeypatch, tmp_path):
    monkeypatch.setenv("CUSPFLOW_STEP", "0.02")
    monkeypatch.setenv("CUSPFLOW_TRACE_DIR", str(tmp_path))
    monkeypatch.setenv("CUSPFLOW_LOG_LEVEL", "debug")
    monkeypatch.setenv("CUSPFLOW_SOLVER_MAX_ITER", "42")

    settings = Settings.load_from_env()
    assert settings.flow.step == 0.02
    assert settings.trace.trace_dir == str(tmp_path)
    assert settings.logging.log_level == "DEBUG"
    assert settings.solver.max_iter == 42


@pytest.mark.parametrize("field", ["step", "t_max", "tol_converge", "window", "l_max"])
def test_rejects_non_positive(field):
    with pytest.raises(ValidationError):
        FlowSettings(**{field: 0.0})


def test_rejects_bad_solver_tolerance():
    with pytest.raises(ValidationError):
        SolverSettings(tol=-1.0)


def test_singleton(monkeypatch):
    first = get_settings()
    assert get_settings() is first

    monkeypatch.setenv("CUSPFLOW_T_MAX", "50")
    assert get_settings().flow.t_max == 300.0
    reset_settings()
    assert get_settings().flow.t_max == 50.0


def test_flow_config_from_settings_applies_overrides():
    cfg = FlowConfig.from_settings(FlowSettings(), kind=FlowKind.CALABI, step=0.005, t_max=None)
    assert cfg.kind == FlowKind.CALABI
    assert cfg.step == 0.005
    assert cfg.t_max == 300.0


def test_prescribed_config_needs_target():
    with pytest.raises(ValidationError):
        FlowConfig(kind=FlowKind.PRESCRIBED)
