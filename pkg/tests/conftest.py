"""
Shared fixtures: the bundled triangulations and random decorated metrics
"""

from pathlib import Path

import numpy as np
import pytest

from config.settings import reset_settings
from triangulation import build_complex, read_gluing

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
FIGURE_EIGHT = DATA_DIR / "figure_eight.tri"
GIESEKING = DATA_DIR / "gieseking.tri"
DOUBLE_TETRAHEDRON = DATA_DIR / "double_tetrahedron.tri"

# |a - b| / 2 < ln(golden ratio) is the decorated region of the figure-eight
FIGURE_EIGHT_HALF_WIDTH = float(np.log((1.0 + np.sqrt(5.0)) / 2.0))


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in ("CUSPFLOW_TRACE_DIR", "CUSPFLOW_LOG_FILE", "CUSPFLOW_STEP", "CUSPFLOW_T_MAX"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture(scope="session")
def figure_eight():
    return build_complex(read_gluing(str(FIGURE_EIGHT)))


@pytest.fixture(scope="session")
def gieseking():
    return build_complex(read_gluing(str(GIESEKING)))


@pytest.fixture(scope="session")
def double_tetrahedron():
    return build_complex(read_gluing(str(DOUBLE_TETRAHEDRON)))


def decorated_figure_eight_metric(rng: np.random.Generator, width: float = 0.6) -> np.ndarray:
    """Random (a, b) with |a - b| < width, inside the decorated region for width < 0.96"""
    a = rng.uniform(-1.0, 1.0)
    return np.array([a, a + rng.uniform(-width, width)])
