from fractions import Fraction
from pathlib import Path

import pytest
from loguru import logger

from scripts.lorenzpath.instances import figure1
from scripts.lorenzpath.model import ScenarioGraph
from scripts.lorenzpath.owa import OwaWeights, validate_weights

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def reset_loguru():
    """CLI runs install sinks on the runner's stderr; drop them after each test."""
    yield
    logger.remove()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def figure1_graph() -> ScenarioGraph:
    return figure1()


@pytest.fixture
def figure1_file() -> Path:
    return FIXTURES / "figure1.json"


@pytest.fixture
def example_weights() -> OwaWeights:
    """phi = (0.9, 1.0), i.e. w = (0.9, 0.1)."""
    return validate_weights([Fraction(9, 10), Fraction(1)])


@pytest.fixture
def figure1_trace() -> list[str]:
    return (FIXTURES / "figure1_trace.tsv").read_text(encoding="utf-8").splitlines()
