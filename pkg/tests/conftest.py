import numpy as np
import pytest

from agnostest.cli import load_csv
from agnostest.data import swiss_path


@pytest.fixture(scope="session")
def swiss():
    """The bundled Swiss indicators dataset, response Infant.Mortality."""
    return load_csv(swiss_path(), "Infant.Mortality")


@pytest.fixture()
def rng():
    return np.random.default_rng(42)
