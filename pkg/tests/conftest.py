import numpy as np
import pytest

from knotflow import perturbed_circle, trefoil


@pytest.fixture(scope="session")
def pert():
    # default perturbation, resolvable at the default tolerance
    return perturbed_circle(seed=5)


@pytest.fixture(scope="session")
def tame():
    # small amplitude so coarse truncations stay certified
    return perturbed_circle(amplitude=0.005, seed=2, n_modes=24)


@pytest.fixture(scope="session")
def knot():
    return trefoil(n_modes=64)


@pytest.fixture()
def rng():
    return np.random.default_rng(0)
