import math
from pathlib import Path

import pytest

from lawecse.random_trees import random_scheme, random_tree, rng_for
from lawecse.trees import read_tree
from lawecse.weights import read_weights

DATA = Path(__file__).parent / "data"


def data_path(name: str) -> str:
    return str(DATA / name)


def load_tree(name: str):
    return read_tree(DATA / f"{name}.tree")


def load_weights(name: str):
    return read_weights(DATA / f"{name}.weights")


def random_instance(seed, i, max_n=7, max_degree=None, penalties=(0.0, 0.3, math.inf)):
    """Two random trees over a 3-letter alphabet plus a random scheme."""
    rng = rng_for(seed, i)
    T = random_tree(rng.randint(1, max_n), rng, max_degree, prefix="a")
    T2 = random_tree(rng.randint(1, max_n), rng, max_degree, prefix="b")
    scheme = random_scheme(rng, penalty=rng.choice(penalties))
    return T, T2, scheme, rng


@pytest.fixture
def branch():
    return load_tree("branch_T"), load_tree("branch_T2"), load_weights("branch")


@pytest.fixture
def edge_bonus():
    return load_tree("edge_bonus_T"), load_tree("edge_bonus_T2"), load_weights("edge_bonus")
