import json
import random
from pathlib import Path

import pytest

from betanbc.arrangement import load_arrangement, random_arrangement
from betanbc.resonance import sample_weights

DATA = Path(__file__).resolve().parent.parent / "data"

E_WEIGHTS = ("1/2", "1/3", "1/5", "1/7", "1/11")


def load(name):
    return load_arrangement(DATA / ("%s.json" % name))


def random_corpus(count, seed, max_n=7, max_dim=3):
    """Seeded random arrangements with n <= max_n, l <= max_dim."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        dim = rng.randint(1, max_dim)
        n = rng.randint(2, max_n if dim > 1 else 5)
        out.append(random_arrangement(rng, n, dim, span=2, denominators=(1, 1, 2)))
    return out


def weighted_corpus(count, seed):
    """(arrangement, weights) pairs with weights passing the dense-flat condition."""
    rng = random.Random(seed + 1)
    return [(A, sample_weights(rng, A)) for A in random_corpus(count, seed)]


FIXTURES = ("E", "GP", "N2", "P3", "GI", "ADM", "E_prime", "PLANES3")


@pytest.fixture
def E():
    return load("E")


@pytest.fixture(params=FIXTURES)
def fixture_arrangement(request):
    return load(request.param)


@pytest.fixture(scope="session")
def schemas():
    from importlib.resources import files
    d = files("betanbc") / "schemas"
    return {p.name[:-5]: json.loads(p.read_text()) for p in d.iterdir() if p.name.endswith(".json")}
