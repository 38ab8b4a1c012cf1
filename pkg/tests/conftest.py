import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import random

import pytest

from algebra.exact import Poly
from invariants.weyl_calculus import monomials_up_to


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def random_poly(rng):
    """Factory for random polynomials with small integer coefficients."""
    def make(rank: int, degree: int, density: float = 0.6) -> Poly:
        terms = {m: rng.randint(-4, 4) for m in monomials_up_to(rank, degree) if rng.random() < density}
        return Poly.from_terms(rank, terms)
    return make


@pytest.fixture
def isolated_home(tmp_path, monkeypatch):
    """Point the per-user configuration directory at a temporary location."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.delenv("ZHELOBENKO_WORKERS", raising=False)
    return tmp_path
