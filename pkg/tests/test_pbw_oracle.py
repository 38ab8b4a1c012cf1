import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest

from algebra.exact import Poly
from invariants import pbw_oracle
from invariants.pbw_oracle import PBWElement, ad, invariant_images, sl2_pbw_oracle
from utils.error_handler import UsageError, VerificationFailure

x, y, h = (PBWElement.generator(name) for name in ("x", "y", "h"))


def casimir() -> PBWElement:
    return h * h + h.scale(2) + (y * x).scale(4)


def test_commutation_relations():
    assert x * y - y * x == h
    assert h * x - x * h == x.scale(2)
    assert h * y - y * h == y.scale(-2)


def test_straightening_is_associative():
    assert (x * y) * (x * h) == x * (y * (x * h))


def test_casimir_is_central():
    omega = casimir()
    for name in ("x", "y", "h"):
        assert ad(name, omega).is_zero
    assert omega.degree == 2
    assert omega.harish_chandra() == Poly.parse("h1^2 + 2*h1", 1)


def test_unknown_generator():
    with pytest.raises(UsageError):
        PBWElement.generator("z")


@pytest.mark.parametrize("n, dims", [(0, [1, 1, 2, 2, 3]), (1, [0, 1, 1, 2])])
def test_invariant_counts(n, dims):
    assert [len(invariant_images(n, m)) for m in range(len(dims))] == dims


def test_adjoint_image_is_coroot():
    (image,) = invariant_images(1, 1)
    assert image.top_part() == image
    assert image.divide_exact(Poly.variable(1, 0)).is_constant


def test_spin_two_image():
    (image,) = invariant_images(2, 2)
    hh = Poly.variable(1, 0)
    assert image.divide_exact(hh * (hh - 1)).is_constant


def test_oracle_passes():
    report = sl2_pbw_oracle(4)
    assert report.verdict == "pass"
    assert len(report.records) == 3 * 5
    assert all(r.matches_psi and r.eq2_holds for r in report.records)
    adjoint = [r for r in report.records if r.n == 1]
    assert all(r.matches_xi for r in adjoint)
    assert report.to_dict()["records"][0] == {
        "n": 0, "m": 0, "dim_invariants": 1, "dim_image": 1, "dim_expected": 1,
        "matches_psi": True, "eq2_holds": True,
    }


@pytest.mark.parametrize("mmax", [-1, 7])
def test_oracle_degree_range(mmax):
    with pytest.raises(UsageError):
        sl2_pbw_oracle(mmax)


def test_strict_mode_names_first_failure(monkeypatch):
    monkeypatch.setattr(pbw_oracle, "psi", lambda rs, n, i: Poly.one(1))
    with pytest.raises(VerificationFailure, match="spin 1 at m=1"):
        sl2_pbw_oracle(2)
    report = sl2_pbw_oracle(2, strict=False)
    assert report.verdict == "fail"


def test_oracle_report_timing_is_optional():
    report = sl2_pbw_oracle(1)
    assert "timing_ms" in report.to_dict()
    assert "timing_ms" not in report.to_dict(deterministic=True)
    assert report.to_dict(True)["records"] == report.to_dict()["records"]
