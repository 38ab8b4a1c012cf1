import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest
from sympy import QQ

from invariants.kostant import evaluate_invariant, resolve_mmax, scan_scalars, verify_kostant
from invariants.zhelobenko import ZeroWeightElement
from lie.root_system import Basis, build_root_system
from utils.error_handler import UsageError


@pytest.mark.parametrize("text", ["A1", "A2"])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_positive_integers_pass(text, s):
    report = verify_kostant(text, s)
    assert report.passed
    assert report.verdict == "pass"
    assert all(r.dim_image == r.dim_F for r in report.records)


@pytest.mark.parametrize("text, s", [
    ("B2", 1), ("B2", 2), ("B2", 3), ("A3", 1), ("A3", 2), ("G2", 1), ("G2", 2), ("B3", 1), ("B3", 2),
])
def test_positive_integers_pass_beyond_type_a(text, s):
    report = verify_kostant(text, s)
    assert report.passed
    assert report.mmax == resolve_mmax(text, 0)
    assert [r.m for r in report.records] == list(range(report.mmax + 1))


def test_zero_scalar_fails():
    report = verify_kostant("A2", 0)
    assert not report.passed
    assert report.failing_degrees == [1, 2]


def test_recombined_basis_gives_same_verdict():
    assert verify_kostant("A2", 2, shuffle_seed=7).passed
    assert not verify_kostant("A2", 0, shuffle_seed=7).passed


def test_scan_reports_only_bad_scalars():
    scan = scan_scalars("A2", [2, -1, 0, 1, -2, 1], max_workers=2)
    assert [r.s for r in scan.reports] == [QQ(-2), QQ(-1), QQ(0), QQ(1), QQ(2)]
    assert scan.failing == [QQ(0)]
    assert scan.verdict == "pass"
    assert scan.to_dict(True)["failing"] == ["0"]


def test_rational_scalar_accepted():
    assert verify_kostant("A2", "1/2").passed
    assert not verify_kostant("A2", "-1/2").passed


def test_deterministic_report_has_no_timing():
    report = verify_kostant("A1", 1)
    assert "timing_ms" not in report.to_dict(deterministic=True)
    assert "timing_ms" in report.to_dict()
    assert report.to_dict(True)["records"][1] == {"m": 1, "dim_image": 1, "dim_F": 1, "equal": True}


def test_mmax_resolution():
    assert resolve_mmax("G2", 0) == 5
    assert resolve_mmax("A2", 4) == 4
    with pytest.raises(UsageError):
        resolve_mmax("A2", -1)


def test_evaluate_coroot_element():
    rs = build_root_system("A2")
    weight = evaluate_invariant(rs, ZeroWeightElement.coroot_element(2), 3)
    assert weight.basis == Basis.FUNDAMENTAL
    assert weight.coords == (QQ(3), QQ(3))


@pytest.mark.parametrize("text", ["A2", "B2"])
def test_scan_over_small_integers(text):
    scan = scan_scalars(text, range(-5, 6), max_workers=4)
    assert [r.s for r in scan.reports] == [QQ(s) for s in range(-5, 6)]
    assert all(s <= 0 for s in scan.failing)
    assert all(scan.verdicts[str(s)] == "pass" for s in range(1, 6))
    assert scan.verdict == "pass"
    if text == "A2":
        assert QQ(0) in scan.failing
