"""Localization, invariants, and the third-partial comparison."""
from fractions import Fraction as F

import pytest

from crepant.algebra import Cyc3, LinT, OMEGA, OMEGA_BAR
from crepant.potentials import (ALL_INDICES, ChangeOfVars, FixedPointData,
                                InverseT1T2, fx_third_partial,
                                fy_third_partial, multicover_invariant,
                                orbifold_invariant, swap_series,
                                triple_intersection, verify_crc)


# ---------------------------------------------------------------------------
# Localization table
# ---------------------------------------------------------------------------

EXPECTED_TRIPLES = {
    ("1", "1", "1"): InverseT1T2(F(1, 3)),
    ("1", "1", "C1"): LinT.zero(),
    ("1", "1", "C2"): LinT.zero(),
    ("1", "C1", "C1"): LinT.of(F(-2, 3)),
    ("1", "C2", "C2"): LinT.of(F(-2, 3)),
    ("1", "C1", "C2"): LinT.of(F(-1, 3)),
    ("C1", "C1", "C1"): LinT.of(0, F(4, 3), F(2, 3)),
    ("C1", "C1", "C2"): LinT.of(0, F(2, 3), F(1, 3)),
    ("C2", "C2", "C2"): LinT.of(0, F(2, 3), F(4, 3)),
    ("C2", "C2", "C1"): LinT.of(0, F(1, 3), F(2, 3)),
}


def test_all_ten_triple_intersections():
    data = FixedPointData.standard()
    for classes, expected in EXPECTED_TRIPLES.items():
        assert triple_intersection(*classes, data=data) == expected, classes


def test_triple_intersection_rejects_unknown_class():
    with pytest.raises(ValueError, match="unknown class"):
        triple_intersection("1", "1", "C3")


def test_triple_intersection_detects_corrupted_weights():
    data = FixedPointData.standard()
    broken = FixedPointData(
        tangent_weights=data.tangent_weights,
        bundle_weights=((LinT.of(0, -2, 0), LinT.of(0, 0, -1), LinT.of(0, 0, -2)),
                        data.bundle_weights[1]))
    with pytest.raises(ArithmeticError, match="does not simplify"):
        triple_intersection("C1", "C1", "C1", data=broken)


# ---------------------------------------------------------------------------
# Curve-class and orbifold invariants
# ---------------------------------------------------------------------------

def test_multicover_values():
    assert multicover_invariant(2, 2) == LinT.of(0, F(1, 8), F(1, 8))
    assert multicover_invariant(1, 2) == LinT.zero()
    assert multicover_invariant(3, 0) == LinT.of(0, F(1, 27), F(1, 27))
    assert multicover_invariant(0, 5) == LinT.of(0, F(1, 125), F(1, 125))
    with pytest.raises(ValueError):
        multicover_invariant(0, 0)


def test_orbifold_cubic_cases(table16):
    assert orbifold_invariant(3, 0, table16) == LinT.of(0, F(1, 3), 0)
    assert orbifold_invariant(0, 3, table16) == LinT.of(0, 0, F(1, 3))
    assert orbifold_invariant(0, 0, table16, n0=3) == InverseT1T2(F(1, 3))
    assert orbifold_invariant(1, 1, table16, n0=1) == LinT.of(F(1, 3))


def test_orbifold_vanishing(table16):
    assert orbifold_invariant(3, 1, table16) == LinT.zero()      # monodromy
    assert orbifold_invariant(2, 2, table16, n0=1) == LinT.zero()  # point axiom
    assert orbifold_invariant(1, 1, table16, n0=2) == LinT.zero()


def test_orbifold_stable_value(table16):
    # (n1, n2) = (4, 1): g = 3, value (t1+t2)/2 * A_3 = (t1+t2)/27
    assert orbifold_invariant(4, 1, table16) == LinT.of(0, F(1, 27), F(1, 27))
    # g = 2 flips the sign
    assert orbifold_invariant(2, 2, table16) == LinT.of(0, F(-1, 9), F(-1, 9))


def test_orbifold_unstable_rejected(table16):
    with pytest.raises(ValueError, match="unstable"):
        orbifold_invariant(1, 1, table16)


# ---------------------------------------------------------------------------
# Third partials: scalar channels
# ---------------------------------------------------------------------------

def test_identity_sector_channels(table16):
    assert fy_third_partial((0, 0, 0)) == InverseT1T2(F(1, 3))
    assert fx_third_partial((0, 0, 0), table16) == InverseT1T2(F(1, 3))
    assert fy_third_partial((0, 1, 2)) == LinT.of(F(1, 3))
    assert fx_third_partial((0, 1, 2), table16) == LinT.of(F(1, 3))
    for idx in [(0, 0, 1), (0, 0, 2), (0, 1, 1), (0, 2, 2)]:
        assert fy_third_partial(idx) == LinT.zero()
        assert fx_third_partial(idx, table16) == LinT.zero()


def test_index_validation(table16):
    with pytest.raises(ValueError, match="partial index"):
        fx_third_partial((0, 1), table16)
    with pytest.raises(ValueError, match="partial index"):
        fy_third_partial((1, 2, 3))
    # unsorted input is normalized
    assert fx_third_partial((2, 1, 0), table16) == LinT.of(F(1, 3))


def test_fx_constant_terms(table16):
    fx = fx_third_partial((1, 1, 1), table16, N=4)
    assert fx.coefficient(0, 0) == LinT.of(0, F(1, 3), 0)
    # at t1 = t2 = t the t-coefficient is 1/3 = A(0)
    const = fx.coefficient(0, 0)
    assert const.c1 + const.c2 == Cyc3(F(1, 3))
    fx222 = fx_third_partial((2, 2, 2), table16, N=4)
    assert fx222.coefficient(0, 0) == LinT.of(0, 0, F(1, 3))


def test_fy_constant_matches_cubic_contraction(table16):
    fy = fy_third_partial((1, 1, 1), N=4)
    assert fy.coefficient(0, 0) == LinT.of(0, F(1, 3), 0)


def test_higher_coefficients_match_hand_expansion(table16):
    """Frozen from expanding the symmetrized series by hand.

    Averaging over the three twisted linear forms kills x1, x2, x1^2 and
    x2^2 in the triple-1 partial; x1 x2 survives with (t1+t2) A_3 / 2 and
    x1^3 with -(t1+t2) A_4 / 12.
    """
    fx = fx_third_partial((1, 1, 1), table16, N=4)
    fy = fy_third_partial((1, 1, 1), N=4)
    for series in (fx, fy):
        assert series.coefficient(1, 0) == LinT.zero()
        assert series.coefficient(2, 0) == LinT.zero()
        assert series.coefficient(1, 1) == LinT.of(0, F(1, 27), F(1, 27))
        assert series.coefficient(3, 0) == LinT.of(0, F(-1, 162), F(-1, 162))


# ---------------------------------------------------------------------------
# Properties of the series-valued partials
# ---------------------------------------------------------------------------

SERIES_INDICES = [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)]


def _swap_idx(idx):
    return tuple(sorted(3 - i for i in idx))


@pytest.mark.parametrize("idx", SERIES_INDICES)
def test_swap_symmetry(idx, table16):
    N = 8
    assert swap_series(fy_third_partial(idx, N=N)) == fy_third_partial(_swap_idx(idx), N=N)
    assert swap_series(fx_third_partial(idx, table16, N=N)) \
        == fx_third_partial(_swap_idx(idx), table16, N=N)


def test_mixed_partial_consistency():
    N = 9
    f112 = fy_third_partial((1, 1, 2), N=N)
    f111 = fy_third_partial((1, 1, 1), N=N)
    assert f112.d_dx1() == f111.d_dx2()


def test_t1_equals_minus_t2_specialization(table16):
    N = 8
    for idx in SERIES_INDICES:
        fy = fy_third_partial(idx, N=N)
        fx = fx_third_partial(idx, table16, N=N)
        for (i, j), a in fy.items():
            b = fx.coefficient(i, j)
            assert a.evaluate(F(1), F(-1)) == b.evaluate(F(1), F(-1)), (idx, i, j)


def test_series_coefficients_are_t_linear(table16):
    fy = fy_third_partial((1, 1, 2), N=6)
    for (i, j), c in fy.items():
        assert c.c0 == Cyc3(F(0)) or (i, j) == (0, 0)


# ---------------------------------------------------------------------------
# The comparison
# ---------------------------------------------------------------------------

def test_verify_crc_small(table16):
    report = verify_crc(8, table16)
    assert report["all_pass"] is True
    assert report["order"] == 8
    assert len(report["checks"]) == len(ALL_INDICES) == 10
    assert {c["idx"] for c in report["checks"]} == {
        "000", "001", "002", "011", "012", "022", "111", "112", "122", "222"}
    assert all(c["first_mismatch"] is None for c in report["checks"])


def test_verify_crc_reports_mismatch(table16):
    import copy
    broken = copy.deepcopy(table16)
    broken.A[5] = broken.A[5] + 1  # corrupt one Hodge value
    report = verify_crc(9, broken)
    assert report["all_pass"] is False
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    assert failed
    mismatch = failed[0]["first_mismatch"]
    assert mismatch is not None
    assert "monomial" in mismatch and "fy" in mismatch and "fx" in mismatch


def test_verify_crc_minimum_order(table16):
    with pytest.raises(ValueError):
        verify_crc(2, table16)


def test_corrupted_q_values_hit_division_guard(table16):
    # q1 q2 = 1 makes the third multi-cover denominator non-invertible
    cov = ChangeOfVars.standard()
    bad = ChangeOfVars(jacobian=cov.jacobian, q_values=(OMEGA, OMEGA_BAR))
    with pytest.raises(ZeroDivisionError):
        verify_crc(6, table16, cov=bad)


def test_wrong_q_values_break_identity(table16):
    # conjugating both q values keeps every series well-defined but must fail
    cov = ChangeOfVars.standard()
    bad = ChangeOfVars(jacobian=cov.jacobian, q_values=(OMEGA_BAR, OMEGA_BAR))
    report = verify_crc(6, table16, cov=bad)
    assert report["all_pass"] is False
