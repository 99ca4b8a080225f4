"""Kernel tests: examples, accuracy contract, recurrences, closed forms.

Tolerances follow the stated eval contract (rel 1e-12 / abs 1e-15 near
zeros); cross-checks against the extended-precision oracle in _oracle.py.
"""

import math

import mpmath as mp
import pytest

from tests import _frozen
from tests import _oracle as oracle
from ballspec import bessel
from ballspec.bessel import EvalResult, Order, eval_J, eval_J_pair, eval_Xi, eval_Xi_prime, log_gamma
from ballspec.errors import LossOfPrecision, RangeError


def frozen_float(table, key):
    return float(mp.mpf(table[key]))


# ---------------------------------------------------------------------------
# Order type


def test_order_reconstructs_from_l_d():
    for l in range(0, 30):
        for d in range(2, 12):
            o = Order.from_l_d(l, d)
            assert o.twice_nu == 2 * l + d - 2
            assert o.nu == l + d / 2 - 1


def test_order_range_checks():
    with pytest.raises(RangeError):
        Order(-1)
    with pytest.raises(RangeError):
        Order(241)
    with pytest.raises(RangeError):
        Order(1.5)  # type: ignore[arg-type]
    with pytest.raises(RangeError):
        Order.from_l_d(-1, 3)
    with pytest.raises(RangeError):
        Order.from_l_d(0, 1)


def test_x_range_checks():
    for bad in (0.0, -1.0, 200.0000001, math.inf, math.nan):
        with pytest.raises(RangeError):
            eval_J(Order(0), bad)


# ---------------------------------------------------------------------------
# eval_J examples


def test_eval_J_half_at_pi_is_zero():
    res = eval_J(Order(1), math.pi)
    assert abs(res.value) <= 1e-15


def test_eval_J_zero_at_first_root():
    res = eval_J(Order(0), 2.404825557695773)
    assert abs(res.value) <= 1e-12


def test_eval_J_order_one_at_one():
    want = frozen_float(_frozen.BESSEL_VALUES, (2, "1"))
    assert want == 0.4400505857449335
    res = eval_J(Order(2), 1.0)
    assert res.value == pytest.approx(want, rel=1e-12)


def test_eval_result_contract_fields():
    res = eval_J(Order(7), 13.25)
    assert isinstance(res, EvalResult)
    assert 0.0 <= res.est_rel_err <= 1e-12


# ---------------------------------------------------------------------------
# eval_J_pair examples


def test_pair_second_slot_zero_at_j11():
    x = 3.8317059702075125
    first, second = eval_J_pair(Order(0), x)
    assert abs(second.value) <= 1e-12
    want_first = float(oracle.oracle_J(0, x, dps=30))
    assert first.value == pytest.approx(want_first, rel=1e-12)


def test_pair_half_integer_closed_form():
    x = math.pi / 2
    first, second = eval_J_pair(Order(1), x)
    closed_first = math.sqrt(2.0 / (math.pi * x)) * math.sin(x)
    closed_second = math.sqrt(2.0 / (math.pi * x)) * (math.sin(x) / x - math.cos(x))
    assert first.value == pytest.approx(closed_first, rel=1e-12)
    assert second.value == pytest.approx(closed_second, rel=1e-12)


def test_pair_tiny_argument_leading_terms():
    first, second = eval_J_pair(Order(0), 1e-8)
    assert first.value == pytest.approx(1.0, abs=1e-15)
    assert second.value == pytest.approx(5e-9, rel=1e-12)


def test_pair_order_cap():
    with pytest.raises(RangeError):
        eval_J_pair(Order(240), 10.0)


def test_pair_consistent_with_singles():
    for tn in (0, 1, 5, 40, 121):
        for x in (0.7, 13.0, 29.5, 88.0, 197.0):
            p0, p1 = eval_J_pair(Order(tn), x)
            s0 = eval_J(Order(tn), x)
            s1 = eval_J(Order(tn + 2), x)
            scale0 = max(abs(s0.value), 1e-3)
            scale1 = max(abs(s1.value), 1e-3)
            assert abs(p0.value - s0.value) <= 3e-12 * scale0
            assert abs(p1.value - s1.value) <= 3e-12 * scale1


# ---------------------------------------------------------------------------
# eval_Xi / eval_Xi_prime examples


def test_xi_l0_d3_zero_at_pi():
    res = eval_Xi(0, 3, math.pi)
    assert abs(res.value) <= 1e-14


def test_xi_l0_d2_is_J0():
    want = frozen_float(_frozen.BESSEL_VALUES, (0, "1"))
    assert want == 0.7651976865579666
    res = eval_Xi(0, 2, 1.0)
    assert res.value == pytest.approx(want, rel=1e-12)


def test_xi_l0_d3_proportional_to_sinc():
    ratios = []
    for r in (0.5, 1.0, 2.0):
        val = eval_Xi(0, 3, r).value
        ratios.append(val * r / math.sin(r))
    assert ratios[0] == pytest.approx(ratios[1], rel=1e-12)
    assert ratios[0] == pytest.approx(ratios[2], rel=1e-12)


def test_xi_prime_l0_d2_zero_at_j11():
    res = eval_Xi_prime(0, 2, 3.8317059702075125)
    assert abs(res.value) <= 1e-12


def test_xi_prime_l1_d2_zero_at_first_derivative_root():
    res = eval_Xi_prime(1, 2, 1.8411837813406593)
    assert abs(res.value) <= 1e-12


def test_xi_prime_l0_d3_equals_minus_xi1():
    a = eval_Xi_prime(0, 3, math.pi).value
    b = -eval_Xi(1, 3, math.pi).value
    assert a == pytest.approx(b, rel=1e-12)


# ---------------------------------------------------------------------------
# log_gamma


def test_log_gamma_examples():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-13)
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-13)


def test_log_gamma_recursion():
    x = 0.5
    while x <= 100.0:
        lhs = log_gamma(x + 1.0) - log_gamma(x) - math.log(x)
        assert abs(lhs) <= 1e-13 * max(1.0, abs(log_gamma(x + 1.0)))
        x += 0.73


def test_log_gamma_against_oracle():
    with mp.workdps(40):
        for x in (0.5, 1.75, 7.0, 33.3, 120.0, 199.5):
            want = mp.log(mp.gamma(mp.mpf(x)))
            got = log_gamma(x)
            assert abs(mp.mpf(got) - want) <= mp.mpf(1e-13) * abs(want) + mp.mpf(1e-15)


def test_log_gamma_range():
    for bad in (0.0, -3.0, math.nan):
        with pytest.raises(RangeError):
            log_gamma(bad)


# ---------------------------------------------------------------------------
# recurrence-residual grid (three-term identity for J)

_GRID_X = [0.5 + i * (59.5 / 199.0) for i in range(200)]


def _j_three(tn: int, x: float):
    """(J_{nu-1}, J_nu, J_{nu+1}) with the nu-1 slot handled at low orders."""
    j0, j1 = eval_J_pair(Order(tn), x)
    if tn >= 2:
        jm = eval_J(Order(tn - 2), x).value
    elif tn == 0:
        jm = -j1.value  # J_{-1} = -J_1
    else:
        jm = math.sqrt(2.0 / (math.pi * x)) * math.cos(x)  # J_{-1/2}
    return jm, j0.value, j1.value


def test_recurrence_residual_grid():
    for tn in range(0, 41):
        nu = 0.5 * tn
        for x in _GRID_X:
            jm, j0, j1 = _j_three(tn, x)
            resid = j1 - (2.0 * nu / x) * j0 + jm
            bound = 1e-10 * max(abs(jm), abs(j0), abs(j1), 1e-300)
            assert abs(resid) <= bound, (tn, x, resid, bound)


# ---------------------------------------------------------------------------
# derivative consistency: downward recursion vs upward recursion

_R_GRID = _GRID_X[::4]  # 50 points, shares kernel cache with the grid above


def _xi_prime_up(l: int, d: int, r: float) -> float:
    # upward form: -((l + d - 2)/r) Xi_l + Xi_{l-1}, valid for l >= 1
    return -((l + d - 2) / r) * eval_Xi(l, d, r).value + eval_Xi(l - 1, d, r).value


def test_xi_prime_two_recursions_agree():
    for d in (2, 3):
        for l in (1, 2, 5, 10):
            for r in _R_GRID:
                a = eval_Xi_prime(l, d, r).value
                b = _xi_prime_up(l, d, r)
                assert abs(a - b) <= max(1e-11 * max(abs(a), abs(b)), 1e-14), (
                    l, d, r, a, b)


def test_xi_three_term_recursion():
    for d in (2, 3):
        for l in (2, 3, 7, 11):
            for r in _R_GRID:
                lhs = eval_Xi(l, d, r).value
                t1 = ((2 * l + d - 4) / r) * eval_Xi(l - 1, d, r).value
                t2 = eval_Xi(l - 2, d, r).value
                resid = lhs - (t1 - t2)
                bound = 1e-10 * max(abs(lhs), abs(t1), abs(t2), 1e-300)
                assert abs(resid) <= bound, (l, d, r, resid, bound)


def test_xi_half_integer_closed_form_constancy():
    base = None
    for r in _R_GRID:
        if abs(math.sin(r)) < 0.1:
            continue
        ratio = eval_Xi(0, 3, r).value * r / math.sin(r)
        if base is None:
            base = ratio
        else:
            assert ratio == pytest.approx(base, rel=1e-12)


# ---------------------------------------------------------------------------
# accuracy vs the extended-precision oracle


def test_kernel_matches_oracle_spot_grid():
    cases = [
        (0, 0.9), (0, 14.0), (0, 60.0), (0, 200.0),
        (1, 2.5), (1, 150.0), (3, 40.0),
        (40, 19.0), (41, 30.5), (81, 55.0),
        (120, 50.0), (121, 88.0), (200, 99.0),
        (240, 121.0), (240, 199.0),
    ]
    for tn, x in cases:
        got = eval_J(Order(tn), x)
        want = oracle.oracle_J(tn, x, dps=30)
        with mp.workdps(40):
            diff = abs(mp.mpf(got.value) - want)
            scale = max(abs(want), mp.mpf(1e-3))
            assert diff / scale <= 1e-12, (tn, x)


def test_kernel_near_zero_absolute_accuracy():
    for (tn, m), s in _frozen.BESSEL_ZEROS.items():
        x = float(mp.mpf(s))
        got = eval_J(Order(tn), x)
        want = oracle.oracle_J(tn, x, dps=30)
        with mp.workdps(40):
            assert abs(mp.mpf(got.value) - want) <= 1e-15


def test_underflow_raises_loss_of_precision():
    with pytest.raises(LossOfPrecision):
        eval_J(Order(240), 0.1)


def test_est_rel_err_within_contract_across_box():
    for tn in (0, 1, 2, 9, 40, 81, 120, 179, 240):
        for x in (0.05, 1.0, 13.9, 14.1, 33.0, 75.0, 140.0, 200.0):
            try:
                res = eval_J(Order(tn), x)
            except LossOfPrecision:
                continue  # honest refusal below the accuracy floor
            assert res.est_rel_err <= 1e-12
