import math

import pytest

from waringtk.errors import PreconditionError
from waringtk.expsums import s_form
from waringtk.singular import (
    positivity_sweep,
    s_form_all,
    s_n_prime_q,
    s_n_q,
    snm_identity_check,
    truncated_series,
)

K, L, T = 2, 2, 8


def test_s_form_all_matches_u_reduction():
    for q in (2, 3, 4, 6, 9, 12, 25):
        units, vals = s_form_all(q, K, L, T)
        for a, v in zip(units, vals):
            if math.gcd(int(a), q) == 1:
                assert abs(v - s_form(q, int(a), K, L, T)) < 1e-9 * max(1.0, abs(v))


def test_snm_identity_small():
    for p, h in [(2, 1), (2, 2), (3, 1), (5, 1)]:
        for n in range(p**h):
            assert snm_identity_check(p, h, n, K, L, T, 1) < 1e-8


def test_s_n_multiplicative():
    for n in (0, 1, 5):
        for q1, q2 in [(2, 3), (3, 4), (4, 9), (5, 8)]:
            lhs = s_n_q(q1 * q2, n, K, L, T, 1)
            rhs = s_n_q(q1, n, K, L, T, 1) * s_n_q(q2, n, K, L, T, 1)
            assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))
            lhs = s_n_prime_q(q1 * q2, n, K, L, T, 1)
            rhs = s_n_prime_q(q1, n, K, L, T, 1) * s_n_prime_q(q2, n, K, L, T, 1)
            assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))


def test_s_n_trivial_modulus():
    assert s_n_q(1, 7, K, L, T, 1) == 1
    assert s_n_prime_q(1, 7, K, L, T, 1) == 1


def test_truncation_agrees_with_euler_product():
    # squarefull-supported terms: the direct sum over q <= Q and the Euler
    # product over p^h <= Q pick up the same terms up to tail size
    full = truncated_series(10, 60, K, L, T, 1, variant="full")
    euler = truncated_series(10, 60, K, L, T, 1, variant="prime", prime_cutoff=60, ph_cutoff=60)
    assert full.imag_residual < 1e-10
    assert euler.imag_residual < 1e-10
    assert abs(full.value - euler.value) < 5 * full.tail_estimate


def test_truncation_convergence_trend():
    vals = [truncated_series(10, Q, K, L, T, 1).value for Q in (50, 100, 200)]
    assert abs(vals[2] - vals[1]) < 5 * 100 ** (-1.0 / K)
    assert abs(vals[1] - vals[0]) < 5 * 50 ** (-1.0 / K)


def test_series_positive_on_range():
    res = truncated_series(7, 100, K, L, T, 2)
    assert res.value > 0.1


def test_positivity_sweep_consistency():
    rep = positivity_sweep([5, 6, 7], K, L, T, 2, Q=50)
    single = truncated_series(rep.argmin_n, 50, K, L, T, 2).value
    assert rep.min_value == pytest.approx(single)
    assert rep.prime_failures == ()


def test_positivity_sweep_reports_bad_prime():
    # s = 1 fails the Mstar hypothesis at p = 2 (needs s >= 5)
    rep = positivity_sweep([5], K, L, T, 1, Q=20, series="SnPrime")
    assert any(p == 2 for p, _ in rep.prime_failures)


def test_bad_series_name():
    with pytest.raises(PreconditionError):
        truncated_series(5, 20, K, L, T, 1, series="bogus")
