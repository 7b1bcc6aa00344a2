import math
import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waringtk.errors import PreconditionError, ResourceError
from waringtk.powersets import (
    default_y_grid,
    density_report,
    distinct_count,
    grid_exponent,
    read_table_cache,
    realized_smoothness_bound,
    rep_count_enumerate,
    rep_count_table,
    restricted_power_sums,
    smooth_set,
    write_table_cache,
)


def test_rho_small_example():
    # l=2, t=2: rho[2] = 1 via (1,1); rho[5] = 2 via (1,2),(2,1)
    table = rep_count_table(2, 2, 10)
    assert table.rho[2] == 1
    assert table.rho[5] == 2
    assert table.rho[3] == 0
    assert table.rho[8] == 1  # (2,2)


@pytest.mark.parametrize("l,t,N", [(2, 1, 100), (2, 2, 400), (2, 3, 200), (3, 2, 500), (4, 3, 300)])
def test_convolution_equals_enumeration(l, t, N):
    assert list(rep_count_table(l, t, N).rho) == rep_count_enumerate(l, t, N)


def test_distinct_count_monotone_in_t():
    # adding a variable with value 1 shifts values by 1
    for t in (1, 2, 3):
        big = rep_count_table(2, t + 1, 300)
        small = rep_count_table(2, t, 300)
        assert distinct_count(big, 300) >= distinct_count(small, 299)


def test_smooth_set_by_factorization():
    got = smooth_set(50, 3)
    want = [
        m
        for m in range(1, 51)
        if all(p in (2, 3) for p in _prime_factors(m))
    ]
    assert got == want


def _prime_factors(m):
    out = set()
    d = 2
    while d * d <= m:
        while m % d == 0:
            out.add(d)
            m //= d
        d += 1
    if m > 1:
        out.add(m)
    return out


def test_realized_smoothness_bound():
    assert realized_smoothness_bound(4, 0.25) == 2  # floor(4^0.25) = 1 -> clamp
    assert realized_smoothness_bound(10**4, 0.25) == 10


def test_restricted_power_sums_tiny():
    # r=1, l=2, Y=4, R=2: smooth = {1,2,4}; squares {1,4,16}
    out = restricted_power_sums(1, 2, 4, R=2)
    assert out.values == (1, 4, 16)
    # r=2: pairwise sums
    out2 = restricted_power_sums(2, 2, 4, R=2)
    assert out2.values == (2, 5, 8, 17, 20, 32)


def test_restricted_power_sums_budget():
    with pytest.raises(ResourceError):
        restricted_power_sums(4, 3, 10**3, budget=10**6)


@given(st.integers(min_value=5, max_value=200), st.integers(min_value=5, max_value=200))
@settings(max_examples=20, deadline=None)
def test_smooth_sums_monotone_in_y(y1, y2):
    lo, hi = sorted((y1, y2))
    a = set(restricted_power_sums(2, 2, lo, R=3).values)
    b = set(restricted_power_sums(2, 2, hi, R=3).values)
    assert a <= b


def test_density_report_shape():
    rows = density_report(3, 2, [50, 100, 200])
    cards = [r["cardinality"] for r in rows]
    assert cards == sorted(cards)
    assert math.isnan(rows[0]["pair_slope"])
    assert rows[1]["pair_slope"] > 0
    assert rows[0]["reference_exponent"] == pytest.approx(2 - 2 * math.exp(1 - 3))


def test_grid_exponent_two_points():
    rows = density_report(2, 2, [100, 400])
    g = grid_exponent(rows)
    assert g == pytest.approx(
        math.log(rows[1]["cardinality"] / rows[0]["cardinality"]) / math.log(4)
    )


def test_default_y_grid_respects_budget():
    for r, l in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        grid = default_y_grid(r, l)
        assert len(grid) == 4 and grid == sorted(grid)
        assert r * grid[-1] ** l <= 10**7


def test_cache_round_trip(tmp_path):
    table = rep_count_table(2, 8, 500)
    path = os.path.join(tmp_path, "tables", "l2_t8_N500.bin")
    write_table_cache(table, path)
    back = read_table_cache(path)
    assert back == table


def test_cache_rejects_bad_magic(tmp_path):
    path = os.path.join(tmp_path, "bad.bin")
    with open(path, "wb") as fh:
        fh.write(b"NOPE" + b"\0" * 64)
    with pytest.raises(PreconditionError):
        read_table_cache(path)
