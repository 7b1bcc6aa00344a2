"""Complete exponential sums and the multiplicative weight w_k.

The central objects are, for (a, q) = 1,

    S_k(q, a)      = sum_{r=1}^{q} e_q(a r^k)
    S_k(q, a, -u)  = sum_{r=1}^{q} e_q(a r^k - u r)
    S(q, a)        = sum_{r in [1,q]^t} e_q(a T(r)^k)
                   = q^{-1} sum_{u=1}^{q} S_l(q, u)^t S_k(q, a, -u)
    W(q, a)        = sum over units r of e_q(a r^k)

All roots of unity are taken from a single table of exp(2 pi i j / q)
with exactly reduced integer phases, so the only floating error is in the
final accumulation (documented tolerance 1e-9 per summed term).
"""

from __future__ import annotations

import cmath
import itertools
import math
from functools import lru_cache

import numpy as np

from waringtk.arith import factorize
from waringtk.errors import PreconditionError, ResourceError

S_FORM_Q_BUDGET = 5000
_DIRECT_ENUM_CAP = 2 * 10**6


@lru_cache(maxsize=256)
def omega_table(q: int) -> np.ndarray:
    """exp(2 pi i j / q) for j in [0, q)."""
    return np.exp(2j * np.pi * np.arange(q) / q)


def _check_coprime(q: int, a: int) -> None:
    if q == 1:
        return
    if math.gcd(a % q, q) != 1:
        raise PreconditionError(f"need gcd(a, q) = 1, got a={a}, q={q}")


@lru_cache(maxsize=512)
def power_residue_histogram(q: int, k: int, units_only: bool = False) -> tuple[int, ...]:
    """counts[m] = #{r in [1, q] : r^k = m (mod q)}, optionally unit r."""
    counts = [0] * q
    for r in range(1, q + 1):
        if units_only and math.gcd(r, q) != 1:
            continue
        counts[pow(r, k, q)] += 1
    return tuple(counts)


def _hist_dft_at(q: int, hist, a: int) -> complex:
    """sum_m hist[m] e_q(a m), exact phases."""
    om = omega_table(q)
    acc_re = []
    acc_im = []
    for m, c in enumerate(hist):
        if c:
            w = om[(a * m) % q]
            acc_re.append(c * w.real)
            acc_im.append(c * w.imag)
    return complex(math.fsum(acc_re), math.fsum(acc_im))


def s_k(q: int, a: int, k: int) -> complex:
    """Complete Weyl sum S_k(q, a) with (a, q) = 1."""
    if q < 1:
        raise PreconditionError("need q >= 1")
    if q == 1:
        return 1 + 0j
    _check_coprime(q, a)
    return _hist_dft_at(q, power_residue_histogram(q, k), a)


def w_q(q: int, a: int, k: int) -> complex:
    """W(q, a): the Weyl sum restricted to units."""
    if q == 1:
        return 1 + 0j
    _check_coprime(q, a)
    return _hist_dft_at(q, power_residue_histogram(q, k, units_only=True), a)


def s_k_linear(q: int, a: int, u: int, k: int) -> complex:
    """S_k(q, a, -u) = sum_r e_q(a r^k - u r); a need not be coprime here."""
    if q < 1:
        raise PreconditionError("need q >= 1")
    om = omega_table(q)
    re = []
    im = []
    for r in range(1, q + 1):
        w = om[(a * pow(r, k, q) - u * r) % q]
        re.append(w.real)
        im.append(w.imag)
    return complex(math.fsum(re), math.fsum(im))


@lru_cache(maxsize=256)
def _s_l_table(q: int, l: int) -> np.ndarray:
    """S_l(q, u) for u = 0..q-1 (index u % q; u = q means u = 0)."""
    hist = np.array(power_residue_histogram(q, l), dtype=np.float64)
    om = omega_table(q)
    out = np.empty(q, dtype=np.complex128)
    support = np.nonzero(hist)[0]
    weights = hist[support]
    for u in range(q):
        out[u] = np.dot(weights, om[(u * support) % q])
    return out


def s_form(q: int, a: int, k: int, l: int, t: int) -> complex:
    """S(q, a) via the u-orthogonality reduction (cost O(q^2)).

    The u-sum runs over a complete residue system: the u = q term (u = 0)
    is included and carries the main part p^{(t-1)h} S_k.
    """
    if q < 1:
        raise PreconditionError("need q >= 1")
    if q > S_FORM_Q_BUDGET:
        raise ResourceError(f"q = {q} exceeds the O(q^2) budget {S_FORM_Q_BUDGET}")
    if q == 1:
        return 1 + 0j
    _check_coprime(q, a)
    sl = _s_l_table(q, l)
    om = omega_table(q)
    powk = np.array([pow(r, k, q) for r in range(1, q + 1)], dtype=np.int64)
    g = om[(a * powk) % q]  # e_q(a r^k) for r = 1..q
    rr = np.arange(1, q + 1, dtype=np.int64)
    acc = 0j
    for u in range(q):
        sklin = np.dot(g, om[(-u * rr) % q])
        acc += sl[u] ** t * sklin
    return acc / q


def s_form_direct(q: int, a: int, k: int, l: int, t: int) -> complex:
    """Oracle: direct t-dimensional enumeration of S(q, a)."""
    if q**t > _DIRECT_ENUM_CAP:
        raise ResourceError("direct enumeration instance too large")
    _check_coprime(q, a)
    om = omega_table(q) if q > 1 else np.array([1 + 0j])
    re = []
    im = []
    for r in itertools.product(range(1, q + 1), repeat=t):
        tv = sum(x**l for x in r)
        w = om[(a * pow(tv, k, q)) % q]
        re.append(w.real)
        im.append(w.imag)
    return complex(math.fsum(re), math.fsum(im))


def w_k_weight(q: int, k: int) -> float:
    """Multiplicative majorant w_k: on p^(uk+v), p^(-u-1) for 2 <= v <= k
    and k p^(-u-1/2) for v = 1; w_k(1) = 1."""
    if q < 1:
        raise PreconditionError("need q >= 1")
    out = 1.0
    for p, e in factorize(q).entries:
        u, v = divmod(e - 1, k)
        v += 1  # e = u*k + v with 1 <= v <= k
        if v == 1:
            out *= k * p ** (-u - 0.5)
        else:
            out *= float(p) ** (-u - 1)
    return out


def e_error(p: int, h: int, a: int, k: int, l: int, t: int) -> tuple[complex, float]:
    """E(p^h, a) = S(p^h, a) - p^((t-1)h) S_k(p^h, a), with the reference
    envelope p^(ht - h/k - (t/l - 1)) reported alongside."""
    q = p**h
    big = s_form(q, a, k, l, t)
    main = p ** ((t - 1) * h) * s_k(q, a, k)
    envelope = float(p) ** (h * t - h / k - (t / l - 1))
    return big - main, envelope


# ---------------------------------------------------------------------------
# vectorised per-q tables over all coprime a (diagnostics and series work)
# ---------------------------------------------------------------------------


def coprime_residues(q: int) -> np.ndarray:
    r = np.arange(1, q + 1, dtype=np.int64)
    return r[np.array([math.gcd(int(x), q) == 1 for x in r])]


def hist_dft_all(q: int, hist, units: np.ndarray) -> np.ndarray:
    """sum_m hist[m] e_q(a m) for every a in units, vectorised."""
    om = omega_table(q)
    h = np.asarray(hist, dtype=np.float64)
    support = np.nonzero(h)[0]
    weights = h[support]
    if len(units) * len(support) <= 4_000_000:
        idx = np.outer(units, support) % q
        return om[idx] @ weights
    out = np.empty(len(units), dtype=np.complex128)
    for i, a in enumerate(units):
        out[i] = np.dot(weights, om[(a * support) % q])
    return out


def s_k_all(q: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """(units, S_k(q, a) for each coprime a)."""
    units = coprime_residues(q)
    if q == 1:
        return units, np.array([1 + 0j])
    return units, hist_dft_all(q, power_residue_histogram(q, k), units)


def w_all(q: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """(units, W(q, a) for each coprime a)."""
    units = coprime_residues(q)
    if q == 1:
        return units, np.array([1 + 0j])
    return units, hist_dft_all(q, power_residue_histogram(q, k, units_only=True), units)


def weight_bound_sweep(Q: int, k: int, which: str = "Sk") -> float:
    """Empirical constant in the w_k majorant bounds.

    which='Sk': max over q <= Q, (a,q)=1 of q^-1 |S_k(q,a)| / w_k(q).
    which='W' : same with phi(q)^-1 |W(q,a)|.
    The constant is expected stable (within a small factor) as Q doubles.
    """
    if which not in ("Sk", "W"):
        raise PreconditionError(f"which must be 'Sk' or 'W', got {which!r}")
    from waringtk.arith import euler_phi

    best = 1.0  # q = 1 gives ratio exactly 1
    for q in range(2, Q + 1):
        if which == "Sk":
            _, vals = s_k_all(q, k)
            norm = q
        else:
            _, vals = w_all(q, k)
            norm = euler_phi(q)
        ratio = float(np.max(np.abs(vals))) / (norm * w_k_weight(q, k))
        best = max(best, ratio)
    return best


def weight_sum_growth(Q_grid: list[int], k: int, s: int | None = None) -> list[dict]:
    """Rows of (Q, sum w_k(q)^2, sum q w_k(q)^s) for an epsilon-growth check."""
    if s is None:
        s = max(4, k + 1)
    if sorted(Q_grid) != list(Q_grid):
        raise PreconditionError("Q_grid must be ascending")
    rows = []
    sq2 = 0.0
    sqs = 0.0
    q = 0
    for Q in Q_grid:
        while q < Q:
            q += 1
            w = w_k_weight(q, k)
            sq2 += w * w
            sqs += q * w**s
        rows.append({"Q": Q, "sum_w2": sq2, "sum_qws": sqs})
    return rows
