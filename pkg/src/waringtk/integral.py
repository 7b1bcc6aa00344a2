"""Weighted generating sums and singular integrals.

u(beta) = k^-1 sum_{m=1}^n m^(t/kl - 1) e(beta m)
v(beta) = k^-1 sum over X1^k < x <= (2 X1)^k of x^(1/k - 1) e(beta x)
w(beta) = k^-1 sum over 2 <= x <= n of x^(1/k - 1) (log x)^-1 e(beta x)

J'_s(n) = int_{-1/2}^{1/2} u(beta)^s e(-beta n) dbeta, which by
orthogonality is the weighted composition count
k^-s sum_{m_1+...+m_s = n} prod m_i^(xi/kl - 1).  Non-integer weights
rule out exact rational convolution; all convolution weights are
positive, so FFT convolution carries no cancellation and the relative
error stays at machine-epsilon scale.
"""

from __future__ import annotations

import math

import numpy as np

from waringtk.convolve import float_convolve
from waringtk.errors import PreconditionError, ResourceError
from waringtk.expsums import s_form

N_BUDGET = 10**7


def _weighted_exp_sum(weights: np.ndarray, support: np.ndarray, beta: float) -> complex:
    phase = np.exp(2j * np.pi * beta * support)
    return complex(np.dot(weights, phase))


def u_beta(beta: float, n: int, t: int, k: int, l: int) -> complex:
    """u(beta), direct O(n) summation."""
    if n < 1:
        raise PreconditionError("need n >= 1")
    if n > N_BUDGET:
        raise ResourceError(f"n = {n} exceeds budget {N_BUDGET}")
    m = np.arange(1, n + 1, dtype=np.float64)
    return _weighted_exp_sum(m ** (t / (k * l) - 1.0) / k, m, beta)


def c_tl(t: int, l: int) -> float:
    """Gamma-ratio constant Gamma(1 + 1/l)^t / Gamma(t/l)."""
    if t < 1 or l < 1:
        raise PreconditionError("need t, l >= 1")
    return math.gamma(1 + 1 / l) ** t / math.gamma(t / l)


def decay_exponent(t: int, k: int, l: int) -> float:
    """min(1, t/kl), the decay rate of u against (1 + n|beta|)."""
    return min(1.0, t / (k * l))


def u_decay_check(
    n: int, t: int, k: int, l: int, sample_count: int = 50, seed: int = 0
) -> float:
    """max over sampled beta of |u(beta)| (1 + n|beta|)^gamma / P^t."""
    if sample_count < 10:
        raise PreconditionError("need sample_count >= 10")
    rng = np.random.default_rng(seed)
    gamma = decay_exponent(t, k, l)
    P = n ** (1.0 / (k * l))
    betas = np.concatenate([[0.0], rng.uniform(-0.5, 0.5, sample_count - 1)])
    best = 0.0
    for b in betas:
        ratio = abs(u_beta(float(b), n, t, k, l)) * (1 + n * abs(b)) ** gamma / P**t
        best = max(best, ratio)
    return best


def U_major(alpha: float, a: int, q: int, n: int, k: int, l: int, t: int) -> complex:
    """Major-arc approximant c_{t,l} q^-t S(q,a) u(alpha - a/q)."""
    beta = alpha - a / q
    if abs(beta) > 0.5:
        raise PreconditionError("need |alpha - a/q| <= 1/2")
    if q == 1:
        sq = 1 + 0j
    else:
        sq = s_form(q, a, k, l, t)
    return c_tl(t, l) * sq / q**t * u_beta(beta, n, t, k, l)


def v_support(n: int, k: int) -> tuple[int, int]:
    """Integer support (lo, hi] of v(beta): X1^k < x <= (2 X1)^k."""
    X1 = 0.5 * (2 * k) ** (-1.0 / (k - 1)) * n ** (1.0 / k)
    return math.floor(X1**k), math.floor((2 * X1) ** k)


def v_beta(beta: float, n: int, k: int) -> complex:
    lo, hi = v_support(n, k)
    if hi > N_BUDGET:
        raise ResourceError("v support exceeds budget")
    x = np.arange(lo + 1, hi + 1, dtype=np.float64)
    return _weighted_exp_sum(x ** (1.0 / k - 1.0) / k, x, beta)


def w_beta(beta: float, n: int, k: int) -> complex:
    if n > N_BUDGET:
        raise ResourceError("w support exceeds budget")
    x = np.arange(2, n + 1, dtype=np.float64)
    return _weighted_exp_sum(x ** (1.0 / k - 1.0) / (k * np.log(x)), x, beta)


def _u_weight_vector(n: int, expo_num: int, k: int, l: int) -> np.ndarray:
    """[0, 1^(c-1), 2^(c-1), ...] with c = expo_num/(kl), length n+1."""
    w = np.zeros(n + 1)
    m = np.arange(1, n + 1, dtype=np.float64)
    w[1:] = m ** (expo_num / (k * l) - 1.0)
    return w


def j_prime_exact(n: int, s: int, xi: int, k: int, l: int) -> float:
    """J'_s(n) as the weighted composition count, exact convolution.

    s = 2 is a direct O(n) sum (and is exactly k^-2 (n-1) when xi = kl);
    s >= 3 goes through the FFT convolution chain.
    """
    if s < 2:
        raise PreconditionError("need s >= 2")
    if n > 10**6:
        raise ResourceError("n exceeds the singular-integral budget")
    if n < s:
        return 0.0
    c = xi / (k * l)
    if s == 2:
        m = np.arange(1, n, dtype=np.float64)
        return float(np.sum(m ** (c - 1.0) * (n - m) ** (c - 1.0))) / k**2
    w = _u_weight_vector(n, xi, k, l)
    acc = w
    for _ in range(s - 2):
        acc = float_convolve(acc, w, trunc=n + 1)
    # final convolution only needs index n
    return float(np.dot(acc[: n + 1], w[: n + 1][::-1])) / k**s


def j_prime_quadrature(n: int, s: int, xi: int, k: int, l: int, nodes: int | None = None) -> float:
    """Trapezoid quadrature of int u(beta)^s e(-beta n) dbeta over a full
    period (uniform nodes; equals the rectangle rule by periodicity),
    evaluated through one FFT of the weight vector."""
    if nodes is None:
        nodes = 8 * n
    N = 1
    while N < max(nodes, n + 1):
        N *= 2
    w = np.zeros(N)
    w[1 : n + 1] = _u_weight_vector(n, xi, k, l)[1:] / k
    U = np.fft.fft(w)  # U[j] = u(-j/N) conj pattern; u(j/N) = conj(U[j])
    u_vals = np.conj(U)
    phases = np.exp(-2j * np.pi * np.arange(N) * (n % N) / N)
    return float(np.real(np.mean(u_vals**s * phases)))


def j_prime_main_term(n: int, s: int, xi: int, k: int, l: int) -> tuple[float, float]:
    """(main, B): main = n^(s xi/kl - 1) k^-s Gamma(xi/kl)^s / Gamma(s xi/kl),
    B(n) = n^-1 + n^(-xi/kl)."""
    if s < 2:
        raise PreconditionError("need s >= 2")
    c = xi / (k * l)
    main = n ** (s * c - 1.0) * math.gamma(c) ** s / (k**s * math.gamma(s * c))
    B = 1.0 / n + n ** (-c)
    return main, B


def j_singular_exact(n: int, s: int, k: int, l: int, t: int) -> tuple[float, float]:
    """(J(n), reference envelope P^st X^4 / (n (log n)^2)).

    J(n) is the weighted count over x_1 + ... + x_4 + y_1 + ... + y_s = n
    with two v-weighted, two w-weighted and s u-weighted variables.
    """
    if n > 10**6:
        raise ResourceError("n exceeds the singular-integral budget")
    lo, hi = v_support(n, k)
    v = np.zeros(min(hi, n) + 1)
    x = np.arange(lo + 1, min(hi, n) + 1, dtype=np.float64)
    v[lo + 1 : min(hi, n) + 1] = x ** (1.0 / k - 1.0) / k
    wv = np.zeros(n + 1)
    x = np.arange(2, n + 1, dtype=np.float64)
    wv[2:] = x ** (1.0 / k - 1.0) / (k * np.log(x))
    acc = float_convolve(v, v, trunc=n + 1)
    acc = float_convolve(acc, wv, trunc=n + 1)
    acc = float_convolve(acc, wv, trunc=n + 1)
    if s > 0:
        u = _u_weight_vector(n, t, k, l) / k
        for _ in range(s):
            acc = float_convolve(acc, u, trunc=n + 1)
    X = n ** (1.0 / k)
    P = X ** (1.0 / l)
    envelope = P ** (s * t) * X**4 / (n * math.log(n) ** 2)
    return float(acc[n]), envelope
