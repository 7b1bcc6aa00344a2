"""Record the empirical constants behind the big-O diagnostics and how
they move when the governing range doubles.

Covers: the w_k majorant bounds for S_k and W, the major-arc residual
constant, and the Weyl-envelope constant.
"""

import time

from waringtk import arcs, expsums

K, L, T = 2, 2, 8


def timed(label, fn, *args, **kw):
    t0 = time.time()
    out = fn(*args, **kw)
    print(f"{label}: {out:.6g}   ({time.time() - t0:.1f}s)")
    return out


print("== w_k majorant constants (q-range doubling) ==")
a1 = timed("S_k ratio, Q=250", expsums.weight_bound_sweep, 250, K, "Sk")
a2 = timed("S_k ratio, Q=500", expsums.weight_bound_sweep, 500, K, "Sk")
b1 = timed("W ratio,   Q=250", expsums.weight_bound_sweep, 250, K, "W")
b2 = timed("W ratio,   Q=500", expsums.weight_bound_sweep, 500, K, "W")
print(f"growth factors: Sk {a2 / a1:.3f}, W {b2 / b1:.3f}")

print("== sum growth of w_k (epsilon check) ==")
for row in expsums.weight_sum_growth([100, 1000, 10000], K):
    print(row)

print("== major-arc residual constant (P doubling: n -> 16n at k=l=2) ==")
r1 = timed("n = 6.25e4", arcs.major_residual_sweep, 62500, K, L, T, 5, 24, 0)
r2 = timed("n = 1e6  ", arcs.major_residual_sweep, 10**6, K, L, T, 5, 24, 0)
print(f"growth factor: {r2 / r1:.3f}")

print("== Weyl envelope constant (P doubling) ==")
w1 = timed("n = 6.25e4", arcs.weyl_bound_sweep, 62500, K, L, T, 24, 0)
w2 = timed("n = 1e6  ", arcs.weyl_bound_sweep, 10**6, K, L, T, 24, 0)
print(f"growth factor: {w2 / w1:.3f}")
