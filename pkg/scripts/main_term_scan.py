"""Window-averaged weighted counts against the circle-method main term
C n^(s xi/kl - 1) S'(n) for n = x_1^k + ... + x_s^k over form values.

The ratio converges to 1 from below as n grows; at desk scale the
dominant error is the m^(-1/2)-size boundary deficit of rho_xi[m]
against c_{xi,l} m^(xi/l - 1) (variables are positive integers, so the
small-m range undershoots the continuous density).  This script records
the trend that the acceptance gate checks.
"""

import sys
import time

from waringtk import represent

K, L, XI, S = 2, 2, 5, 6
n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 200000

t0 = time.time()
vec = represent.count_theorem13(n_max, K, L, XI, S)
print(f"# count vector to n = {n_max} in {time.time() - t0:.1f}s")
print("window_lo,window_hi,ratio")
lo = n_max // 8
while 2 * lo <= n_max:
    r = represent.window_ratio(vec, lo, 2 * lo, K, L, XI, S)
    print(f"{lo},{2 * lo},{r:.6g}")
    lo *= 2
