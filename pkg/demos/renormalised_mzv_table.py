"""Table of renormalised multiple zeta values at nonpositive arguments.

Both schemes are printed side by side; the univariate one regularises along
eps = (-2, -1) t (or -(k..1) t in depth k).
"""
from itertools import product

from czv import chen_cone
from czv.arith import fmt_rational
from czv.renormalise import mzv_ren, zeta_ren_univariate

rows = []
for depth in (1, 2):
    for s in product(range(-2, 1), repeat=depth):
        if -sum(s) > 2:
            continue
        a = tuple(-(depth - i) for i in range(depth))
        multi = mzv_ren(s)
        uni = zeta_ren_univariate(chen_cone(depth), a, s=s)
        rows.append((s, multi, uni))

print(f"{'s':>10}  {'multivariate':>13}  {'univariate':>11}")
for s, m, u in rows:
    print(f"{str(s):>10}  {fmt_rational(m):>13}  {fmt_rational(u):>11}")
