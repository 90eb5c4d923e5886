"""The equitable quotient of K_t join (2K_1 union K_{n-t-2}) and its cubic.

The spectral radius of this join equals the largest root of a cubic whose
sign changes pin the root between n-3 and n-2. Everything below is exact
integer or rational arithmetic apart from the final eigenvalue comparison.
Run with ``python demos/quotient_cubic.py``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from graphfactors import char_poly, matrix_spectral_radius, quotient_matrix
from graphfactors.graph import pair_join_graph
from graphfactors.spectral import f_poly, rho

rows = []
for t in range(1, 5):
    for n in range(2 * t + 2, 21, 3):
        g = pair_join_graph(n, t)
        q = quotient_matrix(g, [[0, 1], range(2, t + 2), range(t + 2, n)])
        lam = matrix_spectral_radius(q)
        rows.append((n, t, char_poly(q), f_poly(n, t, n - 3), f_poly(n, t, Fraction(n - 2)), lam, rho(g)))

print(f"{'n':>3} {'t':>2}  {'char poly':<24} {'f(n-3)':>7} {'f(n-2)':>8} {'lambda_1':>12} {'|diff|':>9}")
for n, t, cp, lo, hi, lam, r in rows:
    print(f"{n:3d} {t:2d}  {str(cp):<24} {lo:7d} {str(hi):>8} {lam:12.8f} {abs(lam - r):9.1e}")

# %% the root always sits strictly between n-3 and n-2
gaps = np.array([(lam - (n - 3), (n - 2) - lam) for n, _, _, _, _, lam, _ in rows])
print("\nmin distance to n-3 and n-2:", gaps.min(axis=0))
