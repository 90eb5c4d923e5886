"""Odd [1,b]-factors above the threshold T(n,b,delta), by seeded sampling.

Orders around 20 are far past exhaustive reach, so the check draws random
connected graphs with minimum degree delta (dense G(n,p) samples and small
edits of the extremal graph) and asks the factor checker about each one
whose spectral radius reaches the threshold. A clean run is evidence only.
Run with ``python demos/sampled_odd_factors.py``.
"""

from __future__ import annotations

from graphfactors import Sampler, odd_1b_factor, verify_thm_1_2, verify_thm_5_1
from graphfactors.graph import t_graph
from graphfactors.spectral import rho
from graphfactors.theorems import f_bound

# %% the extremal graph is refuted by its own hub
for b, delta in [(1, 2), (3, 1)]:
    n = f_bound(b, delta)
    n += n % 2
    t = t_graph(n, b, delta)
    res = odd_1b_factor(t, b)
    print(f"T({n},{b},{delta}): rho={rho(t):.6f} {res.outcome.value} by {res.method}, S={sorted(res.witness)},"
          f" o(G-S)={res.violation[0]} > {res.violation[1]}")

# %% sampling: the same seed always gives the same report
for b, delta in [(1, 2), (3, 1)]:
    rep = verify_thm_1_2(20, b, delta, Sampler(seed=7, count=2000))
    print(f"\n(20,{b},{delta}) {rep.verdict}: {rep.summary}")
    print("   samples in the hypothesis:", rep.hypothesis_count, rep.details["samples_by_strategy"])

# %% the isolated-vertex variants: [1,b]-factors and fractional perfect matchings
for variant, n, b in [("oneb", 16, 2), ("fpm", 12, 1)]:
    rep = verify_thm_5_1(n, b, 1, variant, Sampler(seed=3, count=1000))
    print(f"{variant}: {rep.summary}, extremal {rep.details['extremal_outcome']} by {rep.details['extremal_method']}")
