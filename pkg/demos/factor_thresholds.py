"""Spectral thresholds that force [a,b]-factors, seen on the extremal graphs.

The threshold graph H_{n,a} = K_{a-1} join (K_1 union K_{n-a}) has no
[a,b]-factor; the question is whether every graph with a larger spectral
radius does. Run with ``python demos/factor_thresholds.py``.
"""

from __future__ import annotations

from graphfactors import FactorQuery, ab_factor, f_factor, verify_cor_1_1, verify_thm_1_3
from graphfactors.graph import h_na
from graphfactors.spectral import rho

# %% the threshold graphs and why they fail
for n, a in [(6, 1), (7, 2), (9, 3)]:
    h = h_na(n, a)
    res = ab_factor(h, FactorQuery(a, a + 1))
    why = f"S = {sorted(res.witness)}, {res.violation[0]} > {res.violation[1]}" if res.witness is not None else ""
    print(f"H_{{{n},{a}}}: rho = {rho(h):.6f}, min degree {min(h.degrees())},"
          f" [{a},{a + 1}]-factor -> {res.outcome.value} via {res.method} {why}")

# %% a=1 has an exact threshold n-2: K_1 union K_{n-1}
report = verify_thm_1_3(6, 1, 2)
print("\n(6,1,2):", report.summary, "threshold", report.to_dict()["threshold_rho"])
print("graphs tying the threshold but not isomorphic to it:", len(report.ties),
      "(all with a factor:", report.details["ties_with_factor"] == len(report.ties), ")")

# %% every labelled graph on 7 vertices, [2,2] and 2-factors via the Tutte gadget
for rep in (verify_thm_1_3(7, 2, 2), verify_cor_1_1(7, 2)):
    d = rep.details
    print(f"{rep.theorem}: {rep.summary}; {d['prefilter_survivors']} passed the edge-count bound,"
          f" {rep.hypothesis_count} above the threshold, decided by {d['decided_by']}")

# %% one extra edge at the low-degree vertex lifts rho past the threshold, and a 2-factor appears
h = h_na(7, 2)
v = h.degrees().index(1)
w = next(x for x in range(7) if x != v and not h.has_edge(v, x))
g = h.add_edge(v, w)
res = f_factor(g, 2)
print(f"\nH_{{7,2}} + {v}{w}: rho {rho(h):.6f} -> {rho(g):.6f}; 2-factor {res.outcome.value}: {res.edges()}")
