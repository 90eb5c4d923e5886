"""Which connected graph with a unique perfect matching has the largest spectral radius?

Walks through the candidate G(2n,1), checks every small graph, and then
replays the shifting procedure that turns any such graph into G(2n,1).
Run with ``python demos/unique_matching_maximiser.py``.
"""

from __future__ import annotations

from graphfactors import canonical_code, is_unique_pm, kelmans_sequence_to_extremal, verify_thm_1_1
from graphfactors.graph import g_unique_pm, path
from graphfactors.spectral import rho

# %% the candidate: u_i adjacent to w_1..w_i, the w's form a clique
for two_n in (2, 4, 6, 8, 10):
    g = g_unique_pm(two_n)
    print(f"G({two_n},1): {g.num_edges:3d} edges  rho = {rho(g):.6f}  unique PM: {is_unique_pm(g)}")

# %% every connected labelled graph on 4 and 6 vertices
for two_n in (4, 6):
    report = verify_thm_1_1(two_n)
    print(two_n, report.summary, "| unique-PM graphs:", report.hypothesis_count)
    print("   argmax:", report.details["argmax"], " G(2n,1):", canonical_code(g_unique_pm(two_n)).decode())

# %% shifting a path towards the extremal graph never lowers rho
seq = kelmans_sequence_to_extremal(path(6))
for step, h in enumerate(seq):
    print(f"step {step}: edges={h.num_edges} rho={rho(h):.6f}")
print("ends at G(6,1):", canonical_code(seq[-1]) == canonical_code(g_unique_pm(6)))
