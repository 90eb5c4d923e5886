"""Spectral radius, Perron vectors, equitable quotient matrices.

Eigenvalues come from shifted power iteration started at the all-ones vector.
On a nonnegative matrix that start has positive overlap with the Perron
vector of every component, so the iteration converges to the largest
eigenvalue; the ``+I`` shift keeps bipartite graphs (whose spectrum is
symmetric about 0) from oscillating.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, ConvergenceError, NotEquitableError, ParameterError
from .graph import Graph, component_masks, mask_vertices, to_mask

DEFAULT_TOL = 1e-10
TIE_TOL = 1e-9
MAX_ITER = 10**6


@dataclass(frozen=True)
class Spectrum:
    rho: float
    perron: np.ndarray | None
    iterations: int
    residual: float


def _power_iteration(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, int, float]:
    n = a.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    for it in range(1, max_iter + 1):
        y = a @ x
        rho = float(x @ y)
        residual = float(np.max(np.abs(y - rho * x)))
        if residual <= tol:
            return rho, x, it, residual
        x = y + x
        x /= np.linalg.norm(x)
    raise ConvergenceError(f"power iteration did not reach residual {tol:g} in {max_iter} iterations")


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> Spectrum:
    """Largest adjacency eigenvalue of ``g``.

    For a disconnected graph the radius is the maximum over components and no
    Perron vector is returned.
    """
    if g.n < 1:
        raise ParameterError("spectral radius needs at least one vertex")
    if tol <= 0:
        raise ParameterError("tolerance must be positive")
    comps = component_masks(g)
    if len(comps) == 1:
        if g.n == 1:
            return Spectrum(0.0, np.ones(1), 0, 0.0)
        rho, x, it, res = _power_iteration(g.adjacency_matrix(), tol, max_iter)
        return Spectrum(rho, x, it, res)

    best = Spectrum(0.0, None, 0, 0.0)
    total = 0
    for comp in comps:
        if comp.bit_count() == 1:
            continue
        sub = g.induced(comp)
        # a component with no more edges than the current best cannot beat it
        if sub.num_edges <= best.rho:
            continue
        rho, _, it, res = _power_iteration(sub.adjacency_matrix(), tol, max_iter)
        total += it
        if rho > best.rho:
            best = Spectrum(rho, None, 0, res)
    return Spectrum(best.rho, None, total, best.residual)


def rho(g: Graph, tol: float = DEFAULT_TOL) -> float:
    return spectral_radius(g, tol).rho


def perron_vector(g: Graph, tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum with the unit positive eigenvector; ``g`` must be connected."""
    if g.n < 1:
        raise ParameterError("Perron vector needs at least one vertex")
    if len(component_masks(g)) != 1:
        raise ParameterError("Perron vector is only defined here for connected graphs")
    spec = spectral_radius(g, tol)
    if np.any(spec.perron <= 0):
        raise ConvergenceError("iterate lost positivity")
    return spec


def spectral_radii(adjs: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = 100_000) -> np.ndarray:
    """Batched shifted power iteration over a stack of adjacency matrices ``(B, n, n)``.

    Rows that miss the iteration cap are redone one at a time with
    :func:`spectral_radius`'s per-component solver.
    """
    a = np.asarray(adjs, dtype=float)
    batch, n, _ = a.shape
    out = np.zeros(batch)
    if batch == 0 or n == 0:
        return out
    x = np.full((batch, n), 1.0 / np.sqrt(n))
    active = np.arange(batch)
    for _ in range(max_iter):
        xa = x[active]
        y = np.einsum("bij,bj->bi", a[active], xa)
        r = np.einsum("bi,bi->b", xa, y)
        res = np.max(np.abs(y - r[:, None] * xa), axis=1)
        done = res <= tol
        out[active[done]] = r[done]
        keep = ~done
        active = active[keep]
        if active.size == 0:
            return out
        z = y[keep] + xa[keep]
        x[active] = z / np.linalg.norm(z, axis=1)[:, None]
    for b in active:
        out[b] = spectral_radius(Graph.from_adjacency(a[b]), tol).rho
    return out


# -- comparisons ---------------------------------------------------------------


class Verdict(enum.Enum):
    LESS = "Less"
    TIE = "Tie"
    GREATER = "Greater"


@dataclass(frozen=True)
class RhoOrder:
    verdict: Verdict
    margin: float
    rho_g: float
    rho_h: float


def classify(rho_g: float, rho_h: float, tie_tol: float = TIE_TOL) -> Verdict:
    margin = abs(rho_g - rho_h)
    if margin <= tie_tol:
        return Verdict.TIE
    return Verdict.GREATER if rho_g > rho_h else Verdict.LESS


def compare_rho(g: Graph, h: Graph, tie_tol: float = TIE_TOL) -> RhoOrder:
    """Order ``rho(g)`` against ``rho(h)``.

    Radii are computed at ``tie_tol / 10``; a tie is recomputed once at a 100x
    tighter tolerance before it is reported.
    """
    tol = tie_tol / 10
    rg, rh = rho(g, tol), rho(h, tol)
    if classify(rg, rh, tie_tol) is Verdict.TIE:
        rg, rh = rho(g, tol / 100), rho(h, tol / 100)
    return RhoOrder(classify(rg, rh, tie_tol), abs(rg - rh), rg, rh)


# -- quotient matrices ---------------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    entries: np.ndarray
    partition: tuple[frozenset[int], ...]


def quotient_matrix(g: Graph, partition: Sequence[Iterable[int] | int]) -> QuotientMatrix:
    """Equitable quotient matrix of ``g``; entry (r, c) is the neighbour count of any cell-r vertex in cell c."""
    masks = [to_mask(cell) for cell in partition]
    covered = 0
    for m in masks:
        if not m:
            raise ParameterError("partition cells must be non-empty")
        if covered & m:
            raise ParameterError("partition cells overlap")
        covered |= m
    if covered != g.full_mask:
        raise ParameterError("partition does not cover every vertex")

    k = len(masks)
    b = np.zeros((k, k), dtype=np.int64)
    for r, mr in enumerate(masks):
        verts = mask_vertices(mr)
        for c, mc in enumerate(masks):
            counts = {v: (g.adj[v] & mc).bit_count() for v in verts}
            ref = counts[verts[0]]
            for v, cnt in counts.items():
                if cnt != ref:
                    raise NotEquitableError(
                        f"vertex {v} in cell {r} has {cnt} neighbours in cell {c}, "
                        f"vertex {verts[0]} has {ref}"
                    )
            b[r, c] = ref
    return QuotientMatrix(b, tuple(frozenset(mask_vertices(m)) for m in masks))


def matrix_spectral_radius(m: QuotientMatrix | np.ndarray, tol: float = 1e-13, max_iter: int = MAX_ITER) -> float:
    """Largest eigenvalue of a small nonnegative (possibly non-symmetric) matrix.

    Power iteration on ``M + cI`` with ``c`` the largest entry, which makes the
    dominant eigenvalue of the shifted matrix the shifted Perron root.
    """
    a = np.asarray(m.entries if isinstance(m, QuotientMatrix) else m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError("matrix must be square")
    if np.any(a < 0):
        raise ParameterError("matrix must be nonnegative")
    c = float(np.max(np.abs(a))) if a.size else 0.0
    if c == 0.0:
        return 0.0
    shifted = a + c * np.eye(a.shape[0])
    x = np.ones(a.shape[0])
    x /= np.linalg.norm(x)
    for _ in range(max_iter):
        y = a @ x
        lam = float(x @ y)
        if np.max(np.abs(y - lam * x)) <= tol * max(1.0, abs(lam)):
            return lam
        x = shifted @ x
        x /= np.linalg.norm(x)
    raise ConvergenceError("matrix power iteration did not converge")


def char_poly(m: QuotientMatrix | np.ndarray | Sequence[Sequence[int]]) -> list[int]:
    """Exact integer characteristic polynomial, highest degree first (Faddeev-LeVerrier)."""
    raw = m.entries if isinstance(m, QuotientMatrix) else m
    a = [[int(v) for v in row] for row in np.asarray(raw).tolist()]
    n = len(a)
    if n > 8:
        raise CapacityError(f"char_poly limited to dimension <= 8, got {n}")
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]
    c_prev = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
        mk = [[sum(a[i][l] * mk[l][j] for l in range(n)) + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        tr = sum(sum(a[i][l] * mk[l][i] for l in range(n)) for i in range(n))
        c_prev = -tr // k
        if c_prev * k != -tr:
            raise ArithmeticError("non-integer characteristic polynomial coefficient")
        coeffs.append(c_prev)
    return coeffs


def poly_eval(coeffs: Sequence[int], x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def b1_matrix(n: int, t: int) -> np.ndarray:
    """Quotient matrix of K_t join (2K_1 union K_{n-t-2}) for cells (2K_1, K_t, K_{n-t-2})."""
    return np.array([[0, t, 0], [2, t - 1, n - t - 2], [0, t, n - t - 3]], dtype=np.int64)


def f_poly(n: int, t: int, lam):
    """lam^3 - (n-4) lam^2 - (n+2t-3) lam + 2tn - 2t^2 - 6t.

    Exact when ``lam`` is an ``int`` or ``Fraction``.
    """
    return lam**3 - (n - 4) * lam**2 - (n + 2 * t - 3) * lam + 2 * t * n - 2 * t * t - 6 * t


def f_poly_coefficients(n: int, t: int) -> list[int]:
    return [1, -(n - 4), -(n + 2 * t - 3), 2 * t * n - 2 * t * t - 6 * t]


def f_poly_at_n_minus_2(n: int, t: int) -> Fraction:
    """Closed form (n - 3/2)^2 - 2t^2 - 2t - 1/4 as an exact rational."""
    return (Fraction(n) - Fraction(3, 2)) ** 2 - 2 * t * t - 2 * t - Fraction(1, 4)
