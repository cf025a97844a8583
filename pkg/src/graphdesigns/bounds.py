"""Hoffman and Cheeger bounds, stable sets and exhaustive optimal-design search."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

import numpy as np

from .designs import Design, DesignReport, design_report, make_design
from .errors import (
    DegenerateSubset,
    EigenspaceMismatch,
    NotRegular,
    NotStable,
    TooLarge,
)
from .graph import Graph, Scalar, SpectralDecomposition, format_scalar

MAX_STABLE_VERTICES = 64
MAX_SEARCH = 10**8
BATCH_ROWS = 1 << 16


def _regular(d: SpectralDecomposition) -> int:
    if d.regular_degree is None:
        raise NotRegular("bound is stated for regular graphs")
    return d.regular_degree


def _ratio(a: int, b: int, exact: bool) -> Scalar:
    return Fraction(a, b) if exact else a / b


def hoffman_bound(d: SpectralDecomposition) -> Scalar:
    """-lambda_n / (1 - lambda_n), lambda_n the least A D^-1 eigenvalue."""
    _regular(d)
    lam = d.eigenspaces[d.least_walk_index()].walk_eigenvalue
    return -lam / (1 - lam)


def cheeger_ratio(d: SpectralDecomposition, w: Design) -> Scalar:
    """|V| |E(W, V-W)| / (deg |W| |V-W|)."""
    deg = _regular(d)
    n = d.graph.vertex_count
    if not 0 < len(w) < n:
        raise DegenerateSubset("W must be a nonempty proper subset")
    inside = np.zeros(n, dtype=bool)
    inside[list(w.vertices)] = True
    cut = sum(1 for u, v in d.graph.edges if inside[u] != inside[v])
    num, den = n * cut, deg * len(w) * (n - len(w))
    return Fraction(num, den) if d.exact else num / den


def cheeger_target(d: SpectralDecomposition) -> Scalar:
    """1 - lambda_2."""
    return 1 - d.eigenspaces[d.second_walk_index()].walk_eigenvalue


def cheeger_sharp(d: SpectralDecomposition, w: Design) -> bool:
    return _equal(d, cheeger_ratio(d, w), cheeger_target(d))


def _equal(d: SpectralDecomposition, a: Scalar, b: Scalar) -> bool:
    return a == b if d.exact else abs(a - b) < d.tolerance * 1e3


# --------------------------------------------------------------------------
# stable sets

def is_stable_set(g: Graph, vertices: Iterable[int]) -> bool:
    vs = set(int(v) for v in vertices)
    return not any(u in vs and v in vs for u, v in g.edges)


def max_stable_set(g: Graph, witness_limit: int | None = None) -> tuple[int, list[tuple[int, ...]]]:
    """Stability number and every maximum stable set (sorted), by branch and bound.

    Vertices are branched in decreasing-degree order; a greedy clique cover of
    the remaining candidates bounds how many more can be added.
    """
    n = g.vertex_count
    if n > MAX_STABLE_VERTICES:
        raise TooLarge(f"exact stable sets are limited to {MAX_STABLE_VERTICES} vertices")
    order = sorted(range(n), key=lambda v: (-len(g.neighbors[v]), v))
    nbr = [0] * n
    for v in range(n):
        for u in g.neighbors[v]:
            nbr[v] |= 1 << u

    def cover_bound(cand: int) -> int:
        cliques = 0
        rest = cand
        while rest:
            clique = rest & -rest
            common = nbr[clique.bit_length() - 1] & rest
            rest &= ~clique
            while common:
                b = common & -common
                clique |= b
                rest &= ~b
                common &= nbr[b.bit_length() - 1]
            cliques += 1
        return cliques

    best = 0
    found: list[int] = []

    def grow(chosen: int, size: int, cand: int) -> None:
        nonlocal best, found
        if not cand:
            if size > best:
                best, found = size, [chosen]
            elif size == best:
                found.append(chosen)
            return
        if size + cover_bound(cand) < best:
            return
        v = next(u for u in order if cand >> u & 1)
        grow(chosen | 1 << v, size + 1, cand & ~nbr[v] & ~(1 << v))
        grow(chosen, size, cand & ~(1 << v))

    grow(0, 0, (1 << n) - 1)
    sets = sorted(tuple(v for v in range(n) if s >> v & 1) for s in found)
    if witness_limit is not None:
        sets = sets[:witness_limit]
    return best, sets


# --------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class BoundCertificate:
    kind: str  # "hoffman" | "cheeger"
    bound_value: Scalar
    subset: Design
    attained: bool
    implicated_eigenspace: int

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "bound": format_scalar(self.bound_value),
            "subset": list(self.subset.vertices),
            "attained": self.attained,
            "implicated_eigenspace": self.implicated_eigenspace,
        }


def hoffman_certificate(d: SpectralDecomposition, w: Design) -> BoundCertificate:
    bound = hoffman_bound(d)
    if not is_stable_set(d.graph, w.vertices):
        raise NotStable("Hoffman certificates need a stable set")
    frac = _ratio(len(w), d.graph.vertex_count, d.exact)
    return BoundCertificate("hoffman", bound, w, _equal(d, frac, bound), d.least_walk_index())


def cheeger_certificate(d: SpectralDecomposition, w: Design) -> BoundCertificate:
    target = cheeger_target(d)
    return BoundCertificate("cheeger", target, w, _equal(d, cheeger_ratio(d, w), target),
                            d.second_walk_index())


def matching_eigenspace(src: SpectralDecomposition, dst: SpectralDecomposition,
                        idx: int, tol: float = 1e-8) -> int:
    """Index in ``dst`` of the eigenspace equal to ``src[idx]``."""
    if src.graph.vertex_count != dst.graph.vertex_count:
        raise EigenspaceMismatch("graphs have different vertex sets")
    p = src.eigenspaces[idx].projector
    for j, e in enumerate(dst.eigenspaces):
        if e.dimension == src.eigenspaces[idx].dimension and np.allclose(e.projector, p, atol=tol):
            return j
    raise EigenspaceMismatch("the implicated eigenspace is not an eigenspace of the target")


def via_hoffman_optimality(src: SpectralDecomposition, dst: SpectralDecomposition,
                           w: Design) -> DesignReport:
    """Re-report a Hoffman-sharp stable set of ``src`` on ``dst``.

    The certificate pins the residual inside the least eigenspace of the
    source; if that space is also an eigenspace of the target, W is extremal
    there and its report follows from the target's frequency order.
    """
    cert = hoffman_certificate(src, w)
    matching_eigenspace(src, dst, cert.implicated_eigenspace)
    return design_report(dst, make_design(dst, w.vertices))


# --------------------------------------------------------------------------
# exhaustive search

@lru_cache(maxsize=64)
def _colex(n: int, k: int) -> np.ndarray:
    """All k-subsets of range(n), colexicographic order, one per row."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    parts = [np.hstack([_colex(m, k - 1), np.full((comb(m, k - 1), 1), m, dtype=np.int64)])
             for m in range(k - 1, n)]
    out = np.vstack(parts) if parts else np.zeros((0, k), dtype=np.int64)
    out.setflags(write=False)
    return out


def colex_subsets(n: int, k: int, rows: int = BATCH_ROWS) -> Iterator[np.ndarray]:
    """Colexicographic k-subsets of range(n) in batches of at most ``rows``."""
    if comb(n, k) <= rows or k == 0:
        yield _colex(n, k)
        return
    for m in range(k - 1, n):
        for blk in colex_subsets(m, k - 1, rows):
            yield np.hstack([blk, np.full((blk.shape[0], 1), m, dtype=np.int64)])


def subset_verdicts(d: SpectralDecomposition, subsets: np.ndarray) -> np.ndarray:
    """Integration flags (rows = subsets, columns = eigenspaces) for a batch
    of equal-size subsets."""
    n = d.graph.vertex_count
    s = subsets.shape[1]
    out = np.empty((subsets.shape[0], len(d)), dtype=bool)
    for j, e in enumerate(d.eigenspaces):
        if e.integer_basis is not None:
            b = e.integer_basis
            sums = b[subsets].sum(axis=1)
            out[:, j] = np.all(sums * n == b.sum(axis=0) * s, axis=1)
        else:
            q = e.basis
            res = q[subsets].sum(axis=1) / s - q.sum(axis=0) / n
            out[:, j] = np.linalg.norm(res, axis=1) < 1e-8 * np.sqrt(e.dimension)
    return out


def prefix_dimensions(d: SpectralDecomposition, flags: np.ndarray) -> np.ndarray:
    """Integrated-prefix dimension per row, integrated spaces first in each tie group."""
    dims = np.array([e.dimension for e in d.eigenspaces], dtype=np.int64)
    total = np.zeros(flags.shape[0], dtype=np.int64)
    open_ = np.ones(flags.shape[0], dtype=bool)
    for grp in d.tie_groups():
        f = flags[:, grp]
        total += open_ * (f @ dims[grp])
        open_ &= f.all(axis=1)
    return total


def iter_verdicts(d: SpectralDecomposition, max_size: int,
                  min_size: int = 1) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    n = d.graph.vertex_count
    for s in range(min_size, min(max_size, n) + 1):
        for blk in colex_subsets(n, s):
            yield blk, subset_verdicts(d, blk)


@dataclass(frozen=True)
class SearchResult:
    best_efficacy: Fraction | None
    witnesses: tuple[tuple[int, ...], ...]
    sizes_examined: range
    exhaustive: bool
    subsets_examined: int

    def to_dict(self) -> dict:
        return {
            "best_efficacy": None if self.best_efficacy is None else str(self.best_efficacy),
            "witness_count": len(self.witnesses),
            "witnesses": [list(w) for w in self.witnesses],
            "sizes_examined": [self.sizes_examined.start, self.sizes_examined.stop - 1],
            "subsets_examined": self.subsets_examined,
            "exhaustive": self.exhaustive,
        }


def search_size(n: int, max_size: int) -> int:
    return sum(comb(n, s) for s in range(1, min(max_size, n) + 1))


def exhaustive_design_search(d: SpectralDecomposition, max_size: int) -> SearchResult:
    """Minimum efficacy over all subsets of size 1..max_size, with every
    witness in colexicographic order.  Subsets integrating nothing are skipped."""
    n = d.graph.vertex_count
    if max_size < 1:
        raise DegenerateSubset("max_size must be at least 1")
    total = search_size(n, max_size)
    if total > MAX_SEARCH:
        raise TooLarge(f"{total} subsets exceed the search cap {MAX_SEARCH}")
    best: Fraction | None = None
    witnesses: list[tuple[int, ...]] = []
    for blk, flags in iter_verdicts(d, max_size):
        dims = prefix_dimensions(d, flags)
        top = int(dims.max())
        if top == 0:
            continue
        eff = Fraction(blk.shape[1], top)
        if best is None or eff < best:
            best, witnesses = eff, []
        if eff == best:
            witnesses.extend(tuple(int(v) for v in row) for row in blk[dims == top])
    return SearchResult(best, tuple(witnesses), range(1, min(max_size, n) + 1),
                        max_size >= n, total)
