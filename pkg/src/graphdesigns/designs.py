"""Integration verdicts, k-design rank, efficacy and eigenbasis rebasing.

A subset W integrates a function f when the mean of f over W equals its mean
over V.  For an eigenspace with orthogonal projector P this is the single
test ``P (1_W/|W| - 1/|V|) = 0``, which does not depend on any basis.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadTarget,
    DimensionMismatch,
    Duplicate,
    FullyIntegrated,
    NotRegular,
    OutOfRange,
)
from .graph import Graph, SpectralDecomposition

# Relative tolerance for "this residual is zero" on the floating path.
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class Design:
    """A nonempty vertex subset, stored strictly increasing."""

    vertex_count: int
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def indicator(self) -> np.ndarray:
        x = np.zeros(self.vertex_count, dtype=np.int64)
        x[list(self.vertices)] = 1
        return x

    def residual(self) -> np.ndarray:
        """1_W/|W| - 1/|V|; W integrates an eigenspace iff it is orthogonal to it."""
        return self.indicator() / len(self) - 1.0 / self.vertex_count


def make_design(graph: Graph | SpectralDecomposition | int,
                vertices: Iterable[int]) -> Design:
    if isinstance(graph, SpectralDecomposition):
        n = graph.graph.vertex_count
    elif isinstance(graph, Graph):
        n = graph.vertex_count
    else:
        n = int(graph)
    vs = sorted(int(v) for v in vertices)
    if not vs:
        raise OutOfRange("a design must be nonempty")
    if len(set(vs)) != len(vs):
        raise Duplicate(f"repeated vertex in design {vs}")
    if vs[0] < 0 or vs[-1] >= n:
        raise OutOfRange(f"design vertices must lie in [0, {n})")
    return Design(n, tuple(vs))


@dataclass(frozen=True)
class DesignReport:
    """Verdicts and figures of merit for one design.

    ``efficacy`` is ``None`` when no eigenspace prefix is integrated (only
    possible on non-regular graphs); ``extremal`` is ``None`` on non-regular
    graphs, where extremality is not defined.
    """

    size: int
    per_eigenspace: tuple[bool, ...]
    k: int
    integrated_dimension: int
    efficacy: Fraction | None
    extremal: bool | None
    chosen_order: tuple[int, ...]

    @property
    def unintegrated(self) -> list[int]:
        return [i for i, ok in enumerate(self.per_eigenspace) if not ok]

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "per_eigenspace": list(self.per_eigenspace),
            "k": self.k,
            "integrated_dimension": self.integrated_dimension,
            "efficacy": None if self.efficacy is None else str(self.efficacy),
            "extremal": self.extremal,
            "chosen_order": list(self.chosen_order),
        }


def _check(d: SpectralDecomposition, w: Design) -> None:
    if w.vertex_count != d.graph.vertex_count:
        raise DimensionMismatch(
            f"design lives on {w.vertex_count} vertices, graph has {d.graph.vertex_count}")


def integrates_vector(d: SpectralDecomposition, w: Design, v: Sequence[float]) -> bool:
    """Mean of ``v`` over W equals its mean over V.

    Integer vectors are compared exactly; float vectors within a residual
    tolerance scaled by the norm of ``v``.
    """
    _check(d, w)
    v = np.asarray(v)
    if v.shape != (w.vertex_count,):
        raise DimensionMismatch(f"vector has shape {v.shape}, expected ({w.vertex_count},)")
    idx = list(w.vertices)
    if np.issubdtype(v.dtype, np.integer):
        return int(v[idx].sum()) * w.vertex_count == int(v.sum()) * len(w)
    diff = v[idx].mean() - v.mean()
    return abs(diff) < RESIDUAL_TOL * max(1.0, float(np.linalg.norm(v)))


def integrates_eigenspace(d: SpectralDecomposition, w: Design, idx: int) -> bool:
    _check(d, w)
    e = d.eigenspaces[idx]
    if e.integer_basis is not None:
        b = e.integer_basis
        s_w = b[list(w.vertices)].sum(axis=0)
        return bool(np.all(s_w * w.vertex_count == b.sum(axis=0) * len(w)))
    res = e.projector @ w.residual()
    return float(np.linalg.norm(res)) < RESIDUAL_TOL * np.sqrt(e.dimension)


def verdicts(d: SpectralDecomposition, w: Design) -> tuple[bool, ...]:
    return tuple(integrates_eigenspace(d, w, i) for i in range(len(d)))


def report_from_verdicts(size: int, dims: Sequence[int], tie_groups: Sequence[Sequence[int]],
                         flags: Sequence[bool], regular: bool) -> DesignReport:
    """Rank a design given per-eigenspace verdicts.

    Within each tie group integrated eigenspaces are placed first; the
    integrated prefix stops at the first tie group that is not fully
    integrated.  This maximizes both k and the integrated dimension over all
    orders that refine the frequency order.
    """
    order: list[int] = []
    k = 0
    dim = 0
    open_prefix = True
    for grp in tie_groups:
        good = [i for i in grp if flags[i]]
        bad = [i for i in grp if not flags[i]]
        order.extend(good + bad)
        if open_prefix:
            k += len(good)
            dim += sum(dims[i] for i in good)
            if bad:
                open_prefix = False
    efficacy = Fraction(size, dim) if dim else None
    extremal = (sum(1 for f in flags if not f) == 1) if regular else None
    return DesignReport(size, tuple(bool(f) for f in flags), k, dim, efficacy,
                        extremal, tuple(order))


def design_report(d: SpectralDecomposition, w: Design) -> DesignReport:
    flags = verdicts(d, w)
    dims = [e.dimension for e in d.eigenspaces]
    rep = report_from_verdicts(len(w), dims, d.tie_groups(), flags, d.regular_degree is not None)
    if rep.extremal:
        # the residual must lie inside the one unintegrated eigenspace
        rep = replace(rep, extremal=_residual_confined(d, w, flags))
    return rep


def _residual_confined(d: SpectralDecomposition, w: Design, flags: Sequence[bool]) -> bool:
    r = w.indicator() - len(w) / w.vertex_count
    if not np.any(np.abs(r) > 0):
        return False
    bad = [i for i, f in enumerate(flags) if not f]
    if len(bad) != 1:
        return False
    if d.exact:
        # completeness of the integer bases makes the verdict count decisive
        return True
    p = d.eigenspaces[bad[0]].projector
    return float(np.linalg.norm(p @ r - r)) < RESIDUAL_TOL * max(1.0, float(np.linalg.norm(r)))


def is_extremal(d: SpectralDecomposition, w: Design) -> bool:
    """1_W - (|W|/|V|) 1 is nonzero and lies in a single nontrivial eigenspace."""
    if d.regular_degree is None:
        raise NotRegular("extremal designs are defined on regular graphs only")
    _check(d, w)
    return _residual_confined(d, w, verdicts(d, w))


# --------------------------------------------------------------------------
# rebasing

def _integration_defects(basis: np.ndarray, w: Design) -> np.ndarray:
    """a_i = phi_i . (1/|V| - 1_W/|W|) for every column phi_i."""
    return basis.T @ (-w.residual())


def integrated_count(basis: np.ndarray, w: Design, tol: float = RESIDUAL_TOL) -> int:
    a = _integration_defects(np.asarray(basis, dtype=float), w)
    return int(np.sum(np.abs(a) < tol))


def rebase(basis: np.ndarray, w: Design, j: int, tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Return an orthonormal basis of the same space in which W integrates
    exactly ``j`` vectors, listed first.

    Steps down by replacing an unintegrated/integrated pair phi1, phi2 with
    (phi1 +- phi2)/sqrt(2); steps up by replacing two unintegrated vectors
    with a1 phi1 + a2 phi2 and phi1/a1 - phi2/a2 (both then normalized).
    """
    q = np.array(basis, dtype=float)
    if q.ndim != 2 or q.shape[0] != w.vertex_count:
        raise DimensionMismatch(f"basis shape {q.shape} does not match {w.vertex_count} vertices")
    dim = q.shape[1]
    a = _integration_defects(q, w)
    ok = np.abs(a) < tol
    if ok.all():
        if j == dim:
            return q
        raise FullyIntegrated("W integrates the whole eigenspace; every basis has all vectors integrated")
    if not 0 <= j <= dim - 1:
        raise BadTarget(f"target {j} outside 0..{dim - 1}")

    while ok.sum() > j:
        i1 = int(np.flatnonzero(~ok)[0])
        i2 = int(np.flatnonzero(ok)[0])
        p1, p2 = q[:, i1].copy(), q[:, i2].copy()
        q[:, i1] = (p1 + p2) / np.sqrt(2)
        q[:, i2] = (p1 - p2) / np.sqrt(2)
        a = _integration_defects(q, w)
        ok = np.abs(a) < tol
    while ok.sum() < j:
        i1, i2 = (int(x) for x in np.flatnonzero(~ok)[:2])
        a1, a2 = a[i1], a[i2]
        u = a1 * q[:, i1] + a2 * q[:, i2]
        v = q[:, i1] / a1 - q[:, i2] / a2
        q[:, i1] = u / np.linalg.norm(u)
        q[:, i2] = v / np.linalg.norm(v)
        a = _integration_defects(q, w)
        ok = np.abs(a) < tol

    # integrated vectors first, then re-orthonormalize in that order
    order = list(np.flatnonzero(ok)) + list(np.flatnonzero(~ok))
    q = q[:, order]
    out = np.empty_like(q)
    for c in range(dim):
        v = q[:, c].copy()
        for prev in range(c):
            v -= (out[:, prev] @ v) * out[:, prev]
        out[:, c] = v / np.linalg.norm(v)
    return out
