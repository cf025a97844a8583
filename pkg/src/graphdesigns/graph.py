"""Graphs, the random-walk Laplacian L = AD^-1 - I and its eigenspaces.

Two arithmetic paths produce a :class:`SpectralDecomposition`:

* ``floating`` -- a symmetric eigensolve of D^-1/2 A D^-1/2 followed by
  eigenvalue grouping at an absolute tolerance;
* ``exact`` -- an integer-valued orthogonal eigenbasis handed in by a
  constructor that knows the spectrum (cube characters, scheme idempotents),
  with eigenvalues as :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    Disconnected,
    Duplicate,
    Loop,
    NumericalFailure,
    OutOfRange,
    ParseError,
    UnknownFixture,
)

# Absolute tolerance for grouping eigenvalues and |lambda+1| tie values.
EIGEN_TOL = 1e-9
# Gaps in [tol, AMBIGUITY_FACTOR * tol) are treated as unresolvable.
AMBIGUITY_FACTOR = 1e3

Scalar = Fraction | float


@dataclass(frozen=True, eq=False)
class Graph:
    """A finite, simple, undirected, connected graph on vertices 0..n-1."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=1)
        d.setflags(write=False)
        return d

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nb = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @property
    def regular_degree(self) -> int | None:
        d = self.degrees
        return int(d[0]) if np.all(d == d[0]) else None

    @property
    def is_regular(self) -> bool:
        return self.regular_degree is not None

    def walk_matrix(self) -> np.ndarray:
        """A D^-1 as floats."""
        return self.adjacency / self.degrees[np.newaxis, :]

    def laplacian(self) -> np.ndarray:
        return self.walk_matrix() - np.eye(self.vertex_count)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def to_dict(self) -> dict:
        doc = {"n": self.vertex_count, "edges": [list(e) for e in self.edges]}
        if self.labels:
            doc["labels"] = list(self.labels)
        return doc

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={len(self.edges)})"


def build_graph(vertex_count: int, edges: Iterable[Sequence[int]],
                labels: Sequence[str] | None = None) -> Graph:
    """Validate and normalize an edge list into a :class:`Graph`.

    Edges are stored as sorted ``(min, max)`` pairs in lexicographic order.
    Raises :class:`OutOfRange`, :class:`Loop`, :class:`Duplicate` or
    :class:`Disconnected`.
    """
    n = int(vertex_count)
    if n < 2:
        raise OutOfRange(f"vertex_count must be at least 2, got {vertex_count}")
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise OutOfRange(f"edge {e!r} is not a pair")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise Loop(f"loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise Duplicate(f"duplicate edge {key}")
        seen.add(key)
    if labels is not None and len(labels) != n:
        raise OutOfRange(f"expected {n} labels, got {len(labels)}")
    g = Graph(n, tuple(sorted(seen)), tuple(labels) if labels is not None else None)
    if not _connected(g):
        raise Disconnected("graph is not connected")
    return g


def _connected(g: Graph) -> bool:
    nb = g.neighbors
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in nb[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == g.vertex_count


# --------------------------------------------------------------------------
# fixtures

def complete_graph(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2))


def complete_bipartite_graph(m: int, n: int) -> Graph:
    """K_{m,n} with parts {0..m-1} and {m..m+n-1}."""
    return build_graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def truncated_tetrahedron() -> Graph:
    # vertex (i, j): the corner-i end of tetrahedron edge ij
    verts = [(i, j) for i in range(4) for j in range(4) if i != j]
    index = {v: k for k, v in enumerate(verts)}
    edges = []
    for (i, j) in verts:
        for k in range(4):
            if k not in (i, j) and j < k:
                edges.append((index[(i, j)], index[(i, k)]))
        if i < j:
            edges.append((index[(i, j)], index[(j, i)]))
    labels = [f"{i}{j}" for i, j in verts]
    return build_graph(len(verts), edges, labels)


def kneser_graph(n: int, k: int) -> Graph:
    """KG(n, k): k-subsets of {1..n} (lexicographic), adjacent when disjoint."""
    pts = list(itertools.combinations(range(1, n + 1), k))
    edges = [(a, b) for a, b in itertools.combinations(range(len(pts)), 2)
             if not set(pts[a]) & set(pts[b])]
    return build_graph(len(pts), edges, [",".join(map(str, p)) for p in pts])


def petersen_graph() -> Graph:
    return kneser_graph(5, 2)


def fixture(name: str, *args: int) -> Graph:
    """Named graph fixtures: ``complete(n)``, ``complete_bipartite(m, n)``,
    ``truncated_tetrahedron`` and ``petersen``."""
    try:
        if name == "complete":
            (n,) = args
            return complete_graph(n)
        if name == "complete_bipartite":
            m, n = args
            if m < 1 or n < 1:
                raise OutOfRange("complete_bipartite needs both parts nonempty")
            return complete_bipartite_graph(m, n)
        if name in ("truncated_tetrahedron", "petersen"):
            if args:
                raise ValueError(f"{name} takes no parameters")
            return truncated_tetrahedron() if name == "truncated_tetrahedron" else petersen_graph()
    except (TypeError, ValueError) as exc:
        if isinstance(exc, OutOfRange):
            raise
        raise UnknownFixture(f"bad parameters for fixture {name!r}: {args}") from exc
    raise UnknownFixture(f"unknown fixture {name!r}")


def parse_fixture(spec: str) -> Graph:
    """Parse ``name[:a[,b]]``, e.g. ``complete:5`` or ``complete_bipartite:4,4``."""
    name, _, rest = spec.partition(":")
    try:
        args = [int(x) for x in rest.replace(":", ",").split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"cannot parse fixture arguments in {spec!r}") from exc
    return fixture(name.strip(), *args)


def load_graph(path: str) -> Graph:
    """Read the JSON interchange format ``{"n": int, "edges": [[u, v], ...]}``."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
        return build_graph(doc["n"], doc["edges"], doc.get("labels"))
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read graph file {path!r}: {exc}") from exc


# --------------------------------------------------------------------------
# spectral decomposition

@dataclass(frozen=True, eq=False)
class Eigenspace:
    """One eigenspace of L.

    ``basis`` holds orthonormal columns.  On the exact path ``integer_basis``
    holds mutually orthogonal integer columns spanning the same space, and
    all integration verdicts are decided with integer arithmetic on it.
    ``annotations`` carries constructor-specific labels (e.g. the character
    weights merged into this space).
    """

    eigenvalue: Scalar
    basis: np.ndarray
    projector: np.ndarray
    tie_group: int
    integer_basis: np.ndarray | None = None
    annotations: tuple = ()

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    @property
    def walk_eigenvalue(self) -> Scalar:
        """The eigenvalue of A D^-1 on this space, lambda + 1."""
        return self.eigenvalue + 1

    @property
    def frequency(self) -> Scalar:
        return abs(self.eigenvalue + 1)


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    graph: Graph
    eigenspaces: tuple[Eigenspace, ...]
    regular_degree: int | None
    arithmetic_mode: str  # "exact" | "floating"
    tolerance: float = EIGEN_TOL

    @property
    def exact(self) -> bool:
        return self.arithmetic_mode == "exact"

    def __len__(self) -> int:
        return len(self.eigenspaces)

    def __getitem__(self, i: int) -> Eigenspace:
        return self.eigenspaces[i]

    def tie_groups(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for i, e in enumerate(self.eigenspaces):
            groups.setdefault(e.tie_group, []).append(i)
        return [groups[k] for k in sorted(groups)]

    def trivial_index(self) -> int | None:
        """Index of the eigenvalue-0 eigenspace when the graph is regular."""
        if self.regular_degree is None:
            return None
        for i, e in enumerate(self.eigenspaces):
            if self.is_zero(e.eigenvalue):
                return i
        raise NumericalFailure("regular graph without eigenvalue 0")

    def is_zero(self, x: Scalar) -> bool:
        return x == 0 if self.exact else abs(x) < self.tolerance

    def index_of(self, eigenvalue: Scalar) -> int:
        for i, e in enumerate(self.eigenspaces):
            if self.is_zero(e.eigenvalue - eigenvalue):
                return i
        raise KeyError(eigenvalue)

    def least_walk_index(self) -> int:
        """Eigenspace of the least A D^-1 eigenvalue (lambda_n)."""
        return min(range(len(self)), key=lambda i: self.eigenspaces[i].eigenvalue)

    def second_walk_index(self) -> int:
        """Eigenspace holding lambda_2, the second largest A D^-1 eigenvalue
        counted with multiplicity."""
        order = sorted(range(len(self)), key=lambda i: self.eigenspaces[i].eigenvalue,
                       reverse=True)
        if self.eigenspaces[order[0]].dimension > 1:
            return order[0]
        return order[1]

    def spectrum(self) -> list[tuple[Scalar, int]]:
        return [(e.eigenvalue, e.dimension) for e in self.eigenspaces]


def format_scalar(x: Scalar) -> str:
    """Exact values as fraction strings, floats with 12 significant digits."""
    if isinstance(x, Fraction):
        return str(x)
    x = float(x) + 0.0
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def modified_gram_schmidt(vectors: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Orthonormalize columns in order, dropping numerically dependent ones."""
    out = []
    for col in np.asarray(vectors, dtype=float).T:
        v = col.copy()
        for q in out:
            v -= (q @ v) * q
        norm = np.linalg.norm(v)
        if norm > tol:
            out.append(v / norm)
    if not out:
        return np.zeros((vectors.shape[0], 0))
    return np.column_stack(out)


def _group_sorted(values: Sequence[float], tol: float) -> list[list[int]]:
    """Group indices of ascending ``values`` whose consecutive gaps are < tol."""
    groups: list[list[int]] = []
    for i, x in enumerate(values):
        if groups and x - values[groups[-1][-1]] < tol:
            groups[-1].append(i)
            continue
        if groups:
            gap = x - values[groups[-1][-1]]
            if gap < AMBIGUITY_FACTOR * tol:
                raise NumericalFailure(
                    f"eigenvalue gap {gap:.3e} is too close to the grouping tolerance {tol:g}")
        groups.append([i])
    return groups


def _tie_ranks(freqs: Sequence[Scalar], exact: bool, tol: float) -> list[int]:
    """Rank each frequency |lambda+1| (0 = largest), merging ties."""
    order = sorted(range(len(freqs)), key=lambda i: freqs[i], reverse=True)
    ranks = [0] * len(freqs)
    rank = -1
    prev = None
    for i in order:
        f = freqs[i]
        if prev is None or (f != prev if exact else prev - f >= tol):
            rank += 1
            prev = f
        ranks[i] = rank
    return ranks


def assemble(graph: Graph, spaces: Sequence[tuple], mode: str,
             tol: float = EIGEN_TOL) -> SpectralDecomposition:
    """Build a decomposition from ``(eigenvalue, basis_columns, annotations)``.

    On the exact path the basis columns are integer and mutually orthogonal;
    on the floating path they are re-orthonormalized here.  Eigenspaces are
    sorted by tie group, then by descending dimension, then by descending
    eigenvalue.
    """
    exact = mode == "exact"
    freqs = [abs(lam + 1) for lam, _, _ in spaces]
    ranks = _tie_ranks(freqs, exact, tol)
    built = []
    for (lam, cols, notes), rank in zip(spaces, ranks):
        cols = np.asarray(cols)
        if exact:
            ib = cols.astype(np.int64)
            ib.setflags(write=False)
            q = ib / np.linalg.norm(ib, axis=0)
        else:
            ib = None
            q = modified_gram_schmidt(cols)
        p = q @ q.T
        q.setflags(write=False)
        p.setflags(write=False)
        built.append(Eigenspace(lam, q, p, rank, ib, tuple(notes)))
    built.sort(key=lambda e: (e.tie_group, -e.dimension, -e.eigenvalue))
    return SpectralDecomposition(graph, tuple(built), graph.regular_degree, mode, tol)


def spectral_decomposition(g: Graph, tol: float = EIGEN_TOL) -> SpectralDecomposition:
    """Floating-path eigenspaces of L = A D^-1 - I.

    The symmetric matrix D^-1/2 A D^-1/2 is diagonalized; if u is one of its
    eigenvectors, D^1/2 u is an eigenvector of A D^-1 with the same value.
    """
    deg = g.degrees.astype(float)
    s = g.adjacency / np.sqrt(np.outer(deg, deg))
    try:
        mu, u = np.linalg.eigh(s)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(str(exc)) from exc
    groups = _group_sorted(mu, tol)
    half = np.sqrt(deg)[:, np.newaxis]
    spaces = []
    for grp in groups:
        lam = float(np.mean(mu[grp])) - 1.0
        if abs(lam) < tol:
            lam = 0.0
        spaces.append((lam, half * u[:, grp], ()))
    return assemble(g, spaces, "floating", tol)


def frequency_order(d: SpectralDecomposition) -> list[list[int]]:
    """Tie groups of eigenspace indices by strictly decreasing |lambda+1|."""
    return d.tie_groups()


def projector_sum(d: SpectralDecomposition) -> np.ndarray:
    return sum(e.projector for e in d.eigenspaces)


def reconstruct_walk_matrix(d: SpectralDecomposition) -> np.ndarray:
    """Sum of (lambda_i + 1) P_i; equals A D^-1 for regular graphs."""
    return sum(float(e.eigenvalue + 1) * e.projector for e in d.eigenspaces)


def spectrum_document(d: SpectralDecomposition) -> dict:
    return {
        "arithmetic": d.arithmetic_mode,
        "vertex_count": d.graph.vertex_count,
        "regular_degree": d.regular_degree,
        "eigenspaces": [
            {
                "index": i,
                "eigenvalue": format_scalar(e.eigenvalue),
                "walk_eigenvalue": format_scalar(e.eigenvalue + 1),
                "dimension": e.dimension,
                "tie_group": e.tie_group,
                **({"annotations": list(e.annotations)} if e.annotations else {}),
            }
            for i, e in enumerate(d.eigenspaces)
        ],
        "tie_groups": d.tie_groups(),
    }
