"""Symmetric association schemes (Hamming, Johnson), their primitive
idempotents, union graphs, Delsarte t-designs and classical block designs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .codes import popcount, word_to_str
from .errors import (
    EmptyIndexSet,
    NumericalFailure,
    OutOfRange,
    OutOfSupportedRange,
    ParseError,
    TooLarge,
)
from .graph import EIGEN_TOL, Graph, SpectralDecomposition, assemble, build_graph

MAX_POINTS = 5000
ZERO_TOL = 1e-8


class AssociationScheme:
    """A symmetric association scheme given by its relation-index matrix.

    ``relation_index[x, y] = i`` iff (x, y) is in R_i.  Each primitive
    idempotent J_i is stored through a basis of its column space: integer
    orthogonal columns when ``exact`` (J_i = B B^T / |X| for character
    bases), orthonormal float columns otherwise.
    """

    def __init__(self, name: str, points: Sequence, relation_index: np.ndarray,
                 bases: Sequence[np.ndarray], exact: bool, labels: Sequence[str]):
        self.name = name
        self.points = list(points)
        self.relation_index = relation_index
        self.bases = list(bases)
        self.exact = exact
        self.labels = list(labels)
        self._index = {p: i for i, p in enumerate(self.points)}

    @property
    def point_count(self) -> int:
        return len(self.points)

    @property
    def classes(self) -> int:
        return int(self.relation_index.max())

    def index(self, point) -> int:
        return self._index[point]

    def relation(self, k: int) -> np.ndarray:
        return (self.relation_index == k).astype(np.int64)

    def idempotent(self, i: int) -> np.ndarray:
        b = self.bases[i]
        if self.exact:
            return (b @ b.T) / self.point_count
        return b @ b.T

    def idempotent_rank(self, i: int) -> int:
        return self.bases[i].shape[1]

    @cached_property
    def eigenmatrix(self) -> list[list]:
        """p[k][i]: the eigenvalue of D_k on col(J_i).  Exact integers on the
        exact path, floats otherwise."""
        out = []
        for k in range(self.classes + 1):
            dk = self.relation(k)
            row = []
            for i in range(self.classes + 1):
                b = self.bases[i][:, 0]
                if self.exact:
                    x = int(np.flatnonzero(b)[0])
                    val = Fraction(int(dk[x] @ b), int(b[x]))
                    row.append(int(val) if val.denominator == 1 else val)
                else:
                    row.append(float(b @ dk @ b))
            out.append(row)
        return out

    def intersection_numbers(self) -> np.ndarray:
        """c[i, j, k]: for (x, y) in R_k, the number of z with (x, z) in R_i and
        (y, z) in R_j, read from one representative pair per k."""
        n = self.classes + 1
        c = np.zeros((n, n, n), dtype=np.int64)
        ri = self.relation_index
        for k in range(n):
            xs, ys = np.nonzero(ri == k)
            x, y = int(xs[0]), int(ys[0])
            for i in range(n):
                for j in range(n):
                    c[i, j, k] = int(np.sum((ri[x] == i) & (ri[y] == j)))
        return c

    def annihilates(self, i: int, y: Iterable[int]) -> bool:
        """J_i 1_Y == 0."""
        ind = np.zeros(self.point_count, dtype=np.int64)
        ind[list(y)] = 1
        b = self.bases[i]
        if self.exact:
            return bool(np.all(b.T @ ind == 0))
        return float(np.linalg.norm(b @ (b.T @ ind))) < ZERO_TOL * np.sqrt(self.point_count)

    def report(self) -> dict:
        return {
            "scheme": self.name,
            "points": self.point_count,
            "classes": self.classes,
            "idempotent_ranks": [self.idempotent_rank(i) for i in range(self.classes + 1)],
            "eigenmatrix": [[str(v) if not isinstance(v, float) else f"{v:.12g}" for v in row]
                            for row in self.eigenmatrix],
            "intersection_numbers": self.intersection_numbers().tolist(),
        }


def hamming_scheme(n: int) -> AssociationScheme:
    """X = {0,1}^n with (x, y) in R_i iff d_H(x, y) = i; exact character idempotents."""
    if n < 2:
        raise OutOfSupportedRange("Hamming scheme needs n >= 2")
    if n > 10:
        raise TooLarge("Hamming scheme is limited to n <= 10")
    x = np.arange(1 << n, dtype=np.int64)
    ri = popcount(x[:, None] ^ x[None, :])
    par = popcount(x[:, None] & x[None, :]) & 1
    chars = (1 - 2 * par).astype(np.int64)
    wt = popcount(x)
    bases = [chars[:, wt == i] for i in range(n + 1)]
    return AssociationScheme(f"H({n},2)", list(range(1 << n)), ri, bases, True,
                             [word_to_str(int(v), n) for v in x])


def johnson_dimension(n: int, i: int) -> int:
    return comb(n, i) - (comb(n, i - 1) if i else 0)


def johnson_scheme(n: int, k: int) -> AssociationScheme:
    """k-subsets of {1..n} in lexicographic order; i-th associates when they
    share k - i elements.

    Idempotents come from an eigendecomposition of D_1, whose eigenvalue on
    col(J_i) is (k-i)(n-k-i) - i; ranks are checked against C(n,i) - C(n,i-1).
    """
    if not (1 <= k and 2 * k <= n):
        raise OutOfSupportedRange(f"Johnson scheme needs 1 <= k <= n/2, got ({n}, {k})")
    if comb(n, k) > MAX_POINTS:
        raise TooLarge(f"C({n},{k}) exceeds {MAX_POINTS} points")
    pts = list(itertools.combinations(range(1, n + 1), k))
    masks = np.array([sum(1 << (e - 1) for e in p) for p in pts], dtype=np.int64)
    ri = k - popcount(masks[:, None] & masks[None, :])
    d1 = (ri == 1).astype(float)
    mu, u = np.linalg.eigh(d1)
    bases = []
    for i in range(k + 1):
        target = (k - i) * (n - k - i) - i
        sel = np.abs(mu - target) < 1e-6
        if sel.sum() != johnson_dimension(n, i):
            raise NumericalFailure(
                f"J_{i} has rank {int(sel.sum())}, expected {johnson_dimension(n, i)}")
        bases.append(u[:, sel])
    return AssociationScheme(f"J({n},{k})", pts, ri, bases, False,
                             [",".join(map(str, p)) for p in pts])


def _check_indices(s: AssociationScheme, index_set: Iterable[int]) -> list[int]:
    idx = sorted(set(int(i) for i in index_set))
    if not idx:
        raise EmptyIndexSet("index set must be nonempty")
    if idx[0] < 1 or idx[-1] > s.classes:
        raise OutOfRange(f"relation indices must lie in 1..{s.classes}")
    return idx


def union_graph(s: AssociationScheme, index_set: Iterable[int]) -> Graph:
    """G_I = (X, union of R_i for i in I)."""
    idx = _check_indices(s, index_set)
    mask = np.isin(s.relation_index, idx)
    xs, ys = np.nonzero(np.triu(mask, 1))
    return build_graph(s.point_count, zip(xs.tolist(), ys.tolist()), s.labels)


def union_eigenvalue(s: AssociationScheme, index_set: Iterable[int], j: int):
    """Adjacency eigenvalue of G_I on col(J_j): sum over i in I of p_i(j)."""
    idx = _check_indices(s, index_set)
    return sum(s.eigenmatrix[i][j] for i in idx)


def scheme_decomposition(s: AssociationScheme, index_set: Iterable[int],
                         tol: float = EIGEN_TOL) -> SpectralDecomposition:
    """Eigenspaces of G_I built from the idempotents; idempotents sharing an
    eigenvalue are merged and listed in ``annotations``."""
    idx = _check_indices(s, index_set)
    g = union_graph(s, idx)
    deg = g.regular_degree
    groups: list[tuple[object, list[int]]] = []
    for j in range(s.classes + 1):
        mu = union_eigenvalue(s, idx, j)
        lam = Fraction(mu, deg) - 1 if s.exact else mu / deg - 1.0
        if not s.exact and abs(lam) < tol:
            lam = 0.0
        for grp in groups:
            if (grp[0] == lam) if s.exact else abs(grp[0] - lam) < tol:
                grp[1].append(j)
                break
        else:
            groups.append((lam, [j]))
    spaces = [(lam, np.hstack([s.bases[j] for j in js]), tuple(js)) for lam, js in groups]
    return assemble(g, spaces, "exact" if s.exact else "floating", tol)


def t_design_strength(s: AssociationScheme, y: Iterable[int]) -> int:
    """Largest t with J_i 1_Y = 0 for i = 1..t."""
    y = list(y)
    if not y:
        raise OutOfRange("Y must be nonempty")
    t = 0
    for i in range(1, s.classes + 1):
        if not s.annihilates(i, y):
            break
        t = i
    return t


@dataclass(frozen=True)
class BlockFamily:
    ground_size: int
    block_size: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for b in self.blocks:
            if len(b) != self.block_size or len(set(b)) != len(b):
                raise OutOfRange(f"block {b} does not have {self.block_size} distinct elements")
            if min(b) < 1 or max(b) > self.ground_size:
                raise OutOfRange(f"block {b} leaves [1, {self.ground_size}]")
            key = tuple(sorted(b))
            if key in seen:
                raise OutOfRange(f"duplicate block {key}")
            seen.add(key)


def block_family(n: int, blocks: Iterable[Iterable[int]]) -> BlockFamily:
    blocks = [tuple(sorted(int(x) for x in b)) for b in blocks]
    if not blocks:
        raise OutOfRange("a block family needs at least one block")
    return BlockFamily(n, len(blocks[0]), tuple(blocks))


def classical_t_design(b: BlockFamily, t: int) -> int | None:
    """lambda if every t-subset of [n] lies in exactly lambda blocks, else None."""
    if not 0 <= t <= b.block_size:
        raise OutOfRange(f"t must lie in 0..{b.block_size}")
    counts: dict[tuple[int, ...], int] = {}
    for blk in b.blocks:
        for sub in itertools.combinations(blk, t):
            counts[sub] = counts.get(sub, 0) + 1
    values = {counts.get(sub, 0) for sub in itertools.combinations(range(1, b.ground_size + 1), t)}
    return values.pop() if len(values) == 1 else None


def blocks_to_points(s: AssociationScheme, b: BlockFamily) -> list[int]:
    return sorted(s.index(blk) for blk in b.blocks)


def points_to_blocks(s: AssociationScheme, n: int, y: Iterable[int]) -> BlockFamily:
    return block_family(n, [s.points[i] for i in y])


def parse_blocks(text: str) -> list[tuple[int, ...]]:
    """Lines of space-separated 1-indexed elements."""
    out = []
    for ln in text.splitlines():
        if ln.strip():
            try:
                out.append(tuple(int(x) for x in ln.split()))
            except ValueError as exc:
                raise ParseError(f"bad block line {ln!r}") from exc
    return out


def format_blocks(b: BlockFamily) -> str:
    return "".join(" ".join(map(str, blk)) + "\n" for blk in b.blocks)


FANO_LINES = ((1, 2, 5), (5, 6, 7), (1, 3, 7), (2, 4, 7), (3, 4, 5), (1, 4, 6), (2, 3, 6))


def fano_plane() -> BlockFamily:
    return block_family(7, FANO_LINES)
