"""Binary linear codes given by GF(2) check matrices.

Words of length n are packed into Python/numpy integers with bit i holding
coordinate i+1 (counting from 1), so the string ``"100"`` is the
integer 1.  This matches the vertex labelling used by :mod:`graphdesigns.cube`.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import OutOfSupportedRange, ParseError, TooLarge, TooShort

MAX_ENUM_LENGTH = 24


def popcount(x: np.ndarray | int):
    if isinstance(x, (int, np.integer)):
        return int(x).bit_count()
    return np.bitwise_count(np.asarray(x, dtype=np.int64)).astype(np.int64)


def word_to_str(x: int, n: int) -> str:
    return "".join("1" if (x >> i) & 1 else "0" for i in range(n))


def str_to_word(s: str) -> int:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise ParseError(f"not a binary word: {s!r}")
    return sum(1 << i for i, c in enumerate(s) if c == "1")


@dataclass(frozen=True)
class BinaryMatrix:
    """A 0/1 matrix with rows packed into integers (bit j = column j)."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.bits) != self.rows or any(b < 0 or b >> self.cols for b in self.bits):
            raise ValueError("row data does not fit the stated shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        n = len(rows[0])
        if any(len(r) != n for r in rows) or any(x not in (0, 1) for r in rows for x in r):
            raise ValueError("rows must be equal-length 0/1 sequences")
        return cls(len(rows), n, tuple(sum(b << j for j, b in enumerate(r)) for r in rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BinaryMatrix":
        if not rows:
            raise ParseError("empty matrix")
        n = len(rows[0].strip())
        if any(len(r.strip()) != n for r in rows):
            raise ParseError("rows have different lengths")
        return cls(len(rows), n, tuple(str_to_word(r) for r in rows))

    @classmethod
    def from_words(cls, words: Iterable[int], cols: int) -> "BinaryMatrix":
        words = tuple(int(w) for w in words)
        return cls(len(words), cols, words)

    def to_strings(self) -> list[str]:
        return [word_to_str(b, self.cols) for b in self.bits]

    def to_array(self) -> np.ndarray:
        return np.array([[(b >> j) & 1 for j in range(self.cols)] for b in self.bits],
                        dtype=np.uint8)


def _echelon(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon basis (pivot = lowest set bit) of the GF(2) span."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r & (b & -b):
                r ^= b
        if r:
            low = r & -r
            basis = [b ^ r if b & low else b for b in basis]
            basis.append(r)
    return sorted(basis, key=lambda b: b & -b)


def gf2_rank(rows: Iterable[int]) -> int:
    return len(_echelon(rows))


def _kernel_basis(rows: Sequence[int], n: int) -> list[int]:
    """Basis of {x : popcount(r & x) even for every row r}."""
    ech = _echelon(rows)
    pivots = {(b & -b).bit_length() - 1: b for b in ech}
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        x = 1 << free
        for p, b in pivots.items():
            if (b >> free) & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def span(basis: Sequence[int]) -> np.ndarray:
    """All GF(2) combinations of ``basis`` as a sorted int64 array."""
    words = np.zeros(1, dtype=np.int64)
    for b in basis:
        words = np.concatenate([words, words ^ np.int64(b)])
    return np.sort(words)


class BinaryLinearCode:
    """The kernel of a check matrix over GF(2)."""

    def __init__(self, check_matrix: BinaryMatrix):
        self.check_matrix = check_matrix

    @property
    def length(self) -> int:
        return self.check_matrix.cols

    n = length

    @cached_property
    def generator_basis(self) -> tuple[int, ...]:
        return tuple(_kernel_basis(self.check_matrix.bits, self.length))

    @property
    def dimension(self) -> int:
        return self.length - gf2_rank(self.check_matrix.bits)

    @cached_property
    def codewords(self) -> np.ndarray:
        if self.length > MAX_ENUM_LENGTH:
            raise TooLarge(f"codeword enumeration is capped at length {MAX_ENUM_LENGTH}")
        words = span(self.generator_basis)
        words.setflags(write=False)
        return words

    def __len__(self) -> int:
        return 1 << self.dimension

    def __contains__(self, x: int) -> bool:
        return all(popcount(r & int(x)) % 2 == 0 for r in self.check_matrix.bits)

    @cached_property
    def distance(self) -> int | None:
        """Minimum nonzero weight; ``None`` for the zero code."""
        nz = self.codewords[self.codewords != 0]
        return int(popcount(nz).min()) if nz.size else None

    def weight_distribution(self) -> list[int]:
        return np.bincount(popcount(self.codewords), minlength=self.length + 1).tolist()

    def dual_words(self) -> np.ndarray:
        """Row span of the check matrix (the dual code), without enumerating C."""
        return span(_echelon(self.check_matrix.bits))

    def codeword_strings(self) -> list[str]:
        return sorted(word_to_str(int(x), self.length) for x in self.codewords)

    def rows_matrix(self) -> np.ndarray:
        """Codewords as a 0/1 array, one codeword per row."""
        w = self.codewords
        return ((w[:, None] >> np.arange(self.length)) & 1).astype(np.uint8)

    def same_code(self, other: "BinaryLinearCode") -> bool:
        return (self.length == other.length
                and _echelon(self.generator_basis) == _echelon(other.generator_basis))

    def __repr__(self) -> str:
        return f"BinaryLinearCode(n={self.length}, dim={self.dimension})"


def code_from_check_matrix(m: BinaryMatrix) -> BinaryLinearCode:
    if m.cols > MAX_ENUM_LENGTH:
        raise TooLarge(f"length {m.cols} exceeds the enumeration cap {MAX_ENUM_LENGTH}")
    return BinaryLinearCode(m)


def hamming_check_matrix(r: int) -> BinaryMatrix:
    """Columns are 1..2^r-1 in binary, least significant bit in the top row."""
    n = (1 << r) - 1
    rows = [sum(((j >> row) & 1) << (j - 1) for j in range(1, n + 1)) for row in range(r)]
    return BinaryMatrix(r, n, tuple(rows))


def hamming(r: int) -> BinaryLinearCode:
    """The Hamming code H_r of length 2^r - 1 (2 <= r <= 4)."""
    if not 2 <= r <= 4:
        raise OutOfSupportedRange(f"hamming({r}): supported range is 2..4")
    return BinaryLinearCode(hamming_check_matrix(r))


def dual(c: BinaryLinearCode) -> BinaryLinearCode:
    """C-perp, whose check matrix is a basis of C."""
    basis = _echelon(c.generator_basis) or [0]
    return BinaryLinearCode(BinaryMatrix(len(basis), c.length, tuple(basis)))


def lift(c: BinaryLinearCode, extra: int = 1) -> BinaryLinearCode:
    """Append ``extra`` zero columns to the check matrix: [M 0]."""
    m = c.check_matrix
    return code_from_check_matrix(BinaryMatrix(m.rows, m.cols + extra, m.bits))


def double_lift(c: BinaryLinearCode) -> BinaryLinearCode:
    return lift(c, 2)


def project(c: BinaryLinearCode) -> BinaryLinearCode:
    """Drop the last column of the check matrix."""
    m = c.check_matrix
    if m.cols < 2:
        raise TooShort("cannot project a length-1 code")
    mask = (1 << (m.cols - 1)) - 1
    return BinaryLinearCode(BinaryMatrix(m.rows, m.cols - 1, tuple(b & mask for b in m.bits)))


def predicted_unintegrated_weights(c: BinaryLinearCode) -> list[int]:
    """Weights of the nonzero dual codewords, sorted.

    The code, as a vertex subset of Q_n, fails to integrate exactly the
    characters chi_a with a a nonzero dual codeword.
    """
    words = c.dual_words()
    return sorted(popcount(words[words != 0]).tolist())


class OAStrength(NamedTuple):
    strength: int
    index: int


def orthogonal_array_strength(rows) -> OAStrength:
    """Largest k such that every k columns show each of the 2^k patterns
    equally often, with the index M / 2^k at that strength.

    ``rows`` is a :class:`BinaryMatrix` or an M x n 0/1 array.
    """
    a = rows.to_array() if isinstance(rows, BinaryMatrix) else np.asarray(rows, dtype=np.int64)
    m, n = a.shape
    best = 0
    for k in range(1, n + 1):
        if m % (1 << k):
            break
        weights = 1 << np.arange(k)
        want = m >> k
        ok = True
        for cols in itertools.combinations(range(n), k):
            counts = np.bincount(a[:, cols] @ weights, minlength=1 << k)
            if np.any(counts != want):
                ok = False
                break
        if not ok:
            break
        best = k
    return OAStrength(best, m >> best)


def load_check_matrix(path: str) -> BinaryMatrix:
    """Read a check matrix from a JSON list of '0'/'1' row strings or from a
    text file with one row string per line."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc
    try:
        rows = json.loads(text)
    except json.JSONDecodeError:
        rows = [ln for ln in text.split() if ln.strip()]
    if not isinstance(rows, list) or not all(isinstance(r, str) for r in rows):
        raise ParseError(f"{path!r}: expected a list of row strings")
    return BinaryMatrix.from_strings(rows)


def parse_code(spec: str) -> BinaryLinearCode:
    """``hamming:N``, ``lift:<code>``, ``double_lift:<code>``, ``project:<code>``,
    ``dual:<code>`` or ``file:PATH``."""
    head, _, rest = spec.partition(":")
    try:
        if head == "hamming":
            return hamming(int(rest))
        if head == "file":
            return code_from_check_matrix(load_check_matrix(rest))
        ops = {"lift": lift, "double_lift": double_lift, "project": project, "dual": dual}
        if head in ops and rest:
            return ops[head](parse_code(rest))
    except ValueError as exc:
        if isinstance(exc, (ParseError, OutOfSupportedRange, TooShort, TooLarge)):
            raise
        raise ParseError(f"cannot parse code spec {spec!r}") from exc
    raise ParseError(f"cannot parse code spec {spec!r}")
