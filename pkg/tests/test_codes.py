import random

import numpy as np
import pytest

import oracles
from graphdesigns import codes, cube
from graphdesigns.codes import BinaryMatrix
from graphdesigns.errors import OutOfSupportedRange, ParseError, TooLarge, TooShort


def random_code(rng, n, max_rows=None):
    rows = rng.randint(1, max_rows or n)
    return codes.BinaryLinearCode(
        BinaryMatrix.from_rows([[rng.randint(0, 1) for _ in range(n)] for _ in range(rows)]))


def test_word_packing_is_little_endian():
    assert codes.str_to_word("100") == 1
    assert codes.word_to_str(6, 3) == "011"
    with pytest.raises(ParseError):
        codes.str_to_word("102")


def test_hamming_check_matrix_columns():
    m = codes.hamming_check_matrix(3).to_array()
    cols = [int(sum(m[r, j] << r for r in range(3))) for j in range(7)]
    assert cols == list(range(1, 8))


@pytest.mark.parametrize("r, size, dim", [(2, 2, 1), (3, 16, 4), (4, 2048, 11)])
def test_hamming_codes(r, size, dim):
    c = codes.hamming(r)
    assert len(c) == size and c.dimension == dim and c.distance == 3
    assert c.length == 2 ** r - 1


def test_hamming_range():
    with pytest.raises(OutOfSupportedRange):
        codes.hamming(5)


def test_h2_codewords():
    assert codes.hamming(2).codeword_strings() == ["000", "111"]


def test_trivial_codes():
    even = codes.code_from_check_matrix(BinaryMatrix.from_strings(["11111"]))
    assert even.dimension == 4
    assert sorted(codes.dual(even).codeword_strings()) == ["00000", "11111"]
    full = codes.code_from_check_matrix(BinaryMatrix.from_strings(["0000"]))
    assert len(full) == 16
    zero = codes.dual(full)
    assert zero.codeword_strings() == ["0000"] and zero.distance is None
    assert codes.predicted_unintegrated_weights(full) == []


def test_simplex_weights():
    s = codes.dual(codes.hamming(3))
    assert s.weight_distribution() == [1, 0, 0, 0, 7, 0, 0, 0]
    assert codes.predicted_unintegrated_weights(codes.hamming(3)) == [4] * 7


def test_lift_and_project():
    h2p = codes.lift(codes.hamming(2))
    assert sorted(h2p.codeword_strings()) == sorted(["0000", "0001", "1111", "1110"])
    m2 = codes.hamming_check_matrix(2).to_array()
    assert np.array_equal(h2p.check_matrix.to_array(), np.hstack([m2, np.zeros((2, 1), np.uint8)]))
    assert codes.double_lift(codes.hamming(2)).dimension == 3
    p = codes.project(codes.hamming(3))
    assert p.check_matrix.to_strings() == ["101010", "011001", "000111"]
    assert sorted(codes.predicted_unintegrated_weights(p)) == [3, 3, 3, 3, 4, 4, 4]
    with pytest.raises(TooShort):
        codes.project(codes.code_from_check_matrix(BinaryMatrix.from_strings(["1"])))


def test_enumeration_cap():
    big = codes.BinaryLinearCode(BinaryMatrix.from_strings(["1" * 25]))
    with pytest.raises(TooLarge):
        big.codewords


def test_kernel_matches_bruteforce():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(1, 7)
        c = random_code(rng, n)
        rows = c.check_matrix.to_array().tolist()
        want = sorted(oracles.code_words(rows, n))
        got = sorted(oracles.bits(int(x), n) for x in c.codewords)
        assert got == want


def test_duality_identities():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randint(1, 12)
        c = random_code(rng, n)
        assert c.dimension + codes.dual(c).dimension == n
        assert codes.dual(codes.dual(c)).same_code(c)


def test_unintegrated_characters_are_dual_words():
    # the unintegrated characters are exactly chi_a for a nonzero in the dual
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(2, 6)
        c = random_code(rng, n)
        sums = cube.character_sums_direct(n, c.codewords, range(2 ** n))
        failing = {a for a in range(2 ** n) if sums[a] != 0} - {0}
        dual = {int(x) for x in c.dual_words()} - {0}
        assert failing == dual


def test_dual_distance_is_oa_strength_plus_one():
    rng = random.Random(4)
    for _ in range(50):
        n = rng.randint(2, 10)
        c = random_code(rng, n)
        dual_rows = codes.dual(c).rows_matrix()
        s = codes.orthogonal_array_strength(dual_rows).strength
        assert s == (c.distance - 1 if c.distance is not None else n)
        if n <= 7:
            assert s == oracles.oa_strength(dual_rows.tolist())


@pytest.mark.parametrize("rows, strength, index", [
    ([[1, 1, 1], [0, 1, 0], [1, 0, 0], [0, 0, 1]], 2, 1),
    ([[0, 0, 0]], 0, 1),
])
def test_orthogonal_array_examples(rows, strength, index):
    assert tuple(codes.orthogonal_array_strength(rows)) == (strength, index)


def test_hamming_rows_strength():
    assert codes.orthogonal_array_strength(codes.hamming(3).rows_matrix()).strength == 3


@pytest.mark.parametrize("spec, n, dim", [
    ("hamming:3", 7, 4),
    ("lift:hamming:2", 4, 2),
    ("double_lift:hamming:2", 5, 3),
    ("project:hamming:3", 6, 3),
    ("dual:hamming:3", 7, 3),
])
def test_parse_code(spec, n, dim):
    c = codes.parse_code(spec)
    assert (c.length, c.dimension) == (n, dim)


def test_parse_code_file(tmp_path):
    p = tmp_path / "m.json"
    p.write_text('["101", "011"]')
    assert codes.parse_code(f"file:{p}").same_code(codes.hamming(2))
    with pytest.raises(ParseError):
        codes.parse_code("golay:1")
