import itertools
import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest

import oracles
from graphdesigns import codes, cube, designs, graph
from graphdesigns.errors import OutOfSupportedRange


def test_cube_graph_matches_oracle_adjacency():
    for n, d in [(3, 1), (3, 2), (4, 2)]:
        g = cube.CubeGraph(n, d).to_graph()
        assert np.array_equal(g.adjacency, oracles.cube_adjacency(n, d))


def test_full_distance_cube_is_complete():
    g = cube.CubeGraph(3, 3).to_graph()
    assert len(g.edges) == comb(8, 2)


def test_cube_ranges():
    with pytest.raises(OutOfSupportedRange):
        cube.CubeGraph(1)
    with pytest.raises(OutOfSupportedRange):
        cube.CubeGraph(3, 4)


@pytest.mark.parametrize("n, d, i, lam, dim", [
    (3, 1, 2, Fraction(-4, 3), 3),
    (3, 2, 1, Fraction(-1), 3),
    (5, 2, 0, Fraction(0), 1),
])
def test_cube_eigenspace(n, d, i, lam, dim):
    e = cube.cube_eigenspace(n, d, i)
    assert e.eigenvalue == lam and e.dimension == dim
    walk = cube.CubeGraph(n, d).to_graph().walk_matrix()
    assert np.allclose(walk @ e.basis, float(lam + 1) * e.basis)


def test_exact_spectrum_matches_general_eigensolver():
    for n, d in [(3, 1), (3, 2), (4, 1), (4, 3), (5, 2)]:
        dec = cube.cube_decomposition(n, d)
        want = oracles.walk_eigenvalues(oracles.cube_adjacency(n, d))
        got = {round(float(e.walk_eigenvalue), 9) + 0.0: e.dimension for e in dec.eigenspaces}
        assert got == dict(want)


def test_character_orthogonality():
    for n in range(1, 6):
        ch = cube.characters(n)
        assert np.array_equal(ch.T @ ch, (2 ** n) * np.eye(2 ** n, dtype=np.int64))


def test_walsh_hadamard_matches_direct_sums():
    rng = random.Random(5)
    for n in range(2, 9):
        w = rng.sample(range(2 ** n), rng.randint(1, 2 ** n))
        assert np.array_equal(cube.character_sums(n, w),
                              cube.character_sums_direct(n, w, range(2 ** n)))


def test_parity_criterion_on_q3():
    # W integrates Lambda_n iff it has as many even- as odd-weight words
    for r in range(1, 9):
        for w in itertools.combinations(range(8), r):
            flags = cube.weight_class_verdicts(3, list(w))
            even = sum(1 for x in w if bin(x).count("1") % 2 == 0)
            assert flags[3] == (2 * even == len(w))


def test_complement_closed_sets_integrate_odd_classes():
    rng = random.Random(6)
    for _ in range(60):
        n = rng.randint(2, 6)
        full = 2 ** n - 1
        base = rng.sample(range(2 ** n), rng.randint(1, 2 ** (n - 1)))
        w = sorted(set(base) | {full ^ x for x in base})
        flags = cube.weight_class_verdicts(n, w)
        assert all(flags[i] for i in range(1, n + 1, 2))


def test_two_vertex_rigidity():
    for n in range(2, 6):
        full = 2 ** n - 1
        for x, y in itertools.combinations(range(2 ** n), 2):
            assert cube.weight_class_verdicts(n, [x, y])[1] == (x ^ y == full)


@pytest.mark.parametrize("n", [3, 4])
def test_exact_report_matches_floating(n):
    rng = random.Random(n)
    dx = cube.cube_decomposition(n)
    df = graph.spectral_decomposition(dx.graph)
    for _ in range(200):
        w = rng.sample(range(2 ** n), rng.randint(1, 2 ** n))
        a = cube.cube_design_report(n, 1, w)
        b = designs.design_report(df, designs.make_design(df, w))
        c = designs.design_report(dx, designs.make_design(dx, w))
        assert (a.k, a.efficacy, a.extremal, a.per_eigenspace) == (b.k, b.efficacy, b.extremal, b.per_eigenspace)
        assert a.per_eigenspace == c.per_eigenspace


def test_distance_cubes_share_projectors():
    for n in (3, 4):
        base = {e.annotations: e.projector for e in cube.cube_decomposition(n, 1).eigenspaces}
        for d in range(2, n + 1):
            for e in cube.cube_decomposition(n, d).eigenspaces:
                assert np.allclose(e.projector, sum(base[(i,)] for i in e.annotations))


@pytest.mark.parametrize("n, code, eff", [
    (3, codes.hamming(2), Fraction(2, 5)),
    (4, codes.lift(codes.hamming(2)), Fraction(4, 10)),
    (6, codes.project(codes.hamming(3)), Fraction(8, 29)),
    (7, codes.hamming(3), Fraction(16, 93)),
])
def test_code_efficacies(n, code, eff):
    assert cube.cube_design_report(n, 1, code).efficacy == eff


def test_simple_designs():
    assert cube.simple_design(3) == [0, 7]
    r5 = cube.cube_design_report(5, 1, cube.simple_design(5))
    assert r5.k == 3 and r5.efficacy == Fraction(2, 7)
    r6 = cube.cube_design_report(6, 1, cube.simple_design(6))
    assert r6.k >= 4 and r6.efficacy <= Fraction(4, 14)
    assert sorted(codes.word_to_str(x, 6) for x in cube.simple_design(6)) == \
        sorted(["100000", "110000", "011111", "001111"])


def test_q3_distance_two_table():
    dec = cube.cube_decomposition(3, 2)
    assert [(e.walk_eigenvalue, e.dimension, e.annotations) for e in dec.eigenspaces] == [
        (1, 1, (0,)), (Fraction(-1, 3), 3, (2,)), (0, 4, (1, 3))]
