import json
from fractions import Fraction

import numpy as np
import pytest

import oracles
from graphdesigns import graph
from graphdesigns.errors import Disconnected, Duplicate, Loop, OutOfRange, ParseError, UnknownFixture


FIXTURES = [
    ("complete", (5,)),
    ("complete_bipartite", (4, 4)),
    ("complete_bipartite", (2, 3)),
    ("truncated_tetrahedron", ()),
    ("petersen", ()),
]


def test_build_graph_normalizes_edges():
    g = graph.build_graph(3, [(2, 0), (1, 0)])
    assert g.edges == ((0, 1), (0, 2))
    assert g.degrees.tolist() == [2, 1, 1]


@pytest.mark.parametrize("n, edges, exc", [
    (3, [(0, 3)], OutOfRange),
    (3, [(1, 1), (0, 1), (1, 2)], Loop),
    (3, [(0, 1), (1, 0), (1, 2)], Duplicate),
    (4, [(0, 1), (2, 3)], Disconnected),
    (1, [], OutOfRange),
])
def test_build_graph_rejects(n, edges, exc):
    with pytest.raises(exc):
        graph.build_graph(n, edges)


def test_fixture_errors():
    with pytest.raises(UnknownFixture):
        graph.fixture("dodecahedron")
    with pytest.raises(UnknownFixture):
        graph.fixture("complete")
    with pytest.raises(ParseError):
        graph.parse_fixture("complete:x")


def test_load_graph_roundtrip(tmp_path):
    g = graph.truncated_tetrahedron()
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"n": g.vertex_count, "edges": [list(e) for e in g.edges]}))
    assert graph.load_graph(str(p)).edges == g.edges


def test_fixture_shapes():
    assert len(graph.petersen_graph().edges) == 15
    assert graph.truncated_tetrahedron().regular_degree == 3
    assert graph.complete_bipartite_graph(2, 3).regular_degree is None


@pytest.mark.parametrize("name, args", FIXTURES)
def test_spectrum_matches_general_eigensolver(name, args):
    g = graph.fixture(name, *args)
    d = graph.spectral_decomposition(g)
    want = oracles.walk_eigenvalues(g.adjacency)
    got = {round(float(e.eigenvalue) + 1, 9) + 0.0: e.dimension for e in d.eigenspaces}
    assert got == dict(want)


@pytest.mark.parametrize("name, args", FIXTURES)
def test_decomposition_invariants(name, args):
    g = graph.fixture(name, *args)
    d = graph.spectral_decomposition(g)
    assert sum(e.dimension for e in d.eigenspaces) == g.vertex_count
    walk = g.walk_matrix()
    for e in d.eigenspaces:
        assert -2 - 1e-9 <= e.eigenvalue <= 1e-9
        assert np.allclose(walk @ e.basis, (e.eigenvalue + 1) * e.basis, atol=1e-9)
        assert np.allclose(e.basis.T @ e.basis, np.eye(e.dimension), atol=1e-9)
    freqs = [max(abs(d[i].eigenvalue + 1) for i in grp) for grp in d.tie_groups()]
    assert freqs == sorted(freqs, reverse=True)
    if g.is_regular:
        assert np.allclose(graph.projector_sum(d), np.eye(g.vertex_count), atol=1e-9)
        assert np.allclose(graph.reconstruct_walk_matrix(d), walk, atol=1e-9)
        assert d.trivial_index() == 0


def test_sort_rule_within_tie_group():
    d = graph.spectral_decomposition(graph.truncated_tetrahedron())
    # |lambda+1| = 2/3 for both -5/3 and -1/3; equal dimension, larger eigenvalue first
    assert d.tie_groups() == [[0], [1, 2], [3], [4]]
    assert d[1].eigenvalue == pytest.approx(-1 / 3)
    assert d[2].eigenvalue == pytest.approx(-5 / 3)


def test_ambiguous_gap_raises():
    with pytest.raises(Exception) as info:
        graph._group_sorted([0.0, 5e-8], 1e-9)
    assert "gap" in str(info.value)


def test_format_scalar():
    assert graph.format_scalar(Fraction(-4, 3)) == "-4/3"
    assert graph.format_scalar(-0.0) == "0"
    assert graph.format_scalar(1 / 3) == "0.333333333333"


def test_gram_schmidt_drops_dependent_columns():
    v = np.array([[1.0, 2.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
    q = graph.modified_gram_schmidt(v)
    assert q.shape == (3, 2)
