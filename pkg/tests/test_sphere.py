import networkx as nx
import pytest

from acutetri.minimality.sphere import CombinatorialTriangulation, enumerate_sphere_triangulations


def _atlas_triangulations(n):
    """Maximal planar graphs on n vertices, read off the networkx graph atlas.

    A triangulated sphere is determined by its graph, so these are exactly
    the isomorphism types with 2n - 4 faces.
    """
    out = []
    for G in nx.graph_atlas_g():
        if G.number_of_nodes() == n and G.number_of_edges() == 3 * n - 6 and nx.is_connected(G):
            if nx.check_planarity(G)[0]:
                out.append(G)
    return out


def _graph(T):
    G = nx.Graph()
    G.add_nodes_from(range(T.n))
    G.add_edges_from(tuple(e) for e in T.edges)
    return G


@pytest.mark.parametrize("F,count", [(4, 1), (6, 1), (8, 2), (10, 5)])
def test_counts(F, count):
    assert len(enumerate_sphere_triangulations(F)) == count


@pytest.mark.parametrize("F", [4, 6, 8, 10])
def test_matches_atlas_oracle(F):
    ours = [_graph(T) for T in enumerate_sphere_triangulations(F)]
    oracle = _atlas_triangulations(F // 2 + 2)
    assert len(ours) == len(oracle)
    for G in oracle:
        assert sum(nx.is_isomorphic(G, H) for H in ours) == 1


@pytest.mark.parametrize("F", [4, 6, 8, 10])
def test_invariants(F):
    for T in enumerate_sphere_triangulations(F):
        assert T.check() == []
        assert len(T.faces) == F and T.n == F // 2 + 2
        assert sum(T.degrees) == 3 * F


def test_small_cases_have_degree_three():
    for F in (4, 6):
        (T,) = enumerate_sphere_triangulations(F)
        assert T.min_degree == 3


def test_min_degree_four_types():
    (octa,) = [T for T in enumerate_sphere_triangulations(8) if T.min_degree >= 4]
    assert octa.degree_sequence == (4,) * 6
    (bipyr,) = [T for T in enumerate_sphere_triangulations(10) if T.min_degree >= 4]
    assert bipyr.degree_sequence == (5, 5, 4, 4, 4, 4, 4)


def test_canonical_code_ignores_labels():
    T = enumerate_sphere_triangulations(10)[0]
    perm = [3, 6, 0, 5, 1, 4, 2]
    relabeled = CombinatorialTriangulation(T.n, tuple(tuple(perm[v] for v in f) for f in T.faces))
    assert relabeled.canonical_code() == T.canonical_code()
    mirrored = CombinatorialTriangulation(T.n, tuple(f[::-1] for f in T.faces))
    assert mirrored.canonical_code() == T.canonical_code()


def test_check_flags_broken_surface():
    T = enumerate_sphere_triangulations(6)[0]
    broken = CombinatorialTriangulation(T.n, T.faces[:-1])
    assert broken.check()


def test_unsupported_size():
    with pytest.raises(ValueError):
        enumerate_sphere_triangulations(12)
