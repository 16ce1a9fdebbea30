import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cheegersweep import (
    Graph,
    GraphError,
    InvalidParameterError,
    ParseError,
    connected_components,
    disjoint_union,
    edges_between,
    generate,
    parse_edge_list,
    volume,
)
from cheegersweep.graph import DuplicateEdgeWarning, GENERATOR_KINDS


def test_parse_path():
    g = parse_edge_list("0 1\n1 2")
    assert g.n == 3
    assert g.degree.tolist() == [1, 2, 1]
    assert g.volume_total == 4


def test_parse_collapses_duplicates_with_warning():
    with pytest.warns(DuplicateEdgeWarning):
        g = parse_edge_list("0 1\n1 0")
    assert g.n == 2 and g.m == 1
    assert g.collapsed_duplicates == 1


def test_parse_self_loop_rejected():
    with pytest.raises(ParseError, match="self-loop"):
        parse_edge_list("0 0")


@pytest.mark.parametrize("text, line", [("0 1\n1 x", 2), ("0 1\n\n1 2 3", 3), ("# c\n-1 2", 2)])
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.lineno == line


def test_parse_compacts_ids_and_skips_comments():
    text = "# header\r\n10 30  # trailing\r\n\r\n30 20\r\n"
    g = parse_edge_list(text)
    assert g.labels == (10, 20, 30)
    assert g.edge_set == {(0, 2), (1, 2)}


def test_parse_empty_is_error():
    with pytest.raises(ParseError):
        parse_edge_list("# nothing\n\n")


def test_graph_rejects_isolated_and_duplicates():
    with pytest.raises(GraphError, match="isolated"):
        Graph(3, [(0, 1)])
    with pytest.raises(GraphError, match="duplicate"):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError, match="self-loop"):
        Graph(2, [(0, 1), (1, 1)])


def test_graph_is_immutable(c4):
    with pytest.raises(AttributeError):
        c4.n = 5
    with pytest.raises(ValueError):
        c4.edges[0, 0] = 3


@pytest.mark.parametrize(
    "kind, params, n, m, degrees",
    [
        ("cycle", {"n": 4}, 4, 4, {2}),
        ("complete", {"n": 4}, 4, 6, {3}),
        ("path", {"n": 5}, 5, 4, {1, 2}),
        ("star", {"k": 3}, 4, 3, {1, 3}),
        ("complete_bipartite", {"a": 2, "b": 3}, 5, 6, {2, 3}),
        ("hypercube", {"dim": 3}, 8, 12, {3}),
    ],
)
def test_named_generators(kind, params, n, m, degrees):
    g = generate(kind, **params)
    assert (g.n, g.m) == (n, m)
    assert set(g.degree.tolist()) == degrees


def test_petersen_degree_sequence_by_direct_count(petersen):
    counts = [0] * 10
    for u, w in petersen.edges.tolist():
        counts[u] += 1
        counts[w] += 1
    assert petersen.n == 10 and petersen.m == 15
    assert counts == [3] * 10
    # girth 5: no triangles or 4-cycles
    a = petersen.adjacency()
    assert np.trace(a @ a @ a) == 0
    a2 = a @ a
    assert np.all(a2[~np.eye(10, dtype=bool)] <= 1)


@pytest.mark.parametrize("kind, params", [("gnp", {"n": 30, "p": 0.2}), ("random_regular", {"n": 40, "d": 5})])
def test_random_generators_reproducible(kind, params):
    a = generate(kind, seed=123, **params)
    b = generate(kind, seed=123, **params)
    c = generate(kind, seed=124, **params)
    assert a.to_edge_list().encode() == b.to_edge_list().encode()
    assert a != c


def test_random_regular_is_regular():
    g = generate("random_regular", seed=5, n=256, d=8)
    assert g.is_regular() and g.degree[0] == 8
    assert g.m == 256 * 8 // 2


@pytest.mark.parametrize(
    "kind, params",
    [
        ("random_regular", {"n": 5, "d": 3}),
        ("random_regular", {"n": 4, "d": 4}),
        ("gnp", {"n": 1, "p": 0.5}),
        ("gnp", {"n": 5, "p": 0.0}),
        ("cycle", {"n": 2}),
        ("star", {}),
        ("banana", {}),
    ],
)
def test_generator_invalid_parameters(kind, params):
    with pytest.raises(InvalidParameterError):
        generate(kind, seed=1, **params)


def test_gnp_gives_up_when_isolated_vertices_persist():
    with pytest.raises(InvalidParameterError, match="isolated"):
        generate("gnp", seed=0, n=200, p=0.001)


def test_all_kinds_buildable():
    params = {
        "path": {"n": 3}, "cycle": {"n": 3}, "complete": {"n": 3}, "star": {"k": 2},
        "complete_bipartite": {"a": 1, "b": 2}, "hypercube": {"dim": 2}, "petersen": {},
        "gnp": {"n": 6, "p": 0.9}, "random_regular": {"n": 6, "d": 3},
    }
    assert set(params) == set(GENERATOR_KINDS)
    for kind in GENERATOR_KINDS:
        generate(kind, seed=0, **params[kind])


def test_edges_between_examples(c4):
    k3 = generate("complete", n=3)
    assert edges_between(k3, range(3), range(3)) == 6
    assert edges_between(c4, [0, 1], [2, 3]) == 2


def test_volume_examples(k4):
    assert volume(k4, [0, 1]) == 6
    assert volume(k4, range(4)) == k4.volume_total
    assert volume(generate("star", k=3), [0]) == 3


def test_components():
    assert connected_components(generate("path", n=3)) == [(0, 1, 2)]
    k2 = generate("complete", n=2)
    assert connected_components(disjoint_union(k2, k2)) == [(0, 1), (2, 3)]


def test_petersen_connected_matches_bfs_oracle(petersen):
    # oracle: repeated squaring of (A + I) reaches every vertex
    reach = np.eye(10) + petersen.adjacency()
    for _ in range(4):
        reach = np.minimum(reach @ reach, 1)
    assert np.all(reach > 0)
    assert len(connected_components(petersen)) == 1


def test_pickle_roundtrip(petersen):
    import pickle

    assert pickle.loads(pickle.dumps(petersen)) == petersen


@st.composite
def graph_and_set(draw):
    n = draw(st.integers(2, 10))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.sets(st.sampled_from(pairs), min_size=1))
    # attach a spanning path so no vertex is isolated
    edges = set(chosen) | {(i, i + 1) for i in range(n - 1)}
    mask = np.array(draw(st.lists(st.booleans(), min_size=n, max_size=n)))
    return Graph(n, sorted(edges)), mask


@settings(max_examples=200, deadline=None)
@given(graph_and_set())
def test_cut_identities(gs):
    g, s = gs
    sc = ~s
    assert edges_between(g, s, sc) == edges_between(g, sc, s)
    assert edges_between(g, s, s) % 2 == 0
    assert edges_between(g, s, s) + edges_between(g, s, sc) == volume(g, s)
    assert volume(g, s) + volume(g, sc) == g.volume_total
    assert edges_between(g, s, np.ones(g.n, bool)) == volume(g, s)


def test_to_edge_list_roundtrip(petersen):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert parse_edge_list(petersen.to_edge_list()) == petersen
