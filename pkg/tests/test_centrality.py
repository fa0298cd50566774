import numpy as np
import pytest

from fbas_centrality import (
    CentralityScores,
    Fbas,
    NotApplicableError,
    build_trust_graph,
    enumerate_dsets,
    enumerate_quorums,
    hierarchical_intactness_linear,
    intactness_eigenvector,
    intactness_linear,
    intactness_matrices,
    load_bundled,
    quorum_eigenvector,
    quorum_side_scores,
    quorum_subhypergraph,
    rank,
    trust_eigenvector,
    trust_subgraph,
)
from fbas_centrality.hypergraph import incidence_matrix


def rounded(scores):
    return [float(f"{x:.3g}") for x in scores.values]


def matrices(fbas):
    return intactness_matrices(fbas, enumerate_dsets(fbas), build_trust_graph(fbas))


def test_trust_eigenvector(star, hub):
    assert rounded(trust_eigenvector(star)) == [1.0, 0.473, 0.696, 0.473, 0.473]
    with pytest.raises(NotApplicableError):
        trust_eigenvector(hub)
    assert rounded(trust_eigenvector(load_bundled("orgs_2020"))) == [1.0] * 8


def test_trust_eigenvector_on_greatest_scc(hub, hub_split):
    scores = trust_eigenvector(load_bundled("orgs_2019"), scope="greatest_scc")
    assert scores.nodes == ("a1", "a2", "a3", "a4") and rounded(scores) == [1.0] * 4
    assert trust_eigenvector(hub, scope="greatest_scc").as_dict() == {"7": 1.0}
    with pytest.raises(NotApplicableError):
        trust_eigenvector(hub_split, scope="greatest_scc")


def test_trust_subgraph(hub):
    assert rounded(trust_subgraph(hub)) == [1.0] * 6 + [0.369]
    assert rounded(trust_subgraph(load_bundled("orgs_2019"))) == [1.0] * 4 + [0.511] * 3 + [0.189]
    loners = Fbas.from_mapping({v: [[v]] for v in "abc"})
    assert rounded(trust_subgraph(loners)) == [1.0] * 3


def test_quorum_eigenvector(star, star_tight):
    assert rounded(quorum_eigenvector(star, enumerate_quorums(star))) == [1.0] + [0.584] * 4
    tight = quorum_eigenvector(star_tight, enumerate_quorums(star_tight))
    assert rounded(tight) == [1.0, 0.431, 0.795, 0.586, 0.586]
    single = Fbas.from_mapping({"v": [["v"]]})
    assert quorum_eigenvector(single, enumerate_quorums(single)).values.tolist() == [1.0]


def test_quorum_side_scores(hub, star):
    for f in (hub, star):
        side = quorum_side_scores(f, enumerate_quorums(f))
        assert side[f.full] == 1.0 and max(side.values()) == 1.0
    single = Fbas.from_mapping({"v": [["v"]]})
    assert quorum_side_scores(single, enumerate_quorums(single)) == {1: 1.0}


def test_quorum_side_scores_follow_node_scores(hub):
    # the quorum scores are M^T c up to scaling
    quorums = enumerate_quorums(hub)
    m = incidence_matrix(hub, quorums)
    y = m.T @ quorum_eigenvector(hub, quorums).values
    side = quorum_side_scores(hub, quorums)
    assert np.allclose([side[q] for q in quorums], y / y.max(), atol=1e-10)


def test_quorum_subhypergraph(star):
    assert rounded(quorum_subhypergraph(star, enumerate_quorums(star))) == [1.0] + [0.521] * 4
    for name, value in [("orgs_two_of_three", 0.931), ("orgs_two_of_three_strict", 0.828)]:
        f = load_bundled(name)
        assert rounded(quorum_subhypergraph(f, enumerate_quorums(f))) == [1.0] * 6 + [value] * 5


def test_intactness_linear(star, hub):
    assert rounded(intactness_linear(star, matrices(star))) == [1.0, 0.607, 0.699, 0.647, 0.647]
    assert rounded(intactness_linear(hub, matrices(hub))) == [0.835] * 6 + [1.0]
    loners = Fbas.from_mapping({"a": [["a"]], "b": [["b"]]})
    assert intactness_linear(loners, matrices(loners)).values.tolist() == [1.0, 1.0]


def test_custom_base(star):
    m = matrices(star)
    scores = intactness_linear(star, m, base={"1": 1.0}, mu_factor=1e-9)
    assert scores["1"] == 1.0 and max(scores.values[1:]) < 1e-6
    with pytest.raises(ValueError, match="unknown node"):
        intactness_linear(star, m, base={"9": 1.0})
    with pytest.raises(ValueError, match="nonnegative"):
        intactness_linear(star, m, base=[0, 0, 0, 0, 0])
    with pytest.raises(ValueError, match="mu_factor"):
        intactness_linear(star, m, mu_factor=1.0)


def test_hierarchical_equals_plain_on_one_scc(star):
    m = matrices(star)
    assert np.allclose(hierarchical_intactness_linear(star, m).values,
                       intactness_linear(star, m).values, atol=1e-12)


def test_hierarchical_base_only_node():
    f = load_bundled("orgs_2019")
    m = matrices(f)
    c = f.index("c")
    assert not np.any(m.b_hier[c])
    hl = hierarchical_intactness_linear(f, m)
    # c gains nothing beyond its base value, the nodes of B do
    assert hl["b1"] > hl["c"]
    assert hl.values.max() == 1.0


def test_intactness_eigenvector(star):
    assert rank(intactness_eigenvector(star, matrices(star))) == {"1": 1, "2": 4, "3": 2, "4": 3, "5": 3}
    f = load_bundled("orgs_two_of_three")
    assert rounded(intactness_eigenvector(f, matrices(f))) == [1.0] * 11
    loners = Fbas.from_mapping({"a": [["a"]], "b": [["b"]]})
    with pytest.raises(NotApplicableError, match="zero"):
        intactness_eigenvector(loners, matrices(loners))


def test_rank():
    nodes = ("1", "2", "3", "4", "5")
    table2 = CentralityScores("il", nodes, np.array([1.0, 0.607, 0.699, 0.647, 0.647]))
    assert list(rank(table2).values()) == [1, 4, 2, 3, 3]
    assert set(rank(CentralityScores("x", nodes, np.ones(5))).values()) == {1}
    table4 = CentralityScores("ts", tuple("1234567"), np.array([1.0] * 6 + [0.369]))
    assert list(rank(table4).values()) == [1] * 6 + [2]


def test_rank_tolerance():
    s = CentralityScores("x", ("a", "b"), np.array([1.0, 1.0 - 1e-12]))
    assert rank(s) == {"a": 1, "b": 1}
    assert rank(s, tie_tol=0.0) == {"a": 1, "b": 2}
