from itertools import combinations

import pytest
from hypothesis import given

import oracles
from conftest import fbases, slice_maps
from fbas_centrality import (
    Clause,
    Conditions,
    EnumerationLimitError,
    Explicit,
    Fbas,
    FbasError,
    contract_to_quorum,
    delete,
    enumerate_quorums,
    expand_template,
    has_quorum_intersection,
    is_quorum,
    load_bundled,
    quorum_intersection_witness,
)
from fbas_centrality.fbas import bits_of, popcount

A = ["a1", "a2", "a3", "a4"]
UNIVERSE = A + ["b1", "b2", "b3", "c"]


def ids(fbas, masks):
    return {frozenset(fbas.ids(m)) for m in masks}


def test_bit_helpers():
    assert list(bits_of(0b10110)) == [1, 2, 4]
    assert popcount(0b10110) == 3


def test_valid_examples(hub):
    assert hub.n == 7
    single = Fbas.from_mapping({"v": [["v"]]})
    assert single.slices == ((1,),)


def test_slice_without_owner_rejected():
    with pytest.raises(FbasError, match="missing from its own slice"):
        Fbas.from_mapping({"u": [["u"]], "v": [["u"]]})


@pytest.mark.parametrize("bad, message", [
    ({"v": []}, "empty set of quorum slices"),
    ({"v": [["v", "w"]]}, "unknown node"),
])
def test_invalid_mappings(bad, message):
    with pytest.raises(FbasError, match=message):
        Fbas.from_mapping(bad)


def test_mask_rejects_foreign_bits(hub):
    with pytest.raises(FbasError):
        hub.mask(1 << 7)
    with pytest.raises(FbasError):
        hub.mask(["9"])


def test_template_single_clause():
    # the owner is outside the pool, so each slice is {c} plus 3 of A
    out = expand_template("c", Conditions((Clause(frozenset(A), 3),), 1), UNIVERSE)
    expected = {frozenset(x) | {"c"} for x in combinations(A, 3)}
    assert set(out) == expected and len(out) == 4


def test_template_explicit_identity():
    assert expand_template("a", Explicit((frozenset({"a"}),)), ["a", "b"]) == [frozenset({"a"})]


def test_template_explicit_needs_owner():
    with pytest.raises(FbasError, match="'a' is missing"):
        expand_template("a", Explicit((frozenset({"b"}),)), ["a", "b"])


def test_template_two_of_three_matches_brute_force():
    a, b = ["a1", "a2", "a3"], ["b1", "b2", "b3"]
    c = [f"c{k}" for k in range(1, 6)]
    universe = a + b + c
    clauses = (Clause(frozenset(a), 2), Clause(frozenset(b), 2), Clause(frozenset(c), 3))
    out = set(expand_template("a1", Conditions(clauses, 2, owner_included=True), universe))

    # brute force: minimal sets holding a1 that meet two of the three conditions
    def ok(s):
        met = [len(s & set(a) - {"a1"}) >= 1, len(s & set(b)) >= 2, len(s & set(c)) >= 3]
        return sum(met) >= 2

    sat = [s for s in oracles.all_subsets(universe) if "a1" in s and ok(s)]
    minimal = {s for s in sat if not any(t < s for t in sat)}
    assert out == minimal


def test_template_unsatisfiable_is_an_error():
    with pytest.raises(FbasError, match="generates no quorum slices"):
        expand_template("c", Conditions((Clause(frozenset(A), 5),), 1), UNIVERSE)


def test_is_quorum_examples(hub):
    assert is_quorum(hub, ["1", "2", "3", "7"])
    assert not is_quorum(hub, ["1", "2", "3"])
    assert not is_quorum(hub, 0)
    assert is_quorum(hub, hub.full)


def test_contract_examples(hub):
    q = hub.mask(["1", "2", "3", "7"])
    assert contract_to_quorum(hub, q) == q
    assert contract_to_quorum(hub, ["1", "2", "3"]) == 0
    assert contract_to_quorum(hub, 0) == 0


def test_hub_quorums(hub):
    catalog = enumerate_quorums(hub)
    expected = {frozenset(s) for s in (["1", "2", "3", "7"], ["4", "5", "6", "7"], ["7"], hub.nodes)}
    assert ids(hub, catalog) == expected
    assert ids(hub, catalog.minimal) == {frozenset({"7"})}


@pytest.mark.parametrize("name, count", [("star", 15), ("orgs_two_of_three", 1024)])
def test_quorum_counts(name, count):
    assert len(enumerate_quorums(load_bundled(name))) == count


def test_quorum_intersection(hub, hub_split):
    assert has_quorum_intersection(hub)
    assert not has_quorum_intersection(hub_split)
    p, q = quorum_intersection_witness(hub_split)
    assert {frozenset(hub_split.ids(p)), frozenset(hub_split.ids(q))} == {frozenset({"7"}), frozenset({"8"})}
    assert has_quorum_intersection(Fbas.from_mapping({"v": [["v"]]}))


def test_delete(hub):
    kept = delete(hub, hub.mask(["1", "2", "3"]))
    assert kept.nodes == ("4", "5", "6", "7")
    assert kept.to_mapping() == {v: hub.to_mapping()[v] for v in kept.nodes}
    assert delete(hub, 0) == hub
    with pytest.raises(FbasError):
        delete(hub, hub.full)


def test_quorum_cap(monkeypatch, hub):
    with pytest.raises(EnumerationLimitError):
        enumerate_quorums(hub, max_nodes=6)
    monkeypatch.setenv("FBAS_MAX_NODES_QUORUMS", "5")
    with pytest.raises(EnumerationLimitError):
        enumerate_quorums(hub)


def test_minimal_quorums_oracle():
    f = load_bundled("orgs_2019")
    qs = oracles.quorums(f.to_mapping())
    minimal = {q for q in qs if not any(p < q for p in qs)}
    assert ids(f, enumerate_quorums(f).minimal) == minimal


@given(fbases(max_nodes=7))
def test_contract_is_greatest_quorum_inside(fbas):
    catalog = enumerate_quorums(fbas)
    for u in range(1 << fbas.n):
        got = contract_to_quorum(fbas, u)
        inside = [q for q in catalog if q & ~u == 0]
        expected = 0
        for q in inside:
            expected |= q
        assert got == expected


@given(slice_maps(max_nodes=7))
def test_intersection_matches_oracle(mapping):
    fbas = Fbas.from_mapping(mapping)
    assert has_quorum_intersection(fbas) == oracles.has_intersection(mapping)
    witness = quorum_intersection_witness(fbas)
    if witness is not None:
        p, q = witness
        assert p & q == 0 and is_quorum(fbas, p) and is_quorum(fbas, q)


@given(fbases(max_nodes=6))
def test_mapping_round_trip(fbas):
    assert Fbas.from_mapping(fbas.to_mapping()) == fbas
