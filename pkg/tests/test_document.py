import json

import pytest

from fbas_centrality import FbasError, enumerate_quorums, load_bundled, load_fbas, loads_fbas, parse_fbas
from fbas_centrality.document import DocumentError, bundled_examples, dump_fbas

HUB_DOC = {
    "format": 1,
    "nodes": ["1", "2", "3", "4", "5", "6", "7"],
    "slices": {
        **{v: [["1", "2", "3", "7"]] for v in "123"},
        **{v: [["4", "5", "6", "7"]] for v in "456"},
        "7": [["7"]],
    },
}


def test_load_explicit_document(tmp_path):
    path = tmp_path / "hub.json"
    path.write_text(json.dumps(HUB_DOC))
    f = load_fbas(path)
    assert f.n == 7 and len(enumerate_quorums(f)) == 4
    assert f == load_bundled("hub")


def test_template_document():
    assert len(enumerate_quorums(load_bundled("orgs_two_of_three_strict"))) == 704


def test_slice_missing_owner():
    with pytest.raises(FbasError, match="node 'v' is missing from its own slice"):
        parse_fbas({"slices": {"u": [["u"]], "v": [["u"]]}})


@pytest.mark.parametrize("doc, message", [
    ([], "JSON object"),
    ({"format": 2, "slices": {}}, "format version"),
    ({"nodes": ["a"], "slices": {"a": [["a"]], "b": [["b"]]}}, "unknown node 'b'"),
    ({"nodes": ["a", "b"], "slices": {"a": [["a"]]}}, "node 'b' has no quorum slices"),
    ({"slices": {"a": {"clauses": [{"pool": ["a"]}]}}}, "malformed template"),
    ({"slices": {"a": {"clauses": [], "extra": 1}}}, "unknown key"),
    ({"slices": {"a": [["z"]]}}, "unknown node 'z'"),
])
def test_invalid_documents(doc, message):
    with pytest.raises(FbasError, match=message):
        parse_fbas(doc)


def test_parse_error_has_line_context():
    with pytest.raises(DocumentError, match=r"line 2, column \d+") as info:
        loads_fbas('{"slices":\n  {"a": [["a"]],}}')
    assert '{"a": [["a"]],}}' in str(info.value)


def test_dump_round_trip():
    for name in bundled_examples():
        f = load_bundled(name)
        assert parse_fbas(json.loads(json.dumps(dump_fbas(f)))) == f


def test_bundled_names():
    assert bundled_examples() == [
        "hub", "hub_split", "orgs_2019", "orgs_2020", "orgs_two_of_three",
        "orgs_two_of_three_strict", "star", "star_tight",
    ]
    with pytest.raises(DocumentError):
        load_bundled("nope")
