import pytest
import yaml

from pring.catalog import ring_corpus
from pring.core import Kind, validate
from pring.errors import ParseError, StructureError
from pring.groups import gln_presentation
from pring.io import (dump_ring, load_yaml, parse_presentation_document, parse_ring_document,
                      presentation_to_document, resolve_ring, ring_to_document)

F1_DOC = """
elements: ["0", "1"]
zero: "0"
one: "1"
add: []
mul: [["1", "1", "1"], ["0", "1", "0"], ["0", "0", "0"]]
"""


def test_parse_f1():
    A = parse_ring_document(load_yaml(F1_DOC)).structure
    assert A.size == 2 and not A.summable(1, 1)
    assert validate(A, Kind.RING).ok


def test_round_trip_corpus():
    for A in ring_corpus(6):
        B = parse_ring_document(load_yaml(dump_ring(A))).structure
        assert B.names == A.names and B.add == A.add and B.mul == A.mul and B.one == A.one


def test_relate_and_builtin():
    doc = parse_ring_document({"builtin": "Z4", "relate": [["2", "0"]]})
    assert doc.structure.size == 4 and doc.relate == [(2, 0)]


def test_zero_pairs_filled_and_symmetric():
    doc = {"elements": ["0", "a", "b"], "zero": "0", "add": [["a", "b", "b"]]}
    M = parse_ring_document(doc).structure
    assert M.add[2][1] == 2 and M.add[0][1] == 1


def test_raw_keeps_asymmetry():
    doc = {"elements": ["0", "a", "b"], "zero": "0", "raw": True,
           "add": [["0", "0", "0"], ["0", "a", "a"], ["a", "0", "a"], ["0", "b", "b"], ["b", "0", "b"],
                   ["a", "b", "b"]]}
    M = parse_ring_document(doc).structure
    assert "(b)" in validate(M, Kind.MAGMA).axioms()


@pytest.mark.parametrize("doc,err", [
    ({"elements": []}, ParseError),
    ({"elements": ["0", "0"], "zero": "0"}, ParseError),
    ({"elements": ["0", "1"]}, ParseError),
    ({"elements": ["0", "1"], "zero": "0", "add": [["1", "1", "2"]]}, ParseError),
    ({"elements": ["0", "1"], "zero": "0", "one": "1", "mul": [["1", "1", "1"]]}, StructureError),
    ({"elements": ["0", "1"], "zero": "0", "one": "1"}, ParseError),
    ([1, 2], ParseError),
])
def test_bad_documents(doc, err):
    with pytest.raises(err):
        parse_ring_document(doc)


def test_invalid_yaml():
    with pytest.raises(ParseError):
        load_yaml("elements: [0")


def test_resolve(tmp_path):
    p = tmp_path / "f1.yaml"
    p.write_text(F1_DOC)
    assert resolve_ring(str(p)).structure.size == 2
    assert resolve_ring("f1.yaml", [str(tmp_path)]).structure.size == 2
    assert resolve_ring("ZMOD(5)").structure.size == 5
    with pytest.raises(ParseError):
        resolve_ring("no-such-ring")


def test_presentation_round_trip():
    P = gln_presentation(2)
    doc = presentation_to_document(P)
    Q = parse_presentation_document(yaml.safe_load(yaml.safe_dump(doc)))
    assert Q.generators == P.generators
    assert Q.summable == P.summable and Q.relations == P.relations


def test_document_lists_each_pair_once():
    A = ring_corpus(6)[5]
    doc = ring_to_document(A)
    pairs = [(a, b) for a, b, _ in doc["add"]]
    assert len(pairs) == len(set(pairs))
