import pathlib

import pytest
from hypothesis import given, strategies as st

from daisygraph import ArrowedDaisyGraph, DaisyGraph, OrderedDaisyGraph, validate
from daisygraph.oracle import random_instance
from daisygraph.textio import ParseError, document_kind, export_dot, parse, serialize

from builders import circles_only, star, star_dg

GOLDEN = pathlib.Path(__file__).parent / "data" / "golden"
CORPUS = sorted(GOLDEN.glob("*.txt"))

MINIMAL = """adg
vertex b1 branch
vertex b2 branch
vertex b3 branch
vertex b4 branch
vertex b5 branch
vertex b6 branch
vertex t triple
edge e1 t b1
edge e2 t b2
edge e3 t b3
edge e4 t b4
edge e5 t b5
edge e6 t b6
pair t e1.0 e2.0 pref e1.0
pair t e3.0 e4.0 pref e3.0
pair t e5.0 e6.0 pref e5.0
"""


def diagnostics(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    return info.value.diagnostics


def test_minimal_document():
    g = parse(MINIMAL)
    assert isinstance(g, ArrowedDaisyGraph)
    assert validate(g).ok
    assert serialize(g) == MINIMAL


def test_empty_documents():
    assert parse("dg\n") == DaisyGraph({}, {}, {}, 0)
    assert parse("adg\ncircles 2\n") == circles_only(2)


def test_pref_forbidden_in_dg():
    text = MINIMAL.replace("adg", "dg", 1)
    diags = diagnostics(text)
    assert [d.line for d in diags] == [15, 16, 17]
    assert all("arrows forbidden in dg" in d.message for d in diags)
    assert diags[0].token == "pref" and diags[0].column == 18


def test_pref_required_in_adg():
    diags = diagnostics(MINIMAL.replace(" pref e3.0", ""))
    assert [d.line for d in diags] == [16]


def test_all_syntax_errors_reported():
    text = "adg\nvertex t triangle\nedge e1 t\nbogus line\n"
    diags = diagnostics(text)
    assert [d.line for d in diags] == [2, 3, 4]
    assert diags[0].token == "triangle"


def test_structural_violation_points_at_line():
    text = MINIMAL.replace("pair t e5.0 e6.0 pref e5.0", "pair t e5.0 e6.0 pref e4.0")
    [d] = diagnostics(text)
    assert d.line == 17
    assert "arrow" in d.message


def test_missing_header_and_carriage_return():
    assert diagnostics("vertex t triple\n")[0].line == 1
    assert diagnostics("dg\r\n")


def test_bad_half_edge_reference():
    diags = diagnostics(MINIMAL.replace("pair t e1.0 e2.0", "pair t e1.2 e2.0"))
    assert diags[0].line == 15 and diags[0].token == "e1.2"


def test_document_kind():
    assert document_kind(star_dg()) == "dg"
    assert document_kind(star()) == "adg"


def test_dot_of_star():
    dot = export_dot(star())
    assert dot.startswith('graph "adg" {\n') and dot.endswith("}\n")
    assert dot.count(" -- ") == 6
    assert dot.count("=inv") == 3
    assert export_dot(DaisyGraph({}, {}, {}, 0)) == 'graph "dg" {\n}\n'


# -- golden corpus ------------------------------------------------------------


def test_corpus_coverage():
    assert len(CORPUS) >= 20
    graphs = [parse(p.read_text()) for p in CORPUS]
    kinds = {document_kind(g) for g in graphs}
    assert kinds == {"dg", "adg", "odg"}
    assert any(u == w for g in graphs for u, w in g.edges.values())
    assert any(g.base.db_vertices() if not isinstance(g, DaisyGraph) else g.db_vertices() for g in graphs)
    assert any(g.circles for g in graphs)
    assert any(isinstance(g, OrderedDaisyGraph) for g in graphs)


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_golden_round_trip(path):
    text = path.read_text()
    canon = serialize(parse(text))
    assert canon == (GOLDEN / f"{path.stem}.canon").read_text()
    assert serialize(parse(canon)) == canon
    assert parse(canon) == parse(text) or document_kind(parse(text)) == "odg"


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_golden_dot(path):
    g = parse(path.read_text())
    expected = (GOLDEN / f"{path.stem}.dot").read_bytes()
    assert export_dot(g).encode() == expected
    assert export_dot(parse(serialize(g))).encode() == expected


@given(st.integers(0, 10**6), st.integers(0, 6), st.integers(0, 2), st.integers(0, 2))
def test_random_round_trip(seed, triples, db, circles):
    g = random_instance(seed, triples=triples, db=db, circles=circles)
    for h in (g, g.base):
        text = serialize(h)
        assert parse(text) == h
        assert serialize(parse(text)) == text
