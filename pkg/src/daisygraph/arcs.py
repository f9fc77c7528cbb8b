"""Double arcs: the long curves obtained by continuing through consecutive pairs.

An arc enters a triple vertex on one half-edge of a pair and leaves on the
other.  Open arcs run between degree-1 vertices; the remaining edges close up
into closed arcs, which may cross the same vertex more than once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .grading import Grading
from .model import (
    AnyGraph,
    ArrowedDaisyGraph,
    DaisyError,
    DaisyGraph,
    HalfEdge,
    OrderedDaisyGraph,
    Pair,
    VertexKind,
)


@dataclass(frozen=True)
class DoubleArc:
    kind: str  # "open" | "closed"
    edges: tuple[str, ...]
    passages: tuple[tuple[str, Pair], ...]
    start: HalfEdge

    @property
    def closed(self) -> bool:
        return self.kind == "closed"

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ArcDecomposition:
    arcs: tuple[DoubleArc, ...]
    circles: int

    @property
    def open_arcs(self) -> list[DoubleArc]:
        return [a for a in self.arcs if not a.closed]

    @property
    def closed_arcs(self) -> list[DoubleArc]:
        return [a for a in self.arcs if a.closed]


@dataclass(frozen=True)
class ArcParity:
    arc: DoubleArc
    length: int
    parity: str  # "even" | "odd"


def _trace(g: DaisyGraph, start: HalfEdge, claimed: set[str]) -> DoubleArc:
    # walk from `start` along its edge, continuing through the pair at each far end
    edges: list[str] = []
    passages: list[tuple[str, Pair]] = []
    h = start
    while True:
        edges.append(h.edge)
        claimed.add(h.edge)
        far = h.opposite
        w = g.endpoint(far)
        if g.vertices[w] is not VertexKind.TRIPLE:
            return DoubleArc("open", tuple(edges), tuple(passages), start)
        v, pair = g.partner[far]
        passages.append((v, pair))
        nxt = pair[1] if pair[0] == far else pair[0]
        if nxt == start:
            return DoubleArc("closed", tuple(edges), tuple(passages), start)
        h = nxt


def decompose_arcs(g: AnyGraph) -> ArcDecomposition:
    """Split the graph part into double arcs.

    Open arcs are traced first, seeded from degree-1 half-edges in sorted
    order, so each runs from its smaller endpoint half-edge.  Closed arcs
    start from their smallest half-edge.
    """
    dg = g.dg
    claimed: set[str] = set()
    arcs: list[DoubleArc] = []
    ends = sorted(h for v in dg.degree_one_vertices() for h in dg.incident[v])
    for h in ends:
        if h.edge not in claimed:
            arcs.append(_trace(dg, h, claimed))
    for e in sorted(dg.edges):
        if e not in claimed:
            arcs.append(_trace(dg, HalfEdge(e, 0), claimed))
    return ArcDecomposition(tuple(arcs), dg.circles)


def closed_arc_parities(g: AnyGraph) -> list[ArcParity]:
    return [ArcParity(a, len(a), "even" if len(a) % 2 == 0 else "odd")
            for a in decompose_arcs(g).closed_arcs]


@dataclass(frozen=True)
class Lift:
    adg: ArrowedDaisyGraph
    grading: Grading


@dataclass(frozen=True)
class NotLiftable:
    odd_arcs: tuple[DoubleArc, ...]

    def describe(self) -> str:
        return "odd closed arc(s): " + "; ".join("[" + ", ".join(a.edges) + "]" for a in self.odd_arcs)


def short_grade_lift(g: DaisyGraph) -> Lift | NotLiftable:
    """Give a plain daisy graph arrows coming from a {0, 1} grading.

    Grades alternate along every arc starting from 0; in each consecutive pair
    the half-edge on the grade-1 edge becomes preferred, so every base value
    is 0.
    """
    if isinstance(g, (ArrowedDaisyGraph, OrderedDaisyGraph)) or not isinstance(g, DaisyGraph):
        raise DaisyError("expected plain DG")
    decomposition = decompose_arcs(g)
    odd = tuple(a for a in decomposition.closed_arcs if len(a) % 2)
    if odd:
        return NotLiftable(odd)

    grades: dict[str, int] = {}
    for arc in decomposition.arcs:
        for k, e in enumerate(arc.edges):
            grades[e] = k % 2

    arrows: dict[tuple[str, Pair], HalfEdge] = {}
    for v, pairs in g.pairing.items():
        for p in pairs:
            arrows[(v, p)] = p[0] if grades[p[0].edge] == 1 else p[1]
    bases = {v: 0 for v in g.triple_vertices()}
    return Lift(ArrowedDaisyGraph(g, arrows), Grading(grades, bases))


LiftResult = Union[Lift, NotLiftable]
