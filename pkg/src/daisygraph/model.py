"""Value types for daisy graphs, arrowed daisy graphs and ordered daisy graphs.

Construction never validates: any candidate structure can be built and then
handed to :func:`validate`, which returns the violations as data.  All types
are treated as immutable once built; nothing in the package mutates them.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Union


class DaisyError(Exception):
    """Base class for errors raised by this package."""


class PreferenceError(DaisyError, ValueError):
    """Raised when a preferred/non-preferred status is requested where none exists."""


class StructureMismatch(DaisyError, ValueError):
    """Raised when two structures that must share ids do not."""


class VertexKind(enum.Enum):
    TRIPLE = "triple"
    BRANCH = "branch"
    DB = "db"

    @property
    def degree(self) -> int:
        return 6 if self is VertexKind.TRIPLE else 1


class HalfEdge(NamedTuple):
    """One end of an edge. Slot 0 is the first declared endpoint."""

    edge: str
    slot: int

    def __str__(self) -> str:
        return f"{self.edge}.{self.slot}"

    @property
    def opposite(self) -> HalfEdge:
        return HalfEdge(self.edge, 1 - self.slot)

    @classmethod
    def parse(cls, text: str) -> HalfEdge:
        edge, _, slot = text.rpartition(".")
        if not edge or slot not in ("0", "1"):
            raise ValueError(f"not a half-edge reference: {text!r}")
        return cls(edge, int(slot))


Pair = tuple[HalfEdge, HalfEdge]


def make_pair(a: HalfEdge | str, b: HalfEdge | str) -> Pair:
    """Normalize an unordered pair of half-edges (smaller first)."""
    a = HalfEdge.parse(a) if isinstance(a, str) else HalfEdge(*a)
    b = HalfEdge.parse(b) if isinstance(b, str) else HalfEdge(*b)
    return (a, b) if a <= b else (b, a)


def _half(h: HalfEdge | str) -> HalfEdge:
    return HalfEdge.parse(h) if isinstance(h, str) else HalfEdge(*h)


@dataclass(frozen=True, eq=True)
class DaisyGraph:
    """Multigraph with degree-1/degree-6 vertices, a double-circle count and
    the consecutive pairing at every triple vertex."""

    vertices: Mapping[str, VertexKind]
    edges: Mapping[str, tuple[str, str]]
    pairing: Mapping[str, tuple[Pair, ...]] = field(default_factory=dict)
    circles: int = 0

    def __post_init__(self) -> None:
        # pairs listed in any order describe the same graph
        ordered = {v: tuple(sorted(ps)) for v, ps in self.pairing.items()}
        object.__setattr__(self, "pairing", ordered)

    @classmethod
    def build(
        cls,
        vertices: Mapping[str, VertexKind | str],
        edges: Mapping[str, tuple[str, str]],
        pairing: Mapping[str, Iterable[tuple[HalfEdge | str, HalfEdge | str]]] | None = None,
        circles: int = 0,
    ) -> DaisyGraph:
        return cls(
            vertices={v: VertexKind(k) for v, k in vertices.items()},
            edges={e: (u, w) for e, (u, w) in edges.items()},
            pairing={v: tuple(make_pair(a, b) for a, b in ps) for v, ps in (pairing or {}).items()},
            circles=circles,
        )

    # -- derived structure (cached; safe because instances are never mutated)

    @cached_property
    def incident(self) -> dict[str, tuple[HalfEdge, ...]]:
        """Half-edges at each vertex, sorted. Unknown endpoints are skipped."""
        acc: dict[str, list[HalfEdge]] = {v: [] for v in self.vertices}
        for e, ends in self.edges.items():
            for slot, v in enumerate(ends):
                if v in acc:
                    acc[v].append(HalfEdge(e, slot))
        return {v: tuple(sorted(hs)) for v, hs in acc.items()}

    @cached_property
    def partner(self) -> dict[HalfEdge, tuple[str, Pair]]:
        """Map each paired half-edge to its (vertex, pair)."""
        out: dict[HalfEdge, tuple[str, Pair]] = {}
        for v, pairs in self.pairing.items():
            for p in pairs:
                out.setdefault(p[0], (v, p))
                out.setdefault(p[1], (v, p))
        return out

    def endpoint(self, h: HalfEdge) -> str:
        return self.edges[h.edge][h.slot]

    def triple_vertices(self) -> list[str]:
        return sorted(v for v, k in self.vertices.items() if k is VertexKind.TRIPLE)

    def db_vertices(self) -> list[str]:
        return sorted(v for v, k in self.vertices.items() if k is VertexKind.DB)

    def degree_one_vertices(self) -> list[str]:
        return sorted(v for v, k in self.vertices.items() if k is not VertexKind.TRIPLE)

    @property
    def dg(self) -> DaisyGraph:
        return self


@dataclass(frozen=True, eq=True)
class ArrowedDaisyGraph:
    """A daisy graph plus the preferred half-edge of every consecutive pair."""

    base: DaisyGraph
    arrows: Mapping[tuple[str, Pair], HalfEdge]

    @classmethod
    def from_pairs(
        cls,
        vertices: Mapping[str, VertexKind | str],
        edges: Mapping[str, tuple[str, str]],
        pairs: Mapping[str, Iterable[tuple[HalfEdge | str, HalfEdge | str, HalfEdge | str]]],
        circles: int = 0,
    ) -> ArrowedDaisyGraph:
        """Build from ``{vertex: [(h1, h2, preferred), ...]}``."""
        pairing: dict[str, list[tuple[HalfEdge, HalfEdge]]] = {}
        arrows: dict[tuple[str, Pair], HalfEdge] = {}
        for v, triples in pairs.items():
            pairing[v] = []
            for a, b, pref in triples:
                p = make_pair(a, b)
                pairing[v].append(p)
                arrows[(v, p)] = _half(pref)
        return cls(DaisyGraph.build(vertices, edges, pairing, circles), arrows)

    @property
    def vertices(self) -> Mapping[str, VertexKind]:
        return self.base.vertices

    @property
    def edges(self) -> Mapping[str, tuple[str, str]]:
        return self.base.edges

    @property
    def pairing(self) -> Mapping[str, tuple[Pair, ...]]:
        return self.base.pairing

    @property
    def circles(self) -> int:
        return self.base.circles

    @property
    def dg(self) -> DaisyGraph:
        return self.base

    @property
    def adg(self) -> ArrowedDaisyGraph:
        return self

    @cached_property
    def preferred(self) -> frozenset[HalfEdge]:
        return frozenset(self.arrows.values())

    def flipped(self) -> ArrowedDaisyGraph:
        """Same graph with every arrow moved to the other half-edge of its pair."""
        arrows = {(v, p): (p[1] if h == p[0] else p[0]) for (v, p), h in self.arrows.items()}
        return ArrowedDaisyGraph(self.base, arrows)


@dataclass(frozen=True, eq=True)
class OrderedDaisyGraph:
    """An arrowed daisy graph plus an ordering of the preferred half-edges at
    each triple vertex, meaningful up to cyclic rotation."""

    base: ArrowedDaisyGraph
    ordering: Mapping[str, tuple[HalfEdge, HalfEdge, HalfEdge]]

    @property
    def vertices(self) -> Mapping[str, VertexKind]:
        return self.base.vertices

    @property
    def edges(self) -> Mapping[str, tuple[str, str]]:
        return self.base.edges

    @property
    def pairing(self) -> Mapping[str, tuple[Pair, ...]]:
        return self.base.pairing

    @property
    def circles(self) -> int:
        return self.base.circles

    @property
    def arrows(self) -> Mapping[tuple[str, Pair], HalfEdge]:
        return self.base.arrows

    @property
    def preferred(self) -> frozenset[HalfEdge]:
        return self.base.preferred

    @property
    def dg(self) -> DaisyGraph:
        return self.base.base

    @property
    def adg(self) -> ArrowedDaisyGraph:
        return self.base


AnyGraph = Union[DaisyGraph, ArrowedDaisyGraph, OrderedDaisyGraph]


def as_adg(g: ArrowedDaisyGraph | OrderedDaisyGraph) -> ArrowedDaisyGraph:
    if isinstance(g, OrderedDaisyGraph):
        return g.base
    if isinstance(g, ArrowedDaisyGraph):
        return g
    raise TypeError(f"expected an arrowed daisy graph, got {type(g).__name__}")


@dataclass(frozen=True)
class EdgePath:
    """Alternating walk e0, v0, e1, v1, ..., v(r-1), er."""

    edges: tuple[str, ...]
    vertices: tuple[str, ...] = ()

    @classmethod
    def of(cls, *items: str) -> EdgePath:
        """``EdgePath.of("e1", "v", "e2")`` builds from the alternating sequence."""
        if len(items) % 2 != 1:
            raise ValueError("a path alternates edge, vertex, ..., edge")
        return cls(tuple(items[0::2]), tuple(items[1::2]))


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    subject: tuple = ()

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


def _validate_dg(g: DaisyGraph, out: list[Violation]) -> None:
    if not isinstance(g.circles, int) or isinstance(g.circles, bool) or g.circles < 0:
        out.append(Violation("bad-circles", f"circle count must be a non-negative integer, got {g.circles!r}", ("circles",)))

    for v, kind in sorted(g.vertices.items()):
        if not isinstance(kind, VertexKind):
            out.append(Violation("bad-kind", f"vertex {v} has unknown kind {kind!r}", ("vertex", v)))

    for e, ends in sorted(g.edges.items()):
        if len(ends) != 2:
            out.append(Violation("bad-edge", f"edge {e} must have exactly two endpoints", ("edge", e)))
            continue
        for slot, v in enumerate(ends):
            if v not in g.vertices:
                out.append(Violation("unknown-vertex", f"edge {e} slot {slot} names unknown vertex {v}", ("edge", e)))

    degree: Counter[str] = Counter()
    for ends in g.edges.values():
        if len(ends) == 2:
            degree.update(v for v in ends if v in g.vertices)
    for v, kind in sorted(g.vertices.items()):
        if isinstance(kind, VertexKind) and degree[v] != kind.degree:
            out.append(Violation(
                "bad-degree", f"{kind.value} vertex {v} has degree {degree[v]}, expected {kind.degree}", ("vertex", v)))

    for v in sorted(g.pairing):
        if g.vertices.get(v) is not VertexKind.TRIPLE:
            out.append(Violation("pairing-not-triple", f"pairs given at {v}, which is not a triple vertex", ("vertex", v)))

    for v, kind in sorted(g.vertices.items()):
        if kind is not VertexKind.TRIPLE:
            continue
        pairs = g.pairing.get(v)
        if pairs is None:
            out.append(Violation("missing-pairing", f"triple vertex {v} has no pairs", ("vertex", v)))
            continue
        if len(pairs) != 3:
            out.append(Violation("pair-count", f"triple vertex {v} has {len(pairs)} pairs, expected 3", ("vertex", v)))
        at_v = set(g.incident.get(v, ()))
        seen: Counter[HalfEdge] = Counter()
        for p in pairs:
            if len(p) != 2 or p[0] == p[1]:
                out.append(Violation("pair-not-partition", f"pair {_fmt_pair(p)} at {v} does not hold two distinct half-edges", ("pair", v, p)))
            for h in p:
                if h not in at_v:
                    out.append(Violation("half-edge-not-at-vertex", f"half-edge {h} in pair at {v} does not end at {v}", ("pair", v, p)))
            seen.update(p)
        twice = sorted(h for h, c in seen.items() if c > 1)
        missing = sorted(at_v - set(seen))
        if twice or missing:
            detail = []
            if twice:
                detail.append("repeated " + ", ".join(map(str, twice)))
            if missing:
                detail.append("unpaired " + ", ".join(map(str, missing)))
            out.append(Violation("pair-not-partition", f"pairs at {v} do not partition its half-edges ({'; '.join(detail)})", ("vertex", v)))


def _fmt_pair(p: tuple) -> str:
    return "(" + " ".join(map(str, p)) + ")"


def _validate_arrows(g: ArrowedDaisyGraph, out: list[Violation]) -> None:
    known = {(v, p) for v, ps in g.pairing.items() for p in ps}
    for (v, p), h in sorted(g.arrows.items()):
        if (v, p) not in known:
            out.append(Violation("arrow-unknown-pair", f"arrow given for {_fmt_pair(p)} at {v}, which is not a pair there", ("arrow", v, p)))
        elif h not in p:
            out.append(Violation("arrow-outside-pair", f"arrow {h} at {v} is not in its pair {_fmt_pair(p)}", ("arrow", v, p)))
    for v, p in sorted(known):
        if (v, p) not in g.arrows:
            out.append(Violation("missing-arrow", f"pair {_fmt_pair(p)} at {v} has no preferred half-edge", ("arrow", v, p)))


def _validate_ordering(g: OrderedDaisyGraph, out: list[Violation]) -> None:
    for v in sorted(g.ordering):
        if g.vertices.get(v) is not VertexKind.TRIPLE:
            out.append(Violation("order-not-triple", f"ordering given at {v}, which is not a triple vertex", ("order", v)))
    for v in g.base.base.triple_vertices():
        order = g.ordering.get(v)
        if order is None:
            out.append(Violation("missing-order", f"triple vertex {v} has no ordering", ("vertex", v)))
            continue
        expected = sorted(h for (x, _), h in g.arrows.items() if x == v)
        if len(order) != 3 or sorted(order) != expected:
            out.append(Violation(
                "order-mismatch",
                f"ordering at {v} must list its preferred half-edges {', '.join(map(str, expected))} once each",
                ("order", v)))


def validate(g: AnyGraph) -> ValidationReport:
    """Check every structural invariant; violations are returned, not raised."""
    out: list[Violation] = []
    _validate_dg(g.dg, out)
    if isinstance(g, (ArrowedDaisyGraph, OrderedDaisyGraph)):
        _validate_arrows(as_adg(g), out)
    if isinstance(g, OrderedDaisyGraph):
        _validate_ordering(g, out)
    return ValidationReport(tuple(out))


# -- operations -------------------------------------------------------------


def preferred_status(g: ArrowedDaisyGraph | OrderedDaisyGraph, h: HalfEdge | str) -> bool:
    """True if ``h`` is the preferred half-edge of its pair."""
    adg = as_adg(g)
    h = _half(h)
    if h.edge not in adg.edges:
        raise PreferenceError(f"unknown edge {h.edge}")
    v = adg.base.endpoint(h)
    if adg.vertices.get(v) is not VertexKind.TRIPLE:
        raise PreferenceError(f"no preference at degree-1 vertex {v}")
    return h in adg.preferred


def _rotate_smallest_first(order: tuple[HalfEdge, ...]) -> tuple[HalfEdge, ...]:
    i = order.index(min(order))
    return order[i:] + order[:i]


def odg_canonicalize(o: OrderedDaisyGraph) -> OrderedDaisyGraph:
    return OrderedDaisyGraph(o.base, {v: _rotate_smallest_first(tuple(order)) for v, order in o.ordering.items()})


def odg_orders_equal(a: OrderedDaisyGraph, b: OrderedDaisyGraph) -> bool:
    """True iff the orderings agree up to an even permutation at every vertex."""
    if a.base != b.base or set(a.ordering) != set(b.ordering):
        raise StructureMismatch("orderings compared over different arrowed daisy graphs")
    # on three elements the even permutations are exactly the rotations
    return odg_canonicalize(a).ordering == odg_canonicalize(b).ordering


def euler_char_of_image(chi_f: int, triple_count: int, branch_count: int) -> Fraction:
    """Euler characteristic of the image: chi(F) + T + B/2, exactly."""
    return Fraction(chi_f) + triple_count + Fraction(branch_count, 2)
