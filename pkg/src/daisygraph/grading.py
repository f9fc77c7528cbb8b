"""Gradings of arrowed daisy graphs.

A grading assigns an integer to every edge so that at each triple vertex the
non-preferred edges share a base value ``a(v)`` and the preferred edges carry
``a(v) + 1``.  :func:`grade` decides gradability and builds the grading by a
single breadth-first sweep that touches each half-edge a bounded number of
times.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Union

from .model import (
    ArrowedDaisyGraph,
    DaisyError,
    EdgePath,
    HalfEdge,
    OrderedDaisyGraph,
    PreferenceError,
    VertexKind,
    Violation,
    as_adg,
)

TRIPLE = VertexKind.TRIPLE

# grade() touches each half-edge at most twice per edge scan (loop check) and
# once while exhausting its vertex, so visits <= VISITS_PER_EDGE * |E|.
VISITS_PER_EDGE = 4


class PathError(DaisyError, ValueError):
    pass


@dataclass(frozen=True)
class Grading:
    grades: dict[str, int]
    bases: dict[str, int]

    def shifted(self, amount: int) -> Grading:
        return Grading({e: g + amount for e, g in self.grades.items()},
                       {v: a + amount for v, a in self.bases.items()})


@dataclass(frozen=True)
class NotGradable:
    """Evidence that no grading exists.

    ``reason`` is ``"obstructing-loop"`` (with ``loops``) or ``"conflict"``:
    edge ``edge`` was graded ``assigned`` but the base already fixed at its
    other vertex ``vertex`` requires ``required``.
    """

    reason: str
    loops: tuple[str, ...] = ()
    edge: str | None = None
    vertex: str | None = None
    assigned: int | None = None
    required: int | None = None

    def describe(self) -> str:
        if self.reason == "obstructing-loop":
            return "grade-obstructing loop(s): " + ", ".join(self.loops)
        return (f"edge {self.edge} graded {self.assigned} but vertex {self.vertex} "
                f"requires {self.required}")


GradeResult = Union[Grading, NotGradable]


@dataclass
class GradeStats:
    """Instrumentation filled in by :func:`grade`."""

    half_edge_visits: int = 0
    edges: int = 0
    components: int = 0

    @property
    def ratio(self) -> float:
        return self.half_edge_visits / self.edges if self.edges else 0.0


def grade_obstructing_loops(g: ArrowedDaisyGraph | OrderedDaisyGraph) -> list[str]:
    """Loop edges with one preferred and one non-preferred end, sorted by id."""
    adg = as_adg(g)
    pref = adg.preferred
    out = []
    for e, (u, w) in adg.edges.items():
        if u == w and adg.vertices.get(u) is TRIPLE:
            if (HalfEdge(e, 0) in pref) != (HalfEdge(e, 1) in pref):
                out.append(e)
    return sorted(out)


def _status_at(adg: ArrowedDaisyGraph, e: str, v: str) -> bool:
    ends = adg.edges.get(e)
    if ends is None:
        raise PathError(f"unknown edge {e}")
    if adg.vertices.get(v) is not TRIPLE:
        raise PathError(f"{v} is not a triple vertex")
    statuses = {HalfEdge(e, s) in adg.preferred for s, x in enumerate(ends) if x == v}
    if not statuses:
        raise PathError(f"edge {e} does not meet vertex {v}")
    if len(statuses) > 1:
        raise PreferenceError(f"undefined preference: {e} is a grade-obstructing loop at {v}")
    return statuses.pop()


def _require_no_obstruction(adg: ArrowedDaisyGraph) -> None:
    loops = grade_obstructing_loops(adg)
    if loops:
        raise PreferenceError("undefined preference: grade-obstructing loop(s) " + ", ".join(loops))


def delta_g(g: ArrowedDaisyGraph | OrderedDaisyGraph, e: str, v: str, f: str) -> int:
    """Grading difference across ``v`` from edge ``e`` to edge ``f``."""
    adg = as_adg(g)
    _require_no_obstruction(adg)
    return int(_status_at(adg, f, v)) - int(_status_at(adg, e, v))


def path_grading_difference(g: ArrowedDaisyGraph | OrderedDaisyGraph, path: EdgePath) -> int:
    adg = as_adg(g)
    _require_no_obstruction(adg)
    if len(path.edges) == 0 or len(path.vertices) != len(path.edges) - 1:
        raise PathError("path must alternate edges and vertices, starting and ending with an edge")
    for e in path.edges:
        if e not in adg.edges:
            raise PathError(f"unknown edge {e}")
    total = 0
    for k, v in enumerate(path.vertices):
        total += int(_status_at(adg, path.edges[k + 1], v)) - int(_status_at(adg, path.edges[k], v))
    return total


def grade(g: ArrowedDaisyGraph | OrderedDaisyGraph, stats: GradeStats | None = None) -> GradeResult:
    """Find a grading or report why none exists.

    Components are seeded from their smallest edge id, which receives grade 0.
    Double circles are ignored.
    """
    adg = as_adg(g)
    edges = adg.edges
    kinds = adg.vertices
    pref = adg.preferred
    visits = 0

    loops = []
    for e, (u, w) in edges.items():
        visits += 2
        if u == w and (HalfEdge(e, 0) in pref) != (HalfEdge(e, 1) in pref):
            loops.append(e)
    if loops:
        if stats is not None:
            stats.half_edge_visits, stats.edges = visits, len(edges)
        return NotGradable("obstructing-loop", loops=tuple(sorted(loops)))

    incident = adg.base.incident
    grades: dict[str, int] = {}
    bases: dict[str, int] = {}
    components = 0
    queue: deque[str] = deque()

    for seed in sorted(edges):
        if seed in grades:
            continue
        components += 1
        grades[seed] = 0
        for slot, v in enumerate(edges[seed]):
            if kinds[v] is TRIPLE and v not in bases:
                bases[v] = -1 if HalfEdge(seed, slot) in pref else 0
                queue.append(v)

        while queue:
            v = queue.popleft()
            a = bases[v]
            for h in incident[v]:
                visits += 1
                f = h.edge
                if f in grades:
                    continue
                gf = a + 1 if h in pref else a
                grades[f] = gf
                far = HalfEdge(f, 1 - h.slot)
                w = edges[f][far.slot]
                if kinds[w] is not TRIPLE:
                    continue
                far_pref = far in pref
                want = gf - 1 if far_pref else gf
                have = bases.get(w)
                if have is None:
                    bases[w] = want
                    queue.append(w)
                elif have != want:
                    if stats is not None:
                        stats.half_edge_visits, stats.edges, stats.components = visits, len(edges), components
                    return NotGradable("conflict", edge=f, vertex=w, assigned=gf,
                                       required=have + 1 if far_pref else have)

    if stats is not None:
        stats.half_edge_visits, stats.edges, stats.components = visits, len(edges), components
    return Grading(grades, bases)


@dataclass(frozen=True)
class GradingCheck:
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_grading(g: ArrowedDaisyGraph | OrderedDaisyGraph, gr: Grading) -> GradingCheck:
    adg = as_adg(g)
    out: list[Violation] = []
    extra = sorted(set(gr.grades) - set(adg.edges))
    missing = sorted(set(adg.edges) - set(gr.grades))
    if extra:
        out.append(Violation("grade-unknown-edge", "grades given for unknown edges " + ", ".join(extra), ("grades",)))
    if missing:
        out.append(Violation("grade-missing", "no grade for edges " + ", ".join(missing), ("grades",)))
    triples = adg.base.triple_vertices()
    stray = sorted(set(gr.bases) - set(triples))
    if stray:
        out.append(Violation("base-unknown-vertex", "bases given for non-triple vertices " + ", ".join(stray), ("bases",)))
    for v in triples:
        a = gr.bases.get(v)
        if a is None:
            out.append(Violation("base-missing", f"no base value for triple vertex {v}", ("vertex", v)))
            continue
        for h in adg.base.incident[v]:
            if h.edge not in gr.grades:
                continue
            want = a + 1 if h in adg.preferred else a
            if gr.grades[h.edge] != want:
                kind = "preferred" if h in adg.preferred else "non-preferred"
                out.append(Violation(
                    "grade-mismatch",
                    f"at {v} (base {a}) {kind} half-edge {h} needs grade {want}, edge has {gr.grades[h.edge]}",
                    ("vertex", v)))
    return GradingCheck(tuple(out))
