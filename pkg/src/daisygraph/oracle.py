"""Independent checks: a brute-force gradability oracle, an exhaustive
enumerator of small labeled instances and seeded random generators.

The oracle deliberately shares no code with :mod:`daisygraph.grading`.  It
searches grade assignments directly against the defining condition: at each
triple vertex, every non-preferred edge has one common grade ``a`` and every
preferred edge has ``a + 1``.

Completeness of the search bound: inside a connected component the smallest
edge is pinned to 0, and two edges meeting at a vertex differ by at most 1, so
every grade of a shifted grading lies within graph distance of the pinned
edge, hence inside ``[-|E|, |E|]``.
"""

from __future__ import annotations

import csv
import io
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .grading import Grading, NotGradable, grade
from .model import (
    ArrowedDaisyGraph,
    DaisyError,
    DaisyGraph,
    HalfEdge,
    OrderedDaisyGraph,
    Pair,
    VertexKind,
    as_adg,
    make_pair,
)
from .realize import ManifoldClass, decide_realizable

ORACLE_MAX_EDGES = 12

T, B, D = VertexKind.TRIPLE, VertexKind.BRANCH, VertexKind.DB


class OracleRefusal(DaisyError):
    """The instance is too large for exhaustive search."""


# -- brute-force oracle -----------------------------------------------------


def oracle_gradable(g: ArrowedDaisyGraph | OrderedDaisyGraph) -> Grading | NotGradable:
    """Exhaustive search for a grading with each component's smallest edge at 0."""
    adg = as_adg(g)
    n = len(adg.edges)
    if n > ORACLE_MAX_EDGES:
        raise OracleRefusal(f"{n} edges exceeds the exhaustive-search limit of {ORACLE_MAX_EDGES}")

    preferred = set(adg.arrows.values())
    # (edge, is-preferred) for each half-edge at each triple vertex
    ends_at: dict[str, list[tuple[str, int]]] = {
        v: [] for v, kind in adg.vertices.items() if kind is T}
    for e, (u, w) in adg.edges.items():
        for slot, x in ((0, u), (1, w)):
            if x in ends_at:
                ends_at[x].append((e, int(HalfEdge(e, slot) in preferred)))
    touching = {e: sorted({x for x in ends if x in ends_at}) for e, ends in adg.edges.items()}

    def consistent(v: str, grades: dict[str, int]) -> bool:
        base = None
        for e, is_pref in ends_at[v]:
            if e in grades:
                implied = grades[e] - is_pref
                if base is None:
                    base = implied
                elif base != implied:
                    return False
        return True

    values = range(-n, n + 1)
    grades: dict[str, int] = {}

    def search(order: Sequence[str], quick: Sequence[tuple | None], i: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        ref = quick[i]
        for value in ((0,) if i == 0 else values):
            # cheap necessary condition against one earlier edge at a shared vertex
            if ref is not None and value - ref[1] != grades[ref[0]] - ref[2]:
                continue
            grades[e] = value
            if all(consistent(v, grades) for v in touching[e]) and search(order, quick, i + 1):
                return True
        grades.pop(e, None)
        return False

    for order, quick in _search_orders(sorted(adg.edges), ends_at, touching):
        if not search(order, quick, 0):
            return NotGradable("conflict")

    bases = {}
    for v, ends in ends_at.items():
        e, is_pref = ends[0]
        bases[v] = grades[e] - is_pref
    return Grading(dict(sorted(grades.items())), dict(sorted(bases.items())))


def _search_orders(edges: list[str], ends_at: dict[str, list[tuple[str, int]]],
                   touching: dict[str, list[str]]) -> Iterator[tuple[list[str], list[tuple | None]]]:
    """Per component: edges in breadth-first order from the smallest one, each
    paired with (earlier edge, its own status, status of the earlier edge) at
    a shared vertex."""
    seen_edges: set[str] = set()
    seen_vertices: set[str] = set()
    for seed in edges:
        if seed in seen_edges:
            continue
        seen_edges.add(seed)
        order: list[str] = [seed]
        refs: list[tuple | None] = [None]
        k = 0
        while k < len(order):
            e = order[k]
            k += 1
            for v in touching[e]:
                if v in seen_vertices:
                    continue
                seen_vertices.add(v)
                status_e = next(p for x, p in ends_at[v] if x == e)
                for f, p in ends_at[v]:
                    if f not in seen_edges:
                        seen_edges.add(f)
                        order.append(f)
                        refs.append((e, p, status_e))
        yield order, refs


# -- exhaustive enumeration -------------------------------------------------


@dataclass(frozen=True)
class EnumerationSpec:
    """Space of labeled instances.

    ``pendant_completion`` fills spare degree at triple vertices with edges to
    branch vertices; without it only saturated multigraphs are produced.
    ``db_variants`` also emits each instance with its first pendant vertex
    turned into a DB vertex.
    """

    max_triple_vertices: int
    pendant_completion: bool = True
    arrow_exhaustive: bool = True
    min_triple_vertices: int = 0
    allow_loops: bool = True
    db_variants: bool = False
    circle_counts: tuple[int, ...] = (0,)

    def __post_init__(self) -> None:
        if self.max_triple_vertices < 0 or self.min_triple_vertices < 0:
            raise ValueError("vertex bounds must be non-negative")


@dataclass(frozen=True)
class Shape:
    """A labeled multigraph on triple vertices t0..t(k-1) with pendants attached."""

    triples: int
    multiplicity: tuple[tuple[int, int, int], ...]  # (i, j, count) with i <= j
    pendants: tuple[int, ...]

    def build(self, db: bool = False, circles: int = 0) -> DaisyGraph:
        vertices: dict[str, VertexKind] = {f"t{i}": T for i in range(self.triples)}
        edge_ends: list[tuple[str, str]] = []
        for i, j, count in self.multiplicity:
            edge_ends.extend([(f"t{i}", f"t{j}")] * count)
        total_pendants = sum(self.pendants)
        width = max(2, len(str(max(total_pendants - 1, 0))))
        p = 0
        for i, count in enumerate(self.pendants):
            for _ in range(count):
                name = f"p{p:0{width}d}"
                vertices[name] = D if (db and p == 0) else B
                edge_ends.append((f"t{i}", name))
                p += 1
        ew = max(2, len(str(max(len(edge_ends) - 1, 0))))
        edges = {f"e{k:0{ew}d}": ends for k, ends in enumerate(edge_ends)}
        return DaisyGraph(vertices, edges, {}, circles)


def _shapes(k: int, spec: EnumerationSpec) -> Iterator[Shape]:
    slots = [(i, j) for i in range(k) for j in range(i, k) if spec.allow_loops or i != j]

    def rec(idx: int, degree: list[int], chosen: list[tuple[int, int, int]]) -> Iterator[Shape]:
        if idx == len(slots):
            spare = tuple(6 - d for d in degree)
            if spec.pendant_completion or not any(spare):
                yield Shape(k, tuple(c for c in chosen if c[2]), spare)
            return
        i, j = slots[idx]
        count = 0
        while True:
            if i == j:
                if degree[i] + 2 * count > 6:
                    break
            elif degree[i] + count > 6 or degree[j] + count > 6:
                break
            nd = list(degree)
            if i == j:
                nd[i] += 2 * count
            else:
                nd[i] += count
                nd[j] += count
            yield from rec(idx + 1, nd, chosen + [(i, j, count)])
            count += 1

    yield from rec(0, [0] * k, [])


def iter_shapes(spec: EnumerationSpec) -> Iterator[Shape]:
    for k in range(spec.min_triple_vertices, spec.max_triple_vertices + 1):
        yield from _shapes(k, spec)


def perfect_matchings(items: Sequence) -> Iterator[list[tuple]]:
    """All pairings of an even-length sequence, in a fixed order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for m in perfect_matchings(remaining):
            yield [(first, other)] + m


def _db_options(shape: Shape, spec: EnumerationSpec) -> tuple[bool, ...]:
    return (False, True) if spec.db_variants and sum(shape.pendants) else (False,)


def shape_instance_count(shape: Shape, spec: EnumerationSpec) -> int:
    per_vertex = 15 * (8 if spec.arrow_exhaustive else 1)
    return per_vertex ** shape.triples * len(_db_options(shape, spec)) * len(spec.circle_counts)


def _dgs_of_shape(shape: Shape, spec: EnumerationSpec) -> Iterator[DaisyGraph]:
    for db in _db_options(shape, spec):
        skeleton = shape.build(db)
        triples = [f"t{i}" for i in range(shape.triples)]
        choices = [list(perfect_matchings(list(skeleton.incident[v]))) for v in triples]
        for combo in itertools.product(*choices):
            pairing = {v: tuple(make_pair(a, b) for a, b in m) for v, m in zip(triples, combo)}
            for circles in spec.circle_counts:
                yield DaisyGraph(skeleton.vertices, skeleton.edges, pairing, circles)


def enumerate_daisy_graphs(spec: EnumerationSpec) -> Iterator[DaisyGraph]:
    """Every labeled DG in the space (arrow settings ignored)."""
    for shape in iter_shapes(spec):
        yield from _dgs_of_shape(shape, spec)


def enumerate_shape(shape: Shape, spec: EnumerationSpec) -> Iterator[ArrowedDaisyGraph]:
    for dg in _dgs_of_shape(shape, spec):
        pairs: list[tuple[str, Pair]] = [(v, p) for v in sorted(dg.pairing) for p in dg.pairing[v]]
        picks = itertools.product((0, 1), repeat=len(pairs)) if spec.arrow_exhaustive else [(0,) * len(pairs)]
        for pick in picks:
            yield ArrowedDaisyGraph(dg, {vp: vp[1][c] for vp, c in zip(pairs, pick)})


def enumerate_instances(spec: EnumerationSpec) -> Iterator[ArrowedDaisyGraph]:
    """Every labeled ADG in the space exactly once, in a fixed order."""
    for shape in iter_shapes(spec):
        yield from enumerate_shape(shape, spec)


# -- seeded random instances ------------------------------------------------


def _finish(rng: random.Random, vertices: dict[str, VertexKind], ends: list[tuple[str, str]],
            db: int, circles: int, up: dict[HalfEdge, bool] | None = None) -> ArrowedDaisyGraph:
    edges = {f"e{k}": pair for k, pair in enumerate(ends)}
    leaves = [v for v, kind in vertices.items() if kind is not T]
    for v in rng.sample(leaves, min(db, len(leaves))):
        vertices[v] = D
    dg = DaisyGraph(vertices, edges, {}, circles)
    pairing: dict[str, tuple[Pair, ...]] = {}
    arrows: dict[tuple[str, Pair], HalfEdge] = {}
    for v in dg.triple_vertices():
        hs = list(dg.incident[v])
        if up is None:
            rng.shuffle(hs)
            matched = [(hs[0], hs[1]), (hs[2], hs[3]), (hs[4], hs[5])]
            chosen = [rng.choice(m) for m in matched]
        else:
            highs = [h for h in hs if up[h]]
            lows = [h for h in hs if not up[h]]
            rng.shuffle(lows)
            matched = list(zip(highs, lows))
            chosen = highs
        ps = tuple(make_pair(a, b) for a, b in matched)
        pairing[v] = ps
        for p, h in zip(ps, chosen):
            arrows[(v, p)] = h
    return ArrowedDaisyGraph(DaisyGraph(vertices, edges, pairing, circles), arrows)


def random_instance(
    seed: int,
    triples: int = 3,
    leaves: int | None = None,
    db: int = 0,
    circles: int = 0,
    forest: bool = False,
    gradable: bool = False,
    link_probability: float = 0.8,
) -> ArrowedDaisyGraph:
    """A valid random ADG, reproducible from ``seed`` and the size parameters.

    Default mode: ``triples`` degree-6 vertices and ``leaves`` degree-1
    vertices, half-edge slots matched uniformly at random, then a uniform
    pairing and arrow choice at every triple vertex.

    ``forest``: a random tree on the triple vertices, spare degree filled with
    pendants.

    ``gradable``: each triple vertex draws a base level; its six slots are
    three at the base level and three one above.  Slots of equal level are
    matched into edges (with probability ``link_probability`` per match, the
    rest become pendants) and each pair joins one raised slot with one base
    slot, the raised one preferred.  The result is gradable by construction.
    """
    rng = random.Random(seed)
    vertices: dict[str, VertexKind] = {f"t{i}": T for i in range(triples)}
    ends: list[tuple[str, str]] = []
    leaf_count = 0

    def new_leaf() -> str:
        nonlocal leaf_count
        name = f"l{leaf_count}"
        vertices[name] = B
        leaf_count += 1
        return name

    def orient(u: str, w: str) -> tuple[str, str]:
        return (u, w) if rng.random() < 0.5 else (w, u)

    if gradable:
        level = {f"t{i}": rng.randrange(3) for i in range(triples)}
        by_level: dict[int, list[tuple[str, bool]]] = {}
        for v, a in level.items():
            for raised in (True, True, True, False, False, False):
                by_level.setdefault(a + raised, []).append((v, raised))
        up: dict[HalfEdge, bool] = {}

        def add(u_slot: tuple[str, bool], w_slot: tuple[str, bool] | None) -> None:
            if w_slot is None:
                ends.append((u_slot[0], new_leaf()))
                up[HalfEdge(f"e{len(ends) - 1}", 0)] = u_slot[1]
                return
            swap = rng.random() < 0.5
            a, b = (w_slot, u_slot) if swap else (u_slot, w_slot)
            ends.append((a[0], b[0]))
            e = f"e{len(ends) - 1}"
            up[HalfEdge(e, 0)] = a[1]
            up[HalfEdge(e, 1)] = b[1]

        for lvl in sorted(by_level):
            group = by_level[lvl]
            rng.shuffle(group)
            while len(group) >= 2:
                a, b = group.pop(), group.pop()
                if rng.random() < link_probability:
                    add(a, b)
                else:
                    add(a, None)
                    add(b, None)
            if group:
                add(group.pop(), None)
        extra = max(0, (leaves or 0) - leaf_count) // 2
        for _ in range(extra):
            ends.append((new_leaf(), new_leaf()))
        return _finish(rng, vertices, ends, db, circles, up)

    if forest:
        free = {f"t{i}": 6 for i in range(triples)}
        for i in range(1, triples):
            parent = rng.choice([f"t{j}" for j in range(i) if free[f"t{j}"] > 0])
            ends.append(orient(parent, f"t{i}"))
            free[parent] -= 1
            free[f"t{i}"] -= 1
        for v in sorted(free, key=lambda s: int(s[1:])):
            for _ in range(free[v]):
                ends.append(orient(v, new_leaf()))
        return _finish(rng, vertices, ends, db, circles)

    if leaves is None:
        leaves = 2 * rng.randrange(triples + 2)
    if (6 * triples + leaves) % 2:
        raise ValueError("total degree must be even: use an even number of leaves")
    slots = [f"t{i}" for i in range(triples) for _ in range(6)]
    slots += [new_leaf() for _ in range(leaves)]
    rng.shuffle(slots)
    ends.extend((slots[k], slots[k + 1]) for k in range(0, len(slots), 2))
    return _finish(rng, vertices, ends, db, circles)


def random_chain(seed: int, triples: int) -> ArrowedDaisyGraph:
    """A gradable chain t0 = t1 = ... with two parallel edges between
    neighbours, pendants elsewhere, arrows derived from random base levels."""
    rng = random.Random(seed)
    vertices: dict[str, VertexKind] = {f"t{i}": T for i in range(triples)}
    free = {f"t{i}": {True: 3, False: 3} for i in range(triples)}
    level = {"t0": 0}
    ends: list[tuple[str, str]] = []
    up: dict[HalfEdge, bool] = {}

    def link(u: str, u_up: bool, w: str, w_up: bool) -> None:
        e = f"e{len(ends)}"
        ends.append((u, w))
        up[HalfEdge(e, 0)] = u_up
        up[HalfEdge(e, 1)] = w_up
        free[u][u_up] -= 1
        free[w][w_up] -= 1

    for i in range(triples - 1):
        u, w = f"t{i}", f"t{i + 1}"
        # each option: (level step, statuses used at u for the two edges)
        options = []
        if free[u][True] >= 2:
            options.append((1, (True, True)))
            options.append((0, (True, True)))
        if free[u][False] >= 2:
            options.append((-1, (False, False)))
            options.append((0, (False, False)))
        if free[u][True] >= 1 and free[u][False] >= 1:
            options.append((0, (True, False)))
        step, used = rng.choice(options)
        level[w] = level[u] + step
        for u_up in used:
            # equal grades: u at level+u_up must match w at level[w]+w_up
            link(u, u_up, w, level[u] + u_up - level[w] == 1)
    leaf = 0
    for i in range(triples):
        v = f"t{i}"
        for raised in (True, False):
            for _ in range(free[v][raised]):
                name = f"l{leaf}"
                leaf += 1
                vertices[name] = B
                e = f"e{len(ends)}"
                ends.append((v, name))
                up[HalfEdge(e, 0)] = raised
    return _finish(rng, vertices, ends, 0, 0, up)


# -- census -----------------------------------------------------------------

CENSUS_COLUMNS = ("instance_id", "gradable", "db_count",
                  "periodic_closed", "periodic_bounded", "infinite_closed", "infinite_bounded")


@dataclass(frozen=True)
class CensusRow:
    instance_id: int
    gradable: bool
    db_count: int
    realizable: tuple[bool, bool, bool, bool]
    oracle_agrees: bool | None = None

    def csv_fields(self) -> list[str]:
        flag = lambda b: "true" if b else "false"  # noqa: E731
        return [str(self.instance_id), flag(self.gradable), str(self.db_count)] + [flag(b) for b in self.realizable]


def census_row(instance_id: int, adg: ArrowedDaisyGraph, cross_check: bool = True) -> CensusRow:
    result = grade(adg)
    gradable = not isinstance(result, NotGradable)
    agrees = None
    if cross_check:
        expected = oracle_gradable(adg)
        if isinstance(expected, NotGradable):
            agrees = not gradable
        else:
            agrees = gradable and expected.grades == result.grades and expected.bases == result.bases
    verdicts = tuple(decide_realizable(adg, m).realizable for m in ManifoldClass)
    return CensusRow(instance_id, gradable, len(adg.base.db_vertices()), verdicts, agrees)


def _census_shape(job: tuple[EnumerationSpec, Shape, int, bool]) -> list[CensusRow]:
    spec, shape, offset, cross_check = job
    return [census_row(offset + k, adg, cross_check) for k, adg in enumerate(enumerate_shape(shape, spec))]


def run_census(spec: EnumerationSpec, cross_check: bool = True, workers: int = 1) -> Iterator[CensusRow]:
    """Rows in enumeration order; identical for any number of workers."""
    jobs = []
    offset = 0
    for shape in iter_shapes(spec):
        jobs.append((spec, shape, offset, cross_check))
        offset += shape_instance_count(shape, spec)
    if workers <= 1:
        for job in jobs:
            yield from _census_shape(job)
        return
    import multiprocessing

    with multiprocessing.Pool(workers) as pool:
        for rows in pool.imap(_census_shape, jobs):
            yield from rows


def write_census_csv(rows: Iterable[CensusRow], out: io.TextIOBase) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CENSUS_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_fields())
