import random

import pytest
from hypothesis import given, settings, strategies as st

from daisygraph import (
    EdgePath,
    GradeStats,
    Grading,
    NotGradable,
    PathError,
    PreferenceError,
    delta_g,
    grade,
    grade_obstructing_loops,
    path_grading_difference,
    validate_grading,
)
from daisygraph.grading import VISITS_PER_EDGE
from daisygraph.oracle import EnumerationSpec, enumerate_instances, oracle_gradable, random_instance

from builders import circles_only, conflict_pair, consecutive_loop, split_loop, star

seeds = st.integers(0, 10**6)


def random_path(g, rng, length):
    edges = sorted(g.edges)
    e = rng.choice(edges)
    items = [e]
    for _ in range(length):
        ends = [v for v in g.edges[e] if g.vertices[v].value == "triple"]
        if not ends:
            break
        v = rng.choice(ends)
        e = rng.choice(g.base.incident[v]).edge
        items += [v, e]
    return EdgePath.of(*items)


# -- obstructing loops ------------------------------------------------------


def test_consecutive_loop_obstructs():
    assert grade_obstructing_loops(consecutive_loop()) == ["L"]


def test_loop_with_both_ends_preferred_does_not_obstruct():
    assert grade_obstructing_loops(split_loop("L.1")) == []


def test_loop_split_with_mixed_ends_obstructs():
    assert grade_obstructing_loops(split_loop("e2.0")) == ["L"]


def test_no_loops():
    assert grade_obstructing_loops(star()) == []


# -- delta_g and paths ------------------------------------------------------


def test_delta_g_examples():
    g = star()
    assert delta_g(g, "e2", "v", "e1") == 1
    assert delta_g(g, "e1", "v", "e1") == 0
    assert delta_g(g, "e1", "v", "e2") == -1
    assert delta_g(g, "e1", "v", "e3") == 0


def test_delta_g_errors():
    with pytest.raises(PreferenceError, match="undefined preference"):
        delta_g(consecutive_loop(), "e1", "v", "e2")
    with pytest.raises(PathError):
        delta_g(star(), "e1", "b1", "e1")
    with pytest.raises(PathError):
        delta_g(conflict_pair(), "a1", "w", "r")


def test_path_examples():
    g = star()
    assert path_grading_difference(g, EdgePath.of("e3")) == 0
    assert path_grading_difference(g, EdgePath.of("e2", "v", "e1")) == 1
    with pytest.raises(PathError):
        path_grading_difference(g, EdgePath(("e1", "e2"), ()))
    with pytest.raises(PathError):
        path_grading_difference(g, EdgePath.of("e1", "b1", "e2"))


@settings(max_examples=50)
@given(seeds)
def test_path_difference_matches_oracle_grading(seed):
    g = random_instance(seed, triples=2, gradable=True)
    if len(g.edges) > 12:
        g = random_instance(seed, triples=1, gradable=True)
    truth = oracle_gradable(g)
    assert isinstance(truth, Grading)
    rng = random.Random(seed)
    for _ in range(5):
        p = random_path(g, rng, rng.randrange(6))
        assert path_grading_difference(g, p) == truth.grades[p.edges[-1]] - truth.grades[p.edges[0]]


# -- grade ------------------------------------------------------------------


def test_star_normalized():
    result = grade(star())
    assert result == Grading({"e1": 0, "e2": -1, "e3": 0, "e4": -1, "e5": 0, "e6": -1}, {"v": -1})


def test_circles_only_gradable():
    assert grade(circles_only()) == Grading({}, {})


def test_conflict_pair_not_gradable():
    result = grade(conflict_pair())
    assert isinstance(result, NotGradable)
    assert result.reason == "conflict"
    assert result.edge in ("r", "s")
    assert result.assigned != result.required
    assert isinstance(oracle_gradable(conflict_pair()), NotGradable)


def test_obstructing_loop_report():
    result = grade(consecutive_loop())
    assert result == NotGradable("obstructing-loop", loops=("L",))


def test_isolated_edge_graded_zero():
    from builders import branch_to_db
    assert grade(branch_to_db()) == Grading({"e": 0}, {})


def test_validate_grading_examples():
    g = star()
    gr = grade(g)
    assert validate_grading(g, gr).ok
    assert validate_grading(g, gr.shifted(7)).ok
    bumped = Grading({**gr.grades, "e3": gr.grades["e3"] + 1}, gr.bases)
    check = validate_grading(g, bumped)
    assert not check.ok
    assert all(v.subject == ("vertex", "v") for v in check.violations)


def test_validate_grading_coverage():
    g = star()
    gr = grade(g)
    missing = Grading({k: x for k, x in gr.grades.items() if k != "e1"}, gr.bases)
    assert "grade-missing" in [v.code for v in validate_grading(g, missing).violations]
    assert "base-missing" in [v.code for v in validate_grading(g, Grading(gr.grades, {})).violations]


# -- properties -------------------------------------------------------------


def components(g):
    parent = {e: e for e in g.edges}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x
    for v, hs in g.base.incident.items():
        for h in hs[1:]:
            parent[find(h.edge)] = find(hs[0].edge)
    out = {}
    for e in g.edges:
        out.setdefault(find(e), set()).add(e)
    return list(out.values())


def same_up_to_component_shift(g, a, b):
    for comp in components(g):
        shifts = {a.grades[e] - b.grades[e] for e in comp}
        if len(shifts) != 1:
            return False
    return True


def test_one_vertex_census_matches_oracle():
    for g in enumerate_instances(EnumerationSpec(1)):
        mine, truth = grade(g), oracle_gradable(g)
        assert isinstance(mine, NotGradable) == isinstance(truth, NotGradable)
        if isinstance(mine, Grading):
            assert mine == truth
            assert validate_grading(g, mine).ok


@given(seeds, st.integers(1, 8))
def test_round_trip_validates(seed, triples):
    g = random_instance(seed, triples=triples, gradable=seed % 2 == 0)
    result = grade(g)
    if isinstance(result, Grading):
        assert validate_grading(g, result).ok


@given(seeds, st.integers(1, 12))
def test_forests_always_gradable(seed, triples):
    g = random_instance(seed, triples=triples, forest=True)
    assert isinstance(grade(g), Grading)


@settings(max_examples=60)
@given(seeds)
def test_unique_up_to_shift(seed):
    g = random_instance(seed, triples=2, gradable=True, link_probability=1.0)
    if len(g.edges) > 12:
        return
    a, b = grade(g), oracle_gradable(g)
    assert same_up_to_component_shift(g, a, b)


@given(seeds, st.integers(1, 6), st.booleans())
def test_arrow_reversal(seed, triples, gradable):
    g = random_instance(seed, triples=triples, gradable=gradable)
    flipped = g.flipped()
    result = grade(g)
    if isinstance(result, Grading):
        negated = Grading({e: -x for e, x in result.grades.items()},
                          {v: -a - 1 for v, a in result.bases.items()})
        assert validate_grading(flipped, negated).ok
    assert isinstance(grade(flipped), Grading) == isinstance(result, Grading)


@given(seeds, st.integers(1, 30))
def test_work_bound(seed, triples):
    g = random_instance(seed, triples=triples, gradable=True)
    stats = GradeStats()
    grade(g, stats)
    assert stats.edges == len(g.edges)
    assert stats.half_edge_visits <= VISITS_PER_EDGE * len(g.edges)
