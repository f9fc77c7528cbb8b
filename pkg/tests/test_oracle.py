import itertools
import math

import pytest
from hypothesis import given, strategies as st

from daisygraph import DaisyGraph, ArrowedDaisyGraph, Grading, NotGradable, grade, validate
from daisygraph.oracle import (
    ORACLE_MAX_EDGES,
    EnumerationSpec,
    OracleRefusal,
    enumerate_instances,
    iter_shapes,
    oracle_gradable,
    perfect_matchings,
    random_chain,
    random_instance,
    run_census,
    shape_instance_count,
    write_census_csv,
)

from builders import consecutive_loop, star

ONE_VERTEX = EnumerationSpec(1, min_triple_vertices=1, allow_loops=False)


def pairings_of(n: int) -> int:
    # (n - 1)!! by the closed form n! / (2^(n/2) (n/2)!)
    return math.factorial(n) // (2 ** (n // 2) * math.factorial(n // 2))


def test_star_matches_grade():
    assert oracle_gradable(star()) == grade(star())


def test_loop_not_gradable():
    assert isinstance(oracle_gradable(consecutive_loop()), NotGradable)


def test_empty_graph():
    assert oracle_gradable(ArrowedDaisyGraph(DaisyGraph({}, {}, {}, 0), {})) == Grading({}, {})


def test_refuses_large_instances():
    g = random_instance(1, triples=5)
    assert len(g.edges) > ORACLE_MAX_EDGES
    with pytest.raises(OracleRefusal):
        oracle_gradable(g)


def test_one_vertex_census_count():
    instances = list(enumerate_instances(ONE_VERTEX))
    assert len(instances) == 120 == pairings_of(6) * 2 ** 3
    assert all(validate(g).ok for g in instances)
    assert all(isinstance(oracle_gradable(g), Grading) for g in instances)
    keys = {(tuple(sorted(g.pairing.items())), tuple(sorted(g.arrows.items()))) for g in instances}
    assert len(keys) == 120


def test_perfect_matchings_count():
    for n in (0, 2, 4, 6, 8):
        ms = list(perfect_matchings(list(range(n))))
        assert len(ms) == pairings_of(n)
        assert len({frozenset(map(frozenset, m)) for m in ms}) == len(ms)


def test_zero_vertices_only_empty():
    assert [g.edges for g in enumerate_instances(EnumerationSpec(0))] == [{}]
    circles = list(enumerate_instances(EnumerationSpec(0, circle_counts=(0, 1, 2))))
    assert [g.circles for g in circles] == [0, 1, 2]


def test_enumeration_deterministic():
    spec = EnumerationSpec(1)
    a = list(itertools.islice(enumerate_instances(spec), 300))
    b = list(itertools.islice(enumerate_instances(spec), 300))
    assert a == b


def test_shape_counts_sum():
    spec = EnumerationSpec(1, db_variants=True)
    total = sum(shape_instance_count(s, spec) for s in iter_shapes(spec))
    assert total == sum(1 for _ in enumerate_instances(spec))


def test_seed_seven_twice():
    assert random_instance(7) == random_instance(7)
    assert random_instance(7, gradable=True) == random_instance(7, gradable=True)
    assert random_chain(7, 20) == random_chain(7, 20)


@given(st.integers(0, 10**6), st.integers(0, 8), st.integers(0, 3), st.integers(0, 2))
def test_random_valid(seed, triples, db, circles):
    for g in (random_instance(seed, triples=triples, db=db, circles=circles),
              random_instance(seed, triples=triples, db=db, circles=circles, forest=True),
              random_instance(seed, triples=triples, db=db, circles=circles, gradable=True)):
        assert validate(g).ok
        assert len(g.base.db_vertices()) == min(db, len(g.base.degree_one_vertices()))
        assert g.circles == circles


@given(st.integers(0, 10**6), st.integers(1, 40))
def test_generated_gradable_modes(seed, triples):
    assert isinstance(grade(random_instance(seed, triples=triples, forest=True)), Grading)
    assert isinstance(grade(random_instance(seed, triples=triples, gradable=True)), Grading)
    chain = random_chain(seed, triples)
    assert validate(chain).ok
    assert len(chain.edges) == 4 * triples + 2
    assert isinstance(grade(chain), Grading)


def test_census_rows_and_parallel_identity():
    import io
    spec = EnumerationSpec(1)
    seq = list(run_census(spec))
    par = list(run_census(spec, workers=2))
    assert seq == par
    assert [r.instance_id for r in seq] == list(range(len(seq)))
    assert all(r.oracle_agrees for r in seq)
    a, b = io.StringIO(), io.StringIO()
    write_census_csv(seq, a)
    write_census_csv(par, b)
    assert a.getvalue() == b.getvalue()
    assert a.getvalue().splitlines()[0] == ("instance_id,gradable,db_count,periodic_closed,"
                                            "periodic_bounded,infinite_closed,infinite_bounded")
