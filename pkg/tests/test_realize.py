import pytest
from hypothesis import given, strategies as st

from daisygraph import (
    DaisyGraph,
    ManifoldClass,
    NotGradable,
    OrderedDaisyGraph,
    decide_realizable,
    grade,
)
from daisygraph.oracle import oracle_gradable, random_instance
from daisygraph.realize import HAS_DB_VALUES, NOT_GRADABLE, UNCONDITIONAL

from builders import branch_to_db, circles_only, conflict_pair, star

PC, PB, IC, IB = (ManifoldClass.PERIODIC_CLOSED, ManifoldClass.PERIODIC_BOUNDED,
                  ManifoldClass.INFINITE_CLOSED, ManifoldClass.INFINITE_BOUNDED)


def table(gradable: bool, has_db: bool) -> dict[ManifoldClass, bool]:
    return {PC: gradable and not has_db, PB: gradable, IC: not has_db, IB: True}


def verdicts(g):
    return {m: decide_realizable(g, m).realizable for m in ManifoldClass}


def test_star_everywhere():
    assert verdicts(star()) == {PC: True, PB: True, IC: True, IB: True}


def test_db_only_bounded():
    v = decide_realizable(branch_to_db(), PC)
    assert not v.realizable
    assert v.reasons == (HAS_DB_VALUES,)
    assert v.db_vertices == ("d",)
    assert verdicts(branch_to_db()) == {PC: False, PB: True, IC: False, IB: True}


def test_conflict_only_infinite():
    v = decide_realizable(conflict_pair(), PB)
    assert v.reasons == (NOT_GRADABLE,)
    assert isinstance(v.grading_evidence, NotGradable)
    assert verdicts(conflict_pair()) == {PC: False, PB: False, IC: True, IB: True}


def test_unconditional_reason():
    assert decide_realizable(conflict_pair(), IB).reasons == (UNCONDITIONAL,)


def test_circles_only():
    assert all(verdicts(circles_only(4)).values())


def test_manifold_class_fields():
    assert ManifoldClass.of("periodic", "bounded") is PB
    assert (IC.homology, IC.boundary) == ("infinite", "closed")


def test_ordering_ignored():
    adg = star()
    prefs = sorted(adg.arrows.values())
    odg = OrderedDaisyGraph(adg, {"v": tuple(prefs)})
    assert verdicts(odg) == verdicts(adg)


@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(0, 2), st.booleans())
def test_table_and_monotonicity(seed, triples, db, gradable):
    g = random_instance(seed, triples=triples, db=db, gradable=gradable)
    got = verdicts(g)
    assert got == table(not isinstance(grade(g), NotGradable), bool(g.base.db_vertices()))
    assert not got[PC] or got[IC]
    assert not got[PB] or got[IB]


def test_table_on_small_instances_with_oracle_bits():
    for seed in range(200):
        g = random_instance(seed, triples=1, db=seed % 2)
        gradable = not isinstance(oracle_gradable(g), NotGradable)
        assert verdicts(g) == table(gradable, bool(g.base.db_vertices()))


def test_plain_dg_not_accepted():
    with pytest.raises(TypeError, match="arrowed"):
        decide_realizable(DaisyGraph({}, {}, {}, 0), PC)
