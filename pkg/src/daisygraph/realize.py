"""Realizability of arrowed daisy graphs in oriented 3-manifolds.

Only two facts about the ambient manifold matter: whether its first integral
homology is periodic (every element of finite order) and whether it has
boundary.  Closed manifolds are assumed compact.

=================  ===================================
class              realizable iff
=================  ===================================
periodic, closed   gradable and no DB vertices
periodic, bounded  gradable
infinite, closed   no DB vertices
infinite, bounded  always
=================  ===================================

Ordering data on an ODG does not change the verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .grading import NotGradable, grade
from .model import ArrowedDaisyGraph, OrderedDaisyGraph, as_adg


class ManifoldClass(enum.Enum):
    PERIODIC_CLOSED = "periodic-closed"
    PERIODIC_BOUNDED = "periodic-bounded"
    INFINITE_CLOSED = "infinite-closed"
    INFINITE_BOUNDED = "infinite-bounded"

    @property
    def homology(self) -> str:
        return self.value.split("-")[0]

    @property
    def boundary(self) -> str:
        return self.value.split("-")[1]

    @classmethod
    def of(cls, homology: str, boundary: str) -> ManifoldClass:
        return cls(f"{homology}-{boundary}")


NOT_GRADABLE = "not-gradable"
HAS_DB_VALUES = "has-DB-values"
UNCONDITIONAL = "unconditional"


@dataclass(frozen=True)
class RealizabilityVerdict:
    realizable: bool
    manifold: ManifoldClass
    reasons: tuple[str, ...] = ()
    grading_evidence: NotGradable | None = None
    db_vertices: tuple[str, ...] = ()


def decide_realizable(g: ArrowedDaisyGraph | OrderedDaisyGraph, m: ManifoldClass) -> RealizabilityVerdict:
    adg = as_adg(g)
    if m is ManifoldClass.INFINITE_BOUNDED:
        return RealizabilityVerdict(True, m, (UNCONDITIONAL,))

    reasons = []
    evidence = None
    if m.homology == "periodic":
        result = grade(adg)
        if isinstance(result, NotGradable):
            reasons.append(NOT_GRADABLE)
            evidence = result
    db = ()
    if m.boundary == "closed":
        db = tuple(adg.base.db_vertices())
        if db:
            reasons.append(HAS_DB_VALUES)
    return RealizabilityVerdict(not reasons, m, tuple(reasons), evidence, db)
