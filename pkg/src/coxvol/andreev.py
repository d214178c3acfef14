"""The five admissibility conditions for non-obtuse edge labelings.

All angle-sum comparisons are done in exact rational arithmetic on the
fractions alpha/pi = 1/n, so compact/ideal boundaries are decided
without any floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .circuits import enumerate_circuits
from .poly_model import AbstractPolyhedron, Edge, LabeledPolyhedron

STRICT_COMPACT = "strict-compact"
ALLOW_IDEAL = "allow-ideal"
REGIMES = (STRICT_COMPACT, ALLOW_IDEAL)

COMPACT = "compact"
IDEAL = "ideal"
INADMISSIBLE = "inadmissible"

FACE_COUNT_TOO_SMALL = "FaceCountTooSmall"


def angle_of(label: int) -> float:
    """Dihedral angle pi/n for an integer edge label n >= 2."""
    if label < 2:
        raise ValueError(f"label must be >= 2, got {label}")
    return math.pi / label


def _unit(label: int) -> Fraction:
    return Fraction(1, label)


def vertex_type(lp: LabeledPolyhedron, v: int) -> str:
    """Classify a vertex from the exact sum of its incident angles.

    A d-valent vertex is compact if the sum exceeds (d-2)*pi, ideal at
    exact equality, inadmissible below.  Valence 4 is only allowed for
    declared ideal candidates, and then all four labels must be 2 (the
    only 4-valent configuration supported).
    """
    p = lp.base
    edges = p.vertex_edges[v]
    d = len(edges)
    if d not in (3, 4):
        raise ValueError(f"vertex {v} has valence {d}, expected 3 or 4")
    if d == 4:
        if v not in p.ideal_candidates:
            raise ValueError(f"vertex {v} is 4-valent but not an ideal candidate")
        if any(lp.labels[e] != 2 for e in edges):
            return INADMISSIBLE
    s = sum((_unit(lp.labels[e]) for e in edges), Fraction(0))
    bound = Fraction(d - 2)  # in units of pi
    if s > bound:
        return COMPACT
    if s == bound:
        return IDEAL
    return INADMISSIBLE


@dataclass(frozen=True)
class ConditionResult:
    condition: int
    passed: bool
    informational: bool
    witnesses: tuple  # (object, Fraction angle sum in units of pi) pairs
    note: str = ""


@dataclass(frozen=True)
class AndreevReport:
    outcome: str  # realizable-compact | realizable-with-ideal-vertices | rejected
    regime: str
    conditions: tuple[ConditionResult, ...]
    vertex_types: dict[int, str]
    reason: str = ""

    @property
    def realizable(self) -> bool:
        return self.outcome != "rejected"


def check(lp: LabeledPolyhedron, regime: str = STRICT_COMPACT) -> AndreevReport:
    """Evaluate the five admissibility conditions.

    Condition 5 (quadrilateral faces) is only decisive for five-faced
    polyhedra; with more faces it is still evaluated but reported as
    informational and never causes rejection.  Fewer than five faces is
    an immediate rejection (FaceCountTooSmall).
    """
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    p = lp.base
    F = len(p.faces)
    vtypes = {v: vertex_type(lp, v) for v in p.vertices}
    if F <= 4:
        return AndreevReport(
            outcome="rejected", regime=regime, conditions=(),
            vertex_types=vtypes, reason=FACE_COUNT_TOO_SMALL)

    conditions: list[ConditionResult] = []
    rejected = False
    reason = ""

    # 1: all angles positive -- automatic for integer labels >= 2.
    conditions.append(ConditionResult(1, True, False, (),
                                      note="automatic: labels >= 2 give 0 < angle <= pi/2"))

    # 2: vertex angle sums.
    bad = []
    ideal_vs = []
    for v in sorted(vtypes):
        t = vtypes[v]
        s = sum((_unit(lp.labels[e]) for e in p.vertex_edges[v]), Fraction(0))
        if t == INADMISSIBLE:
            bad.append((v, s))
        elif t == IDEAL:
            ideal_vs.append((v, s))
    c2_fail = list(bad)
    if regime == STRICT_COMPACT:
        c2_fail += ideal_vs
    conditions.append(ConditionResult(2, not c2_fail, False, tuple(c2_fail)))
    if c2_fail:
        rejected = True
        reason = reason or "condition 2"

    # 3: prismatic 3-circuit sums strictly below pi.
    tri = [c for c in enumerate_circuits(p, 3) if c.prismatic]
    fails3 = []
    for c in tri:
        s = sum((_unit(lp.labels[e]) for e in c.crossed_edges), Fraction(0))
        if not s < 1:
            fails3.append((c, s))
    note3 = "vacuous: no prismatic 3-circuits" if not tri else ""
    conditions.append(ConditionResult(3, not fails3, False, tuple(fails3), note=note3))
    if fails3:
        rejected = True
        reason = reason or "condition 3"

    # 4: prismatic 4-circuit sums strictly below 2 pi.
    quad = [c for c in enumerate_circuits(p, 4) if c.prismatic]
    fails4 = []
    for c in quad:
        s = sum((_unit(lp.labels[e]) for e in c.crossed_edges), Fraction(0))
        if not s < 2:
            fails4.append((c, s))
    note4 = "vacuous: no prismatic 4-circuits" if not quad else ""
    conditions.append(ConditionResult(4, not fails4, False, tuple(fails4), note=note4))
    if fails4:
        rejected = True
        reason = reason or "condition 4"

    # 5: quadrilateral faces.  Decisive only when F == 5.
    informational = F > 5
    fails5 = []
    for fid, sums in _quad_face_sums(lp):
        for branch, s in enumerate(sums):
            if not s < 3:
                fails5.append((fid, branch, s))
    conditions.append(ConditionResult(5, not fails5, informational, tuple(fails5)))
    if fails5 and not informational:
        rejected = True
        reason = reason or "condition 5"

    if rejected:
        outcome = "rejected"
    elif any(t == IDEAL for t in vtypes.values()):
        outcome = "realizable-with-ideal-vertices"
    else:
        outcome = "realizable-compact"
    return AndreevReport(outcome=outcome, regime=regime,
                         conditions=tuple(conditions),
                         vertex_types=vtypes, reason=reason)


def _quad_face_sums(lp: LabeledPolyhedron):
    """For each quadrilateral face, the two branch sums of condition 5.

    The branches are (alpha1+alpha3) and (alpha2+alpha4), each plus the
    four angles of the edges entering the face's vertices.  Vertices of
    valence other than 3 (a declared ideal apex) have no single entering
    edge; such faces are skipped.
    """
    p = lp.base
    for fid, cyc in enumerate(p.faces):
        if len(cyc) != 4:
            continue
        if any(p.valence(v) != 3 for v in cyc):
            continue
        from .poly_model import edge_key
        boundary = [edge_key(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]
        entering = []
        for i in range(4):
            v = cyc[i]
            others = [e for e in p.vertex_edges[v] if e not in boundary]
            entering.append(others[0])
        ent_sum = sum((_unit(lp.labels[e]) for e in entering), Fraction(0))
        s13 = _unit(lp.labels[boundary[0]]) + _unit(lp.labels[boundary[2]]) + ent_sum
        s24 = _unit(lp.labels[boundary[1]]) + _unit(lp.labels[boundary[3]]) + ent_sum
        yield fid, (s13, s24)
