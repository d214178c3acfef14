"""Labeling censuses on a fixed abstract polyhedron.

Covers three searches: the general orbit census of admissible labelings
up to a label bound, the cube-specific placement search for exactly
three 3-labels, and the ideal-apex pyramid table with its comparison
against the published row list.  Candidate screening is vectorized with
integer angle units (a common denominator of all 1/n), so every
comparison stays exact; only survivors are re-checked with the full
rational-arithmetic checker.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from . import andreev as _andreev
from .circuits import enumerate_circuits
from .haken import HakenVerdict, classify
from .poly_model import (AbstractPolyhedron, Edge, LabeledPolyhedron,
                         apply_automorphism_to_edges, automorphisms, edge_key,
                         validate)

DEFAULT_BUDGET = 4_000_000


class CensusBudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class CensusRow:
    labels: tuple[int, ...]  # aligned with p.edges order, orbit-canonical
    outcome: str
    vertex_summary: dict[str, int]
    haken: str
    volume: float | None = None


def _edge_perms(p: AbstractPolyhedron) -> list[tuple[int, ...]]:
    """Automorphism group as permutations of the sorted edge list."""
    edges = p.edges
    idx = {e: i for i, e in enumerate(edges)}
    perms = []
    for vmap in automorphisms(p):
        emap = apply_automorphism_to_edges(p, vmap)
        perms.append(tuple(idx[emap[e]] for e in edges))
    return perms


def _admissible_mask(p: AbstractPolyhedron, labels: np.ndarray, max_label: int,
                     regime: str) -> np.ndarray:
    """Exact vectorized admissibility over an (N, E) label array."""
    U = math.lcm(*range(2, max_label + 1))
    units = (U // labels).astype(np.int64)  # angle in units of pi/U
    edges = p.edges
    eidx = {e: i for i, e in enumerate(edges)}
    ok = np.ones(len(labels), dtype=bool)

    allow_ideal = regime == _andreev.ALLOW_IDEAL
    for v in p.vertices:
        d = p.valence(v)
        cols = [eidx[e] for e in p.vertex_edges[v]]
        s = units[:, cols].sum(axis=1)
        bound = (d - 2) * U
        if d == 4:
            # declared apex: all labels 2 and exactly ideal
            ok &= (labels[:, cols] == 2).all(axis=1)
            ok &= np.full(len(labels), allow_ideal)
        elif allow_ideal:
            ok &= s >= bound
        else:
            ok &= s > bound
    for k, bound_mult in ((3, 1), (4, 2)):
        for c in enumerate_circuits(p, k):
            if not c.prismatic:
                continue
            cols = [eidx[e] for e in c.crossed_edges]
            ok &= units[:, cols].sum(axis=1) < bound_mult * U
    if len(p.faces) == 5:
        for fid, cyc in enumerate(p.faces):
            if len(cyc) != 4 or any(p.valence(v) != 3 for v in cyc):
                continue
            boundary = [edge_key(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]
            entering = [next(e for e in p.vertex_edges[v] if e not in boundary)
                        for v in cyc]
            ent = units[:, [eidx[e] for e in entering]].sum(axis=1)
            for a, b in ((0, 2), (1, 3)):
                s = units[:, eidx[boundary[a]]] + units[:, eidx[boundary[b]]] + ent
                ok &= s < 3 * U
    return ok


def enumerate_labelings(p: AbstractPolyhedron, max_label: int,
                        regime: str = _andreev.STRICT_COMPACT,
                        budget: int = DEFAULT_BUDGET,
                        with_volumes: bool = False) -> list[CensusRow]:
    """One census row per automorphism orbit of admissible labelings."""
    if max_label < 2:
        raise ValueError("max_label must be >= 2")
    if not validate(p).passed:
        raise ValueError("polyhedron fails validation")
    E = len(p.edges)
    nchoices = max_label - 1
    total = nchoices ** E
    if total > budget:
        raise CensusBudgetExceeded(
            f"{total} candidate labelings exceed the budget of {budget}")
    # mixed-radix expansion of all candidates
    ids = np.arange(total, dtype=np.int64)
    labels = np.empty((total, E), dtype=np.int64)
    for j in range(E):
        labels[:, E - 1 - j] = (ids // (nchoices ** j)) % nchoices + 2
    ok = _admissible_mask(p, labels, max_label, regime)
    passing = labels[ok]

    perms = _edge_perms(p)
    rows: list[CensusRow] = []
    haken = classify(p)
    seen: set[tuple[int, ...]] = set()
    for row in map(tuple, passing.tolist()):
        canon = min(tuple(row[i] for i in perm) for perm in perms)
        if canon in seen:
            continue
        seen.add(canon)
        lp = LabeledPolyhedron(base=p, labels=dict(zip(p.edges, canon)))
        rep = _andreev.check(lp, regime)
        assert rep.realizable, "vectorized screen disagrees with exact checker"
        summary: dict[str, int] = {}
        for t in rep.vertex_types.values():
            summary[t] = summary.get(t, 0) + 1
        vol = None
        if with_volumes:
            from .volume import schlafli_volume
            vol = schlafli_volume(lp).volume
        rows.append(CensusRow(labels=canon, outcome=rep.outcome,
                              vertex_summary=summary, haken=haken.verdict,
                              volume=vol))
    rows.sort(key=lambda r: r.labels)
    return rows


# ---------------------------------------------------------------------------
# cube: all placements of exactly three 3-labels


@dataclass(frozen=True)
class ThreeThreesReport:
    total_candidates: int
    andreev_passing: tuple[tuple[Edge, ...], ...]  # admissible placements
    selected: tuple[tuple[Edge, ...], ...]  # admissible and pairwise non-adjacent
    orbits: tuple[tuple[tuple[Edge, ...], ...], ...]  # orbits of the selected set
    stabilizer_order: int
    one_per_circuit: tuple[tuple[Edge, ...], ...]  # non-adjacent, one 3 per band


def cube_three_threes(cube: AbstractPolyhedron) -> ThreeThreesReport:
    """Examine all C(E,3) placements of exactly three 3-labels on the cube.

    Admissibility alone does not force the 3s apart: a placement with
    two adjacent 3s still satisfies every vertex and circuit condition
    (it just realizes a different, larger-volume cube).  The interesting
    set is the admissible placements with pairwise non-adjacent 3s;
    those are returned as ``selected`` together with their orbit
    structure, and cross-checked against the independent description
    "non-adjacent with exactly one 3 on each prismatic 4-circuit".
    """
    edges = cube.edges
    quad_circuits = [c for c in enumerate_circuits(cube, 4) if c.prismatic]

    def adjacent(e1: Edge, e2: Edge) -> bool:
        return bool(set(e1) & set(e2))

    passing: list[tuple[Edge, ...]] = []
    for triple in combinations(edges, 3):
        labels = {e: 2 for e in edges}
        for e in triple:
            labels[e] = 3
        lp = LabeledPolyhedron(base=cube, labels=labels)
        if _andreev.check(lp, _andreev.STRICT_COMPACT).realizable:
            passing.append(triple)
    selected = tuple(t for t in passing
                     if all(not adjacent(a, b) for a, b in combinations(t, 2)))
    one_per = tuple(
        t for t in combinations(edges, 3)
        if all(not adjacent(a, b) for a, b in combinations(t, 2))
        and all(sum(1 for e in t if e in c.crossed_edges) == 1 for c in quad_circuits))

    group = [apply_automorphism_to_edges(cube, m) for m in automorphisms(cube)]
    remaining = set(selected)
    orbits: list[tuple[tuple[Edge, ...], ...]] = []
    while remaining:
        rep = min(remaining)
        orbit = {tuple(sorted(g[e] for e in rep)) for g in group}
        orbits.append(tuple(sorted(orbit)))
        remaining -= orbit
    stab = len(group) // len(orbits[0]) if orbits else 0
    return ThreeThreesReport(
        total_candidates=math.comb(len(edges), 3),
        andreev_passing=tuple(sorted(passing)),
        selected=selected,
        orbits=tuple(orbits),
        stabilizer_order=stab,
        one_per_circuit=one_per)


# ---------------------------------------------------------------------------
# pyramid table


AS_LISTED_CYCLIC = "as-listed-cyclic"
ANY_ARRANGEMENT = "any-arrangement"

# Published base-edge rows (e1..e4); tuples expand the parenthesized choices.
PUBLISHED_PYRAMID_ROWS: tuple[tuple[int, int, int, int], ...] = tuple(
    sorted({
        *((2, 2, 3, m) for m in (3, 4, 5, 6)),
        (2, 2, 4, 4),
        *((2, 3, w, 3) for w in (3, 4, 5)),
        *((3, w, 3, 3) for w in (3, 4, 5)),
        *((3, w, 3, w2) for w in (3, 4, 5) for w2 in (3, 4, 5)),
    })
)


@dataclass(frozen=True)
class PyramidRowResult:
    row: tuple[int, int, int, int]
    admissible: bool
    reasons: tuple[str, ...]  # per-vertex / per-condition exact findings


@dataclass(frozen=True)
class PyramidTableDiff:
    convention: str
    regime: str
    published_rows: tuple[PyramidRowResult, ...]
    extra_rows: tuple[tuple[int, int, int, int], ...]  # admissible, not listed

    @property
    def all_published_rows_admissible(self) -> bool:
        return all(r.admissible for r in self.published_rows)


def _pyramid_base_analysis(seq: tuple[int, int, int, int]) -> tuple[bool, bool, list[str]]:
    """Exact admissibility of one cyclic base-label sequence.

    Returns (strictly compact, admissible with ideal base vertices,
    reasons).  Apex edges are right angles and the apex itself is ideal
    by construction, so only base-vertex sums and the quadrilateral-face
    condition are in play.
    """
    reasons: list[str] = []
    strict = True
    relaxed = True
    for i in range(4):
        a, b = seq[i], seq[(i + 1) % 4]
        s = Fraction(1, a) + Fraction(1, b) + Fraction(1, 2)
        if s > 1:
            kind = "compact"
        elif s == 1:
            kind = "ideal"
            strict = False
        else:
            kind = "inadmissible"
            strict = relaxed = False
        reasons.append(
            f"base vertex between labels {a},{b}: sum {s}*pi -> {kind}")
    for i in (0, 1):
        a, b = seq[i], seq[i + 2]
        s = Fraction(1, a) + Fraction(1, b) + 2  # + four apex right angles
        if s < 3:
            reasons.append(
                f"quad-face pair ({a},{b}): {s}*pi < 3*pi ok")
        else:
            reasons.append(
                f"quad-face pair ({a},{b}): {s}*pi not < 3*pi -> rejected")
            strict = relaxed = False
    return strict, relaxed, reasons


def _necklace_canon(seq: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    for s in (seq, seq[::-1]):
        for i in range(4):
            rot = s[i:] + s[:i]
            if best is None or rot < best:
                best = rot
    return best


def pyramid_census(max_label: int,
                   convention: str = AS_LISTED_CYCLIC,
                   regime: str = _andreev.ALLOW_IDEAL) -> PyramidTableDiff:
    """Compare the enumerated admissible pyramid labelings with the
    published row list under the chosen reading of the table."""
    if max_label < 3:
        raise ValueError("max_label must be >= 3")
    if convention not in (AS_LISTED_CYCLIC, ANY_ARRANGEMENT):
        raise ValueError(f"unknown convention {convention!r}")
    strict_regime = regime == _andreev.STRICT_COMPACT

    def admissible_seq(seq) -> bool:
        strict, relaxed, _ = _pyramid_base_analysis(seq)
        return strict if strict_regime else relaxed

    def admissible(row) -> tuple[bool, tuple[str, ...]]:
        if convention == AS_LISTED_CYCLIC:
            strict, relaxed, reasons = _pyramid_base_analysis(row)
            return (strict if strict_regime else relaxed), tuple(reasons)
        # any-arrangement: the multiset passes if some cyclic order does
        arrangements = {_necklace_canon(perm) for perm in _all_orders(row)}
        good = [a for a in sorted(arrangements) if admissible_seq(a)]
        reasons = []
        for a in sorted(arrangements):
            _, rel, rs = _pyramid_base_analysis(a)
            tag = "admissible" if admissible_seq(a) else "rejected"
            reasons.append(f"arrangement {a}: {tag}; " + "; ".join(rs))
        return bool(good), tuple(reasons)

    published = tuple(
        PyramidRowResult(row=row, admissible=adm, reasons=rs)
        for row in PUBLISHED_PYRAMID_ROWS
        for adm, rs in [admissible(row)]
    )

    # our full enumeration, canonicalized per the convention
    if convention == AS_LISTED_CYCLIC:
        listed = {_necklace_canon(r.row) for r in published}
        ours = {
            _necklace_canon(seq)
            for seq in product(range(2, max_label + 1), repeat=4)
            if admissible_seq(seq)
        }
    else:
        listed = {tuple(sorted(r.row)) for r in published}
        ours = set()
        for seq in product(range(2, max_label + 1), repeat=4):
            if admissible_seq(seq):
                ours.add(tuple(sorted(seq)))

    extras = tuple(sorted(o for o in ours if o not in _closure(listed, convention)))
    return PyramidTableDiff(convention=convention, regime=regime,
                            published_rows=published, extra_rows=extras)


def _all_orders(row):
    from itertools import permutations
    return set(permutations(row))


def _closure(listed, convention):
    if convention == ANY_ARRANGEMENT:
        return listed
    out = set()
    for row in listed:
        out.add(_necklace_canon(row))
    return out


def format_pyramid_diff(diff: PyramidTableDiff) -> str:
    lines = [
        f"pyramid table diff (convention={diff.convention}, regime={diff.regime})",
        f"published rows admissible: "
        f"{sum(r.admissible for r in diff.published_rows)}/{len(diff.published_rows)}",
    ]
    for r in diff.published_rows:
        status = "MATCH" if r.admissible else "MISSING"
        lines.append(f"  {status} {r.row}")
        for reason in r.reasons:
            lines.append(f"      {reason}")
    if diff.extra_rows:
        lines.append(f"extra admissible rows not in the table: {len(diff.extra_rows)}")
        for row in diff.extra_rows:
            lines.append(f"  EXTRA {row}")
    else:
        lines.append("no extra admissible rows")
    return "\n".join(lines)
