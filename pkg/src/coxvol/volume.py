"""Hyperbolic volume via Schlaefli's differential formula.

For a one-parameter family of 3-dimensional polyhedra,
-2 dV/dt = sum_e len_e(t) * dtheta_e/dt, so the volume of a target
polyhedron is recovered by integrating along an angle path from a
degenerate (zero volume) configuration.  The default path interpolates
linearly from the collapse configuration obtained by shrinking every
angle's deviation from pi/2 until an admissibility constraint becomes
an equality.

Edges whose angle is constant along the path contribute nothing and are
excluded before evaluation; this is what keeps ideal-apex families
integrable (their infinite edges all carry constant right angles).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import andreev as _andreev
from .poly_model import AbstractPolyhedron, Edge, LabeledPolyhedron, PolyhedronError
from .realization import (IdealEndpoint, NonConvergence, PathRealizer,
                          RealizationError, TIMELIKE, _System,
                          _compute_vertices, _expected_vertex_kinds, edge_length,
                          build_realization)

DEFAULT_TOL = 1e-8
DEFAULT_EPS = 1e-6
COLLAPSE_LENGTH_THRESHOLD = 0.05


class VolumeError(PolyhedronError):
    pass


class NonCollapsingStart(VolumeError):
    pass


class IdealEdge(VolumeError):
    pass


class PathRealizationFailure(VolumeError):
    def __init__(self, t: float, cause: Exception):
        self.t = t
        super().__init__(f"realization failed at path parameter t={t}: {cause}")


@dataclass(frozen=True)
class DeformationPath:
    """Piecewise-linear angle path through waypoint configurations."""

    polyhedron: AbstractPolyhedron
    times: tuple[float, ...]
    waypoints: tuple[tuple[tuple[Edge, float], ...], ...]

    def __post_init__(self):
        if len(self.times) != len(self.waypoints) or len(self.times) < 2:
            raise ValueError("need as many times as waypoints, at least two")
        if self.times[0] != 0.0 or self.times[-1] != 1.0:
            raise ValueError("path must run over t in [0, 1]")

    @staticmethod
    def from_configs(p: AbstractPolyhedron, configs, times=None) -> "DeformationPath":
        if times is None:
            times = tuple(i / (len(configs) - 1) for i in range(len(configs)))
        wps = tuple(tuple(sorted(cfg.items())) for cfg in configs)
        return DeformationPath(p, tuple(times), wps)

    def _segment(self, t: float) -> int:
        for i in range(len(self.times) - 1):
            if t < self.times[i + 1]:
                return i
        return len(self.times) - 2

    def angles_at(self, t: float) -> dict[Edge, float]:
        i = self._segment(t)
        t0, t1 = self.times[i], self.times[i + 1]
        lam = (t - t0) / (t1 - t0)
        a = dict(self.waypoints[i])
        b = dict(self.waypoints[i + 1])
        return {e: (1 - lam) * a[e] + lam * b[e] for e in a}

    def derivatives_at(self, t: float) -> dict[Edge, float]:
        i = self._segment(t)
        t0, t1 = self.times[i], self.times[i + 1]
        a = dict(self.waypoints[i])
        b = dict(self.waypoints[i + 1])
        return {e: (b[e] - a[e]) / (t1 - t0) for e in a}

    @property
    def varying_edges(self) -> tuple[Edge, ...]:
        first = dict(self.waypoints[0])
        varying = set()
        for wp in self.waypoints[1:]:
            for e, v in wp:
                if abs(v - first[e]) > 1e-15:
                    varying.add(e)
        return tuple(sorted(varying))

    @property
    def target_angles(self) -> dict[Edge, float]:
        return dict(self.waypoints[-1])


# ---------------------------------------------------------------------------
# default (linear-from-collapse) path construction


def _admissibility_constraints(p: AbstractPolyhedron):
    """Linear angle constraints (coeffs, bound, kind) with kind '<' or '>'.

    Each constraint is sum(angle_e for e in coeff edges) kind bound.
    Quadrilateral-face constraints are included only when they are
    decisive (F == 5), matching the checker.
    """
    from .circuits import enumerate_circuits

    cons = []
    for v in p.vertices:
        d = p.valence(v)
        if d == 4 and v in p.ideal_candidates:
            continue  # held at exact equality along any admissible path
        cons.append((tuple(p.vertex_edges[v]), (d - 2) * math.pi, ">"))
    for c in enumerate_circuits(p, 3):
        if c.prismatic:
            cons.append((c.crossed_edges, math.pi, "<"))
    for c in enumerate_circuits(p, 4):
        if c.prismatic:
            cons.append((c.crossed_edges, 2 * math.pi, "<"))
    if len(p.faces) == 5:
        from .poly_model import edge_key
        for fid, cyc in enumerate(p.faces):
            if len(cyc) != 4 or any(p.valence(v) != 3 for v in cyc):
                continue
            boundary = [edge_key(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]
            entering = []
            for v in cyc:
                entering.append(next(e for e in p.vertex_edges[v] if e not in boundary))
            for pair in ((boundary[0], boundary[2]), (boundary[1], boundary[3])):
                cons.append((pair + tuple(entering), 3 * math.pi, "<"))
    return cons


def collapse_fraction(p: AbstractPolyhedron, target: dict[Edge, float]) -> float:
    """Largest s in [0, 1) at which scaling every angle's deviation from
    pi/2 by s makes some admissibility constraint an equality."""
    dev = {e: target[e] - math.pi / 2 for e in target}
    s0 = 0.0
    for edges, bound, kind in _admissibility_constraints(p):
        base = len(edges) * math.pi / 2
        slope = sum(dev[e] for e in edges)
        if abs(slope) < 1e-14:
            if abs(base - bound) < 1e-12 and kind == "<":
                raise VolumeError(
                    "target sits on an admissibility boundary with no way to move off it")
            continue
        s_eq = (bound - base) / slope
        if 0.0 <= s_eq < 1.0:
            s0 = max(s0, s_eq)
    return s0


def default_path(lp_or_p, target_angles: dict[Edge, float] | None = None) -> DeformationPath:
    """Linear path from the collapse configuration to the target angles."""
    if isinstance(lp_or_p, LabeledPolyhedron):
        p = lp_or_p.base
        target = lp_or_p.angles()
    else:
        p = lp_or_p
        target = dict(target_angles)
    s0 = collapse_fraction(p, target)
    collapse = {e: math.pi / 2 + s0 * (target[e] - math.pi / 2) for e in target}
    return DeformationPath.from_configs(p, [collapse, target])


# ---------------------------------------------------------------------------
# quadrature


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


def _gl(f, a: float, b: float) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * sum(w * f(mid + half * x) for x, w in zip(_GL_NODES, _GL_WEIGHTS))


def _adaptive_gl(f, a: float, b: float, tol: float, depth: int = 0) -> tuple[float, float]:
    whole = _gl(f, a, b)
    m = 0.5 * (a + b)
    halves = _gl(f, a, m) + _gl(f, m, b)
    err = abs(whole - halves)
    if err <= tol or depth >= 30:
        return halves, err
    left, el = _adaptive_gl(f, a, m, tol / 2, depth + 1)
    right, er = _adaptive_gl(f, m, b, tol / 2, depth + 1)
    return left + right, el + er


# ---------------------------------------------------------------------------
# the Schlaefli integrator


@dataclass(frozen=True)
class VolumeResult:
    volume: float
    error_estimate: float
    nodes: int
    doubled: bool = False
    path: DeformationPath | None = None


def orb_convention(v: VolumeResult) -> VolumeResult:
    """Report twice the true volume (the doubling convention)."""
    if v.doubled:
        return v
    return VolumeResult(volume=2.0 * v.volume, error_estimate=2.0 * v.error_estimate,
                        nodes=v.nodes, doubled=True, path=v.path)


class _Integrand:
    """len-weighted angle-velocity sum along the path, with realization cache."""

    def __init__(self, p: AbstractPolyhedron, path: DeformationPath):
        self.p = p
        self.path = path
        self.walker = PathRealizer(p, path)
        self.sys = _System(p)
        self.calls = 0
        varying = path.varying_edges
        kinds = _expected_vertex_kinds(p, path.target_angles)
        for e in varying:
            if any(kinds[v] != TIMELIKE for v in e):
                raise IdealEdge(
                    f"path varies the angle of edge {e}, which has an ideal endpoint")
        self.varying = varying

    def lengths_at(self, t: float) -> dict[Edge, float]:
        try:
            X = self.walker.solution_at(t)
        except (NonConvergence, RealizationError) as exc:
            raise PathRealizationFailure(t, exc)
        angles = self.path.angles_at(t)
        kinds = _expected_vertex_kinds(self.p, angles)
        E = X.reshape(len(self.p.faces), 4)
        needed = {v for e in self.varying for v in e}
        verts = _compute_vertices(self.p, E, kinds, only=needed)
        out = {}
        for e in self.varying:
            va, vb = verts[e[0]][0], verts[e[1]][0]
            c = -float(np.dot(va * np.array([-1.0, 1, 1, 1]), vb))
            out[e] = math.acosh(max(c, 1.0))
        return out

    def __call__(self, t: float) -> float:
        self.calls += 1
        lens = self.lengths_at(t)
        derivs = self.path.derivatives_at(t)
        return sum(lens[e] * derivs[e] for e in self.varying)


def schlafli_volume(lp_target: LabeledPolyhedron | None,
                    path: DeformationPath | None = None,
                    tol: float = DEFAULT_TOL,
                    eps: float = DEFAULT_EPS,
                    collapse_threshold: float = COLLAPSE_LENGTH_THRESHOLD,
                    check_collapse: bool = True) -> VolumeResult:
    """Integrate -1/2 sum len_e dtheta_e along the path.

    Either a labeled target (default path built automatically) or an
    explicit path must be given.  Integration runs over [eps, 1]; the
    omitted [0, eps] mass is bounded by eps * |integrand(eps)| and folded
    into the error estimate.
    """
    if path is None:
        if lp_target is None:
            raise ValueError("need a target labeling or an explicit path")
        path = default_path(lp_target)
    p = path.polyhedron
    if not path.varying_edges:
        return VolumeResult(volume=0.0, error_estimate=0.0, nodes=0, path=path)

    f = _Integrand(p, path)

    if check_collapse:
        start_lengths = f.lengths_at(eps)
        worst = max(start_lengths.values()) if start_lengths else 0.0
        if worst > collapse_threshold:
            raise NonCollapsingStart(
                f"max varying-edge length {worst:.3g} at t={eps} exceeds "
                f"{collapse_threshold}; path start is not degenerate")

    # split at waypoint times so derivative jumps sit on interval ends
    cuts = sorted({eps, 1.0} | {t for t in path.times if eps < t < 1.0})
    total = 0.0
    err = 0.0
    for a, b in zip(cuts, cuts[1:]):
        seg, seg_err = _adaptive_gl(f, a, b, tol * (b - a))
        total += seg
        err += seg_err
    tail_bound = eps * abs(f(eps))
    volume = -0.5 * total
    return VolumeResult(volume=volume,
                        error_estimate=0.5 * err + 0.5 * tail_bound,
                        nodes=f.calls, path=path)


# ---------------------------------------------------------------------------
# differential self-tests


def monotonicity_probe(lp: LabeledPolyhedron, edge: Edge, delta_angle: float,
                       tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Compare a finite volume difference against the Schlaefli prediction.

    Returns (numeric dV, predicted dV = -len_e/2 * dtheta).  Both vanish
    for a zero perturbation and both are negative when the angle grows.
    """
    if delta_angle == 0.0:
        return 0.0, 0.0
    base = schlafli_volume(lp, tol=tol)
    target = lp.angles()
    perturbed = dict(target)
    perturbed[edge] = perturbed[edge] + delta_angle
    pert_path = default_path(lp.base, perturbed)
    v2 = schlafli_volume(None, path=pert_path, tol=tol)
    # edge length at the unperturbed target
    walker = PathRealizer(lp.base, default_path(lp))
    r = walker.realization_at(1.0)
    pred = -0.5 * edge_length(r, edge) * delta_angle
    return v2.volume - base.volume, pred


def hyperbolic_triangle_area(alpha: float, beta: float, gamma: float) -> float:
    """Area of a hyperbolic triangle: the angle defect pi - (a+b+c).

    This is the 2-dimensional face of the Schlaefli relation: along any
    family of triangles, -dA = sum dtheta exactly.
    """
    defect = math.pi - (alpha + beta + gamma)
    if defect < 0:
        raise ValueError("angle sum exceeds pi; not a hyperbolic triangle")
    return defect
