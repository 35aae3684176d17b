"""Kinetic maintenance of the Delaunay complex of moving points.

Strand trajectories are piecewise rational (stationary, or elliptical
half-turn arcs parametrized so positions are exact rationals at rational
times).  The tracked structure is the hull-closure complex: the planar
Delaunay triangulation together with one extra vertex (id 0, "the far
vertex") joined to every hull edge.  On that closed complex every generic
transition, a cocircularity of four strands or a collinearity of three
hull strands, is a single edge flip, so a braid's whole history is a
certified, ordered flip sequence.

Two detector backends share one contract: ``sturm`` isolates event times
as real roots of exact event polynomials (complete); ``bisect`` samples a
grid and bisects intervals whose complexes differ (the simpler strategy,
sound on well-separated events).  Select via the ``detector`` argument or
the BRAIDSHEAR_DETECTOR environment variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from braidshear import roots
from braidshear.algebra import RationalFunction, format_rational, parse_rational
from braidshear.geometry import (
    DegenerateInputError,
    EdgeComplex,
    Point,
    Triangulation,
    delaunay,
)

FAR_VERTEX = 0

DEFAULT_MIN_BRACKET = Fraction(1, 2 ** 20)
DEFAULT_GRID = 64
DENSE_ORACLE_RESOLUTION = 2 ** 14


class KineticError(Exception):
    """Base class for kinetic failures."""


class DegeneracyError(KineticError):
    """The motion is not generic (inseparable or boundary events)."""


class CollisionError(KineticError):
    """Two strands' distance reaches zero."""


class InconsistentEventError(KineticError):
    """An event cannot be applied to the current complex."""


@dataclass(frozen=True)
class Stationary:
    point: Point

    def position(self, t: Fraction) -> Point:
        return self.point

    def endpoint(self) -> Point:
        return self.point


@dataclass(frozen=True)
class Arc:
    """Half-turn arc about ``center`` starting at ``start``.

    ``direction`` +1 turns counterclockwise.  ``scale`` stretches the
    component perpendicular to the starting radius (an ellipse arc), so
    both endpoints stay exact whatever the scale.  Time runs through two
    quarter turns, each under the tangent-half-angle map, keeping every
    rational time at a rational position.
    """

    center: Point
    start: Point
    direction: int
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise KineticError(f"arc direction must be +1 or -1, got {self.direction}")
        if self.scale <= 0:
            raise KineticError("arc scale must be positive")
        if self.center == self.start:
            raise KineticError("arc start must differ from its center")

    def _cos_sin(self, t: Fraction) -> Tuple[Fraction, Fraction]:
        if t <= Fraction(1, 2):
            u = 2 * t
            den = 1 + u * u
            return Fraction(1 - u * u, den), Fraction(2 * u, den)
        u = 2 * t - 1
        den = 1 + u * u
        return Fraction(-2 * u, den), Fraction(1 - u * u, den)

    def position(self, t: Fraction) -> Point:
        cos, sin = self._cos_sin(t)
        rx, ry = self.start.x - self.center.x, self.start.y - self.center.y
        s = self.direction * self.scale * sin
        return Point(
            self.center.x + cos * rx - s * ry,
            self.center.y + cos * ry + s * rx,
        )

    def endpoint(self) -> Point:
        return Point(2 * self.center.x - self.start.x, 2 * self.center.y - self.start.y)


Trajectory = Union[Stationary, Arc]


@dataclass(frozen=True)
class Stage:
    trajectories: Mapping[int, Trajectory]

    def __post_init__(self):
        object.__setattr__(self, "trajectories", dict(self.trajectories))

    def strands(self) -> Tuple[int, ...]:
        return tuple(sorted(self.trajectories))

    def movers(self) -> Tuple[int, ...]:
        return tuple(s for s in self.strands() if isinstance(self.trajectories[s], Arc))


@dataclass(frozen=True)
class Motion:
    n: int
    stages: Tuple[Stage, ...]

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        expected = set(range(1, self.n + 1))
        for idx, stage in enumerate(self.stages):
            if set(stage.trajectories) != expected:
                raise KineticError(f"stage {idx} must cover strands 1..{self.n}")
        for idx in range(len(self.stages) - 1):
            ends = {s: self.stages[idx].trajectories[s].endpoint() for s in expected}
            starts = {s: _start_of(self.stages[idx + 1].trajectories[s]) for s in expected}
            if ends != starts:
                raise KineticError(f"discontinuity between stages {idx} and {idx + 1}")
        for idx, stage in enumerate(self.stages):
            pts = [_start_of(stage.trajectories[s]) for s in sorted(expected)]
            if len(set(pts)) != len(pts):
                raise KineticError(f"coincident strands at start of stage {idx}")
            pts = [stage.trajectories[s].endpoint() for s in sorted(expected)]
            if len(set(pts)) != len(pts):
                raise KineticError(f"coincident strands at end of stage {idx}")


def _start_of(traj: Trajectory) -> Point:
    return traj.point if isinstance(traj, Stationary) else traj.start


def position_at(motion: Motion, strand: int, stage: int, t: Fraction) -> Point:
    """Exact position of a strand at stage-local time t in [0, 1]."""
    if not 0 <= stage < len(motion.stages):
        raise KineticError(f"stage {stage} out of range")
    if not Fraction(0) <= t <= Fraction(1):
        raise KineticError(f"time {t} outside [0, 1]")
    traj = motion.stages[stage].trajectories.get(strand)
    if traj is None:
        raise KineticError(f"unknown strand {strand}")
    return traj.position(Fraction(t))


def positions_at(motion: Motion, stage: int, t: Fraction) -> Dict[int, Point]:
    return {s: position_at(motion, s, stage, t) for s in range(1, motion.n + 1)}


class FlipEvent(NamedTuple):
    stage: int
    t_lo: Fraction
    t_hi: Fraction
    edge: Tuple[int, int]
    quad: Tuple[int, int, int, int]


def augment(tri: Triangulation) -> EdgeComplex:
    """Close the triangulation with the far vertex: one extra triangle per
    hull edge, oriented coherently with the finite ones."""
    hull = tri.hull()
    far = []
    for i, a in enumerate(hull):
        b = hull[(i + 1) % len(hull)]
        far.append((b, a, FAR_VERTEX))
    return EdgeComplex(set(tri.triangles) | set(far))


def augmented_at(motion: Motion, stage: int, t: Fraction) -> EdgeComplex:
    return augment(delaunay(sorted(positions_at(motion, stage, t).items())))


def finite_triangles(complex_: EdgeComplex) -> frozenset:
    """Unoriented finite part (triangles not touching the far vertex)."""
    return frozenset(
        frozenset(t) for t in complex_.triangles if FAR_VERTEX not in t
    )


# -- event polynomials (sturm backend) -----------------------------------


def _position_functions(stage: Stage, half: int) -> Dict[int, Tuple[RationalFunction, RationalFunction]]:
    u = RationalFunction.variable("u")
    den = u * u + 1
    if half == 0:
        cos = (1 - u * u) / den
        sin = (2 * u) / den
    else:
        cos = (-2 * u) / den
        sin = (1 - u * u) / den
    out = {}
    for strand in stage.strands():
        traj = stage.trajectories[strand]
        if isinstance(traj, Stationary):
            out[strand] = (
                RationalFunction.constant(traj.point.x),
                RationalFunction.constant(traj.point.y),
            )
        else:
            rx = traj.start.x - traj.center.x
            ry = traj.start.y - traj.center.y
            s = sin * (traj.direction * traj.scale)
            out[strand] = (
                cos * rx - s * ry + traj.center.x,
                cos * ry + s * rx + traj.center.y,
            )
    return out


def _orient_rf(p, q, r) -> RationalFunction:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _incircle_rf(p, q, r, s) -> RationalFunction:
    ax, ay = p[0] - s[0], p[1] - s[1]
    bx, by = q[0] - s[0], q[1] - s[1]
    cx, cy = r[0] - s[0], r[1] - s[1]
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    return (
        a2 * (bx * cy - by * cx)
        - b2 * (ax * cy - ay * cx)
        + c2 * (ax * by - ay * bx)
    )


def _dense_in_u(f: RationalFunction) -> List[Fraction]:
    return [Fraction(c) for c in f.num.dense_univariate("u")]


def _compose_linear(coeffs: Sequence[Fraction], a: Fraction, b: Fraction) -> List[Fraction]:
    """Coefficients of p(a*t + b) from those of p(u)."""
    out: List[Fraction] = []
    for c in reversed(list(coeffs)):
        # out = out * (a*t + b) + c
        nxt = [Fraction(0)] * (len(out) + 1)
        for i, x in enumerate(out):
            nxt[i] += x * b
            nxt[i + 1] += x * a
        nxt[0] += Fraction(c)
        while nxt and nxt[-1] == 0:
            nxt.pop()
        out = nxt
    return out


def _stage_event_polys(motion: Motion, stage_idx: int) -> List[Tuple[List[Fraction], Fraction, Fraction]]:
    """Event polynomials in stage-local time with their domains.

    One polynomial per 4-subset of {far} + strands (with at least one
    moving finite member) and per half-stage; roots are the candidate
    event times.
    """
    stage = motion.stages[stage_idx]
    movers = set(stage.movers())
    if not movers:
        return []
    polys = []
    ids = [FAR_VERTEX] + list(stage.strands())
    for half, (d_lo, d_hi) in enumerate([(Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1))]):
        funcs = _position_functions(stage, half)
        for subset in combinations(ids, 4):
            finite = [s for s in subset if s != FAR_VERTEX]
            if not (set(finite) & movers):
                continue
            if FAR_VERTEX in subset:
                det = _orient_rf(*(funcs[s] for s in finite))
            else:
                det = _incircle_rf(*(funcs[s] for s in finite))
            coeffs = _dense_in_u(det)
            if not coeffs:
                raise DegeneracyError(
                    f"stage {stage_idx}: subset {subset} degenerate throughout"
                )
            if len(coeffs) == 1:
                continue  # constant sign, no events
            a = Fraction(2)
            b = Fraction(0) if half == 0 else Fraction(-1)
            # u = a*t + b maps the half's time range onto [0, 1]
            polys.append((_compose_linear(coeffs, a, b), d_lo, d_hi))
    return polys


def _check_collisions(motion: Motion, stage_idx: int) -> None:
    stage = motion.stages[stage_idx]
    movers = set(stage.movers())
    if not movers:
        return
    for half in (0, 1):
        funcs = _position_functions(stage, half)
        for i, j in combinations(stage.strands(), 2):
            if i not in movers and j not in movers:
                continue
            dx = funcs[i][0] - funcs[j][0]
            dy = funcs[i][1] - funcs[j][1]
            coeffs = _dense_in_u(dx * dx + dy * dy)
            if not coeffs:
                raise CollisionError(f"strands {i} and {j} coincide throughout stage {stage_idx}")
            if roots.count_roots_closed(coeffs, Fraction(0), Fraction(1)) > 0:
                raise CollisionError(f"strands {i} and {j} collide during stage {stage_idx}")


class _Wall:
    """A bracketed event time: an isolating interval of one event
    polynomial, or an exact rational time."""

    __slots__ = ("poly", "lo", "hi", "exact")

    def __init__(self, poly, lo, hi, exact=None):
        self.poly = poly
        self.lo = lo
        self.hi = hi
        self.exact = exact

    def shrink(self, width: Fraction) -> None:
        if self.exact is not None:
            delta = width / 2
            self.lo = self.exact - delta
            self.hi = self.exact + delta
        else:
            refined = roots.refine_root(self.poly, roots.IsolatedRoot(self.lo, self.hi), width)
            self.lo, self.hi = refined.lo, refined.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains_root_of(self, other: "_Wall") -> Optional[bool]:
        """True if this wall's event time equals the other's (exact check)."""
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        if self.exact is not None:
            return roots.evaluate(roots.normalize(other.poly), self.exact) == 0
        if other.exact is not None:
            return roots.evaluate(roots.normalize(self.poly), other.exact) == 0
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo >= hi:
            return False
        return roots.has_common_root_in(self.poly, other.poly, lo, hi)


def _stage_walls(motion: Motion, stage_idx: int, w_min: Fraction) -> List[_Wall]:
    walls: List[_Wall] = []
    half_mark = Fraction(1, 2)
    mid_seen = False
    for coeffs, d_lo, d_hi in _stage_event_polys(motion, stage_idx):
        poly = roots.normalize(coeffs)
        if not poly:
            raise DegeneracyError(f"stage {stage_idx}: identically degenerate event polynomial")
        work = roots.squarefree_part(poly)
        for boundary in (d_lo, d_hi):
            while roots.degree(work) >= 1 and roots.evaluate(work, boundary) == 0:
                if boundary in (Fraction(0), Fraction(1)):
                    raise DegeneracyError(
                        f"stage {stage_idx}: event exactly at a stage boundary"
                    )
                work = roots.deflate_at(work, boundary)
                if not mid_seen:
                    walls.append(_Wall(poly, half_mark, half_mark, exact=half_mark))
                    mid_seen = True
        if roots.degree(work) >= 1:
            for iso in roots.isolate_roots(work, d_lo, d_hi):
                walls.append(_Wall(work, iso.lo, iso.hi))
    for wall in walls:
        wall.shrink(w_min)
    return _separate_walls(walls, w_min)


def _separate_walls(walls: List[_Wall], w_min: Fraction) -> List[_Wall]:
    """Refine brackets until pairwise disjoint, merging exactly equal
    event times (they remain one bracket holding several flips)."""
    for _ in range(200):
        walls.sort(key=lambda w: (w.lo, w.hi))
        overlap = None
        for a, b in zip(walls, walls[1:]):
            if b.lo < a.hi:
                overlap = (a, b)
                break
        if overlap is None:
            return walls
        a, b = overlap
        if a.contains_root_of(b):
            merged = _Wall(a.poly, min(a.lo, b.lo), max(a.hi, b.hi), exact=a.exact or b.exact)
            if merged.exact is None:
                g = roots.gcd(a.poly, b.poly)
                (iso,) = roots.isolate_roots(g, merged.lo, merged.hi) if roots.degree(g) >= 1 else (None,)
                if iso is None:
                    raise KineticError("merge lost the shared root")
                merged = _Wall(g, iso.lo, iso.hi)
                merged.shrink(min(w_min, a.width(), b.width()))
            walls.remove(a)
            walls.remove(b)
            walls.append(merged)
        else:
            target = min(a.width(), b.width()) / 4
            a.shrink(target)
            b.shrink(target)
    raise KineticError("event times failed to separate")


# -- transition classification (shared by both backends) ------------------


def _apply_transition(
    current: EdgeComplex,
    fresh_lo: EdgeComplex,
    fresh_hi: EdgeComplex,
    stage_idx: int,
    t_lo: Fraction,
    t_hi: Fraction,
    events: List[FlipEvent],
) -> EdgeComplex:
    if not current.same_triangles(fresh_lo):
        raise KineticError(
            f"stage {stage_idx}: complex at {t_lo} does not match the replayed one "
            "(an event was missed)"
        )
    if fresh_lo.same_triangles(fresh_hi):
        return current
    removed = sorted(current.edges() - fresh_hi.edges())
    added = sorted(fresh_hi.edges() - current.edges())
    if len(removed) != len(added) or not removed:
        raise KineticError(f"stage {stage_idx}: unbalanced transition {removed} -> {added}")
    quads = {}
    for edge in removed:
        quads[edge] = fresh_lo.quad_around(edge)
        if current.quad_around(edge) != quads[edge]:
            raise KineticError(f"stage {stage_idx}: replayed orientation diverged at {edge}")
    if len(removed) > 1:
        tris = {
            edge: {frozenset((q[0], q[1], q[2])), frozenset((q[0], q[2], q[3]))}
            for edge, q in quads.items()
        }
        for e1, e2 in combinations(removed, 2):
            if tris[e1] & tris[e2]:
                raise DegeneracyError(
                    f"stage {stage_idx}: simultaneous events at {e1} and {e2} share a triangle"
                )
    result = current
    for edge in removed:
        result = result.flip(edge, quads[edge])
        events.append(FlipEvent(stage_idx, t_lo, t_hi, edge, quads[edge]))
    if not result.same_triangles(fresh_hi):
        raise KineticError(f"stage {stage_idx}: transition is not a flip set")
    return result


def _generic_complex_near(
    motion: Motion, stage_idx: int, t: Fraction, lo: Fraction, hi: Fraction
) -> Tuple[Fraction, EdgeComplex]:
    """Complex at t, nudging the sample inside (lo, hi) off degeneracies."""
    span = hi - lo
    for k in range(8):
        for sign in (1, -1):
            cand = t + sign * k * span / 64
            if not lo < cand < hi:
                continue
            try:
                return cand, augmented_at(motion, stage_idx, cand)
            except DegenerateInputError:
                continue
    raise DegeneracyError(f"stage {stage_idx}: no generic sample near {t}")


def _detect_stage_sturm(
    motion: Motion, stage_idx: int, current: EdgeComplex, w_min: Fraction, events: List[FlipEvent]
) -> EdgeComplex:
    _check_collisions(motion, stage_idx)
    walls = _stage_walls(motion, stage_idx, w_min)
    for wall in walls:
        fresh_lo = augmented_at(motion, stage_idx, wall.lo)
        fresh_hi = augmented_at(motion, stage_idx, wall.hi)
        current = _apply_transition(
            current, fresh_lo, fresh_hi, stage_idx, wall.lo, wall.hi, events
        )
    end = augmented_at(motion, stage_idx, Fraction(1))
    if not current.same_triangles(end):
        raise KineticError(f"stage {stage_idx}: end complex mismatch")
    return current


def _detect_stage_bisect(
    motion: Motion,
    stage_idx: int,
    current: EdgeComplex,
    w_min: Fraction,
    grid: int,
    events: List[FlipEvent],
) -> EdgeComplex:
    _check_collisions(motion, stage_idx)
    if not motion.stages[stage_idx].movers():
        return current
    samples: List[Tuple[Fraction, EdgeComplex]] = []
    for j in range(grid + 1):
        t = Fraction(j, grid)
        lo = Fraction(max(0, 2 * j - 1), 2 * grid)
        hi = Fraction(min(2 * grid, 2 * j + 1), 2 * grid)
        if j == 0 or j == grid:
            samples.append((t, augmented_at(motion, stage_idx, t)))
        else:
            samples.append(_generic_complex_near(motion, stage_idx, t, lo, hi))

    def bisect(t_a, c_a, t_b, c_b, current):
        if c_a.same_triangles(c_b):
            return current
        if t_b - t_a < w_min:
            return _apply_transition(current, c_a, c_b, stage_idx, t_a, t_b, events)
        t_m, c_m = _generic_complex_near(
            motion, stage_idx, (t_a + t_b) / 2, t_a, t_b
        )
        current = bisect(t_a, c_a, t_m, c_m, current)
        return bisect(t_m, c_m, t_b, c_b, current)

    for (t_a, c_a), (t_b, c_b) in zip(samples, samples[1:]):
        current = bisect(t_a, c_a, t_b, c_b, current)
    end = augmented_at(motion, stage_idx, Fraction(1))
    if not current.same_triangles(end):
        raise KineticError(f"stage {stage_idx}: end complex mismatch")
    return current


def detect_flips(
    motion: Motion,
    initial: Triangulation,
    *,
    detector: str = "sturm",
    w_min: Fraction = DEFAULT_MIN_BRACKET,
    grid: int = DEFAULT_GRID,
) -> List[FlipEvent]:
    """Certified, time-ordered flip events of the hull-closure complex.

    ``initial`` must be the Delaunay triangulation of the motion's start
    positions.  Replaying the returned events onto ``augment(initial)``
    reproduces the complex at every bracket boundary and at the end of
    every stage; simultaneous events with disjoint supports are emitted in
    lexicographic edge order within one bracket.
    """
    if detector not in ("sturm", "bisect"):
        raise KineticError(f"unknown detector {detector!r}")
    start = positions_at(motion, 0, Fraction(0)) if motion.stages else {}
    if motion.stages:
        if dict(initial.vertices) != start:
            raise KineticError("initial triangulation does not match the motion's start")
    current = augment(initial)
    events: List[FlipEvent] = []
    for stage_idx in range(len(motion.stages)):
        if detector == "sturm":
            current = _detect_stage_sturm(motion, stage_idx, current, w_min, events)
        else:
            current = _detect_stage_bisect(motion, stage_idx, current, w_min, grid, events)
    return events


def replay(initial: Union[Triangulation, EdgeComplex], events: Sequence[FlipEvent]) -> EdgeComplex:
    """Fold a flip sequence over the hull-closure complex deterministically."""
    complex_ = initial if isinstance(initial, EdgeComplex) else augment(initial)
    for ev in events:
        if not complex_.has_edge(ev.edge):
            raise InconsistentEventError(f"edge {ev.edge} absent when replaying {ev}")
        try:
            complex_ = complex_.flip(ev.edge, ev.quad)
        except Exception as exc:
            raise InconsistentEventError(f"cannot replay {ev}: {exc}") from exc
    return complex_


# -- JSON wire formats ----------------------------------------------------


def _point_to_json(p: Point) -> List[str]:
    return [format_rational(p.x), format_rational(p.y)]


def _point_from_json(data: Sequence[str]) -> Point:
    return Point(parse_rational(data[0]), parse_rational(data[1]))


def motion_to_json(motion: Motion) -> dict:
    stages = []
    for stage in motion.stages:
        records = []
        for strand in stage.strands():
            traj = stage.trajectories[strand]
            if isinstance(traj, Stationary):
                records.append(
                    {"strand": strand, "kind": "stationary", "start": _point_to_json(traj.point)}
                )
            else:
                records.append(
                    {
                        "strand": strand,
                        "kind": "arc",
                        "center": _point_to_json(traj.center),
                        "start": _point_to_json(traj.start),
                        "turns": "+half" if traj.direction == 1 else "-half",
                        "scale": format_rational(traj.scale),
                    }
                )
        stages.append(records)
    return {"n": motion.n, "stages": stages}


def motion_from_json(data: Mapping) -> Motion:
    stages = []
    for records in data["stages"]:
        trajectories: Dict[int, Trajectory] = {}
        for rec in records:
            strand = int(rec["strand"])
            kind = rec["kind"]
            if kind == "stationary":
                trajectories[strand] = Stationary(_point_from_json(rec["start"]))
            elif kind == "arc":
                turns = rec["turns"].replace("−", "-")
                if turns not in ("+half", "-half"):
                    raise KineticError(f"unsupported turns {rec['turns']!r}")
                trajectories[strand] = Arc(
                    center=_point_from_json(rec["center"]),
                    start=_point_from_json(rec["start"]),
                    direction=1 if turns == "+half" else -1,
                    scale=parse_rational(rec.get("scale", "1")),
                )
            else:
                raise KineticError(f"unknown trajectory kind {kind!r}")
        stages.append(Stage(trajectories))
    return Motion(int(data["n"]), tuple(stages))


def events_to_json(events: Sequence[FlipEvent]) -> list:
    return [
        {
            "stage": ev.stage,
            "t_lo": format_rational(ev.t_lo),
            "t_hi": format_rational(ev.t_hi),
            "edge": list(ev.edge),
            "quad": list(ev.quad),
        }
        for ev in events
    ]


def events_from_json(data: Sequence[Mapping]) -> List[FlipEvent]:
    return [
        FlipEvent(
            int(rec["stage"]),
            parse_rational(rec["t_lo"]),
            parse_rational(rec["t_hi"]),
            tuple(rec["edge"]),
            tuple(rec["quad"]),
        )
        for rec in data
    ]
