"""Symbolic edge labels pushed through flip sequences.

Two update rules are supported for the flip of a quadrilateral
(u, v, w, z) with diagonal (u, w) and side labels a = (u,v), b = (v,w),
c = (w,z), d = (z,u):

* Ptolemy: the new diagonal (v, z) gets (a*c + b*d)/x where x is the old
  diagonal label; every other label is unchanged.
* shear: the new diagonal gets 1/e, the side pair {a, c} is scaled by
  (1+e) and the pair {b, d} by e/(1+e), where e is the old diagonal label.

The side-pair assignment for shear is the one validated by the pentagon
identity test; the mirrored assignment fails it (see check_pentagon).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from braidshear.algebra import RationalFunction
from braidshear.braid import BraidWord, SlotConfig, compile_motion, initial_triangulation
from braidshear.geometry import EdgeComplex
from braidshear.kinetic import (
    FAR_VERTEX,
    DegeneracyError,
    FlipEvent,
    augment,
    augmented_at,
    detect_flips,
)

DEFAULT_JITTER = (Fraction(1, 97), Fraction(-1, 89), Fraction(1, 83))


class InternalInvariantError(Exception):
    """The pipeline violated one of its own certified invariants."""


class LabelSystem(enum.Enum):
    PTOLEMY = "ptolemy"
    SHEAR = "shear"

    @classmethod
    def from_text(cls, text: str) -> "LabelSystem":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown label system {text!r}; use 'ptolemy' or 'shear'")


Edge = Tuple[int, int]


def edge_var_name(i: int, j: int) -> str:
    lo, hi = sorted((i, j))
    return f"a_{{{lo},{hi}}}"


def edge_variable(i: int, j: int) -> RationalFunction:
    return RationalFunction.variable(edge_var_name(i, j))


def _norm(edge: Edge) -> Edge:
    a, b = edge
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class LabelState:
    """A triangle complex together with one rational function per edge."""

    complex: EdgeComplex
    labels: Mapping[Edge, RationalFunction]

    def __post_init__(self):
        labels = {_norm(e): v for e, v in self.labels.items()}
        if set(labels) != set(self.complex.edges()):
            raise InternalInvariantError("label keys do not match the edge set")
        object.__setattr__(self, "labels", labels)

    def label(self, edge: Edge) -> RationalFunction:
        return self.labels[_norm(edge)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelState):
            return NotImplemented
        return self.complex == other.complex and self.labels == other.labels


def seed_state(complex_: EdgeComplex) -> LabelState:
    """Fresh independent variables, one per edge."""
    return LabelState(complex_, {e: edge_variable(*e) for e in complex_.edges()})


def apply_ptolemy_flip(state: LabelState, quad: Tuple[int, int, int, int]) -> LabelState:
    u, v, w, z = quad
    x = state.label((u, w))
    a = state.label((u, v))
    b = state.label((v, w))
    c = state.label((w, z))
    d = state.label((z, u))
    labels = dict(state.labels)
    del labels[_norm((u, w))]
    labels[_norm((v, z))] = (a * c + b * d) / x
    return LabelState(state.complex.flip((u, w), quad), labels)


def apply_shear_flip(
    state: LabelState, quad: Tuple[int, int, int, int], mirrored: bool = False
) -> LabelState:
    u, v, w, z = quad
    e = state.label((u, w))
    grow = 1 + e
    shrink = e / grow
    if mirrored:
        grow, shrink = shrink, grow
    labels = dict(state.labels)
    del labels[_norm((u, w))]
    labels[_norm((v, z))] = e.inv()
    labels[_norm((u, v))] = state.label((u, v)) * grow
    labels[_norm((w, z))] = state.label((w, z)) * grow
    labels[_norm((v, w))] = state.label((v, w)) * shrink
    labels[_norm((z, u))] = state.label((z, u)) * shrink
    return LabelState(state.complex.flip((u, w), quad), labels)


def apply_flip(
    state: LabelState,
    quad: Tuple[int, int, int, int],
    system: LabelSystem,
    mirrored: bool = False,
) -> LabelState:
    if system is LabelSystem.PTOLEMY:
        return apply_ptolemy_flip(state, quad)
    return apply_shear_flip(state, quad, mirrored=mirrored)


def _flip_edge(state: LabelState, edge: Edge, system: LabelSystem, mirrored=False) -> LabelState:
    return apply_flip(state, state.complex.quad_around(edge), system, mirrored=mirrored)


# -- executable identity checks -------------------------------------------


def convex_polygon_complex(triangles: Sequence[Tuple[int, int, int]]) -> EdgeComplex:
    """Complex of a convex polygon triangulation given triangles as
    ascending triples (which are counterclockwise in convex position)."""
    return EdgeComplex([tuple(sorted(t)) for t in triangles])


def check_pentagon(system: LabelSystem, mirrored: bool = False) -> bool:
    """Compare the label maps along the two flip paths (lengths 2 and 3)
    joining two triangulations of a convex pentagon."""
    start = convex_polygon_complex([(1, 2, 3), (1, 3, 4), (1, 4, 5)])
    seed = seed_state(start)
    path_short = [(1, 4), (1, 3)]
    path_long = [(1, 3), (1, 4), (2, 4)]
    assert len(path_short) == 2 and len(path_long) == 3
    s_short = seed
    for edge in path_short:
        s_short = _flip_edge(s_short, edge, system, mirrored)
    s_long = seed
    for edge in path_long:
        s_long = _flip_edge(s_long, edge, system, mirrored)
    if s_short.complex != s_long.complex:
        raise InternalInvariantError("pentagon paths end on different triangulations")
    return s_short.labels == s_long.labels


def check_commutativity(
    system: LabelSystem, shared_edge: bool, mirrored: bool = False
) -> bool:
    """Order-independence of two flips whose quadrilaterals are vertex
    disjoint (shared_edge=False) or share exactly one side (True)."""
    if shared_edge:
        complex_ = convex_polygon_complex([(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6)])
        e1, e2 = (1, 3), (1, 5)
    else:
        complex_ = convex_polygon_complex(
            [(1, 2, 3), (1, 3, 4), (1, 4, 8), (4, 5, 8), (5, 6, 7), (5, 7, 8)]
        )
        e1, e2 = (1, 3), (5, 7)
    seed = seed_state(complex_)
    one_way = _flip_edge(_flip_edge(seed, e1, system, mirrored), e2, system, mirrored)
    other_way = _flip_edge(_flip_edge(seed, e2, system, mirrored), e1, system, mirrored)
    return one_way == other_way


def check_involution(system: LabelSystem, mirrored: bool = False) -> bool:
    """Flipping the same quadrilateral twice is the identity on labels."""
    complex_ = convex_polygon_complex([(1, 2, 3), (1, 3, 4)])
    seed = seed_state(complex_)
    once = _flip_edge(seed, (1, 3), system, mirrored)
    twice = _flip_edge(once, (2, 4), system, mirrored)
    return twice == seed


# -- the braid invariant ---------------------------------------------------


@dataclass(frozen=True)
class InvariantMap:
    """T(beta): final labels keyed by initial slot edges."""

    n: int
    system: LabelSystem
    word: str
    entries: Mapping[Edge, RationalFunction]

    def __post_init__(self):
        object.__setattr__(self, "entries", {_norm(e): v for e, v in self.entries.items()})

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.entries)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "system": self.system.value,
            "word": self.word,
            "entries": [
                {"edge": list(edge), "value": self.entries[edge].to_json()}
                for edge in self.sorted_edges()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "InvariantMap":
        return cls(
            int(data["n"]),
            LabelSystem.from_text(data["system"]),
            data.get("word", ""),
            {
                tuple(rec["edge"]): RationalFunction.from_json(rec["value"])
                for rec in data["entries"]
            },
        )


def invariants_equal(a: InvariantMap, b: InvariantMap) -> bool:
    if set(a.entries) != set(b.entries):
        return False
    return all(a.entries[e] == b.entries[e] for e in a.entries)


def first_difference(a: InvariantMap, b: InvariantMap) -> Optional[Edge]:
    for edge in sorted(set(a.entries) | set(b.entries)):
        if a.entries.get(edge) != b.entries.get(edge):
            return edge
    return None


def run_invariant(
    word: BraidWord,
    cfg: SlotConfig,
    system: LabelSystem,
    *,
    detector: str = "sturm",
    max_retries: int = 3,
    jitter: Sequence[Fraction] = DEFAULT_JITTER,
    commutation_check: bool = True,
) -> InvariantMap:
    """Compute T(word): seed slot-edge variables, push them through the
    certified flip sequence, and re-key the final labels to slot edges via
    the braid's permutation.

    Degeneracy errors retry with deterministic bulge perturbations (at
    most ``max_retries``); isotopic motions compute the same map, so the
    perturbed run yields the same result.
    """
    tri0, _ = initial_triangulation(cfg)
    base = augment(tri0)
    attempts = [cfg] + [cfg.with_bulge(cfg.bulge + d) for d in jitter[:max_retries]]
    last_error: Optional[Exception] = None
    events: Optional[List[FlipEvent]] = None
    motion = None
    perm = None
    for attempt_cfg in attempts:
        motion, perm = compile_motion(word, attempt_cfg)
        try:
            events = detect_flips(motion, tri0, detector=detector)
            break
        except DegeneracyError as exc:
            last_error = exc
            continue
    if events is None:
        raise last_error if last_error else DegeneracyError("no attempt succeeded")

    state = seed_state(base)
    for group in _bracket_groups(events):
        before = state
        for event in group:
            if state.complex.quad_around(event.edge) != event.quad:
                raise InternalInvariantError(f"event quad diverged for {event}")
            state = apply_flip(state, event.quad, system)
        if commutation_check and len(group) > 1:
            # events sharing a bracket are simultaneous; re-apply them in
            # the opposite order and insist on the same outcome
            other = before
            for event in reversed(group):
                other = apply_flip(other, other.complex.quad_around(event.edge), system)
            if other != state:
                raise InternalInvariantError(
                    f"simultaneous events {[e.edge for e in group]} do not commute"
                )

    if motion is not None and motion.stages:
        final_fresh = augmented_at(motion, len(motion.stages) - 1, Fraction(1))
        if not state.complex.same_triangles(final_fresh):
            raise InternalInvariantError("final complex does not match the motion's end")

    entries: Dict[Edge, RationalFunction] = {}
    for (p, q) in state.complex.edges():
        if FAR_VERTEX in (p, q):
            continue
        entries[_norm((perm[p], perm[q]))] = state.labels[(p, q)]
    if set(entries) != set(tri0.edges()):
        raise InternalInvariantError("re-keyed entries do not cover the slot edges")
    return InvariantMap(cfg.n, system, word.text(), entries)


def _bracket_groups(events: Sequence[FlipEvent]) -> List[List[FlipEvent]]:
    groups: List[List[FlipEvent]] = []
    for event in events:
        if groups and (
            groups[-1][0].stage == event.stage
            and groups[-1][0].t_lo == event.t_lo
            and groups[-1][0].t_hi == event.t_hi
        ):
            groups[-1].append(event)
        else:
            groups.append([event])
    return groups
