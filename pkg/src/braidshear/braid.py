"""Braid words and their realization as explicit strand motions.

The initial configuration places slot k at (k, eps*k^2) on a flattened
parabola: distinct positive abscissas can never be cocircular there (four
points of a parabola share a circle only when their abscissas sum to
zero), and near-collinearity keeps swap arcs clear of bystander strands.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from braidshear.geometry import Point, Triangulation, delaunay
from braidshear.kinetic import Arc, Motion, Stage, Stationary


class BraidParseError(Exception):
    def __init__(self, message: str, position: int, expected: str = ""):
        detail = f"{message} (at position {position}"
        if expected:
            detail += f", expected {expected}"
        detail += ")"
        super().__init__(detail)
        self.position = position
        self.expected = expected


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for index, sign in self.letters:
            if not 1 <= index <= self.n - 1:
                raise BraidParseError(
                    f"generator index {index} out of range for {self.n} strands", 0
                )
            if sign not in (1, -1):
                raise BraidParseError(f"invalid sign {sign}", 0)

    def text(self) -> str:
        return " ".join(f"s{i}" if s == 1 else f"s{i}'" for i, s in self.letters)


_ITEM = re.compile(r"s(\d+)('|\^-1)?")


def parse_braid(text: str, n: Optional[int] = None) -> BraidWord:
    """Parse a braid word: items like ``s2`` / ``s2'`` / ``s2^-1`` separated
    by whitespace.  The strand count is ``n`` or, if omitted, max(index)+1."""
    letters: List[Tuple[int, int, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _ITEM.match(text, pos)
        if not match:
            raise BraidParseError(
                f"unexpected token {text[pos]!r}", pos, "generator like s1, s1' or s1^-1"
            )
        index = int(match.group(1))
        if index == 0:
            raise BraidParseError("generator index must be at least 1", pos)
        sign = -1 if match.group(2) else 1
        letters.append((index, sign, pos))
        pos = match.end()
    if n is None:
        if not letters:
            raise BraidParseError("cannot infer strand count from an empty word", 0)
        n = max(i for i, _, _ in letters) + 1
    for index, _, at in letters:
        if index > n - 1:
            raise BraidParseError(
                f"generator index {index} out of range for {n} strands", at
            )
    return BraidWord(n, tuple((i, s) for i, s, _ in letters))


@dataclass(frozen=True)
class SlotConfig:
    n: int
    epsilon: Fraction = Fraction(1, 64)
    bulge: Fraction = Fraction(1)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 strands")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.bulge <= 0:
            raise ValueError("bulge must be positive")

    def with_bulge(self, bulge: Fraction) -> "SlotConfig":
        return replace(self, bulge=bulge)


def slot_position(cfg: SlotConfig, k: int) -> Point:
    if not 1 <= k <= cfg.n:
        raise ValueError(f"slot {k} out of range")
    x = Fraction(k)
    return Point(x, cfg.epsilon * x * x)


def slot_points(cfg: SlotConfig) -> List[Tuple[int, Point]]:
    return [(k, slot_position(cfg, k)) for k in range(1, cfg.n + 1)]


def initial_triangulation(cfg: SlotConfig) -> Tuple[Triangulation, Tuple[Tuple[int, int], ...]]:
    """Delaunay triangulation of the slot positions plus the canonical
    (lexicographically sorted) slot-edge enumeration carrying the initial
    edge variables."""
    tri = delaunay(slot_points(cfg))
    return tri, tuple(sorted(tri.edges()))


def compile_motion(word: BraidWord, cfg: SlotConfig) -> Tuple[Motion, Dict[int, int]]:
    """One half-turn swap stage per letter; positive letters turn the two
    occupants of slots (i, i+1) counterclockwise about their midpoint.
    Returns the motion and the permutation strand -> final slot."""
    if word.n != cfg.n:
        raise ValueError(f"word is on {word.n} strands but config has {cfg.n}")
    occupant = {slot: slot for slot in range(1, cfg.n + 1)}
    stages = []
    for index, sign in word.letters:
        a = occupant[index]
        b = occupant[index + 1]
        pa = slot_position(cfg, index)
        pb = slot_position(cfg, index + 1)
        center = Point((pa.x + pb.x) / 2, (pa.y + pb.y) / 2)
        slot_of = {strand: slot for slot, strand in occupant.items()}
        trajectories = {}
        for strand in range(1, cfg.n + 1):
            if strand == a:
                trajectories[strand] = Arc(center, pa, sign, cfg.bulge)
            elif strand == b:
                trajectories[strand] = Arc(center, pb, sign, cfg.bulge)
            else:
                trajectories[strand] = Stationary(slot_position(cfg, slot_of[strand]))
        stages.append(Stage(trajectories))
        occupant[index], occupant[index + 1] = b, a
    permutation = {strand: slot for slot, strand in occupant.items()}
    return Motion(cfg.n, tuple(stages)), permutation


def word_permutation(word: BraidWord) -> Dict[int, int]:
    """The underlying symmetric-group image: strand -> final slot."""
    occupant = {slot: slot for slot in range(1, word.n + 1)}
    for index, _ in word.letters:
        occupant[index], occupant[index + 1] = occupant[index + 1], occupant[index]
    return {strand: slot for slot, strand in occupant.items()}


def swap_clearance_ok(cfg: SlotConfig) -> bool:
    """Exact check that every swap ellipse keeps all other slots strictly
    outside (no collision is possible whatever the stage order)."""
    for index in range(1, cfg.n):
        pa = slot_position(cfg, index)
        pb = slot_position(cfg, index + 1)
        cx, cy = (pa.x + pb.x) / 2, (pa.y + pb.y) / 2
        rx, ry = pa.x - cx, pa.y - cy
        r2 = rx * rx + ry * ry
        b2 = cfg.bulge * cfg.bulge
        for k in range(1, cfg.n + 1):
            if k in (index, index + 1):
                continue
            p = slot_position(cfg, k)
            dx, dy = p.x - cx, p.y - cy
            along = dx * rx + dy * ry
            across = -dx * ry + dy * rx
            # outside the ellipse with semi-axes |r| and bulge*|r|
            if b2 * along * along + across * across <= b2 * r2 * r2:
                return False
    return True
