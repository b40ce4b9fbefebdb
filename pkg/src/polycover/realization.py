"""Exact points of the geometric realisation, carriers, open vertex stars,
and cross-level star bookkeeping.

All coordinates are `fractions.Fraction`; every predicate here is decided
exactly.  Open subsets of the ground space are represented only as
star-sets: unions of open vertex stars at a fixed subdivision level.
Comparisons across levels re-express the coarser object at the finer
level, never the reverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .complexes import (
    Barycenter,
    SimplicialComplex,
    SimplicialMap,
    SubdivisionStage,
    Simplex,
    initial_stage,
    subdivide,
    vlabel,
)
from .errors import (
    CannotCoarsen,
    IncompleteMap,
    InvalidPoint,
    LevelMismatch,
)


class PolyhedralSpace:
    """The ground space |K|: a base complex and its subdivision tower.

    Stages are computed on demand and cached; the tower is deterministic,
    so two spaces with equal bases have identical stages.
    """

    def __init__(self, base: SimplicialComplex):
        self.base = base
        self._stages: list[SubdivisionStage] = [initial_stage(base)]
        self._labels: list[dict] = []

    def stage(self, level: int) -> SubdivisionStage:
        if level < 0:
            raise ValueError("stage levels are nonnegative")
        while len(self._stages) <= level:
            self._stages.append(subdivide(self._stages[-1]))
        return self._stages[level]

    def stage_complex(self, level: int) -> SimplicialComplex:
        return self.stage(level).complex

    def vertex_named(self, level: int, label: str):
        """Resolve a printable vertex label at the given stage."""
        while len(self._labels) <= level:
            lv = len(self._labels)
            self._labels.append(
                {vlabel(v): v for v in self.stage(lv).complex.vertices}
            )
        try:
            return self._labels[level][label]
        except KeyError:
            raise ValueError(f"no vertex labelled {label!r} at level {level}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyhedralSpace) and self.base == other.base

    def __hash__(self) -> int:
        return hash(self.base)

    def __repr__(self) -> str:
        return f"PolyhedralSpace(base={self.base!r})"


@dataclass(frozen=True)
class BarycentricPoint:
    """A point of a geometric realisation in exact barycentric coordinates.

    `complex` is the complex the point lives on; for points on a stage of a
    PolyhedralSpace, `level` records that stage.  The level is carried
    through affine maps unchanged and is inert for non-stage targets.
    """

    level: int
    coords: dict
    complex: SimplicialComplex


def _to_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise InvalidPoint("float coordinates are not allowed; use Fraction or str")
    return Fraction(x)


def stage_point(space: PolyhedralSpace, level: int, coords: dict) -> BarycentricPoint:
    """Build a point on the level-m stage; keys may be vertex ids or labels."""
    stage = space.stage(level)
    resolved = {}
    for key, value in coords.items():
        v = key
        if v not in stage.complex.vertices and isinstance(key, str):
            v = space.vertex_named(level, key)
        resolved[v] = _to_fraction(value)
    return BarycentricPoint(level, resolved, stage.complex)


def carrier(p: BarycentricPoint) -> Simplex:
    """The unique simplex whose relative interior contains p."""
    total = Fraction(0)
    support = set()
    for v, c in p.coords.items():
        c = _to_fraction(c)
        if c < 0:
            raise InvalidPoint(f"negative coordinate at {vlabel(v)}")
        total += c
        if c > 0:
            support.add(v)
    if total != 1:
        raise InvalidPoint(f"coordinates sum to {total}, expected 1")
    s = frozenset(support)
    if s not in p.complex.simplices:
        raise InvalidPoint("support is not a simplex of the underlying complex")
    return s


def barycenter_point(space: PolyhedralSpace, level: int, s: Simplex) -> BarycentricPoint:
    """The uniform-weight point in the relative interior of s."""
    s = frozenset(s)
    w = Fraction(1, len(s))
    return stage_point(space, level, {v: w for v in s})


def push_point(
    space: PolyhedralSpace, p: BarycentricPoint, target_level: int
) -> BarycentricPoint:
    """Re-express a stage point at a finer stage (the identical point of |K|).

    One step works by the descending-coordinate staircase: sorting the
    support by coordinate, the prefix sets form a chain, and the point is
    the combination of their barycenters with weights i*(λ_i - λ_{i+1}).
    """
    if target_level < p.level:
        raise CannotCoarsen("points can only be pushed to finer levels")
    if p.complex != space.stage_complex(p.level):
        raise InvalidPoint("point does not live on a stage of this space")
    q = p
    for level in range(p.level, target_level):
        carrier(q)
        items = sorted(q.coords.items(), key=lambda vc: (-vc[1], vlabel(vc[0])))
        items = [(v, c) for v, c in items if c > 0]
        coords = {}
        prefix: list = []
        for i, (v, c) in enumerate(items):
            prefix.append(v)
            nxt = items[i + 1][1] if i + 1 < len(items) else Fraction(0)
            weight = (c - nxt) * (i + 1)
            if weight > 0:
                coords[Barycenter(frozenset(prefix))] = weight
        q = BarycentricPoint(level + 1, coords, space.stage_complex(level + 1))
    return q


@dataclass(frozen=True)
class StarSet:
    """A union of open vertex stars at a fixed subdivision level."""

    space: PolyhedralSpace
    level: int
    core_vertices: frozenset

    def __repr__(self) -> str:
        names = ",".join(sorted(vlabel(v) for v in self.core_vertices))
        return f"StarSet(level={self.level}, stars={{{names}}})"


def star_set(space: PolyhedralSpace, level: int, cores) -> StarSet:
    """Build a star-set; core entries may be vertex ids or labels."""
    stage = space.stage(level)
    resolved = set()
    for key in cores:
        v = key
        if v not in stage.complex.vertices and isinstance(key, str):
            v = space.vertex_named(level, key)
        if v not in stage.complex.vertices:
            raise ValueError(f"{key!r} is not a vertex of stage {level}")
        resolved.add(v)
    if not resolved:
        raise ValueError("a star-set needs at least one core vertex")
    return StarSet(space, level, frozenset(resolved))


def full_star(space: PolyhedralSpace, level: int) -> StarSet:
    """The whole space as a star-set: stars of every stage vertex."""
    return StarSet(space, level, space.stage_complex(level).vertices)


def star_contains(s: StarSet, p: BarycentricPoint) -> bool:
    """True iff p lies in the union of s's open vertex stars."""
    if p.level != s.level or p.complex != s.space.stage_complex(s.level):
        raise LevelMismatch(
            f"point at level {p.level} vs star-set at level {s.level}; push first"
        )
    return bool(carrier(p) & s.core_vertices)


def push_star(s: StarSet, target_level: int) -> StarSet:
    """Re-express a star-set at a finer level (the identical point set).

    A level-m vertex star equals the union of the level-(m+1) stars of the
    barycenters of all simplices containing the vertex.
    """
    if target_level < s.level:
        raise CannotCoarsen("star-sets can only be pushed to finer levels")
    core = s.core_vertices
    for level in range(s.level, target_level):
        stage = s.space.stage(level)
        core = frozenset(
            Barycenter(t) for t in stage.complex.simplices if t & core
        )
    return StarSet(s.space, target_level, core)


class StarRelation(Enum):
    DISJOINT = "disjoint"
    S1_SUBSET_S2 = "s1_subset_s2"
    S2_SUBSET_S1 = "s2_subset_s1"
    OVERLAPPING = "overlapping"
    EQUAL = "equal"


def star_relation(s1: StarSet, s2: StarSet) -> StarRelation:
    """Exact point-set relation between two star-sets.

    Decided at a common level: the relative interiors of the simplices of
    the stage complex partition |K|, and a star-set is the union of the
    interiors of the simplices meeting its core.
    """
    if s1.space != s2.space:
        raise ValueError("star-sets live on different spaces")
    level = max(s1.level, s2.level)
    a = push_star(s1, level)
    b = push_star(s2, level)
    both = only_a = only_b = False
    for s in s1.space.stage_complex(level).simplices:
        in_a = bool(s & a.core_vertices)
        in_b = bool(s & b.core_vertices)
        if in_a and in_b:
            both = True
        elif in_a:
            only_a = True
        elif in_b:
            only_b = True
    if not both:
        return StarRelation.DISJOINT
    if not only_a and not only_b:
        return StarRelation.EQUAL
    if not only_a:
        return StarRelation.S1_SUBSET_S2
    if not only_b:
        return StarRelation.S2_SUBSET_S1
    return StarRelation.OVERLAPPING


def star_subset(s1: StarSet, s2: StarSet) -> bool:
    return star_relation(s1, s2) in (StarRelation.S1_SUBSET_S2, StarRelation.EQUAL)


def realize_map(g: SimplicialMap, p: BarycentricPoint) -> BarycentricPoint:
    """Apply the affine realisation of g to p: sum coordinates over fibers."""
    support = carrier(p)
    if support not in g.source.simplices:
        raise InvalidPoint("point does not lie on the source complex")
    coords: dict = {}
    for v, c in p.coords.items():
        if c == 0:
            continue
        if v not in g.vertex_images:
            raise IncompleteMap(f"no image for vertex {vlabel(v)}")
        w = g.vertex_images[v]
        coords[w] = coords.get(w, Fraction(0)) + c
    return BarycentricPoint(p.level, coords, g.target)
