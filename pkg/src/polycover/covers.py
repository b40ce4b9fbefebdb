"""Indexed sequences of star-set covers, kernels, nerves, and the
one-vertex-per-level subcomplex of the indexed nerve.

A cover sequence indexes finitely many families of star-sets over one
polyhedral space.  Nerve vertices are (element-id, level) pairs: the
families enter as a disjoint union, so equal point sets at different
levels stay distinct vertices.  `unindexed_delta` is the deliberately
broken variant that deduplicates across levels; it exists as the
counterexample testbed for prefix monotonicity.

Every kernel decision reduces to one fact: a point with carrier tau lies
in a star-set iff tau meets its core, so the kernel of a vertex set is
nonempty iff some working-stage simplex meets every core.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .complexes import (
    SimplicialComplex,
    SimplicialMap,
    Simplex,
    maximal_simplices,
    simplex_key,
)
from .errors import (
    EmptyPrefix,
    NoCoverage,
    NotARefinement,
    UnknownCarrier,
    UnknownCoverElement,
)
from .realization import PolyhedralSpace, StarSet, push_star, star_subset

FULL_NERVE = "full_nerve"
DELTA = "delta"


@dataclass(frozen=True)
class CoverSequence:
    """Finitely many levels of named star-sets over one space.

    All star-sets are normalized to a single working level at construction.
    Element ids are unique within a level; the identity of a nerve vertex
    is the pair (id, level).  The union over all levels covers the space;
    individual levels need not cover on their own.
    """

    space: PolyhedralSpace
    working_level: int
    levels: tuple

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    def elements(self, kappa: int | None = None):
        """Iterate (id, level, star) over the first kappa levels."""
        end = self.num_levels if kappa is None else kappa
        for n in range(end):
            for eid, star in self.levels[n]:
                yield eid, n, star

    def core(self, eid: str, n: int) -> frozenset:
        for candidate, star in self.levels[n]:
            if candidate == eid:
                return star.core_vertices
        raise UnknownCoverElement(f"no element {eid!r} at level {n}")

    def working_complex(self) -> SimplicialComplex:
        return self.space.stage_complex(self.working_level)


def cover_sequence(space: PolyhedralSpace, levels) -> CoverSequence:
    """Normalize and validate a cover sequence.

    `levels` is a list of families; each family lists (id, StarSet) pairs.
    Raises NoCoverage when some stage vertex lies in no element at all.
    """
    if not levels:
        raise EmptyPrefix("a cover sequence needs at least one level")
    working = 0
    for family in levels:
        for _, star in family:
            if star.space != space:
                raise ValueError("star-set belongs to a different space")
            working = max(working, star.level)
    normalized = []
    for n, family in enumerate(levels):
        seen = set()
        row = []
        for eid, star in family:
            if not isinstance(eid, str):
                raise ValueError("element ids must be strings")
            if eid in seen:
                raise ValueError(f"duplicate element id {eid!r} at level {n}")
            seen.add(eid)
            row.append((eid, push_star(star, working)))
        normalized.append(tuple(sorted(row, key=lambda e: e[0])))
    covered = set()
    for family in normalized:
        for _, star in family:
            covered.update(star.core_vertices)
    missing = space.stage_complex(working).vertices - covered
    if missing:
        from .complexes import vlabel

        name = sorted(vlabel(v) for v in missing)[0]
        raise NoCoverage(f"vertex {name} lies in no cover element")
    return CoverSequence(space, working, tuple(normalized))


def pad_levels(cs: CoverSequence, count: int) -> CoverSequence:
    """Extend the sequence to `count` levels by repeating the last family."""
    if count <= cs.num_levels:
        return cs
    levels = cs.levels + (cs.levels[-1],) * (count - cs.num_levels)
    return CoverSequence(cs.space, cs.working_level, levels)


def level_covers(cs: CoverSequence, n: int) -> bool:
    """True iff level n covers the space on its own."""
    covered = set()
    for _, star in cs.levels[n]:
        covered.update(star.core_vertices)
    return cs.working_complex().vertices <= covered


@dataclass(frozen=True)
class IndexedNerve:
    """The nerve of a cover-sequence prefix, or its one-per-level subcomplex."""

    complex: SimplicialComplex
    kind: str


def _check_kappa(cs: CoverSequence, kappa: int | None) -> int:
    if kappa is None:
        return cs.num_levels
    if kappa < 1:
        raise EmptyPrefix("kappa must be at least 1")
    if kappa > cs.num_levels:
        raise ValueError(f"kappa={kappa} exceeds the {cs.num_levels} levels present")
    return kappa


def _hit(cs: CoverSequence, kappa: int, tau: Simplex) -> frozenset:
    """All (id, n) with n < kappa whose core meets tau."""
    out = set()
    for eid, n, star in cs.elements(kappa):
        if tau & star.core_vertices:
            out.add((eid, n))
    return frozenset(out)


def kernel_query(cs: CoverSequence, sigma) -> Simplex | None:
    """A working-stage simplex meeting every element of sigma, or None.

    The returned simplex witnesses a nonempty kernel: every point in its
    relative interior lies in all the named star-sets.
    """
    cores = []
    for eid, n in sigma:
        if not (0 <= n < cs.num_levels):
            raise UnknownCoverElement(f"no level {n} in this sequence")
        cores.append(cs.core(eid, n))
    for tau in sorted(cs.working_complex().simplices, key=simplex_key):
        if all(tau & c for c in cores):
            return tau
    return None


@lru_cache(maxsize=256)
def _nerve_simplices(cs: CoverSequence, kappa: int) -> frozenset:
    out: set = set()
    for tau in maximal_simplices(cs.working_complex()):
        hit = sorted(_hit(cs, kappa, tau))
        for r in range(1, len(hit) + 1):
            for sub in itertools.combinations(hit, r):
                out.add(frozenset(sub))
    return frozenset(out)


def nerve(cs: CoverSequence, kappa: int | None = None) -> IndexedNerve:
    """The nerve of the first kappa levels, indexed by (id, level) pairs.

    Simplices are exactly the kernel-nonempty vertex sets.  Since the
    interiors of working-stage simplices partition the space, these are
    the subsets of some maximal simplex's hit set.
    """
    kappa = _check_kappa(cs, kappa)
    return IndexedNerve(SimplicialComplex(_nerve_simplices(cs, kappa)), FULL_NERVE)


def delta_subcomplex(cs: CoverSequence, kappa: int | None = None) -> IndexedNerve:
    """The subcomplex of the nerve with at most one vertex per level."""
    kappa = _check_kappa(cs, kappa)
    kept = set()
    for s in _nerve_simplices(cs, kappa):
        ns = [n for _, n in s]
        if len(set(ns)) == len(ns):
            kept.add(s)
    return IndexedNerve(SimplicialComplex(frozenset(kept)), DELTA)


def delta_at_carrier(
    cs: CoverSequence, kappa: int | None, tau: Simplex
) -> SimplicialComplex:
    """The one-per-level simplices whose kernel contains the interior of tau.

    This is the carrier-indexed value shared by every point with carrier
    tau; it may be empty when the prefix misses tau entirely.
    """
    kappa = _check_kappa(cs, kappa)
    tau = frozenset(tau)
    if tau not in cs.working_complex().simplices:
        raise UnknownCarrier("tau is not a simplex of the working stage")
    per_level = []
    for n in range(kappa):
        ids = sorted(
            eid for eid, star in cs.levels[n] if tau & star.core_vertices
        )
        per_level.append([None] + [(eid, n) for eid in ids])
    out = set()
    for combo in itertools.product(*per_level):
        s = frozenset(v for v in combo if v is not None)
        if s:
            out.add(s)
    return SimplicialComplex(frozenset(out))


def refinement_map(
    fine: CoverSequence, coarse: CoverSequence, kappa: int | None = None
) -> SimplicialMap:
    """Level-preserving vertex map sending each fine element to a coarse
    element containing it (smallest id among the candidates).

    The result is a simplicial map between the one-per-level complexes
    (and between the full nerves): kernels only grow along containment.
    """
    if fine.space != coarse.space:
        raise ValueError("cover sequences live on different spaces")
    kappa_f = _check_kappa(fine, kappa)
    kappa_c = _check_kappa(coarse, kappa)
    if kappa_f != kappa_c:
        raise ValueError("prefix lengths differ")
    images = {}
    for n in range(kappa_f):
        for eid, star in fine.levels[n]:
            chosen = None
            for cid, cstar in coarse.levels[n]:
                if star_subset(star, cstar):
                    chosen = cid
                    break
            if chosen is None:
                raise NotARefinement(
                    f"element {eid!r} at level {n} fits inside no coarse element"
                )
            images[(eid, n)] = (chosen, n)
    source = delta_subcomplex(fine, kappa_f).complex
    target = delta_subcomplex(coarse, kappa_c).complex
    return SimplicialMap(source, target, images)


def unindexed_delta(cs: CoverSequence, kappa: int | None = None) -> SimplicialComplex:
    """The one-per-level construction over deduplicated raw point sets.

    Vertices are element point sets, merged across levels; a vertex counts
    against every level containing that point set.  Provided solely as the
    counterexample testbed: prefixes of this variant are not monotone.
    """
    kappa = _check_kappa(cs, kappa)
    rep: dict = {}
    member_sets: list = []
    for n in range(kappa):
        members = set()
        for eid, star in cs.levels[n]:
            key = star.core_vertices
            if key not in rep:
                rep[key] = f"{eid}@{n}"
            members.add(rep[key])
        member_sets.append(members)
    core_of = {name: key for key, name in rep.items()}
    out = set()
    for tau in maximal_simplices(cs.working_complex()):
        hit = sorted(name for name, key in core_of.items() if tau & key)
        for r in range(1, len(hit) + 1):
            for sub in itertools.combinations(hit, r):
                if all(len(set(sub) & members) <= 1 for members in member_sets):
                    out.add(frozenset(sub))
    return SimplicialComplex(frozenset(out))
