"""Finite abstract simplicial complexes: face closure, skeleta, cones,
barycentric subdivision, and simplicial maps.

Vertices are opaque hashable ids.  Simplices are nonempty frozensets of
vertex ids, and a complex stores the full face-closed family.  Subdivision
vertices are `Barycenter` tokens naming the simplex they subdivide, so
stages are reproducible and maps across stages are well-defined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from .errors import ComposeError, IncompleteMap, InvalidComplex, VertexClash

Vertex = Hashable
Simplex = frozenset


@dataclass(frozen=True)
class Barycenter:
    """Vertex token for the barycenter of a previous-stage simplex."""

    of: Simplex

    def __repr__(self) -> str:
        return vlabel(self)


def vlabel(v) -> str:
    """Canonical printable label of a vertex id (injective per stage)."""
    if isinstance(v, Barycenter):
        return "b(" + ",".join(sorted(vlabel(u) for u in v.of)) + ")"
    if isinstance(v, tuple) and len(v) == 2 and isinstance(v[1], int):
        return f"{v[0]}@{v[1]}"
    return str(v)


def simplex_key(s: Simplex):
    """Sort key ordering simplices by dimension, then by vertex labels."""
    return (len(s), sorted(vlabel(v) for v in s))


def simplex_label(s: Simplex) -> str:
    """Printable token for a simplex: its vertex labels joined by '|'."""
    return "|".join(sorted(vlabel(v) for v in s))


@dataclass(frozen=True)
class SimplicialComplex:
    """A face-closed family of nonempty finite vertex sets.

    The empty complex (no simplices at all) is a legal value; it arises as
    the carrier-indexed complex of an uncovered carrier.  `validate_complex`
    is the checked entry point for raw user input.
    """

    simplices: frozenset

    @cached_property
    def vertices(self) -> frozenset:
        out = set()
        for s in self.simplices:
            out.update(s)
        return frozenset(out)

    @property
    def dim(self) -> int:
        """Max simplex cardinality minus one; -1 for the empty complex."""
        if not self.simplices:
            return -1
        return max(len(s) for s in self.simplices) - 1

    def __contains__(self, s) -> bool:
        return frozenset(s) in self.simplices

    def subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices

    def sorted_simplices(self) -> list:
        return sorted(self.simplices, key=simplex_key)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.simplices)} simplices, dim={self.dim})"


EMPTY_COMPLEX = SimplicialComplex(frozenset())


def face_closure(sets: Iterable[Iterable[Vertex]]) -> frozenset:
    """All nonempty subsets of the given vertex sets."""
    out = set()
    for raw in sets:
        s = tuple(raw)
        for r in range(1, len(s) + 1):
            for sub in itertools.combinations(s, r):
                out.add(frozenset(sub))
    return frozenset(out)


def validate_complex(raw: Iterable[Iterable[Vertex]]) -> SimplicialComplex:
    """Face closure of the given vertex sets; idempotent on closed input."""
    members = [frozenset(s) for s in raw]
    if not members:
        raise InvalidComplex("a complex needs at least one simplex")
    for s in members:
        if not s:
            raise InvalidComplex("simplices must be nonempty vertex sets")
    return SimplicialComplex(face_closure(members))


def skeleton(c: SimplicialComplex, k: int) -> SimplicialComplex:
    """The subcomplex of simplices with at most k+1 vertices."""
    if k < 0:
        return EMPTY_COMPLEX
    return SimplicialComplex(frozenset(s for s in c.simplices if len(s) <= k + 1))


def coned(c: SimplicialComplex, v: Vertex) -> SimplicialComplex:
    """Cone formula without the freshness check: c with every simplex
    extended by v, plus {v}.  Idempotent when v is already an apex of c."""
    out = set(c.simplices)
    out.add(frozenset([v]))
    for s in c.simplices:
        out.add(s | {v})
    return SimplicialComplex(frozenset(out))


def cone(c: SimplicialComplex, v: Vertex) -> SimplicialComplex:
    """The cone over c with fresh apex v."""
    if v in c.vertices:
        raise VertexClash(f"vertex {vlabel(v)} already belongs to the complex")
    return coned(c, v)


def maximal_simplices(c: SimplicialComplex) -> list:
    """Simplices of c contained in no other simplex of c, in canonical order."""
    by_size = sorted(c.simplices, key=len, reverse=True)
    out: list = []
    for s in by_size:
        if not any(s < t for t in out):
            out.append(s)
    return sorted(out, key=simplex_key)


@dataclass(frozen=True)
class SimplicialMap:
    """A vertex map between complexes, intended to send simplices to simplices.

    Validity is checked by `check_simplicial_map`, never assumed, so that
    deliberately broken maps can be built and interrogated.
    """

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_images: Mapping

    def image(self, s: Simplex) -> Simplex:
        try:
            return frozenset(self.vertex_images[v] for v in s)
        except KeyError as missing:
            raise IncompleteMap(
                f"no image for vertex {vlabel(missing.args[0])}"
            ) from None


def check_simplicial_map(m: SimplicialMap) -> bool:
    """True iff the image of every source simplex is a target simplex."""
    for v in m.source.vertices:
        if v not in m.vertex_images:
            raise IncompleteMap(f"no image for vertex {vlabel(v)}")
    return all(m.image(s) in m.target.simplices for s in m.source.simplices)


def compose_maps(outer: SimplicialMap, inner: SimplicialMap) -> SimplicialMap:
    """The composite map outer∘inner."""
    if inner.target != outer.source:
        raise ComposeError("inner target differs from outer source")
    images = {v: outer.vertex_images[w] for v, w in inner.vertex_images.items()}
    return SimplicialMap(inner.source, outer.target, images)


def identity_map(c: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(c, c, {v: v for v in c.vertices})


@dataclass(frozen=True)
class SubdivisionStage:
    """One stage of the barycentric subdivision tower.

    Level-m vertices are Barycenter tokens over level-(m-1) simplices;
    level-m simplices are the chains of level-(m-1) simplices.  At level 0
    the carrier map is empty (base vertices subdivide nothing).
    """

    level: int
    complex: SimplicialComplex
    carrier_of_vertex: Mapping


def initial_stage(c: SimplicialComplex) -> SubdivisionStage:
    return SubdivisionStage(0, c, {})


def subdivide(stage: SubdivisionStage) -> SubdivisionStage:
    """The next barycentric subdivision stage.

    New simplices are exactly the chains s0 ⊂ s1 ⊂ … ⊂ sk of current-stage
    simplices, each chain member replaced by its Barycenter token.
    """
    current = sorted(stage.complex.simplices, key=len)
    chains_ending: dict = {}
    for s in current:
        ordered = sorted(s, key=vlabel)
        ending = [(s,)]
        for r in range(1, len(s)):
            for sub in itertools.combinations(ordered, r):
                t = frozenset(sub)
                ending.extend(ch + (s,) for ch in chains_ending[t])
        chains_ending[s] = ending

    new_simplices = set()
    for ending in chains_ending.values():
        for ch in ending:
            new_simplices.add(frozenset(Barycenter(s) for s in ch))
    carriers = {Barycenter(s): s for s in stage.complex.simplices}
    return SubdivisionStage(
        stage.level + 1, SimplicialComplex(frozenset(new_simplices)), carriers
    )
