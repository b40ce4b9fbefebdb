"""Canonical maps into nerves, selection predicates, refinement transfer,
cone extension, and carrier-indexed mapping tables.

A canonical map is stored as a simplicial map from a subdivision stage
into a nerve complex: preimages of open vertex stars are then star-sets
on the nose, and the defining containment condition is decidable with no
tolerance.  The two predicates `is_canonical` and `is_selection` are
provably equivalent for arbitrary vertex maps; both are implemented
independently so the equivalence stays testable.

Carrier mapping tables model lower locally constant set-valued mappings:
a monotone assignment from working-stage simplices to subcomplexes of a
fixed target.  A cone witness - one target vertex coning each table into
the next - is the implemented form of asphericity; witnesses are
verified, never discovered.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    SimplicialComplex,
    SimplicialMap,
    Simplex,
    cone,
    coned,
    maximal_simplices,
    simplex_key,
    vlabel,
)
from .covers import (
    DELTA,
    CoverSequence,
    IndexedNerve,
    _check_kappa,
    cover_sequence,
    delta_subcomplex,
    nerve,
)
from .errors import (
    ArityError,
    ComposeError,
    DisjointnessRequired,
    EmptyValue,
    LevelBudgetExceeded,
    LevelMismatch,
    NoConeWitness,
    NoCoverage,
    NotCanonical,
    SkeletonViolation,
    UnknownCoverElement,
    WitnessFailure,
)
from .realization import PolyhedralSpace, StarSet, StarRelation, push_star, star_relation

DEFAULT_MAX_LEVEL = 8


@dataclass(frozen=True)
class CanonicalMap:
    """A simplicial map from a subdivision stage into a nerve complex."""

    subdivision_level: int
    map: SimplicialMap
    target: IndexedNerve


def _pushed_cores(cs: CoverSequence, kappa: int, level: int) -> dict:
    """Core vertex sets of the first kappa levels, re-expressed at `level`."""
    out = {}
    for eid, n, star in cs.elements(kappa):
        out[(eid, n)] = push_star(star, level).core_vertices
    return out


def _shrunk(complex: SimplicialComplex, core: frozenset) -> frozenset:
    """Vertices whose whole open star lies inside the star-set with this core:
    the complement of the union of core-missing simplices."""
    outside = set()
    for s in complex.simplices:
        if not (s & core):
            outside.update(s)
    return complex.vertices - frozenset(outside)


def _stage_of_map(f: CanonicalMap, cs: CoverSequence) -> SimplicialComplex:
    if f.subdivision_level < cs.working_level:
        raise LevelMismatch("map is defined on a coarser stage than the cover")
    stage = cs.space.stage_complex(f.subdivision_level)
    if f.map.source != stage:
        raise LevelMismatch("map source is not a stage of the cover's space")
    return stage


def _fibers(f: CanonicalMap, cs: CoverSequence, kappa: int) -> dict:
    valid = {(eid, n) for eid, n, _ in cs.elements(kappa)}
    fibers: dict = {}
    for v, image in f.map.vertex_images.items():
        if image not in valid:
            raise UnknownCoverElement(f"image {image!r} names no cover element")
        fibers.setdefault(image, set()).add(v)
    return fibers


def is_canonical(f: CanonicalMap, cs: CoverSequence, kappa: int | None = None) -> bool:
    """True iff every vertex-star preimage sits inside its cover element.

    For a simplicial map the preimage of the open star of vertex (U, n) is
    the star-set whose core is the fiber over (U, n), so the condition is
    a per-element star-set containment.
    """
    return why_not_canonical(f, cs, kappa) is None


def why_not_canonical(
    f: CanonicalMap, cs: CoverSequence, kappa: int | None = None
) -> dict | None:
    """None when canonical, else a witness locating the first violation."""
    kappa = _check_kappa(cs, kappa)
    stage = _stage_of_map(f, cs)
    cores = _pushed_cores(cs, kappa, f.subdivision_level)
    fibers = _fibers(f, cs, kappa)
    for element in sorted(fibers, key=lambda e: (e[1], e[0])):
        allowed = _shrunk(stage, cores[element])
        stray = fibers[element] - allowed
        if stray:
            v = sorted(stray, key=vlabel)[0]
            return {
                "element": list(element),
                "vertex": vlabel(v),
                "reason": "star of the fiber is not inside the element",
            }
    return None


def is_selection(f: CanonicalMap, cs: CoverSequence, kappa: int | None = None) -> bool:
    """True iff each source simplex meets the core of every element it maps to.

    This is the kernel condition: the image of a point must lie in the
    realized complex of simplices whose kernel contains the point.
    """
    return why_not_selection(f, cs, kappa) is None


def why_not_selection(
    f: CanonicalMap, cs: CoverSequence, kappa: int | None = None
) -> dict | None:
    kappa = _check_kappa(cs, kappa)
    _stage_of_map(f, cs)
    cores = _pushed_cores(cs, kappa, f.subdivision_level)
    for tau in sorted(f.map.source.simplices, key=simplex_key):
        for element in sorted(f.map.image(tau), key=lambda e: (e[1], e[0])):
            if element not in cores:
                raise UnknownCoverElement(f"image {element!r} names no cover element")
            if not (tau & cores[element]):
                return {
                    "simplex": sorted(vlabel(v) for v in tau),
                    "element": list(element),
                    "reason": "simplex misses the core of an element it maps to",
                }
    return None


def _check_disjoint_levels(cs: CoverSequence, kappa: int) -> None:
    for n in range(kappa):
        family = cs.levels[n]
        for i in range(len(family)):
            for j in range(i + 1, len(family)):
                rel = star_relation(family[i][1], family[j][1])
                if rel is not StarRelation.DISJOINT:
                    raise DisjointnessRequired(
                        f"elements {family[i][0]!r} and {family[j][0]!r} at level "
                        f"{n} are not disjoint"
                    )


def build_canonical(
    cs: CoverSequence,
    kappa: int | None = None,
    target_kind: str = DELTA,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> CanonicalMap:
    """Construct a canonical map by subdividing until every vertex star fits
    inside some element, then assigning each vertex the smallest such
    (level, id) element.

    For a one-per-level target the prefix must be pairwise-disjoint per
    level; the assignment map then lands in the subcomplex automatically.
    """
    kappa = _check_kappa(cs, kappa)
    covered = set()
    for _, _, star in cs.elements(kappa):
        covered.update(star.core_vertices)
    if not cs.working_complex().vertices <= covered:
        raise NoCoverage(f"the first {kappa} levels do not cover the space")
    if target_kind == DELTA:
        _check_disjoint_levels(cs, kappa)
        target = delta_subcomplex(cs, kappa)
    else:
        target = nerve(cs, kappa)

    order = sorted(
        ((eid, n) for eid, n, _ in cs.elements(kappa)), key=lambda e: (e[1], e[0])
    )
    for level in range(cs.working_level, max_level + 1):
        stage = cs.space.stage_complex(level)
        cores = _pushed_cores(cs, kappa, level)
        shrunk = {element: _shrunk(stage, cores[element]) for element in order}
        images = {}
        for v in stage.vertices:
            chosen = next((e for e in order if v in shrunk[e]), None)
            if chosen is None:
                images = None
                break
            images[v] = chosen
        if images is not None:
            return CanonicalMap(level, SimplicialMap(stage, target.complex, images), target)
    raise LevelBudgetExceeded(
        f"no canonical assignment up to subdivision level {max_level}"
    )


def transfer_selection(h: CanonicalMap, r: SimplicialMap) -> CanonicalMap:
    """Compose a canonical map with a refinement map into the coarser nerve."""
    if h.map.target != r.source:
        raise ComposeError("refinement map does not start at the map's nerve")
    images = {v: r.vertex_images[w] for v, w in h.map.vertex_images.items()}
    composed = SimplicialMap(h.map.source, r.target, images)
    return CanonicalMap(
        h.subdivision_level, composed, IndexedNerve(r.target, h.target.kind)
    )


def extract_c_refinement(
    f: CanonicalMap, cs: CoverSequence, kappa: int | None = None
) -> list:
    """Star-set preimage families of a canonical map into the one-per-level
    nerve: per level, the fibers over its elements (empty fibers dropped).

    Same-level fibers are pairwise disjoint because two same-level vertices
    never share an image simplex in the one-per-level complex; each fiber's
    star sits inside its element by the canonical condition.
    """
    kappa = _check_kappa(cs, kappa)
    if f.target.kind != DELTA:
        raise NotCanonical("extraction needs a map into the one-per-level nerve")
    if not is_canonical(f, cs, kappa):
        raise NotCanonical("the map fails the canonical-map predicate")
    fibers = _fibers(f, cs, kappa)
    families = []
    for n in range(kappa):
        row = []
        for eid, _star in cs.levels[n]:
            core = fibers.get((eid, n))
            if core:
                row.append(
                    (eid, StarSet(cs.space, f.subdivision_level, frozenset(core)))
                )
        families.append(tuple(row))
    return families


def cone_extend(
    g: SimplicialMap, v, q, chain: list[SimplicialComplex]
) -> SimplicialMap:
    """Extend g over the cone with apex v by sending v to the witness q.

    `chain` lists nested subcomplexes S_0 ⊆ … ⊆ S_{n+1} of the target with
    dim(source) ≤ n; g must map every k-skeleton into S_k, and q must cone
    each S_k into S_{k+1} (verified, else WitnessFailure).  Every new
    simplex s ∪ {v} then maps into S_{card(s)}; the bare apex lands in S_1,
    and in S_0 exactly when q already belongs to S_0.
    """
    if len(chain) < 2:
        raise SkeletonViolation("the chain needs at least two members")
    n = len(chain) - 2
    target = g.target
    if frozenset([q]) not in target.simplices:
        raise ValueError(f"witness {vlabel(q)} is not a vertex of the target")
    for i, s_k in enumerate(chain):
        if not s_k.subcomplex_of(target):
            raise ValueError(f"chain member {i} is not a subcomplex of the target")
    if g.source.dim > n:
        raise SkeletonViolation(
            f"source dimension {g.source.dim} exceeds chain bound {n}"
        )
    for k in range(n + 1):
        for s in g.source.simplices:
            if len(s) <= k + 1 and g.image(s) not in chain[k].simplices:
                raise SkeletonViolation(
                    f"image of {sorted(vlabel(u) for u in s)} is outside chain member {k}"
                )
    for k in range(n + 1):
        if not coned(chain[k], q).subcomplex_of(chain[k + 1]):
            raise WitnessFailure(
                f"coning chain member {k} by {vlabel(q)} leaves chain member {k + 1}"
            )
    extended = cone(g.source, v)
    images = dict(g.vertex_images)
    images[v] = q
    return SimplicialMap(extended, target, images)


@dataclass(frozen=True)
class CarrierMappingSequence:
    """Carrier-indexed tables modelling a sequence of lower locally constant
    set-valued mappings into a fixed target complex.

    `tables[k]` assigns to every working-stage simplex a nonempty
    subcomplex of the target; values are monotone in the carrier.  An
    optional cone witness q certifies that each table cones into the next.
    """

    space: PolyhedralSpace
    level: int
    target: SimplicialComplex
    tables: tuple
    cone_witness: object = None


def carrier_tables(
    space: PolyhedralSpace,
    level: int,
    target: SimplicialComplex,
    tables,
    cone_witness=None,
) -> CarrierMappingSequence:
    """Validate and freeze a carrier mapping sequence."""
    stage = space.stage_complex(level)
    frozen = []
    for k, table in enumerate(tables):
        for tau in stage.simplices:
            if tau not in table:
                raise ArityError(f"table {k} misses a value for some carrier")
        for tau, value in table.items():
            if not value.simplices:
                raise EmptyValue(f"table {k} assigns an empty complex")
            if not value.subcomplex_of(target):
                raise ValueError(f"table {k} value is not a subcomplex of the target")
        frozen.append(dict(table))
    simplices = sorted(stage.simplices, key=simplex_key)
    for k, table in enumerate(frozen):
        for i, tau in enumerate(simplices):
            for sigma in simplices[i + 1 :]:
                if tau < sigma and not table[tau].subcomplex_of(table[sigma]):
                    raise ValueError(
                        f"table {k} is not carrier-monotone at a face inclusion"
                    )
    if cone_witness is not None:
        if frozenset([cone_witness]) not in target.simplices:
            raise NoConeWitness("the witness is not a vertex of the target")
        for k in range(len(frozen) - 1):
            for tau in simplices:
                if not coned(frozen[k][tau], cone_witness).subcomplex_of(
                    frozen[k + 1][tau]
                ):
                    raise WitnessFailure(
                        f"witness fails to cone table {k} into table {k + 1}"
                    )
    return CarrierMappingSequence(
        space, level, target, tuple(frozen), cone_witness
    )


def vertex_selection(phi: CarrierMappingSequence):
    """The star cover of the working stage with one target vertex per star,
    chosen as the least vertex of the table value at the singleton carrier.

    Carrier monotonicity makes the choice correct: any point of st(v) has a
    carrier containing v, so its table value contains the chosen vertex.
    """
    table = phi.tables[0]
    stage = phi.space.stage_complex(phi.level)
    family = []
    vertex_map = {}
    for v in sorted(stage.vertices, key=vlabel):
        value = table[frozenset([v])]
        if not value.simplices:
            raise EmptyValue("empty table value at a singleton carrier")
        eid = vlabel(v)
        family.append((eid, StarSet(phi.space, phi.level, frozenset([v]))))
        vertex_map[eid] = min(value.vertices, key=vlabel)
    return family, vertex_map


def bootstrap_skeletal_selection(phi: CarrierMappingSequence):
    """Package `vertex_selection` output as a one-level cover sequence and a
    simplicial map on its one-per-level complex."""
    family, vertex_map = vertex_selection(phi)
    cs = cover_sequence(phi.space, [family])
    source = delta_subcomplex(cs, 1).complex
    images = {(eid, 0): vertex_map[eid] for eid in vertex_map}
    return cs, SimplicialMap(source, phi.target, images)


def _kernel_carriers(cs: CoverSequence, sigma: Simplex) -> list:
    cores = [cs.core(eid, n) for eid, n in sigma]
    return [
        tau
        for tau in cs.working_complex().simplices
        if all(tau & c for c in cores)
    ]


def is_skeletal_selection(
    f: SimplicialMap, cs: CoverSequence, phi: CarrierMappingSequence
) -> bool:
    """True iff every k-skeleton simplex of the prefix complex maps into
    table k over every carrier in its kernel, for every k up to the number
    of levels minus one."""
    n = cs.num_levels - 1
    if len(phi.tables) < n + 1:
        raise ArityError(f"need {n + 1} tables for {n + 1} cover levels")
    if f.source != delta_subcomplex(cs, n + 1).complex:
        raise ArityError("map is not defined on the prefix complex")
    if cs.space != phi.space or cs.working_level != phi.level:
        raise ArityError("cover and tables disagree on the working stage")
    for sigma in f.source.simplices:
        image = f.image(sigma)
        carriers = _kernel_carriers(cs, sigma)
        for k in range(len(sigma) - 1, n + 1):
            for tau in carriers:
                if image not in phi.tables[k][tau].simplices:
                    return False
    return True


def is_setvalued_selection(
    f: SimplicialMap, cs: CoverSequence, phi: CarrierMappingSequence, n: int
) -> bool:
    """True iff the whole level-≤n prefix complex maps into table n over
    every kernel carrier: the composite carrier-indexed mapping is a
    selection for the level-n tables."""
    if n >= len(phi.tables) or n >= cs.num_levels:
        raise ArityError("n exceeds the tables or the cover levels")
    prefix = delta_subcomplex(cs, n + 1).complex
    for sigma in prefix.simplices:
        image = f.image(sigma)
        for tau in _kernel_carriers(cs, sigma):
            if image not in phi.tables[n][tau].simplices:
                return False
    return True


def extend_skeletal_selection(
    f: SimplicialMap, cs: CoverSequence, phi: CarrierMappingSequence
):
    """Append the star cover of the working stage as a new level and extend
    f by sending every new vertex to the cone witness.

    New simplices s ∪ {new} map to image(s) ∪ {q}, which the witness puts
    in the next table; for the predicate to survive at the new vertices
    themselves the witness must already sit in every level-0 table value.
    """
    n = cs.num_levels - 1
    if phi.cone_witness is None:
        raise NoConeWitness("extension needs a cone witness")
    if len(phi.tables) < n + 2:
        raise ArityError(f"need {n + 2} tables to extend past level {n}")
    q = phi.cone_witness
    stage = phi.space.stage_complex(phi.level)
    for tau in stage.simplices:
        if frozenset([q]) not in phi.tables[0][tau].simplices:
            raise NoConeWitness(
                "the witness vertex is missing from a level-0 table value"
            )
    if not is_skeletal_selection(f, cs, phi):
        raise ValueError("the input map is not a skeletal selection")
    new_family = [
        (vlabel(v), StarSet(phi.space, phi.level, frozenset([v])))
        for v in sorted(stage.vertices, key=vlabel)
    ]
    extended = cover_sequence(cs.space, list(cs.levels) + [new_family])
    source = delta_subcomplex(extended, n + 2).complex
    images = dict(f.vertex_images)
    for eid, _ in new_family:
        images[(eid, n + 1)] = q
    return extended, SimplicialMap(source, phi.target, images)
