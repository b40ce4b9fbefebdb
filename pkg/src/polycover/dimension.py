"""Disjoint refinement families, their constructor and exhaustive search,
the dimension oracle, and the parametric equivalence driver.

A C-refinement of a cover sequence is a finite list of pairwise-disjoint
star-set families, one refining each level, jointly covering the space.
`ostrand_refine` builds one with dim+1 families from barycenter dimension
classes; `search_c_refinement` decides existence for a given family count
by exhaustive, audited search over vertex assignments at bounded
subdivision levels.  Exhaustion is a semi-decision relative to the
star-set model and the level bound, never a claim about all refinements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import Barycenter, check_simplicial_map, simplex_key, vlabel
from .covers import (
    DELTA,
    CoverSequence,
    cover_sequence,
    level_covers,
    pad_levels,
    refinement_map,
)
from .errors import (
    DimensionTooLow,
    LevelBudgetExceeded,
    NoCoverage,
)
from .realization import PolyhedralSpace, StarSet, push_star, star_subset
from .selections import (
    DEFAULT_MAX_LEVEL,
    _shrunk,
    build_canonical,
    extract_c_refinement,
    is_canonical,
    is_selection,
    transfer_selection,
)


@dataclass(frozen=True)
class CRefinement:
    """Pairwise-disjoint star-set families witnessing a cover sequence's
    refinement; `families[n]` refines level n of `source`."""

    families: tuple
    kappa: int
    source: CoverSequence


@dataclass(frozen=True)
class RefinementReport:
    """Outcome of `verify_c_refinement`; falsy reports carry a witness."""

    ok: bool
    failure: str | None = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def refinement_as_cover(r: CRefinement) -> CoverSequence:
    """Treat the refinement's families as the levels of a cover sequence."""
    return cover_sequence(r.source.space, [list(f) for f in r.families])


def verify_c_refinement(r: CRefinement) -> RefinementReport:
    """Check disjointness per family, per-level refinement, and coverage.

    All three checks are exact simplex combinatorics at a common level;
    the first violation is reported with a witness.
    """
    space = r.source.space
    level = r.source.working_level
    for family in r.families:
        for _, star in family:
            level = max(level, star.level)
    stage = space.stage_complex(level)

    pushed = [
        [(eid, push_star(star, level).core_vertices) for eid, star in family]
        for family in r.families
    ]
    for n, family in enumerate(pushed):
        for tau in stage.simplices:
            met = [eid for eid, core in family if tau & core]
            if len(met) > 1:
                return RefinementReport(
                    False,
                    "overlap",
                    {"level": n, "elements": met[:2]},
                )

    source = pad_levels(r.source, r.kappa)
    for n, family in enumerate(r.families):
        for eid, star in family:
            if not any(
                star_subset(star, coarse) for _, coarse in source.levels[n]
            ):
                return RefinementReport(
                    False, "not_a_refinement", {"level": n, "element": eid}
                )

    covered: set = set()
    for family in pushed:
        for _, core in family:
            covered.update(core)
    missing = stage.vertices - covered
    if missing:
        v = sorted(missing, key=vlabel)[0]
        return RefinementReport(False, "uncovered", {"vertex": vlabel(v)})
    return RefinementReport(True)


def dim_oracle(space: PolyhedralSpace) -> int:
    """Covering dimension of the ground space: max base cardinality - 1."""
    return space.base.dim


def ostrand_refine(
    cs: CoverSequence, n: int, max_level: int = DEFAULT_MAX_LEVEL
) -> CRefinement:
    """Build n+1 disjoint families from barycenter dimension classes.

    Subdivide until every vertex star fits inside some element of every
    level (the Lebesgue step), subdivide once more, and let family k hold
    the stars of the barycenters of the k-dimensional simplices.  Equal
    dimension barycenters are never adjacent, which gives disjointness;
    each such star sits inside the pushed star of any vertex of its
    simplex, which gives the refinement.
    """
    space = cs.space
    if n < dim_oracle(space):
        raise DimensionTooLow(
            f"{n + 1} families cannot refine a {dim_oracle(space)}-dimensional space"
        )
    padded = pad_levels(cs, n + 1)
    for k in range(n + 1):
        if not level_covers(padded, k):
            raise NoCoverage(f"level {k} does not cover the space")

    lebesgue = None
    for m in range(cs.working_level, max_level):
        stage = space.stage_complex(m)
        fine_enough = True
        for k in range(n + 1):
            fitting: set = set()
            for _, star in padded.levels[k]:
                core = push_star(star, m).core_vertices
                fitting.update(_shrunk(stage, core))
            if not stage.vertices <= fitting:
                fine_enough = False
                break
        if fine_enough:
            lebesgue = m
            break
    if lebesgue is None:
        raise LevelBudgetExceeded(
            f"no fine enough stage up to level {max_level - 1}"
        )

    mstar = lebesgue + 1
    stage = space.stage_complex(lebesgue)
    families = []
    for k in range(n + 1):
        row = []
        for s in sorted(
            (s for s in stage.simplices if len(s) == k + 1), key=simplex_key
        ):
            b = Barycenter(s)
            row.append((vlabel(b), StarSet(space, mstar, frozenset([b]))))
        families.append(tuple(row))
    return CRefinement(tuple(families), n + 1, cs)


@dataclass(frozen=True)
class SearchAudit:
    level: int
    nodes: int
    prunes: int
    found: bool


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "exhausted"
    level: int | None
    refinement: CRefinement | None
    audits: tuple = field(default_factory=tuple)


def _search_at_level(cs: CoverSequence, kappa: int, level: int):
    """Exhaustive assignment search at one subdivision level.

    Complete for star-set families at this level: any valid family
    sequence induces a total assignment of stage vertices to families
    whose per-family adjacency components each fit inside one source
    element, and conversely every such assignment yields a valid
    refinement with the components as elements.
    """
    space = cs.space
    common = max(level, cs.working_level)
    stage = space.stage_complex(level)
    verts = sorted(stage.vertices, key=vlabel)
    index = {v: i for i, v in enumerate(verts)}
    nv = len(verts)

    adj = [0] * nv
    for s in stage.simplices:
        bits = 0
        for v in s:
            bits |= 1 << index[v]
        for v in s:
            adj[index[v]] |= bits

    common_stage = space.stage_complex(common)
    padded = pad_levels(cs, kappa)
    shrunk_sets = []
    for fam in range(kappa):
        row = []
        for _, star in padded.levels[fam]:
            core = push_star(star, common).core_vertices
            row.append(_shrunk(common_stage, core))
        shrunk_sets.append(row)

    pushed = [
        push_star(StarSet(space, level, frozenset([v])), common).core_vertices
        for v in verts
    ]
    pv = [[0] * kappa for _ in range(nv)]
    for i in range(nv):
        for fam in range(kappa):
            mask = 0
            for j, sh in enumerate(shrunk_sets[fam]):
                if pushed[i] <= sh:
                    mask |= 1 << j
            pv[i][fam] = mask

    # Families whose element point sets agree are interchangeable; breaking
    # that symmetry (a class member may only be opened after every earlier
    # member of its class) preserves satisfiability.
    signatures = [
        tuple(sorted(tuple(sorted(vlabel(v) for v in sh)) for sh in row))
        for row in shrunk_sets
    ]
    earlier_twins = [
        [g for g in range(fam) if signatures[g] == signatures[fam]]
        for fam in range(kappa)
    ]

    label_rank = sorted(range(nv), key=lambda i: vlabel(verts[i]))
    rank_of = [0] * nv
    for r, i in enumerate(label_rank):
        rank_of[i] = r

    family_of = [-1] * nv
    comp_root = [-1] * nv
    comp_mask: dict = {}
    comp_poss: dict = {}
    assigned = [0] * kappa
    counters = {"nodes": 0, "prunes": 0}
    solution: list = []

    def narrowed(i: int, fam: int) -> int:
        """Possible elements for i's would-be component in family fam."""
        poss = pv[i][fam]
        if poss == 0:
            return 0
        rest = adj[i] & assigned[fam]
        while rest and poss:
            bit = rest & (-rest)
            rest ^= bit
            root = comp_root[bit.bit_length() - 1]
            poss &= comp_poss[root]
            rest &= ~comp_mask[root]
        return poss

    def extract_solution():
        families = []
        for fam in range(kappa):
            roots = sorted(
                {comp_root[i] for i in range(nv) if family_of[i] == fam}
            )
            row = []
            for root in roots:
                members = frozenset(
                    verts[i] for i in range(nv) if comp_mask[root] >> i & 1
                )
                eid = min((vlabel(v) for v in members))
                row.append((eid, StarSet(space, level, members)))
            families.append(tuple(sorted(row, key=lambda e: e[0])))
        solution.append(tuple(families))

    def dfs(unassigned: int) -> bool:
        if unassigned == 0:
            extract_solution()
            return True
        # Most-constrained vertex first; a vertex with no viable family
        # kills the whole branch.
        best = None
        best_options: list = []
        rest = unassigned
        while rest:
            bit = rest & (-rest)
            rest ^= bit
            i = bit.bit_length() - 1
            options = [fam for fam in range(kappa) if narrowed(i, fam)]
            if not options:
                counters["prunes"] += 1
                return False
            if (
                best is None
                or len(options) < len(best_options)
                or (len(options) == len(best_options) and rank_of[i] < rank_of[best])
            ):
                best, best_options = i, options
        i = best
        for fam in best_options:
            if assigned[fam] == 0 and any(
                assigned[g] == 0 for g in earlier_twins[fam]
            ):
                continue
            counters["nodes"] += 1
            roots = set()
            rest = adj[i] & assigned[fam]
            while rest:
                bit = rest & (-rest)
                rest ^= bit
                roots.add(comp_root[bit.bit_length() - 1])
            poss = pv[i][fam]
            mask = 1 << i
            for root in roots:
                poss &= comp_poss[root]
                mask |= comp_mask[root]
            if poss == 0:
                counters["prunes"] += 1
                continue
            saved = [(root, comp_mask.pop(root), comp_poss.pop(root)) for root in roots]
            saved_roots = []
            bits = mask
            while bits:
                bit = bits & (-bits)
                bits ^= bit
                j = bit.bit_length() - 1
                saved_roots.append((j, comp_root[j]))
                comp_root[j] = i
            comp_mask[i] = mask
            comp_poss[i] = poss
            family_of[i] = fam
            assigned[fam] |= 1 << i
            if dfs(unassigned ^ (1 << i)):
                return True
            assigned[fam] ^= 1 << i
            family_of[i] = -1
            del comp_mask[i], comp_poss[i]
            for j, old in saved_roots:
                comp_root[j] = old
            for root, m, p in saved:
                comp_mask[root] = m
                comp_poss[root] = p
        return False

    found = dfs((1 << nv) - 1)
    audit = SearchAudit(level, counters["nodes"], counters["prunes"], found)
    if not found:
        return None, audit
    return CRefinement(solution[0], kappa, cs), audit


def search_c_refinement(
    cs: CoverSequence, kappa: int, max_level: int, min_level: int = 0
) -> SearchResult:
    """Scan subdivision levels for a kappa-family refinement certificate.

    Returns the first certificate found, or model-relative exhaustion at
    `max_level` with the full per-level enumeration audit.
    """
    if kappa < 1:
        raise ValueError("kappa must be at least 1")
    audits = []
    for level in range(min_level, max_level + 1):
        refinement, audit = _search_at_level(cs, kappa, level)
        audits.append(audit)
        if refinement is not None:
            return SearchResult("found", level, refinement, tuple(audits))
    return SearchResult("exhausted", max_level, None, tuple(audits))


@dataclass(frozen=True)
class MuMode:
    """Family-count regime for the equivalence driver."""

    kind: str  # "omega_plus_one" | "omega" | "n_plus_one"
    n: int | None = None


def omega_plus_one() -> MuMode:
    return MuMode("omega_plus_one")


def omega() -> MuMode:
    return MuMode("omega")


def n_plus_one(n: int) -> MuMode:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return MuMode("n_plus_one", n)


@dataclass(frozen=True)
class MuReport:
    """Certificates and predicate outcomes of one driver run."""

    mode: str
    n: int | None
    kappa: int
    dim: int
    success: bool
    failure: str | None = None
    refinement_method: str | None = None
    refinement_ok: bool = False
    family_sizes: tuple = ()
    canonical_level: int | None = None
    map_is_simplicial: bool = False
    map_is_canonical: bool = False
    map_is_selection: bool = False
    roundtrip_ok: bool = False
    roundtrip_family_sizes: tuple = ()
    search_audits: tuple = ()


def mu_driver(
    cs: CoverSequence, mode: MuMode, max_level: int = DEFAULT_MAX_LEVEL
) -> MuReport:
    """Run both equivalence directions for the family count set by `mode`.

    (a) find a refinement (barycenter constructor when the dimension
    allows, audited search otherwise); (b) build a canonical map for the
    refinement and transfer it along the refinement map; (c) extract the
    star-set fibers back and verify them against the original covers.
    """
    d = dim_oracle(cs.space)
    if mode.kind == "n_plus_one":
        kappa = mode.n + 1
    else:
        kappa = d + 1
    base = dict(mode=mode.kind, n=mode.n, kappa=kappa, dim=d)

    padded = pad_levels(cs, kappa)
    refinement = None
    method = None
    audits: tuple = ()
    try:
        if kappa > d and all(level_covers(padded, k) for k in range(kappa)):
            method = "constructor"
            refinement = ostrand_refine(padded, kappa - 1, max_level)
        else:
            method = "search"
            result = search_c_refinement(cs, kappa, max_level)
            audits = result.audits
            if result.status == "found":
                refinement = result.refinement
            else:
                return MuReport(
                    success=False,
                    failure=f"search exhausted at level {max_level}",
                    refinement_method=method,
                    search_audits=audits,
                    **base,
                )

        verdict = verify_c_refinement(refinement)
        fine = refinement_as_cover(refinement)
        rmap = refinement_map(fine, padded, kappa)
        h = build_canonical(fine, kappa, DELTA, max_level)
        f = transfer_selection(h, rmap)
        simplicial = check_simplicial_map(f.map)
        canonical = is_canonical(f, padded, kappa)
        selection = is_selection(f, padded, kappa)
        extracted = extract_c_refinement(f, padded, kappa)
        back = CRefinement(tuple(extracted), kappa, padded)
        roundtrip = verify_c_refinement(back)
        success = bool(
            verdict and simplicial and canonical and selection and roundtrip
        )
        return MuReport(
            success=success,
            failure=None if success else "a certificate failed verification",
            refinement_method=method,
            refinement_ok=bool(verdict),
            family_sizes=tuple(len(f) for f in refinement.families),
            canonical_level=f.subdivision_level,
            map_is_simplicial=simplicial,
            map_is_canonical=canonical,
            map_is_selection=selection,
            roundtrip_ok=bool(roundtrip),
            roundtrip_family_sizes=tuple(len(f) for f in back.families),
            search_audits=audits,
            **base,
        )
    except LevelBudgetExceeded as budget:
        budget.report = MuReport(
            success=False,
            failure=str(budget),
            refinement_method=method,
            search_audits=audits,
            **base,
        )
        raise
