"""Covering dimension as a family-count phenomenon, on a solid triangle.

Run with:  python3 demos/demo_dimension.py
"""

from polycover import (
    dim_oracle,
    mu_driver,
    n_plus_one,
    ostrand_refine,
    search_c_refinement,
    verify_c_refinement,
    vlabel,
)
from polycover.fixtures import edge_space, tri_space, vertex_star_cover

# The triangle is 2-dimensional, so its vertex-star cover should split into
# 3 pairwise-disjoint families but never into 2.
space = tri_space()
print("dimension:", dim_oracle(space))
cov3 = vertex_star_cover(space, 3)

# The constructive route: subdivide once past the point where every vertex
# star fits inside a cover element, then group the barycenter stars by the
# dimension of the simplex they subdivide.  Same-dimension barycenters are
# never adjacent, so each family is automatically disjoint.
r = ostrand_refine(cov3, 2)
for k, family in enumerate(r.families):
    print(f"  family {k}: {[eid for eid, _ in family]}")
print("verified:", bool(verify_c_refinement(r)))

# The search route decides the same question exhaustively: assign every
# stage vertex to a family so that each adjacency component fits inside a
# single cover element.  Two families die at every level it tries; the
# audit records how much of the space it enumerated.
cov2 = vertex_star_cover(space, 2)
res = search_c_refinement(cov2, 2, max_level=1)
print("\ntwo families:", res.status)
for a in res.audits:
    print(f"  level {a.level}: {a.nodes} nodes, {a.prunes} prunes")

res3 = search_c_refinement(cov3, 3, max_level=1)
print("three families:", res3.status, "at level", res3.level)

# On a 1-dimensional space two families already work.
edge = edge_space()
res_edge = search_c_refinement(vertex_star_cover(edge, 2), 2, max_level=1, min_level=1)
print("\nedge with two families at level 1:", res_edge.status)
for fam in res_edge.refinement.families:
    print("  ", [(eid, sorted(vlabel(v) for v in star.core_vertices))
                 for eid, star in fam])

# The driver packages both directions: find families, build the canonical
# map they induce, transfer it along the refinement, and pull the fibers
# back out as a refinement of the original cover.
report = mu_driver(cov3, n_plus_one(2))
print("\ndriver at kappa =", report.kappa, "success:", report.success)
print("  families:", report.family_sizes, "->", report.roundtrip_family_sizes)
print("  map level:", report.canonical_level,
      "canonical:", report.map_is_canonical,
      "selection:", report.map_is_selection)

report_low = mu_driver(cov2, n_plus_one(1), max_level=1)
print("driver at kappa =", report_low.kappa, "success:", report_low.success,
      "-", report_low.failure)
