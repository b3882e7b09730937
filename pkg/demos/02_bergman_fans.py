#!/usr/bin/env python3
"""Bergman fans of matroids in the fine fan structure.

Rays are 0/1 indicator vectors of proper nonempty flats, maximal cones come
from maximal chains of flats, and the all-ones line is lineality.  For a
rank r matroid the fan is r-dimensional with a 1-dimensional lineality
space, and its facet-ridge hypergraph is (r-1)-connected; the star at a
rank-one flat's ray is the Bergman fan of the contraction.
"""

from tropicon import (
    Matroid, Polyhedron, bergman_fine, build_hypergraph, contraction,
    is_k_connected, maximal_chains, min_facet_cut, proper_flats, star, vec,
)

for label, m in [("U(3,4)", Matroid.uniform(3, 4)),
                 ("graphic K4", Matroid.graphic([(0, 1), (0, 2), (0, 3),
                                                 (1, 2), (1, 3), (2, 3)]))]:
    print(f"--- {label} ---")
    flats = proper_flats(m)
    print("proper flats by rank:", {r: len(fs) for r, fs in flats.items()})
    chains = maximal_chains(m)
    print("maximal chains of flats:", len(chains))

    fan = bergman_fine(m)
    print("fine Bergman fan:", len(fan.ray_pool), "rays,", len(fan),
          "facets, dim", fan.dim, "with lineality dim", fan.lineality_dim)

    h = build_hypergraph(fan)
    k = fan.dim - fan.lineality_dim
    print(f"connectivity bound d - l = {k}:",
          is_k_connected(h, k).verdict, "| min facet cut:", min_facet_cut(h))

# star at a rank-one flat = Bergman fan of the contraction (shown for K4)
m = Matroid.graphic([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
fan = bergman_fine(m)
ones = vec([1] * 6)
ray0 = vec([1, 0, 0, 0, 0, 0])
st = star(fan, Polyhedron.cone([ray0], [ones], ambient_dim=6))
mc = contraction(m, 0)
print("\nstar of the K4 fan at the flat {0}:", len(st), "cells of dim", st.dim)
print("Bergman fan of K4/0:", len(bergman_fine(mc)), "facets",
      "(same chain count:", len(maximal_chains(mc)), ")")
