#!/usr/bin/env python3
"""Transverse hyperplane sections of fans.

A hyperplane is transverse to a complex when it avoids every vertex (for a
fan, the origin) and contains no cell's affine span.  Slicing a pure
d-dimensional fan with such a hyperplane yields a pure (d-1)-complex whose
facets are slices of the source facets.  Connectivity of sections mirrors
connectivity of the fan: the glued two-planes fan falls apart when sliced
away from its bridge ray.
"""

from fractions import Fraction as F

from tropicon import (
    AffineHyperplane, NotTransverse, build_hypergraph, connected_components,
    hyperplane_section, standard_tropical_plane, two_planes_fan, vec,
)

plane = standard_tropical_plane()
H = AffineHyperplane(vec([1, 2, 4]), F(1))
sec = hyperplane_section(plane, H)
h = build_hypergraph(sec.section)
bounded = sum(1 for f in sec.section.facet_polyhedra if not f.rays)
print("standard tropical plane cut by x1 + 2 x2 + 4 x3 = 1:")
print("  section:", len(sec.section), "facets "
      f"({bounded} segments, {len(sec.section) - bounded} rays),",
      h.num_ridges, "ridge vertices, pure:", sec.pure)
print("  connected components:", len(connected_components(h)))
print("  facet provenance (section facet -> source cone):",
      list(enumerate(sec.facet_provenance)))

tp = two_planes_fan()
sec2 = hyperplane_section(tp, AffineHyperplane(vec([1, 0, 0, 0, 0]), F(-1)))
comps = connected_components(build_hypergraph(sec2.section))
print("\ntwo-planes fan cut by x1 = -1:")
print("  section:", len(sec2.section), "facets in",
      len(comps), "components:", comps)
print("  (no point of the bridge ray e1 satisfies x1 = -1)")

try:
    hyperplane_section(plane, AffineHyperplane(vec([1, 2, 4]), F(0)))
except NotTransverse as exc:
    print("\nslicing through the origin is rejected:", exc)
