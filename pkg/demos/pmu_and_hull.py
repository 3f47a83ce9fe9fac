"""
The finite sets P_mu
====================

P_mu collects the coweights congruent to mu modulo coroots that lie in
the convex hull of the Weyl orbit of mu.  Membership is decided by a
dominance test; an exact linear program over the orbit checks it.
"""

from adlsets import build_root_datum, convexity_oracle, enumerate_Pmu, in_Pmu

# GL_3 and mu = (2, 0, 0): the orbit of mu plus the orbit of (1, 1, 0)
gl3 = build_root_datum("GL", 3)
pm = enumerate_Pmu(gl3, (2, 0, 0))
print("P_mu for GL_3, mu = (2,0,0):", sorted(pm.elements, reverse=True))
print("orbit sizes by dominant stratum:", pm.generation_stats)

# (1,1,0) is the midpoint of (2,0,0) and (0,2,0)
v = convexity_oracle(gl3, (2, 0, 0), (1, 1, 0))
print("convex weights:", {p: str(w) for p, w in v.weights.items()})

# (1,0,0) has the wrong determinant, so it is out whatever the hull says
print("(1,0,0) in P_mu?", in_Pmu(gl3, (2, 0, 0), (1, 0, 0)))

# outside the segment [(0,1), (1,0)]: the oracle returns a separating form
gl2 = build_root_datum("GL", 2)
no = convexity_oracle(gl2, (1, 0), (2, -1))
print("separating functional", [str(c) for c in no.functional], "bounded by", no.bound, "on the orbit")

# G_2 in the simply connected flavor: coordinates are coroot coefficients
g2 = build_root_datum("G2", 2)
mu = (2, 3)
pm = enumerate_Pmu(g2, mu)
print(f"G_2, mu = {mu}: {len(pm)} elements in", len(pm.generation_stats), "dominant strata")
