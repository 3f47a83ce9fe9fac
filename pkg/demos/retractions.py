"""
Retractions over F_2((t))
=========================

r_B(g) is the torus part of g in K . t^mu . U_B(F).  The 2x2 example
below changes its retraction by one coroot when the Borel is flipped.
"""

import random

from adlsets.dvr import (
    BorelChoice,
    LaurentMatrix,
    adjacency_jump,
    all_borels,
    cartan_invariants,
    get_field,
    iwasawa_retraction,
    km_membership,
)
from adlsets.dvr.sampling import random_GL

f = get_field(2, 1)
g = LaurentMatrix.parse(f, [["1", "t^-1"], ["0", "1"]])
up, low = BorelChoice.upper(2), BorelChoice.lower(2)
print("r_B(g) upper:", iwasawa_retraction(g, up), " lower:", iwasawa_retraction(g, low))
print("jump j =", adjacency_jump(g, up, low), " Cartan:", cartan_invariants(g))

# same g against the torus Levi and against all of GL_2
print("in K.T(F)? ", km_membership(g, (1, 1)).by_witness)
print("in K.G(F)? ", km_membership(g, (2,)).by_witness)

# a random GL_3 element: every retraction sits between r_B and r_Bbar
rng = random.Random(1)
h = random_GL(f, 3, rng)
print("\nrandom g in GL_3:")
for row in h.to_strings():
    print("  ", row)
print("Cartan invariants:", cartan_invariants(h))
for b in all_borels(3):
    print("  B =", b.perm, " r_B =", iwasawa_retraction(h, b))
