"""
Non-emptiness versus Mazur's inequality
=======================================

For a basic b in a Levi M, X_mu(b) is non-empty exactly when kappa_M(b)
lies in the image of P_mu in Y_M.  Mazur's inequality kappa_M(b) <= mu is
necessary; the scan below looks for cases where it is not sufficient.
"""

from adlsets import (
    BasicClass,
    build_root_datum,
    converse_scan,
    levi,
    mazur_check,
    nonempty,
    validate_sigma,
)
from adlsets.orders import in_YM_plus, sigma_stable_levis

# the quasi-split unitary model: A_2 with the diagram flip
a2 = build_root_datum("A", 2, "sc")
sigma = validate_sigma(a2, [1, 0])
print("sigma-stable standard Levis:", [lv.levi_simple for lv in sigma_stable_levis(a2, sigma)])

torus = levi(a2, [])
mu = (2, 2)
for rep in [(2, 2), (1, 1), (2, 1), (0, 0), (3, 3)]:
    b = BasicClass.from_coweight(torus, sigma, rep)
    if not in_YM_plus(torus, sigma, b.kappa):
        print(rep, "kappa not in Y_T^+, skipped")
        continue
    print(rep, "nonempty:", nonempty(torus, sigma, b, mu), " mazur:", mazur_check(torus, sigma, b, mu))

# GL_2, M = G: the superbasic class of slope 1/2 against mu = (1, 0)
gl2 = build_root_datum("GL", 2)
s = validate_sigma(gl2)
g = levi(gl2, [0])
print("superbasic:", nonempty(g, s, BasicClass.from_coweight(g, s, (1, 0)), (1, 0)))
print("kappa = 0: ", nonempty(g, s, BasicClass.from_coweight(g, s, (0, 0)), (1, 0)))

# the converse question, on split and folded data
for dtype, perm in [(("C", 2, "sc"), None), (("A", 3, "ad"), None), (("A", 3, "ad"), [2, 1, 0])]:
    d = build_root_datum(*dtype)
    rep = converse_scan(d, validate_sigma(d, perm), height_bound=4)
    print(d.cartan_type, "sigma", list(rep.sigma), "->", len(rep.counterexamples), "counterexamples in",
          rep.triples_examined, "triples")
