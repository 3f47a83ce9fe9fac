"""
Hodge-Newton on a window
========================

When kappa_M(b) equals mu in Y_M and is positive, every point of X_mu(b)
for G comes from the Levi.  Here both sides are enumerated over column
normal forms with elementary divisors in [-2, 2], over F_2 and F_4.
"""

from adlsets.dvr import adlv_enumerate, hodge_newton_verify, parse_b

b = parse_b([["0", "1", "0"], ["t", "0", "0"], ["0", "0", "1"]], q=2, s=1)
for row in b.to_strings():
    print(row)

r = hodge_newton_verify((1, 0, 0), b, (2, 1), radius=2)
print("status:", r.status, " G classes:", r.g_count, " M classes:", r.m_count)
print("slope of each block:", r.slopes, " Mazur cross-check:", r.mazur_cross_check)

# the identity has the wrong kappa for mu = (1, 0): nothing is found
for s in (1, 2):
    res = adlv_enumerate((1, 0), parse_b([["1", "0"], ["0", "1"]], 2, s), radius=2)
    print(f"b = 1, s = {s}:", res.qualifier(), f"({res.examined} candidates)")

# the superbasic element has the standard lattice as a witness
res = adlv_enumerate((1, 0), parse_b([["0", "1"], ["t", "0"]], 2, 2), radius=2)
print("superbasic over F_4:", len(res.classes), "classes,", res.qualifier())
