"""The reducible quadratic built from h = t - 3/2 with a pole at 1, and its search round trip."""

from virtwist.expr import format_laurent, format_ore, parse
from virtwist.factor import construct_reducible, irreducible_by_degree, search_witness, verify_factorization
from virtwist.modules import KQuotient
from virtwist.ore import OreElem
from virtwist.structure import hvir_check

f, w = construct_reducible(parse("t - 3/2"), [1])
left, right = w.factors()
print("f       =", format_laurent(f))
print("factors =", format_ore(left), "|", format_ore(right))
print("verified:", bool(verify_factorization(f, w)))

found = search_witness(f, [1, 2, -1, 3], (0, 1))
print("search recovers h =", format_laurent(found.witness.h), "poles", [str(p) for p in found.witness.poles])

for g in ("t^3 + 1", "t^-3 + t", "t^2 - 4*t + 1/4"):
    cert = irreducible_by_degree(parse(g))
    print(f"{g:18s} certificate:", None if cert is None else (cert.kind, cert.data))

# the quotient by theta^2 - f is a twisted module for every b
M = KQuotient(OreElem.generator() ** 2 - OreElem.from_coeff(f), 3)
print(M.describe(), "hvir:", hvir_check(M, 3, 6).passed)
