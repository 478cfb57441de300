"""Pairwise isomorphism verdicts for a small zoo of twisted modules."""

from virtwist.expr import parse
from virtwist.modules import KQuotient, Natural, Omega, VPrime00
from virtwist.structure import theorem12_decide

zoo = [Omega(2, 3), Omega(2, -2), Omega(5, 3), Omega(2, 1), Omega(2, 0), Natural(0), Natural(1), VPrime00(),
       KQuotient(parse("Th^2 - t", "ore"), 2), KQuotient(parse("Th^2 - t^3", "ore"), 2)]
short = {"ISOMORPHIC": "=", "NOT_ISOMORPHIC": "x", "UNKNOWN": "?"}
for i, M in enumerate(zoo):
    print(f"{i:2d} {M.describe()}")
print("   " + " ".join(f"{j:2d}" for j in range(len(zoo))))
for i, A in enumerate(zoo):
    print(f"{i:2d} " + " ".join(f"{short[theorem12_decide(A, B).verdict]:>2s}" for B in zoo))
