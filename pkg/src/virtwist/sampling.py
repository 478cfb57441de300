"""Seeded random values for the randomized suites.

Everything draws from an explicit ``random.Random`` so a seed fixes the
whole run.
"""

import os
import random
from fractions import Fraction

from .laurent import Gen, LaurentPoly
from .modules import ModVec
from .ore import OreElem
from .scalar import Scalar

DEFAULT_SEED = 20240917
SEED_ENV = "VIRTWIST_SEED"


def default_seed():
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


def rng_for(seed=None):
    return random.Random(default_seed() if seed is None else seed)


def rational(rng, num=9, den=6):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def scalar(rng, complex_=True):
    im = rational(rng) if complex_ and rng.random() < 0.3 else 0
    return Scalar(rational(rng), im)


def twist_values(seed, count=20):
    """``count`` distinct rational b values, never hitting 0 or 1 by accident."""
    rng = rng_for(seed)
    out = []
    while len(out) < count:
        b = Scalar(rational(rng, 30, 11))
        if b not in out:
            out.append(b)
    return out


def laurent(rng, lo=-2, hi=2, terms=3):
    out = {}
    for _ in range(rng.randint(1, terms)):
        out[rng.randint(lo, hi)] = scalar(rng)
    return LaurentPoly(out)


def ore(rng, degree=2, gen=Gen.THETA, lo=-2, hi=2):
    return OreElem({m: laurent(rng, lo, hi) for m in range(rng.randint(0, degree) + 1)}, gen)


def modvec(rng, owner, pool=8, terms=3):
    syms = owner.basis(pool)
    picks = rng.sample(syms, min(terms, len(syms)))
    return ModVec(owner, {s: scalar(rng, complex_=False) for s in picks})
