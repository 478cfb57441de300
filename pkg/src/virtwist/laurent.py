"""Sparse Laurent polynomials in t over Q(i).

Polynomials proper (no negative exponents) reuse the same class; the
``poly_*`` helpers implement the Euclidean machinery needed by
rational functions.
"""

from enum import Enum
from itertools import chain

from .errors import DivisionByZero, EvalAtPole
from .scalar import ONE, ZERO, Scalar


class Gen(Enum):
    """Which derivation the differential generator stands for."""

    THETA = "THETA"  # t*d/dt
    DDT = "DDT"  # d/dt

    def __str__(self):
        return self.value


def _scalar(x):
    s = Scalar.coerce(x)
    if s is NotImplemented:
        raise TypeError(f"not a scalar: {x!r}")
    return s


class LaurentPoly:
    """Finite sum of c_k t^k, k in Z, with no stored zero coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                c = _scalar(c)
                if c:
                    clean[int(k)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms):
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, k, c=1):
        return cls({k: c})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, LaurentPoly):
            return x
        s = Scalar.coerce(x)
        if s is NotImplemented:
            return NotImplemented
        return cls._from_clean({0: s} if s else {})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._terms.items())

    def coeff(self, k):
        return self._terms.get(k, ZERO)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def degree(self):
        """Top exponent; None for the zero polynomial."""
        return max(self._terms) if self._terms else None

    def low_degree(self):
        return min(self._terms) if self._terms else None

    def is_constant(self):
        return not self._terms or set(self._terms) == {0}

    def constant_value(self):
        return self._terms.get(0, ZERO)

    def is_monomial(self):
        return len(self._terms) == 1

    def is_polynomial(self):
        return not self._terms or min(self._terms) >= 0

    def leading(self):
        k = self.degree()
        return k, self._terms[k]

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        o = LaurentPoly.coerce(other)
        if o is NotImplemented:
            return o
        if not o._terms:
            return self
        if not self._terms:
            return o
        out = dict(self._terms)
        for k, c in o._terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return LaurentPoly._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = LaurentPoly.coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = LaurentPoly.coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return self._mul(other)
        s = Scalar.coerce(other)
        if s is NotImplemented:
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def _mul(self, o):
        a, b = self._terms, o._terms
        if not a or not b:
            return LaurentPoly._from_clean({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            if cb == ONE:
                return LaurentPoly._from_clean({k + kb: c for k, c in a.items()})
            return LaurentPoly._from_clean({k + kb: c * cb for k, c in a.items()})
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                v = out.get(k)
                out[k] = ca * cb if v is None else v + ca * cb
        return LaurentPoly._from_clean({k: c for k, c in out.items() if c})

    def scale(self, c):
        c = _scalar(c)
        if not c:
            return LaurentPoly._from_clean({})
        if c == ONE:
            return self
        return LaurentPoly._from_clean({k: v * c for k, v in self._terms.items()})

    def shift(self, m):
        """Multiply by t^m."""
        if not m:
            return self
        return LaurentPoly._from_clean({k + m: c for k, c in self._terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise DivisionByZero("only monomials are invertible in C[t, 1/t]")
            (k, c), = self._terms.items()
            return LaurentPoly._from_clean({k * n: c ** n})
        result = LaurentPoly._from_clean({0: ONE})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_unit(self):
        return self.is_monomial()

    def inv(self):
        return self ** -1

    # -- calculus ---------------------------------------------------------
    def derive(self, gen=Gen.THETA):
        """theta: t^k -> k t^k;  d/dt: t^k -> k t^(k-1)."""
        if gen is Gen.THETA:
            return LaurentPoly._from_clean({k: c * k for k, c in self._terms.items() if k})
        return LaurentPoly._from_clean({k - 1: c * k for k, c in self._terms.items() if k})

    def __call__(self, a):
        return self.eval(a)

    def eval(self, a):
        a = _scalar(a)
        if not a and self._terms and min(self._terms) < 0:
            raise EvalAtPole("evaluating a negative power of t at 0")
        total = ZERO
        for k, c in self._terms.items():
            total = total + c * (a ** k)
        return total

    # -- equality / hashing ------------------------------------------------
    def __eq__(self, other):
        o = LaurentPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        from .expr import format_laurent

        return format_laurent(self)


def t_pow(k, c=1):
    return LaurentPoly.monomial(k, c)


T = LaurentPoly.monomial(1)


# ---------------------------------------------------------------------------
# Univariate polynomial helpers (exponents >= 0)
# ---------------------------------------------------------------------------

def poly_divmod(a, b):
    """Euclidean division of polynomials; returns (q, r) with deg r < deg b."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if not (a.is_polynomial() and b.is_polynomial()):
        raise ValueError("poly_divmod expects polynomials without negative exponents")
    db, lb = b.leading()
    inv_lb = lb.inv()
    rem = dict(a._terms)
    quot = {}
    bt = b._terms
    while rem:
        dr = max(rem)
        if dr < db:
            break
        c = rem[dr] * inv_lb
        s = dr - db
        quot[s] = c
        for k, v in bt.items():
            kk = k + s
            nv = rem.get(kk, ZERO) - c * v
            if nv:
                rem[kk] = nv
            else:
                rem.pop(kk, None)
    return LaurentPoly._from_clean(quot), LaurentPoly._from_clean(rem)


def poly_monic(p):
    if not p:
        return p
    return p.scale(p.leading()[1].inv())


def poly_gcd(a, b):
    """Monic gcd by the Euclidean algorithm (exact over Q(i))."""
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a)


def synthetic_divide(p, a):
    """Divide the polynomial p by (t - a); returns (quotient, remainder)."""
    if not p.is_polynomial():
        raise ValueError("synthetic division expects a polynomial")
    if not p:
        return p, ZERO
    a = _scalar(a)
    n = p.degree()
    quot = {}
    carry = ZERO
    for k in range(n, -1, -1):
        carry = carry * a + p.coeff(k)
        if k:
            if carry:
                quot[k - 1] = carry
    return LaurentPoly._from_clean(quot), carry


def divided_difference(h, a):
    """(h(t) - h(a)) / (t - a) as a Laurent polynomial, for a != 0.

    The t-powers are cleared first so the division is an exact synthetic
    division of an ordinary polynomial.
    """
    a = _scalar(a)
    if not a:
        raise EvalAtPole("divided difference at a = 0")
    if not h:
        return h
    lo = min(0, h.low_degree())
    shifted = h.shift(-lo)  # t^(-lo) * h, a polynomial
    ha = h.eval(a)
    numer = shifted - LaurentPoly.monomial(-lo, ha)
    q, r = synthetic_divide(numer, a)
    if r:
        raise ArithmeticError("divided difference left a remainder")  # pragma: no cover
    return q.shift(lo)


def taylor_shift(p, a):
    """p(s + a) as a polynomial in s."""
    a = _scalar(a)
    out = LaurentPoly()
    base = LaurentPoly({0: a, 1: 1})
    for k, c in p.items():
        out = out + (base ** k).scale(c)
    return out


def all_exponents(*polys):
    return sorted(set(chain.from_iterable(p._terms for p in polys)))
