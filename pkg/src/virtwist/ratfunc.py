"""Rational functions in t over Q(i), kept in a unique canonical form."""

from .errors import DivisionByZero
from .laurent import Gen, LaurentPoly, poly_divmod, poly_gcd
from .scalar import ONE, Scalar

_ONE_POLY = LaurentPoly({0: 1})


class RatFunc:
    """num/den with den monic and gcd(num, den) = 1.

    Laurent inputs are accepted and cleared into ordinary polynomials, so
    ``RatFunc(t^-2)`` is stored as 1/t^2.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = LaurentPoly.coerce(num)
        den = _ONE_POLY if den is None else LaurentPoly.coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc expects polynomial or scalar arguments")
        if not den:
            raise DivisionByZero("zero denominator")
        # clear negative exponents
        lo = min(num.low_degree() if num else 0, den.low_degree(), 0)
        if lo < 0:
            num, den = num.shift(-lo), den.shift(-lo)
        lo_den = den.low_degree()
        if num and lo_den > 0:
            common = min(num.low_degree(), lo_den)
            num, den = num.shift(-common), den.shift(-common)
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        r = object.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFunc):
            return x
        p = LaurentPoly.coerce(x)
        if p is NotImplemented:
            return NotImplemented
        return cls(p)

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_laurent(self):
        """True when the denominator is a power of t."""
        return self.den.is_monomial()

    def to_laurent(self):
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        k, c = self.den.leading()
        return self.num.shift(-k).scale(c.inv())

    def is_constant(self):
        return self.den == _ONE_POLY and self.num.is_constant()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = RatFunc.coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFunc._normalized(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        a_cof = poly_divmod(o.den, g)[0]
        b_cof = poly_divmod(self.den, g)[0]
        return RatFunc._normalized(self.num * a_cof + o.num * b_cof, self.den * a_cof)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = RatFunc.coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = RatFunc.coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            s = Scalar.coerce(other)
            if s is not NotImplemented:
                if not s:
                    return RatFunc._raw(LaurentPoly(), _ONE_POLY)
                return RatFunc._raw(self.num.scale(s), self.den)
            other = RatFunc.coerce(other)
            if other is NotImplemented:
                return other
        if not self.num or not other.num:
            return RatFunc._raw(LaurentPoly(), _ONE_POLY)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = poly_divmod(self.num, g1)[0]
        d2 = poly_divmod(other.den, g1)[0]
        n2 = poly_divmod(other.num, g2)[0]
        d1 = poly_divmod(self.den, g2)[0]
        num, den = n1 * n2, d1 * d2
        lc = den.leading()[1]
        if lc != ONE:
            inv = lc.inv()
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of the zero rational function")
        return RatFunc._normalized(self.den, self.num)

    def __truediv__(self, other):
        o = RatFunc.coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = RatFunc.coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def derive(self, gen=Gen.THETA):
        """Quotient rule with d/dt, then multiplied by t for theta."""
        n, d = self.num, self.den
        top = n.derive(Gen.DDT) * d - n * d.derive(Gen.DDT)
        if gen is Gen.THETA:
            top = top.shift(1)
        return RatFunc._normalized(top, d * d)

    def eval(self, a):
        a = Scalar.coerce(a)
        dv = self.den.eval(a)
        if not dv:
            from .errors import EvalAtPole

            raise EvalAtPole(f"{self} has a pole at {a}")
        return self.num.eval(a) / dv

    @classmethod
    def _normalized(cls, num, den):
        return cls._raw(*_canonical(num, den))

    # -- equality ---------------------------------------------------------
    def __eq__(self, other):
        o = RatFunc.coerce(other) if not isinstance(other, RatFunc) else other
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def normalize(self):
        return RatFunc._normalized(self.num, self.den)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        from .expr import format_ratfunc

        return format_ratfunc(self)


def _canonical(num, den):
    if not num:
        return LaurentPoly(), _ONE_POLY
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = poly_divmod(num, g)[0]
            den = poly_divmod(den, g)[0]
    lc = den.leading()[1]
    if lc != ONE:
        inv = lc.inv()
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def pole_fraction(residue, a, power=1):
    """residue / (t - a)^power."""
    return RatFunc(LaurentPoly({0: residue}), LaurentPoly({0: -Scalar.coerce(a), 1: 1}) ** power)
