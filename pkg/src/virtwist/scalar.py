"""Exact Gaussian rationals, the computable stand-in for the complex field.

Every parameter the constructions need (lambda, b, poles, residues) is a
Gaussian rational here.  Equality is structural and exact.
"""

from fractions import Fraction
from math import gcd, isqrt

from .errors import DivisionByZero

_ZERO = Fraction(0)


def _common(re, im):
    d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
    return re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d


def _frac_sqrt(q):
    """Exact square root of a nonnegative Fraction, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class Scalar:
    """(a + b*i)/d with integers a, b, d; d > 0 and gcd(a, b, d) = 1.

    Keeping one shared denominator makes the common cases (integer or
    real coefficients) cost a few machine-integer operations.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            if im:
                raise TypeError("cannot combine a Scalar real part with an imaginary part")
            self._a, self._b, self._d = re._a, re._b, re._d
            return
        re = re if type(re) is Fraction else Fraction(re)
        im = im if type(im) is Fraction else Fraction(im)
        self._set(*_common(re, im))

    def _set(self, a, b, d):
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _make(cls, a, b, d):
        """Build from integers, normalizing sign and common factors."""
        if d != 1:
            if d < 0:
                a, b, d = -a, -b, -d
            g = gcd(gcd(a, b), d)
            if g != 1:
                a, b, d = a // g, b // g, d // g
        s = object.__new__(cls)
        s._a, s._b, s._d = a, b, d
        return s

    @classmethod
    def _raw(cls, re, im):
        return cls._make(*_common(re, im))

    @property
    def re(self):
        return Fraction(self._a, self._d)

    @property
    def im(self):
        return Fraction(self._b, self._d)

    @classmethod
    def coerce(cls, x):
        if type(x) is cls:
            return x
        if type(x) is int:
            return cls._make(x, 0, 1)
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            return cls._make(x.numerator, 0, x.denominator)
        if isinstance(x, complex):
            raise TypeError("floating-point complex numbers are not exact; use Scalar(re, im)")
        if isinstance(x, str):
            x = Fraction(x)
            return cls._make(x.numerator, 0, x.denominator)
        return NotImplemented

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def is_real(self):
        return not self._b

    def is_integer(self):
        return not self._b and self._d == 1

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = other if type(other) is Scalar else Scalar.coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self._d, o._d
        if d1 == d2:
            return Scalar._make(self._a + o._a, self._b + o._b, d1)
        return Scalar._make(self._a * d2 + o._a * d1, self._b * d2 + o._b * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = other if type(other) is Scalar else Scalar.coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self._d, o._d
        if d1 == d2:
            return Scalar._make(self._a - o._a, self._b - o._b, d1)
        return Scalar._make(self._a * d2 - o._a * d1, self._b * d2 - o._b * d1, d1 * d2)

    def __rsub__(self, other):
        o = Scalar.coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        s = object.__new__(Scalar)
        s._a, s._b, s._d = -self._a, -self._b, self._d
        return s

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = other if type(other) is Scalar else Scalar.coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, e = self._a, self._b, o._a, o._b
        if not b and not e:
            return Scalar._make(a * c, 0, self._d * o._d)
        return Scalar._make(a * c - b * e, a * e + b * c, self._d * o._d)

    __rmul__ = __mul__

    def conjugate(self):
        return Scalar._make(self._a, -self._b, self._d)

    def norm(self):
        """|x|^2 as a Fraction."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def inv(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        a, b, d = self._a, self._b, self._d
        # d / (a + b i) = d (a - b i) / (a^2 + b^2)
        n = a * a + b * b
        return Scalar._make(d * a, -d * b, n)

    def __truediv__(self, other):
        o = Scalar.coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = Scalar.coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sqrt(self):
        """A square root inside Q(i), or None when there is none.

        For a nonzero result the one with positive real part (or positive
        imaginary part when the real part is 0) is returned.
        """
        if not self:
            return ZERO
        a, b = self.re, self.im
        if not b:
            r = _frac_sqrt(abs(a))
            if r is None:
                return None
            return Scalar._raw(r, _ZERO) if a > 0 else Scalar._raw(_ZERO, r)
        modulus = _frac_sqrt(a * a + b * b)
        if modulus is None:
            return None
        p = _frac_sqrt((a + modulus) / 2)
        if p is None or not p:
            return None
        q = b / (2 * p)
        return Scalar._raw(p, q)

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        o = other if type(other) is Scalar else Scalar.coerce(other)
        if o is NotImplemented:
            return o
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if not self._b:
            return hash(self._a) if self._d == 1 else hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    # -- text -------------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        im_abs = abs(im)
        im_txt = "i" if im_abs == 1 else f"{im_abs}*i"
        if not re:
            return im_txt if im > 0 else f"-{im_txt}"
        return f"{re} {'+' if im > 0 else '-'} {im_txt}"

    def is_compound(self):
        """True when the printed form needs parentheses inside a product."""
        return bool(self.re) and bool(self.im)


ZERO = Scalar._make(0, 0, 1)
ONE = Scalar._make(1, 0, 1)
I = Scalar._make(0, 1, 1)


def S(x, im=0):
    """Shorthand constructor; accepts ints, Fractions, 'p/q' strings, Scalars."""
    if isinstance(x, Scalar) and not im:
        return x
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(im, str):
        im = Fraction(im)
    return Scalar(x, im)

