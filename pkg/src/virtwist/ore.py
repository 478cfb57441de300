"""Normal-form arithmetic in C[t, 1/t][X] and C(t)[X].

X is either theta = t*d/dt or d/dt; elements are stored coefficients-left,
sum_m c_m(t) X^m.  Products use the closed form

    X^m f = sum_j binom(m, j) delta^j(f) X^(m-j)

where delta is the derivation that X induces on coefficients.
"""

from fractions import Fraction
from math import comb

from .errors import DivisionByZero, GeneratorMismatch, NonUnitLeadingCoeff
from .laurent import Gen, LaurentPoly
from .ratfunc import RatFunc
from .scalar import Scalar


class OreElem:
    """Element of K = C[t, 1/t][X] in normal form."""

    coeff_type = LaurentPoly
    __slots__ = ("gen", "_c", "_hash")

    def __init__(self, coeffs=None, gen=Gen.THETA):
        if not isinstance(gen, Gen):
            gen = Gen(gen)
        self.gen = gen
        clean = {}
        if coeffs:
            for m, c in coeffs.items():
                if m < 0:
                    raise ValueError("generator exponents must be nonnegative")
                c = self._coerce_coeff(c)
                if c:
                    clean[int(m)] = c
        self._c = clean
        self._hash = None

    @classmethod
    def _coerce_coeff(cls, c):
        v = cls.coeff_type.coerce(c)
        if v is NotImplemented:
            raise TypeError(f"cannot use {c!r} as a coefficient of {cls.__name__}")
        return v

    @classmethod
    def _from_clean(cls, coeffs, gen):
        x = object.__new__(cls)
        x.gen, x._c, x._hash = gen, coeffs, None
        return x

    @classmethod
    def generator(cls, gen=Gen.THETA, power=1):
        return cls({power: 1}, gen)

    @classmethod
    def from_coeff(cls, c, gen=Gen.THETA):
        return cls({0: c}, gen)

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def coeff(self, m):
        c = self._c.get(m)
        return self.coeff_type.coerce(0) if c is None else c

    def degree(self):
        return max(self._c) if self._c else None

    def leading_coeff(self):
        return self._c[max(self._c)]

    def __bool__(self):
        return bool(self._c)

    def is_zero(self):
        return not self._c

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if type(other) is not type(self):
            raise GeneratorMismatch(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        if other.gen is not self.gen:
            raise GeneratorMismatch(f"generator {self.gen} vs {other.gen}")

    def _lift(self, other):
        if isinstance(other, OreElem):
            self._check(other)
            return other
        c = self.coeff_type.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return type(self)._from_clean({0: c} if c else {}, self.gen)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self._c)
        for m, c in o._c.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return type(self)._from_clean(out, self.gen)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._from_clean({m: -c for m, c in self._c.items()}, self.gen)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ore_mul(self, o)

    def __rmul__(self, other):
        # coefficients multiply on the left without reordering
        c = self.coeff_type.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.left_scale(c)

    def left_scale(self, c):
        c = self._coerce_coeff(c)
        if not c:
            return type(self)._from_clean({}, self.gen)
        return type(self)._from_clean(
            {m: v for m, v in ((m, c * a) for m, a in self._c.items()) if v}, self.gen
        )

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = type(self).from_coeff(1, self.gen)
        for _ in range(n):
            result = ore_mul(result, self)
        return result

    # -- equality ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, OreElem):
            return type(self) is type(other) and self.gen is other.gen and self._c == other._c
        c = self.coeff_type.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self._c == ({0: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.gen, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self}, gen={self.gen})"

    def __str__(self):
        from .expr import format_ore

        return format_ore(self)


class RatOreElem(OreElem):
    """Element of C(t)[X]."""

    coeff_type = RatFunc
    __slots__ = ()

    @classmethod
    def from_ore(cls, x):
        return cls._from_clean({m: RatFunc(c) for m, c in x._c.items()}, x.gen)

    def to_ore(self):
        return OreElem._from_clean({m: c.to_laurent() for m, c in self._c.items()}, self.gen)


def _derivation_chain(f, gen, depth):
    out = [f]
    for _ in range(depth):
        f = f.derive(gen)
        if not f:
            break
        out.append(f)
    return out


def ore_mul(x, y):
    """Normal form of x*y."""
    x._check(y)
    if not x._c or not y._c:
        return type(x)._from_clean({}, x.gen)
    gen = x.gen
    top = max(x._c)
    chains = {k: _derivation_chain(b, gen, top) for k, b in y._c.items()}
    acc = {}
    for i, a in x._c.items():
        for k, chain in chains.items():
            for j in range(min(i, len(chain) - 1) + 1):
                term = a * chain[j]
                binom = comb(i, j)
                if binom != 1:
                    term = term * binom
                d = i - j + k
                prev = acc.get(d)
                acc[d] = term if prev is None else prev + term
    return type(x)._from_clean({d: c for d, c in acc.items() if c}, gen)


def ore_bracket(x, y):
    return ore_mul(x, y) - ore_mul(y, x)


def _coeff_inverse(lc, kind):
    if kind is OreElem:
        if not lc.is_unit():
            raise NonUnitLeadingCoeff(
                f"leading coefficient {lc} is not a unit of C[t, 1/t]"
            )
        return lc.inv()
    return lc.inv()


def right_divide(a, beta):
    """(q, r) with a = q*beta + r and deg r < deg beta."""
    a._check(beta)
    if not beta:
        raise DivisionByZero("right division by zero")
    kind = type(a)
    db = beta.degree()
    inv_lc = _coeff_inverse(beta.leading_coeff(), kind)
    gen = a.gen
    quot = {}
    rem = a
    shifted = {}
    while rem and rem.degree() >= db:
        d = rem.degree()
        s = d - db
        c = rem.leading_coeff() * inv_lc
        quot[s] = quot[s] + c if s in quot else c
        xb = shifted.get(s)
        if xb is None:
            xb = ore_mul(kind._from_clean({s: kind.coeff_type.coerce(1)}, gen), beta)
            shifted[s] = xb
        rem = rem - xb.left_scale(c)
    q = kind._from_clean({m: c for m, c in quot.items() if c}, gen)
    return q, rem


def convert_generator(x, to=None):
    """Rewrite between theta and d/dt normal forms (theta = t * d/dt)."""
    target = (Gen.DDT if x.gen is Gen.THETA else Gen.THETA) if to is None else Gen(to)
    if target is x.gen:
        return x
    kind = type(x)
    cf = kind.coeff_type
    if target is Gen.DDT:
        step = kind._from_clean({1: cf.coerce(LaurentPoly.monomial(1))}, Gen.DDT)
    else:
        step = kind._from_clean({1: cf.coerce(LaurentPoly.monomial(-1))}, Gen.THETA)
    out = kind._from_clean({}, target)
    power = kind._from_clean({0: cf.coerce(1)}, target)
    for m in range(max(x._c) + 1 if x._c else 0):
        c = x._c.get(m)
        if c is not None:
            out = out + power.left_scale(c)
        power = ore_mul(power, step)
    return out


def substitute_generator(x, shift):
    """sum g_m X^m  ->  sum g_m (X + shift)^m, an automorphism of the ring."""
    kind = type(x)
    base = kind._from_clean({1: kind.coeff_type.coerce(1)}, x.gen) + kind.from_coeff(shift, x.gen)
    out = kind._from_clean({}, x.gen)
    power = kind.from_coeff(1, x.gen)
    for m in range(max(x._c) + 1 if x._c else 0):
        c = x._c.get(m)
        if c is not None:
            out = out + power.left_scale(c)
        power = ore_mul(power, base)
    return out


def make_Dn(n, b):
    """t^n theta + n b t^n, the image of the Virasoro generator d_n."""
    b = Scalar.coerce(b)
    return OreElem({1: LaurentPoly.monomial(n), 0: LaurentPoly.monomial(n, b * n)}, Gen.THETA)


def make_wk(k, b):
    """-1/2 D_(k-1) D_1 - 1/2 D_(k+1) D_(-1) + D_k D_0, multiplied out in K."""
    half = Scalar(Fraction(1, 2))
    first = ore_mul(make_Dn(k - 1, b), make_Dn(1, b))
    second = ore_mul(make_Dn(k + 1, b), make_Dn(-1, b))
    third = ore_mul(make_Dn(k, b), make_Dn(0, b))
    return third - first.left_scale(LaurentPoly.const(half)) - second.left_scale(LaurentPoly.const(half))
