"""K-modules and their b-twisted Virasoro modules.

Families:

* ``Omega(lam, b)``        C[theta], t^i . theta^k = lam^i (theta - i)^k
* ``KQuotient(beta, b)``   K / K beta, basis t^k X^m (m < deg beta), acting by
                           right division; covers first order, degree two and
                           degree n quotients alike
* ``FractionModule``       functions in C[t, 1/t, 1/(t - a_i)] with
                           d/dt . f = f' + f * sum alpha_i/(t - a_i)
* ``Natural(b)``           C[t, 1/t] with theta acting as a derivation
* ``VPrime00()``           C[t, 1/t]/C, a Virasoro module only

The Virasoro generator d_n acts through t^n theta + n b t^n and the central
element acts as zero.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import NotInSubmodule, UnsupportedAction
from .expr import _join, _monomial_term, parse_scalar
from .laurent import Gen, LaurentPoly, poly_divmod, synthetic_divide, taylor_shift
from .linalg import vec_add
from .ore import OreElem, convert_generator, make_Dn, ore_mul, right_divide
from .ratfunc import RatFunc, pole_fraction
from .scalar import ONE, ZERO, Scalar

_CACHE_SIZE = 1 << 18


def _sc(x):
    s = Scalar.coerce(x)
    if s is NotImplemented:
        raise TypeError(f"not a scalar: {x!r}")
    return s


def _zigzag(count):
    """0, 1, -1, 2, -2, ..."""
    out = [0]
    r = 1
    while len(out) < count:
        out.extend((r, -r))
        r += 1
    return out[:count]


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

class ModuleDescriptor:
    family = "?"
    has_k_action = True

    def act_basis(self, x, sym):
        raise NotImplementedError

    def check_symbol(self, sym):
        raise NotImplementedError

    def basis(self, count):
        raise NotImplementedError

    def params(self):
        return {}

    def describe(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.family}({inner})"

    def vec(self, terms):
        return ModVec(self, terms)

    def basis_vec(self, sym):
        return ModVec(self, {sym: ONE})


@dataclass(frozen=True)
class Omega(ModuleDescriptor):
    lam: Scalar
    b: Scalar = ZERO
    family = "OMEGA"

    def __post_init__(self):
        object.__setattr__(self, "lam", _sc(self.lam))
        object.__setattr__(self, "b", _sc(self.b))
        if not self.lam:
            raise ValueError("Omega(lambda) needs lambda != 0")

    def check_symbol(self, sym):
        if not (len(sym) == 2 and sym[0] == "E" and sym[1] >= 0):
            raise ValueError(f"{sym} is not a basis symbol of OMEGA")

    def basis(self, count):
        return [("E", k) for k in range(count)]

    def act_basis(self, x, sym):
        k = sym[1]
        out = {}
        for m, c in x.coeffs.items():
            n = k + m
            for i, coef in c.items():
                scale = coef * self.lam ** i
                # (theta - i)^n expanded in powers of theta
                for j in range(n + 1):
                    v = scale * (comb(n, j) * (-i) ** (n - j))
                    if v:
                        key = ("E", j)
                        nv = out.get(key, ZERO) + v
                        if nv:
                            out[key] = nv
                        else:
                            out.pop(key, None)
        return out

    def params(self):
        return {"lambda": str(self.lam), "b": str(self.b)}


@dataclass(frozen=True)
class Natural(ModuleDescriptor):
    b: Scalar = ZERO
    family = "NATURAL"

    def __post_init__(self):
        object.__setattr__(self, "b", _sc(self.b))

    def check_symbol(self, sym):
        if not (len(sym) == 2 and sym[0] == "T"):
            raise ValueError(f"{sym} is not a basis symbol of NATURAL")

    def basis(self, count):
        return [("T", k) for k in _zigzag(count)]

    def act_basis(self, x, sym):
        k = sym[1]
        out = {}
        for m, c in x.coeffs.items():
            eig = Scalar(k) ** m
            if not eig:
                continue
            for i, coef in c.items():
                key = ("T", k + i)
                nv = out.get(key, ZERO) + coef * eig
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def params(self):
        return {"b": str(self.b)}


@dataclass(frozen=True)
class VPrime00(ModuleDescriptor):
    """C[t, 1/t]/C with d_k t^n = n t^(k+n); no K-action, no twist."""

    family = "VPRIME00"
    has_k_action = False
    b = None

    def check_symbol(self, sym):
        if not (len(sym) == 2 and sym[0] == "T" and sym[1] != 0):
            raise ValueError(f"{sym} is not a basis symbol of VPRIME00")

    def basis(self, count):
        return [("T", k) for k in _zigzag(count + 1)[1:]]

    def act_basis(self, x, sym):
        raise UnsupportedAction("C[t, 1/t]/C is not a K-module")


@dataclass(frozen=True)
class KQuotient(ModuleDescriptor):
    """K / K beta with beta rescaled to leading coefficient 1."""

    beta: OreElem
    b: Scalar = ZERO
    family = "KQUOTIENT"

    def __post_init__(self):
        beta = self.beta
        if not isinstance(beta, OreElem) or type(beta) is not OreElem:
            raise TypeError("KQuotient needs an OreElem with Laurent coefficients")
        if not beta or beta.degree() < 1:
            raise ValueError("beta must have generator degree >= 1")
        lc = beta.leading_coeff()
        if not lc.is_unit():
            raise ValueError(f"leading coefficient {lc} of beta is not a unit of C[t, 1/t]")
        if lc != LaurentPoly.const(1):
            beta = beta.left_scale(lc.inv())
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "b", _sc(self.b))

    @property
    def order(self):
        return self.beta.degree()

    @property
    def gen(self):
        return self.beta.gen

    def check_symbol(self, sym):
        if not (len(sym) == 3 and sym[0] == "B" and 0 <= sym[2] < self.order):
            raise ValueError(f"{sym} is not a basis symbol of {self.describe()}")

    def basis(self, count):
        out = []
        for k in _zigzag(count):
            for m in range(self.order):
                out.append(("B", k, m))
                if len(out) == count:
                    return out
        return out

    def representative(self, sym):
        _, k, m = sym
        return OreElem({m: LaurentPoly.monomial(k)}, self.gen)

    def reduce(self, x):
        """Remainder of x modulo the left ideal K beta, as basis terms."""
        _, r = right_divide(x, self.beta)
        out = {}
        for m, c in r.coeffs.items():
            for k, coef in c.items():
                out[("B", k, m)] = coef
        return out

    def act_basis(self, x, sym):
        x = convert_generator(x, self.gen)
        return self.reduce(ore_mul(x, self.representative(sym)))

    def params(self):
        from .expr import format_ore

        return {"beta": format_ore(self.beta), "gen": str(self.gen), "b": str(self.b)}


@dataclass(frozen=True)
class FractionModule(ModuleDescriptor):
    """d/dt acts as f -> f' + f * sum alpha_i / (t - a_i).

    Vectors live in C[t, 1/t, 1/(t - a_i)], written in the partial-fraction
    basis T(k) = t^k (k in Z) and P(i, j) = (t - a_i)^-j for nonzero poles.
    The module generated by 1 sits inside this space.
    """

    poles: tuple
    alphas: tuple
    b: Scalar = ZERO
    family = "FRACTION"

    def __post_init__(self):
        poles = tuple(_sc(a) for a in self.poles)
        alphas = tuple(_sc(a) for a in self.alphas)
        if len(poles) != len(alphas):
            raise ValueError("poles and alphas must have equal length")
        if len(set(poles)) != len(poles):
            raise ValueError("poles must be pairwise distinct")
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "b", _sc(self.b))

    @property
    def nonzero_poles(self):
        return [i for i, a in enumerate(self.poles) if a]

    def connection(self):
        g = RatFunc(0)
        for a, al in zip(self.poles, self.alphas):
            if al:
                g = g + pole_fraction(al, a)
        return g

    def check_symbol(self, sym):
        if sym[0] == "T" and len(sym) == 2:
            return
        if sym[0] == "P" and len(sym) == 3 and sym[1] in self.nonzero_poles and sym[2] >= 1:
            return
        raise ValueError(f"{sym} is not a basis symbol of {self.describe()}")

    def basis(self, count):
        out = [("T", 0)]
        r = 1
        while len(out) < count:
            out.append(("T", r))
            out.append(("T", -r))
            out.extend(("P", i, r) for i in self.nonzero_poles)
            r += 1
        return out[:count]

    def to_ratfunc(self, terms):
        return _fraction_to_ratfunc(self, tuple(sorted(terms.items())))

    def from_ratfunc(self, r):
        return _partial_fractions(self, r)

    def apply_ddt(self, f):
        return f.derive(Gen.DDT) + f * self.connection()

    def act_basis(self, x, sym):
        x = convert_generator(x, Gen.DDT)
        f = self.to_ratfunc({sym: ONE})
        total = RatFunc(0)
        power = f
        top = x.degree()
        for m in range(top + 1 if top is not None else 0):
            c = x.coeffs.get(m)
            if c is not None:
                total = total + power * RatFunc(c)
            if m < top:
                power = self.apply_ddt(power)
        return self.from_ratfunc(total)

    def params(self):
        return {
            "poles": "[" + ", ".join(str(a) for a in self.poles) + "]",
            "alphas": "[" + ", ".join(str(a) for a in self.alphas) + "]",
            "b": str(self.b),
        }


@lru_cache(maxsize=_CACHE_SIZE)
def _fraction_to_ratfunc(owner, items):
    total = RatFunc(0)
    for sym, c in items:
        if sym[0] == "T":
            total = total + RatFunc(LaurentPoly.monomial(sym[1], c))
        else:
            total = total + pole_fraction(c, owner.poles[sym[1]], sym[2])
    return total


def _partial_fractions(owner, r):
    num, den = r.num, r.den
    out = {}
    q, _ = poly_divmod(num, den)
    for k, c in q.items():
        out[("T", k)] = c
    rest = den
    mult = {}
    for idx, a in enumerate(owner.poles):
        e = 0
        while rest.degree() > 0:
            qq, rem = synthetic_divide(rest, a)
            if rem:
                break
            rest, e = qq, e + 1
        if e:
            mult[idx] = e
    if 0 not in [a for a in owner.poles]:
        e = 0
        while rest.degree() > 0 and not rest.coeff(0):
            rest, e = rest.shift(-1), e + 1
        if e:
            mult[None] = e
    if rest.degree() != 0:
        raise NotInSubmodule(f"{r} has poles outside {owner.describe()}")
    for idx, e in mult.items():
        a = ZERO if idx is None else owner.poles[idx]
        cof = poly_divmod(den, LaurentPoly({0: -a, 1: 1}) ** e)[0]
        n_s = taylor_shift(num, a)
        d_s = taylor_shift(cof, a)
        d0 = d_s.coeff(0).inv()
        series = []
        for n in range(e):
            acc = n_s.coeff(n)
            for j in range(1, n + 1):
                acc = acc - d_s.coeff(j) * series[n - j]
            series.append(acc * d0)
        for n, c in enumerate(series):
            if not c:
                continue
            power = e - n
            if not a:
                key = ("T", -power)
            else:
                key = ("P", idx, power)
            nv = out.get(key, ZERO) + c
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def format_symbol(sym):
    if len(sym) == 2:
        return f"{sym[0]}({sym[1]})"
    return f"{sym[0]}({sym[1]},{sym[2]})"


class ModVec:
    """Finite linear combination of basis symbols of one module."""

    __slots__ = ("owner", "terms")

    def __init__(self, owner, terms=None):
        self.owner = owner
        clean = {}
        for sym, c in (terms or {}).items():
            c = _sc(c)
            if c:
                owner.check_symbol(sym)
                clean[sym] = c
        self.terms = clean

    @classmethod
    def _raw(cls, owner, terms):
        v = object.__new__(cls)
        v.owner, v.terms = owner, terms
        return v

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coeff(self, sym):
        return self.terms.get(sym, ZERO)

    def _same(self, other):
        if not isinstance(other, ModVec) or other.owner != self.owner:
            raise TypeError("vectors belong to different modules")

    def __add__(self, other):
        self._same(other)
        return ModVec._raw(self.owner, vec_add(self.terms, other.terms))

    def __sub__(self, other):
        self._same(other)
        return ModVec._raw(self.owner, vec_add(self.terms, other.terms, scales=(1, -1)))

    def __neg__(self):
        return ModVec._raw(self.owner, {k: -c for k, c in self.terms.items()})

    def __mul__(self, c):
        c = Scalar.coerce(c)
        if c is NotImplemented:
            return c
        if not c:
            return ModVec._raw(self.owner, {})
        return ModVec._raw(self.owner, {k: a * c for k, a in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModVec):
            return NotImplemented
        return self.owner == other.owner and self.terms == other.terms

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_text(self):
        return _join([_monomial_term(c, format_symbol(s)) for s, c in self.sorted_terms()])

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ModVec({self.owner.describe()}: {self.to_text()})"


_SYM_TAIL = re.compile(
    r"(?:\*\s*)?([EBTP])\s*(?:\(\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\)|(-?\d+))\s*$"
)


def parse_modvec(src, owner):
    """Read text such as ``2*E(1) - E0`` or ``B(2,1) + 1/2*B(-1,0)``."""
    src = src.strip()
    if not src:
        raise ValueError("empty vector")
    if src == "0":
        return ModVec(owner)
    # split on top-level + and - that start a new term
    pieces, depth, cur = [], 0, ""
    for idx, ch in enumerate(src):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("*", "/", "^")):
            pieces.append(cur)
            cur = ch
        else:
            cur += ch
    pieces.append(cur)
    terms = {}
    for piece in pieces:
        piece = piece.strip()
        m = _SYM_TAIL.search(piece)
        if not m:
            raise ValueError(f"cannot read basis symbol in {piece!r}")
        head = piece[: m.start()].strip()
        if m.group(4) is not None:
            sym = (m.group(1), int(m.group(4)))
        elif m.group(3) is not None:
            sym = (m.group(1), int(m.group(2)), int(m.group(3)))
        else:
            sym = (m.group(1), int(m.group(2)))
        if head in ("", "+"):
            c = ONE
        elif head == "-":
            c = -ONE
        else:
            c = parse_scalar(head)
        terms[sym] = terms.get(sym, ZERO) + c
    return ModVec(owner, terms)


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=_CACHE_SIZE)
def _k_act_basis(owner, x, sym):
    return owner.act_basis(x, sym)


@lru_cache(maxsize=_CACHE_SIZE)
def _vir_basis(owner, n, sym):
    if isinstance(owner, VPrime00):
        k = sym[1]
        return {} if n + k == 0 or k == 0 else {("T", n + k): Scalar(k)}
    return _k_act_basis(owner, make_Dn(n, owner.b), sym)


def _combine(owner, v, basis_fn):
    acc = {}
    for sym, c in v.terms.items():
        img = basis_fn(sym)
        for k, a in img.items():
            nv = acc.get(k, ZERO) + a * c
            if nv:
                acc[k] = nv
            else:
                acc.pop(k, None)
    return ModVec._raw(owner, acc)


def k_act(x, v):
    """The K-module action of the operator x on v (generators converted)."""
    owner = v.owner
    if not owner.has_k_action:
        raise UnsupportedAction(f"{owner.family} carries no K-action")
    if isinstance(x, (int, Scalar)) or isinstance(x, LaurentPoly):
        x = OreElem.from_coeff(x)
    return _combine(owner, v, lambda s: _k_act_basis(owner, x, s))


def vir_act(n, v):
    """d_n . v, realized as (t^n theta + n b t^n) . v (zero central charge)."""
    owner = v.owner
    if isinstance(owner, VPrime00):
        return vprime_act(n, v)
    return _combine(owner, v, lambda s: _vir_basis(owner, n, s))


def t_act(m, v):
    owner = v.owner
    if not owner.has_k_action:
        raise UnsupportedAction(f"{owner.family} carries no t-action")
    return k_act(OreElem.from_coeff(LaurentPoly.monomial(m)), v)


def vprime_act(k, v):
    """d_k . t^n = n t^(k+n) on C[t, 1/t]/C, with t^0 identified with 0."""
    if not isinstance(v.owner, VPrime00):
        raise TypeError("vprime_act needs a VPRIME00 vector")
    return _combine(v.owner, v, lambda s: _vir_basis(v.owner, k, s))


def omega_closed_form(n, k, lam, b):
    """lam^n (theta + n(b - 1)) (theta - n)^k, expanded in the E basis.

    Polynomials in theta are built directly (the variable of a LaurentPoly
    plays theta here); no module action is involved.
    """
    lam, b = _sc(lam), _sc(b)
    first = LaurentPoly({0: n * (b - 1), 1: 1})
    second = LaurentPoly({0: -n, 1: 1}) ** k
    poly = (first * second).scale(lam ** n)
    return ModVec(Omega(lam, b), {("E", j): c for j, c in poly.items()})


def fraction_act(n, v):
    """d_n . f = t^(n+1) (f' + f g) + n b t^n f, computed on rational functions."""
    owner = v.owner
    if not isinstance(owner, FractionModule):
        raise TypeError("fraction_act needs a FRACTION vector")
    f = owner.to_ratfunc(v.terms)
    g = owner.connection()
    tn = RatFunc(LaurentPoly.monomial(n))
    tn1 = RatFunc(LaurentPoly.monomial(n + 1))
    res = tn1 * (f.derive(Gen.DDT) + f * g) + tn * f * (owner.b * n)
    return ModVec(owner, owner.from_ratfunc(res))


def lemma8_map(v):
    """The Vir-isomorphism theta A_1 -> C[t, 1/t]/C for the natural module.

    theta t^n = n t^n is sent to t^n, so t^n itself goes to t^n / n.
    """
    owner = v.owner
    if not isinstance(owner, Natural) or owner.b != ONE:
        raise TypeError("lemma8_map is defined on the natural module twisted by b = 1")
    if v.coeff(("T", 0)):
        raise NotInSubmodule("the T(0) component lies outside theta*A")
    target = VPrime00()
    return ModVec(target, {("T", k): c / k for (_, k), c in v.terms.items()})


def theta_surjective(owner):
    """Whether theta A = A, where that is decidable; None otherwise."""
    if isinstance(owner, (Omega, Natural)):
        return False
    return None


def clear_caches():
    _k_act_basis.cache_clear()
    _vir_basis.cache_clear()
    _fraction_to_ratfunc.cache_clear()
