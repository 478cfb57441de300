"""Second-order operators theta^2 - f(t) over C(t): witnesses and certificates.

theta^2 - f factors in C(t)[theta] exactly when

    f = h^2 - theta(h) - 2 sum_i a_i (h(t) - h(a_i)) / (t - a_i)

for a Laurent polynomial h and distinct nonzero a_i with
h(a_i) = sum_{j != i} a_j / (a_i - a_j) - 1/2.  The factorization is then
(theta - g) (theta + g) with g = h - sum_i a_i / (t - a_i).

Nothing here decides irreducibility in general.  We construct, verify,
certify through the degree criterion or the f(d/dt) - t family, and search
inside explicit bounds.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import BudgetExceeded, ConstantPolynomial, ConstraintViolated, DuplicatePoles, ZeroPole
from .laurent import Gen, LaurentPoly, divided_difference
from .ore import OreElem, RatOreElem, ore_mul, substitute_generator
from .ratfunc import RatFunc, pole_fraction
from .scalar import ONE, ZERO, Scalar

HALF = Scalar(Fraction(1, 2))


def pole_constraint(poles, i):
    """sum_{j != i} a_j / (a_i - a_j) - 1/2."""
    ai = poles[i]
    total = -HALF
    for j, aj in enumerate(poles):
        if j != i:
            total = total + aj / (ai - aj)
    return total


def _check_poles(poles):
    poles = [Scalar.coerce(a) for a in poles]
    if len(set(poles)) != len(poles):
        raise DuplicatePoles(f"poles must be pairwise distinct: {[str(a) for a in poles]}")
    for a in poles:
        if not a:
            raise ZeroPole("poles must be nonzero")
    return poles


def reducible_form(h, poles):
    """The right-hand side h^2 - theta(h) - 2 sum a_i (h - h(a_i))/(t - a_i).

    No constraint is checked; each quotient is an exact division.
    """
    f = h * h - h.derive(Gen.THETA)
    for a in poles:
        f = f - divided_difference(h, a).scale(2 * a)
    return f


@dataclass(frozen=True)
class FactorWitness:
    poles: tuple
    h: LaurentPoly
    g1: RatFunc = field(compare=False)

    @classmethod
    def build(cls, h, poles):
        poles = tuple(_check_poles(poles))
        g = RatFunc(h)
        for a in poles:
            g = g + pole_fraction(-a, a)
        return cls(poles, h, g)

    def constraint_failures(self):
        out = []
        for i, a in enumerate(self.poles):
            want = pole_constraint(self.poles, i)
            got = self.h.eval(a)
            if got != want:
                out.append((i, a, got, want))
        return out

    def factors(self):
        """(theta - g1, theta + g1) in C(t)[theta]."""
        th = RatOreElem.generator(Gen.THETA)
        return th - self.g1, th + self.g1

    def to_dict(self):
        from .expr import format_laurent, format_ratfunc

        return {
            "poles": [str(a) for a in self.poles],
            "h": format_laurent(self.h),
            "g1": format_ratfunc(self.g1),
        }


def construct_reducible(h, poles=()):
    """f with theta^2 - f = (theta - g1)(theta + g1), plus the witness."""
    h = LaurentPoly.coerce(h)
    w = FactorWitness.build(h, poles)
    bad = w.constraint_failures()
    if bad:
        raise ConstraintViolated(*bad[0])
    return reducible_form(h, w.poles), w


@dataclass
class VerifyResult:
    passed: bool
    product: RatOreElem
    target: RatOreElem
    difference: RatOreElem
    constraint_failures: list

    def __bool__(self):
        return self.passed


def theta_square_minus(f):
    return RatOreElem({2: 1, 0: -RatFunc(LaurentPoly.coerce(f))}, Gen.THETA)


def verify_factorization(f, w):
    """Expand (theta - g1)(theta + g1) and compare with theta^2 - f exactly."""
    left, right = w.factors()
    prod = ore_mul(left, right)
    target = theta_square_minus(f)
    diff = prod - target
    bad = w.constraint_failures()
    return VerifyResult(not diff and not bad, prod, target, diff, bad)


@dataclass(frozen=True)
class IrreducibilityCertificate:
    kind: str  # ODD_TOP_DEGREE | ODD_BOTTOM_DEGREE | LEMMA16
    data: object

    def to_dict(self):
        if self.kind == "LEMMA16":
            return {"kind": self.kind, "f": [str(c) for c in self.data]}
        return {"kind": self.kind, "degree": self.data}


def irreducible_by_degree(f):
    """Certificate for theta^2 - f when f has an odd positive top degree or an
    odd negative bottom degree; None when the criterion does not apply (which
    says nothing about reducibility)."""
    f = LaurentPoly.coerce(f)
    if not f:
        return None
    top, low = f.degree(), f.low_degree()
    if top > 0 and top % 2:
        return IrreducibilityCertificate("ODD_TOP_DEGREE", top)
    if low < 0 and low % 2:
        return IrreducibilityCertificate("ODD_BOTTOM_DEGREE", low)
    return None


def lemma15_reduce(f1, f2):
    """F = theta(f1) + f1^2 - f2.

    theta^2 + 2 f1 theta + f2 = (theta + f1)^2 - F, so the two operators are
    irreducible together.
    """
    f1, f2 = LaurentPoly.coerce(f1), LaurentPoly.coerce(f2)
    return f1.derive(Gen.THETA) + f1 * f1 - f2


def lemma15_operator(f1, f2):
    return RatOreElem({2: 1, 1: RatFunc(LaurentPoly.coerce(f1) * 2), 0: RatFunc(LaurentPoly.coerce(f2))})


def lemma15_transport(f1, w):
    """Factors of theta^2 + 2 f1 theta + f2 obtained from a witness for F.

    Substituting theta -> theta + f1 is a ring automorphism carrying
    theta^2 - F to the original operator, so it carries the factors along.
    """
    left, right = w.factors()
    s = RatFunc(LaurentPoly.coerce(f1))
    return substitute_generator(left, s), substitute_generator(right, s)


def lemma16_certified(coeffs):
    """beta = f(d/dt) - t for the polynomial f = sum coeffs[k] x^k.

    Returns (certificate, beta) with beta in d/dt normal form.
    """
    cs = [Scalar.coerce(c) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    if len(cs) < 2:
        raise ConstantPolynomial("f must be nonconstant")
    terms = {k: LaurentPoly.const(c) for k, c in enumerate(cs) if c}
    terms[0] = terms.get(0, LaurentPoly()) - LaurentPoly.monomial(1)
    beta = OreElem(terms, Gen.DDT)
    return IrreducibilityCertificate("LEMMA16", tuple(cs)), beta


def is_lemma16_shape(beta):
    """True when beta = f(d/dt) - t with constant coefficients and deg f >= 1."""
    if beta.gen is not Gen.DDT or not beta or beta.degree() < 1:
        return False
    for m, c in beta.coeffs.items():
        if m == 0:
            if not (c + LaurentPoly.monomial(1)).is_constant():
                return False
        elif not c.is_constant():
            return False
    return True


# ---------------------------------------------------------------------------
# bounded witness search
# ---------------------------------------------------------------------------

@dataclass
class SearchOutcome:
    witness: object  # FactorWitness or None
    tried: int
    pole_sets: int

    @property
    def found(self):
        return self.witness is not None


def _force_coefficient(coeffs, j, degree, f, poles):
    """Solve for coeffs[j] from the coefficient of t^degree (affine in it)."""
    coeffs[j] = ZERO
    base = reducible_form(LaurentPoly(coeffs), poles).coeff(degree)
    coeffs[j] = ONE
    slope = reducible_form(LaurentPoly(coeffs), poles).coeff(degree) - base
    if not slope:
        del coeffs[j]
        return False
    coeffs[j] = (f.coeff(degree) - base) / slope
    return True


def _candidates_for(f, poles, lo, hi, coeff_box):
    """Every h (within exponents [lo, hi]) left after forcing coefficients."""
    fd = f.degree() if f else 0
    fl = f.low_degree() if f else 0
    # effective top/bottom: zero leading squares force zero coefficients
    while hi > 0 and not f.coeff(2 * hi):
        hi -= 1
    while lo < 0 and not f.coeff(2 * lo):
        lo += 1
    if f and (fd > max(2 * hi, hi, 0) or fl < min(2 * lo, lo, 0)):
        return []
    tops = [None]
    if hi > 0:
        r = f.coeff(2 * hi).sqrt()
        if r is None:
            return []
        tops = [r, -r]
    bottoms = [None]
    if lo < 0:
        r = f.coeff(2 * lo).sqrt()
        if r is None:
            return []
        bottoms = [r, -r]
    out = []
    for top, bottom in product(tops, bottoms):
        coeffs = {}
        if top is not None:
            coeffs[hi] = top
        if bottom is not None:
            coeffs[lo] = bottom
        ok = True
        for step in range(1, -lo):  # c_(lo+1) .. c_(-1)
            j = lo + step
            if not _force_coefficient(coeffs, j, 2 * lo + step, f, poles):
                ok = False
                break
        for step in range(1, hi):  # c_(hi-1) .. c_1
            j = hi - step
            if not ok or not _force_coefficient(coeffs, j, 2 * hi - step, f, poles):
                ok = False
                break
        if not ok:
            continue
        if hi > 0:
            if not _force_coefficient(coeffs, 0, hi, f, poles):
                continue
            out.append(LaurentPoly(coeffs))
        elif lo < 0:
            if not _force_coefficient(coeffs, 0, lo, f, poles):
                continue
            out.append(LaurentPoly(coeffs))
        else:
            # h is a constant c with f = c^2
            if poles:
                out.append(LaurentPoly.const(pole_constraint(list(poles), 0)))
            else:
                r = f.coeff(0).sqrt()
                roots = [r, -r] if r is not None else list(coeff_box)
                out.extend(LaurentPoly.const(c) for c in roots)
    # dedupe, keep order
    seen, uniq = set(), []
    for h in out:
        if h not in seen:
            seen.add(h)
            uniq.append(h)
    return uniq


def _try_pole_set(f, poles, lo, hi, coeff_box):
    tried = 0
    for h in _candidates_for(f, poles, lo, hi, coeff_box):
        tried += 1
        if reducible_form(h, poles) != f:
            continue
        w = FactorWitness.build(h, poles)
        if w.constraint_failures():
            continue
        if verify_factorization(f, w):
            return w, tried
    return None, tried


def search_witness(f, pole_candidates=(), h_bounds=(0, 1), coeff_box=(), budget=10_000, workers=1):
    """Look for a witness with poles from ``pole_candidates`` and h spanning
    exponents inside ``h_bounds``.

    Coefficients of h are pinned by matching f degree by degree where the
    equations allow it; ``coeff_box`` supplies values for anything left
    free.  Pole subsets are visited by size and then lexicographically; the
    first verified witness in that order wins, whatever ``workers`` is.
    Returning no witness is not an irreducibility proof.
    """
    f = LaurentPoly.coerce(f)
    cands = _check_poles(pole_candidates)
    lo, hi = h_bounds
    if lo > hi:
        raise ValueError("h_bounds must satisfy lo <= hi")
    lo, hi = min(lo, 0), max(hi, 0)
    box = [Scalar.coerce(c) for c in coeff_box]
    subsets = [tuple(s) for r in range(len(cands) + 1) for s in combinations(cands, r)]
    if len(subsets) > budget:
        raise BudgetExceeded(0, budget)

    def job(ps):
        return _try_pole_set(f, ps, lo, hi, box)

    tried = 0
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, subsets))
    else:
        results = []
        for ps in subsets:
            res = job(ps)
            results.append(res)
            if res[0] is not None:
                break
    for idx, (w, n) in enumerate(results):
        tried += n
        if tried > budget:
            raise BudgetExceeded(tried, budget)
        if w is not None:
            return SearchOutcome(w, tried, idx + 1)
    return SearchOutcome(None, tried, len(results))
