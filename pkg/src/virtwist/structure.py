"""Executable structure checks for twisted modules.

Bracket and operator-identity verifiers, the window probe for invariant
subspaces, recovery of the t-action from Virasoro words, fingerprints and
the isomorphism decision.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotEigenvector, TwistDegenerate
from .factor import irreducible_by_degree, is_lemma16_shape, lemma15_reduce
from .laurent import Gen
from .linalg import EchelonBasis, bareiss_rank, dense, scalar_multiple
from .modules import (
    FractionModule,
    KQuotient,
    ModVec,
    Natural,
    Omega,
    VPrime00,
    format_symbol,
    omega_closed_form,
    t_act,
    theta_surjective,
    vir_act,
)
from .ore import convert_generator
from .scalar import Scalar

HALF = Scalar(Fraction(1, 2))


def twist_constant(b):
    return b * (b - 1)


def wk_apply(k, v, act=vir_act):
    """w_k . v = -1/2 d_(k-1) d_1 v - 1/2 d_(k+1) d_(-1) v + d_k d_0 v."""
    return (
        act(k, act(0, v))
        - act(k - 1, act(1, v)) * HALF
        - act(k + 1, act(-1, v)) * HALF
    )


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    module: str
    passed: bool
    checked: int
    counterexample: dict = None

    def to_dict(self):
        return {
            "check": self.name,
            "module": self.module,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }

    def __bool__(self):
        return self.passed


def _fail(name, M, checked, **data):
    ce = {k: (v.to_text() if isinstance(v, ModVec) else str(v)) for k, v in data.items()}
    return CheckReport(name, M.describe(), False, checked, ce)


def _vectors(M, budget, extra):
    """The first ``budget`` basis vectors followed by any extra vectors."""
    return [M.basis_vec(s) for s in M.basis(budget)] + list(extra or ())


def bracket_check(M, rng=5, basis_budget=10, act=None, vectors=None):
    """[d_m, d_n] v = (n - m) d_(m+n) v for |m|, |n| <= rng on basis vectors."""
    act = act or vir_act
    checked = 0
    for v in _vectors(M, basis_budget, vectors):
        single = {n: act(n, v) for n in range(-2 * rng, 2 * rng + 1)}
        for m in range(-rng, rng + 1):
            for n in range(m + 1, rng + 1):
                lhs = act(m, single[n]) - act(n, single[m])
                rhs = single[m + n] * (n - m)
                checked += 1
                if lhs != rhs:
                    return _fail("bracket", M, checked, m=m, n=n, v=v, lhs=lhs, rhs=rhs)
    return CheckReport("bracket", M.describe(), True, checked)


def wk_check(M, k_range=4, basis_budget=10, act=None, tact=None, vectors=None):
    """w_k v = b(b - 1) t^k v, with w_k built from Virasoro actions only."""
    act = act or vir_act
    tact = tact or t_act
    c = twist_constant(M.b)
    checked = 0
    for v in _vectors(M, basis_budget, vectors):
        for k in range(-k_range, k_range + 1):
            lhs = wk_apply(k, v, act)
            rhs = tact(k, v) * c
            checked += 1
            if lhs != rhs:
                return _fail("wk", M, checked, k=k, v=v, lhs=lhs, rhs=rhs)
    return CheckReport("wk", M.describe(), True, checked)


def hvir_check(M, rng=5, basis_budget=10, act=None, tact=None, vectors=None):
    """d_n t^m v - t^m d_n v = m t^(m+n) v (central terms zero)."""
    act = act or vir_act
    tact = tact or t_act
    checked = 0
    for v in _vectors(M, basis_budget, vectors):
        for m in range(-rng, rng + 1):
            tv = tact(m, v)
            for n in range(-rng, rng + 1):
                lhs = act(n, tv) - tact(m, act(n, v))
                rhs = tact(m + n, v) * m
                checked += 1
                if lhs != rhs:
                    return _fail("hvir", M, checked, m=m, n=n, v=v, lhs=lhs, rhs=rhs)
    return CheckReport("hvir", M.describe(), True, checked)


def eq41_check(lam, b, n_range=5, k_max=5, act=None):
    """Closed form lam^n (theta + n(b-1)) (theta - n)^k against the module action."""
    act = act or vir_act
    M = Omega(lam, b)
    checked = 0
    for k in range(k_max + 1):
        v = M.basis_vec(("E", k))
        for n in range(-n_range, n_range + 1):
            lhs = act(n, v)
            rhs = omega_closed_form(n, k, lam, b)
            checked += 1
            if lhs != rhs:
                return _fail("eq41", M, checked, n=n, k=k, lhs=lhs, rhs=rhs)
    return CheckReport("eq41", M.describe(), True, checked)


# ---------------------------------------------------------------------------
# window probe
# ---------------------------------------------------------------------------

PROPER_SUBSPACE_WITNESS = "PROPER_SUBSPACE_WITNESS"
WINDOW_FILLED = "WINDOW_FILLED"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class ProbeReport:
    module: str
    window: list
    seed_vector: str
    generator_range: int
    word_length: int
    word_span_dim: int
    spanned_dim: int
    window_dim: int
    verdict: str
    escapes: int
    closed: bool
    basis: list = field(default_factory=list)  # list of term dicts

    def to_dict(self):
        return {
            "module": self.module,
            "window": [format_symbol(s) for s in self.window],
            "seed_vector": self.seed_vector,
            "generator_range": self.generator_range,
            "word_length": self.word_length,
            "word_span_dim": self.word_span_dim,
            "spanned_dim": self.spanned_dim,
            "window_dim": self.window_dim,
            "verdict": self.verdict,
            "escapes": self.escapes,
            "closed": self.closed,
            "basis": [_terms_text(t) for t in self.basis],
        }


def _terms_text(terms):
    from .expr import _join, _monomial_term

    return _join([_monomial_term(c, format_symbol(s)) for s, c in sorted(terms.items())])


def _images(M, vectors, gens, workers):
    """d_n applied to every vector, in canonical (vector, n) order."""
    jobs = [(v, n) for v in vectors for n in gens]

    def run(job):
        v, n = job
        return vir_act(n, ModVec._raw(M, v)).terms

    if workers and workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, jobs))
    return [run(j) for j in jobs]


def submodule_probe(M, seed, N=3, L=4, window=7, workers=1, saturate=True):
    """Look for a proper subspace of a finite window stable under d_n, |n| <= N.

    Phase one spans all words of length <= L applied to ``seed`` and keeps
    the part of that span supported in the window.  Phase two (``saturate``)
    closes it under v -> window part of d_n v.  The result is stable under
    the window-truncated generators by construction; ``escapes`` counts
    images with support outside the window and ``closed`` says there were
    none, in which case the span is a genuine finite-dimensional
    submodule for the probed generators.
    """
    if isinstance(window, int):
        window = M.basis(window)
    window = list(window)
    allowed = set(window)
    if not seed:
        raise ValueError("seed vector must be nonzero")
    if not set(seed.terms) <= allowed:
        raise ValueError("seed vector must be supported in the window")
    gens = list(range(-N, N + 1))
    order = {s: i for i, s in enumerate(window)}

    def priority(sym):
        # out-of-window columns are eliminated first
        return (1, order[sym]) if sym in allowed else (0, repr(sym))

    full = EchelonBasis(priority)
    full.add(seed.terms)
    frontier = [dict(seed.terms)]
    for _ in range(L):
        fresh = []
        for img in _images(M, frontier, gens, workers):
            if full.add(img):
                fresh.append(img)
        if not fresh:
            break
        frontier = fresh
    inside = full.basis_within(allowed)
    word_dim = len(inside)

    span = EchelonBasis(lambda s: order[s])
    for row in inside:
        span.add(row)
    escapes = 0
    queue = [dict(r) for r in inside]
    stable = True
    while queue:
        batch, queue = queue, []
        for img in _images(M, batch, gens, workers):
            outside = [s for s in img if s not in allowed]
            if outside:
                escapes += 1
            proj = {s: c for s, c in img.items() if s in allowed}
            if span.contains(proj):
                continue
            if not saturate:
                stable = False
                continue
            span.add(proj)
            queue.append(proj)
    dim = len(span)
    if not stable:
        verdict = INCONCLUSIVE
    elif dim == len(window):
        verdict = WINDOW_FILLED
    else:
        verdict = PROPER_SUBSPACE_WITNESS
    return ProbeReport(
        module=M.describe(),
        window=window,
        seed_vector=seed.to_text(),
        generator_range=N,
        word_length=L,
        word_span_dim=word_dim,
        spanned_dim=dim,
        window_dim=len(window),
        verdict=verdict,
        escapes=escapes,
        closed=escapes == 0,
        basis=span.basis(),
    )


def verify_probe_certificate(M, report):
    """Re-check a probe's span independently with fraction-free ranks."""
    allowed = set(report.window)
    cols = list(report.window)
    base = report.basis
    r0 = bareiss_rank(dense(base, cols)) if base else 0
    if r0 != len(base):
        return False
    for row in base:
        for n in range(-report.generator_range, report.generator_range + 1):
            img = vir_act(n, ModVec._raw(M, row)).terms
            proj = {s: c for s, c in img.items() if s in allowed}
            if not proj:
                continue
            if bareiss_rank(dense(base + [proj], cols)) != r0:
                return False
    return True


# ---------------------------------------------------------------------------
# recovering the K-structure
# ---------------------------------------------------------------------------

def recover_c(M, v, act=vir_act):
    """The scalar by which w_0 acts on v, from Virasoro actions alone."""
    if not v:
        raise ValueError("v must be nonzero")
    w = wk_apply(0, v, act)
    c = scalar_multiple(w.terms, v.terms)
    if c is None:
        raise NotEigenvector(f"w_0 . {v.to_text()} is not a multiple of it")
    return c


def recover_t_action(M, k, v, act=vir_act):
    """t^k v = (w_k / b(b-1)) v."""
    c = recover_c(M, v, act)
    if not c:
        raise TwistDegenerate("b(b - 1) = 0; t cannot be recovered from Vir")
    return wk_apply(k, v, act) * c.inv()


@dataclass
class Fingerprint:
    c: Scalar
    family: str
    params: dict
    b: object
    lambda_recovered: object = None

    def to_dict(self):
        return {
            "c": str(self.c),
            "family": self.family,
            "params": dict(self.params),
            "b": None if self.b is None else str(self.b),
            "lambda_recovered": None if self.lambda_recovered is None else str(self.lambda_recovered),
        }


def fingerprint(M):
    v = M.basis_vec(M.basis(1)[0])
    c = recover_c(M, v)
    if M.b is not None and c != twist_constant(M.b):
        raise AssertionError(f"w_0 acts by {c}, expected b(b-1) = {twist_constant(M.b)}")
    lam = None
    if isinstance(M, Omega) and c:
        img = recover_t_action(M, 1, v)
        lam = scalar_multiple(img.terms, v.terms)
        if lam != M.lam:
            raise AssertionError(f"recovered lambda {lam} differs from {M.lam}")
    params = {k: v for k, v in M.params().items() if k != "b"}
    return Fingerprint(c, M.family, params, M.b, lam)


# ---------------------------------------------------------------------------
# Theorems on irreducibility and isomorphism
# ---------------------------------------------------------------------------

ISOMORPHIC = "ISOMORPHIC"
NOT_ISOMORPHIC = "NOT_ISOMORPHIC"
UNKNOWN = "UNKNOWN"


def k_irreducible(M):
    """True when M is known to be a simple K-module, None when undecided here."""
    if isinstance(M, (Omega, Natural, FractionModule)):
        return True
    if isinstance(M, KQuotient):
        beta = M.beta
        if M.order == 1:
            return True
        if is_lemma16_shape(beta):
            return True
        th = convert_generator(beta, Gen.THETA)
        if th.degree() == 2:
            # the leading coefficient is a unit, so rescaling keeps K beta
            th = th.left_scale(th.leading_coeff().inv())
            F = lemma15_reduce(th.coeff(1) * HALF, th.coeff(0))
            if irreducible_by_degree(F) is not None:
                return True
        return None
    return None


def _same_k_data(M1, M2):
    p1 = {k: v for k, v in M1.params().items() if k != "b"}
    p2 = {k: v for k, v in M2.params().items() if k != "b"}
    return type(M1) is type(M2) and p1 == p2


def k_isomorphic(M1, M2):
    """K-module isomorphism where it is decidable from the data; else None."""
    if _same_k_data(M1, M2):
        return True
    o1, o2 = isinstance(M1, Omega), isinstance(M2, Omega)
    if o1 and o2:
        return False  # t - lambda kills E(0) only for its own lambda
    if o1 != o2:
        return False  # torsion versus torsion-free over C[t, 1/t]
    return None


@dataclass
class Decision:
    verdict: str
    reason: str

    def to_dict(self):
        return {"verdict": self.verdict, "reason": self.reason}


def theorem12_decide(M1, M2):
    if isinstance(M1, VPrime00) or isinstance(M2, VPrime00):
        if isinstance(M1, VPrime00) and isinstance(M2, VPrime00):
            return Decision(ISOMORPHIC, "identical modules")
        return Decision(UNKNOWN, "C[t, 1/t]/C is only compared with itself")
    if M1 == M2:
        return Decision(ISOMORPHIC, "identical descriptors")
    b1, b2 = M1.b, M2.b
    c1, c2 = twist_constant(b1), twist_constant(b2)
    if c1 != c2:
        return Decision(NOT_ISOMORPHIC, f"w_0 acts by {c1} and {c2}")
    if c1 and b1 != b2:
        return Decision(NOT_ISOMORPHIC, "t is recovered from w_k, which forces b = b1")
    irr = (k_irreducible(M1), k_irreducible(M2))
    kiso = k_isomorphic(M1, M2)
    if kiso is False and irr == (True, True):
        return Decision(NOT_ISOMORPHIC, "the K-modules are not isomorphic")
    if b1 == b2:
        if kiso:
            return Decision(ISOMORPHIC, "isomorphic K-modules with equal twist")
        if irr != (True, True):
            return Decision(UNKNOWN, "simplicity of a K-module is undecided")
        return Decision(UNKNOWN, "K-module isomorphism undecided")
    # {b, b1} = {0, 1}
    if irr != (True, True):
        return Decision(UNKNOWN, "simplicity of a K-module is undecided")
    if kiso is None:
        return Decision(UNKNOWN, "K-module isomorphism undecided")
    one = M1 if b1 == 1 else M2
    surj = theta_surjective(one)
    if surj is False:
        return Decision(NOT_ISOMORPHIC, "theta A != A for the b = 1 module")
    if surj is True:
        return Decision(ISOMORPHIC, "theta A = A and the K-modules agree")
    return Decision(UNKNOWN, "whether theta A = A is undecided")


IRREDUCIBLE = "IRREDUCIBLE"
REDUCIBLE = "REDUCIBLE"


def theorem9_predict(M):
    """Simplicity of the twisted module as far as it is decidable here."""
    if isinstance(M, VPrime00):
        return Decision(IRREDUCIBLE, "C[t, 1/t]/C is simple")
    if k_irreducible(M) is not True:
        return Decision(UNKNOWN, "simplicity of the K-module is undecided")
    b = M.b
    if b != 0 and b != 1:
        return Decision(IRREDUCIBLE, "b is neither 0 nor 1")
    if b == 1:
        surj = theta_surjective(M)
        if surj is None:
            return Decision(UNKNOWN, "whether theta A = A is undecided")
        return Decision(IRREDUCIBLE if surj else REDUCIBLE, f"theta A = A is {surj}")
    if isinstance(M, Natural):
        return Decision(REDUCIBLE, "the natural module has the constants as a submodule")
    if isinstance(M, Omega):
        return Decision(IRREDUCIBLE, "Omega is not the natural module")
    return Decision(UNKNOWN, "isomorphism with the natural module is undecided")
