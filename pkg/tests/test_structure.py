import random
from fractions import Fraction

import pytest

from virtwist.errors import NotEigenvector, TwistDegenerate
from virtwist.expr import parse
from virtwist.modules import FractionModule, KQuotient, ModVec, Natural, Omega, VPrime00, t_act, vir_act
from virtwist.sampling import modvec
from virtwist.scalar import S, Scalar
from virtwist.structure import (
    INCONCLUSIVE,
    ISOMORPHIC,
    NOT_ISOMORPHIC,
    PROPER_SUBSPACE_WITNESS,
    UNKNOWN,
    WINDOW_FILLED,
    bracket_check,
    eq41_check,
    fingerprint,
    hvir_check,
    k_irreducible,
    recover_c,
    recover_t_action,
    submodule_probe,
    theorem9_predict,
    theorem12_decide,
    verify_probe_certificate,
    wk_apply,
    wk_check,
)

HALF = Scalar(Fraction(1, 2))


def KQ(src, b=0):
    return KQuotient(parse(src, "ore"), b)


def corrupted(M):
    """vir_act with d_2 perturbed on one basis vector."""
    target = M.basis(3)[2]

    def act(n, v):
        out = vir_act(n, v)
        if n == 2 and v.coeff(target):
            out = out + M.basis_vec(target) * v.coeff(target)
        return out

    return act


def test_bracket_check_examples():
    assert bracket_check(Omega(2, HALF), 3).passed
    assert bracket_check(Natural(0), 3).passed
    rep = bracket_check(Omega(2, HALF), 3, act=corrupted(Omega(2, HALF)))
    assert not rep.passed
    assert set(rep.counterexample) == {"m", "n", "v", "lhs", "rhs"}


def test_wk_check_examples():
    M = Omega(3, 2)
    assert wk_check(M, 4).passed
    v = M.basis_vec(("E", 0))
    assert wk_apply(1, v) == t_act(1, v) * 2
    for M in (Natural(0), KQ("Th^2 - t", 0), Omega(2, 1), FractionModule((1,), (1,), 1)):
        for sym in M.basis(4):
            assert not wk_apply(3, M.basis_vec(sym))


def test_wk_check_catches_faults():
    M = Omega(3, 2)
    assert not wk_check(M, 2, act=corrupted(M)).passed


def test_hvir_and_omega_closed_form():
    assert hvir_check(KQ("Dt^2 - t", HALF), 3, 6).passed
    assert eq41_check(S(1, 1), 3).passed
    bad = lambda n, v: vir_act(n, v) * (2 if n == 3 else 1)  # noqa: E731
    assert not eq41_check(2, 3, act=bad).passed


def test_probe_omega_b1():
    M = Omega(2, 1)
    rep = submodule_probe(M, M.basis_vec(("E", 1)), 3, 4, 7)
    assert rep.verdict == PROPER_SUBSPACE_WITNESS
    assert rep.spanned_dim == 6 and rep.window_dim == 7
    assert all(not row.get(("E", 0)) for row in rep.basis)
    assert verify_probe_certificate(M, rep)


def test_probe_natural_constants():
    M = Natural(0)
    rep = submodule_probe(M, M.basis_vec(("T", 0)), 3, 4, 9)
    assert rep.verdict == PROPER_SUBSPACE_WITNESS
    assert rep.spanned_dim == 1 and rep.closed
    assert verify_probe_certificate(M, rep)


def test_probe_window_filled():
    M = Omega(2, HALF)
    rep = submodule_probe(M, M.basis_vec(("E", 0)), 3, 4, 7)
    assert rep.verdict == WINDOW_FILLED and rep.spanned_dim == 7


def test_probe_without_saturation_is_inconclusive():
    M = Omega(2, 1)
    rep = submodule_probe(M, M.basis_vec(("E", 1)), 3, 4, 7, saturate=False)
    assert rep.verdict == INCONCLUSIVE and rep.word_span_dim == 5


def test_probe_parallel_matches_serial():
    M = KQ("Th^2 - (t^2 - t)", HALF)
    seed = M.basis_vec(("B", 0, 0))
    a = submodule_probe(M, seed, 2, 3, 11, workers=1).to_dict()
    b = submodule_probe(M, seed, 2, 3, 11, workers=6).to_dict()
    assert a == b


def test_probe_rejects_bad_seed():
    M = Omega(2, 1)
    with pytest.raises(ValueError):
        submodule_probe(M, M.basis_vec(("E", 9)), window=4)
    with pytest.raises(ValueError):
        submodule_probe(M, ModVec(M))


def test_tampered_certificate_is_rejected():
    M = Omega(2, 1)
    rep = submodule_probe(M, M.basis_vec(("E", 1)))
    rep.basis = rep.basis[:-1]
    assert not verify_probe_certificate(M, rep)


@pytest.mark.parametrize("b,c", [(HALF, Scalar(Fraction(-1, 4))), (S(0), S(0)), (S(1), S(0)), (S(2), S(2))])
def test_recover_c(b, c):
    for M in (Omega(3, b), Natural(b), KQ("Th^2 - t", b)):
        for sym in M.basis(5):
            assert recover_c(M, M.basis_vec(sym)) == c


def test_recover_c_needs_eigenvector():
    M = Omega(2, 3)

    def act(n, v):
        # d_0 picks up a stray raising term, so w_0 is no longer scalar
        out = vir_act(n, v)
        if n == 0:
            out = out + ModVec(M, {("E", s[1] + 2): c for s, c in v.terms.items()})
        return out

    with pytest.raises(NotEigenvector):
        recover_c(M, M.basis_vec(("E", 0)), act)
    with pytest.raises(ValueError):
        recover_c(M, ModVec(M))


def test_recover_t_action_examples():
    M = Omega(3, 2)
    v = M.basis_vec(("E", 0))
    assert recover_t_action(M, 1, v) == v * 3 == t_act(1, v)
    assert recover_t_action(M, 0, v) == v
    M1 = Omega(3, 1)
    with pytest.raises(TwistDegenerate):
        recover_t_action(M1, 1, M1.basis_vec(("E", 0)))


@pytest.mark.parametrize("seed", range(5))
def test_recover_t_action_on_random_vectors(seed):
    rng = random.Random(seed)
    for M in (Omega(S(2, 1), 3), KQ("Dt^2 - t", S(-2)), FractionModule((1,), (1,), HALF), Natural(S(5) / 2)):
        v = modvec(rng, M)
        k = rng.randint(-4, 4)
        assert recover_t_action(M, k, v) == t_act(k, v)


def test_fingerprints():
    fp = fingerprint(Omega(2, 3))
    assert (fp.c, fp.family, fp.params, fp.b, fp.lambda_recovered) == (S(6), "OMEGA", {"lambda": "2"}, S(3), S(2))
    fp = fingerprint(Natural(0))
    assert (fp.c, fp.family, fp.b) == (S(0), "NATURAL", S(0))
    a, b = fingerprint(Omega(2, 3)), fingerprint(Omega(2, -2))
    assert a.c == b.c and a.b != b.b
    assert fingerprint(Omega(2, 3)).c != fingerprint(Omega(2, 4)).c


def test_iso_examples():
    assert theorem12_decide(Omega(2, 3), Omega(2, 3)).verdict == ISOMORPHIC
    assert theorem12_decide(Omega(2, 3), Omega(5, 3)).verdict == NOT_ISOMORPHIC
    assert theorem12_decide(Omega(2, 3), Omega(2, -2)).verdict == NOT_ISOMORPHIC
    assert theorem12_decide(KQ("Th^2 - t", 2), KQ("Th^2 - t^3", 2)).verdict == UNKNOWN


def test_iso_zero_one_clause():
    # theta A != A for Omega and the natural module, so b = 1 and b = 0 differ
    assert theorem12_decide(Omega(2, 1), Omega(2, 0)).verdict == NOT_ISOMORPHIC
    assert theorem12_decide(Natural(0), Natural(1)).verdict == NOT_ISOMORPHIC
    assert theorem12_decide(KQ("Th^2 - t", 0), KQ("Th^2 - t", 1)).verdict == UNKNOWN


def test_iso_symmetric():
    mods = [Omega(2, 3), Omega(2, -2), Omega(5, 3), Omega(2, 1), Omega(2, 0), Natural(0), Natural(1),
            KQ("Th^2 - t", 2), KQ("Th^2 - t^3", 2), KQ("Th - t", 0), FractionModule((1,), (1,), HALF),
            VPrime00()]
    for A in mods:
        assert theorem12_decide(A, A).verdict == ISOMORPHIC
        for B in mods:
            assert theorem12_decide(A, B).verdict == theorem12_decide(B, A).verdict


def test_k_irreducible():
    assert k_irreducible(KQ("Th^2 - t^3"))
    assert k_irreducible(KQ("Dt^3 + Dt - t"))
    assert k_irreducible(KQ("Th^2 + 2*t*Th + t^3"))
    assert k_irreducible(KQ("Th^2 - (t^2 - 4*t + 1/4)")) is None


def test_irreducibility_prediction():
    assert theorem9_predict(Omega(2, HALF)).verdict == "IRREDUCIBLE"
    assert theorem9_predict(Omega(2, 1)).verdict == "REDUCIBLE"
    assert theorem9_predict(Natural(0)).verdict == "REDUCIBLE"
    assert theorem9_predict(Omega(2, 0)).verdict == "IRREDUCIBLE"
    assert theorem9_predict(VPrime00()).verdict == "IRREDUCIBLE"
