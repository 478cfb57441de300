import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import ore_elems
from virtwist.errors import NotInSubmodule, UnsupportedAction
from virtwist.expr import parse
from virtwist.laurent import Gen, LaurentPoly
from virtwist.modules import (
    FractionModule,
    KQuotient,
    ModVec,
    Natural,
    Omega,
    VPrime00,
    fraction_act,
    k_act,
    lemma8_map,
    omega_closed_form,
    parse_modvec,
    t_act,
    vir_act,
    vprime_act,
)
from virtwist.ore import OreElem, ore_mul
from virtwist.ratfunc import RatFunc
from virtwist.sampling import modvec
from virtwist.scalar import S, Scalar

HALF = Scalar(Fraction(1, 2))
TH = OreElem.generator(Gen.THETA)

FAMILIES = [
    Omega(2, HALF),
    Omega(S(1, 1), 3),
    Natural(0),
    Natural(1),
    KQuotient(parse("Th - (2 + t)", "ore"), 3),
    KQuotient(parse("Th^2 - (t^2 - t)", "ore"), HALF),
    KQuotient(parse("Dt^2 - t", "ore"), 2),
    FractionModule((1,), (1,), HALF),
    FractionModule((0, 2), (HALF, -1), 3),
]
IDS = [M.describe() for M in FAMILIES]


def E(M, k):
    return M.basis_vec(("E", k))


def test_omega_t_action():
    M = Omega(2)
    assert k_act(LaurentPoly.monomial(1), E(M, 1)) == M.vec({("E", 1): 2, ("E", 0): -2})
    assert t_act(1, E(Omega(3), 0)) == E(Omega(3), 0) * 3


def test_kquotient_degree_two_theta_action():
    f = parse("t^2 - 4*t + 1/4")
    M = KQuotient(TH * TH - OreElem.from_coeff(f), 0)
    for n in range(-3, 4):
        got = k_act(TH, M.basis_vec(("B", n, 1)))
        want = {("B", n + e, 0): c for e, c in f.items()}
        if n:
            want[("B", n, 1)] = Scalar(n)
        assert got.terms == want


def test_natural_actions():
    M = Natural(0)
    for k in range(-3, 4):
        assert k_act(TH, M.basis_vec(("T", k))) == M.basis_vec(("T", k)) * k
        for n in range(-3, 4):
            assert vir_act(k, M.basis_vec(("T", n))) == M.basis_vec(("T", k + n)) * n
            assert t_act(k, M.basis_vec(("T", n))) == M.basis_vec(("T", k + n))


def test_first_order_quotient_is_intermediate_series():
    alpha, b = S(5) / 3, S(-2) / 7
    M = KQuotient(TH - OreElem.from_coeff(alpha), b)
    for k in range(-3, 4):
        for n in range(-3, 4):
            assert vir_act(k, M.basis_vec(("B", n, 0))) == M.basis_vec(("B", k + n, 0)) * (alpha + n + k * b)


def test_kquotient_t_action_shifts():
    M = KQuotient(parse("Dt^3 - t", "ore"), 1)
    for m in (-2, 0, 3):
        for s in range(3):
            assert t_act(m, M.basis_vec(("B", 1, s))) == M.basis_vec(("B", 1 + m, s))


def test_omega_closed_form_examples():
    assert omega_closed_form(1, 0, 2, 3) == Omega(2, 3).vec({("E", 1): 2, ("E", 0): 4})
    assert omega_closed_form(0, 4, 5, HALF) == E(Omega(5, HALF), 5)
    assert omega_closed_form(1, 1, 1, 0) == Omega(1, 0).vec({("E", 2): 1, ("E", 1): -2, ("E", 0): 1})
    assert omega_closed_form(1, 0, 2, 3) == vir_act(1, E(Omega(2, 3), 0))


def test_fraction_examples():
    M = FractionModule((1,), (0,), 0)
    one = M.basis_vec(("T", 0))
    for k in range(-2, 3):
        assert not fraction_act(k, one)
    M = FractionModule((1,), (1,), 0)
    one = M.basis_vec(("T", 0))
    img = fraction_act(0, one)
    assert M.to_ratfunc(img.terms) == parse("t/(t-1)", "ratfunc")
    assert img == vir_act(0, one)


def test_fraction_linearity():
    M = FractionModule((1, -2), (HALF, 3), S(2) / 5)
    rng = random.Random(3)
    for n in range(-3, 4):
        u, v = modvec(rng, M), modvec(rng, M)
        assert fraction_act(n, u + v) == fraction_act(n, u) + fraction_act(n, v)
        assert fraction_act(n, u) == vir_act(n, u)


def test_vprime_examples():
    M = VPrime00()
    assert not vprime_act(1, M.basis_vec(("T", -1)))
    assert vprime_act(2, M.basis_vec(("T", 1))) == M.basis_vec(("T", 3))
    for n in (-3, -1, 2, 5):
        assert vprime_act(0, M.basis_vec(("T", n))) == M.basis_vec(("T", n)) * n
    with pytest.raises(ValueError):
        M.basis_vec(("T", 0))
    with pytest.raises(UnsupportedAction):
        t_act(1, M.basis_vec(("T", 1)))


def test_theta_image_map_examples():
    A = Natural(1)
    for n in (-3, -1, 1, 4):
        u = k_act(TH, A.basis_vec(("T", n)))
        assert lemma8_map(u) == VPrime00().basis_vec(("T", n))
    assert not lemma8_map(k_act(TH, A.basis_vec(("T", 0))))
    with pytest.raises(NotInSubmodule):
        lemma8_map(A.basis_vec(("T", 0)))


def _theta_image(rng):
    A = Natural(1)
    v = modvec(rng, A, pool=9, terms=3)
    return k_act(TH, v)


@pytest.mark.parametrize("seed", range(10))
def test_theta_image_map_intertwines(seed):
    rng = random.Random(seed)
    u = _theta_image(rng)
    for n in range(-4, 5):
        assert lemma8_map(vir_act(n, u)) == vir_act(n, lemma8_map(u))


def test_modvec_text_round_trip():
    M = KQuotient(parse("Th^2 - t", "ore"), 2)
    v = parse_modvec("2*B(3,1) - B(-1,0) + 1/2*B(0,1)", M)
    assert parse_modvec(v.to_text(), M) == v
    assert parse_modvec("E1 - 3*E(0)", Omega(2)) == Omega(2).vec({("E", 1): 1, ("E", 0): -3})
    with pytest.raises(ValueError):
        parse_modvec("B(0,2)", M)


@pytest.mark.parametrize("M", [M for M in FAMILIES], ids=IDS)
@given(x=ore_elems(max_degree=2, coeffs=st.sampled_from([LaurentPoly.monomial(k, c) for k in (-1, 0, 1) for c in (1, -2)])),
       y=ore_elems(max_degree=2, coeffs=st.sampled_from([LaurentPoly({0: 1, 1: 3}), LaurentPoly.monomial(-1, 2)])),
       idx=st.integers(0, 5))
def test_module_axiom(M, x, y, idx):
    v = M.basis_vec(M.basis(6)[idx])
    assert k_act(ore_mul(x, y), v) == k_act(x, k_act(y, v))


@pytest.mark.parametrize("M", FAMILIES + [VPrime00()], ids=IDS + ["VPRIME00"])
def test_module_bracket(M):
    for sym in M.basis(6):
        v = M.basis_vec(sym)
        for m in range(-3, 4):
            for n in range(-3, 4):
                lhs = vir_act(m, vir_act(n, v)) - vir_act(n, vir_act(m, v))
                assert lhs == vir_act(m + n, v) * (n - m)


@pytest.mark.parametrize("M", FAMILIES, ids=IDS)
def test_twisted_heisenberg_relation(M):
    for sym in M.basis(5):
        v = M.basis_vec(sym)
        for m in range(-3, 4):
            for n in range(-3, 4):
                lhs = vir_act(n, t_act(m, v)) - t_act(m, vir_act(n, v))
                assert lhs == t_act(m + n, v) * m


@pytest.mark.parametrize("lam,b", [(2, 0), (S(1, 1), HALF), (S(-3) / 2, 3)])
def test_omega_closed_form_consistency(lam, b):
    for n in range(-5, 6):
        for k in range(6):
            assert omega_closed_form(n, k, lam, b) == vir_act(n, E(Omega(lam, b), k))


@pytest.mark.parametrize("lam", [2, S(1, -1), S(3) / 4])
def test_omega_b1_keeps_theta_part(lam):
    M = Omega(lam, 1)
    for k in range(1, 7):
        for n in range(-5, 6):
            assert not vir_act(n, E(M, k)).coeff(("E", 0))


def test_natural_b0_constants_line():
    M = Natural(0)
    for k in range(-6, 7):
        assert not vir_act(k, M.basis_vec(("T", 0)))


def test_modvec_rejects_foreign_symbols():
    with pytest.raises(ValueError):
        ModVec(Omega(2), {("E", -1): 1})
    with pytest.raises(TypeError):
        Omega(2).basis_vec(("E", 0)) + Omega(3).basis_vec(("E", 0))


def test_descriptor_validation():
    with pytest.raises(ValueError):
        Omega(0)
    with pytest.raises(ValueError):
        KQuotient(parse("(t+1)*Th - 1", "ore"))
    with pytest.raises(ValueError):
        FractionModule((1, 1), (0, 0))
    normalized = KQuotient(parse("2*t*Th - 1", "ore"))
    assert normalized.beta.leading_coeff() == LaurentPoly.const(1)


def test_fraction_partial_fractions_round_trip():
    M = FractionModule((1, S(0, 1)), (1, 2), 0)
    r = parse("(t^3 + 2)/((t-1)^2*(t-i)*t^2)", "ratfunc")
    assert M.to_ratfunc(M.from_ratfunc(r)) == r
    assert M.to_ratfunc({("T", 0): S(1)}) == RatFunc(1)
