"""Exact computer algebra for twisted Virasoro modules over Laurent
differential operators.

Scalars are Gaussian rationals; every identity is checked by exact equality.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .expr import format_laurent, format_ore, format_ratfunc, parse, parse_scalar
from .factor import (
    FactorWitness,
    IrreducibilityCertificate,
    construct_reducible,
    irreducible_by_degree,
    lemma15_reduce,
    lemma15_transport,
    lemma16_certified,
    search_witness,
    verify_factorization,
)
from .laurent import Gen, LaurentPoly
from .modules import (
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
from .ore import (
    OreElem,
    RatOreElem,
    convert_generator,
    make_Dn,
    make_wk,
    ore_bracket,
    ore_mul,
    right_divide,
)
from .ratfunc import RatFunc
from .scalar import Scalar
from .structure import (
    bracket_check,
    eq41_check,
    fingerprint,
    hvir_check,
    recover_c,
    recover_t_action,
    submodule_probe,
    theorem12_decide,
    wk_check,
)
