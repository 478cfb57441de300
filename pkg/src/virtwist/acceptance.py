"""The ten acceptance suites as plain functions.

Each ``criterion_N(cfg, workers)`` returns ``(passed, report)`` where the
report is a JSON-ready dict.  Rerunning with the same config must give
byte-identical JSON; criterion 10 checks exactly that.
"""

import json
from dataclasses import replace
import random
import time

from .config import AcceptanceConfig
from .expr import format_laurent, format_scalar, parse
from .factor import construct_reducible, irreducible_by_degree, search_witness, verify_factorization
from .laurent import LaurentPoly
from .modules import (
    FractionModule,
    KQuotient,
    Natural,
    Omega,
    VPrime00,
    k_act,
    lemma8_map,
    omega_closed_form,
    t_act,
    vir_act,
)
from .ore import OreElem, make_Dn, make_wk, ore_bracket
from .report import to_json
from .sampling import modvec, rng_for, twist_values
from .scalar import S, Scalar
from .structure import (
    ISOMORPHIC,
    NOT_ISOMORPHIC,
    PROPER_SUBSPACE_WITNESS,
    UNKNOWN,
    WINDOW_FILLED,
    bracket_check,
    k_irreducible,
    recover_c,
    recover_t_action,
    submodule_probe,
    theorem12_decide,
    verify_probe_certificate,
)
from . import tables

HALF = S(1) / 2


def _kq(src, b=0):
    return KQuotient(parse(src, "ore"), b)


def bracket_families():
    out = [Omega(lam, b) for lam in (S(2), S(1, 1)) for b in (S(0), S(1), HALF, S(3))]
    out += [Natural(0), Natural(1), VPrime00()]
    out += [_kq("Th - (2 + t)"), _kq("Th^2 - (t^2 - t)"), _kq("Dt^2 - t")]
    out.append(FractionModule((1,), (1,), HALF))
    return out


def _twisted_families(b):
    return [Omega(2, b), Natural(b), _kq("Th - (2 + t)", b), _kq("Th^2 - (t^2 - t)", b),
            _kq("Dt^2 - t", b), FractionModule((1,), (1,), b)]


def criterion_1(cfg, workers=1):
    """D_m(b), D_n(b) satisfy the Witt relation inside K."""
    R = cfg.ore_range
    bad = []
    bs = twist_values(cfg.seed, cfg.samples)
    for b in bs:
        D = {n: make_Dn(n, b) for n in range(-2 * R, 2 * R + 1)}
        for m in range(-R, R + 1):
            for n in range(-R, R + 1):
                if ore_bracket(D[m], D[n]) != D[m + n].left_scale(LaurentPoly.const(n - m)):
                    bad.append([format_scalar(b), m, n])
    report = {"b_values": [format_scalar(b) for b in bs], "range": R, "failures": bad[:5],
              "checked": len(bs) * (2 * R + 1) ** 2}
    return not bad, report


def criterion_2(cfg, workers=1):
    """w_k = b(b-1) t^k in K.

    Both sides are polynomials of degree at most 2 in b with coefficients in
    K, so agreement at three distinct b already proves the identity for all
    b; the remaining samples are redundant and kept as a cross-check.
    """
    R = cfg.ore_range
    bad = []
    bs = twist_values(cfg.seed, cfg.samples)
    for b in bs:
        for k in range(-R, R + 1):
            want = OreElem.from_coeff(LaurentPoly.monomial(k, b * (b - 1)))
            if make_wk(k, b) != want:
                bad.append([format_scalar(b), k])
    report = {"b_values": [format_scalar(b) for b in bs], "range": R, "failures": bad[:5],
              "certifying_samples": 3, "checked": len(bs) * (2 * R + 1)}
    return not bad, report


def criterion_3(cfg, workers=1):
    f, w = construct_reducible(parse("t - 3/2"), [1])
    ver = verify_factorization(f, w)
    cert = irreducible_by_degree(parse("t^3 + 1"))
    found = search_witness(f, [1, 2, -1], (0, 1), workers=workers)
    ok = f == parse("t^2 - 4*t + 1/4") and bool(ver) and cert is not None and found.found
    report = {"f": format_laurent(f), "verified": bool(ver),
              "certificate": None if cert is None else [cert.kind, cert.data],
              "search_h": format_laurent(found.witness.h) if found.found else None}
    return ok, report


def criterion_4(cfg, workers=1):
    rows = []
    for M in bracket_families():
        rep = bracket_check(M, cfg.module_range, cfg.basis_budget)
        rows.append([M.describe(), rep.passed, rep.checked])
    return all(r[1] for r in rows), {"modules": rows}


def criterion_5(cfg, workers=1):
    R = range(-4, 5)
    counts = {}
    mism = []
    b_values = [S(0), S(1), HALF, S(-2, 1), Scalar(3) / 7]
    for b in b_values:
        alpha = parse("2 + t")
        M = KQuotient(OreElem.generator() - OreElem.from_coeff(alpha), b)
        for k in R:
            for n in R:
                if vir_act(k, M.basis_vec(("B", n, 0))).terms != tables.first_order(alpha, b, k, n):
                    mism.append(["first", format_scalar(b), k, n])
        f = parse("t^2 - t")
        M = KQuotient(parse("Th^2 - (t^2 - t)", "ore"), b)
        for k in R:
            for n in R:
                for s in (0, 1):
                    if vir_act(k, M.basis_vec(("B", n, s))).terms != tables.degree_two(f, b, k, n, s):
                        mism.append(["two", format_scalar(b), k, n, s])
        for order in (2, 3):
            M = KQuotient(parse(f"Dt^{order} - t", "ore"), b)
            for k in R:
                for r in R:
                    for s in range(order):
                        if vir_act(k, M.basis_vec(("B", r, s))).terms != tables.degree_n(order, b, k, r, s):
                            mism.append(["n", order, format_scalar(b), k, r, s])
    counts["tables"] = len(mism)
    omega_bad = []
    for lam, b in ((S(2), HALF), (S(1, 1), S(3)), (S(-3) / 2, S(0))):
        M = Omega(lam, b)
        for n in range(-5, 6):
            for k in range(6):
                if omega_closed_form(n, k, lam, b) != vir_act(n, M.basis_vec(("E", k))):
                    omega_bad.append([format_scalar(lam), format_scalar(b), n, k])
    counts["omega"] = len(omega_bad)
    report = {"table_mismatches": mism[:5], "omega_mismatches": omega_bad[:5], "counts": counts,
              "as_printed_disagrees": _printed_variants_disagree()}
    return not mism and not omega_bad, report


def _printed_variants_disagree():
    """For each literal reading of the tables, does it differ from the division action somewhere?"""
    b, R = HALF, range(-4, 5)
    alpha, f = parse("2 + t"), parse("t^2 - t")
    M1 = KQuotient(OreElem.generator() - OreElem.from_coeff(alpha), b)
    M2 = KQuotient(parse("Th^2 - (t^2 - t)", "ore"), b)
    M3 = KQuotient(parse("Dt^2 - t", "ore"), b)
    th = OreElem.generator()
    V = tables.VARIANTS
    return {
        "first_order_k_sign": any(k_act(th, M1.basis_vec(("B", n, 0))).terms != V["first_order_k_sign"](alpha, n)
                                  for n in R),
        "degree_two_constant_kb": any(vir_act(k, M2.basis_vec(("B", n, 1))).terms
                                      != V["degree_two_constant_kb"](f, b, k, n, 1) for k in R for n in R),
        "degree_n_shifted_kb": any(vir_act(k, M3.basis_vec(("B", r, s))).terms
                                   != V["degree_n_shifted_kb"](2, b, k, r, s) for k in R for r in R for s in (0, 1)),
    }


def criterion_6(cfg, workers=1):
    p = cfg.probe
    out = {}
    ok = True
    cases = [
        ("omega_b1", Omega(2, 1), ("E", 1), PROPER_SUBSPACE_WITNESS),
        ("omega_1i_b1", Omega(S(1, 1), 1), ("E", 2), PROPER_SUBSPACE_WITNESS),
        ("natural_b0", Natural(0), ("T", 0), PROPER_SUBSPACE_WITNESS),
        ("omega_half", Omega(2, HALF), ("E", 0), WINDOW_FILLED),
    ]
    for name, M, sym, want in cases:
        rep = submodule_probe(M, M.basis_vec(sym), p.N, p.L, p.window, workers=workers, saturate=p.saturate)
        cert = verify_probe_certificate(M, rep) if rep.verdict == PROPER_SUBSPACE_WITNESS else None
        good = rep.verdict == want and cert is not False
        if name.startswith("omega") and want == PROPER_SUBSPACE_WITNESS:
            # the witness avoids E(0), i.e. it sits inside theta C[theta]
            good = good and all(not row.get(("E", 0)) for row in rep.basis)
        ok = ok and good
        out[name] = {"verdict": rep.verdict, "spanned_dim": rep.spanned_dim, "window_dim": rep.window_dim,
                     "word_span_dim": rep.word_span_dim, "escapes": rep.escapes, "certificate": cert,
                     "passed": good}
    rng = random.Random(cfg.seed)
    A = Natural(1)
    th = OreElem.generator()
    failures = 0
    for _ in range(cfg.samples):
        u = k_act(th, modvec(rng, A, pool=9, terms=3))
        n = rng.randint(-5, 5)
        if lemma8_map(vir_act(n, u)) != vir_act(n, lemma8_map(u)):
            failures += 1
    out["lemma8"] = {"samples": cfg.samples, "failures": failures}
    return ok and not failures, out


def criterion_7(cfg, workers=1):
    rng = rng_for(cfg.seed)
    bs = [b for b in twist_values(cfg.seed, cfg.samples + 4) if b not in (S(0), S(1))][: cfg.samples]
    t_fail, c_fail, c_checked = [], [], 0
    for i, b in enumerate(bs):
        fams = _twisted_families(b)
        M = fams[i % len(fams)]
        v = modvec(rng, M)
        k = rng.randint(-4, 4)
        if recover_t_action(M, k, v) != t_act(k, v):
            t_fail.append([M.describe(), k])
    for b in [S(0), S(1), HALF, S(3)] + bs[:3]:
        for M in _twisted_families(b):
            for sym in M.basis(cfg.basis_budget):
                c_checked += 1
                if recover_c(M, M.basis_vec(sym)) != b * (b - 1):
                    c_fail.append([M.describe(), repr(sym)])
    report = {"t_samples": len(bs), "t_failures": t_fail, "c_checked": c_checked, "c_failures": c_fail[:5]}
    return not t_fail and not c_fail, report


def _clause_violation(A, B, verdict):
    """A verdict that the classification forbids, or None."""
    if isinstance(A, VPrime00) or isinstance(B, VPrime00):
        return None
    c1, c2 = A.b * (A.b - 1), B.b * (B.b - 1)
    if verdict == ISOMORPHIC:
        if c1 != c2:
            return "ISO with different b(b-1)"
        if c1 and A.b != B.b:
            return "ISO with different b outside {0, 1}"
        if A.b == B.b and A != B and k_irreducible(A) and k_irreducible(B) and \
                isinstance(A, Omega) and isinstance(B, Omega):
            return "ISO for non-isomorphic K-modules"
    if verdict == NOT_ISOMORPHIC and A == B:
        return "NOT for identical modules"
    return None


def criterion_8(cfg, workers=1):
    rows = []
    ok = True
    expected = [
        (Omega(2, 3), Omega(5, 3), NOT_ISOMORPHIC),
        (Omega(2, 3), Omega(2, -2), NOT_ISOMORPHIC),
        (Omega(2, 3), Omega(2, 3), ISOMORPHIC),
        (_kq("Th^2 - t", 2), _kq("Th^2 - t", 2), ISOMORPHIC),
        (_kq("Th^2 - t", 2), _kq("Th^2 - t^3", 2), UNKNOWN),
        (_kq("Th - (2 + t)", HALF), _kq("Th^2 - (t^2 - t)", HALF), UNKNOWN),
    ]
    for A, B, want in expected:
        got = theorem12_decide(A, B).verdict
        rows.append([A.describe(), B.describe(), got, want])
        ok = ok and got == want
    pool = [Omega(lam, b) for lam in (2, 5) for b in (0, 1, 3, -2)]
    pool += [Natural(b) for b in (0, 1, 3)] + [VPrime00()]
    pool += [_kq("Th^2 - t", b) for b in (0, 1, 2)] + [FractionModule((1,), (1,), b) for b in (0, 1)]
    violations = []
    for A in pool:
        for B in pool:
            v = theorem12_decide(A, B).verdict
            why = _clause_violation(A, B, v)
            if why:
                violations.append([A.describe(), B.describe(), v, why])
    return ok and not violations, {"expected": rows, "pairs": len(pool) ** 2, "violations": violations}


def criterion_9(cfg, workers=1):
    """One twist per family instance; b cycles through 0, 1 and generic values."""
    rows = []
    twists = [S(0), S(1), HALF, S(3), S(-2, 1)]
    for i, base in enumerate(_twisted_families(S(0))):
        for b in (twists[i % len(twists)], twists[(i + 2) % len(twists)]):
            M = replace(base, b=b)
            bad = 0
            for sym in M.basis(10):
                v = M.basis_vec(sym)
                for m in range(-5, 6):
                    tv = t_act(m, v)
                    for n in range(-5, 6):
                        if vir_act(n, tv) - t_act(m, vir_act(n, v)) != t_act(m + n, v) * m:
                            bad += 1
            rows.append([M.describe(), bad])
    return all(r[1] == 0 for r in rows), {"modules": rows}


SUITES = {
    1: ("Witt relation inside K", criterion_1),
    2: ("w_k equals b(b-1) t^k", criterion_2),
    3: ("reducible example and odd-degree certificate", criterion_3),
    4: ("module bracket suites", criterion_4),
    5: ("action tables and Omega closed form", criterion_5),
    6: ("submodule witnesses and intertwiner", criterion_6),
    7: ("recovery of t-action and b(b-1)", criterion_7),
    8: ("isomorphism decisions", criterion_8),
    9: ("twisted Heisenberg relation on modules", criterion_9),
}


def run_suite(number, cfg=None, workers=1):
    """Returns (passed, JSON text, seconds)."""
    cfg = cfg or AcceptanceConfig()
    title, fn = SUITES[number]
    start = time.perf_counter()
    passed, details = fn(cfg, workers)
    elapsed = time.perf_counter() - start
    report = {"criterion": number, "title": title, "passed": passed, "seed": cfg.seed,
              "config": cfg.to_dict(), "details": details}
    return passed, to_json(report), elapsed


def criterion_10(cfg, workers=8, baseline=None):
    """Rerun every suite with ``workers``; reports must match the serial ones byte for byte.

    ``baseline`` maps suite number to serial JSON already produced (saves a pass).
    """
    baseline = dict(baseline or {})
    diffs = []
    for n in SUITES:
        if n not in baseline:
            baseline[n] = run_suite(n, cfg)[1]
        if run_suite(n, cfg, workers)[1] != baseline[n]:
            diffs.append(n)
    return not diffs, {"workers": workers, "differing": diffs, "suites": sorted(SUITES)}


def all_reports(cfg=None, workers=1):
    cfg = cfg or AcceptanceConfig()
    return {n: json.loads(run_suite(n, cfg, workers)[1]) for n in SUITES}
