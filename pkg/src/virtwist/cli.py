"""Command-line front end.

    virtwist ore mul|bracket|divide ...
    virtwist check bracket|wk|hvir|eq41 ...
    virtwist probe ...
    virtwist fingerprint ...
    virtwist iso --left SPEC --right SPEC
    virtwist factor construct|verify|certify|reduce|search ...
    virtwist module act ...

Exit status: 0 pass or verdict, 1 fail, 2 error.
"""

import argparse
import sys

from .config import CheckConfig, ProbeConfig, SearchConfig
from .errors import VirtwistError
from .expr import format_laurent, format_ore, format_ratfunc, parse, parse_scalar, parse_scalar_list
from .factor import (
    FactorWitness,
    construct_reducible,
    irreducible_by_degree,
    lemma15_operator,
    lemma15_reduce,
    lemma15_transport,
    lemma16_certified,
    search_witness,
    verify_factorization,
)
from .laurent import Gen
from .modules import (
    FractionModule,
    KQuotient,
    Natural,
    Omega,
    VPrime00,
    k_act,
    parse_modvec,
    t_act,
    vir_act,
)
from .ore import ore_bracket, ore_mul, right_divide
from .report import EXIT_CODES, make_report, to_json, to_text
from .sampling import default_seed, modvec, rng_for
from .structure import (
    bracket_check,
    eq41_check,
    fingerprint,
    submodule_probe,
    theorem12_decide,
    theorem9_predict,
    verify_probe_certificate,
    wk_check,
    hvir_check,
)


class UsageError(VirtwistError, ValueError):
    pass


# ---------------------------------------------------------------------------
# module descriptors from flags or compact specs
# ---------------------------------------------------------------------------

FAMILIES = ("omega", "natural", "vprime", "kquotient", "fraction")


def _gen_arg(name):
    if name is None:
        return None
    return {"theta": Gen.THETA, "th": Gen.THETA, "ddt": Gen.DDT, "dt": Gen.DDT}[name.lower()]


def build_module(family, lam=None, b=None, beta=None, gen=None, poles=None, alphas=None):
    family = family.lower()
    bval = parse_scalar(b) if b is not None else parse_scalar("0")
    if family == "omega":
        if lam is None:
            raise UsageError("omega needs --lambda")
        return Omega(parse_scalar(lam), bval)
    if family == "natural":
        return Natural(bval)
    if family == "vprime":
        return VPrime00()
    if family == "kquotient":
        if beta is None:
            raise UsageError("kquotient needs --beta")
        return KQuotient(parse(beta, "ore", _gen_arg(gen)), bval)
    if family == "fraction":
        ps = parse_scalar_list(poles)
        als = parse_scalar_list(alphas)
        if not als:
            als = [parse_scalar("0")] * len(ps)
        return FractionModule(tuple(ps), tuple(als), bval)
    raise UsageError(f"unknown family {family!r}")


def parse_module_spec(text):
    """``omega:lambda=2;b=3``, ``kquotient:beta=Th^2-t;b=2``, ``vprime``."""
    family, _, rest = text.partition(":")
    kw = {}
    for part in filter(None, (p.strip() for p in rest.split(";"))):
        key, eq, val = part.partition("=")
        if not eq:
            raise UsageError(f"expected key=value in {part!r}")
        key = key.strip().lower()
        key = {"lambda": "lam", "lam": "lam"}.get(key, key)
        if key not in ("lam", "b", "beta", "gen", "poles", "alphas"):
            raise UsageError(f"unknown module parameter {key!r}")
        kw[key] = val.strip()
    return build_module(family.strip(), **kw)


def module_from_args(args):
    if getattr(args, "module", None):
        return parse_module_spec(args.module)
    if not args.family:
        raise UsageError("give --family or --module")
    return build_module(
        args.family, lam=args.lam, b=args.b, beta=args.beta, gen=args.gen,
        poles=args.poles, alphas=args.alphas,
    )


def _module_inputs(M):
    return {"family": M.family, **M.params()}


# ---------------------------------------------------------------------------
# commands; each returns (inputs, status, details)
# ---------------------------------------------------------------------------

def _ore_pair(args, a_name, b_name):
    gen = _gen_arg(args.gen)
    x = parse(getattr(args, a_name), "ore", gen)
    y = parse(getattr(args, b_name), "ore", x.gen if gen is None else gen)
    return x, y


def cmd_ore(args):
    if args.action in ("mul", "bracket"):
        x, y = _ore_pair(args, "x", "y")
        z = ore_mul(x, y) if args.action == "mul" else ore_bracket(x, y)
        return {"x": format_ore(x), "y": format_ore(y), "gen": x.gen.name}, "verdict", {"result": format_ore(z)}
    gen = _gen_arg(args.gen)
    a = parse(args.a, "ore", gen)
    beta = parse(args.beta, "ore", a.gen if gen is None else gen)
    q, r = right_divide(a, beta)
    return (
        {"a": format_ore(a), "beta": format_ore(beta), "gen": a.gen.name},
        "verdict",
        {"quotient": format_ore(q), "remainder": format_ore(r)},
    )


def _extra_vectors(M, count, seed):
    if not count:
        return []
    rng = rng_for(seed)
    return [modvec(rng, M) for _ in range(count)]


def cmd_check(args, seed):
    cfg = CheckConfig(args.range, args.basis, args.krange, args.random_vectors)
    if args.action == "eq41":
        lam = parse_scalar(args.lam or "2")
        b = parse_scalar(args.b or "0")
        rep = eq41_check(lam, b, cfg.rng, args.kmax)
        inputs = {"lambda": str(lam), "b": str(b), "range": cfg.rng, "kmax": args.kmax}
    else:
        M = module_from_args(args)
        extra = _extra_vectors(M, cfg.random_vectors, seed)
        inputs = {**_module_inputs(M), "basis": cfg.basis_budget, "random_vectors": cfg.random_vectors}
        if args.action == "bracket":
            rep = bracket_check(M, cfg.rng, cfg.basis_budget, vectors=extra)
            inputs["range"] = cfg.rng
        elif M.b is None:
            raise UsageError(f"{M.family} has no t-action")
        elif args.action == "wk":
            rep = wk_check(M, cfg.k_range, cfg.basis_budget, vectors=extra)
            inputs["krange"] = cfg.k_range
        else:
            rep = hvir_check(M, cfg.rng, cfg.basis_budget, vectors=extra)
            inputs["range"] = cfg.rng
    return inputs, "pass" if rep.passed else "fail", rep.to_dict()


def cmd_probe(args):
    M = module_from_args(args)
    cfg = ProbeConfig(args.N, args.L, args.window, args.workers, not args.no_saturate)
    seed_vec = parse_modvec(args.seed_vec, M)
    rep = submodule_probe(M, seed_vec, cfg.N, cfg.L, cfg.window, cfg.workers, cfg.saturate)
    details = rep.to_dict()
    details["certificate_verified"] = verify_probe_certificate(M, rep)
    details["theorem9"] = theorem9_predict(M).to_dict()
    inputs = {**_module_inputs(M), "seed_vec": seed_vec.to_text(), "N": cfg.N, "L": cfg.L,
              "window": cfg.window, "saturate": cfg.saturate}
    return inputs, "verdict", details


def cmd_fingerprint(args):
    M = module_from_args(args)
    fp = fingerprint(M)
    return _module_inputs(M), "verdict", {"fingerprint": fp.to_dict(), "theorem9": theorem9_predict(M).to_dict()}


def cmd_iso(args):
    A, B = parse_module_spec(args.left), parse_module_spec(args.right)
    d = theorem12_decide(A, B)
    return {"left": _module_inputs(A), "right": _module_inputs(B)}, "verdict", d.to_dict()


def cmd_module(args):
    M = module_from_args(args)
    v = parse_modvec(args.vec, M)
    inputs = {**_module_inputs(M), "vec": v.to_text()}
    if args.vir is not None:
        out = vir_act(args.vir, v)
        inputs["vir"] = args.vir
    elif args.t is not None:
        out = t_act(args.t, v)
        inputs["t"] = args.t
    elif args.op is not None:
        x = parse(args.op, "ore", _gen_arg(args.gen))
        out = k_act(x, v)
        inputs["op"] = format_ore(x)
    else:
        raise UsageError("give one of --vir, --t, --op")
    return inputs, "verdict", {"result": out.to_text()}


def _witness_from(args):
    h = parse(args.h, "laurent")
    poles = parse_scalar_list(args.poles)
    return FactorWitness.build(h, poles)


def factor_one(action, args, f_text=None):
    """One factor-lab operation; ``f_text`` overrides --f (batch mode)."""
    f_src = f_text if f_text is not None else getattr(args, "f", None)
    if action == "construct":
        src = f_text if f_text is not None else args.h
        if src is None:
            raise UsageError("construct needs --h")
        h = parse(src, "laurent")
        poles = parse_scalar_list(args.poles)
        f, w = construct_reducible(h, poles)
        ok = bool(verify_factorization(f, w))
        return (
            {"h": format_laurent(h), "poles": [str(a) for a in poles]},
            "verdict",
            {"f": format_laurent(f), "witness": w.to_dict(), "verified": ok},
        )
    if action == "verify":
        if f_src is None or args.h is None:
            raise UsageError("verify needs --f and --h")
        f = parse(f_src, "laurent")
        w = _witness_from(args)
        res = verify_factorization(f, w)
        details = {
            "passed": res.passed,
            "product": format_ore(res.product),
            "difference": format_ore(res.difference),
            "constraint_failures": [
                {"index": i, "pole": str(a), "got": str(g), "want": str(x)}
                for i, a, g, x in res.constraint_failures
            ],
        }
        return {"f": format_laurent(f), "witness": w.to_dict()}, "pass" if res.passed else "fail", details
    if action == "certify":
        if args.lemma16 is not None:
            cert, beta = lemma16_certified(parse_scalar_list(args.lemma16))
            return {"lemma16": args.lemma16}, "verdict", {"certificate": cert.to_dict(), "beta": format_ore(beta)}
        if f_src is None:
            raise UsageError("certify needs --f or --lemma16")
        f = parse(f_src, "laurent")
        cert = irreducible_by_degree(f)
        details = {"certificate": cert.to_dict() if cert else None,
                   "applicable": cert is not None}
        return {"f": format_laurent(f)}, "verdict", details
    if action == "reduce":
        f1 = parse(args.f1, "laurent")
        f2 = parse(args.f2, "laurent")
        F = lemma15_reduce(f1, f2)
        details = {"F": format_laurent(F), "operator": format_ore(lemma15_operator(f1, f2))}
        if args.h is not None:
            w = _witness_from(args)
            res = verify_factorization(F, w)
            left, right = lemma15_transport(f1, w)
            prod = ore_mul(left, right)
            details["transport"] = {
                "witness_verified": res.passed,
                "left": format_ore(left),
                "right": format_ore(right),
                "verified": res.passed and prod == lemma15_operator(f1, f2),
            }
        return {"f1": format_laurent(f1), "f2": format_laurent(f2)}, "verdict", details
    if action == "search":
        if f_src is None:
            raise UsageError("search needs --f")
        f = parse(f_src, "laurent")
        cfg = SearchConfig(
            (args.lo, args.hi), tuple(parse_scalar_list(args.candidates)),
            tuple(parse_scalar_list(args.box)), args.budget, args.workers,
        )
        out = search_witness(f, cfg.pole_candidates, cfg.h_bounds, cfg.coeff_box, cfg.budget, cfg.workers)
        cert = irreducible_by_degree(f)
        details = {
            "found": out.found,
            "witness": out.witness.to_dict() if out.found else None,
            "tried": out.tried,
            "pole_sets": out.pole_sets,
            "degree_certificate": cert.to_dict() if cert else None,
        }
        inputs = {"f": format_laurent(f), "candidates": [str(a) for a in cfg.pole_candidates],
                  "h_bounds": list(cfg.h_bounds), "coeff_box": [str(c) for c in cfg.coeff_box],
                  "budget": cfg.budget}
        return inputs, "verdict", details
    raise UsageError(f"unknown factor action {action!r}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _family_flags(p):
    p.add_argument("--module", help="compact spec, e.g. omega:lambda=2;b=3")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--b")
    p.add_argument("--beta")
    p.add_argument("--poles")
    p.add_argument("--alphas")


def _common(p):
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--gen", choices=("theta", "ddt"), default=None)


def build_parser():
    ap = argparse.ArgumentParser(prog="virtwist", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ore", help="arithmetic in K")
    p.add_argument("action", choices=("mul", "bracket", "divide"))
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--a")
    p.add_argument("--beta")
    _common(p)

    p = sub.add_parser("check", help="identity suites on a module")
    p.add_argument("action", choices=("bracket", "wk", "hvir", "eq41"))
    _family_flags(p)
    p.add_argument("--range", type=int, default=CheckConfig.rng)
    p.add_argument("--basis", type=int, default=CheckConfig.basis_budget)
    p.add_argument("--krange", type=int, default=CheckConfig.k_range)
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--random-vectors", type=int, default=0)
    _common(p)

    p = sub.add_parser("probe", help="window probe for invariant subspaces")
    _family_flags(p)
    p.add_argument("--seed-vec", required=True)
    p.add_argument("--window", type=int, default=ProbeConfig.window)
    p.add_argument("--N", type=int, default=ProbeConfig.N)
    p.add_argument("--L", type=int, default=ProbeConfig.L)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-saturate", action="store_true")
    _common(p)

    p = sub.add_parser("fingerprint", help="isomorphism invariants")
    _family_flags(p)
    _common(p)

    p = sub.add_parser("iso", help="decide isomorphism of two twisted modules")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    _common(p)

    p = sub.add_parser("factor", help="second-order factorization toolkit")
    p.add_argument("action", choices=("construct", "verify", "certify", "reduce", "search"))
    p.add_argument("--f")
    p.add_argument("--h")
    p.add_argument("--poles", default="")
    p.add_argument("--f1")
    p.add_argument("--f2")
    p.add_argument("--lemma16", help="coefficients of f, constant term first")
    p.add_argument("--candidates", default="")
    p.add_argument("--lo", type=int, default=0)
    p.add_argument("--hi", type=int, default=1)
    p.add_argument("--box", default="")
    p.add_argument("--budget", type=int, default=SearchConfig.budget)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--batch", help="file with one expression per line")
    _common(p)

    p = sub.add_parser("module", help="act on a module vector")
    p.add_argument("action", choices=("act",))
    _family_flags(p)
    p.add_argument("--vec", required=True)
    p.add_argument("--vir", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--op")
    _common(p)
    return ap


def _dispatch(args, seed):
    cmd = args.command
    if cmd == "ore":
        return f"ore {args.action}", cmd_ore(args)
    if cmd == "check":
        return f"check {args.action}", cmd_check(args, seed)
    if cmd == "probe":
        return "probe", cmd_probe(args)
    if cmd == "fingerprint":
        return "fingerprint", cmd_fingerprint(args)
    if cmd == "iso":
        return "iso", cmd_iso(args)
    if cmd == "factor":
        return f"factor {args.action}", factor_one(args.action, args)
    if cmd == "module":
        return "module act", cmd_module(args)
    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def run(argv, out=None):
    """Run one invocation; returns (exit code, list of reports)."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    seed = args.seed if args.seed is not None else default_seed()
    if args.command == "factor" and args.batch:
        return _run_batch(args, seed, out)
    name = args.command
    try:
        name, (inputs, status, details) = _dispatch(args, seed)
    except (VirtwistError, ValueError, TypeError, ZeroDivisionError) as exc:
        inputs, status, details = {"argv": list(argv)}, "error", {"error": type(exc).__name__, "message": str(exc)}
    report = make_report(name, inputs, status, details, seed)
    print(to_json(report) if args.json else to_text(report), file=out)
    return EXIT_CODES[status], [report]


def _run_batch(args, seed, out):
    reports = []
    worst = 0
    with open(args.batch, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            inputs, status, details = factor_one(args.action, args, text)
        except (VirtwistError, ValueError, TypeError, ZeroDivisionError) as exc:
            inputs, status, details = {"line": text}, "error", {"error": type(exc).__name__, "message": str(exc)}
        inputs = {**inputs, "lineno": lineno}
        rep = make_report(f"factor {args.action}", inputs, status, details, seed)
        reports.append(rep)
        print(to_json(rep, compact=True), file=out)
        worst = max(worst, EXIT_CODES[status])
    return worst, reports


def main(argv=None):
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
