"""Command line interface: ``gradalg <command> ...``.

Exit status is 0 on success, 1 when a computed value contradicts an
expectation or a hypothesis fails, and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .apolarity import annihilator, dual_ring, from_differentiation
from .constructions import ConstructionError, CurveSpec, gorenstein_from_section, points_on_curve, truncate_algebra
from .deformation import HypothesisError, ext1_dim, hom_dim, lev2_analysis, obstruction_report, predicted_dims, rho
from .ideal import Ideal, format_ideal, read_ideal_file, read_ideal_text
from .linkage import LinkageError, ci_link, linkage_chain, read_chain_file
from .registry import example_ids, verify_example
from .resolution import betti_numbers, regularity
from .ring import DEFAULT_CHAR, ParseError, PolyRing

log = logging.getLogger("gradalg")


class UsageError(Exception):
    pass


class Mismatch(Exception):
    pass


def _env_int(name: str) -> int | None:
    v = os.environ.get(name)
    if v is None or v == "":
        return None
    try:
        return int(v)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {v!r}")


def _config(args) -> dict:
    seed = args.seed if args.seed is not None else _env_int("GRADALG_SEED")
    char = args.char if args.char is not None else _env_int("GRADALG_CHAR")
    return {"seed": 0 if seed is None else seed, "char": char}


def _ideal(path: str, cfg: dict) -> Ideal:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such ideal file: {path}")
    return read_ideal_file(p, char=cfg["char"])


def _dual_forms(path: str, cfg: dict, differentiation: bool = False):
    """Dual forms file: ring header with the variables of R, then forms in uppercase names."""
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    lines = [ln.split("#", 1)[0].strip() for ln in p.read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("ring"):
        raise UsageError("dual forms file needs a ring header")
    R = read_ideal_text(lines[0] + "\n", char=cfg["char"]).ring
    D = dual_ring(R)
    forms = [D.parse(ln) for ln in lines[1:]]
    if differentiation:
        forms = [from_differentiation(F) for F in forms]
    return R, forms


def _form_arg(text: str, cfg: dict, names: str, differentiation: bool):
    if Path(text).exists():
        R, forms = _dual_forms(text, cfg, differentiation)
        if not forms:
            raise UsageError(f"{text} holds no forms")
        return R, forms[0]
    R = PolyRing(tuple(v.strip() for v in names.split(",")), cfg["char"] or DEFAULT_CHAR)
    F = dual_ring(R).parse(text)
    return R, from_differentiation(F) if differentiation else F


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, default=_json_default))
    else:
        print(text)


def _json_default(x):
    if isinstance(x, np.integer):
        return int(x)
    raise TypeError(type(x).__name__)


def _ring_payload(I: Ideal) -> dict:
    return {"vars": list(I.ring.names), "char": I.ring.char}


# commands

def cmd_gb(args, cfg):
    I = _ideal(args.ideal, cfg)
    gb = I.groebner()
    text = "\n".join(str(g) for g in gb)
    _emit(args, text, {"ring": _ring_payload(I), "groebner_basis": [str(g) for g in gb]})


def cmd_res(args, cfg):
    I = _ideal(args.ideal, cfg)
    b = betti_numbers(I)
    reg = regularity(I)
    text = f"{b}\n{b.format_resolution()}\nreg(R/I) = {reg}"
    _emit(args, text, {"ring": _ring_payload(I), **b.as_dict(), "reg_quotient": reg})


def cmd_hilb(args, cfg):
    I = _ideal(args.ideal, cfg)
    hs = I.hilbert_series()
    top = args.to
    if top is None:
        top = I.socle_degree() + 1 if I.is_artinian() else regularity(I) + 4
    hf = I.hilbert_function(top)
    d = hf.as_dict()
    lines = [
        "H: " + " ".join(map(str, d["H"])),
        "h: " + " ".join(map(str, d["h"])),
        "poly: " + " ".join(map(str, d["poly"])),
        f"dim: {hs.krull_dim}  multiplicity: {hs.multiplicity}",
    ]
    _emit(args, "\n".join(lines), {**d, "krull_dim": hs.krull_dim, "multiplicity": hs.multiplicity})


def cmd_apolar(args, cfg):
    path = args.dual or args.dualforms
    if path is None:
        raise UsageError("apolar needs a dual forms file")
    R, forms = _dual_forms(path, cfg, args.differentiation)
    if not forms:
        raise UsageError("no forms given")
    I = annihilator(forms, ring=R)
    top = max(F.degree() for F in forms) + 1
    vals = I.hilbert_series().values(top)
    text = format_ideal(Ideal(R, I.minimal_generators())) + "# H: " + " ".join(map(str, vals))
    _emit(args, text, {"ring": _ring_payload(I), "generators": [str(g) for g in I.minimal_generators()], "hilbert": vals})


def cmd_link(args, cfg):
    J = _ideal(args.ideal, cfg)
    rng = np.random.default_rng(cfg["seed"])
    step = ci_link(J, args.degrees, rng, with_betti=True)
    J2 = Ideal(J.ring, step.J2.minimal_generators())
    text = format_ideal(J2) + f"# linked by a complete intersection of type {tuple(step.type)}; deg J + deg J' = {step.degree_J} + {step.degree_J2}"
    _emit(args, text, {"seed": cfg["seed"], "step": step.as_dict(), "linked": [str(g) for g in J2.gens]})


def cmd_chain(args, cfg):
    J = _ideal(args.ideal, cfg)
    p = Path(args.chainfile)
    if not p.exists():
        raise UsageError(f"no such chain file: {args.chainfile}")
    types = read_chain_file(p.read_text())
    cert = linkage_chain(J, types, seed=cfg["seed"], with_betti=True)
    lines = [f"step {k + 1}: type {tuple(s.type)}, sum H_J(a) = {s.sum_H_J}, sum H_J'(a) = {s.sum_H_J2}" for k, s in enumerate(cert.steps)]
    lines.append("final: " + betti_numbers(cert.final).format_resolution())
    lines.append(f"final is a complete intersection: {cert.final_is_ci}")
    if cert.dims:
        lines.append(f"ledger ({'anchored at ' + cert.anchor}, conditional): " + " ".join(map(str, cert.dims)))
    lines.extend(cert.notes)
    _emit(args, "\n".join(lines), cert.as_dict())


def cmd_tangent(args, cfg):
    I = _ideal(args.ideal, cfg)
    t = hom_dim(I, I, 0)
    e = ext1_dim(I, I, 0)
    _emit(args, f"tangent = {t}\next1_0 = {e}", {"tangent": t, "ext1": {"0": e}})


def cmd_obstruct(args, cfg):
    I = _ideal(args.ideal, cfg)
    B = _ideal(args.B, cfg) if args.B else None
    rep = obstruction_report(I, B=B, ext_window=args.window)
    lines = [f"{k} = {v}" for k, v in rep.as_dict().items()]
    _emit(args, "\n".join(lines), rep.as_dict())


def cmd_rho(args, cfg):
    I = _ideal(args.ideal, cfg)
    r = rho(I)
    _emit(args, f"rho = {r}", {"rho": r})


def cmd_truncate(args, cfg):
    B = _ideal(args.ideal, cfg)
    A = truncate_algebra(B, args.j, args.alpha, np.random.default_rng(cfg["seed"]))
    vals = A.hilbert_series().values(args.j + 1)
    _emit(args, format_ideal(A) + "# H: " + " ".join(map(str, vals)),
          {"seed": cfg["seed"], "generators": [str(g) for g in A.gens], "hilbert": vals})


def cmd_points(args, cfg):
    try:
        spec = CurveSpec.parse(args.curvespec, char=cfg["char"] or DEFAULT_CHAR)
    except ValueError as exc:
        raise UsageError(str(exc))
    ps = points_on_curve(spec, args.s, np.random.default_rng(cfg["seed"]))
    I = Ideal(ps.ideal.ring, ps.ideal.minimal_generators())
    _emit(args, format_ideal(I) + "# H: " + " ".join(map(str, ps.hilbert)), {
        "seed": cfg["seed"], "curve": spec.tag, "points": ps.points, "attempts": ps.attempts,
        "generators": [str(g) for g in I.gens], "hilbert": ps.hilbert,
    })


def cmd_gorsec(args, cfg):
    B = _ideal(args.ideal, cfg)
    g = gorenstein_from_section(B, args.t, np.random.default_rng(cfg["seed"]))
    A = Ideal(B.ring, g.ideal.minimal_generators())
    _emit(args, format_ideal(A) + "# H: " + " ".join(map(str, g.hilbert)),
          {"seed": cfg["seed"], "t": g.t, "attempts": g.attempts, "generators": [str(x) for x in A.gens], "hilbert": g.hilbert})


def cmd_lev2(args, cfg):
    R1, F1 = _form_arg(args.F1, cfg, args.vars, args.differentiation)
    R2, F2 = _form_arg(args.F2, cfg, args.vars, args.differentiation)
    if R1.names != R2.names:
        raise UsageError("the two forms live in different rings")
    rep = lev2_analysis(F1, F2, cross_check=not args.no_cross_check)
    lines = [f"j = {rep.j}", "H: " + " ".join(map(str, rep.hilbert))]
    for k, pt in enumerate(rep.parts, start=1):
        lines.append(
            f"part {k}: (I_A/I_A I_A{k})_j = {pt.quotient_dim}, (I_A I_A{k})_j = {pt.product_dim}, "
            f"(I_A ⊗ I_A{k})_j = {pt.tensor_dim}, homology = {pt.homology}"
        )
    lines.append(f"certified: {rep.certified}  dim: {rep.dim}")
    if rep.tangent is not None:
        lines.append(f"tangent = {rep.tangent}  obstruction = {rep.obstruction}")
    _emit(args, "\n".join(lines), rep.as_dict())


def cmd_predict(args, cfg):
    A = _ideal(args.A, cfg)
    B = _ideal(args.B, cfg) if args.B else None
    kw = {k: getattr(args, k) for k in ("j", "t", "r") if getattr(args, k) is not None}
    pred = predicted_dims(B, A, args.mode, dim_B=args.dim_B, **kw)
    text = f"{pred.mode}: {pred.value}" + ("  (conditional)" if pred.conditional else "")
    text += "\n" + "\n".join(f"  {k} = {v}" for k, v in pred.terms.items())
    _emit(args, text, pred.as_dict())


def _run_example(name: str, seed: int | None, char: int):
    return verify_example(name, seed=seed, char=char).as_dict()


def _report(args, results: list[dict]) -> None:
    if args.format == "json":
        print(json.dumps(results if len(results) > 1 else results[0], sort_keys=True, default=_json_default))
    else:
        for r in results:
            for c in r["checks"]:
                print(f"{'ok  ' if c['ok'] else 'FAIL'} {r['example']}: {c['name']}: expected {c['expected']}, got {c['got']}")
            print(f"{'PASS' if r['ok'] else 'FAIL'} {r['example']} (seed {r['seed']})")
    bad = [r["example"] for r in results if not r["ok"]]
    if bad:
        raise Mismatch("expectation mismatch in " + ", ".join(bad))


def _example_seed(args) -> int | None:
    # registered seeds are the default; explicit --seed or GRADALG_SEED overrides them
    if args.seed is not None:
        return args.seed
    return _env_int("GRADALG_SEED")


def cmd_verify_example(args, cfg):
    if args.id not in example_ids():
        raise UsageError(f"unknown example {args.id!r}; known: {', '.join(example_ids())}")
    _report(args, [_run_example(args.id, _example_seed(args), cfg["char"] or DEFAULT_CHAR)])


def cmd_verify_all(args, cfg):
    names = example_ids()
    seed, char = _example_seed(args), cfg["char"] or DEFAULT_CHAR
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_run_example, names, [seed] * len(names), [char] * len(names)))
    else:
        results = [_run_example(n, seed, char) for n in names]
    _report(args, results)


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so that options given before the subcommand are not reset by it
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default: GRADALG_SEED or 0)")
    common.add_argument("--char", type=int, default=argparse.SUPPRESS, help="prime characteristic (default: GRADALG_CHAR or the file header)")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="gradalg", description="Graded algebra computations over F_p.", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=fn)
        return p

    add("gb", cmd_gb, "reduced Gröbner basis").add_argument("ideal")
    add("res", cmd_res, "minimal free resolution, Betti table and regularity").add_argument("ideal")
    p = add("hilb", cmd_hilb, "Hilbert function and series")
    p.add_argument("ideal")
    p.add_argument("--to", type=int, default=None, help="last degree to print")
    p = add("apolar", cmd_apolar, "annihilator of dual forms")
    p.add_argument("dualforms", nargs="?")
    p.add_argument("--dual", default=None, help="dual forms file (same as the positional argument)")
    p.add_argument("--differentiation", action="store_true", help="forms act by differentiation instead of contraction")
    p = add("link", cmd_link, "link by a random complete intersection inside the ideal")
    p.add_argument("ideal")
    p.add_argument("degrees", type=int, nargs="+")
    p = add("chain", cmd_chain, "run a chain of links and the dimension ledger")
    p.add_argument("ideal")
    p.add_argument("chainfile")
    add("tangent", cmd_tangent, "degree zero Hom(I, R/I) and Ext^1").add_argument("ideal")
    p = add("obstruct", cmd_obstruct, "tangent, obstruction bound and dimension bracket")
    p.add_argument("ideal")
    p.add_argument("--B", default=None, help="ideal of B for the epsilon term")
    p.add_argument("--window", type=int, default=0, help="report Ext^1 in degrees -w..w")
    add("rho", cmd_rho, "rho(H) for an Artinian quotient of a 3-variable ring").add_argument("ideal")
    p = add("truncate", cmd_truncate, "Artinian truncation in degree j keeping alpha dimensions")
    p.add_argument("ideal")
    p.add_argument("j", type=int)
    p.add_argument("alpha", type=int)
    p = add("points", cmd_points, "generic points on a curve (rnc:d, twisted_cubic, plane_cubic_plus_point, four_lines)")
    p.add_argument("curvespec")
    p.add_argument("s", type=int)
    p = add("gorsec", cmd_gorsec, "Gorenstein quotient from a section of the dual canonical module")
    p.add_argument("ideal")
    p.add_argument("t", type=int)
    p = add("lev2", cmd_lev2, "type two level algebra R/ann(F1, F2)")
    p.add_argument("F1", help="dual form or dual forms file")
    p.add_argument("F2")
    p.add_argument("--vars", default="x,y,z")
    p.add_argument("--differentiation", action="store_true")
    p.add_argument("--no-cross-check", action="store_true")
    p = add("predict", cmd_predict, "component dimension from a structure formula")
    p.add_argument("mode", choices=("mainzero", "mainartin", "sgenartin", "maintrans", "corart"))
    p.add_argument("--A", required=True)
    p.add_argument("--B", default=None)
    p.add_argument("--dim-B", dest="dim_B", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    add("verify-example", cmd_verify_example, "check a registered example").add_argument("id")
    p = add("verify-all", cmd_verify_all, "check every registered example")
    p.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("seed", None), ("char", None), ("format", "text"), ("verbose", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = _config(args)
        args.func(args, cfg)
    except (UsageError, ParseError, FileNotFoundError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return 1
    except (HypothesisError, ConstructionError, LinkageError, ArithmeticError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
