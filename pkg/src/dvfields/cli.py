"""Command-line front end.

Every command prints one JSON record on stdout (compact, sorted keys) and
exits 0 on success, 2 on domain errors, 3 on precision errors, 4 on parse
errors.  `check` runs registered invariant suites and exits 1 on any
violation, printing the first counterexample verbatim inside the report.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import suites as suites_mod
from .dvmodel import DVModel, base_model
from .errors import DVError, DomainError
from .game import MatchedU, make_game_model, sigma_check_triple, sigma_refute
from .hahn import HahnSeries
from .inflator import Line, Window, classify_tame, mutate_line, specialize_line, wres
from .modelfile import emit_model, grown_path, load_model
from .newton import ValuedPoly, count_roots_in_ring, polygon, rolle_check
from .ordgroup import (
    INFINITY,
    INTEGERS,
    RATIONALS,
    ValueGroupDesc,
)
from .parsing import (
    format_dual,
    format_group_elem,
    format_series,
    parse_group_elem,
    parse_series,
)


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")


def infer_group(texts) -> ValueGroupDesc:
    """Guess a descriptor from exponent literals: bracket arity gives the
    rank, a fractional coordinate anywhere makes that coordinate rational."""
    rank = 1
    fractional: set[int] = set()
    import re

    for text in texts:
        for m in re.finditer(r"\[([^\]]*)\]", text):
            parts = m.group(1).split(";")
            rank = max(rank, len(parts))
            for i, part in enumerate(parts):
                if "/" in part:
                    fractional.add(i)
        for m in re.finditer(r"t\^(-?[0-9]+/[0-9]+)", text):
            fractional.add(0)
    kinds = tuple(RATIONALS if i in fractional else INTEGERS for i in range(rank))
    return ValueGroupDesc(kinds)


def _load(args, texts=()) -> tuple[DVModel, list[str], Path | None]:
    if getattr(args, "model", None):
        model, names = load_model(args.model)
        path = Path(args.model)
    else:
        model = base_model()
        names = ["omega", "unit"] if model.group.rank == 2 else [f"g{i}" for i in range(model.group.rank)]
        path = None
    if getattr(args, "precision", None):
        model.precision = parse_group_elem(args.precision, model.group)
    return model, names, path


def _series_arg(text: str, model: DVModel | None, args) -> HahnSeries:
    group = model.group if model is not None else infer_group([text])
    return parse_series(text, group)


def _maybe_write_grown(model, names, path, report):
    if not model.witness_log:
        report["witness_ledger"] = []
        return
    report["witness_ledger"] = model.witness_log
    text = emit_model(model, names)
    if path is not None:
        out = grown_path(path)
        out.write_text(text)
        report["model_out"] = str(out)
    else:
        report["model_out"] = None
        report["model_text"] = text


def cmd_eval(args):
    if args.model:
        model, _, _ = _load(args)
        group = model.group
    else:
        group = infer_group([args.series])
    x = parse_series(args.series, group)
    _emit({"command": "eval", "series": format_series(x)})
    return 0


def cmd_val(args):
    if args.model:
        model, _, _ = _load(args)
        x = parse_series(args.series, model.group)
    else:
        x = parse_series(args.series, infer_group([args.series]))
    v = x.val()
    _emit({"command": "val", "val": "+inf" if v is INFINITY else format_group_elem(v)})
    return 0


def cmd_res(args):
    if args.model:
        model, _, _ = _load(args)
        x = parse_series(args.series, model.group)
    else:
        x = parse_series(args.series, infer_group([args.series]))
    from .parsing import format_kelem

    _emit({"command": "res", "res": format_kelem(x.res())})
    return 0


def cmd_wres(args):
    model, names, path = _load(args)
    x = parse_series(args.series, model.group)
    _emit({"command": "wres", "wres": format_dual(wres(model, x))})
    return 0


def cmd_classify(args):
    model, names, path = _load(args)
    x = parse_series(args.series, model.group)
    rc = model.classify_ring(x)
    report = {"command": "classify", "ring": rc.tag.value}
    if rc.in_O() and rc.decided():
        vp = model.val_partial(x)
        report["val_partial"] = "+inf" if vp is INFINITY else format_group_elem(vp)
    if args.tame:
        tc = classify_tame(model, x)
        report["tame"] = {
            "kind": tc.kind,
            "probe": tc.probe,
            "witness": format_dual(tc.witness) if tc.witness is not None else None,
        }
    _emit(report)
    return 0


def _parse_line(text: str, model: DVModel) -> Line:
    coords = [parse_series(part.strip(), model.group) for part in text.split(",")]
    return Line(tuple(coords))


def _subspace_report(sub, rep) -> dict:
    return {
        "basis": [[format_dual(d) for d in vec] for vec in sub.basis],
        "complete": sub.complete,
        "witnesses": rep.witnesses,
        "mode": rep.mode,
    }


def cmd_specialize(args):
    model, names, path = _load(args)
    line = _parse_line(args.line, model)
    sub, rep = specialize_line(model, line, Window(exp_bound=args.window))
    report = {"command": "specialize", "inputs": {"line": args.line}}
    report.update(_subspace_report(sub, rep))
    _maybe_write_grown(model, names, path, report)
    _emit(report)
    return 0


def cmd_mutate(args):
    model, names, path = _load(args)
    base = _parse_line(args.base, model)
    arg = _parse_line(args.arg, model)
    sub, rep = mutate_line(model, base, arg, Window(exp_bound=args.window))
    report = {
        "command": "mutate",
        "index_map": rep.index_map,
        "inputs": {"base": args.base, "arg": args.arg},
    }
    report.update(_subspace_report(sub, rep))
    _maybe_write_grown(model, names, path, report)
    _emit(report)
    return 0


def cmd_newton(args):
    if args.model:
        model, _, _ = _load(args)
        group = model.group
    else:
        group = infer_group(args.poly.split(","))
    coeffs = [parse_series(part.strip(), group) for part in args.poly.split(",")]
    p = ValuedPoly(tuple(coeffs))
    np = polygon(p)
    report = {
        "command": "newton",
        "vertices": [[i, _hullvec(v)] for i, v in np.vertices],
        "segments": [{"slope": _hullvec(s), "length": n} for s, n in np.segments],
        "roots_in_O": count_roots_in_ring(p),
    }
    _emit(report)
    return 0


def _hullvec(v) -> str:
    if len(v) == 1:
        return str(v[0])
    return "[" + ";".join(str(c) for c in v) + "]"


def cmd_rolle(args):
    if args.model:
        model, _, _ = _load(args)
        group = model.group
    else:
        group = infer_group(args.poly.split(",") + [args.center, args.radius])
    coeffs = [parse_series(part.strip(), group) for part in args.poly.split(",")]
    p = ValuedPoly(tuple(coeffs))
    center = parse_series(args.center, group)
    radius = parse_group_elem(args.radius, group)
    cert = rolle_check(p, center, radius)
    _emit(
        {
            "command": "rolle",
            "roots_in_ball": cert.roots_in_ball,
            "derivative_roots_in_ball": cert.derivative_roots_in_ball,
        }
    )
    return 0


def cmd_density(args):
    model, names, path = _load(args)
    a = parse_series(args.a, model.group)
    b = parse_series(args.b, model.group)
    gamma = parse_group_elem(args.gamma, model.group)
    x = model.solve_density(a, b, gamma)
    report = {
        "command": "density",
        "inputs": {"a": args.a, "b": args.b, "gamma": args.gamma},
        "x": format_series(x),
        "precision_used": format_group_elem(model.precision),
    }
    _maybe_write_grown(model, names, path, report)
    _emit(report)
    return 0


def cmd_reduce3(args):
    model, names, path = _load(args)
    elems = [parse_series(part.strip(), model.group) for part in args.elems.split(",")]
    if len(elems) != 3:
        raise DomainError("reduce3 needs exactly three comma-separated elements")
    i, q, j, p, k = model.reduce_triple(*elems)
    report = {
        "command": "reduce3",
        "inputs": {"elems": args.elems},
        "index": i,
        "q": format_series(q),
        "j": j,
        "p": format_series(p),
        "k": k,
        "precision_used": format_group_elem(model.precision),
    }
    _maybe_write_grown(model, names, path, report)
    _emit(report)
    return 0


def cmd_game(args):
    if args.u:
        u = parse_series(args.u, make_game_model().group)
        m = make_game_model(u)
    else:
        m = make_game_model()
    a_prime = parse_series(args.adversary, m.group)
    out = sigma_refute(m, a_prime)
    if isinstance(out, MatchedU):
        _emit({"command": "game", "matched_u": out.reason})
        return 0
    transcript = {
        "command": "game",
        "a": format_series(out.a),
        "a_prime": format_series(out.a_prime),
        "n": out.n,
        "val_diff": format_group_elem(out.val_diff),
        "b": format_series(out.b),
        "c": format_series(out.c),
    }
    if args.mode == "check":
        if args.bprime is None or args.cprime is None:
            raise DomainError("game check needs --bprime and --cprime")
        bp = parse_series(args.bprime, m.group)
        cp = parse_series(args.cprime, m.group)
        idx = sigma_check_triple(m, out, bp, cp)
        transcript["command"] = "game-check"
        transcript["violated"] = idx
    _emit(transcript)
    return 0


def cmd_check(args):
    names = args.suites
    if names == ["all"] or not names:
        names = list(suites_mod.SUITES)
    results = []
    ok = True
    for name in names:
        res = suites_mod.run_suite(name, seed=args.seed, cases=args.cases)
        results.append(
            {"suite": res.name, "cases": res.cases, "failures": res.failures}
        )
        ok = ok and res.ok()
        line = f"{res.name}: {res.cases} cases, {len(res.failures)} failures, {res.seconds:.2f}s"
        print(line, file=sys.stderr)
    _emit({"command": "check", "ok": ok, "suites": results, "seed": args.seed})
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dvf",
        description="Exact arithmetic in valued fields with truncated derivations",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, model=True):
        if model:
            p.add_argument("--model", help="model file (TOML)")
            p.add_argument("--precision", help="working precision exponent")
        p.add_argument("--json", action="store_true", help="JSON output (always on)")

    p = sub.add_parser("eval", help="parse and canonicalize a series")
    p.add_argument("series")
    common(p)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("val", help="valuation of a series")
    p.add_argument("series")
    common(p)
    p.set_defaults(fn=cmd_val)

    p = sub.add_parser("res", help="residue of an integral series")
    p.add_argument("series")
    common(p)
    p.set_defaults(fn=cmd_res)

    p = sub.add_parser("wres", help="generalized residue into the dual numbers")
    p.add_argument("series")
    common(p)
    p.set_defaults(fn=cmd_wres)

    p = sub.add_parser("classify", help="ring membership tags R/Q/I, tame/wild")
    p.add_argument("series")
    p.add_argument("--tame", action="store_true", help="include the tame/wild probe result")
    common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("specialize", help="specialize a line into dual-number space")
    p.add_argument("--line", required=True, help="comma-separated series coordinates")
    p.add_argument("--window", type=int, default=2, help="witness search bound")
    common(p)
    p.set_defaults(fn=cmd_specialize)

    p = sub.add_parser("mutate", help="specialize the Kronecker product of two lines")
    p.add_argument("--base", required=True)
    p.add_argument("--arg", required=True)
    p.add_argument("--window", type=int, default=2)
    common(p)
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("newton", help="Newton polygon and root count")
    p.add_argument("--poly", required=True, help="comma-separated coefficients a0,..,an")
    common(p)
    p.set_defaults(fn=cmd_newton)

    p = sub.add_parser("rolle", help="derivative-root certificate in a ball")
    p.add_argument("--poly", required=True)
    p.add_argument("--center", required=True)
    p.add_argument("--radius", required=True)
    common(p)
    p.set_defaults(fn=cmd_rolle)

    p = sub.add_parser("density", help="solve one density query by adjoining a symbol")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--gamma", required=True)
    common(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("reduce3", help="express one of three elements over the others")
    p.add_argument("--elems", required=True, help="three comma-separated series")
    common(p)
    p.set_defaults(fn=cmd_reduce3)

    p = sub.add_parser("game", help="run the unliftability game against an adversary")
    p.add_argument("mode", nargs="?", choices=["check"], default=None)
    p.add_argument("--u", help="unit multiplier series (default 1 + t)")
    p.add_argument("--adversary", required=True)
    p.add_argument("--bprime")
    p.add_argument("--cprime")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_game)

    p = sub.add_parser("check", help="run invariant suites")
    p.add_argument("suites", nargs="*", default=["all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_check)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except DVError as exc:
        _emit(
            {
                "command": args.command,
                "error": {"code": exc.code, "message": str(exc)},
            }
        )
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
