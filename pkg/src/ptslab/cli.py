"""Command line driver.

Exit codes: 0 success / expected demo outcome, 1 check or verdict failure,
2 I/O and parse errors.  Every subcommand takes --json for machine-readable
output with the shape {command, outcome, steps, type, ...}.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .term import (App, CycleDetected, FuelExhausted, JRules, NormalForm,
                   normalize)
from .syntax import ParseError, parse, pretty
from .systems import (EMPTY, SYSTEMS, TypingError, infer)
from .encodings import definitions, registry
from .erase import EraseError, erase as erase_term, u_pretty
from . import codes as cd
from . import paradox as px

FUEL_NORMALIZE = 10_000
FUEL_DEMO = 1_000_000
FUEL_FLAT = 10_000_000


def _default_fuel(kind: int) -> int:
    env = os.environ.get("PTSLAB_FUEL")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return kind


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print(text)


def _load(path: str, system_flag: str | None):
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)
    try:
        probe = parse(text)
    except ParseError:
        probe = None
    system = system_flag or (probe.system if probe else None) or "f"
    if system not in SYSTEMS:
        print(f"error: unknown system {system!r}", file=sys.stderr)
        raise SystemExit(2)
    try:
        src = parse(text, definitions(system))
    except ParseError as exc:
        print(f"{path}:{exc}", file=sys.stderr)
        raise SystemExit(2)
    return src, SYSTEMS[system]


def _is_star(spec) -> bool:
    return spec.name == "star"


def _fold_map(spec) -> dict:
    """Display registry terms by their names in printed output."""
    return {t: n for n, t in definitions(spec.name).items()}


def cmd_check(args) -> int:
    src, spec = _load(args.file, args.system)
    star = _is_star(spec)
    fold = _fold_map(spec)
    results = []
    defs: dict = {}
    from .syntax import Definition, Check
    for item in src.items:
        try:
            if type(item) is Definition:
                j = infer(spec, EMPTY, item.term)
                defs[item.name] = (item.term, j.type)
                results.append({"name": item.name,
                                "type": pretty(j.type, star=star, fold=fold)})
            else:
                if item.name not in defs:
                    print(f"error: check of undefined name {item.name}",
                          file=sys.stderr)
                    return 1
                from .systems import check as check_op
                check_op(spec, EMPTY, defs[item.name][0], item.type)
                results.append({"name": item.name, "checked": True,
                                "type": pretty(item.type, star=star,
                                               fold=fold)})
        except TypingError as exc:
            _emit(args,
                  {"command": "check", "outcome": "error", "name": item.name,
                   "error": type(exc).__name__, "detail": str(exc),
                   "position": list(getattr(exc, "position", ()))},
                  f"{args.file}: {item.name}: {type(exc).__name__}: {exc}"
                  f" at {list(getattr(exc, 'position', ()))}")
            return 1
    lines = "\n".join(
        f"{r['name']} : {r['type']}" for r in results)
    _emit(args, {"command": "check", "outcome": "ok", "steps": len(results),
                 "type": None, "results": results}, lines)
    return 0


def _find_term(src, name: str):
    d = src.definitions
    if name not in d:
        print(f"error: no definition named {name!r}", file=sys.stderr)
        raise SystemExit(2)
    return d[name]


def cmd_normalize(args) -> int:
    src, spec = _load(args.file, args.system)
    star = _is_star(spec)
    fold = _fold_map(spec)
    t = _find_term(src, args.term)
    fuel = args.fuel if args.fuel is not None else _default_fuel(FUEL_NORMALIZE)
    jrules = JRules() if spec.with_j else None
    tr = normalize(t, fuel, detect_cycles=args.cycles, jrules=jrules,
                   keep_steps=args.trace)
    if args.trace and not args.json:
        for i, s in enumerate(tr.steps):
            print(f"{i:4d} {s.rule:10s} at {list(s.position)}: "
                  f"{pretty(s.after, star=star, fold=fold)}")
    out = tr.outcome
    if type(out) is NormalForm:
        _emit(args, {"command": "normalize", "outcome": "normal-form",
                     "steps": tr.step_count, "type": None,
                     "term": pretty(out.term, star=star, fold=fold)},
              pretty(out.term, star=star, fold=fold))
        return 0
    if type(out) is CycleDetected:
        _emit(args, {"command": "normalize", "outcome": "cycle",
                     "steps": tr.step_count, "period": out.period,
                     "type": None, "term": pretty(out.witness, star=star, fold=fold)},
              f"cycle of period {out.period}: "
              f"{pretty(out.witness, star=star, fold=fold)}")
        return 1
    _emit(args, {"command": "normalize", "outcome": "fuel-exhausted",
                 "steps": tr.step_count, "type": None},
          f"no normal form within {out.fuel} steps")
    return 1


def cmd_erase(args) -> int:
    src, spec = _load(args.file, args.system)
    t = _find_term(src, args.term)
    try:
        u = erase_term(t)
    except EraseError as exc:
        _emit(args, {"command": "erase", "outcome": "error",
                     "steps": 0, "type": None, "error": str(exc)},
              f"error: {exc}")
        return 1
    _emit(args, {"command": "erase", "outcome": "ok", "steps": 0,
                 "type": None, "term": u_pretty(u)}, u_pretty(u))
    return 0


def cmd_registry(args) -> int:
    rows = [{"name": e.name, "system": e.system,
             "type": pretty(e.type, star=e.system == "star"),
             "citation": e.citation}
            for e in registry()]
    text = "\n".join(f"{r['system']:5s} {r['name']:8s} : {r['type']}"
                     f"   [{r['citation']}]" for r in rows)
    _emit(args, {"command": "registry", "outcome": "ok", "steps": len(rows),
                 "type": None, "entries": rows}, text)
    return 0


def cmd_demo(args) -> int:
    fuel = args.fuel
    if args.what == "loop":
        rep = px.build_loop()
        fold = _fold_map(SYSTEMS["f+j"])
        ok = (type(rep.trace.outcome) is CycleDetected
              and rep.trace.outcome.witness == rep.start
              and all(s >= 0 for s in rep.checkpoint_steps))
        lines = [f"start: {pretty(rep.start, fold=fold)}"]
        for s in rep.trace.steps[:rep.period]:
            lines.append(f"  --{s.rule}--> {pretty(s.after, fold=fold)}")
        lines.append(f"cycle period {rep.period} (raw contractions)")
        _emit(args, {"command": "demo", "outcome":
                     "cycle" if ok else "unexpected", "steps": rep.period,
                     "type": "rho", "term": pretty(rep.start, fold=fold)},
              "\n".join(lines))
        return 0 if ok else 1
    if args.what == "hurkens":
        fuel = fuel if fuel is not None else _default_fuel(FUEL_DEMO)
        t = px.build_hurkens()
        typed = px.hurkens_type_checks()
        tr = normalize(t, fuel, detect_cycles=True, keep_steps=False)
        diverged = type(tr.outcome) is FuelExhausted
        ok = typed and diverged
        _emit(args, {"command": "demo", "outcome":
                     "fuel-exhausted" if ok else "unexpected",
                     "steps": tr.step_count, "type": "bot"},
              f"paradox : bot = Pi a:V. a  (type checks: {typed})\n"
              f"normalization: {type(tr.outcome).__name__} "
              f"after {tr.step_count} steps, no cycle")
        return 0 if ok else 1
    # flat
    fuel = fuel if fuel is not None else _default_fuel(FUEL_FLAT)
    fm = cd.build_flat_machinery()
    table = fm.table
    smallest = min(cd.type_codes(table))
    want = table.term_of(smallest)
    tr = normalize(App(fm.flat, cd.church(smallest)), fuel, keep_steps=False)
    got = tr.outcome.term if type(tr.outcome) is NormalForm else None
    j = infer(SYSTEMS["star"], EMPTY, fm.flat)
    ok = got == want
    _emit(args, {"command": "demo", "outcome": "converted" if ok else
                 "unexpected", "steps": tr.step_count,
                 "type": pretty(j.type, star=True),
                 "term": pretty(got, star=True) if got else None},
          f"flat : {pretty(j.type, star=True)}\n"
          f"flat({smallest}) = {pretty(got, star=True) if got else '??'} "
          f"== {table.name_of(smallest)} "
          f"in {tr.step_count} steps: {ok}")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="ptslab")
    ap.add_argument("--json", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check")
    p.add_argument("file")
    p.add_argument("--system", choices=sorted(SYSTEMS))
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("normalize")
    p.add_argument("file")
    p.add_argument("--term", required=True)
    p.add_argument("--system", choices=sorted(SYSTEMS))
    p.add_argument("--fuel", type=int)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--cycles", action="store_true")
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("erase")
    p.add_argument("file")
    p.add_argument("--term", required=True)
    p.add_argument("--system", choices=sorted(SYSTEMS))
    p.set_defaults(fn=cmd_erase)

    p = sub.add_parser("registry")
    p.set_defaults(fn=cmd_registry)

    p = sub.add_parser("demo")
    p.add_argument("what", choices=["loop", "hurkens", "flat"])
    p.add_argument("--fuel", type=int)
    p.set_defaults(fn=cmd_demo)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
