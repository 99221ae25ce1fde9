"""Command-line entry point: ``stratlat <command> ...``.

Exit codes: 0 success, 1 a checked property fails (a JSON witness line is
printed), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .enumeration import EnumerationBudget, enumerate_models
from .errors import (
    BudgetExceeded,
    CycleError,
    IsoFailure,
    NotALattice,
    NotAModel,
    NotWeaklyMonotone,
    ParseError,
    StratlatError,
)
from .fixpoint import EndoFunction, LevelTrace, fixed_point_lattice, stratified_lfp
from .inverse_limit import representation_isomorphism
from .lp import collapse3, parse_program, rw_minimum_model, wfs_oracle
from .stratified import StratifiedLattice, b_axiomatization_round_trip, check_axioms, classify

OK, VIOLATED, BAD_INPUT = 0, 1, 2


@dataclass
class CommandResult:
    exit_code: int
    report: list[str] = field(default_factory=list)
    payload: object = None


class InputError(Exception):
    pass


def _color(ok: bool, text: str) -> str:
    if os.environ.get("STRATLAT_COLOR", "0") != "1":
        return text
    return f"\x1b[{32 if ok else 31}m{text}\x1b[0m"


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8 text") from None


def load_model(path) -> StratifiedLattice:
    data = _read_json(path)
    try:
        return StratifiedLattice.from_json(data)
    except (KeyError, TypeError, ValueError, CycleError, NotALattice) as exc:
        raise InputError(f"{path}: {exc}") from None


def _witness_line(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True)


# ---------------------------------------------------------------------------
# commands


def cmd_check(path, suite="model") -> CommandResult:
    S = load_model(path)
    reports = b_axiomatization_round_trip(S) if suite == "B" else check_axioms(S, suite)
    lines = [f"{r.axiom:5} {_color(r.holds, 'ok' if r.holds else 'FAIL')}"
             + ("" if r.holds else f"  witness={list(r.witness)}  {r.detail}") for r in reports]
    lines.append(f"classification: {classify(S)}")
    failed = [r for r in reports if not r.holds]
    payload = {"suite": suite, "holds": not failed,
               "reports": [{"axiom": r.axiom, "holds": r.holds, "witness": list(r.witness) if r.witness else None}
                           for r in reports]}
    if failed:
        lines.append(_witness_line({"axiom": failed[0].axiom, "witness": list(failed[0].witness)}))
        return CommandResult(VIOLATED, lines, payload)
    return CommandResult(OK, lines, payload)


def cmd_represent(path) -> CommandResult:
    S = load_model(path)
    try:
        rep = representation_isomorphism(S)
    except NotAModel as exc:
        raise InputError(f"input is not a model: {exc}") from None
    except IsoFailure as exc:
        return CommandResult(VIOLATED, [str(exc), _witness_line({"iso_failure": list(exc.witness)})])
    lines = []
    for a, L in enumerate(rep.system.tower):
        lines.append(f"level {a}: {' '.join(L.labels)}")
    for a in range(1, len(rep.system.tower)):
        m = rep.system.maps[(a, a - 1)]
        lines.append(f"map {a}->{a - 1}: " + ", ".join(f"{k}->{v}" for k, v in m.as_dict().items()))
    lines.append("isomorphism:")
    lines += [f"  {x} -> {t}" for x, t in rep.rows(S)]
    payload = {"system": rep.system.to_json(), "isomorphism": dict(rep.rows(S))}
    return CommandResult(OK, lines, payload)


def cmd_lfp(model_path, fn_path) -> CommandResult:
    S = load_model(model_path)
    data = _read_json(fn_path)
    try:
        f = EndoFunction.from_labels(S, data["map"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{fn_path}: {exc}") from None
    trace = LevelTrace()
    lab = S.lattice.labels
    try:
        y = stratified_lfp(f, trace=trace)
    except NotWeaklyMonotone as exc:
        raise InputError(f"function is not weakly monotone; witness {list(exc.witness)}") from None
    fpl = fixed_point_lattice(f)
    lines = [f"least fixed point: {lab[y]}"]
    for a, (v, steps) in enumerate(zip(trace.values, trace.iterates)):
        lines.append(f"  level {a}: {lab[v]}  (iterates: {' '.join(lab[s] for s in steps)})")
    lines.append(f"fixed point: {_color(f(y) == y, 'ok')}")
    lines.append(f"least among pre-fixed points: {_color(True, 'ok')}")
    lines.append(f"fixed points form a complete lattice: {_color(fpl.holds, 'ok' if fpl.holds else 'FAIL')}")
    payload = {"lfp": lab[y], "levels": [lab[v] for v in trace.values], "fixed_points": [lab[p] for p in fpl.points]}
    if not fpl.holds:
        lines.append(_witness_line({"fixed_point_subset": list(fpl.witness)}))
        return CommandResult(VIOLATED, lines, payload)
    return CommandResult(OK, lines, payload)


def _load_program(path):
    try:
        return parse_program(_read_text(path))
    except ParseError as exc:
        raise InputError(f"{path}:{exc}") from None


def cmd_solve(path, trace=False, diff_wfs=False) -> CommandResult:
    P = _load_program(path)
    m = rw_minimum_model(P)
    col = collapse3(m.values)
    lines = [f"{a} = {m.values[a]}  ({col[a]})" for a in P.atoms]
    levels = [{"alpha": r.alpha, "frozen": {a: str(v) for a, v in r.frozen.items()}, "iterations": r.iterations}
              for r in m.trace]
    if trace:
        for r in levels:
            frozen = ", ".join(f"{a}={v}" for a, v in r["frozen"].items()) or "nothing; rest set to 0"
            lines.append(f"level {r['alpha']}: froze {frozen}")
    payload = {
        "atoms": {a: {"value": str(m.values[a]), "collapsed": col[a], "level": m.levels[a]} for a in P.atoms},
        "levels": levels,
    }
    if diff_wfs:
        w = wfs_oracle(P)
        diff = {a: {"minimum_model": col[a], "wfs": w[a]} for a in P.atoms if col[a] != w[a]}
        if diff:
            lines.append(_witness_line({"wfs_mismatch": diff}))
            return CommandResult(VIOLATED, lines, payload)
        lines.append("agrees with the well-founded model")
    return CommandResult(OK, lines, payload)


def cmd_wfs(path) -> CommandResult:
    P = _load_program(path)
    w = wfs_oracle(P)
    return CommandResult(OK, [f"{a} = {w[a]}" for a in P.atoms], {"atoms": w})


def cmd_enumerate(max_elems, depth, seed=0, count=None) -> CommandResult:
    try:
        budget = EnumerationBudget(max_elements=max_elems, max_depth=depth, seed=seed)
    except BudgetExceeded as exc:
        raise InputError(str(exc)) from None
    lines = []
    for S in enumerate_models(budget):
        if count is not None and len(lines) >= count:
            break
        lines.append(json.dumps(S.to_json(), sort_keys=True))
    return CommandResult(OK, lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stratlat", description="Finite stratified complete lattices and logic-program semantics.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="evaluate an axiom suite on a stratified lattice")
    c.add_argument("path")
    c.add_argument("--suite", choices=["model", "strong", "symmetric", "dual", "B"], default="model")
    c.add_argument("--json", action="store_true")

    r = sub.add_parser("represent", help="decompose a model and verify the representation isomorphism")
    r.add_argument("path")
    r.add_argument("--json", action="store_true")

    f = sub.add_parser("lfp", help="stratified least fixed point of a weakly monotone map")
    f.add_argument("model")
    f.add_argument("function")
    f.add_argument("--json", action="store_true")

    s = sub.add_parser("solve", help="minimum model of a logic program")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--diff-wfs", action="store_true")

    w = sub.add_parser("wfs", help="well-founded model of a logic program")
    w.add_argument("path")
    w.add_argument("--json", action="store_true")

    e = sub.add_parser("enumerate", help="emit models as JSON lines")
    e.add_argument("--max-elems", type=int, required=True)
    e.add_argument("--depth", type=int, required=True)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--count", type=int)
    return p


def run(argv=None) -> CommandResult:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        return cmd_check(args.path, args.suite)
    if args.command == "represent":
        return cmd_represent(args.path)
    if args.command == "lfp":
        return cmd_lfp(args.model, args.function)
    if args.command == "solve":
        return cmd_solve(args.path, args.trace, args.diff_wfs)
    if args.command == "wfs":
        return cmd_wfs(args.path)
    return cmd_enumerate(args.max_elems, args.depth, args.seed, args.count)


def main(argv=None) -> int:
    try:
        result = run(argv)
        as_json = getattr(build_parser().parse_args(argv), "json", False)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except StratlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    if as_json and result.payload is not None:
        print(json.dumps(result.payload, ensure_ascii=False, sort_keys=True, indent=2))
        if result.exit_code == VIOLATED and result.report:
            print(result.report[-1])
    else:
        for line in result.report:
            print(line)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
