"""Command line front end.

Subcommands: ``normalize``, ``check``, ``encode``, ``solve``, ``query exec``,
``query project``.  Exit codes: 0 for yes/ok, 1 for no, 2 for notExecutable
or a validation failure, 3 for unexpected errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .el import EltasError, KnowledgeBase
from .action import DomainDescription, MalformedRuleError, UnsafeRuleError
from .encoder import (
    EncodingError,
    RepairPolicy,
    TranslatedTheory,
    check_well_defined,
    encode_all,
)
from .normalizer import (
    NormalizationError,
    conservativity_check,
    normalize,
    normalize_kb,
)
from .parser import (
    ParseError,
    format_concept,
    format_kb,
    format_rule,
    format_state,
    parse_action_sequence,
    parse_adl,
    parse_goal_literal,
    parse_kb,
)
from .queries import QueryResult, executability, projection
from .solver import Trace, extensions

VALIDATION_EXIT = 2
ERROR_EXIT = 3

_VERDICT_EXIT = {"yes": 0, "no": 1, "notExecutable": 2}

_PROVENANCE_ORDER = (
    "lang1", "lang2", "lang3", "lang4", "lang5", "lang6", "lang7", "lang8",
    "lang9", "tbox", "repair", "abox", "user", "test", "persistency",
    "nonframe", "completion",
)


def _add_input_args(p: argparse.ArgumentParser, need_adl: bool = False) -> None:
    p.add_argument("--kb", help="knowledge base file (.kb)")
    p.add_argument("--adl", required=need_adl, help="action domain file (.adl)")
    p.add_argument(
        "--mode",
        choices=("strict", "repair"),
        default="strict",
        help="strict keeps axioms as state constraints; repair turns them "
        "into causal laws that push consequences into successor states",
    )
    p.add_argument(
        "--repair",
        action="append",
        default=[],
        metavar="IDX=CHOICE",
        help="repair choice for the axiom at IDX in the normalized TBox "
        "(dropA|dropB for conjunctions, dropRole|dropFiller for left "
        "existentials, both for either shape); repeatable",
    )
    p.add_argument(
        "--full-exists",
        action="store_true",
        help="track every role/base-concept existential pair, not just the "
        "pairs occurring in the knowledge base",
    )


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _parse_repair(entries: list[str]) -> RepairPolicy:
    overrides: dict[int, str] = {}
    for entry in entries:
        left, sep, choice = entry.partition("=")
        if not sep or not left.strip().isdigit():
            raise EncodingError(
                f"--repair expects IDX=CHOICE with a numeric index, got {entry!r}"
            )
        overrides[int(left.strip())] = choice.strip()
    return RepairPolicy(overrides=overrides)


def _load(args) -> tuple[DomainDescription, TranslatedTheory]:
    kb = parse_kb(_read(args.kb)) if args.kb else KnowledgeBase()
    kb, _ = normalize_kb(kb)
    dd = parse_adl(_read(args.adl) if args.adl else "", kb)
    theory = encode_all(
        dd,
        mode=args.mode,
        policy=_parse_repair(args.repair),
        full_exists=args.full_exists,
    )
    return dd, theory


def _trace_json(trace: Trace) -> dict:
    return {
        "actions": [repr(a) for a in trace.actions],
        "states": [list(format_state(s)) for s in trace.states],
    }


def _print_trace(trace: Trace, indent: str = "  ") -> None:
    for k, state in enumerate(trace.states):
        print(f"{indent}state {k}: " + ", ".join(format_state(state)))
        if k < len(trace.actions):
            print(f"{indent}  -- {trace.actions[k]!r} -->")


def _emit_query(result: QueryResult, as_json: bool) -> int:
    if as_json:
        payload = {
            "verdict": result.verdict,
            "witnesses": [_trace_json(t) for t in result.witnesses],
            "countermodel": _trace_json(result.countermodel)
            if result.countermodel
            else None,
            "diagnostics": [
                {"axiom": format_concept(v.axiom.lhs) + " sub "
                 + format_concept(v.axiom.rhs),
                 "constant": v.constant,
                 "template": v.template}
                for v in result.diagnostics
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(result.verdict)
        for i, t in enumerate(result.witnesses, start=1):
            print(f"witness {i}:")
            _print_trace(t)
        if result.countermodel is not None:
            print("countermodel:")
            _print_trace(result.countermodel)
        for v in result.diagnostics:
            print(f"violated: {v!r}")
    return _VERDICT_EXIT[result.verdict]


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_normalize(args) -> int:
    kb = parse_kb(_read(args.kb))
    result = normalize(kb.tbox)
    normalized, fresh = normalize_kb(kb)
    if args.verify is not None:
        ok = conservativity_check(kb.tbox, result, max_domain=args.verify)
        if not args.json:
            print(f"% conservative up to domain size {args.verify}: {ok}")
        if not ok:
            print("normalization is not conservative", file=sys.stderr)
            return ERROR_EXIT
    if args.json:
        payload = {
            "tbox": [
                f"{format_concept(ax.lhs)} sub {format_concept(ax.rhs)}"
                for ax in normalized.tbox
            ],
            "abox": format_kb(
                KnowledgeBase((), normalized.abox)
            ).splitlines(),
            "fresh": {n: format_concept(c) for n, c in fresh.items()},
            "dropped": [
                f"{format_concept(ax.lhs)} sub {format_concept(ax.rhs)}"
                for ax in result.dropped
            ],
        }
        print(json.dumps(payload, indent=2))
        return 0
    for name, concept in fresh.items():
        print(f"% fresh {name} covers {format_concept(concept)}")
    for ax in result.dropped:
        print(f"% dropped {format_concept(ax.lhs)} sub {format_concept(ax.rhs)}")
    sys.stdout.write(format_kb(normalized))
    return 0


def _cmd_check(args) -> int:
    kb = parse_kb(_read(args.kb)) if args.kb else KnowledgeBase()
    kb, _ = normalize_kb(kb)
    dd = parse_adl(_read(args.adl) if args.adl else "", kb)
    report = check_well_defined(dd)
    if args.json:
        print(json.dumps({"ok": report.ok, "problems": list(report.problems)},
                         indent=2))
    else:
        if report.ok:
            print("ok")
        for problem in report.problems:
            print(problem)
    return 0 if report.ok else VALIDATION_EXIT


def _cmd_encode(args) -> int:
    _, theory = _load(args)
    groups: dict[str, list] = {}
    for law in theory.ground_laws:
        groups.setdefault(law.provenance, []).append(law)
    order = [p for p in _PROVENANCE_ORDER if p in groups]
    order += [p for p in sorted(groups) if p not in _PROVENANCE_ORDER]
    if args.json:
        payload = {
            "mode": theory.mode,
            "universe": list(theory.universe),
            "actions": [repr(a) for a in theory.actions],
            "atoms": [repr(a) for a in theory.simple_atoms],
            "counts": {p: len(groups[p]) for p in order},
            "laws": [
                {"provenance": law.provenance, "law": format_rule(law)}
                for law in theory.ground_laws
            ],
        }
        print(json.dumps(payload, indent=2))
        return 0
    for provenance in order:
        print(f"% {provenance} ({len(groups[provenance])})")
        for law in groups[provenance]:
            print(format_rule(law))
    return 0


def _cmd_solve(args) -> int:
    _, theory = _load(args)
    found = 0
    if args.json:
        listed = []
        for trace in extensions(theory, args.horizon, upto=args.upto,
                                weak=args.weak_horizon):
            listed.append(_trace_json(trace))
            found += 1
            if args.limit and found >= args.limit:
                break
        print(json.dumps({"horizon": args.horizon, "count": found,
                          "extensions": listed}, indent=2))
        return 0
    for trace in extensions(theory, args.horizon, upto=args.upto,
                            weak=args.weak_horizon):
        found += 1
        label = f"extension {found}"
        if trace.actions:
            label += ": " + ", ".join(repr(a) for a in trace.actions)
        print(label)
        _print_trace(trace)
        if args.limit and found >= args.limit:
            break
    print(f"{found} extension(s)")
    return 0


def _cmd_query_exec(args) -> int:
    dd, theory = _load(args)
    seq = parse_action_sequence(args.actions, dd)
    result = executability(
        theory,
        seq,
        tbox=dd.kb.tbox,
        max_witnesses=args.max_witnesses,
        weak=args.weak_horizon,
    )
    return _emit_query(result, args.json)


def _cmd_query_project(args) -> int:
    dd, theory = _load(args)
    seq = parse_action_sequence(args.actions, dd)
    goal = parse_goal_literal(args.goal, dd)
    result = projection(
        theory,
        seq,
        goal,
        tbox=dd.kb.tbox,
        max_witnesses=args.max_witnesses,
        weak=args.weak_horizon,
        along=args.along,
    )
    return _emit_query(result, args.json)


# ---------------------------------------------------------------------------
# Argument wiring


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="eltas",
        description="Bounded temporal answer set reasoning over action "
        "domains with a lightweight description logic ontology.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="normalize a knowledge base")
    p.add_argument("--kb", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument(
        "--verify",
        nargs="?",
        const=3,
        type=int,
        default=None,
        metavar="N",
        help="also check conservativity over domains up to size N (default 3)",
    )
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("check", help="validate a domain description")
    _add_input_args(p, need_adl=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("encode", help="print the translated ground theory")
    _add_input_args(p, need_adl=False)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("solve", help="enumerate extensions up to a horizon")
    _add_input_args(p, need_adl=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--upto", action="store_true",
                   help="also list extensions shorter than the horizon")
    p.add_argument("--limit", type=int, default=0,
                   help="stop after this many extensions (0 means all)")
    p.add_argument("--weak-horizon", action="store_true",
                   help="constraints pending at the horizon count as satisfied")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    q = sub.add_parser("query", help="ask about an action sequence")
    qsub = q.add_subparsers(dest="query_kind", required=True)

    p = qsub.add_parser("exec", help="is the action sequence executable")
    _add_input_args(p, need_adl=True)
    p.add_argument("--actions", required=True,
                   help="comma separated ground actions, e.g. 'load,shoot'")
    p.add_argument("--max-witnesses", type=int, default=10)
    p.add_argument("--weak-horizon", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_query_exec)

    p = qsub.add_parser("project",
                        help="does a literal hold after the sequence")
    _add_input_args(p, need_adl=True)
    p.add_argument("--actions", required=True)
    p.add_argument("--goal", required=True,
                   help="ground literal, e.g. '-alive' or 'teacher(john)'")
    p.add_argument("--along", action="store_true",
                   help="require the goal in every reached state, not only "
                   "the final one")
    p.add_argument("--max-witnesses", type=int, default=10)
    p.add_argument("--weak-horizon", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_query_project)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, EncodingError, MalformedRuleError, UnsafeRuleError,
            NormalizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_EXIT
    except EltasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR_EXIT


if __name__ == "__main__":
    sys.exit(main())
