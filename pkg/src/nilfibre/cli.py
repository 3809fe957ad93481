"""Command-line front end: construction, verification, and census."""

from __future__ import annotations

import argparse
import json
import sys

from .census import (
    AnnihilatedPairError,
    EnumerationGuardError,
    census_report,
    explore,
    replay,
    run_property_suite,
    TraceStep,
)
from .invariant import bs_invariant
from .reverse import (
    EnablingError,
    ImplementationChoice,
    PairNotImplementableError,
    StructureError,
    enumerate_choices,
    init,
)
from .shape import (
    Composition,
    NeighbouringPair,
    m_basis,
    neighbouring_pairs,
    standard_tableau,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_USAGE = 2


class UsageError(RuntimeError):
    pass


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _composition(text: str) -> Composition:
    try:
        return Composition.parse(text)
    except ValueError as err:
        raise UsageError(str(err)) from err


def _pair_token(text: str, pairs: tuple[NeighbouringPair, ...]) -> NeighbouringPair:
    token = text.strip()
    try:
        left_s, right_s = token.split("-")
        left = int(left_s.lstrip("Cc"))
        right = int(right_s.lstrip("Cc"))
    except ValueError:
        raise UsageError(f"cannot parse pair {text!r}; expected like C1-C4")
    for pair in pairs:
        if (pair.left, pair.right) == (left, right):
            return pair
    raise UsageError(f"({left},{right}) is not a neighbouring pair")


def _column_token(text: str) -> int:
    try:
        return int(text.strip().lstrip("Cc"))
    except ValueError:
        raise UsageError(f"cannot parse column {text!r}")


def _parse_step(token: str, pairs: tuple[NeighbouringPair, ...]):
    pair = None
    source = None
    stop = None
    for field in token.split(";"):
        field = field.strip()
        if not field:
            continue
        if "=" not in field:
            raise UsageError(f"malformed step field {field!r}")
        key, value = field.split("=", 1)
        key = key.strip().lower()
        if key == "pair":
            pair = _pair_token(value, pairs)
        elif key == "source":
            source = _column_token(value)
        elif key == "stop":
            stop = _column_token(value)
        else:
            raise UsageError(f"unknown step field {key!r}")
    if pair is None:
        raise UsageError(f"step {token!r} is missing pair=Ca-Cb")
    return pair, source, stop


def _pick_choice(rt, pair, source, stop) -> ImplementationChoice:
    choices = enumerate_choices(rt, pair)
    matching = [
        c
        for c in choices
        if (source is None or c.source_col == source)
        and (stop is None or c.shift_stop == stop)
    ]
    if not matching:
        raise UsageError(f"no legal choice for {pair} with source={source} stop={stop}")
    if len(matching) > 1:
        rendered = ", ".join(f"source=C{c.source_col};stop=C{c.shift_stop}" for c in matching)
        raise UsageError(f"ambiguous choice for {pair}: {rendered}")
    return matching[0]


def _cmd_tableau(args) -> int:
    comp = _composition(args.composition)
    rt = init(standard_tableau(comp))
    if args.json:
        print(_dump_json(rt.to_json_obj()))
    else:
        print(rt.render_ascii())
    return EXIT_OK


def _cmd_pairs(args) -> int:
    comp = _composition(args.composition)
    pairs = neighbouring_pairs(comp)
    if args.json:
        print(_dump_json([
            {"left": p.left, "right": p.right, "height": p.height} for p in pairs
        ]))
    else:
        for p in pairs:
            print(f"C{p.left}-C{p.right} height {p.height}")
        print(f"g = {len(pairs)}")
    return EXIT_OK


def _cmd_invariant(args) -> int:
    comp = _composition(args.composition)
    t = standard_tableau(comp)
    pairs = neighbouring_pairs(comp)
    basis = m_basis(comp)
    selected = [_pair_token(args.pair, pairs)] if args.pair else list(pairs)
    out = []
    for pair in selected:
        inv = bs_invariant(t, pair, basis)
        out.append((pair, inv))
    if args.json:
        print(_dump_json([
            {
                "pair": [p.left, p.right],
                "height": p.height,
                "degree": inv.degree,
                "c_power": inv.c_power,
                "poly": inv.poly.to_json_obj(),
            }
            for p, inv in out
        ]))
    else:
        for p, inv in out:
            print(f"C{p.left}-C{p.right} (degree {inv.degree}): {inv.poly.to_text()}")
    return EXIT_OK


def _cmd_implement(args) -> int:
    comp = _composition(args.composition)
    t = standard_tableau(comp)
    pairs = neighbouring_pairs(comp)
    rt = init(t)
    steps = []
    stages = [rt]
    for token in args.steps:
        pair, source, stop = _parse_step(token, pairs)
        if any(s.pair == pair for s in steps):
            raise UsageError(f"pair {pair} implemented twice")
        choice = _pick_choice(rt, pair, source, stop)
        steps.append(TraceStep(pair, choice))
        trace = replay(t, tuple(steps))
        rt = trace.final
        stages.append(rt)
    if args.json:
        print(_dump_json({
            "stages": [s.to_json_obj() for s in stages],
            "steps": [
                {
                    "pair": [s.pair.left, s.pair.right],
                    "source": s.choice.source_col,
                    "stop": s.choice.shift_stop,
                }
                for s in steps
            ],
        }))
    else:
        print("stage 0:")
        print(stages[0].render_ascii())
        for idx, (step, stage) in enumerate(zip(steps, stages[1:]), start=1):
            print(
                f"stage {idx}: implement C{step.pair.left}-C{step.pair.right}"
                f" source=C{step.choice.source_col} stop=C{step.choice.shift_stop}"
            )
            print(stage.render_ascii())
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    comp = _composition(args.composition)
    ex = explore(comp, args.limit)
    finals = ex.finals
    if args.json:
        print(_dump_json([
            {
                "red": sorted(node.rt.red_multiset().elements()),
                "tableau": node.rt.to_json_obj(),
            }
            for node in finals
        ]))
    else:
        print(f"{len(finals)} complete reverse tableaux ({ex.trace_total} traces)")
        for node in finals:
            reds = sorted(node.rt.red_multiset().elements())
            print(f"red {reds}:")
            print(node.rt.render_ascii())
    return EXIT_OK


def _cmd_verify(args) -> int:
    comp = _composition(args.composition)
    report = run_property_suite(comp, limit=args.limit, trials=args.trials, seed=args.seed)
    for check in report.checks:
        status = "ok  " if check.ok else "FAIL"
        suffix = f"  {check.details}" if (check.details and not check.ok) else ""
        print(f"{status} {check.name}{suffix}")
    return EXIT_OK if report.ok else EXIT_VERIFICATION_FAILURE


def _cmd_census(args) -> int:
    comp = _composition(args.composition)
    report = census_report(comp, limit=args.limit, trials=args.trials, seed=args.seed)
    if args.json:
        print(_dump_json(report))
    else:
        print(f"composition {report['composition']}: g={report['g']}, dim m={report['dim_m']}")
        for component in report["components"]:
            print(
                f"  red {component['red']}  codim {component['codim']}  "
                f"excluded {component['excluded']}"
            )
        print(f"global red: {report['global_red']}")
        for finding in report["findings"]:
            print(f"finding: {finding}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilfibre",
        description="Construct invariants, run the reverse-tableau algorithm, "
        "and census the components of the nilfibre.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, limit=False, oracle=False):
        p.add_argument("composition", help="comma-separated positive parts, e.g. 1,2,2,1")
        p.add_argument("--json", action="store_true", help="emit JSON")
        if limit:
            p.add_argument("--limit", type=int, default=None, help="enumeration guard")
        if oracle:
            p.add_argument("--seed", type=int, default=1, help="rank oracle seed")
            p.add_argument("--trials", type=int, default=5, help="rank oracle trials")

    common(sub.add_parser("tableau", help="print the standard tableau"))
    common(sub.add_parser("pairs", help="list the neighbouring pairs"))
    p = sub.add_parser("invariant", help="print invariants")
    common(p)
    p.add_argument("--pair", help="restrict to one pair, e.g. C1-C4")
    p = sub.add_parser("implement", help="run an explicit implementation script")
    common(p)
    p.add_argument(
        "steps",
        nargs="*",
        help="step tokens like 'pair=C2-C3;source=C3;stop=C2' "
        "(omitted fields mean: sole legal value)",
    )
    common(sub.add_parser("enumerate", help="list all complete reverse tableaux"), limit=True)
    common(
        sub.add_parser("verify", help="run the full property suite"),
        limit=True,
        oracle=True,
    )
    common(
        sub.add_parser("census", help="emit the component census report"),
        limit=True,
        oracle=True,
    )
    return parser


_HANDLERS = {
    "tableau": _cmd_tableau,
    "pairs": _cmd_pairs,
    "invariant": _cmd_invariant,
    "implement": _cmd_implement,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
    "census": _cmd_census,
}


def run(argv: list[str]) -> int:
    """Dispatch a command line; returns the exit status instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        return _HANDLERS[args.verb](args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationGuardError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (EnablingError, StructureError, PairNotImplementableError, AnnihilatedPairError) as err:
        print(f"verification failure: {err}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILURE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
