"""The ``lexman`` command line.

Every subcommand reads an ideal file (except ``verify``, which draws random
instances from an explicit seed) and prints human output, tab-separated
machine output with ``--machine`` or JSON with ``--json``. Variables are
numbered from 1 on the command line.

Exit codes: 0 when every check passes, 1 for a property violation, 2 for
usage, parse and precondition errors, 3 when a truncation, size bound or step
cap was hit.
"""

import argparse
import json
import logging
import sys
from functools import partial
from typing import List, Optional

from lexman.betti import betti_table, ek_betti
from lexman.exceptions import (
    ClosureError,
    LexmanError,
    StabilizationError,
    TruncationError,
    USAGE_EXIT,
    VIOLATION_EXIT,
    exit_code_for,
)
from lexman.hilbert import (
    default_truncation,
    hf_ideal,
    hf_inclusion_exclusion,
    lexify_hf,
    retry_truncation,
)
from lexman.ideal_file import file_ideal, file_instance, file_plex, file_powers, read_ideal_file
from lexman.models import (
    BettiTableSchema,
    FieldSpec,
    HilbertFunctionSchema,
    IdealFileSchema,
    MonomialIdealSchema,
    TheoremReportSchema,
    TransformStepSchema,
)
from lexman.monomial import MonomialIdeal, is_lex, plex_ideal
from lexman.report import render_betti, render_hf, render_log, render_report
from lexman.settings import load_settings
from lexman.theorem import (
    base_ideal,
    check_compression_prop,
    check_instance,
    check_shifting_prop,
    default_instance_bound,
    lexify_theorem,
    random_instance,
    report_ok,
    verify_theorem,
)
from lexman.transforms import (
    compress,
    is_strongly_stable_plus_p,
    min_gens_from_space,
    shift,
    shift_plus_p,
    stabilize,
    t_step,
)
from lexman.util import render_generators

logger = logging.getLogger(__name__)

PROPERTIES = ("shifting", "compression", "stable", "lex", "plex")


def _emit(text: str):
    if text:
        print(text)


def _emit_json(data):
    print(json.dumps(data, indent=2, sort_keys=True))


def _emit_ideal(ideal: MonomialIdeal, args):
    if args.json:
        _emit_json(MonomialIdealSchema().dump(ideal))
    elif args.machine:
        _emit("\n".join("\t".join(map(str, gen)) for gen in ideal.gens))
    else:
        _emit(str(ideal))


def _pair(args):
    return args.a - 1, args.b - 1


def _bound(args, ideal, powers, settings) -> int:
    if args.D is not None:
        return args.D
    return default_truncation(ideal, powers, settings["truncation_margin"])


def _retry(operation, args, ideal, powers, settings):
    return retry_truncation(
        operation,
        _bound(args, ideal, powers, settings),
        ideal.ring.n,
        max(settings["truncation_cap"], args.D or 0),
    )


def command_hf(args, settings) -> int:
    parsed = read_ideal_file(args.file)
    ideal = file_ideal(parsed)
    hf = hf_ideal(ideal, _bound(args, ideal, parsed.powers, settings))
    if args.cross_check:
        other = hf_inclusion_exclusion(
            ideal, hf.D, settings["max_inclusion_exclusion_generators"]
        )
        if other != hf:
            print(f"hf mismatch: slices {hf.dims}, inclusion-exclusion {other.dims}")
            return VIOLATION_EXIT
    if args.json:
        _emit_json(HilbertFunctionSchema().dump(hf))
    else:
        _emit(render_hf(hf, args.machine))
    return 0


def command_betti(args, settings) -> int:
    ideal = file_ideal(read_ideal_file(args.file))
    tables = [
        betti_table(
            ideal,
            FieldSpec(char),
            settings["max_betti_generators"],
            settings["max_lattice_size"],
        )
        for char in sorted(set(args.char or [0]))
    ]
    if args.ek:
        tables.append(ek_betti(ideal))
    if args.json:
        _emit_json(BettiTableSchema(many=True).dump(tables))
    else:
        _emit(render_betti(tables, args.machine))
    return 0


def command_shift(args, settings) -> int:
    parsed = read_ideal_file(args.file)
    ideal, powers = file_ideal(parsed), file_powers(parsed)
    a, b = _pair(args)
    if args.plus_p:
        operation = partial(shift_plus_p, ideal, a, b, args.t, powers)
        _emit_ideal(_retry(operation, args, ideal, powers, settings), args)
        return 0
    space = shift(ideal, a, b, args.t, _bound(args, ideal, powers, settings))
    try:
        _emit_ideal(min_gens_from_space(space), args)
    except (ClosureError, TruncationError) as exc:
        logger.info(f"Shifted space is not shown as an ideal: {exc}")
        _emit("\n".join(f"{d}\t{render_generators(piece)}" for d, piece in enumerate(space.slices)))
    return 0


def command_compress(args, settings) -> int:
    parsed = read_ideal_file(args.file)
    ideal = file_ideal(parsed)
    operation = partial(compress, ideal, *_pair(args))
    _emit_ideal(_retry(operation, args, ideal, parsed.powers, settings), args)
    return 0


def command_tstep(args, settings) -> int:
    parsed = read_ideal_file(args.file)
    ideal, powers = file_ideal(parsed), file_powers(parsed)
    operation = partial(t_step, ideal, *_pair(args), powers)
    _emit_ideal(_retry(operation, args, ideal, powers, settings), args)
    return 0


def command_stabilize(args, settings) -> int:
    parsed = read_ideal_file(args.file)
    ideal, powers = file_ideal(parsed), file_powers(parsed)
    operation = partial(
        stabilize,
        ideal,
        powers,
        audit=args.audit,
        step_cap=settings["step_cap"],
        audit_characteristics=tuple(settings["audit_characteristics"]),
    )
    stable, log = _retry(operation, args, ideal, powers, settings)
    if args.json:
        _emit_json(
            {
                "ideal": MonomialIdealSchema().dump(stable),
                "log": TransformStepSchema(many=True).dump(log),
            }
        )
    else:
        _emit_ideal(stable, args)
        _emit(render_log(log))
    return 0


def command_lexify(args, settings) -> int:
    parsed = read_ideal_file(args.file)
    ideal, powers = file_ideal(parsed), file_powers(parsed)
    if args.relative:
        inst = file_instance(parsed)
        base = base_ideal(inst)
        lex = _retry(partial(lexify_theorem, inst), args, ideal + base, powers, settings)
        _emit_ideal(base + lex, args)
    else:
        _emit_ideal(_retry(partial(lexify_hf, ideal), args, ideal, powers, settings), args)
    return 0


def _shifting_failures(ideal, sub, bound):
    n = ideal.ring.n
    return [
        f"x{a + 1},x{b + 1} t={t}"
        for a in range(n)
        for b in range(a + 1, n)
        for t in (0, 1, 2)
        if not check_shifting_prop(ideal, sub, a, b, t, bound)
    ]


def _compression_failures(ideal, sub, powers, bound):
    n = ideal.ring.n
    return [
        f"x{a + 1},x{b + 1}"
        for b in range(min(powers.r, n))
        for a in range(b)
        if not check_compression_prop(ideal, sub, a, b, powers, bound)
    ]


def command_check(args, settings) -> int:
    parsed = read_ideal_file(args.file)
    ideal, powers = file_ideal(parsed), file_powers(parsed)
    sub = plex_ideal(file_plex(parsed))
    if args.prop == "shifting":
        failures = _shifting_failures(ideal, sub, _bound(args, ideal + sub, powers, settings))
    elif args.prop == "compression":
        failures = _retry(
            partial(_compression_failures, ideal, sub, powers), args, ideal + sub, powers, settings
        )
    elif args.prop == "stable":
        failures = [] if is_strongly_stable_plus_p(ideal, powers) else [str(ideal)]
    elif args.prop == "lex":
        failures = [] if is_lex(ideal, _bound(args, ideal, None, settings)) else [str(ideal)]
    else:
        failures = [] if check_instance(file_instance(parsed)) else [str(ideal)]
    if args.json:
        _emit_json(
            {
                "prop": args.prop,
                "ok": not failures,
                "failures": failures,
                "file": IdealFileSchema().dump(parsed),
            }
        )
    elif failures:
        _emit(f"{args.prop}: FAILED")
        _emit("\n".join(f"  {failure}" for failure in failures))
    else:
        _emit(f"{args.prop}: ok")
    return VIOLATION_EXIT if failures else 0


def _characteristics(text: Optional[str], settings) -> List[FieldSpec]:
    if text is None:
        return [FieldSpec(char) for char in settings["default_characteristics"]]
    try:
        return [FieldSpec(int(word)) for word in text.split(",") if word.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --chars value {text!r}") from exc


def command_verify(args, settings) -> int:
    fields = _characteristics(args.chars, settings)
    reports = []
    for trial in range(args.trials):
        inst = random_instance(
            args.seed + trial, args.n, args.r or args.n, args.max_e, args.max_deg, args.gens
        )
        operation = partial(verify_theorem, inst, fields=fields, step_cap=settings["step_cap"])
        bound = args.D or default_instance_bound(inst, settings["truncation_margin"])
        reports.append(
            retry_truncation(
                operation, bound, inst.ring.n, max(settings["truncation_cap"], bound)
            )
        )
    if args.json:
        _emit_json(TheoremReportSchema(many=True).dump(reports))
    elif args.machine:
        _emit(
            "\n".join(
                f"{report.instance.seed}\t{int(report_ok(report))}\t"
                f"{int(report.hf_match)}\t{int(all(report.betti_ok.values()))}"
                for report in reports
            )
        )
    else:
        _emit("\n\n".join(render_report(report) for report in reports))
    return 0 if all(report_ok(report) for report in reports) else VIOLATION_EXIT


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subparser per command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="Tab-separated output.")
    common.add_argument("--json", action="store_true", help="JSON output.")
    common.add_argument("--config", default=None, help="JSON settings file.")
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr.")
    common.add_argument("--D", type=int, default=None, help="Truncation degree.")

    parser = argparse.ArgumentParser(
        prog="lexman", description="Shifts, compressions and lex-plus-powers checks."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, with_file=True):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        if with_file:
            sub.add_argument("file", help="Ideal file.")
        sub.set_defaults(handler=handler)
        return sub

    def add_pair(sub):
        sub.add_argument("--a", type=int, required=True, help="Lex-larger variable (1-based).")
        sub.add_argument("--b", type=int, required=True, help="Lex-smaller variable (1-based).")

    hf = add("hf", command_hf, "Hilbert function of the ideal.")
    hf.add_argument("--cross-check", action="store_true", help="Compare with inclusion-exclusion.")

    betti = add("betti", command_betti, "Graded Betti numbers of the ideal.")
    betti.add_argument("--char", type=int, action="append", help="Field characteristic.")
    betti.add_argument("--ek", action="store_true", help="Add the Eliahou-Kervaire table.")

    shift_parser = add("shift", command_shift, "The (a, b, t)-shift of the ideal.")
    add_pair(shift_parser)
    shift_parser.add_argument("--t", type=int, default=0, help="Shift offset.")
    shift_parser.add_argument("--plus-p", action="store_true", help="Add the pure powers back.")

    add_pair(add("compress", command_compress, "The {a, b}-compression of the ideal."))
    add_pair(add("tstep", command_tstep, "The T-step of the ideal."))

    stabilize_parser = add(
        "stabilize", command_stabilize, "Move to a strongly-stable-plus-P ideal."
    )
    stabilize_parser.add_argument("--audit", action="store_true", help="Audit Betti tables.")

    lexify = add("lexify", command_lexify, "Lex ideal with the same Hilbert function.")
    lexify.add_argument("--relative", action="store_true", help="Lexify over P + L~.")

    check = add("check", command_check, "Check a property of the file.")
    check.add_argument("--prop", choices=PROPERTIES, required=True)

    verify = add("verify", command_verify, "Verify the theorem on random instances.", False)
    verify.add_argument("--trials", type=int, required=True)
    verify.add_argument("--seed", type=int, required=True)
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--r", type=int, default=None, help="Number of pure powers (default n).")
    verify.add_argument("--max-e", type=int, default=4)
    verify.add_argument("--max-deg", type=int, default=4)
    verify.add_argument("--gens", type=int, default=3)
    verify.add_argument("--chars", default=None, help="Comma-separated characteristics.")
    return parser


def run_command(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        settings = load_settings(args.config)
        return args.handler(args, settings)
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.ideal is not None:
            print(f"last ideal: {exc.ideal}\n{render_log(exc.log)}", file=sys.stderr)
        return exit_code_for(exc)
    except LexmanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except (OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


def main():
    sys.exit(run_command())
