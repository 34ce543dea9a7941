"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
3 configuration or instance mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import algebra, coalgebra, ideals, suites, words
from .semigroup import HalfLine, InstanceMismatch, Lattice, Numerical, SemigroupError, from_config

ENV_INSTANCE = "QSEMIGROUP_INSTANCE"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONFIG = 0, 1, 2, 3

log = logging.getLogger("qsemigroup")


class CliError(Exception):
    def __init__(self, msg, code):
        super().__init__(msg)
        self.code = code


@dataclass
class CliConfig:
    instance: str | None = None
    seed: int = 0
    window: int | None = None
    suites: list = field(default_factory=list)
    output: str | None = None
    verbose: int = 0


def load_instance(spec: str | None):
    spec = spec or os.environ.get(ENV_INSTANCE)
    if not spec:
        raise CliError(f"no instance given (use --instance or set {ENV_INSTANCE})", EXIT_CONFIG)
    try:
        path = Path(spec)
        text = path.read_text() if not spec.lstrip().startswith("{") and path.exists() else spec
        return from_config(json.loads(text))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, SemigroupError) as e:
        raise CliError(f"bad instance config {spec!r}: {e}", EXIT_CONFIG) from None


def _read_json(arg: str):
    try:
        if arg == "-":
            text = sys.stdin.read()
        elif arg.lstrip().startswith(("{", "[")):
            text = arg
        else:
            text = Path(arg).read_text()
        return json.loads(text)
    except OSError as e:
        raise CliError(f"cannot read {arg!r}: {e}", EXIT_USAGE) from None
    except json.JSONDecodeError as e:
        raise CliError(f"invalid JSON in {arg!r}: {e}", EXIT_USAGE) from None


def _element(sg, arg):
    obj = _read_json(arg)
    try:
        return algebra.element_from_json(sg, obj)
    except InstanceMismatch as e:
        raise CliError(str(e), EXIT_CONFIG) from None
    except (SemigroupError, KeyError, TypeError, ValueError) as e:
        raise CliError(f"schema violation in {arg!r}: {e}", EXIT_USAGE) from None


def _emit(obj, output: str | None):
    text = json.dumps(obj, indent=2) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# -- symbolic commands ------------------------------------------------------


def cmd_ideal(sg, args):
    try:
        w = words.parse_word(sg, args.word)
    except InstanceMismatch as e:
        raise CliError(str(e), EXIT_CONFIG) from None
    except SemigroupError as e:
        raise CliError(str(e), EXIT_USAGE) from None
    return ideals.to_json(sg, words.act(sg, w))


def cmd_normalize(sg, args):
    return algebra.element_to_json(_element(sg, args.elem))


def cmd_mul(sg, args):
    return algebra.element_to_json(_element(sg, args.left) * _element(sg, args.right))


def cmd_adjoint(sg, args):
    return algebra.element_to_json(_element(sg, args.elem).star())


def cmd_delta(sg, args):
    return coalgebra.tensor_to_json(coalgebra.delta(_element(sg, args.elem)))


def cmd_quotient(sg, args):
    return coalgebra.group_element_to_json(coalgebra.quotient_to_group_algebra(_element(sg, args.elem)))


def cmd_commutator(sg, args):
    return algebra.element_to_json(coalgebra.commutator(_element(sg, args.left), _element(sg, args.right)))


# -- verification -----------------------------------------------------------


def applicable_suites(sg) -> list[str]:
    out = ["lemmas", "eq7", "products", "relations", "coalgebra", "wd", "independence", "cros"]
    if (isinstance(sg, Lattice) and sg.rank == 1) or (isinstance(sg, Numerical) and sg.generators == (1,)):
        out += ["quotient", "duality"]
    if isinstance(sg, HalfLine):
        out.append("half_line")
    return out


def _run_one(cfg: dict, name: str, seed: int, window, samples):
    return suites.run(name, from_config(cfg), seed, window, samples).to_json()


def run_suites(sg, names, seed, window, samples, jobs=1) -> list[dict]:
    cfg = sg.config()
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            futs = [pool.submit(_run_one, cfg, n, seed, window, samples) for n in names]
            return [f.result() for f in futs]
    return [_run_one(cfg, n, seed, window, samples) for n in names]


def _exit_code(reports, strict: bool) -> int:
    code = EXIT_OK
    for rep in reports:
        for case in rep["cases"]:
            if case["status"] == "fail":
                code = EXIT_FAIL
            elif case.get("skipped"):
                log.warning("%s/%s: window too small for %d of %d samples",
                            rep["suite"], case["id"], case["skipped"], case["count"])
                if strict:
                    code = EXIT_FAIL
    return code


def _check_suite_names(names):
    bad = [n for n in names if n not in suites.SUITES]
    if bad:
        raise CliError(f"unknown suite(s) {bad}; choose from {', '.join(suites.SUITES)}", EXIT_USAGE)


def cmd_verify(sg, args):
    if not args.suite:
        raise CliError("verify needs at least one --suite", EXIT_USAGE)
    _check_suite_names(args.suite)
    reports = run_suites(sg, args.suite, args.seed, args.window, args.samples, args.jobs)
    out = reports[0] if len(reports) == 1 else {"seed": args.seed, "window": args.window, "reports": reports}
    return out, _exit_code(reports, args.strict)


def cmd_report(sg, args):
    names = args.suite or applicable_suites(sg)
    _check_suite_names(names)
    reports = run_suites(sg, names, args.seed, args.window, args.samples, args.jobs)
    summary = {r["suite"]: ("fail" if r["summary"]["fail"] else "pass") for r in reports}
    out = {"instance": sg.config(), "seed": args.seed, "window": args.window, "reports": reports, "summary": summary}
    return out, _exit_code(reports, args.strict)


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", help=f"instance config: JSON file or inline JSON (default ${ENV_INSTANCE})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--window", type=int, default=None, help="window size N")
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="qsemigroup", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ideal", parents=[common], help="canonical form of wS for a word")
    s.add_argument("word", help='e.g. "3^-1 5" or "(1,0)^-1 (0,1)"')
    s.set_defaults(func=cmd_ideal)

    for name, func, helptext in (
        ("normalize", cmd_normalize, "canonical form of an element"),
        ("adjoint", cmd_adjoint, "x*"),
        ("delta", cmd_delta, "comultiplication of an element"),
        ("quotient", cmd_quotient, "image in the group algebra"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("elem", help="element JSON file, inline JSON or -")
        s.set_defaults(func=func)

    for name, func, helptext in (("mul", cmd_mul, "product x y"), ("commutator", cmd_commutator, "xy - yx")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("left")
        s.add_argument("right")
        s.set_defaults(func=func)

    for name, func, helptext in (
        ("verify", cmd_verify, "run verification suites"),
        ("report", cmd_report, "run every suite that applies to the instance"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--suite", action="append", default=[], help=f"one of {', '.join(suites.SUITES)}; repeatable")
        s.add_argument("--samples", type=int, default=None, help="override the number of random samples")
        s.add_argument("--strict", action="store_true", help="treat window_too_small as failure")
        s.add_argument("--jobs", type=int, default=1, help="run suites in parallel processes")
        s.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "verify" and not args.suite:
            raise CliError("verify needs at least one --suite", EXIT_USAGE)
        sg = load_instance(args.instance)
        res = args.func(sg, args)
        out, code = res if isinstance(res, tuple) else (res, EXIT_OK)
        _emit(out, args.output)
        return code
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
