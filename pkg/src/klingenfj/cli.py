"""Command-line front end: coefficients, components, verification.

Three subcommands cover every public computation::

    klingenfj coeff  --k 12 --n 2 --m 1 --r 1 --t 1 --matrix "1,1,1"
    klingenfj fj     --k 12 --s 1 --r4 1 --r1 1 --r2 1
    klingenfj verify all --seed 42

``coeff`` computes one Fourier coefficient of a stratum partial series
(``--t``), of the full series (``--t`` omitted: the strata are summed),
or of the degree-2 closed form (``--closed-form``).  ``fj`` computes
one component of a Fourier-Jacobi coefficient, addressed by the label
``s`` and the block data (R4, R1, R2).  ``verify`` runs named
verification suites (or ``all``) and reports machine-readably.

Matrix input
------------
Inline 2x2 half-integral matrices are comma-separated ``"t1,t2,t4"``
meaning ``T = (t1, t2/2; t2/2, t4)``; a single integer means a 1x1
block.  ``--matrix-file`` reads the JSON schema of the matrices module
(``{"n": ..., "doubled": [[...]]}``).  The off-diagonal block ``--r2``
takes the entries of ``2*R2`` row-major, matching the ``t2``
convention.

Output contract
---------------
Payloads go to stdout; progress and warnings go to stderr.  For
identical (config, seed, precision) the stdout bytes are identical
across runs -- timings never enter the payload.  Every payload embeds
the resolved configuration and the artifact version, under a versioned
schema (the ``schema`` field).  ``--format csv`` flattens the same
payload into sorted ``field,value`` rows.  The tool never touches the
network.

Exit codes
----------
0 success; 1 verification suites ran but failed; 2 usage or invalid
configuration; 3 precision budget not attained (the payload is still
emitted, with its honest achieved radius); 4 internal assertion
failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, asdict
from fractions import Fraction

from . import __version__
from .lvalues import working_prec
from .matrices import HalfIntSym
from .partialfourier import (
    DEFAULT_BOUND0,
    DEFAULT_BUDGET,
    DEFAULT_MAX_BOUND,
    BudgetNotMetError,
    FJComponentKey,
    fc_E,
    fc_H,
    fc_H1_deg2,
    fj_component_coeff,
)
from .qseries import eigenform
from .verify import SUITES, run_suites

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation, echoed verbatim into every payload.

    Fields that do not apply to a subcommand are ``None``; ``matrix``
    and the block fields hold doubled integer entries (the exact data
    the computation consumes, independent of the inline text format).
    """

    command: str
    k: int | None = None
    n: int | None = None
    m: int | None = None
    r: int | None = None
    t: int | None = None
    s: int | None = None
    closed_form: bool = False
    matrix: tuple | None = None
    r1_block: tuple | None = None
    r2_doubled: tuple | None = None
    r4: tuple | None = None
    budget: str | None = None
    bound0: int | None = None
    max_bound: int | None = None
    trunc: int | None = None
    precision: int = 0
    threads: int = 1
    seed: int | None = None
    suites: tuple | None = None
    fmt: str = "json"

    def to_json(self) -> dict:
        data = asdict(self)
        for key, value in data.items():
            if isinstance(value, tuple):
                data[key] = [list(v) if isinstance(v, tuple) else v for v in value]
        return data


def _parse_inline_block(text: str, option: str) -> HalfIntSym:
    """Inline matrix spec: one integer (1x1) or ``"t1,t2,t4"`` (2x2)."""
    try:
        parts = [int(p.strip()) for p in text.split(",")]
    except ValueError:
        raise ValueError("%s: entries must be integers, got %r" % (option, text))
    if len(parts) == 1:
        return HalfIntSym(((2 * parts[0],),))
    if len(parts) == 3:
        return HalfIntSym.from_triple(*parts)
    raise ValueError(
        '%s: expected one integer or "t1,t2,t4" (three integers), got %r'
        % (option, text)
    )


def _load_matrix_file(path: str) -> HalfIntSym:
    with open(path, encoding="utf-8") as handle:
        return HalfIntSym.from_json(json.load(handle))


def _parse_off_diagonal(text: str, r1: int, r2: int) -> tuple:
    """Row-major entries of ``2*R2`` for the off-diagonal block."""
    try:
        parts = [int(p.strip()) for p in text.split(",")]
    except ValueError:
        raise ValueError("--r2: entries must be integers, got %r" % (text,))
    if len(parts) != r1 * r2:
        raise ValueError(
            "--r2: expected %d entries (r1*r2 = %dx%d), got %d"
            % (r1 * r2, r1, r2, len(parts))
        )
    return tuple(
        tuple(parts[i * r2 : (i + 1) * r2]) for i in range(r1)
    )


def _parse_budget(text: str) -> Fraction:
    try:
        budget = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError("--budget: not a rational number: %r" % (text,))
    if budget <= 0:
        raise ValueError("--budget: must be positive, got %s" % (budget,))
    return budget


# ---------------------------------------------------------------------------
# emitters
# ---------------------------------------------------------------------------


def _flatten(value, prefix: str, rows: list) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(value[key], "%s.%s" % (prefix, key) if prefix else key, rows)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _flatten(item, "%s[%d]" % (prefix, i), rows)
    else:
        rows.append((prefix, "" if value is None else value))


def emit_payload(payload: dict, fmt: str, out=None) -> None:
    """Write the payload to ``out`` (default stdout), deterministically."""
    out = sys.stdout if out is None else out
    if fmt == "csv":
        rows: list = []
        _flatten(payload, "", rows)
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("field", "value"))
        writer.writerows(rows)
    else:
        out.write(json.dumps(payload, sort_keys=True, indent=2))
        out.write("\n")


def _payload(config: RunConfig, result) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "config": config.to_json(),
        **result.to_json(),
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _resolve_eigenform(config: RunConfig):
    if config.m == 0:
        return None
    return eigenform(config.k, config.trunc)


def cmd_coeff(config: RunConfig) -> tuple[int, dict]:
    """One Fourier coefficient; exit 3 still carries the best payload."""
    f = _resolve_eigenform(config)
    matrix = HalfIntSym(config.matrix)
    budget = Fraction(config.budget)
    knobs = {"bound0": config.bound0, "max_bound": config.max_bound}
    try:
        if config.closed_form:
            result = fc_H1_deg2(f, config.k, matrix, budget, **knobs)
        elif config.t is None:
            result = fc_E(
                f, config.k, config.n, config.m, config.r, matrix, budget, **knobs
            )
        else:
            result = fc_H(
                f,
                config.k,
                config.n,
                config.m,
                config.r,
                config.t,
                matrix,
                budget,
                **knobs,
            )
    except BudgetNotMetError as exc:
        print("warning: %s" % (exc,), file=sys.stderr)
        return EXIT_BUDGET, _payload(config, exc.result)
    return EXIT_OK, _payload(config, result)


def cmd_fj(config: RunConfig) -> tuple[int, dict]:
    """One component coefficient of a Fourier-Jacobi coefficient."""
    f = _resolve_eigenform(config)
    key = FJComponentKey(
        r1=len(config.r1_block),
        r2=len(config.r4),
        s=config.s,
        r4=HalfIntSym(config.r4),
        r1_block=HalfIntSym(config.r1_block),
        r2_doubled=config.r2_doubled,
    )
    budget = Fraction(config.budget)
    try:
        result = fj_component_coeff(
            f,
            config.k,
            key,
            budget,
            m=config.m,
            bound0=config.bound0,
            max_bound=config.max_bound,
        )
    except BudgetNotMetError as exc:
        print("warning: %s" % (exc,), file=sys.stderr)
        return EXIT_BUDGET, _payload(config, exc.result)
    return EXIT_OK, _payload(config, result)


def cmd_verify(config: RunConfig) -> tuple[int, dict]:
    """Run verification suites; progress to stderr, report to stdout."""

    def echo(line: str) -> None:
        print(line, file=sys.stderr, flush=True)

    report = run_suites(config.suites, seed=config.seed, echo=echo)
    payload = {
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "config": config.to_json(),
        **report,
    }
    return (EXIT_OK if report["passed"] else EXIT_SUITE_FAILED), payload


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--budget",
        default=str(DEFAULT_BUDGET),
        help="relative error budget, a rational like 1/100000000 or 1e-8 "
        "(default %(default)s)",
    )
    parser.add_argument(
        "--bound0",
        type=int,
        default=DEFAULT_BOUND0,
        help="initial truncation bound (default %(default)s)",
    )
    parser.add_argument(
        "--max-bound",
        type=int,
        default=DEFAULT_MAX_BOUND,
        help="truncation bound ceiling; exceeding it exits 3 "
        "(default %(default)s)",
    )
    parser.add_argument(
        "--trunc",
        type=int,
        default=None,
        help="eigenform q-expansion truncation (default: --max-bound)",
    )
    _add_output(parser)


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--precision",
        type=int,
        default=None,
        help="working precision in bits (default: KLINGENFJ_PRECISION "
        "environment variable, else 128)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="upper bound on library worker parallelism (default 1; the "
        "certified paths in this release evaluate sequentially)",
    )
    parser.add_argument(
        "--format",
        dest="fmt",
        choices=("json", "csv"),
        default="json",
        help="payload format on stdout (default %(default)s)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klingenfj",
        description="Fourier coefficients of Klingen-type Eisenstein series: "
        "stratum partial series, Fourier-Jacobi components, verification.",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_coeff = sub.add_parser(
        "coeff",
        help="one Fourier coefficient of a stratum partial series "
        "(--t), the full series (no --t), or the degree-2 closed form",
    )
    p_coeff.add_argument("--k", type=int, required=True, help="weight (even)")
    p_coeff.add_argument("--n", type=int, default=2, help="degree (default 2)")
    p_coeff.add_argument("--m", type=int, default=1, help="index degree, 0 or 1")
    p_coeff.add_argument("--r", type=int, default=1, help="block parameter r")
    p_coeff.add_argument(
        "--t", type=int, default=None, help="stratum label; omit to sum all strata"
    )
    p_coeff.add_argument(
        "--closed-form",
        action="store_true",
        help="use the degree-2 closed form (requires n=2, m=1, r=1, t=1)",
    )
    p_coeff.add_argument(
        "--matrix",
        default=None,
        help='target matrix, "t1,t2,t4" for T = (t1, t2/2; t2/2, t4)',
    )
    p_coeff.add_argument(
        "--matrix-file",
        default=None,
        help='JSON file {"n": ..., "doubled": [[...]]} with the target matrix',
    )
    _add_common(p_coeff)

    p_fj = sub.add_parser(
        "fj", help="one component of a Fourier-Jacobi coefficient"
    )
    p_fj.add_argument("--k", type=int, required=True, help="weight (even)")
    p_fj.add_argument("--s", type=int, required=True, help="component label")
    p_fj.add_argument(
        "--r4", required=True, help="index block R4 (inline matrix spec)"
    )
    p_fj.add_argument(
        "--r1", required=True, help="block R1 (inline matrix spec)"
    )
    p_fj.add_argument(
        "--r2",
        required=True,
        help="off-diagonal block: entries of 2*R2, row-major",
    )
    p_fj.add_argument("--m", type=int, default=1, help="index degree, 0 or 1")
    _add_common(p_fj)

    p_verify = sub.add_parser(
        "verify", help="run verification suites and report machine-readably"
    )
    p_verify.add_argument(
        "suites",
        nargs="+",
        metavar="SUITE",
        help='suite names, or "all"; known: %s' % ", ".join(sorted(SUITES)),
    )
    p_verify.add_argument(
        "--seed", type=int, default=0, help="seed for sampled suites (default 0)"
    )
    _add_output(p_verify)
    return parser


def _resolve_config(parser: argparse.ArgumentParser, args) -> RunConfig:
    if args.precision is not None:
        os.environ["KLINGENFJ_PRECISION"] = str(args.precision)
    precision = working_prec(None)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    common = {"precision": precision, "threads": args.threads, "fmt": args.fmt}

    if args.command == "verify":
        unknown = [s for s in args.suites if s != "all" and s not in SUITES]
        if unknown:
            parser.error(
                "unknown suite(s) %s; known: %s, all"
                % (", ".join(unknown), ", ".join(sorted(SUITES)))
            )
        return RunConfig(
            command="verify",
            suites=tuple(args.suites),
            seed=args.seed,
            **common,
        )

    budget = str(_parse_budget(args.budget))
    if args.bound0 < 1 or args.max_bound < args.bound0:
        parser.error("need 1 <= --bound0 <= --max-bound")
    trunc = args.max_bound if args.trunc is None else args.trunc
    if trunc < 1:
        parser.error("--trunc must be positive")
    common.update(
        k=args.k,
        m=args.m,
        budget=budget,
        bound0=args.bound0,
        max_bound=args.max_bound,
        trunc=None if args.m == 0 else trunc,
    )

    if args.command == "coeff":
        if (args.matrix is None) == (args.matrix_file is None):
            parser.error("exactly one of --matrix / --matrix-file is required")
        matrix = (
            _parse_inline_block(args.matrix, "--matrix")
            if args.matrix is not None
            else _load_matrix_file(args.matrix_file)
        )
        if matrix.n != args.n:
            parser.error(
                "matrix is %dx%d but --n is %d" % (matrix.n, matrix.n, args.n)
            )
        if args.closed_form and not (
            args.n == 2 and args.m == 1 and args.r == 1 and args.t in (None, 1)
        ):
            parser.error("--closed-form requires n=2, m=1, r=1, t=1")
        return RunConfig(
            command="coeff",
            n=args.n,
            r=args.r,
            t=1 if args.closed_form else args.t,
            closed_form=args.closed_form,
            matrix=matrix.doubled,
            **common,
        )

    r1_block = _parse_inline_block(args.r1, "--r1")
    r4 = _parse_inline_block(args.r4, "--r4")
    r2_doubled = _parse_off_diagonal(args.r2, r1_block.n, r4.n)
    return RunConfig(
        command="fj",
        s=args.s,
        r1_block=r1_block.doubled,
        r2_doubled=r2_doubled,
        r4=r4.doubled,
        **common,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _resolve_config(parser, args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return EXIT_USAGE

    dispatch = {"coeff": cmd_coeff, "fj": cmd_fj, "verify": cmd_verify}
    try:
        code, payload = dispatch[config.command](config)
    except ValueError as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 -- exit-code contract
        print("internal assertion failure: %s" % (exc,), file=sys.stderr)
        return EXIT_INTERNAL
    emit_payload(payload, config.fmt)
    return code


if __name__ == "__main__":
    sys.exit(main())
