"""``seaskit`` command line: evaluate, compare, effect-seas, decode, verify."""

import argparse
import sys
from pathlib import Path

from seaskit import alias_core, classic, report, seas
from seaskit.design_io import (
    DesignVector,
    decode_design_vector,
    design_from_text,
    format_matrix_text,
)
from seaskit.errors import (
    EncodingOverflowError,
    InconsistencyError,
    ParseError,
    ResourceError,
    SeasError,
    UnavailableRangeError,
    ValidationError,
)

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_RESOURCE = 5
EXIT_INCONSISTENT = 6

DEFAULT_UNCAPPED_FACTORS = 24
DEFAULT_CAPPED_KMAX = 5
BUILTIN_PREFIX = "builtin:"


def default_kmax(m, requested):
    """Explicit ``--kmax`` wins; otherwise unlimited for m <= 24, else 5."""
    if requested is not None:
        if not 2 <= requested <= m:
            raise ValidationError(f"--kmax must lie in [2, {m}], got {requested}")
        return requested
    return None if m <= DEFAULT_UNCAPPED_FACTORS else DEFAULT_CAPPED_KMAX


def read_design(source, n_runs=None):
    """Return ``(name, DesignMatrix)`` from a path, ``-`` (stdin) or ``builtin:NAME``."""
    if source.startswith(BUILTIN_PREFIX):
        name = source[len(BUILTIN_PREFIX):]
        v = report.builtin_design(name)
        return report.builtin_key(name), decode_design_vector(v)
    if source == "-":
        return "stdin", design_from_text(sys.stdin.read(), n_runs=n_runs)
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return path.stem, design_from_text(text, n_runs=n_runs)
    except ParseError as exc:
        raise ParseError(f"{source}: {exc}") from exc


def _evaluate(args, source, effects=False):
    name, x = read_design(source, args.n)
    k_max = default_kmax(x.n_factors, args.kmax)
    return report.evaluate(
        x, name=name, k_max=k_max, engine=args.engine, effects=effects,
        strict_text=getattr(args, "strict_text", False),
    ), x


def cmd_evaluate(args, out):
    r, x = _evaluate(args, args.design, effects=args.effects)
    if args.dump_spectrum:
        spec = alias_core.compute_spectrum(x, k_max=r.k_max, engine=args.engine)
        Path(args.dump_spectrum).write_text(spec.to_csv())
    out.write(report.render_design_report(r, args.format, width=args.width))


def cmd_compare(args, out):
    reports = [_evaluate(args, src)[0] for src in args.designs]
    patterns = seas.PATTERN_NAMES if args.pattern == "all" else (args.pattern,)
    out.write(report.render_comparison(reports, patterns, args.truncate, args.format))


def cmd_effect_seas(args, out):
    r, _ = _evaluate(args, args.design, effects=True)
    if args.format == "text":
        out.write(report.render_effects_text(r, args.pattern, width=args.width))
    else:
        out.write(report.render_design_report(r, args.format))


def cmd_decode(args, out):
    if len(args.codes) == 1 and not args.codes[0].isdigit():
        _, x = read_design(args.codes[0], args.n)
    else:
        if args.n is None:
            raise ValidationError("decode needs --n when codes are given inline")
        bad = [c for c in args.codes if not c.isdigit()]
        if bad:
            raise ParseError(f"not a nonnegative integer: {bad[0]!r}")
        x = decode_design_vector(DesignVector(args.n, tuple(int(c) for c in args.codes)))
    out.write(format_matrix_text(x, "01" if args.binary else "pm"))


def cmd_verify(args, out):
    name, x = read_design(args.design, args.n)
    k_max = default_kmax(x.n_factors, args.kmax)
    spectrum = alias_core.compute_spectrum(x, k_max=k_max, engine=args.engine)
    rep = classic.verify_theorems(alias_core.aggregate(spectrum))
    for c in rep.checks:
        status = "ok" if c.holds else "MISMATCH"
        out.write(f"{c.name:<10} k={c.k:<3} {status}  lhs={c.lhs}  rhs={c.rhs}\n")
    out.write(rep.summary_line() + "\n")
    if not rep.all_hold:
        raise InconsistencyError(f"{name}: pattern identities failed")


def build_parser():
    p = argparse.ArgumentParser(
        prog="seaskit",
        description="Aliasing-structure summaries (M/A/P patterns, GWLP, E(s^2), GR) "
        "for two-level designs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        sp.add_argument("--n", type=int, help="run count for design-vector codes")
        sp.add_argument("--kmax", type=int, help="largest subset size to evaluate")
        sp.add_argument("--engine", default="auto", choices=alias_core.ENGINES)
        if fmt:
            sp.add_argument("--format", default="text", choices=("text", "csv", "json"))
            sp.add_argument("--width", type=int, default=report.DEFAULT_WIDTH,
                            help="wrap width for text output")

    sp = sub.add_parser("evaluate", help="full summary of one design")
    sp.add_argument("design", help="design file, '-' for stdin, or builtin:D_SIB etc.")
    common(sp)
    sp.add_argument("--effects", action="store_true", help="include per-column patterns")
    sp.add_argument("--strict-text", action="store_true",
                    help="per-column P uses C(m,k) and A averages plain indices")
    sp.add_argument("--dump-spectrum", metavar="CSV", help="write |J| of every subset")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("compare", help="side-by-side summary and pattern verdicts")
    sp.add_argument("designs", nargs="+")
    common(sp)
    sp.add_argument("--pattern", default="all", choices=("M", "A", "P", "all"))
    sp.add_argument("--truncate", type=int, default=4, help="last k shown in the table")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("effect-seas", help="per-column patterns and column rankings")
    sp.add_argument("design")
    common(sp)
    sp.add_argument("--pattern", default="all", choices=("M", "A", "P", "all"))
    sp.add_argument("--strict-text", action="store_true")
    sp.set_defaults(func=cmd_effect_seas)

    sp = sub.add_parser("decode", help="expand design-vector codes into a matrix")
    sp.add_argument("codes", nargs="+", help="integer codes, or one design file")
    sp.add_argument("--n", type=int)
    sp.add_argument("--binary", action="store_true", help="print 0/1 instead of -1/+1")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("verify", help="check the pattern identities exactly")
    sp.add_argument("design")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except (ParseError, EncodingOverflowError) as exc:
        print(f"seaskit: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ResourceError, UnavailableRangeError) as exc:
        print(f"seaskit: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InconsistencyError as exc:
        print(f"seaskit: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except SeasError as exc:
        print(f"seaskit: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
