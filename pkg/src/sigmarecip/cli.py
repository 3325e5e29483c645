"""Command-line entry point.

Data goes to standard output (or ``--out``); diagnostics go to standard error.
Exit status: 0 on success, 1 when a verification or comparison fails, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import statistics
import sys
from pathlib import Path

from . import analysis, beatty, f2ps, oeis, seqgen
from .f2ps import BitSeries

FORMATS = ("f2s1", "indices", "csv")
CONJECTURED_DENSITY = 1 / 32


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--precision", type=_positive_int, help="number of coefficients N")
    p.add_argument("--format", choices=FORMATS, help="output format")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    p.add_argument("--cache-dir", type=Path, default=oeis.DEFAULT_CACHE, help="OEIS b-file cache")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--modulus", type=_positive_int, default=8, help="residue modulus for density reports")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="sigmarecip", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    kinds = [k.value for k in seqgen.SequenceKind]
    p = sub.add_parser("gen", parents=[common], help="generate a named series")
    p.add_argument("kind", choices=kinds)

    p = sub.add_parser("invert", parents=[common], help="invert a series read from a file or stdin")
    p.add_argument("input", nargs="?", default="-", help="F2S1 or exponent-list file ('-' for stdin)")

    p = sub.add_parser("verify", parents=[common], help="check identities")
    p.add_argument("identity", help="an identity name, 'beatty', 'recurrences', 'sigma3-family' or 'all'")
    p.add_argument("--k", type=int, action="append", help="odd exponent(s) for T12_GK_EVEN")
    p.add_argument("--beatty-bound", type=_positive_int, default=10**4)
    p.add_argument("--recurrence-bound", type=int, default=2000)

    p = sub.add_parser("density", parents=[common], help="density report as CSV")
    p.add_argument("source", help="a sequence kind or a series file")
    p.add_argument("--checkpoints", help="comma-separated n values (default 2^j - 1)")

    p = sub.add_parser("beatty", parents=[common], help="Beatty sequence table as CSV")
    p.add_argument("--count", type=_positive_int, default=20)
    p.add_argument("--kinds", default=",".join(k.value for k in beatty.BeattyKind))
    p.add_argument("--l-operator", type=_positive_int, metavar="K",
                   help="instead, compare L(L(sigma)) with w and c for k <= K")

    p = sub.add_parser("oeis-check", parents=[common], help="compare generators with OEIS b-files")
    p.add_argument("a_numbers", nargs="*", help="default: every entry in the mapping table")
    p.add_argument("--fetch", action="store_true", help="download missing b-files from oeis.org")

    p = sub.add_parser("recip-experiment", parents=[common], help="densities of random reciprocals")
    p.add_argument("--trials", type=_positive_int, default=20)
    p.add_argument("--rho", type=float, default=0.5)
    return parser


class _Output:
    def __init__(self, path: Path | None):
        self.path = path

    def write_bytes(self, data: bytes) -> None:
        if self.path is None:
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            self.path.write_bytes(data)

    def write_text(self, text: str) -> None:
        self.write_bytes(text.encode("utf-8"))


def _emit_series(f: BitSeries, fmt: str | None, out: _Output) -> None:
    fmt = fmt or "indices"
    if fmt == "f2s1":
        out.write_bytes(f2ps.to_f2s1_bytes(f))
    elif fmt == "indices":
        out.write_text(f2ps.format_indices(f2ps.to_indices(f)))
    else:
        out.write_text("exponent\n" + f2ps.format_indices(f2ps.to_indices(f)))


def _read_series(source: str, precision: int | None) -> BitSeries:
    data = sys.stdin.buffer.read() if source == "-" else Path(source).read_bytes()
    if data[:4] == f2ps.F2S1_MAGIC:
        f = f2ps.from_f2s1_bytes(data)
        return f2ps.truncate(f, precision) if precision and precision < f.precision else f
    exps = f2ps.parse_indices(data.decode("utf-8"))
    if precision is None:
        if not exps:
            raise ValueError("--precision is required for an empty exponent list")
        precision = exps[-1] + 1
    return f2ps.from_indices(exps, precision)


def _cmd_gen(args, out):
    if args.precision is None:
        raise _Usage("gen requires --precision")
    _emit_series(seqgen.generate(args.kind, args.precision), args.format, out)
    return 0


def _cmd_invert(args, out):
    f = _read_series(args.input, args.precision)
    _emit_series(f2ps.inverse(f), args.format, out)
    return 0


_EXTRA_CHECKS = ("beatty", "recurrences", "sigma3-family")


def _cmd_verify(args, out):
    precision = args.precision or 1 << 16
    target = args.identity
    ident = None
    if target != "all" and target not in _EXTRA_CHECKS:
        try:
            ident = analysis.IdentityId(target)
        except ValueError:
            raise _Usage(f"unknown identity {target!r}") from None
    if (target == "all" or ident is not None) and precision < analysis.MIN_PRECISION:
        raise _Usage(f"identity checks need --precision >= {analysis.MIN_PRECISION}")
    if args.k and any(k % 2 == 0 for k in args.k):
        raise _Usage("--k values must be odd")
    if args.recurrence_bound < 2:
        raise _Usage("--recurrence-bound must be >= 2")
    t12 = tuple(args.k) if args.k else analysis.DEFAULT_T12_EXPONENTS

    outcomes = []
    if target == "all":
        outcomes += analysis.verify_all(precision, t12)
    elif ident is analysis.IdentityId.T12_GK_EVEN:
        book = analysis.SeriesBook(precision)
        outcomes += [analysis.verify(ident, precision, k=k, book=book) for k in t12]
    elif ident is not None:
        outcomes.append(analysis.verify(ident, precision))
    if target in ("all", "beatty"):
        outcomes += beatty.verify_beatty_props(args.beatty_bound)
    if target in ("all", "recurrences"):
        outcomes += seqgen.verify_pentagonal_recurrences(args.recurrence_bound)
    if target == "sigma3-family":
        outcomes.append(analysis.sigma3_characterization_check(min(precision, 10**6 + 1)))
    out.write_text("".join(o.to_line() + "\n" for o in outcomes))
    return 0 if all(o.holds for o in outcomes) else 1


def _cmd_density(args, out):
    try:
        kind = seqgen.SequenceKind.from_name(args.source)
    except ValueError:
        kind = None
    if kind is not None:
        if args.precision is None:
            raise _Usage("density of a named kind requires --precision")
        f = seqgen.generate(kind, args.precision)
    else:
        f = _read_series(args.source, args.precision)
    checkpoints = None
    if args.checkpoints:
        checkpoints = [int(x) for x in args.checkpoints.split(",") if x.strip()]
    report = analysis.density_report(f, args.modulus, checkpoints)
    out.write_text(report.to_csv())
    n, d = report.checkpoints[-1], report.densities[-1]
    print(f"density at n={n}: {d:.9f} (1/32 = {CONJECTURED_DENSITY})", file=sys.stderr)
    return 0


def _cmd_beatty(args, out):
    if args.l_operator:
        finding = beatty.l_operator_finding(args.l_operator)
        rows = ["k,l_l_sigma,w,c"]
        for k, v in enumerate(finding["l_l_sigma"], 1):
            rows.append(f"{k},{v},{beatty.beatty_term(beatty.BeattyKind.W, k)},{beatty.c_function(k)}")
        out.write_text("\n".join(rows) + "\n")
        print(f"L(L(sigma)) matches w: {finding['matches_w']}; matches c: {finding['matches_c']}"
              f" (first mismatch with c at k={finding['first_mismatch_c']})", file=sys.stderr)
        return 0
    kinds = [beatty.BeattyKind.from_name(s.strip()) for s in args.kinds.split(",") if s.strip()]
    rows = ["k,kind,value"]
    for kind in kinds:
        rows.extend(f"{k},{kind.value},{v}" for k, v in enumerate(beatty.beatty_sequence(kind, args.count), 1))
    out.write_text("\n".join(rows) + "\n")
    return 0


def _cmd_oeis(args, out):
    mapping = oeis.load_mapping()
    targets = args.a_numbers or list(mapping)
    rows = ["a_number,matched,first_mismatch_index"]
    ok = True
    for a in targets:
        if a not in mapping:
            raise _Usage(f"{a} is not in the mapping table")
        entry = mapping[a]
        try:
            if entry.get("generator"):
                result = oeis.check(a, args.cache_dir, args.fetch)
                rows.append(result.to_csv_row())
                ok &= result.matched
            else:
                found = oeis.discover(a, args.cache_dir, args.fetch)
                hits = [name for name, r in found.items() if r.matched]
                print(f"{a}: unconfirmed mapping; matching candidates: {hits or 'none'}", file=sys.stderr)
        except oeis.OEISError as exc:
            print(f"{a}: {exc}", file=sys.stderr)
            ok = False
    out.write_text("\n".join(rows) + "\n")
    return 0 if ok else 1


def _cmd_recip(args, out):
    precision = args.precision or 1 << 16
    if not 0 < args.rho < 1:
        raise _Usage("--rho must lie strictly between 0 and 1")
    dens = analysis.random_reciprocal_experiment(args.trials, args.rho, precision, args.seed)
    out.write_text("trial,density\n" + "".join(f"{i},{d!r}\n" for i, d in enumerate(dens, 1)))
    print(f"mean density {statistics.fmean(dens):.6f} over {len(dens)} trials", file=sys.stderr)
    return 0


class _Usage(Exception):
    pass


_COMMANDS = {
    "gen": _cmd_gen,
    "invert": _cmd_invert,
    "verify": _cmd_verify,
    "density": _cmd_density,
    "beatty": _cmd_beatty,
    "oeis-check": _cmd_oeis,
    "recip-experiment": _cmd_recip,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(args.out)
    try:
        return _COMMANDS[args.command](args, out)
    except _Usage as exc:
        parser.error(str(exc))
    except (f2ps.SeriesError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
