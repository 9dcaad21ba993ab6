"""Command-line front end.

Subcommands: bounds, construct, verify, search, delete.  Exit codes:
0 success/verified, 1 usage or input-format error, 2 infeasible parameters,
3 verification failure, 4 unreachable construction or exhausted search.
Every construction is verified before anything is written, and identical
invocations produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import sys
from math import gcd

import numpy as np

from . import bounds as bounds_mod
from . import enumerate_partition as enum_mod
from .cyclic import develop, search_starting_rows
from .deletion import delete_columns
from .designs import (FormatError, InfeasibleError, OrthogonalArray, Quadruple,
                      read_oa, read_starting_rows, write_oa, write_oa_stream,
                      write_starting_rows)
from .hadamard_bibd import UnreachableOrderError, basic_oa_from_hadamard
from .verifier import StreamingVerifier, VerificationReport, verify_strength2

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFY = 3
EXIT_UNREACHABLE = 4


class SearchExhaustedError(Exception):
    """The canonical search space held no starting rows."""


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we reserve 2
        raise _UsageError(message)


def _classes_text(classification) -> str:
    order = ["optimal", "basic", "m-optimal"]
    names = [c for c in order if c in classification]
    return " ".join(names) if names else "none"


def _print_report(report: VerificationReport) -> None:
    print(f"OA: {'yes' if report.is_oa else 'no'}")
    if report.is_oa:
        print(f"lambda: {report.lambda_observed}")
    elif report.offending:
        (i, j), (x, y), count = report.offending
        print(f"witness: columns ({i},{j}) symbol pair ({x},{y}) occurs {count} times")
    if report.m_observed is not None:
        print(f"m: {report.m_observed}")
        print("repeated row:", " ".join(str(v) for v in report.repeated))
    if report.zero_count_histogram:
        hist = " ".join(f"{z}:{c}" for z, c in sorted(report.zero_count_histogram.items()))
        print(f"zero-count histogram: {hist}")
    print(f"classes: {_classes_text(report.classification)}")


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    k, n, lam = args.k, args.n, args.lam
    report = bounds_mod.make_bound_report(k, n, lam)
    print(f"k={k} n={n} lambda={lam}")
    print(f"rao bound: m <= {report.rao_bound}")
    print(f"floor bound: {report.floor}")
    if report.best_refined is not None:
        print(f"best refined bound: {report.best_refined} (alpha={report.best_alpha})")
    else:
        print("best refined bound: none applicable")
    denom = k * (n - 1) + 1
    feasible = (lam * n * n) % denom == 0 and (k - 1) % n == 0 and (k - 1) // n >= 1
    if feasible:
        m = lam * n * n // denom
        quad = Quadruple(m=m, lam=lam, k=k, n=n)
        print(f"feasible: yes (m={m})")
        print(f"basic: {'yes' if quad.is_basic else 'no'} (gcd({m},{lam})={gcd(m, lam)})")
    else:
        print("feasible: no")
        if (k - 1) % n != 0:
            print("optimal impossible: k != 1 mod n")
    if args.plot:
        from .figures import save_bounds_figure
        save_bounds_figure(report, args.plot)
        print(f"figure written to {args.plot}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def _verified(a: OrthogonalArray) -> VerificationReport:
    report = verify_strength2(a)
    if not report.is_oa:
        (i, j), (x, y), count = report.offending
        raise AssertionError(
            f"construction failed verification: columns ({i},{j}) pair ({x},{y}) "
            f"counted {count} != {a.lam}")
    return report


def _write_verified(a: OrthogonalArray, path: str,
                    comment: str | None = None) -> VerificationReport:
    report = _verified(a)
    text = write_oa(a)
    if comment:
        text = f"# {comment}\n" + text
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)
    return report


def _stream_verify(k: int, n: int, lam: int, batches, label: str) -> bool:
    sv = StreamingVerifier(k, n, lam, track_rows=False)
    for batch in batches:
        sv.update(batch)
    report = sv.result()
    ok = report.is_oa and sv.rows_seen == lam * n * n
    state = "all pair counts equal lambda" if ok else f"FAILED ({report.offending})"
    print(f"{label}: rows={sv.rows_seen} lambda={lam} {state}")
    return ok


def cmd_construct(args) -> int:
    method = args.method
    if method == "cyclic":
        if not args.start:
            raise _UsageError("--method cyclic requires --start FILE")
        if not args.output:
            raise _UsageError("construct requires -o/--output")
        start = read_starting_rows(args.start)
        a = develop(start)
        report = _write_verified(a, args.output)
        print(f"wrote OA_{a.lam}({a.k},{a.n}) "
              f"[{_classes_text(report.classification)}] to {args.output}")
        return EXIT_OK

    if method == "hadamard":
        if args.t is None:
            raise _UsageError("--method hadamard requires -t")
        if not args.output:
            raise _UsageError("construct requires -o/--output")
        a = basic_oa_from_hadamard(args.t)
        _write_verified(a, args.output)
        print(f"wrote basic OA_{a.lam}({a.k},2) to {args.output}")
        return EXIT_OK

    if args.k is None or args.n is None:
        raise _UsageError(f"--method {method} requires -k and -n")
    k, n = args.k, args.n

    if method == "enumerate":
        lam = enum_mod.enumeration_lambda(k, n)
        if args.stream:
            # pass 1 verifies, pass 2 regenerates and writes, so nothing
            # unverified ever reaches disk and memory stays flat
            ok = _stream_verify(k, n, lam, enum_mod.stream_enumerate(k, n), "enumerate")
            if ok and args.output:
                rows = write_oa_stream(args.output, k, n, lam,
                                       enum_mod.stream_enumerate(k, n))
                print(f"wrote {rows} rows to {args.output}")
            return EXIT_OK if ok else EXIT_VERIFY
        if not args.output:
            raise _UsageError("construct requires -o/--output (or --stream)")
        a = enum_mod.enumerate_oa(k, n)
        _write_verified(a, args.output)
        print(f"wrote optimal OA_{a.lam}({k},{n}) to {args.output}")
        return EXIT_OK

    if method in ("partition", "multipartition"):
        sizes = None
        if args.class_sizes:
            sizes = tuple(int(x) for x in args.class_sizes.split(","))
        if method == "partition":
            spec = None if (k, n) == (3, 2) else enum_mod.default_partition_spec(k, n, (k,))
        else:
            spec = enum_mod.default_partition_spec(k, n, sizes)
        if spec is None:  # the trivial (3, 2) split
            types = [()]
            lam_part = enum_mod.enumeration_lambda(k, n)
        else:
            types = enum_mod.all_types(spec)
            lam_part = enum_mod.partition_lambda(k, n, spec.gamma)
        if args.stream:
            all_ok = True
            for tau in types:
                label = ",".join(str(t) for t in tau) or "0"
                def batches(t=tau):
                    return (enum_mod.stream_enumerate(k, n) if spec is None else
                            enum_mod.stream_partition_class(k, n, t, spec.class_sizes))
                ok = _stream_verify(k, n, lam_part, batches(), f"class {label}")
                all_ok &= ok
                if ok and args.output:
                    path = f"{args.output}.{label.replace(',', '-')}.txt"
                    rows = write_oa_stream(path, k, n, lam_part, batches(),
                                           comment=f"class {label}")
                    print(f"wrote {rows} rows to {path}")
            return EXIT_OK if all_ok else EXIT_VERIFY
        if not args.output:
            raise _UsageError("construct requires -o/--output (or --stream)")
        if method == "partition":
            parts = enum_mod.partition_oa(k, n)
        else:
            parts = enum_mod.multi_partition_oa(k, n, sizes)
        for tau, part in zip(types, parts):
            label = "-".join(str(t) for t in tau) or "0"
            comment = "class " + (",".join(str(t) for t in tau) or "0")
            path = f"{args.output}.{label}.txt"
            _write_verified(part, path, comment=comment)
            print(f"wrote optimal OA_{part.lam}({k},{n}) class {label} to {path}")
        return EXIT_OK

    raise _UsageError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _stream_verify_file(path: str) -> VerificationReport:
    """Batch-read an OA file through the streaming verifier."""
    with open(path, "r", encoding="ascii") as fh:
        header = None
        batch: list[list[int]] = []
        sv = None
        k = n = lam = None
        rows_declared = 0
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line
                parts = line.split()
                if len(parts) != 4 or parts[0] != "OA":
                    raise FormatError(f"malformed header {line!r}")
                try:
                    k, n, lam = (int(p) for p in parts[1:])
                except ValueError:
                    raise FormatError(f"malformed header {line!r}") from None
                if k < 2 or n < 2 or lam < 1:
                    raise FormatError("invalid header parameters")
                rows_declared = lam * n * n
                sv = StreamingVerifier(k, n, lam, track_rows=True)
                continue
            vals = line.split()
            if len(vals) != k:
                raise FormatError(f"row has {len(vals)} symbols, expected {k}")
            try:
                row = [int(v) for v in vals]
            except ValueError:
                raise FormatError("non-integer symbol") from None
            if any(v < 0 or v >= n for v in row):
                raise FormatError(f"symbol outside [0, {n - 1}]")
            batch.append(row)
            if len(batch) >= 1 << 16:
                sv.update(np.array(batch, dtype=np.int8))
                batch = []
        if header is None:
            raise FormatError("empty input")
        if batch:
            sv.update(np.array(batch, dtype=np.int8))
        if sv.rows_seen != rows_declared:
            raise FormatError(f"expected {rows_declared} rows, found {sv.rows_seen}")
    return sv.result()


def cmd_verify(args) -> int:
    if args.stream:
        report = _stream_verify_file(args.input)
        _print_report(report)
        return EXIT_OK if report.is_oa else EXIT_VERIFY
    a = read_oa(args.input)
    report = verify_strength2(a)
    _print_report(report)
    if args.plot:
        from .figures import save_verification_figure
        save_verification_figure(a, report, args.plot)
        print(f"figure written to {args.plot}")
    return EXIT_OK if report.is_oa else EXIT_VERIFY


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def cmd_search(args) -> int:
    quad = bounds_mod.basic_quadruple(args.k, args.n)
    if quad is None:
        raise InfeasibleError(
            f"no basic quadruple with m > 1 exists for (k={args.k}, n={args.n})")
    found = search_starting_rows(args.k, args.n, quad.m, quad.lam, limit=args.limit)
    if not found:
        raise SearchExhaustedError(
            f"search space exhausted for (m={quad.m}, lambda={quad.lam}, "
            f"k={args.k}, n={args.n})")
    if len(found) > 1:
        print(f"found {len(found)} sets; writing the first")
    first = found[0]
    text = write_starting_rows(first)
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text)
        print(f"wrote starting rows to {args.output}")
    else:
        sys.stdout.write(text)
    report = verify_strength2(develop(first))
    print(f"developed: OA_{quad.lam}({args.k},{args.n}) m={report.m_observed} "
          f"classes: {_classes_text(report.classification)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# delete
# ---------------------------------------------------------------------------

def cmd_delete(args) -> int:
    a = read_oa(args.input)
    if not verify_strength2(a).is_oa:
        print("input fails strength-2 verification", file=sys.stderr)
        return EXIT_VERIFY
    columns = None
    if args.columns:
        columns = tuple(int(x) for x in args.columns.split(","))
    out = delete_columns(a, args.s, columns)
    report = _verified(out)
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(write_oa(out))
        print(f"wrote OA_{out.lam}({out.k},{out.n}) to {args.output}")
    m_opt = "m-optimal" in report.classification
    print(f"m-optimal: {'yes' if m_opt else 'no'} (m={report.m_observed}, "
          f"floor={bounds_mod.floor_bound(out.k, out.n, out.lam)})")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oakit",
                     description="strength-2 orthogonal arrays with a repeated row")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="multiplicity bounds and quadruple status")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-l", "--lam", dest="lam", type=int, required=True)
    p.add_argument("--plot", metavar="PNG", help="render the bounds as a figure")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="build and verify an array")
    p.add_argument("--method", required=True,
                   choices=["cyclic", "hadamard", "enumerate", "partition", "multipartition"])
    p.add_argument("-k", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("-t", type=int, help="pipeline parameter for --method hadamard")
    p.add_argument("--start", help="starting-row file for --method cyclic")
    p.add_argument("--class-sizes", help="comma-separated sizes for multipartition")
    p.add_argument("-o", "--output", help="output path (partition methods append .CLASS.txt)")
    p.add_argument("--stream", action="store_true",
                   help="verify by streaming instead of materializing files")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify an OA file and classify it")
    p.add_argument("input")
    p.add_argument("--stream", action="store_true", help="batch-read the file")
    p.add_argument("--plot", metavar="PNG", help="render the array and histogram")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="find cyclic starting rows for the basic parameters")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--limit", type=int, default=1)
    p.add_argument("-o", "--output", help="write the START file here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("delete", help="delete columns and report m-optimality")
    p.add_argument("input")
    p.add_argument("-s", type=int, required=True, help="number of columns to delete")
    p.add_argument("--columns", help="comma-separated indices (default: trailing)")
    p.add_argument("-o", "--output", help="write the restricted array here")
    p.set_defaults(func=cmd_delete)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnreachableOrderError as exc:
        print(f"unreachable: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except SearchExhaustedError as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except (InfeasibleError, enum_mod.MaterializeLimitError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
