"""Command-line front end: tables, verification, distributions, inspection.

Exit codes are a stable contract: 0 success, 1 verification failure,
2 usage error.  Machine formats carry counts as decimal strings and
rationals as exact numerator/denominator pairs; decimal renderings are
advisory presentation only.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
import time
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

import click

from . import counting
from .census import (
    CensusBoundError,
    CensusFormatError,
    CensusTable,
    DEFAULT_MAX_ON_DEGREE,
    DEFAULT_MAX_OPN_DEGREE,
    VerificationReport,
    census,
    encode_census,
    load_cached_census,
    store_census,
    verify,
)
from .digraph import decompose, render_decomposition
from .monoids import MonoidId, factorizations, order_preserving_shifts
from .transforms import Transformation, fixed_points, is_orientation_preserving

CACHE_ENV = "OPCENSUS_CACHE_DIR"
DEFAULT_CACHE_DIR = Path.home() / ".cache" / "opcensus"

# Degrees above this need --long-run (or an explicit --max-degree): the
# census is minutes of compute there, not seconds.
QUICK_MAX_DEGREE = 10

_MONOID_KINDS = {"on": "On", "opn": "OPn", "onk": "Onk"}


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


def format_decimal(value: Fraction, digits: int = 6) -> str:
    """Advisory decimal rendering of an exact rational, default 6 significant digits."""
    if digits < 1:
        raise ValueError("need at least one significant digit")
    if value == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        dec = Decimal(value.numerator) / Decimal(value.denominator)
    return format(dec.normalize(), "f")


def _ratio_obj(value: Fraction, digits: int) -> dict[str, str]:
    return {
        "num": str(value.numerator),
        "den": str(value.denominator),
        "decimal": format_decimal(value, digits),
    }


def _csv_text(rows: list[list[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _align(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def _cache_dir(option_value: str | None) -> Path:
    if option_value:
        return Path(option_value)
    return Path(os.environ.get(CACHE_ENV, str(DEFAULT_CACHE_DIR)))


def _census_degree_cap(long_run: bool, max_degree: int | None) -> int | None:
    # None lets the library defaults (12 for OPn, 14 otherwise) apply.
    if max_degree is not None:
        return max_degree
    if long_run:
        return None
    return QUICK_MAX_DEGREE


@click.group()
def main() -> None:
    """Exact fixed-point combinatorics of orientation-preserving transformations."""


# ---------------------------------------------------------------- table


def _table_rows(kind: str, n_max: int) -> tuple[list[int], list[tuple[int, dict[int, int], int]]]:
    if kind == "f":
        cols = list(range(n_max + 1))
        rows = [
            (n, {m: counting.fixed_points_count(n, m) for m in range(n + 1)},
             counting.orientation_preserving_size(n))
            for n in range(1, n_max + 1)
        ]
    else:
        cols = list(range(1, n_max + 1))
        rows = [
            (n, {x: counting.fixing_count(n, x) for x in range(1, n + 1)},
             counting.orientation_preserving_size(n))
            for n in range(1, n_max + 1)
        ]
    return cols, rows


def _render_table_text(kind: str, n_max: int) -> str:
    cols, rows = _table_rows(kind, n_max)
    corner = "n\\m" if kind == "f" else "n\\x"
    grid = [[corner, *[str(c) for c in cols], "total"]]
    for n, cells, total in rows:
        grid.append([str(n), *[str(cells[c]) if c in cells else "" for c in cols], str(total)])
    return _align(grid)


def _render_table_csv(kind: str, n_max: int) -> str:
    cols, rows = _table_rows(kind, n_max)
    out: list[list[object]] = [["n", *cols, "total"]]
    for n, cells, total in rows:
        out.append([n, *[cells[c] if c in cells else "" for c in cols], total])
    return _csv_text(out)


def _render_table_json(kind: str, n_max: int) -> str:
    _, rows = _table_rows(kind, n_max)
    obj = {
        "schema": "table/1",
        "kind": kind.upper(),
        "n_max": n_max,
        "rows": [
            {"n": n, "counts": {str(c): str(v) for c, v in sorted(cells.items())},
             "total": str(total)}
            for n, cells, total in rows
        ],
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


@main.command("table")
@click.argument("kind", type=click.Choice(["s", "f"], case_sensitive=False))
@click.option("--n-max", type=int, required=True, help="Largest degree row to print.")
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--check", is_flag=True, help="Cross-check cells against cached census files.")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None)
def table_cmd(kind: str, n_max: int, fmt: str, out: str | None, check: bool,
              cache_dir: str | None) -> None:
    """Print the S table (maps fixing a point) or F table (maps by fixed-point count)."""
    if n_max < 1:
        raise click.UsageError("--n-max must be at least 1")
    kind = kind.lower()
    render = {"text": _render_table_text, "csv": _render_table_csv, "json": _render_table_json}
    _emit(render[fmt](kind, n_max), out)
    if check:
        try:
            mismatches, checked = _check_against_cache(kind, n_max, _cache_dir(cache_dir))
        except CensusFormatError as exc:
            raise click.ClickException(f"corrupt cache file: {exc}") from exc
        click.echo(f"checked {checked} cached census(es)", err=True)
        if mismatches:
            for line in mismatches:
                click.echo(f"MISMATCH {line}", err=True)
            sys.exit(1)


def _check_against_cache(kind: str, n_max: int, cache_dir: Path) -> tuple[list[str], int]:
    mismatches: list[str] = []
    checked = 0
    for n in range(1, n_max + 1):
        cached = load_cached_census(MonoidId.orientation_preserving(n), cache_dir)
        if cached is None:
            continue
        checked += 1
        if kind == "f":
            for m in range(n + 1):
                expected = counting.fixed_points_count(n, m)
                if cached.f_counts[m] != expected:
                    mismatches.append(f"n={n} m={m}: census {cached.f_counts[m]} != {expected}")
        else:
            for x in range(1, n + 1):
                expected = counting.fixing_count(n, x)
                if cached.s_counts[x] != expected:
                    mismatches.append(f"n={n} x={x}: census {cached.s_counts[x]} != {expected}")
    return mismatches, checked


# ---------------------------------------------------------------- verify


def _render_report_text(report: VerificationReport) -> str:
    lines = []
    for n in range(report.n_lo, report.n_hi + 1):
        n_checks = [c for c in report.checks if c.n == n]
        failed = [c for c in n_checks if not c.passed]
        status = "ok" if not failed else f"{len(failed)} FAILED"
        lines.append(f"n={n}: {len(n_checks)} checks, {status} ({report.elapsed.get(n, 0.0):.3f}s)")
        for c in failed:
            where = f" witness={c.witness}" if c.witness else ""
            lines.append(f"  FAIL {c.name}: expected {c.expected}, measured {c.measured}{where}")
        if n in report.m1_profiles:
            profile = ", ".join(f"{k}:{v}" for k, v in sorted(report.m1_profiles[n].items()))
            lines.append(f"  one-fixed-point shift profile: {{{profile}}}")
    lines.append("PASS" if report.passed else "FAIL")
    return "\n".join(lines) + "\n"


def _render_report_csv(report: VerificationReport) -> str:
    rows: list[list[object]] = [["n", "name", "expected", "measured", "pass", "witness"]]
    for c in report.checks:
        rows.append([c.n, c.name, c.expected, c.measured, str(c.passed).lower(), c.witness or ""])
    return _csv_text(rows)


def _render_report_json(report: VerificationReport) -> str:
    checks = []
    for c in report.checks:
        item: dict[str, object] = {
            "n": c.n,
            "name": c.name,
            "expected": str(c.expected),
            "measured": str(c.measured),
            "pass": c.passed,
        }
        if c.witness is not None:
            item["witness"] = c.witness
        checks.append(item)
    obj = {
        "schema": "report/1",
        "from": report.n_lo,
        "to": report.n_hi,
        "passed": report.passed,
        "checks": checks,
        "m1_shift_profiles": {
            str(n): {str(k): str(v) for k, v in sorted(profile.items())}
            for n, profile in sorted(report.m1_profiles.items())
        },
        "elapsed_seconds": {
            str(n): f"{secs:.6f}" for n, secs in sorted(report.elapsed.items())
        },
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


@main.command("verify")
@click.option("--from", "n_lo", type=int, default=1, help="First degree to verify.")
@click.option("--to", "n_hi", type=int, required=True, help="Last degree to verify.")
@click.option("--jobs", type=int, default=1, help="Worker processes for the census.")
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--long-run", is_flag=True,
              help=f"Allow degrees past {QUICK_MAX_DEGREE} (up to the library bounds).")
@click.option("--max-degree", type=int, default=None,
              help="Explicit feasibility override for the census.")
def verify_cmd(n_lo: int, n_hi: int, jobs: int, fmt: str, out: str | None,
               long_run: bool, max_degree: int | None) -> None:
    """Re-derive every count by brute force and compare with the closed forms."""
    if n_lo < 1 or n_lo > n_hi:
        raise click.UsageError(f"bad degree range {n_lo}..{n_hi}")
    if jobs < 1:
        raise click.UsageError("--jobs must be at least 1")
    cap = _census_degree_cap(long_run, max_degree)
    try:
        report = verify(n_lo, n_hi, jobs=jobs, max_degree=cap)
    except CensusBoundError as exc:
        raise click.UsageError(f"{exc} (hint: --long-run or --max-degree)") from exc
    render = {"text": _render_report_text, "csv": _render_report_csv, "json": _render_report_json}
    _emit(render[fmt](report), out)
    if not report.passed:
        sys.exit(1)


# ---------------------------------------------------------------- dist


def _render_dist_text(dist: counting.FixedPointDistribution, digits: int) -> str:
    size = counting.orientation_preserving_size(dist.n)
    lines = [f"fixed-point distribution at degree {dist.n} ({size} members)"]
    for m, p in sorted(dist.probs.items()):
        lines.append(f"P(m={m}) = {p} = {format_decimal(p, digits)}")
    expectation = dist.expectation()
    lines.append(f"P(point fixed) = {dist.point_fix} = {format_decimal(dist.point_fix, digits)}")
    lines.append(f"E(fixed points) = {expectation} = {format_decimal(expectation, digits)}")
    return "\n".join(lines) + "\n"


def _render_dist_csv(dist: counting.FixedPointDistribution, digits: int) -> str:
    rows: list[list[object]] = [["quantity", "index", "numerator", "denominator", "decimal"]]
    for m, p in sorted(dist.probs.items()):
        rows.append(["prob", m, p.numerator, p.denominator, format_decimal(p, digits)])
    rows.append(["point_fix", "", dist.point_fix.numerator, dist.point_fix.denominator,
                 format_decimal(dist.point_fix, digits)])
    expectation = dist.expectation()
    rows.append(["expectation", "", expectation.numerator, expectation.denominator,
                 format_decimal(expectation, digits)])
    return _csv_text(rows)


def _render_dist_json(dist: counting.FixedPointDistribution, digits: int) -> str:
    obj = {
        "schema": "dist/1",
        "n": dist.n,
        "size": str(counting.orientation_preserving_size(dist.n)),
        "probs": {str(m): _ratio_obj(p, digits) for m, p in sorted(dist.probs.items())},
        "point_fix": _ratio_obj(dist.point_fix, digits),
        "expectation": _ratio_obj(dist.expectation(), digits),
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


@main.command("dist")
@click.option("--n", type=int, required=True, help="Degree.")
@click.option("--digits", type=int, default=6, help="Significant digits for decimals.")
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def dist_cmd(n: int, digits: int, fmt: str, out: str | None) -> None:
    """Exact distribution and expectation of the number of fixed points."""
    if n < 1:
        raise click.UsageError("--n must be at least 1")
    if digits < 1:
        raise click.UsageError("--digits must be at least 1")
    dist = counting.distribution(n)
    render = {"text": _render_dist_text, "csv": _render_dist_csv, "json": _render_dist_json}
    _emit(render[fmt](dist, digits), out)


# ---------------------------------------------------------------- inspect


def _parse_images(literal: str) -> Transformation:
    parts = [p.strip() for p in literal.split(",")]
    try:
        images = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise click.UsageError(f"malformed transformation literal {literal!r}: {exc}") from exc
    try:
        return Transformation(images)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


@main.command("inspect")
@click.argument("images")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def inspect_cmd(images: str, out: str | None) -> None:
    """Analyze one map, given as comma-separated images, e.g. 1,4,4,5,5."""
    t = _parse_images(images)
    lines = [f"map {t} of degree {t.n}"]
    oriented = is_orientation_preserving(t)
    lines.append(f"orientation-preserving: {'yes' if oriented else 'no'}")
    shifts = sorted(order_preserving_shifts(t))
    if shifts:
        lines.append("order-preserving under shifts: {" + ",".join(map(str, shifts)) + "}")
    else:
        lines.append("order-preserving under shifts: none")
    fixed = sorted(fixed_points(t))
    lines.append("fixed points: {" + ",".join(map(str, fixed)) + "}" if fixed
                 else "fixed points: none")
    facts = factorizations(t)
    if facts:
        for f in facts:
            lines.append(f"factorization: rotation {f.r} then {f.tail}")
    else:
        lines.append("factorization: none (not orientation-preserving)")
    lines.append(render_decomposition(decompose(t)))
    _emit("\n".join(lines) + "\n", out)


# ---------------------------------------------------------------- enumerate


@main.command("enumerate")
@click.option("--monoid", type=click.Choice(sorted(_MONOID_KINDS)), required=True)
@click.option("--n", type=int, required=True, help="Degree.")
@click.option("--k", type=int, default=None, help="Shift (onk only).")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--max-degree", type=int, default=None,
              help="Explicit feasibility override.")
def enumerate_cmd(monoid: str, n: int, k: int | None, out: str | None,
                  max_degree: int | None) -> None:
    """Stream every member, one comma-separated image tuple per line."""
    mid = _monoid_id(monoid, n, k)
    bound = max_degree if max_degree is not None else (
        DEFAULT_MAX_OPN_DEGREE if mid.kind == "OPn" else DEFAULT_MAX_ON_DEGREE)
    if n > bound:
        raise click.UsageError(
            f"degree {n} exceeds the feasibility bound {bound} (hint: --max-degree)")
    expected = (counting.orientation_preserving_size(n) if mid.kind == "OPn"
                else counting.order_preserving_size(n))
    header = f"# monoid={mid.label()} n={n} expected={expected}\n"
    body = "".join(",".join(map(str, im)) + "\n" for im in mid.member_images())
    _emit(header + body, out)


def _monoid_id(monoid: str, n: int, k: int | None) -> MonoidId:
    kind = _MONOID_KINDS[monoid]
    if kind == "Onk":
        if k is None:
            raise click.UsageError("--k is required for --monoid onk")
        try:
            return MonoidId.rotated(n, k)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    if k is not None:
        raise click.UsageError("--k only applies to --monoid onk")
    try:
        return MonoidId(kind, n)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


# ---------------------------------------------------------------- census


def _render_census_text(table: CensusTable, elapsed: float | None) -> str:
    lines = [f"census of {table.monoid.label()}: {table.size} members"]
    lines.append("fixed-point counts: " +
                 ", ".join(f"{m}:{c}" for m, c in sorted(table.f_counts.items())))
    lines.append("point-fix counts:   " +
                 ", ".join(f"{x}:{c}" for x, c in sorted(table.s_counts.items())))
    if table.m1_shift_profile is not None:
        lines.append("one-fixed-point shift profile: " +
                     ", ".join(f"{k}:{v}" for k, v in sorted(table.m1_shift_profile.items())))
    if elapsed is not None:
        lines.append(f"elapsed: {elapsed:.3f}s")
    return "\n".join(lines) + "\n"


def _render_census_csv(table: CensusTable) -> str:
    rows: list[list[object]] = [["table", "index", "count"]]
    rows.append(["size", "", table.size])
    for m, c in sorted(table.f_counts.items()):
        rows.append(["F", m, c])
    for x, c in sorted(table.s_counts.items()):
        rows.append(["S", x, c])
    if table.m1_shift_profile is not None:
        for k, v in sorted(table.m1_shift_profile.items()):
            rows.append(["m1_shifts", k, v])
    return _csv_text(rows)


@main.command("census")
@click.option("--monoid", type=click.Choice(sorted(_MONOID_KINDS)), required=True)
@click.option("--n", type=int, required=True, help="Degree.")
@click.option("--k", type=int, default=None, help="Shift (onk only).")
@click.option("--jobs", type=int, default=1, help="Worker processes.")
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
              help=f"Census cache directory (default ${CACHE_ENV} or {DEFAULT_CACHE_DIR}).")
@click.option("--no-cache", is_flag=True, help="Neither read nor write the cache.")
@click.option("--long-run", is_flag=True,
              help=f"Allow degrees past {QUICK_MAX_DEGREE} (up to the library bounds).")
@click.option("--max-degree", type=int, default=None,
              help="Explicit feasibility override.")
def census_cmd(monoid: str, n: int, k: int | None, jobs: int, fmt: str, out: str | None,
               cache_dir: str | None, no_cache: bool, long_run: bool,
               max_degree: int | None) -> None:
    """Run (or load) a full enumeration census and print its exact tallies."""
    mid = _monoid_id(monoid, n, k)
    if jobs < 1:
        raise click.UsageError("--jobs must be at least 1")
    directory = _cache_dir(cache_dir)
    table = None
    elapsed = None
    if not no_cache:
        try:
            table = load_cached_census(mid, directory)
        except CensusFormatError as exc:
            raise click.ClickException(f"corrupt cache file: {exc}") from exc
    if table is None:
        cap = _census_degree_cap(long_run, max_degree)
        start = time.perf_counter()
        try:
            table = census(mid, jobs=jobs, max_degree=cap)
        except CensusBoundError as exc:
            raise click.UsageError(f"{exc} (hint: --long-run or --max-degree)") from exc
        elapsed = time.perf_counter() - start
        if not no_cache:
            store_census(table, directory)
    if fmt == "json":
        _emit(encode_census(table) + "\n", out)
    elif fmt == "csv":
        _emit(_render_census_csv(table), out)
    else:
        _emit(_render_census_text(table, elapsed), out)


if __name__ == "__main__":
    main()
