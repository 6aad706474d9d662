"""Brute-force census of the monoids and verification against closed forms.

A census fully enumerates one monoid's members and tallies, exactly:

* how many members have m fixed points, for every m (the F side),
* how many members fix each point x (the S side),
* for the orientation-preserving monoid at small degree, a diagnostic
  profile of how many rotated orders each one-fixed-point member is
  order-preserving under (the theory pins that number only for two or more
  fixed points; here it is measured, not assumed).

``verify`` reruns every counting theorem against a fresh census over a
degree range and reports each comparison as an exact integer equality;
there is no tolerance anywhere.  Structural laws (factorization
multiplicity, conjugation shift, interval components, the union of the
rotated copies) are checked member-by-member up to ``structure_max``.

The census can fan out over ``jobs`` worker processes.  Workers partition
the stream of order-preserving tails by striding and the partial tallies
are merged by addition, so the merged result is identical to a sequential
run regardless of job count or scheduling.

Wire format (one JSON document per table, all counts as decimal strings so
they survive any integer width)::

    {"schema":"census/1","n":4,"monoid":"OPn","size":"128",
     "F":{"0":"47","1":"44","2":"28","3":"8","4":"1"},
     "S":{"1":"32","2":"32","3":"32","4":"32"}}

Optional keys: "k" (for the rotated monoid) and "m1_shifts" (the
diagnostic profile).  Object keys are emitted in ascending numeric order.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from pathlib import Path

from . import counting
from .digraph import decompose, fixed_component_shifts
from .monoids import (
    MonoidId,
    factorizations,
    order_preserving_images,
    order_preserving_maps,
    order_preserving_shifts,
    orientation_preserving_maps,
    rotated_order_preserving_images,
)
from .transforms import conjugate, fixed_points

__all__ = [
    "CENSUS_SCHEMA",
    "DEFAULT_MAX_OPN_DEGREE",
    "DEFAULT_MAX_ON_DEGREE",
    "M1_PROFILE_MAX_DEGREE",
    "CensusBoundError",
    "CensusFormatError",
    "CensusTable",
    "census",
    "encode_census",
    "decode_census",
    "cache_roundtrip",
    "census_cache_path",
    "load_cached_census",
    "store_census",
    "Check",
    "VerificationReport",
    "verify",
]

CENSUS_SCHEMA = "census/1"

# Member counts grow as n*C(2n-1, n-1); past these degrees a census is no
# longer desk-scale and must be requested explicitly via max_degree.
DEFAULT_MAX_OPN_DEGREE = 12
DEFAULT_MAX_ON_DEGREE = 14

M1_PROFILE_MAX_DEGREE = 6


class CensusBoundError(ValueError):
    """A census was requested beyond the configured feasibility bound."""


class CensusFormatError(ValueError):
    """A census document failed to parse or violated a table invariant."""


@dataclass
class CensusTable:
    """Exact tallies from one full enumeration.

    ``f_counts[m]`` counts members with m fixed points (m = 0..n);
    ``s_counts[x]`` counts members fixing x (x = 1..n).  The row sum equals
    the size and the S total equals the F total weighted by m, since both
    sides count (member, fixed point) pairs.
    """

    monoid: MonoidId
    size: int
    f_counts: dict[int, int]
    s_counts: dict[int, int]
    m1_shift_profile: dict[int, int] | None = None

    @property
    def n(self) -> int:
        return self.monoid.n

    def __post_init__(self) -> None:
        n = self.n
        if sorted(self.f_counts) != list(range(n + 1)):
            raise ValueError(f"F keys must be exactly 0..{n}")
        if sorted(self.s_counts) != list(range(1, n + 1)):
            raise ValueError(f"S keys must be exactly 1..{n}")
        if any(v < 0 for v in self.f_counts.values()) or any(
            v < 0 for v in self.s_counts.values()
        ):
            raise ValueError("counts must be nonnegative")
        if sum(self.f_counts.values()) != self.size:
            raise ValueError(
                f"F column sums to {sum(self.f_counts.values())}, size says {self.size}"
            )
        pairs = sum(m * c for m, c in self.f_counts.items())
        if sum(self.s_counts.values()) != pairs:
            raise ValueError(
                f"S column sums to {sum(self.s_counts.values())}, "
                f"but F counts {pairs} (member, fixed point) pairs"
            )
        if self.m1_shift_profile is not None:
            if any(k < 0 or v < 0 for k, v in self.m1_shift_profile.items()):
                raise ValueError("shift profile entries must be nonnegative")
            if sum(self.m1_shift_profile.values()) != self.f_counts[1]:
                raise ValueError("shift profile must cover exactly the one-fixed-point members")


def _shift_count(im: tuple[int, ...], n: int) -> int:
    # Number of rotated orders under which the image tuple is order-preserving.
    count = 0
    for k in range(n):
        prev = -1
        for i in range(n):
            pos = (im[(k + i) % n] - 1 - k) % n
            if pos < prev:
                break
            prev = pos
        else:
            count += 1
    return count


def _tally_fixed(im: tuple[int, ...], s: list[int]) -> int:
    m = 0
    x = 1
    for y in im:
        if y == x:
            m += 1
            s[x] += 1
        x += 1
    return m


def _tally_partition(
    kind: str, n: int, k: int, stride: int, offset: int, profile: bool
) -> tuple[list[int], list[int], dict[int, int]]:
    """Tally every member whose order-preserving tail index is ``offset`` mod ``stride``."""
    f = [0] * (n + 1)
    s = [0] * (n + 1)
    prof: dict[int, int] = {}
    betas = combinations_with_replacement(range(1, n + 1), n)
    if kind == "On":
        for bi, beta in enumerate(betas):
            if bi % stride != offset:
                continue
            f[_tally_fixed(beta, s)] += 1
    elif kind == "Onk":
        for bi, beta in enumerate(betas):
            if bi % stride != offset:
                continue
            gamma = tuple((beta[(x - k) % n] - 1 + k) % n + 1 for x in range(n))
            f[_tally_fixed(gamma, s)] += 1
    else:  # OPn: all rotations of each non-constant tail, constants once
        for bi, beta in enumerate(betas):
            if bi % stride != offset:
                continue
            if beta[0] == beta[-1]:
                f[1] += 1
                s[beta[0]] += 1
                if profile:
                    sc = _shift_count(beta, n)
                    prof[sc] = prof.get(sc, 0) + 1
                continue
            for r in range(n):
                im = beta[r:] + beta[:r]
                m = 0
                x = 1
                for y in im:
                    if y == x:
                        m += 1
                        s[y] += 1
                    x += 1
                f[m] += 1
                if profile and m == 1:
                    sc = _shift_count(im, n)
                    prof[sc] = prof.get(sc, 0) + 1
    return f, s, prof


def _tally_worker(args) -> tuple[list[int], list[int], dict[int, int]]:
    return _tally_partition(*args)


def _degree_bound(kind: str) -> int:
    return DEFAULT_MAX_OPN_DEGREE if kind == "OPn" else DEFAULT_MAX_ON_DEGREE


def census(monoid: MonoidId, *, jobs: int = 1, max_degree: int | None = None) -> CensusTable:
    """Fully enumerate the monoid and tally fixed points, exactly.

    Refuses degrees beyond the feasibility bound (12 for "OPn", 14
    otherwise) unless ``max_degree`` raises it.  With ``jobs > 1`` the
    enumeration space is partitioned across worker processes; the merged
    table is identical to a sequential run.
    """
    n = monoid.n
    bound = max_degree if max_degree is not None else _degree_bound(monoid.kind)
    if n > bound:
        raise CensusBoundError(
            f"census of {monoid.label()} exceeds the feasibility bound {bound}; "
            f"pass max_degree to override"
        )
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    profile = monoid.kind == "OPn" and n <= M1_PROFILE_MAX_DEGREE
    if jobs == 1:
        f, s, prof = _tally_partition(monoid.kind, n, monoid.k, 1, 0, profile)
    else:
        args = [(monoid.kind, n, monoid.k, jobs, w, profile) for w in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_tally_worker, args))
        f = [0] * (n + 1)
        s = [0] * (n + 1)
        prof = {}
        for pf, ps, pp in parts:
            for i, v in enumerate(pf):
                f[i] += v
            for i, v in enumerate(ps):
                s[i] += v
            for key, v in pp.items():
                prof[key] = prof.get(key, 0) + v
    return CensusTable(
        monoid=monoid,
        size=sum(f),
        f_counts={m: f[m] for m in range(n + 1)},
        s_counts={x: s[x] for x in range(1, n + 1)},
        m1_shift_profile=prof if profile else None,
    )


def _numeric_string_map(counts: dict[int, int]) -> dict[str, str]:
    # Insertion order carries the canonical ascending-numeric key order;
    # json sort_keys would reorder "10" before "2" and must not be used.
    return {str(key): str(counts[key]) for key in sorted(counts)}


def encode_census(table: CensusTable) -> str:
    """Render a census table as its canonical one-line JSON document."""
    obj: dict[str, object] = {
        "schema": CENSUS_SCHEMA,
        "n": table.n,
        "monoid": table.monoid.kind,
    }
    if table.monoid.kind == "Onk":
        obj["k"] = table.monoid.k
    obj["size"] = str(table.size)
    obj["F"] = _numeric_string_map(table.f_counts)
    obj["S"] = _numeric_string_map(table.s_counts)
    if table.m1_shift_profile is not None:
        obj["m1_shifts"] = _numeric_string_map(table.m1_shift_profile)
    return json.dumps(obj, separators=(",", ":"))


def _parse_count(value: object, where: str) -> int:
    if not isinstance(value, str) or not value.isdigit():
        raise CensusFormatError(f"{where}: expected a decimal-string count, got {value!r}")
    return int(value)


def _parse_count_map(value: object, where: str) -> dict[int, int]:
    if not isinstance(value, dict):
        raise CensusFormatError(f"{where}: expected an object of counts")
    out = {}
    for key, item in value.items():
        if not isinstance(key, str) or not key.isdigit():
            raise CensusFormatError(f"{where}[{key!r}]: keys must be decimal strings")
        out[int(key)] = _parse_count(item, f"{where}[{key}]")
    return out


def decode_census(text: str) -> CensusTable:
    """Parse a census document, re-validating every table invariant.

    Raises ``CensusFormatError`` naming the offending field (or the JSON
    line/column) on any corruption.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CensusFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise CensusFormatError("top level must be an object")
    if obj.get("schema") != CENSUS_SCHEMA:
        raise CensusFormatError(f"schema: expected {CENSUS_SCHEMA!r}, got {obj.get('schema')!r}")
    for key in ("n", "monoid", "size", "F", "S"):
        if key not in obj:
            raise CensusFormatError(f"missing field {key!r}")
    if not isinstance(obj["n"], int) or isinstance(obj["n"], bool):
        raise CensusFormatError(f"n: expected an integer, got {obj['n']!r}")
    kind = obj["monoid"]
    k = obj.get("k", 0)
    if not isinstance(k, int) or isinstance(k, bool):
        raise CensusFormatError(f"k: expected an integer, got {k!r}")
    try:
        monoid = MonoidId(kind, obj["n"], k)
    except (ValueError, TypeError) as exc:
        raise CensusFormatError(f"monoid: {exc}") from exc
    profile = None
    if "m1_shifts" in obj:
        profile = _parse_count_map(obj["m1_shifts"], "m1_shifts")
    try:
        return CensusTable(
            monoid=monoid,
            size=_parse_count(obj["size"], "size"),
            f_counts=_parse_count_map(obj["F"], "F"),
            s_counts=_parse_count_map(obj["S"], "S"),
            m1_shift_profile=profile,
        )
    except ValueError as exc:
        raise CensusFormatError(f"invariant violation: {exc}") from exc


def cache_roundtrip(table: CensusTable) -> CensusTable:
    """Serialize and re-parse a table; the result equals the input field for field."""
    return decode_census(encode_census(table))


def census_cache_path(monoid: MonoidId, cache_dir: Path) -> Path:
    return Path(cache_dir) / f"census-{monoid.label()}-v1.json"


def load_cached_census(monoid: MonoidId, cache_dir: Path) -> CensusTable | None:
    """The cached table for this monoid, or None when absent.

    A present-but-corrupt file raises ``CensusFormatError``; silently
    recomputing over bad data would mask cache rot.
    """
    path = census_cache_path(monoid, cache_dir)
    if not path.exists():
        return None
    table = decode_census(path.read_text(encoding="utf-8"))
    if table.monoid != monoid:
        raise CensusFormatError(f"{path}: file is for {table.monoid.label()}, not {monoid.label()}")
    return table


def store_census(table: CensusTable, cache_dir: Path) -> Path:
    path = census_cache_path(table.monoid, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(encode_census(table) + "\n", encoding="utf-8")
    return path


@dataclass(frozen=True)
class Check:
    """One exact comparison: passes iff expected == measured."""

    n: int
    name: str
    expected: int
    measured: int
    passed: bool
    witness: str | None = None


def _check(n: int, name: str, expected: int, measured: int, witness: str | None = None) -> Check:
    passed = expected == measured
    return Check(n, name, expected, measured, passed, None if passed else witness)


@dataclass
class VerificationReport:
    """Every check from a verification run, plus per-degree timing and the
    measured one-fixed-point shift profiles."""

    n_lo: int
    n_hi: int
    checks: list[Check]
    elapsed: dict[int, float] = field(default_factory=dict)
    m1_profiles: dict[int, dict[int, int]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _sending_matrix_checks(n: int) -> list[Check]:
    # Brute-force tally of how many order-preserving maps send i to j,
    # against the closed form, for every pair.
    tally = [[0] * (n + 1) for _ in range(n + 1)]
    for im in order_preserving_images(n):
        for i0, j in enumerate(im):
            tally[i0 + 1][j] += 1
    checks = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            checks.append(_check(n, f"N[{i},{j}]", counting.sending_count(n, i, j), tally[i][j]))
    return checks


def _structure_checks(n: int) -> list[Check]:
    checks = []
    members = list(orientation_preserving_maps(n))

    total_pairs = 0
    mult_ok = 0
    mult_witness = None
    for t in members:
        facts = factorizations(t)
        total_pairs += len(facts)
        want = n if t.is_constant() else 1
        if len(facts) == want and all(f.composed() == t for f in facts):
            mult_ok += 1
        elif mult_witness is None:
            mult_witness = str(t)
    checks.append(
        _check(n, "factorization.pairs", n * counting.order_preserving_size(n), total_pairs)
    )
    checks.append(_check(n, "factorization.multiplicity", len(members), mult_ok, mult_witness))

    pair_count = 0
    shift_ok = 0
    shift_witness = None
    for beta in order_preserving_maps(n):
        base = fixed_points(beta)
        for k in range(n):
            pair_count += 1
            want = frozenset((x - 1 + k) % n + 1 for x in base)
            if fixed_points(conjugate(beta, k)) == want:
                shift_ok += 1
            elif shift_witness is None:
                shift_witness = f"{beta} shifted by {k}"
    checks.append(_check(n, "conjugation.fixed_shift", pair_count, shift_ok, shift_witness))

    # Union of the rotated copies == members with a fixed point.  Equal
    # intersection and union sizes is exact set equality.
    with_fixed = {t.images for t in members if fixed_points(t)}
    union: set[tuple[int, ...]] = set()
    for k in range(n):
        union.update(rotated_order_preserving_images(n, k))
    both = with_fixed | union
    inter = with_fixed & union
    union_witness = None
    if both != inter:
        union_witness = str(list(sorted(both - inter))[0])
    checks.append(_check(n, "union.rotated_copies", len(both), len(inter), union_witness))

    interval_total = interval_ok = 0
    lemma_total = lemma_ok = 0
    interval_witness = lemma_witness = None
    for t in members:
        fixed = fixed_points(t)
        if not fixed:
            continue
        interval_total += 1
        dec = decompose(t)
        if all(c.interval is not None and len(c.cycle) == 1 for c in dec.components):
            interval_ok += 1
        elif interval_witness is None:
            interval_witness = str(t)
        if len(fixed) >= 2:
            lemma_total += 1
            shifts = order_preserving_shifts(t)
            if len(shifts) == len(fixed) and fixed_component_shifts(t) == shifts:
                lemma_ok += 1
            elif lemma_witness is None:
                lemma_witness = str(t)
    checks.append(_check(n, "components.intervals", interval_total, interval_ok, interval_witness))
    checks.append(_check(n, "shifts.per_fixed_point", lemma_total, lemma_ok, lemma_witness))
    return checks


def verify(
    n_lo: int,
    n_hi: int,
    *,
    jobs: int = 1,
    structure_max: int = 6,
    sending_max: int = 7,
    max_degree: int | None = None,
) -> VerificationReport:
    """Census every degree in [n_lo, n_hi] and compare against the closed forms.

    Failures are collected in the report, never raised.  Check names:
    ``size``/``F[m]``/``S[x]`` compare the orientation-preserving census to
    the closed forms; ``On.*`` likewise for the order-preserving monoid
    (``On.S[x]`` against the sending-count diagonal); ``N[i,j]`` is the
    brute-forced sending matrix (degrees up to ``sending_max``); the
    remaining names are the member-by-member structure laws (degrees up to
    ``structure_max``), framed as "members checked" vs "members passing".
    """
    if n_lo < 1:
        raise ValueError("degrees start at 1")
    if n_lo > n_hi:
        raise ValueError(f"empty degree range {n_lo}..{n_hi}")
    checks: list[Check] = []
    elapsed: dict[int, float] = {}
    profiles: dict[int, dict[int, int]] = {}
    for n in range(n_lo, n_hi + 1):
        start = time.perf_counter()
        opn = census(MonoidId.orientation_preserving(n), jobs=jobs, max_degree=max_degree)
        checks.append(_check(n, "size", counting.orientation_preserving_size(n), opn.size))
        for m in range(n + 1):
            checks.append(_check(n, f"F[{m}]", counting.fixed_points_count(n, m), opn.f_counts[m]))
        for x in range(1, n + 1):
            checks.append(_check(n, f"S[{x}]", counting.fixing_count(n, x), opn.s_counts[x]))
        if opn.m1_shift_profile is not None:
            profiles[n] = dict(opn.m1_shift_profile)
        on = census(MonoidId.order_preserving(n), jobs=jobs, max_degree=max_degree)
        checks.append(_check(n, "On.size", counting.order_preserving_size(n), on.size))
        for m in range(n + 1):
            checks.append(
                _check(
                    n,
                    f"On.F[{m}]",
                    counting.order_preserving_fixed_points_count(n, m),
                    on.f_counts[m],
                )
            )
        for x in range(1, n + 1):
            checks.append(_check(n, f"On.S[{x}]", counting.sending_count(n, x, x), on.s_counts[x]))
        if n <= sending_max:
            checks.extend(_sending_matrix_checks(n))
        if n <= structure_max:
            checks.extend(_structure_checks(n))
        elapsed[n] = time.perf_counter() - start
    return VerificationReport(n_lo, n_hi, checks, elapsed, profiles)
