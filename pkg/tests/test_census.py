"""Census oracle: tallies, parallel merging, wire format, verification report."""

import json

import pytest

from opcensus import (
    CensusBoundError,
    CensusFormatError,
    CensusTable,
    MonoidId,
    cache_roundtrip,
    census,
    decode_census,
    encode_census,
    fixed_points,
    fixed_points_count,
    fixing_count,
    order_preserving_fixed_points_count,
    orientation_preserving_size,
    sending_count,
    verify,
)
from opcensus.census import (
    Check,
    _check,
    census_cache_path,
    load_cached_census,
    store_census,
)


def opn(n):
    return MonoidId.orientation_preserving(n)


def recount(monoid):
    """Independent tally through the public Transformation stream."""
    n = monoid.n
    f = {m: 0 for m in range(n + 1)}
    s = {x: 0 for x in range(1, n + 1)}
    size = 0
    for t in monoid.members():
        size += 1
        fixed = fixed_points(t)
        f[len(fixed)] += 1
        for x in fixed:
            s[x] += 1
    return size, f, s


class TestCensus:
    def test_published_row_degree_three(self):
        table = census(opn(3))
        assert table.f_counts == {0: 8, 1: 9, 2: 6, 3: 1}
        assert table.s_counts == {1: 8, 2: 8, 3: 8}
        assert table.size == 24

    def test_degree_six_point_counts(self):
        table = census(opn(6))
        assert set(table.s_counts.values()) == {457}

    @pytest.mark.parametrize("monoid", [
        MonoidId.order_preserving(1),
        MonoidId.order_preserving(5),
        MonoidId.orientation_preserving(1),
        MonoidId.orientation_preserving(5),
        MonoidId.rotated(5, 2),
        MonoidId.rotated(4, 3),
    ])
    def test_matches_public_stream_recount(self, monoid):
        table = census(monoid)
        size, f, s = recount(monoid)
        assert (table.size, table.f_counts, table.s_counts) == (size, f, s)

    def test_order_preserving_against_closed_form(self):
        table = census(MonoidId.order_preserving(4))
        assert table.size == 35
        for m in range(5):
            assert table.f_counts[m] == order_preserving_fixed_points_count(4, m)
        for x in range(1, 5):
            assert table.s_counts[x] == sending_count(4, x, x)

    def test_rotated_copy_has_same_fixed_point_counts(self):
        base = census(MonoidId.order_preserving(5))
        rotated = census(MonoidId.rotated(5, 3))
        assert rotated.f_counts == base.f_counts

    def test_m1_profile_present_at_small_degree(self):
        table = census(opn(3))
        # constants are order-preserving under every shift, the other
        # one-fixed-point members under exactly one
        assert table.m1_shift_profile == {1: 6, 3: 3}
        assert census(MonoidId.order_preserving(3)).m1_shift_profile is None

    def test_m1_profile_absent_past_bound(self):
        assert census(opn(7)).m1_shift_profile is None

    @pytest.mark.parametrize("jobs", [2, 3])
    def test_parallel_equals_sequential(self, jobs):
        for monoid in (opn(6), MonoidId.order_preserving(5), MonoidId.rotated(5, 1)):
            assert census(monoid, jobs=jobs) == census(monoid, jobs=1)

    def test_bound_refusal(self):
        with pytest.raises(CensusBoundError):
            census(opn(13))
        with pytest.raises(CensusBoundError):
            census(MonoidId.order_preserving(15))
        with pytest.raises(CensusBoundError):
            census(opn(5), max_degree=4)
        census(opn(5), max_degree=5)

    def test_jobs_validation(self):
        with pytest.raises(ValueError):
            census(opn(3), jobs=0)


class TestCensusTableInvariants:
    def test_f_sum_must_match_size(self):
        with pytest.raises(ValueError):
            CensusTable(opn(1), size=2, f_counts={0: 0, 1: 1}, s_counts={1: 1})

    def test_s_sum_must_match_weighted_f(self):
        with pytest.raises(ValueError):
            CensusTable(opn(1), size=1, f_counts={0: 0, 1: 1}, s_counts={1: 2})

    def test_key_ranges_enforced(self):
        with pytest.raises(ValueError):
            CensusTable(opn(2), size=4, f_counts={0: 1, 1: 2, 2: 1}, s_counts={1: 2})
        with pytest.raises(ValueError):
            CensusTable(opn(2), size=4, f_counts={0: 1, 2: 3}, s_counts={1: 2, 2: 2})

    def test_profile_must_cover_m1(self):
        with pytest.raises(ValueError):
            CensusTable(
                opn(1), size=1, f_counts={0: 0, 1: 1}, s_counts={1: 1},
                m1_shift_profile={1: 2},
            )


class TestWireFormat:
    def test_golden_document(self):
        table = CensusTable(
            opn(4),
            size=128,
            f_counts={0: 47, 1: 44, 2: 28, 3: 8, 4: 1},
            s_counts={1: 32, 2: 32, 3: 32, 4: 32},
        )
        assert encode_census(table) == (
            '{"schema":"census/1","n":4,"monoid":"OPn","size":"128",'
            '"F":{"0":"47","1":"44","2":"28","3":"8","4":"1"},'
            '"S":{"1":"32","2":"32","3":"32","4":"32"}}'
        )

    def test_roundtrip_measured_tables(self):
        for monoid in (opn(4), MonoidId.order_preserving(4), MonoidId.rotated(4, 2)):
            table = census(monoid)
            assert cache_roundtrip(table) == table

    def test_roundtrip_past_64_bit(self):
        # the predicted census at degree 40; counts near 10**24
        n = 40
        table = CensusTable(
            opn(n),
            size=orientation_preserving_size(n),
            f_counts={m: fixed_points_count(n, m) for m in range(n + 1)},
            s_counts={x: fixing_count(n, x) for x in range(1, n + 1)},
        )
        assert table.size > 2**64
        assert cache_roundtrip(table) == table

    def test_numeric_key_order_not_lexicographic(self):
        n = 12
        table = CensusTable(
            opn(n),
            size=orientation_preserving_size(n),
            f_counts={m: fixed_points_count(n, m) for m in range(n + 1)},
            s_counts={x: fixing_count(n, x) for x in range(1, n + 1)},
        )
        keys = list(json.loads(encode_census(table))["F"])
        assert keys == [str(m) for m in range(n + 1)]

    def test_rotated_monoid_carries_shift(self):
        table = census(MonoidId.rotated(4, 3))
        doc = json.loads(encode_census(table))
        assert doc["monoid"] == "Onk" and doc["k"] == 3
        assert cache_roundtrip(table) == table


class TestDecodeErrors:
    def good(self):
        return json.loads(encode_census(census(opn(2))))

    def encode(self, doc):
        return json.dumps(doc)

    def test_bad_json_reports_position(self):
        with pytest.raises(CensusFormatError, match="line 1"):
            decode_census('{"schema":')

    def test_wrong_schema(self):
        doc = self.good()
        doc["schema"] = "census/2"
        with pytest.raises(CensusFormatError, match="schema"):
            decode_census(self.encode(doc))

    def test_missing_field(self):
        doc = self.good()
        del doc["size"]
        with pytest.raises(CensusFormatError, match="size"):
            decode_census(self.encode(doc))

    def test_non_decimal_count(self):
        doc = self.good()
        doc["F"]["1"] = "2x"
        with pytest.raises(CensusFormatError, match=r"F\[1\]"):
            decode_census(self.encode(doc))

    def test_integer_count_rejected(self):
        doc = self.good()
        doc["size"] = 4
        with pytest.raises(CensusFormatError, match="size"):
            decode_census(self.encode(doc))

    def test_sum_invariant_violation(self):
        doc = self.good()
        doc["F"]["0"] = str(int(doc["F"]["0"]) + 1)
        with pytest.raises(CensusFormatError, match="invariant"):
            decode_census(self.encode(doc))

    def test_bad_monoid_kind(self):
        doc = self.good()
        doc["monoid"] = "Qn"
        with pytest.raises(CensusFormatError, match="monoid"):
            decode_census(self.encode(doc))

    def test_top_level_must_be_object(self):
        with pytest.raises(CensusFormatError, match="object"):
            decode_census("[1,2]")


class TestCacheFiles:
    def test_store_and_load(self, tmp_path):
        table = census(opn(3))
        path = store_census(table, tmp_path)
        assert path == census_cache_path(opn(3), tmp_path)
        assert load_cached_census(opn(3), tmp_path) == table

    def test_missing_is_none(self, tmp_path):
        assert load_cached_census(opn(3), tmp_path) is None

    def test_corrupt_file_raises(self, tmp_path):
        path = census_cache_path(opn(3), tmp_path)
        path.write_text("not json", encoding="utf-8")
        with pytest.raises(CensusFormatError):
            load_cached_census(opn(3), tmp_path)

    def test_wrong_monoid_in_file_raises(self, tmp_path):
        store_census(census(opn(3)), tmp_path)
        moved = census_cache_path(MonoidId.order_preserving(3), tmp_path)
        census_cache_path(opn(3), tmp_path).rename(moved)
        with pytest.raises(CensusFormatError, match="OPn"):
            load_cached_census(MonoidId.order_preserving(3), tmp_path)


class TestVerify:
    def test_degree_one(self):
        report = verify(1, 1)
        assert report.passed
        assert not report.failures()
        by_name = {c.name: c for c in report.checks}
        assert by_name["size"].measured == 1
        assert by_name["F[1]"].expected == 1

    def test_small_range_passes(self):
        report = verify(1, 4)
        assert report.passed
        assert set(report.elapsed) == {1, 2, 3, 4}
        assert set(report.m1_profiles) == {1, 2, 3, 4}
        # every degree carries census, structure and sending-matrix checks
        names_n3 = {c.name for c in report.checks if c.n == 3}
        assert {"size", "F[0]", "S[1]", "On.size", "On.F[1]", "On.S[2]",
                "N[1,1]", "factorization.pairs", "factorization.multiplicity",
                "conjugation.fixed_shift", "union.rotated_copies",
                "components.intervals", "shifts.per_fixed_point"} <= names_n3

    def test_structure_checks_cover_all_members(self):
        report = verify(3, 3)
        by_name = {c.name: c for c in report.checks}
        assert by_name["factorization.multiplicity"].expected == 24
        assert by_name["conjugation.fixed_shift"].expected == 3 * 10
        assert by_name["components.intervals"].expected == 24 - 8  # members with fixed points

    def test_range_validation(self):
        with pytest.raises(ValueError):
            verify(0, 3)
        with pytest.raises(ValueError):
            verify(3, 2)

    def test_bound_violation_propagates(self):
        with pytest.raises(CensusBoundError):
            verify(13, 13)

    def test_jobs_give_identical_checks(self):
        sequential = verify(1, 3, jobs=1)
        parallel = verify(1, 3, jobs=2)
        assert sequential.checks == parallel.checks
        assert sequential.m1_profiles == parallel.m1_profiles


class TestCheckPlumbing:
    def test_pass_drops_witness(self):
        check = _check(2, "x", 5, 5, witness="unused")
        assert check == Check(2, "x", 5, 5, True, None)

    def test_failure_keeps_witness(self):
        check = _check(2, "x", 5, 6, witness="[1,1]")
        assert not check.passed
        assert check.witness == "[1,1]"

    def test_report_failure_detection(self):
        report = verify(2, 2)
        report.checks.append(_check(2, "forced", 0, 1))
        assert not report.passed
        assert [c.name for c in report.failures()] == ["forced"]
