from fractions import Fraction

import pytest

from harness.ranking import CaseRanking, RankingTable, rank_case
from harness.summary import summarize


def test_dense_ranking():
    assert rank_case({"ext-lla": -3, "lla": -3, "sta": -10}) == {"ext-lla": 1, "lla": 1, "sta": 2}
    assert rank_case({"ext-lla": 0, "lla": -1, "sta": -2}) == {"ext-lla": 1, "lla": 2, "sta": 3}
    assert rank_case({"ext-lla": -5, "lla": -5, "sta": -5}) == {"ext-lla": 1, "lla": 1, "sta": 1}


def test_rank_case_needs_two_approaches():
    with pytest.raises(ValueError):
        rank_case({"sta": 0})


def test_case_ranking_is_checked():
    case = CaseRanking.from_rmts("L1C000", 1, {"sta": -2, "lla": 0, "ext-lla": 0})
    assert case.rmts == (("ext-lla", 0), ("lla", 0), ("sta", -2))
    assert case.rank_of("sta") == 2
    with pytest.raises(ValueError):
        CaseRanking("L1C000", 1, case.rmts, (("ext-lla", 2), ("lla", 1), ("sta", 3)))


def table():
    return RankingTable.build([
        CaseRanking.from_rmts("L2C000", 2, {"ext-lla": 0, "lla": -4, "sta": -9}),
        CaseRanking.from_rmts("L1C000", 1, {"ext-lla": 0, "lla": 0, "sta": 0}),
        CaseRanking.from_rmts("L1C001", 1, {"ext-lla": -1, "lla": -1, "sta": -3}),
    ])


def test_histogram_counts_shared_ranks_for_everyone():
    histogram = table().histogram()
    assert histogram["ext-lla"] == {1: 3, 2: 0, 3: 0}
    assert histogram["lla"] == {1: 2, 2: 1, 3: 0}
    assert histogram["sta"] == {1: 1, 2: 1, 3: 1}
    assert table().rank1_share("ext-lla") == 1.0


def test_cases_sorted_and_unique():
    assert [c.case_id for c in table().cases] == ["L1C000", "L1C001", "L2C000"]
    case = table().cases[0]
    with pytest.raises(ValueError):
        RankingTable((case, case))


def test_merge_of_slices_equals_the_whole():
    whole = table()
    merged = RankingTable.merge([whole.slice(2), whole.slice(1)])
    assert merged == whole
    assert merged.to_dict() == whole.to_dict()


def test_to_dict_shape():
    data = table().to_dict()
    assert data["cases"][0] == {
        "case_id": "L1C000", "level": 1,
        "rmt": {"ext-lla": 0, "lla": 0, "sta": 0},
        "rank": {"ext-lla": 1, "lla": 1, "sta": 1},
    }
    assert data["histogram"]["sta"] == {"1": 1, "2": 1, "3": 1}


def test_empty_table():
    empty = RankingTable.build([])
    assert empty.rank1_share("sta") == 0.0
    assert empty.histogram() == {}


# ============================================================================
# Resumo por nível
# ============================================================================

GOLDEN_SLICE = [
    {"ext-lla": 0, "lla": 0, "sta": -4},
    {"ext-lla": 0, "lla": -2, "sta": -2},
    {"ext-lla": -3, "lla": -3, "sta": -8},
    {"ext-lla": 0, "lla": -1, "sta": 0},
    {"ext-lla": -2, "lla": -6, "sta": -6},
]


def test_summary_golden_slice():
    report = summarize(3, GOLDEN_SLICE)
    ext = report.stats_for("ext-lla")
    assert ext.mean_rmt == Fraction(-5, 5) == -1
    assert ext.zero_rmt == 3
    assert (ext.min_rmt, ext.max_rmt) == (-3, 0)
    lla = report.stats_for("lla")
    assert lla.mean_rmt == Fraction(-12, 5)
    sta = report.stats_for("sta")
    assert sta.mean_rmt == -4
    assert sta.zero_rmt == 1

    pairwise = {(p.first, p.second): (p.wins, p.ties, p.losses) for p in report.pairwise}
    assert pairwise[("ext-lla", "lla")] == (3, 2, 0)
    assert pairwise[("ext-lla", "sta")] == (4, 1, 0)
    assert pairwise[("lla", "sta")] == (2, 2, 1)


def test_summary_exact_mean():
    report = summarize(1, [{"sta": 0, "lla": 0}, {"sta": -6, "lla": -1}])
    assert report.stats_for("sta").mean_rmt == -3
    assert report.stats_for("lla").mean_rmt == Fraction(-1, 2)
    assert report.to_dict()["approaches"]["lla"]["mean_rmt"] == "-1/2"


def test_summary_similarity_mean():
    report = summarize(1, [{"sta": 0, "lla": -2}], [{"sta": 1.0, "lla": 0.5}])
    assert report.stats_for("lla").mean_similarity == 0.5


def test_summary_needs_cases():
    with pytest.raises(ValueError):
        summarize(2, [])


def test_summary_of_a_level_with_only_invalid_cases():
    report = summarize(4, [], invalid_count=2)
    assert (report.level, report.case_count, report.invalid_count) == (4, 0, 2)
    assert report.to_dict()["approaches"] == {}
