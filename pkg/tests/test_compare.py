import json

import pytest

from common.matcher.compare import compare, compare_bundles, similarity_of
from common.pipeline.approach import Approach, ApproachConfig
from common.pipeline.sequences import SequenceBundle, TokenSequence

from tests.conftest import unit


PROGRAM = """
fn square(int v): int {
    return v * v;
}

fn main() {
    int total = 0;
    int i = 0;
    while (i < 4) {
        total = total + square(i);
        i = i + 1;
    }
    print(total);
}
"""

OTHER = """
fn main() {
    int x = read();
    if (x > 3) { print("big"); } else { print("small"); }
}
"""


def bundle(*units, approach=Approach.LLA):
    return SequenceBundle(approach, tuple(TokenSequence(name, tuple(text)) for name, text in units))


def test_similarity_of():
    assert similarity_of(0, 0, 0) == 1.0
    assert similarity_of(3, 3, 3) == 1.0
    assert similarity_of(2, 4, 4) == 0.5


def test_self_comparison_is_perfect(seeds, approach_config):
    for seed in seeds:
        result = compare(seed.unit, seed.unit, approach_config)
        assert result.rmt == 0
        assert result.mt == 0
        assert result.similarity == 1.0


def test_metric_identities(approach_config):
    result = compare(unit(PROGRAM), unit(OTHER), approach_config)
    assert result.mt == result.len_a + result.len_b - 2 * result.matched_total
    assert result.rmt == -result.mt
    assert 0 <= result.matched_total <= min(result.len_a, result.len_b)
    assert result.similarity == pytest.approx(2 * result.matched_total / (result.len_a + result.len_b))


def test_compare_is_symmetric(approach_config):
    ab = compare(unit(PROGRAM), unit(OTHER), approach_config)
    ba = compare(unit(OTHER), unit(PROGRAM), approach_config)
    assert (ab.rmt, ab.matched_total, ab.similarity) == (ba.rmt, ba.matched_total, ba.similarity)
    assert (ab.len_a, ab.len_b) == (ba.len_b, ba.len_a)
    assert ab.swapped != ba.swapped


def test_results_come_back_in_caller_order():
    a = bundle(("f", "abcdef"))
    b = bundle(("g", "xxabcdef"))
    forward = compare_bundles(a, b, 3)
    backward = compare_bundles(b, a, 3)
    assert forward.unit_pairing == [("f", "g")]
    assert backward.unit_pairing == [("g", "f")]
    assert forward.tiles[("f", "g")][0].start_b == 2
    assert backward.tiles[("g", "f")][0].start_a == 2


def test_compare_bundles_rejects_mixed_approaches():
    with pytest.raises(ValueError):
        compare_bundles(bundle(("f", "abc")), bundle(("f", "abc"), approach=Approach.STA), 3)


def test_empty_programs_are_identical():
    result = compare_bundles(bundle(), bundle(), 3)
    assert result.similarity == 1.0
    assert result.rmt == 0


def test_to_dict_is_json_ready():
    result = compare(unit(PROGRAM), unit(PROGRAM), ApproachConfig.create(Approach.EXT_LLA))
    data = json.loads(json.dumps(result.to_dict()))
    assert data["approach"] == "ext-lla"
    assert data["rmt"] == 0
    assert data["unit_pairing"] == [["main", "main"]]
    assert data["tiles"][0]["matched"] == result.len_a


def test_format_text_lines():
    result = compare(unit(PROGRAM), unit(PROGRAM), ApproachConfig.create(Approach.LLA))
    lines = result.format_text().splitlines()
    assert lines[0] == "approach: lla"
    assert "rmt: 0" in lines
    assert "similarity: 1.0" in lines
    assert lines[-1] == "diagnostics: 0"


def test_min_match_length_matters():
    loose = compare(unit(PROGRAM), unit(OTHER), ApproachConfig.create(Approach.LLA, 1))
    strict = compare(unit(PROGRAM), unit(OTHER), ApproachConfig.create(Approach.LLA, 8))
    assert loose.matched_total >= strict.matched_total
