import random

import pytest

from common.matcher.tiling import Tile, TilingResult, reference_gst, rkr_gst


def test_identical_sequences_form_one_tile():
    a = list("abcdefgh")
    result = rkr_gst(a, a, 3)
    assert result.tiles == (Tile(0, 0, 8),)
    assert result.matched == 8


def test_short_matches_are_ignored():
    assert rkr_gst("abxcd", "abycd", 3).matched == 0
    assert rkr_gst("abxcd", "abycd", 2).matched == 4


def test_moved_block_is_still_matched():
    a = list("abcdefXYZW")
    b = list("XYZWabcdef")
    result = rkr_gst(a, b, 3)
    assert result.matched == 10
    assert {(t.start_a, t.start_b, t.length) for t in result.tiles} == {(0, 4, 6), (6, 0, 4)}


def test_tiles_never_overlap():
    a = list("aaaaaaaaaa")
    b = list("aaaa")
    result = rkr_gst(a, b, 2)
    assert result.matched == 4
    covered = [i for t in result.tiles for i in range(t.start_b, t.start_b + t.length)]
    assert len(covered) == len(set(covered))


def test_empty_sequences():
    assert rkr_gst([], list("abc"), 1) == TilingResult((), 0)
    assert reference_gst([], [], 1).matched == 0


def test_mml_must_be_positive():
    with pytest.raises(ValueError):
        rkr_gst("a", "a", 0)
    with pytest.raises(ValueError):
        reference_gst("a", "a", 0)


def test_tile_validation():
    with pytest.raises(ValueError):
        Tile(0, 0, 0)
    with pytest.raises(ValueError):
        Tile(-1, 0, 2)


def test_hashable_tuples_as_items():
    a = [("LOAD", 0), ("CONST", ("int", 1)), ("ADD", None), ("STORE", 0)]
    b = [("READ", None)] + a
    assert rkr_gst(a, b, 3).tiles == (Tile(0, 1, 4),)


@pytest.mark.parametrize("initial_search", [1, 3, 20, 64])
def test_initial_search_does_not_change_the_result(initial_search):
    rng = random.Random(11)
    a = [rng.choice("abc") for _ in range(60)]
    b = [rng.choice("abc") for _ in range(50)]
    assert rkr_gst(a, b, 3, initial_search) == reference_gst(a, b, 3)


def test_matches_the_quadratic_oracle_on_random_pairs():
    rng = random.Random(2017)
    for _ in range(1000):
        alphabet = "abcdef"[:rng.randint(2, 6)]
        a = [rng.choice(alphabet) for _ in range(rng.randint(0, 40))]
        b = [rng.choice(alphabet) for _ in range(rng.randint(0, 40))]
        mml = rng.randint(1, 5)
        fast = rkr_gst(a, b, mml, rng.choice([mml, 8, 20]))
        slow = reference_gst(a, b, mml)
        assert fast.matched == slow.matched, (a, b, mml)
        assert fast.matched <= min(len(a), len(b))
