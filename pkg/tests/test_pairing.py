from common.matcher.pairing import pair_units
from common.pipeline.sequences import TokenSequence


def seq(name, text):
    return TokenSequence(name, tuple(text))


def test_pairs_best_matching_units():
    units_a = [seq("f", "abcdef"), seq("g", "uvwxyz")]
    units_b = [seq("p", "uvwxyz"), seq("q", "abcdeq")]
    pairing = pair_units(units_a, units_b, 3)
    assert [(p.unit_a, p.unit_b, p.matched) for p in pairing.pairs] == [("g", "p", 6), ("f", "q", 5)]
    assert pairing.matched_total == 11
    assert pairing.unmatched_a == () and pairing.unmatched_b == ()


def test_unit_is_used_once():
    units_a = [seq("main", "abcdef")]
    units_b = [seq("x", "abcdef"), seq("y", "abcdef")]
    pairing = pair_units(units_a, units_b, 3)
    assert [(p.unit_a, p.unit_b) for p in pairing.pairs] == [("main", "x")]
    assert pairing.unmatched_b == ("y",)
    assert pairing.as_list() == [("main", "x"), (None, "y")]


def test_ties_follow_unit_names_not_sizes():
    units_a = [seq("a", "abcd")]
    units_b = [seq("short", "abcd"), seq("long", "abcdzzzzzz")]
    pairing = pair_units(units_a, units_b, 3)
    assert [(p.unit_a, p.unit_b) for p in pairing.pairs] == [("a", "long")]
    assert pairing.unmatched_b == ("short",)


def test_units_without_matches_stay_unpaired():
    pairing = pair_units([seq("a", "abc")], [seq("b", "xyz")], 3)
    assert pairing.pairs == ()
    assert pairing.unmatched_a == ("a",)
    assert pairing.unmatched_b == ("b",)
    assert pairing.matched_total == 0


def test_empty_sides():
    pairing = pair_units([], [seq("b", "xyz")], 3)
    assert pairing.pairs == ()
    assert pairing.as_list() == [(None, "b")]
