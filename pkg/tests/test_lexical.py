import random

import pytest

from attacks.lexical import Layout, reflow, strip_comments
from common.frontend.lexer import lex, lex_with_trivia
from common.frontend.tokens import Comment


SOURCE = """// cabeçalho
fn main() {
    int x = read(); // valor
    /* bloco
       de duas linhas */
    if (x == -1) { print("a // b"); }
}
"""


def keys(text):
    return [t.key for t in lex(text)]


def test_strip_comments_keeps_tokens():
    stripped = strip_comments(SOURCE)
    assert keys(stripped) == keys(SOURCE)
    assert not any(isinstance(i, Comment) for i in lex_with_trivia(stripped))
    assert '"a // b"' in stripped
    assert stripped.startswith("fn main() {\n")
    assert "    int x = read();\n" in stripped


def test_strip_comments_without_comments_is_identity():
    text = "fn main() { print(1); }\n"
    assert strip_comments(text) == text


LAYOUTS = [
    Layout("  ", False, False),
    Layout("\t", True, True),
    Layout("    ", True, False),
    Layout("        ", False, True),
]


@pytest.mark.parametrize("layout", LAYOUTS)
def test_reflow_keeps_tokens_and_comments(layout):
    text = reflow(SOURCE, layout)
    assert keys(text) == keys(SOURCE)
    comments = [i.text for i in lex_with_trivia(text) if isinstance(i, Comment)]
    assert comments == [i.text for i in lex_with_trivia(SOURCE) if isinstance(i, Comment)]
    assert text.endswith("\n")


def test_reflow_changes_layout():
    text = reflow(SOURCE, Layout("\t", True, True))
    assert text != SOURCE
    assert "\n{" in text or "\n\t{" in text


def test_reflow_never_fuses_operators():
    text = "fn main() { int x = - -1; bool b = !!true; print(x); }"
    for layout in LAYOUTS:
        assert keys(reflow(text, layout)) == keys(text)


def test_layout_validation():
    with pytest.raises(ValueError):
        Layout("", False, False)
    with pytest.raises(ValueError):
        Layout("x", False, False)


def test_random_layout_is_deterministic():
    assert Layout.random(random.Random(3)) == Layout.random(random.Random(3))


def test_seed_programs_survive_both_attacks(seeds):
    rng = random.Random(5)
    for seed in seeds:
        text = seed.unit.text
        assert keys(strip_comments(text)) == keys(text)
        assert keys(reflow(text, Layout.random(rng))) == keys(text)
