import random

import pytest

from common.frontend.lexer import lex, lex_with_trivia
from common.frontend.tokens import Comment, TokenKind
from common.utils.errors import LexError


def keys(tokens):
    return [t.key for t in tokens]


def test_comment_is_dropped():
    tokens = lex("x = 1; // note")
    assert keys(tokens) == [
        (TokenKind.IDENTIFIER, "x"),
        (TokenKind.OPERATOR, "="),
        (TokenKind.INT_LITERAL, "1"),
        (TokenKind.PUNCTUATION, ";"),
    ]


def test_empty_input():
    assert lex("") == []


def test_keywords_literals_and_longest_operator():
    tokens = lex('fn f(): bool { return true && "a b" != "c" <= 3; }')
    kinds = {t.lexeme: t.kind for t in tokens}
    assert kinds["fn"] == TokenKind.KEYWORD
    assert kinds["true"] == TokenKind.BOOL_LITERAL
    assert kinds['"a b"'] == TokenKind.STRING_LITERAL
    assert kinds["&&"] == TokenKind.OPERATOR
    assert kinds["<="] == TokenKind.OPERATOR
    assert kinds["!="] == TokenKind.OPERATOR


def test_string_lexeme_is_verbatim():
    tokens = lex('print("tab\\t");')
    assert tokens[2].lexeme == '"tab\\t"'


def test_positions_strictly_increase():
    tokens = lex("fn main() {\n  int x = 1;\n  print(x);\n}\n")
    positions = [t.position for t in tokens]
    assert positions == sorted(positions)
    assert len(set(positions)) == len(positions)
    assert tokens[0].position == (1, 1)


@pytest.mark.parametrize("text, line, column", [
    ('x = "abc', 1, 5),
    ("x = 1;\n/* sem fim", 2, 1),
    ("x = 1 # 2;", 1, 7),
])
def test_lex_errors(text, line, column):
    with pytest.raises(LexError) as info:
        lex(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_trivia_keeps_comments_in_order():
    items = lex_with_trivia("a /* b */ c // d\n")
    assert isinstance(items[1], Comment)
    assert items[1].text == "/* b */"
    assert items[-1].is_line_comment
    assert [i.lexeme for i in items if not isinstance(i, Comment)] == ["a", "c"]


def test_lexing_is_deterministic(seeds):
    for seed in seeds:
        assert lex(seed.unit.text) == lex(seed.unit.text)


def test_comment_injection_leaves_tokens_unchanged(seeds):
    rng = random.Random(7)
    for seed in seeds:
        tokens = lex(seed.unit.text)
        for _ in range(5):
            parts = []
            for tok in tokens:
                parts.append(tok.lexeme)
                roll = rng.random()
                if roll < 0.1:
                    parts.append("/* injetado */")
                elif roll < 0.15:
                    parts.append("// linha\n")
                elif roll < 0.3:
                    parts.append("\n\t")
            assert keys(lex(" ".join(parts))) == keys(tokens)
