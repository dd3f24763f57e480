"""
Ataques léxicos de nível 1: remoção de comentários e reformatação do
whitespace.

Trabalham sobre o stream com trivia (tokens + comentários), por isso o
stream de tokens resultante é sempre idêntico ao original.
"""

import random
from dataclasses import dataclass
from typing import List, Optional

from common.frontend.lexer import TriviaItem, lex_with_trivia
from common.frontend.tokens import Comment, SourceToken, TokenKind


# ============================================================================
# Remoção de comentários
# ============================================================================

def _line_starts(text: str) -> List[int]:
    starts = [0]
    for index, ch in enumerate(text):
        if ch == "\n":
            starts.append(index + 1)
    return starts


def strip_comments(text: str) -> str:
    """
    Remove todos os comentários mantendo o resto do layout.

    Cada comentário é substituído por um espaço (ou pelas mudanças de linha
    que continha); linhas que ficam vazias por causa disso desaparecem.

    Args:
        text: Código fonte

    Returns:
        Texto sem comentários, terminado em newline
    """
    comments = [item for item in lex_with_trivia(text) if isinstance(item, Comment)]
    if not comments:
        return text

    starts = _line_starts(text)
    chars = list(text)
    touched = set()
    for comment in comments:
        offset = starts[comment.line - 1] + comment.column - 1
        newlines = comment.text.count("\n")
        replacement = "\n" * newlines if newlines else " "
        chars[offset:offset + len(comment.text)] = [""] * len(comment.text)
        chars[offset] = replacement
        touched.update(range(comment.line - 1, comment.line + newlines))

    lines = []
    for index, line in enumerate("".join(chars).split("\n")):
        line = line.rstrip()
        if not line and index in touched:
            continue
        lines.append(line)
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines) + "\n"


# ============================================================================
# Reformatação
# ============================================================================

_WORD_KINDS = frozenset({
    TokenKind.KEYWORD,
    TokenKind.IDENTIFIER,
    TokenKind.INT_LITERAL,
    TokenKind.STRING_LITERAL,
    TokenKind.BOOL_LITERAL,
})


@dataclass(frozen=True)
class Layout:
    """
    Estilo de layout.

    Attributes:
        indent: Texto de um nível de indentação
        allman: Chavetas de abertura na própria linha
        spaced: Espaços à volta dos operadores e depois das vírgulas
    """
    indent: str
    allman: bool
    spaced: bool

    def __post_init__(self):
        if not self.indent or self.indent.strip():
            raise ValueError("indent deve ser whitespace não vazio")

    @classmethod
    def random(cls, rng: random.Random) -> 'Layout':
        indent = rng.choice(["  ", "\t", "   ", "        "])
        return cls(indent, rng.random() < 0.5, rng.random() < 0.5)


class _Writer:

    def __init__(self, layout: Layout):
        self.layout = layout
        self.lines: List[str] = []
        self.current = ""
        self.depth = 0

    def newline(self) -> None:
        if self.current.strip():
            self.lines.append(self.current.rstrip())
        self.current = ""

    def write(self, text: str, space: bool) -> None:
        if not self.current:
            self.current = self.layout.indent * max(self.depth, 0) + text
        else:
            self.current += (" " if space else "") + text

    def text(self) -> str:
        self.newline()
        return "\n".join(self.lines) + "\n" if self.lines else ""


def _needs_space(prev: Optional[SourceToken], tok: SourceToken, spaced: bool) -> bool:
    if prev is None:
        return False
    if prev.kind in _WORD_KINDS and tok.kind in _WORD_KINDS:
        return True
    # Dois operadores seguidos podiam fundir-se (`=` `=` -> `==`)
    if prev.kind == TokenKind.OPERATOR and tok.kind == TokenKind.OPERATOR:
        return True
    if not spaced:
        return False
    if tok.kind == TokenKind.OPERATOR or prev.kind == TokenKind.OPERATOR:
        return True
    if prev.lexeme in (",", ")") or prev.kind == TokenKind.KEYWORD:
        return tok.lexeme not in (";", ")", "[", ",")
    return tok.lexeme == "{"


def reflow(text: str, layout: Layout) -> str:
    """
    Reescreve o código com outro layout, mantendo tokens e comentários.

    Args:
        text: Código fonte
        layout: Estilo a usar

    Returns:
        Texto reformatado
    """
    items: List[TriviaItem] = lex_with_trivia(text)
    out = _Writer(layout)
    prev: Optional[SourceToken] = None
    paren = 0
    in_label = False

    for index, item in enumerate(items):
        if isinstance(item, Comment):
            out.write(item.text, True)
            if item.is_line_comment or "\n" in item.text:
                out.newline()
            continue

        tok = item
        lexeme = tok.lexeme
        following = next((i for i in items[index + 1:] if isinstance(i, SourceToken)), None)

        if tok.kind == TokenKind.PUNCTUATION and lexeme == "{":
            if layout.allman:
                out.newline()
                out.write("{", False)
            else:
                out.write("{", True)
            out.newline()
            out.depth += 1
        elif tok.kind == TokenKind.PUNCTUATION and lexeme == "}":
            out.newline()
            out.depth -= 1
            out.write("}", False)
            if layout.allman or following is None or following.lexeme not in ("else", "while"):
                out.newline()
        elif tok.kind == TokenKind.PUNCTUATION and lexeme == ";":
            out.write(";", False)
            if paren == 0:
                out.newline()
        elif tok.kind == TokenKind.PUNCTUATION and lexeme == ":" and in_label:
            out.write(":", False)
            out.newline()
            in_label = False
        else:
            if tok.kind == TokenKind.KEYWORD and lexeme in ("case", "default"):
                in_label = True
            if lexeme == "(":
                paren += 1
            elif lexeme == ")":
                paren -= 1
            out.write(lexeme, _needs_space(prev, tok, layout.spaced))
        prev = tok

    return out.text()
