"""
Lexer MiniJ.

Comentários e whitespace não produzem tokens. As strings são mantidas
literalmente (aspas incluídas, sem normalização de escapes).
"""

from typing import List, Union

from common.frontend.tokens import (
    SourceToken,
    Comment,
    TokenKind,
    KEYWORDS,
    BOOL_LITERALS,
    OPERATORS,
    PUNCTUATION,
)
from common.utils.errors import LexError


TriviaItem = Union[SourceToken, Comment]


def _is_ident_start(ch: str) -> bool:
    return ch.isascii() and (ch.isalpha() or ch == "_")


def _is_ident_part(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


class _Scanner:
    """Scanner de um só uso sobre o texto."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def peek(self, offset: int = 0) -> str:
        index = self.pos + offset
        return self.text[index] if index < len(self.text) else ""

    def advance(self, count: int = 1) -> str:
        chunk = self.text[self.pos:self.pos + count]
        for ch in chunk:
            if ch == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
        self.pos += count
        return chunk

    def scan(self) -> List[TriviaItem]:
        items: List[TriviaItem] = []

        while self.pos < len(self.text):
            ch = self.peek()
            line, column = self.line, self.column

            if ch in " \t\r\n\f":
                self.advance()
                continue

            # Comentários
            if ch == "/" and self.peek(1) == "/":
                end = self.text.find("\n", self.pos)
                end = len(self.text) if end < 0 else end
                items.append(Comment(self.advance(end - self.pos), line, column))
                continue

            if ch == "/" and self.peek(1) == "*":
                end = self.text.find("*/", self.pos + 2)
                if end < 0:
                    raise LexError("unterminated block comment", line, column)
                items.append(Comment(self.advance(end + 2 - self.pos), line, column))
                continue

            if ch == '"':
                items.append(self._string(line, column))
                continue

            if ch.isascii() and ch.isdigit():
                start = self.pos
                while self.peek().isascii() and self.peek().isdigit():
                    self.advance()
                if _is_ident_start(self.peek()):
                    raise LexError(f"illegal character {self.peek()!r}", self.line, self.column)
                items.append(SourceToken(TokenKind.INT_LITERAL, self.text[start:self.pos], line, column))
                continue

            if _is_ident_start(ch):
                start = self.pos
                while _is_ident_part(self.peek()):
                    self.advance()
                word = self.text[start:self.pos]
                if word in KEYWORDS:
                    kind = TokenKind.KEYWORD
                elif word in BOOL_LITERALS:
                    kind = TokenKind.BOOL_LITERAL
                else:
                    kind = TokenKind.IDENTIFIER
                items.append(SourceToken(kind, word, line, column))
                continue

            operator = next((op for op in OPERATORS if self.text.startswith(op, self.pos)), None)
            if operator is not None:
                items.append(SourceToken(TokenKind.OPERATOR, self.advance(len(operator)), line, column))
                continue

            if ch in PUNCTUATION:
                items.append(SourceToken(TokenKind.PUNCTUATION, self.advance(), line, column))
                continue

            raise LexError(f"illegal character {ch!r}", line, column)

        return items

    def _string(self, line: int, column: int) -> SourceToken:
        start = self.pos
        self.advance()  # "
        while True:
            ch = self.peek()
            if ch == "" or ch == "\n":
                raise LexError("unterminated string literal", line, column)
            if ch == "\\":
                if self.peek(1) in ("", "\n"):
                    raise LexError("unterminated string literal", line, column)
                self.advance(2)
                continue
            self.advance()
            if ch == '"':
                break
        return SourceToken(TokenKind.STRING_LITERAL, self.text[start:self.pos], line, column)


def lex_with_trivia(text: str) -> List[TriviaItem]:
    """
    Converte texto em tokens, mantendo os comentários.

    Args:
        text: Código fonte MiniJ

    Returns:
        Lista de SourceToken e Comment por ordem do código fonte

    Raises:
        LexError: Caractere ilegal ou string/comentário por terminar
    """
    return _Scanner(text).scan()


def lex(text: str) -> List[SourceToken]:
    """
    Converte texto na sequência de tokens léxicos (sem comentários).

    Args:
        text: Código fonte MiniJ

    Returns:
        Tokens por ordem do código fonte

    Raises:
        LexError: Caractere ilegal ou string/comentário por terminar
    """
    return [item for item in lex_with_trivia(text) if isinstance(item, SourceToken)]
