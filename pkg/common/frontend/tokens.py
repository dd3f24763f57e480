"""
Tokens léxicos da linguagem MiniJ.

Os tokens de comentário nunca fazem parte do stream usado pelo STA; só
aparecem como `Comment` no stream com trivia (ver lex_with_trivia).
"""

from dataclasses import dataclass
from typing import Tuple


class TokenKind:
    """Tipos de token léxico."""
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    INT_LITERAL = "int-literal"
    STRING_LITERAL = "string-literal"
    BOOL_LITERAL = "bool-literal"
    OPERATOR = "operator"
    PUNCTUATION = "punctuation"

    ALL = (
        KEYWORD,
        IDENTIFIER,
        INT_LITERAL,
        STRING_LITERAL,
        BOOL_LITERAL,
        OPERATOR,
        PUNCTUATION,
    )


KEYWORDS = frozenset({
    "fn", "int", "bool", "str",
    "if", "else", "while", "do", "for",
    "switch", "case", "default", "return",
    "new", "print", "read",
})

BOOL_LITERALS = frozenset({"true", "false"})

# Ordenados do mais longo para o mais curto (longest match)
OPERATORS = (
    "&&", "||", "==", "!=", "<=", ">=",
    "+=", "-=", "*=", "/=", "%=",
    "+", "-", "*", "/", "%", "<", ">", "=", "!",
)

PUNCTUATION = frozenset("(){}[];,:")


@dataclass(frozen=True)
class SourceToken:
    """
    Token léxico com posição.

    Attributes:
        kind: Tipo (ver TokenKind)
        lexeme: Texto exato no código fonte
        line: Linha (1-based)
        column: Coluna (1-based)
    """
    kind: str
    lexeme: str
    line: int
    column: int

    def __post_init__(self):
        if self.kind not in TokenKind.ALL:
            raise ValueError(f"Tipo de token inválido: {self.kind}")
        if not self.lexeme:
            raise ValueError("lexeme não pode ser vazio")

    @property
    def key(self) -> Tuple[str, str]:
        """Chave de comparação do STA."""
        return (self.kind, self.lexeme)

    @property
    def position(self) -> Tuple[int, int]:
        return (self.line, self.column)

    def __str__(self) -> str:
        return f"{self.kind} {self.lexeme}"


@dataclass(frozen=True)
class Comment:
    """Comentário (`//` ou `/* */`) preservado como trivia."""
    text: str
    line: int
    column: int

    @property
    def is_line_comment(self) -> bool:
        return self.text.startswith("//")
