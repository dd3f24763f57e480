"""
Carregamento de ficheiros MiniJ para SourceUnit.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

from common.frontend.lexer import lex
from common.frontend.parser import parse
from common.frontend.syntax import Program
from common.frontend.tokens import SourceToken
from common.utils.errors import IoError
from common.utils.logger import get_logger

logger = get_logger("loader")


@dataclass(frozen=True)
class SourceUnit:
    """
    Programa carregado: AST, tokens léxicos (sem comentários) e texto original.

    Attributes:
        ast: AST resolvida
        tokens: Stream léxico usado pelo STA
        origin: Caminho (ou etiqueta) de origem
        text: Texto exato do código fonte
    """
    ast: Program
    tokens: Tuple[SourceToken, ...]
    origin: str
    text: str

    def __post_init__(self):
        if not isinstance(self.ast, Program):
            raise TypeError("ast deve ser Program")
        if not isinstance(self.tokens, tuple):
            raise TypeError("tokens deve ser tuple")

    @property
    def name(self) -> str:
        """Nome do ficheiro (unidade de comparação do STA)."""
        return Path(self.origin).name


def load_text(text: str, origin: str = "<memory>") -> SourceUnit:
    """
    Faz lex + parse de um texto já em memória.

    Args:
        text: Código fonte MiniJ
        origin: Etiqueta de origem

    Returns:
        SourceUnit

    Raises:
        LexError, ParseError, ResolveError
    """
    tokens = tuple(lex(text))
    ast = parse(tokens)
    return SourceUnit(ast=ast, tokens=tokens, origin=origin, text=text)


def load(path: Union[str, Path]) -> SourceUnit:
    """
    Lê e analisa um ficheiro `.mj`.

    Args:
        path: Caminho do ficheiro

    Returns:
        SourceUnit

    Raises:
        IoError: Ficheiro inexistente, ilegível ou não UTF-8
        LexError, ParseError, ResolveError: Propagados do frontend
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        raise IoError(path, "no such file")
    except OSError as e:
        raise IoError(path, e.strerror or str(e))

    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise IoError(path, "not valid UTF-8")

    unit = load_text(text, str(path))
    logger.debug(f"Carregado {path} ({len(unit.tokens)} tokens)")
    return unit
