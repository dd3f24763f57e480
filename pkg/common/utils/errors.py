"""
Hierarquia de exceções do codesim.

Todas as exceções do domínio derivam de CodesimError, para que a CLI possa
transformá-las num diagnóstico de uma linha e num exit code.
"""

from typing import Iterable, Optional, Tuple


Position = Tuple[int, int]


class CodesimError(Exception):
    """Erro base do projeto."""

    def diagnostic(self) -> str:
        """Mensagem de uma linha para o stream de erro."""
        return f"{type(self).__name__}: {self}"


class IoError(CodesimError):
    """Ficheiro inexistente ou ilegível."""

    def __init__(self, path, reason: str):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"{self.path}: {reason}")


class LexError(CodesimError):
    """Caractere ilegal, string ou comentário de bloco por terminar."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} at {line}:{column}")


class ParseError(CodesimError):
    """Token inesperado; `expected` é o conjunto de alternativas válidas."""

    def __init__(self, position: Optional[Position], expected: Iterable[str], found: str):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        where = f"{position[0]}:{position[1]}" if position else "end of input"
        super().__init__(
            f"expected one of {{{', '.join(self.expected)}}} but found {found} at {where}"
        )


class ResolveError(CodesimError):
    """Nome não resolvido, declaração duplicada ou `main` inválido."""

    def __init__(self, name: str, position: Optional[Position], message: str = "unresolved name"):
        self.name = name
        self.position = position
        where = f" at {position[0]}:{position[1]}" if position else ""
        super().__init__(f"{message} '{name}'{where}")


class CompileError(CodesimError):
    """Erro de tipos ou código inalcançável depois de `return`."""

    def __init__(self, message: str, position: Optional[Position] = None):
        self.position = position
        where = f" at {position[0]}:{position[1]}" if position else ""
        super().__init__(f"{message}{where}")


class HeuristicFailure(CodesimError):
    """
    Falha da heurística de remoção de argumentos.

    Nunca é propagada para fora do pipeline: é registada e os tokens ficam.
    """

    def __init__(self, function: str, index: int, reason: str):
        self.function = function
        self.index = index
        self.reason = reason
        super().__init__(f"{function}@{index}: {reason}")


class NotApplicable(CodesimError):
    """Um ataque não se aplica ao programa dado."""


class GenerationExhausted(CodesimError):
    """O gerador esgotou as tentativas para um caso."""


class RuntimeFault(CodesimError):
    """Divisão por zero, índice fora dos limites, input esgotado, etc."""


class StepBudgetExceeded(CodesimError):
    """O avaliador excedeu o orçamento de passos."""


class CorpusFormatError(CodesimError):
    """Layout do corpus inválido."""
