"""
Construção das sequências comparáveis de cada abordagem.

Ordem fixa das features:
reinterpretação -> generalização -> remoção de argumentos -> linearização
-> remoção de métodos invocados -> construção das chaves.

A remoção de argumentos é calculada antes de apagar os LABEL (ver
`common.pipeline.arguments`); o resultado é o da ordem acima.
"""

from dataclasses import dataclass, field, replace
from typing import Hashable, List, Optional, Tuple

from common.frontend.loader import SourceUnit
from common.lowering.compiler import compile_program
from common.lowering.dump import format_token
from common.lowering.ir import LowProgram, LowToken
from common.pipeline.approach import ApproachConfig
from common.pipeline.arguments import remove_arguments
from common.pipeline.generalize import generalize
from common.pipeline.linearize import linearize, remove_invoked
from common.pipeline.reinterpret import reinterpret
from common.utils.errors import HeuristicFailure
from common.utils.logger import get_logger

logger = get_logger("sequences")


@dataclass(frozen=True)
class TokenSequence:
    """
    Sequência comparável de uma unidade (ficheiro para STA, função para LLA/Ext-LLA).

    Attributes:
        unit_name: Nome da unidade
        items: Chaves de comparação (a igualdade é o único predicado de match)
        tokens: Tokens de origem de cada chave (para dumps)
    """
    unit_name: str
    items: Tuple[Hashable, ...]
    tokens: Tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if any(item is None for item in self.items):
            raise ValueError("items não pode conter None")

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class SequenceBundle:
    """Sequências de um programa sob uma abordagem, mais as falhas da heurística."""
    approach: str
    sequences: Tuple[TokenSequence, ...]
    failures: Tuple[HeuristicFailure, ...] = ()

    def __iter__(self):
        return iter(self.sequences)

    def __len__(self) -> int:
        return len(self.sequences)

    def __getitem__(self, index) -> TokenSequence:
        return self.sequences[index]

    @property
    def total_length(self) -> int:
        return sum(len(s) for s in self.sequences)


def low_key(token: LowToken, weighted: bool) -> Hashable:
    """Chave LLA (mnemónica, operando) ou Ext-LLA (mnemónica, operando, caminho)."""
    if weighted:
        return (token.mnemonic, token.operand, token.scope_path)
    return (token.mnemonic, token.operand)


def prepare_program(
    program: LowProgram,
    config: ApproachConfig,
    failures: Optional[List[HeuristicFailure]] = None,
) -> LowProgram:
    """Aplica reinterpretação, remoção de argumentos e generalização a todas as funções."""
    functions = []
    for func in program.functions:
        body = func.body
        if config.reinterpretation_enabled:
            body = reinterpret(body)
        if config.argument_removal_enabled:
            body = remove_arguments(body, func.name, failures)
        if config.generalization_enabled:
            body = generalize(body)
        functions.append(replace(func, body=tuple(body)))
    return replace(program, functions=tuple(functions))


def build_sequences(unit: SourceUnit, config: ApproachConfig) -> SequenceBundle:
    """
    Sequências comparáveis de um programa.

    Args:
        unit: Programa carregado
        config: Configuração da abordagem

    Returns:
        SequenceBundle (uma sequência para STA; uma por função do pool para LLA/Ext-LLA)

    Raises:
        CompileError: Propagado do compilador
    """
    if not config.is_low_level:
        sequence = TokenSequence(unit.name, tuple(t.key for t in unit.tokens), unit.tokens)
        return SequenceBundle(config.approach, (sequence,))

    failures: List[HeuristicFailure] = []
    program = prepare_program(compile_program(unit.ast), config, failures)
    if config.linearization_enabled:
        bodies = linearize(program)
    else:
        bodies = {f.fid: f.body for f in program.functions}

    if config.invoked_removal_enabled:
        pool = remove_invoked(program)
    else:
        pool = tuple(f.fid for f in program.functions)

    sequences = tuple(
        TokenSequence(
            program.function(fid).name,
            tuple(low_key(t, config.weighting_enabled) for t in bodies[fid]),
            bodies[fid],
        )
        for fid in pool
    )
    if failures:
        logger.debug(f"{unit.origin}: {len(failures)} falhas da heurística de argumentos")
    return SequenceBundle(config.approach, sequences, tuple(failures))


def render_sequences(bundle: SequenceBundle) -> str:
    """
    Dump textual das sequências (comando `tokens`).

    Returns:
        Texto com um cabeçalho `== unidade/n ==` por sequência
    """
    lines: List[str] = []
    for sequence in bundle:
        lines.append(f"== {sequence.unit_name}/{len(sequence)} ==")
        for tok, item in zip(sequence.tokens, sequence.items):
            if isinstance(tok, LowToken):
                # Só as chaves Ext-LLA levam o caminho de scope
                lines.append(format_token(tok, with_path=len(item) == 3))
            else:
                lines.append(str(tok))
    return "\n".join(lines) + "\n" if lines else ""
