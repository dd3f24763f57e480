"""
Heurística de remoção de argumentos.

Para cada INVOKE com argc > 0, percorre o corpo para trás e remove o sufixo
mais curto cuja produção líquida na pilha é igual a argc (incluindo os
operadores que calcularam os argumentos). Se a pesquisa atravessar um limite
de bloco básico, regista uma HeuristicFailure e mantém os tokens.

Corre antes da generalização, enquanto os LABEL ainda marcam os inícios de
bloco. A generalização só apaga LABELs e detalhe dos operandos, e uma
remoção bem sucedida nunca contém um LABEL, por isso o resultado é o mesmo
que generalizar primeiro com os labels apagados a contar como limites.
"""

from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

from common.lowering.ir import LowToken, Op, stack_effect
from common.utils.errors import HeuristicFailure
from common.utils.logger import get_logger

logger = get_logger("arguments")


# Instruções que delimitam blocos básicos
_BLOCK_BOUNDARIES = frozenset({
    Op.LABEL, Op.IFCMP, Op.IFFALSE, Op.GOTO, Op.SWITCH, Op.RETURN, Op.RETVAL,
})


def _argument_starts(tokens: Sequence[LowToken], invoke_at: int) -> Optional[List[int]]:
    """Índice do primeiro token de cada argumento, pela ordem dos argumentos (None se falhar)."""
    starts = []
    index = invoke_at
    for _ in range(tokens[invoke_at].operand.argc):
        deficit = 1
        while deficit > 0:
            index -= 1
            if index < 0 or tokens[index].mnemonic in _BLOCK_BOUNDARIES:
                return None
            pops, pushes = stack_effect(tokens[index])
            deficit = deficit - pushes + pops
        starts.append(index)
    return starts[::-1]


def _source_slots(tokens: Sequence[LowToken], starts: List[int], invoke_at: int) -> Tuple[Optional[int], ...]:
    ends = starts[1:] + [invoke_at]
    return tuple(
        tokens[start].operand if end - start == 1 and tokens[start].mnemonic == Op.LOAD else None
        for start, end in zip(starts, ends)
    )


def remove_arguments(
    body: Sequence[LowToken],
    function: str = "?",
    failures: Optional[List[HeuristicFailure]] = None,
) -> Tuple[LowToken, ...]:
    """
    Remove os tokens de preparação de argumentos de cada chamada.

    O INVOKE fica com `arg_slots`: o slot local de cada argumento que era
    um único LOAD, para a linearização o poder usar no lugar do parâmetro.

    Args:
        body: Corpo compilado, ainda com os LABEL
        function: Nome da função (para diagnóstico)
        failures: Lista onde registar as falhas da heurística

    Returns:
        Corpo sem os tokens de preparação; os INVOKE ficam
    """
    tokens = list(body)
    index = len(tokens) - 1
    while index >= 0:
        tok = tokens[index]
        if tok.mnemonic == Op.INVOKE and tok.operand.argc > 0:
            starts = _argument_starts(tokens, index)
            if starts is None:
                failure = HeuristicFailure(function, index, "argument preparation crosses a basic block")
                logger.debug(f"Heurística falhou: {failure}")
                if failures is not None:
                    failures.append(failure)
            else:
                slots = _source_slots(tokens, starts, index)
                tokens[index] = tok.with_operand(replace(tok.operand, arg_slots=slots))
                del tokens[starts[0]:index]
                index = starts[0]
        index -= 1
    return tuple(tokens)
