"""
Generalização de instruções: remove detalhe técnico irrelevante para a
comparação (labels e alvos de salto, nomes de funções chamadas).

Constantes e slots ficam intactos.
"""

from dataclasses import replace
from typing import Sequence, Tuple

from common.lowering.ir import LowToken, Op, CmpBranch


def generalize_token(token: LowToken) -> LowToken:
    if token.mnemonic == Op.IFCMP:
        return token.with_operand(CmpBranch(token.operand.cmp))
    if token.mnemonic in (Op.IFFALSE, Op.GOTO):
        return token.with_operand(None)
    if token.mnemonic == Op.INVOKE:
        return token.with_operand(replace(token.operand, name=None))
    if token.mnemonic == Op.SWITCH:
        return token.with_operand(token.operand.arms)
    return token


def generalize(body: Sequence[LowToken]) -> Tuple[LowToken, ...]:
    """
    Generaliza um corpo compilado.

    Args:
        body: Instruções (antes ou depois da reinterpretação)

    Returns:
        Instruções sem LABEL e sem alvos de salto
    """
    return tuple(generalize_token(t) for t in body if t.mnemonic != Op.LABEL)
