"""
Verificação simbólica da disciplina de pilha e das labels.
"""

from typing import Dict, Sequence

from common.lowering.ir import LowFunction, LowToken, Op, stack_effect
from common.utils.errors import CompileError


def check_labels(body: Sequence[LowToken]) -> None:
    """
    Cada label é definida exatamente uma vez e todos os saltos apontam para
    labels existentes.

    Raises:
        CompileError: Label duplicada ou salto sem destino
    """
    defined = set()
    for tok in body:
        if tok.mnemonic == Op.LABEL:
            if tok.operand in defined:
                raise CompileError(f"label L{tok.operand} defined twice")
            defined.add(tok.operand)
    for tok in body:
        targets = []
        if tok.label_target is not None:
            targets.append(tok.label_target)
        elif tok.mnemonic == Op.SWITCH:
            targets.extend(tok.operand.labels)
            targets.append(tok.operand.default)
        for target in targets:
            if target not in defined:
                raise CompileError(f"jump to undefined label L{target}")


def simulate_stack(body: Sequence[LowToken]) -> int:
    """
    Simula a altura da pilha ao longo do corpo.

    O código depois de GOTO/RETURN/RETVAL é inalcançável até à próxima label
    alcançada por algum salto.

    Args:
        body: Instruções de uma função

    Returns:
        Altura máxima da pilha

    Raises:
        CompileError: Pilha negativa, alturas inconsistentes numa label,
            RETURN com pilha não vazia ou corpo sem terminador
    """
    heights: Dict[int, int] = {}
    height = 0
    max_height = 0
    reachable = True

    def join(label: int, h: int) -> None:
        if label in heights and heights[label] != h:
            raise CompileError(f"inconsistent stack height at L{label}: {heights[label]} vs {h}")
        heights[label] = h

    for index, tok in enumerate(body):
        if tok.mnemonic == Op.LABEL:
            if reachable:
                join(tok.operand, height)
            elif tok.operand in heights:
                height = heights[tok.operand]
                reachable = True
            continue
        if not reachable:
            continue

        pops, pushes = stack_effect(tok)
        if height < pops:
            raise CompileError(f"stack underflow at {index} ({tok.mnemonic})")
        if tok.mnemonic == Op.RETURN and height != 0:
            raise CompileError(f"RETURN with {height} values on the stack")
        if tok.mnemonic == Op.RETVAL and height != 1:
            raise CompileError(f"RETVAL with {height} values on the stack")
        height = height - pops + pushes
        max_height = max(max_height, height)

        if tok.label_target is not None:
            join(tok.label_target, height)
        elif tok.mnemonic == Op.SWITCH:
            for label in tok.operand.labels + (tok.operand.default,):
                join(label, height)

        if tok.mnemonic in Op.TERMINATORS:
            reachable = False

    if reachable:
        raise CompileError("control reaches the end of the body without RETURN")
    return max_height


def check_function(func: LowFunction) -> None:
    """
    Valida labels e pilha de uma função compilada.

    Raises:
        CompileError: Com o nome da função no prefixo
    """
    try:
        check_labels(func.body)
        simulate_stack(func.body)
    except CompileError as e:
        raise CompileError(f"{func.name}: {e}")
