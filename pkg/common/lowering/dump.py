"""
Formato textual do IR (golden files e comando `dump`).

    == name/argc ==
    MNEMONIC[ operand] @ fn/while-body/then

Uma instrução por linha, terminações LF.
"""

from typing import Iterable, List, Optional

from common.lowering.ir import LowProgram, LowToken, Op, CmpBranch, CallTarget, SwitchTable


def format_operand(operand) -> Optional[str]:
    """Texto de um operando (None quando a instrução não tem operando)."""
    if operand is None:
        return None
    if isinstance(operand, CmpBranch):
        return operand.cmp if operand.label is None else f"{operand.cmp} L{operand.label}"
    if isinstance(operand, CallTarget):
        callee = operand.name if operand.name is not None else f"#{operand.fid}"
        return f"{callee}/{operand.argc}"
    if isinstance(operand, SwitchTable):
        return str(operand.arms)
    if isinstance(operand, tuple) and len(operand) == 2 and isinstance(operand[0], str):
        # Constante tipada
        value = operand[1]
        if isinstance(value, bool):
            return "true" if value else "false"
        return str(value)
    return str(operand)


def format_token(token: LowToken, with_path: bool = True) -> str:
    """
    Linha de uma instrução.

    Args:
        token: Instrução
        with_path: Se False, omite o caminho de scope (chaves LLA)
    """
    operand = format_operand(token.operand)
    if token.mnemonic in (Op.LABEL, Op.IFFALSE, Op.GOTO) and token.operand is not None:
        operand = f"L{token.operand}"
    text = token.mnemonic if operand is None else f"{token.mnemonic} {operand}"
    if with_path:
        text += " @ " + "/".join(token.scope_path)
    return text


def dump_tokens(tokens: Iterable[LowToken], with_path: bool = True) -> List[str]:
    return [format_token(t, with_path) for t in tokens]


def dump(program: LowProgram) -> str:
    """
    Dump de um programa compilado, funções por ordem de id.

    Returns:
        Texto terminado em newline
    """
    lines: List[str] = []
    for func in program.functions:
        lines.append(f"== {func.name}/{func.param_count} ==")
        lines.extend(dump_tokens(func.body))
    return "\n".join(lines) + "\n"
