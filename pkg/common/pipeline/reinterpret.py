"""
Reinterpretação de instruções: cada SWITCH é reescrito na sequência de
comparações que a cadeia `if / else if / else` equivalente gera.

Para um switch no caminho P com n braços:

    braço i:  seletor, CONST k_i, IFCMP NE next   @ P + else*i
              corpo do braço                      @ P + else*i + then
              GOTO end (se o braço não termina em return e não é o último
                        braço de um switch sem default)
    default:  corpo                               @ P + else*n
"""

from itertools import count
from typing import Dict, Iterator, List, Sequence, Tuple

from common.frontend.syntax import INT
from common.lowering.ir import LowToken, Op, ScopeTag, ScopePath, CmpBranch, SwitchTable


def _max_label(tokens: Sequence[LowToken]) -> int:
    labels = [t.operand for t in tokens if t.mnemonic == Op.LABEL]
    return max(labels, default=0)


def _reprefix(tokens: Sequence[LowToken], old: ScopePath, new: ScopePath) -> List[LowToken]:
    result = []
    for tok in tokens:
        if tok.scope_path[:len(old)] != old:
            raise ValueError(f"{tok} fora do scope {old}")
        result.append(tok.with_path(new + tok.scope_path[len(old):]))
    return result


def _relabel(tokens: Sequence[LowToken], fresh: Iterator[int]) -> List[LowToken]:
    """Cópia com labels novas (o seletor é duplicado por cada braço)."""
    mapping: Dict[int, int] = {}

    def new(label):
        if label not in mapping:
            mapping[label] = next(fresh)
        return mapping[label]

    result = []
    for tok in tokens:
        if tok.mnemonic in (Op.LABEL, Op.IFFALSE, Op.GOTO) and tok.operand is not None:
            tok = tok.with_operand(new(tok.operand))
        elif tok.mnemonic == Op.IFCMP and tok.operand.label is not None:
            tok = tok.with_operand(CmpBranch(tok.operand.cmp, new(tok.operand.label)))
        result.append(tok)
    return result


def _find_label(tokens: Sequence[LowToken], label: int, start: int) -> int:
    for index in range(start, len(tokens)):
        tok = tokens[index]
        if tok.mnemonic == Op.LABEL and tok.operand == label:
            return index
    raise ValueError(f"label L{label} não encontrada")


def _rewrite(tokens: Sequence[LowToken], fresh: Iterator[int]) -> List[LowToken]:
    out: List[LowToken] = []
    index = 0
    while index < len(tokens):
        tok = tokens[index]
        if tok.mnemonic != Op.SWITCH:
            out.append(tok)
            index += 1
            continue

        table: SwitchTable = tok.operand
        path = tok.scope_path
        cut = len(out) - table.selector_len
        selector = out[cut:]
        del out[cut:]

        # Limites de cada braço
        starts = [_find_label(tokens, label, index + 1) for label in table.labels]
        default_at = _find_label(tokens, table.default, index + 1)
        bounds = list(zip(starts, starts[1:] + [default_at]))

        arm_prefix = path + (ScopeTag.CASE_ARM,)
        default_prefix = path + (ScopeTag.DEFAULT_ARM,)
        end = default_at + 1
        while end < len(tokens) and tokens[end].scope_path[:len(default_prefix)] == default_prefix:
            end += 1
        default_body = tokens[default_at + 1:end]
        if end < len(tokens) and tokens[end].mnemonic == Op.LABEL and tokens[end].operand == table.end:
            end += 1

        jumped_to_end = False
        for arm, (key, (start, stop)) in enumerate(zip(table.keys, bounds)):
            arm_path = path + (ScopeTag.ELSE,) * arm
            body = list(tokens[start + 1:stop])
            has_goto = bool(body) and body[-1].mnemonic == Op.GOTO and body[-1].operand == table.end
            if has_goto:
                body.pop()

            next_label = next(fresh)
            out.extend(t.with_path(arm_path) for t in _relabel(selector, fresh))
            out.append(LowToken(Op.CONST, (INT, key), arm_path, tok.line))
            out.append(LowToken(Op.IFCMP, CmpBranch("NE", next_label), arm_path, tok.line))
            out.extend(_reprefix(_rewrite(body, fresh), arm_prefix, arm_path + (ScopeTag.THEN,)))
            last = arm == table.arms - 1
            if has_goto and (not last or table.has_default):
                out.append(LowToken(Op.GOTO, table.end, arm_path, tok.line))
                jumped_to_end = True
            out.append(LowToken(Op.LABEL, next_label, arm_path, tok.line))

        default_path = path + (ScopeTag.ELSE,) * table.arms
        out.extend(_reprefix(_rewrite(default_body, fresh), default_prefix, default_path))
        if jumped_to_end:
            out.append(LowToken(Op.LABEL, table.end, path, tok.line))
        index = end
    return out


def reinterpret(body: Sequence[LowToken]) -> Tuple[LowToken, ...]:
    """
    Substitui cada SWITCH pela cadeia de comparações equivalente.

    Args:
        body: Corpo compilado (ainda com labels)

    Returns:
        Corpo sem SWITCH; inalterado se não houver nenhum
    """
    if not any(t.mnemonic == Op.SWITCH for t in body):
        return tuple(body)
    fresh = count(_max_label(body) + 1)
    return tuple(_rewrite(list(body), fresh))
