"""
Linearização de métodos e remoção de métodos invocados.

Cada INVOKE de uma função noutra componente fortemente conexa do grafo de
chamadas é substituído pelo corpo (já linearizado) da função chamada:

- RETURN/RETVAL da função chamada são removidos;
- um parâmetro cujo argumento era um único LOAD (ver `arg_slots`) e que a
  função chamada nunca escreve passa a usar o slot do chamador;
- os restantes parâmetros são ligados com STOREs para slots novos do
  chamador, do último para o primeiro (a ordem em que saem da pilha);
- o caminho de scope dos tokens inseridos é o caminho da chamada seguido do
  caminho interno da função chamada sem a tag raiz.

Chamadas dentro de um ciclo do grafo (incluindo recursão direta) ficam como
INVOKE opacos. No fim, cada unidade tem os slots (e os ids das chamadas
opacas) renumerados por primeira ocorrência.
"""

from typing import Dict, List, Sequence, Tuple

import networkx as nx

from common.lowering.ir import LowProgram, LowToken, Op, CallTarget
from common.utils.constants import ENTRY_FUNCTION, INIT_FUNCTION
from common.utils.logger import get_logger

logger = get_logger("linearize")


_SLOT_OPS = (Op.LOAD, Op.STORE)


def call_graph(program: LowProgram) -> nx.DiGraph:
    """Grafo de chamadas (arestas chamador -> chamado) indexado por fid."""
    graph = nx.DiGraph()
    for func in program.functions:
        graph.add_node(func.fid, name=func.name)
        for callee in sorted(func.invoked_ids):
            graph.add_edge(func.fid, callee)
    return graph


def _components(graph: nx.DiGraph) -> Dict[int, int]:
    """fid -> id da componente fortemente conexa."""
    condensed = nx.condensation(graph)
    return dict(condensed.graph["mapping"])


def _slot_count(body: Sequence[LowToken], param_count: int) -> int:
    slots = [t.operand for t in body if t.mnemonic in _SLOT_OPS]
    return max(slots + [param_count - 1]) + 1


def canonicalize(body: Sequence[LowToken]) -> Tuple[LowToken, ...]:
    """
    Renumera slots e ids de chamadas opacas por primeira ocorrência.

    Torna a unidade independente da ordem das declarações e dos slots
    frescos criados na linearização.
    """
    slots: Dict[int, int] = {}
    callees: Dict[int, int] = {}
    result = []
    for tok in body:
        if tok.mnemonic in _SLOT_OPS:
            tok = tok.with_operand(slots.setdefault(tok.operand, len(slots)))
        elif tok.mnemonic == Op.INVOKE:
            target = tok.operand
            fid = callees.setdefault(target.fid, len(callees))
            tok = tok.with_operand(CallTarget(fid, target.argc, target.returns, name=target.name))
        result.append(tok)
    return tuple(result)




def _aliases(target: CallTarget, callee_body: Sequence[LowToken]) -> Dict[int, int]:
    """Parâmetro -> slot do chamador, para os parâmetros que nunca são escritos."""
    written = {t.operand for t in callee_body if t.mnemonic == Op.STORE}
    return {
        param: slot for param, slot in enumerate(target.arg_slots)
        if slot is not None and param not in written
    }


class _Linearizer:

    def __init__(self, program: LowProgram):
        self.program = program
        self.component = _components(call_graph(program))
        self.memo: Dict[int, Tuple[LowToken, ...]] = {}

    def linearized(self, fid: int) -> Tuple[LowToken, ...]:
        if fid in self.memo:
            return self.memo[fid]

        func = self.program.function(fid)
        next_slot = _slot_count(func.body, func.param_count)
        out: List[LowToken] = []

        for tok in func.body:
            if tok.mnemonic != Op.INVOKE or self.component[tok.operand.fid] == self.component[fid]:
                out.append(tok)
                continue

            callee = self.program.function(tok.operand.fid)
            inlined = self.linearized(callee.fid)
            aliases = _aliases(tok.operand, inlined)
            offset = next_slot
            next_slot += _slot_count(inlined, callee.param_count)
            site = tok.scope_path

            for param in reversed(range(callee.param_count)):
                if param not in aliases:
                    out.append(LowToken(Op.STORE, offset + param, site, tok.line))
            for inner in inlined:
                if inner.mnemonic in (Op.RETURN, Op.RETVAL):
                    continue
                if inner.mnemonic in _SLOT_OPS:
                    inner = inner.with_operand(aliases.get(inner.operand, inner.operand + offset))
                out.append(inner.with_path(site + inner.scope_path[1:]))
            logger.debug(f"{func.name}: inlined {callee.name} ({len(inlined)} tokens, {len(aliases)} aliased)")

        self.memo[fid] = tuple(out)
        return self.memo[fid]


def linearize(program: LowProgram) -> Dict[int, Tuple[LowToken, ...]]:
    """
    Lineariza todas as funções de um programa.

    Args:
        program: Programa preparado (reinterpretado, sem preparação de
            argumentos se a abordagem a remove, generalizado)

    Returns:
        fid -> corpo linearizado e canonicalizado
    """
    linearizer = _Linearizer(program)
    return {func.fid: canonicalize(linearizer.linearized(func.fid)) for func in program.functions}


def remove_invoked(program: LowProgram) -> Tuple[int, ...]:
    """
    Pool de unidades de comparação depois da remoção de métodos invocados.

    Uma função entra no pool se a sua componente fortemente conexa não tem
    chamadas vindas de fora da componente; `main` e `<init>` entram sempre.

    Args:
        program: Programa compilado

    Returns:
        fids do pool, por ordem crescente
    """
    graph = call_graph(program)
    condensed = nx.condensation(graph)
    mapping = condensed.graph["mapping"]
    roots = {scc for scc in condensed.nodes if condensed.in_degree(scc) == 0}
    pool = {fid for fid, scc in mapping.items() if scc in roots}
    pool.update(f.fid for f in program.functions if f.name in (ENTRY_FUNCTION, INIT_FUNCTION))
    return tuple(sorted(pool))
