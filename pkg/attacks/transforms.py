"""
Ataques de plágio sobre a AST.

Cada ataque recebe o programa e um `random.Random` já semeado e devolve o
programa transformado e uma descrição do alvo escolhido. `apply_attack`
volta a imprimir, fazer parse e compilar o resultado: qualquer falha nesse
percurso torna o ataque NotApplicable.
"""

import random
from collections import Counter
from dataclasses import dataclass, fields, is_dataclass, replace
from itertools import count
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Set, Tuple

import networkx as nx

from attacks.lexical import Layout, reflow, strip_comments
from attacks.specs import AttackKind, AttackSpec
from common.frontend.loader import SourceUnit, load_text
from common.frontend.printer import print_program
from common.frontend.resolver import LocalScopes
from common.frontend.syntax import (
    Program, GlobalDecl, FuncDecl, Param, Block, VarDecl, Assign, If, While,
    DoWhile, For, Switch, Return, ExprStmt, Print, IntLit, StrLit,
    BoolLit, Name, Index, Call, Read, NewArray, Unary, Binary, INT,
    SCALAR_TYPES, walk,
)
from common.frontend.tokens import KEYWORDS
from common.lowering.compiler import compile_program, expand_compound
from common.utils.constants import ENTRY_FUNCTION
from common.utils.errors import CodesimError, NotApplicable
from common.utils.logger import get_logger

logger = get_logger("attacks")


AttackResult = Tuple[Program, str]

_LOCAL_WORDS = (
    "acc", "aux", "cur", "data", "idx", "item", "k", "num", "part", "pos",
    "res", "step", "tmp", "total", "val", "value", "w", "count", "limit", "flag",
)
_FUNCTION_WORDS = (
    "compute", "calc", "process", "helper", "solve", "run", "handle",
    "evaluate", "work", "doTask",
)

_NEGATED = {"<": ">=", ">=": "<", ">": "<=", "<=": ">", "==": "!=", "!=": "=="}


# ============================================================================
# Utilitários de reescrita
# ============================================================================

def rebuild(node, visit: Callable):
    """
    Reconstrói uma árvore de baixo para cima.

    Args:
        node: Nó (ou tuplo de nós)
        visit: Chamado em cada nó já com os filhos reconstruídos; devolve o
            nó de substituição

    Returns:
        Árvore reconstruída
    """
    if isinstance(node, tuple):
        return tuple(rebuild(item, visit) for item in node)
    if not is_dataclass(node):
        return node
    changes = {}
    for f in fields(node):
        if f.name == "pos":
            continue
        value = getattr(node, f.name)
        if isinstance(value, tuple) or is_dataclass(value):
            changes[f.name] = rebuild(value, visit)
    return visit(replace(node, **changes) if changes else node)


def _walk_all(nodes: Iterable) -> Iterator:
    for node in nodes:
        if node is not None:
            yield from walk(node)


def _mentions(nodes: Iterable) -> Set[str]:
    """Nomes referidos ou declarados."""
    result = set()
    for node in _walk_all(nodes):
        if isinstance(node, Name):
            result.add(node.ident)
        elif isinstance(node, VarDecl):
            result.add(node.name)
    return result


def _declared(nodes: Iterable) -> Set[str]:
    return {node.name for node in _walk_all(nodes) if isinstance(node, VarDecl)}


def _assigned(nodes: Iterable) -> Set[str]:
    """Nomes atribuídos (variável ou array base de um Index)."""
    result = set()
    for node in _walk_all(nodes):
        if isinstance(node, Assign):
            target = node.target
            while isinstance(target, Index):
                target = target.target
            if isinstance(target, Name):
                result.add(target.ident)
    return result


def _is_pure(expr) -> bool:
    return not any(isinstance(n, (Read, Call, NewArray)) for n in walk(expr))


def _is_literal(expr) -> bool:
    if isinstance(expr, Unary) and expr.op == "-":
        return isinstance(expr.operand, IntLit)
    return isinstance(expr, (IntLit, BoolLit, StrLit))


def _identifiers(program: Program) -> Set[str]:
    """Todos os identificadores usados no programa."""
    result = set(KEYWORDS)
    for node in walk(program):
        if isinstance(node, Name):
            result.add(node.ident)
        elif isinstance(node, Call):
            result.add(node.name)
        elif isinstance(node, (VarDecl, GlobalDecl, FuncDecl, Param)):
            result.add(node.name)
    return result


def _fresh(base: str, taken: Set[str]) -> str:
    name = base
    suffix = 1
    while name in taken:
        name = f"{base}_{suffix}"
        suffix += 1
    taken.add(name)
    return name


def _replace_function(program: Program, name: str, func: FuncDecl) -> Program:
    return Program(tuple(func if isinstance(d, FuncDecl) and d.name == name else d for d in program.decls))


def _call_graph(program: Program) -> nx.DiGraph:
    graph = nx.DiGraph()
    for func in program.functions:
        graph.add_node(func.name)
        for node in walk(func.body):
            if isinstance(node, Call):
                graph.add_edge(func.name, node.name)
    return graph


def _recursive_functions(program: Program) -> Set[str]:
    graph = _call_graph(program)
    result = set()
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1:
            result.update(component)
        else:
            (name,) = component
            if graph.has_edge(name, name):
                result.add(name)
    return result


# ============================================================================
# Listas de statements de uma função
# ============================================================================

@dataclass
class StmtList:
    """
    Uma lista de statements (corpo de bloco, braço de if/switch, ...).

    Attributes:
        ordinal: Número da lista em pré-ordem dentro da função
        stmts: Statements
        envs: Locais visíveis (nome -> tipo) antes de cada statement; tem
            len(stmts) + 1 entradas
    """
    ordinal: int
    stmts: tuple
    envs: List[Dict[str, str]]


def _bodies(stmt) -> List[Tuple[Dict[str, str], tuple]]:
    if isinstance(stmt, Block):
        return [({}, stmt.stmts)]
    if isinstance(stmt, If):
        bodies = [({}, stmt.then.stmts)]
        if stmt.orelse is not None:
            bodies.append(({}, stmt.orelse.stmts))
        return bodies
    if isinstance(stmt, (While, DoWhile)):
        return [({}, stmt.body.stmts)]
    if isinstance(stmt, For):
        extra = {stmt.init.name: stmt.init.type} if isinstance(stmt.init, VarDecl) else {}
        return [(extra, stmt.body.stmts)]
    if isinstance(stmt, Switch):
        bodies = [({}, case.body) for case in stmt.cases]
        if stmt.default is not None:
            bodies.append(({}, stmt.default))
        return bodies
    return []


def statement_lists(func: FuncDecl) -> List[StmtList]:
    """Listas de statements de uma função, em pré-ordem, com os locais visíveis."""
    result: List[StmtList] = []
    counter = count()

    def visit(stmts: tuple, env: Dict[str, str]) -> None:
        entry = StmtList(next(counter), stmts, [])
        result.append(entry)
        env = dict(env)
        for stmt in stmts:
            entry.envs.append(dict(env))
            for extra, inner in _bodies(stmt):
                visit(inner, {**env, **extra})
            if isinstance(stmt, VarDecl):
                env[stmt.name] = stmt.type
        entry.envs.append(dict(env))

    visit(func.body.stmts, {p.name: p.type for p in func.params})
    return result


def _map_lists(stmts: tuple, edit: Callable[[int, tuple], tuple], counter) -> tuple:
    ordinal = next(counter)
    stmts = tuple(_map_nested(stmt, edit, counter) for stmt in stmts)
    return edit(ordinal, stmts)


def _map_nested(stmt, edit, counter):
    if isinstance(stmt, Block):
        return replace(stmt, stmts=_map_lists(stmt.stmts, edit, counter))
    if isinstance(stmt, If):
        then = replace(stmt.then, stmts=_map_lists(stmt.then.stmts, edit, counter))
        orelse = stmt.orelse
        if orelse is not None:
            orelse = replace(orelse, stmts=_map_lists(orelse.stmts, edit, counter))
        return replace(stmt, then=then, orelse=orelse)
    if isinstance(stmt, (While, DoWhile, For)):
        return replace(stmt, body=replace(stmt.body, stmts=_map_lists(stmt.body.stmts, edit, counter)))
    if isinstance(stmt, Switch):
        cases = tuple(replace(c, body=_map_lists(c.body, edit, counter)) for c in stmt.cases)
        default = stmt.default
        if default is not None:
            default = _map_lists(default, edit, counter)
        return replace(stmt, cases=cases, default=default)
    return stmt


def replace_list(func: FuncDecl, ordinal: int, stmts: tuple) -> FuncDecl:
    """Substitui a lista número `ordinal` (numeração de statement_lists)."""

    def edit(current: int, original: tuple) -> tuple:
        return stmts if current == ordinal else original

    body = replace(func.body, stmts=_map_lists(func.body.stmts, edit, count()))
    return replace(func, body=body)


class _ScopedRenamer:
    """Renomeia locais respeitando scopes (globais escondidas não são tocadas)."""

    def __init__(self, mapping: Dict[str, str]):
        self.mapping = mapping
        self.scopes: LocalScopes[str] = LocalScopes()

    def function(self, func: FuncDecl) -> FuncDecl:
        with self.scopes.block():
            params = tuple(replace(p, name=self.declare(p.name)) for p in func.params)
            stmts = tuple(self.stmt(s) for s in func.body.stmts)
        return replace(func, params=params, body=replace(func.body, stmts=stmts))

    def declare(self, name: str) -> str:
        new = self.mapping.get(name, name)
        self.scopes.declare(name, new)
        return new

    def block(self, stmts: tuple) -> tuple:
        with self.scopes.block():
            return tuple(self.stmt(s) for s in stmts)

    def stmt(self, stmt):
        if stmt is None:
            return None
        if isinstance(stmt, Block):
            return replace(stmt, stmts=self.block(stmt.stmts))
        if isinstance(stmt, VarDecl):
            init = self.expr(stmt.init)
            return replace(stmt, init=init, name=self.declare(stmt.name))
        if isinstance(stmt, Assign):
            return replace(stmt, target=self.expr(stmt.target), value=self.expr(stmt.value))
        if isinstance(stmt, If):
            orelse = stmt.orelse
            if orelse is not None:
                orelse = replace(orelse, stmts=self.block(orelse.stmts))
            return replace(
                stmt,
                cond=self.expr(stmt.cond),
                then=replace(stmt.then, stmts=self.block(stmt.then.stmts)),
                orelse=orelse,
            )
        if isinstance(stmt, While):
            return replace(stmt, cond=self.expr(stmt.cond), body=replace(stmt.body, stmts=self.block(stmt.body.stmts)))
        if isinstance(stmt, DoWhile):
            return replace(stmt, body=replace(stmt.body, stmts=self.block(stmt.body.stmts)), cond=self.expr(stmt.cond))
        if isinstance(stmt, For):
            with self.scopes.block():
                init = self.stmt(stmt.init)
                cond = self.expr(stmt.cond)
                update = self.stmt(stmt.update)
                body = replace(stmt.body, stmts=self.block(stmt.body.stmts))
            return replace(stmt, init=init, cond=cond, update=update, body=body)
        if isinstance(stmt, Switch):
            cases = tuple(replace(c, body=self.block(c.body)) for c in stmt.cases)
            default = self.block(stmt.default) if stmt.default is not None else None
            return replace(stmt, selector=self.expr(stmt.selector), cases=cases, default=default)
        if isinstance(stmt, Return):
            return replace(stmt, value=self.expr(stmt.value))
        if isinstance(stmt, ExprStmt):
            return replace(stmt, expr=self.expr(stmt.expr))
        if isinstance(stmt, Print):
            return replace(stmt, value=self.expr(stmt.value))
        raise TypeError(f"Statement desconhecido: {type(stmt).__name__}")

    def expr(self, expr):
        if expr is None:
            return None
        if isinstance(expr, Name):
            new = self.scopes.lookup(expr.ident)
            return replace(expr, ident=new) if new is not None else expr
        if isinstance(expr, Index):
            return replace(expr, target=self.expr(expr.target), index=self.expr(expr.index))
        if isinstance(expr, Call):
            return replace(expr, args=tuple(self.expr(a) for a in expr.args))
        if isinstance(expr, NewArray):
            return replace(expr, size=self.expr(expr.size))
        if isinstance(expr, Unary):
            return replace(expr, operand=self.expr(expr.operand))
        if isinstance(expr, Binary):
            return replace(expr, left=self.expr(expr.left), right=self.expr(expr.right))
        return expr


def _local_names(func: FuncDecl) -> List[str]:
    names = [p.name for p in func.params]
    for node in walk(func.body):
        if isinstance(node, VarDecl) and node.name not in names:
            names.append(node.name)
    return names


# ============================================================================
# Nível 1
# ============================================================================

def rename_entry_artifacts(program: Program, rng: random.Random) -> AttackResult:
    """Acrescenta uma global de autoria (`int s1234567;`) nunca usada."""
    tag = _fresh(f"s{rng.randrange(1_000_000, 10_000_000)}", _identifiers(program))
    return Program((GlobalDecl(INT, tag, None),) + program.decls), tag


# ============================================================================
# Nível 2: identificadores
# ============================================================================

def rename_locals(program: Program, rng: random.Random) -> AttackResult:
    """Dá nomes novos a todos os parâmetros e variáveis locais."""
    taken = _identifiers(program)
    decls = []
    renamed = 0
    for decl in program.decls:
        if isinstance(decl, FuncDecl):
            names = _local_names(decl)
            mapping = {name: _fresh(rng.choice(_LOCAL_WORDS), taken) for name in names}
            renamed += len(mapping)
            decl = _ScopedRenamer(mapping).function(decl)
        decls.append(decl)
    if not renamed:
        raise NotApplicable("program has no local variables")
    return Program(tuple(decls)), f"{renamed} locals"


def rename_functions(program: Program, rng: random.Random) -> AttackResult:
    """Dá nomes novos a todas as funções exceto main."""
    taken = _identifiers(program)
    mapping = {
        f.name: _fresh(rng.choice(_FUNCTION_WORDS), taken)
        for f in program.functions if f.name != ENTRY_FUNCTION
    }
    if not mapping:
        raise NotApplicable("program has no functions besides main")

    def visit(node):
        if isinstance(node, (FuncDecl, Call)) and node.name in mapping:
            return replace(node, name=mapping[node.name])
        return node

    return rebuild(program, visit), ", ".join(f"{a}->{b}" for a, b in mapping.items())


# ============================================================================
# Nível 3: posição das declarações
# ============================================================================

def relocate_decl_in_block(program: Program, rng: random.Random) -> AttackResult:
    """
    Separa uma declaração com inicializador: a declaração passa para o início
    do bloco e o valor fica numa atribuição no sítio original.
    """
    candidates = []
    for func in program.functions:
        for entry in statement_lists(func):
            for i, stmt in enumerate(entry.stmts):
                if i == 0 or not isinstance(stmt, VarDecl) or stmt.init is None:
                    continue
                if stmt.name in _mentions(entry.stmts[:i]):
                    continue
                candidates.append((func, entry, i))
    if not candidates:
        raise NotApplicable("no movable declaration")

    func, entry, i = rng.choice(candidates)
    decl = entry.stmts[i]
    stmts = (
        (VarDecl(decl.type, decl.name, None),)
        + entry.stmts[:i]
        + (Assign(Name(decl.name), "=", decl.init),)
        + entry.stmts[i + 1:]
    )
    new_func = replace_list(func, entry.ordinal, stmts)
    return _replace_function(program, func.name, new_func), f"{func.name}:{decl.name}"


def relocate_decl_to_global(program: Program, rng: random.Random) -> AttackResult:
    """Transforma uma declaração de topo de main com valor constante numa global."""
    main = program.function(ENTRY_FUNCTION)
    if any(isinstance(n, Call) and n.name == ENTRY_FUNCTION for n in walk(program)):
        raise NotApplicable("main is called recursively")
    top_level = {d.name for d in program.decls}
    candidates = [
        i for i, stmt in enumerate(main.body.stmts)
        if isinstance(stmt, VarDecl)
        and stmt.type in SCALAR_TYPES
        and stmt.init is not None
        and _is_literal(stmt.init)
        and stmt.name not in top_level
    ]
    if not candidates:
        raise NotApplicable("no constant declaration at the top of main")

    i = rng.choice(candidates)
    decl = main.body.stmts[i]
    body = main.body.stmts[:i] + main.body.stmts[i + 1:]
    new_main = replace(main, body=replace(main.body, stmts=body))
    decls = list(_replace_function(program, ENTRY_FUNCTION, new_main).decls)
    last_global = max((k for k, d in enumerate(decls) if isinstance(d, GlobalDecl)), default=-1)
    decls.insert(last_global + 1, GlobalDecl(decl.type, decl.name, decl.init))
    return Program(tuple(decls)), f"{ENTRY_FUNCTION}:{decl.name}"


def _loop_parts(loop) -> tuple:
    if isinstance(loop, For):
        return (loop.init, loop.cond, loop.update, loop.body)
    return (loop.cond, loop.body)


def relocate_decl_out_of_loop(program: Program, rng: random.Random) -> AttackResult:
    """Move a primeira declaração invariante do corpo de um ciclo para antes do ciclo."""
    candidates = []
    for func in program.functions:
        for entry in statement_lists(func):
            for j, loop in enumerate(entry.stmts):
                if not isinstance(loop, (While, For)):
                    continue
                body = loop.body.stmts
                k = next((n for n, s in enumerate(body) if isinstance(s, VarDecl)), None)
                if k is None:
                    continue
                decl = body[k]
                init = decl.init
                if init is None or _is_literal(init) or isinstance(init, (Name, Read)) or not _is_pure(init):
                    continue
                parts = _loop_parts(loop)
                changing = _assigned(parts) | _declared(parts)
                used = _mentions([init])
                if used & changing or decl.name in _assigned(parts):
                    continue
                # Globais lidas pelo inicializador podem mudar numa chamada dentro do ciclo
                calls = any(isinstance(n, Call) for n in _walk_all(parts))
                if calls and not used <= set(entry.envs[j]):
                    continue
                before = body[:k]
                if _declared(before) or decl.name in _mentions(before):
                    continue
                header = parts[:-1]
                if decl.name in _mentions(header) or decl.name in _mentions(entry.stmts[j + 1:]):
                    continue
                candidates.append((func, entry, j, k))
    if not candidates:
        raise NotApplicable("no loop-invariant declaration")

    func, entry, j, k = rng.choice(candidates)
    loop = entry.stmts[j]
    decl = loop.body.stmts[k]
    body = loop.body.stmts[:k] + loop.body.stmts[k + 1:]
    new_loop = replace(loop, body=replace(loop.body, stmts=body))
    stmts = entry.stmts[:j] + (decl, new_loop) + entry.stmts[j + 1:]
    new_func = replace_list(func, entry.ordinal, stmts)
    return _replace_function(program, func.name, new_func), f"{func.name}:{decl.name}"


# ============================================================================
# Nível 4: módulos
# ============================================================================

def _inline_site(stmt, callee: str) -> Optional[Call]:
    """Chamada a `callee` numa forma que pode ser substituída pelo corpo."""
    if isinstance(stmt, ExprStmt) and stmt.expr.name == callee:
        return stmt.expr
    if isinstance(stmt, VarDecl) and isinstance(stmt.init, Call) and stmt.init.name == callee:
        return stmt.init
    if (
        isinstance(stmt, Assign) and stmt.op == "="
        and isinstance(stmt.target, Name)
        and isinstance(stmt.value, Call) and stmt.value.name == callee
    ):
        return stmt.value
    return None


def _inlinable(func: FuncDecl, global_names: Set[str]) -> bool:
    if func.name == ENTRY_FUNCTION:
        return False
    if set(_local_names(func)) & global_names:
        return False
    returns = [n for n in walk(func.body) if isinstance(n, Return)]
    last = func.body.stmts[-1] if func.body.stmts else None
    if func.ret_type is None:
        return not returns or (len(returns) == 1 and returns[0] is last)
    return len(returns) == 1 and returns[0] is last


def inline_function(program: Program, rng: random.Random) -> AttackResult:
    """
    Substitui a única chamada de uma função não recursiva pelo seu corpo.

    Um parâmetro que a função nunca escreve e que recebe um local do
    chamador passa a ser esse local; os outros parâmetros passam a
    declarações locais com os argumentos. Os locais da função recebem nomes
    novos.
    """
    recursive = _recursive_functions(program)
    calls = Counter(n.name for n in walk(program) if isinstance(n, Call))
    global_names = {g.name for g in program.globals}
    callees = {
        f.name: f for f in program.functions
        if calls[f.name] == 1 and f.name not in recursive and _inlinable(f, global_names)
    }

    candidates = []
    for caller in program.functions:
        for entry in statement_lists(caller):
            for i, stmt in enumerate(entry.stmts):
                for name, callee in callees.items():
                    if name == caller.name:
                        continue
                    call = _inline_site(stmt, name)
                    if call is None or not all(_is_literal(a) or isinstance(a, Name) for a in call.args):
                        continue
                    if isinstance(stmt, ExprStmt) and callee.ret_type is not None:
                        continue
                    if _mentions([callee.body]) & global_names & set(entry.envs[i]):
                        continue
                    candidates.append((caller, entry, i, callee, call))
    if not candidates:
        raise NotApplicable("no inlinable call")

    caller, entry, i, callee, call = rng.choice(candidates)
    taken = _identifiers(program)
    mapping = {name: _fresh(name, taken) for name in _local_names(callee)}
    written = _name_targets([callee.body])
    shared = {
        p.name for p, arg in zip(callee.params, call.args)
        if isinstance(arg, Name) and arg.ident in entry.envs[i] and p.name not in written
    }
    for p, arg in zip(callee.params, call.args):
        if p.name in shared:
            mapping[p.name] = arg.ident
    renamed = _ScopedRenamer(mapping).function(callee)

    body = renamed.body.stmts
    result = None
    if body and isinstance(body[-1], Return):
        result = body[-1].value
        body = body[:-1]
    binds = tuple(
        VarDecl(p.type, p.name, arg)
        for original, p, arg in zip(callee.params, renamed.params, call.args)
        if original.name not in shared
    )

    stmt = entry.stmts[i]
    if isinstance(stmt, VarDecl):
        tail = (replace(stmt, init=result),)
    elif isinstance(stmt, Assign):
        tail = (replace(stmt, value=result),)
    else:
        tail = ()
    stmts = entry.stmts[:i] + binds + body + tail + entry.stmts[i + 1:]

    new_caller = replace_list(caller, entry.ordinal, stmts)
    program = _replace_function(program, caller.name, new_caller)
    program = Program(tuple(d for d in program.decls if not (isinstance(d, FuncDecl) and d.name == callee.name)))
    return program, f"{callee.name}->{caller.name}"


def _name_targets(nodes: Iterable) -> Set[str]:
    return {
        n.target.ident for n in _walk_all(nodes)
        if isinstance(n, Assign) and isinstance(n.target, Name)
    }


def _outer_names(run: tuple, env: Dict[str, str]) -> List[str]:
    names = []
    for node in _walk_all(run):
        if isinstance(node, Name) and node.ident in env and node.ident not in names:
            names.append(node.ident)
    return names


def extract_block(program: Program, rng: random.Random) -> AttackResult:
    """
    Extrai uma sequência de statements para uma função void nova.

    Os locais de fora lidos pela sequência passam como argumentos; a
    sequência não pode atribuir a locais de fora nem declarar locais usados
    depois dela.
    """
    candidates = []
    for func in program.functions:
        for entry in statement_lists(func):
            stmts = entry.stmts
            for i in range(len(stmts)):
                env = entry.envs[i]
                for j in range(i + 1, len(stmts) + 1):
                    run = stmts[i:j]
                    if any(isinstance(n, Return) for n in _walk_all(run)):
                        break
                    if all(isinstance(s, VarDecl) for s in run):
                        continue
                    top_decls = {s.name for s in run if isinstance(s, VarDecl)}
                    if top_decls & _mentions(stmts[j:]):
                        continue
                    if _name_targets(run) & set(env):
                        continue
                    candidates.append((func, entry, i, j))
    if not candidates:
        raise NotApplicable("no extractable statement run")

    longer = [c for c in candidates if c[3] - c[2] >= 2]
    func, entry, i, j = rng.choice(longer or candidates)
    run = entry.stmts[i:j]
    env = entry.envs[i]
    outer = _outer_names(run, env)

    name = _fresh("helper", _identifiers(program))
    helper = FuncDecl(name, tuple(Param(env[n], n) for n in outer), None, Block(run))
    call = ExprStmt(Call(name, tuple(Name(n) for n in outer)))
    stmts = entry.stmts[:i] + (call,) + entry.stmts[j:]
    new_func = replace_list(func, entry.ordinal, stmts)
    program = _replace_function(program, func.name, new_func)
    return Program(program.decls + (helper,)), f"{func.name}[{i}:{j}]->{name}"


# ============================================================================
# Nível 5: statements
# ============================================================================

def _loops(program: Program, kind) -> List[Tuple[FuncDecl, StmtList, int]]:
    return [
        (func, entry, j)
        for func in program.functions
        for entry in statement_lists(func)
        for j, stmt in enumerate(entry.stmts)
        if isinstance(stmt, kind)
    ]


def while_to_for(program: Program, rng: random.Random) -> AttackResult:
    """
    Reescreve um while como for. A última atribuição do corpo passa a
    update e, se a instrução anterior ao ciclo inicializa a mesma variável,
    essa instrução passa a init.
    """
    candidates = _loops(program, While)
    if not candidates:
        raise NotApplicable("no while loop")

    func, entry, j = rng.choice(candidates)
    loop = entry.stmts[j]
    body = loop.body.stmts
    last = body[-1] if body else None
    update = last if isinstance(last, Assign) and isinstance(last.target, Name) else None
    # O update fica fora do corpo: não pode usar locais declarados no corpo
    if update is not None and _mentions([update]) & _declared(body):
        update = None

    init = None
    start = j
    if update is not None and j > 0:
        prev = entry.stmts[j - 1]
        var = update.target.ident
        if isinstance(prev, VarDecl) and prev.name == var and prev.init is not None:
            if var not in _mentions(entry.stmts[j + 1:]):
                init, start = prev, j - 1
        elif isinstance(prev, Assign) and isinstance(prev.target, Name) and prev.target.ident == var:
            init, start = prev, j - 1

    new_body = body[:-1] if update is not None else body
    new_loop = For(init, loop.cond, update, Block(new_body))
    stmts = entry.stmts[:start] + (new_loop,) + entry.stmts[j + 1:]
    new_func = replace_list(func, entry.ordinal, stmts)
    form = "full" if init is not None else ("update" if update is not None else "bare")
    return _replace_function(program, func.name, new_func), f"{func.name}:while#{j}:{form}"


def while_to_dowhile(program: Program, rng: random.Random) -> AttackResult:
    """`while (c) { b }` -> `if (c) { do { b } while (c); }`."""
    candidates = _loops(program, While)
    if not candidates:
        raise NotApplicable("no while loop")

    func, entry, j = rng.choice(candidates)
    loop = entry.stmts[j]
    guarded = If(loop.cond, Block((DoWhile(loop.body, loop.cond),)), None)
    stmts = entry.stmts[:j] + (guarded,) + entry.stmts[j + 1:]
    new_func = replace_list(func, entry.ordinal, stmts)
    return _replace_function(program, func.name, new_func), f"{func.name}:while#{j}"


def negate(cond):
    """Negação de uma condição, invertendo a comparação quando possível."""
    if isinstance(cond, Binary) and cond.op in _NEGATED:
        return replace(cond, op=_NEGATED[cond.op])
    if isinstance(cond, Unary) and cond.op == "!":
        return cond.operand
    return Unary("!", cond)


def swap_if_arms(program: Program, rng: random.Random) -> AttackResult:
    """`if (c) A else B` -> `if (!c) B else A`."""
    candidates = [
        c for c in _loops(program, If) if c[1].stmts[c[2]].orelse is not None
    ]
    if not candidates:
        raise NotApplicable("no if with an else branch")

    func, entry, j = rng.choice(candidates)
    stmt = entry.stmts[j]
    swapped = If(negate(stmt.cond), stmt.orelse, stmt.then)
    stmts = entry.stmts[:j] + (swapped,) + entry.stmts[j + 1:]
    new_func = replace_list(func, entry.ordinal, stmts)
    return _replace_function(program, func.name, new_func), f"{func.name}:if#{j}"


def expand_compound_assign(program: Program, rng: random.Random) -> AttackResult:
    """`x op= e` -> `x = x op e` em todo o programa."""
    expanded = []

    def visit(node):
        if isinstance(node, Assign) and node.op != "=":
            if isinstance(node.target, Index) and not _is_pure(node.target.index):
                return node
            expanded.append(node)
            return expand_compound(node)
        return node

    program = rebuild(program, visit)
    if not expanded:
        raise NotApplicable("no compound assignment")
    return program, f"{len(expanded)} assignments"


def switch_to_ifchain(program: Program, rng: random.Random) -> AttackResult:
    """Reescreve um switch como cadeia if / else if / else."""
    candidates = [
        c for c in _loops(program, Switch)
        if c[1].stmts[c[2]].cases
        and _is_pure(c[1].stmts[c[2]].selector)
        and all(case.value >= 0 for case in c[1].stmts[c[2]].cases)
    ]
    if not candidates:
        raise NotApplicable("no switch with a side-effect-free selector")

    func, entry, j = rng.choice(candidates)
    switch = entry.stmts[j]
    orelse = Block(switch.default) if switch.default is not None else None
    chain = None
    for case in reversed(switch.cases):
        chain = If(Binary("==", switch.selector, IntLit(case.value)), Block(case.body), orelse)
        orelse = Block((chain,))
    stmts = entry.stmts[:j] + (chain,) + entry.stmts[j + 1:]
    new_func = replace_list(func, entry.ordinal, stmts)
    return _replace_function(program, func.name, new_func), f"{func.name}:switch#{j}"


AST_ATTACKS: Dict[str, Callable[[Program, random.Random], AttackResult]] = {
    AttackKind.RENAME_ENTRY_ARTIFACTS: rename_entry_artifacts,
    AttackKind.RENAME_LOCALS: rename_locals,
    AttackKind.RENAME_FUNCTIONS: rename_functions,
    AttackKind.RELOCATE_DECL_IN_BLOCK: relocate_decl_in_block,
    AttackKind.RELOCATE_DECL_TO_GLOBAL: relocate_decl_to_global,
    AttackKind.RELOCATE_DECL_OUT_OF_LOOP: relocate_decl_out_of_loop,
    AttackKind.INLINE_FUNCTION: inline_function,
    AttackKind.EXTRACT_BLOCK: extract_block,
    AttackKind.WHILE_TO_FOR: while_to_for,
    AttackKind.WHILE_TO_DOWHILE: while_to_dowhile,
    AttackKind.SWAP_IF_ARMS: swap_if_arms,
    AttackKind.EXPAND_COMPOUND_ASSIGN: expand_compound_assign,
    AttackKind.SWITCH_TO_IFCHAIN: switch_to_ifchain,
}


# ============================================================================
# Aplicação
# ============================================================================

def _reload(program: Program, origin: str, kind: str) -> SourceUnit:
    """Imprime, volta a fazer parse e compila; qualquer falha é NotApplicable."""
    text = print_program(program)
    try:
        unit = load_text(text, origin)
        compile_program(unit.ast)
    except CodesimError as e:
        raise NotApplicable(f"{kind} produced an invalid program: {e}")
    if unit.ast != program:
        logger.warning(f"{kind}: a AST reimpressa difere da transformada")
        raise NotApplicable(f"{kind} output does not round-trip")
    return unit


def run_attack(
    unit: SourceUnit,
    spec: AttackSpec,
    logic_variant: Optional[SourceUnit] = None,
) -> Tuple[SourceUnit, AttackSpec]:
    """
    Aplica um ataque e devolve também a spec com o alvo escolhido.

    Args:
        unit: Programa a atacar
        spec: Ataque (tipo, nível, semente)
        logic_variant: Variante lógica do programa (só para logic-rewrite)

    Returns:
        (programa transformado, spec com target preenchido)

    Raises:
        NotApplicable: O ataque não tem alvo neste programa ou o resultado
            não é um programa válido
    """
    rng = random.Random(spec.seed)

    if spec.kind == AttackKind.COMMENT_STRIP:
        text = strip_comments(unit.text)
        comments = "comments" if text != unit.text else "none"
        return load_text(text, unit.origin), spec.with_target(comments)

    if spec.kind == AttackKind.WHITESPACE_REFLOW:
        layout = Layout.random(rng)
        indent = "tab" if layout.indent == "\t" else str(len(layout.indent))
        braces = "allman" if layout.allman else "k&r"
        style = f"{braces}/{indent}/{'spaced' if layout.spaced else 'compact'}"
        return load_text(reflow(unit.text, layout), unit.origin), spec.with_target(style)

    if spec.kind == AttackKind.LOGIC_REWRITE:
        if logic_variant is None:
            raise NotApplicable(f"no logic variant for {unit.name}")
        return _reload(logic_variant.ast, unit.origin, spec.kind), spec.with_target(logic_variant.name)

    program, target = AST_ATTACKS[spec.kind](unit.ast, rng)
    logger.debug(f"{spec.kind} em {unit.name}: {target}")
    return _reload(program, unit.origin, spec.kind), spec.with_target(target)


def apply_attack(
    unit: SourceUnit,
    spec: AttackSpec,
    logic_variant: Optional[SourceUnit] = None,
) -> SourceUnit:
    """
    Aplica um ataque de plágio a um programa.

    Args:
        unit: Programa a atacar
        spec: Ataque (tipo, nível, semente)
        logic_variant: Variante lógica do programa (só para logic-rewrite)

    Returns:
        Programa transformado (determinístico dada a semente)

    Raises:
        NotApplicable: O ataque não se aplica ao programa
    """
    return run_attack(unit, spec, logic_variant)[0]
