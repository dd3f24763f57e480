"""
Compilador MiniJ -> IR de máquina de pilha.

Passos (numa só travessia por função):
- `for` é desugared para `init; while (cond) { body; update }` antes da
  atribuição de scopes, por isso for e while geram os mesmos tokens;
- atribuições compostas expandem para `x = x op e`;
- slots locais numerados por primeira ocorrência textual (parâmetros 0..n-1);
- cada instrução leva o caminho de scope das construções que a envolvem;
- inicializadores globais compilam para a função sintética `<init>`;
- verificação de tipos e de código inalcançável depois de `return`.
"""

from typing import Dict, List, Optional, Tuple

from common.frontend.resolver import LocalScopes
from common.frontend.syntax import (
    Program, FuncDecl, Block, VarDecl, Assign, If, While, DoWhile, For, Switch,
    Return, ExprStmt, Print, IntLit, StrLit, BoolLit, Name, Index, Call, Read,
    NewArray, Unary, Binary, INT, BOOL, STR, INT_ARRAY, SCALAR_TYPES,
    COMPARISON_OPS, ARITHMETIC_OPS, LOGICAL_OPS, walk,
)
from common.lowering.ir import (
    Op, ScopeTag, ScopePath, LowToken, LowFunction, LowProgram, CmpBranch,
    CallTarget, SwitchTable, CMP_OPS, CMP_NEGATION,
)
from common.lowering.stack import check_function
from common.utils.constants import ENTRY_FUNCTION, INIT_FUNCTION
from common.utils.errors import CompileError
from common.utils.logger import get_logger

logger = get_logger("compiler")


_ARITH_OPCODES = {"+": Op.ADD, "-": Op.SUB, "*": Op.MUL, "/": Op.DIV, "%": Op.REM}

ROOT_PATH: ScopePath = (ScopeTag.ROOT,)


# ============================================================================
# Desugaring e passes auxiliares (testáveis isoladamente)
# ============================================================================

def desugar_for(stmt: For) -> Block:
    """`for (i; c; u) b` -> `{ i; while (c) { b; u } }` (cond omitida = true)."""
    cond = stmt.cond if stmt.cond is not None else BoolLit(True, pos=stmt.pos)
    body = stmt.body.stmts + ((stmt.update,) if stmt.update is not None else ())
    loop = While(cond, Block(body, pos=stmt.body.pos), pos=stmt.pos)
    init = (stmt.init,) if stmt.init is not None else ()
    return Block(init + (loop,), pos=stmt.pos)


def expand_compound(stmt: Assign) -> Assign:
    """`x op= e` -> `x = x op e`."""
    if stmt.op == "=":
        return stmt
    return Assign(stmt.target, "=", Binary(stmt.op[0], stmt.target, stmt.value, pos=stmt.pos), pos=stmt.pos)


def nested_bodies(stmt) -> List[Tuple[Optional[str], tuple]]:
    """
    Corpos aninhados de um statement e a tag de scope de cada um.

    Blocos simples não acrescentam tag (None). `for` é tratado depois do
    desugaring, logo partilha a tag do while.
    """
    if isinstance(stmt, For):
        stmt = desugar_for(stmt)
    if isinstance(stmt, Block):
        return [(None, stmt.stmts)]
    if isinstance(stmt, If):
        bodies = [(ScopeTag.THEN, stmt.then.stmts)]
        if stmt.orelse is not None:
            bodies.append((ScopeTag.ELSE, stmt.orelse.stmts))
        return bodies
    if isinstance(stmt, While):
        return [(ScopeTag.WHILE_BODY, stmt.body.stmts)]
    if isinstance(stmt, DoWhile):
        return [(ScopeTag.DOWHILE_BODY, stmt.body.stmts)]
    if isinstance(stmt, Switch):
        bodies = [(ScopeTag.CASE_ARM, case.body) for case in stmt.cases]
        if stmt.default is not None:
            bodies.append((ScopeTag.DEFAULT_ARM, stmt.default))
        return bodies
    return []


def assign_scope_paths(body: Block, root: ScopePath = ROOT_PATH) -> List[Tuple[object, ScopePath]]:
    """
    Caminho de scope de cada statement do corpo de uma função.

    Args:
        body: Corpo da função
        root: Caminho da raiz

    Returns:
        Pares (statement, caminho) em pré-ordem; `for` aparece já desugared
    """
    result = []

    def visit(stmts, path):
        for stmt in stmts:
            if isinstance(stmt, For):
                stmt = desugar_for(stmt)
            result.append((stmt, path))
            for tag, inner in nested_bodies(stmt):
                visit(inner, path if tag is None else path + (tag,))

    visit(body.stmts, tuple(root))
    return result


def slot_allocate(func: FuncDecl) -> Tuple[Tuple[str, int], ...]:
    """
    Slots locais por primeira ocorrência textual.

    Args:
        func: Declaração da função

    Returns:
        Pares (nome, slot): parâmetros primeiro, depois cada declaração local
        pela ordem do código (redeclarações em blocos disjuntos têm slots distintos)
    """
    names = [p.name for p in func.params]
    names.extend(node.name for node in walk(func.body) if isinstance(node, VarDecl))
    return tuple((name, slot) for slot, name in enumerate(names))


# ============================================================================
# Geração de código
# ============================================================================

class _Context:
    """Tabelas de símbolos globais partilhadas pelos compiladores de função."""

    def __init__(self, program: Program):
        self.global_types: Dict[str, str] = {g.name: g.type for g in program.globals}
        self.functions: Dict[str, Tuple[int, FuncDecl]] = {
            f.name: (i, f) for i, f in enumerate(program.functions)
        }


class _FunctionCompiler:

    def __init__(self, ctx: _Context, name: str, ret_type: Optional[str]):
        self.ctx = ctx
        self.name = name
        self.ret_type = ret_type
        self.code: List[LowToken] = []
        self.scopes: LocalScopes[Tuple[int, str]] = LocalScopes()
        self.next_slot = 0
        self.next_label = 0
        self.line: Optional[int] = None

    # ------------------------------------------------------------------
    # Utilitários
    # ------------------------------------------------------------------

    def emit(self, mnemonic: str, operand, path: ScopePath) -> None:
        self.code.append(LowToken(mnemonic, operand, path, self.line))

    def new_label(self) -> int:
        self.next_label += 1
        return self.next_label

    def declare(self, name: str, type_: str, pos) -> int:
        slot = self.next_slot
        self.next_slot += 1
        self.scopes.declare(name, (slot, type_), pos)
        return slot

    def finish(self, fid: int, param_count: int) -> LowFunction:
        code = _drop_unused_labels(self.code)
        func = LowFunction(fid, self.name, param_count, tuple(code), self.ret_type is not None)
        check_function(func)
        return func

    # ------------------------------------------------------------------
    # Tipos
    # ------------------------------------------------------------------

    def type_of(self, expr) -> Optional[str]:
        if isinstance(expr, IntLit) or isinstance(expr, Read):
            return INT
        if isinstance(expr, StrLit):
            return STR
        if isinstance(expr, BoolLit):
            return BOOL
        if isinstance(expr, NewArray):
            self.expect(expr.size, INT)
            return INT_ARRAY
        if isinstance(expr, Name):
            binding = self.scopes.lookup(expr.ident)
            if binding is not None:
                return binding[1]
            return self.ctx.global_types[expr.ident]
        if isinstance(expr, Index):
            self.expect(expr.target, INT_ARRAY)
            self.expect(expr.index, INT)
            return INT
        if isinstance(expr, Call):
            _, decl = self.ctx.functions[expr.name]
            if len(expr.args) != len(decl.params):
                raise CompileError(
                    f"{expr.name} expects {len(decl.params)} arguments, got {len(expr.args)}", expr.pos
                )
            for arg, param in zip(expr.args, decl.params):
                self.expect(arg, param.type)
            return decl.ret_type
        if isinstance(expr, Unary):
            self.expect(expr.operand, INT if expr.op == "-" else BOOL)
            return INT if expr.op == "-" else BOOL
        if isinstance(expr, Binary):
            if expr.op in ARITHMETIC_OPS:
                self.expect(expr.left, INT)
                self.expect(expr.right, INT)
                return INT
            if expr.op in LOGICAL_OPS:
                self.expect(expr.left, BOOL)
                self.expect(expr.right, BOOL)
                return BOOL
            if expr.op in ("==", "!="):
                left = self.type_of(expr.left)
                if left not in SCALAR_TYPES:
                    raise CompileError(f"cannot compare values of type {left}", expr.pos)
                self.expect(expr.right, left)
                return BOOL
            self.expect(expr.left, INT)
            self.expect(expr.right, INT)
            return BOOL
        raise TypeError(f"Expressão desconhecida: {type(expr).__name__}")

    def expect(self, expr, expected: str) -> None:
        actual = self.type_of(expr)
        if actual != expected:
            raise CompileError(f"type mismatch: expected {expected}, found {actual or 'void'}", expr.pos)

    # ------------------------------------------------------------------
    # Statements
    # ------------------------------------------------------------------

    def stmts(self, stmts, path: ScopePath) -> bool:
        """Compila uma sequência num bloco novo; devolve True se termina sempre em return."""
        terminates = False
        with self.scopes.block():
            for stmt in stmts:
                if terminates:
                    raise CompileError("unreachable code after return", stmt.pos)
                terminates = self.stmt(stmt, path)
        return terminates

    def stmt(self, stmt, path: ScopePath) -> bool:
        if stmt.pos is not None:
            self.line = stmt.pos[0]

        if isinstance(stmt, For):
            return self.stmt(desugar_for(stmt), path)
        if isinstance(stmt, Block):
            return self.stmts(stmt.stmts, path)
        if isinstance(stmt, VarDecl):
            if stmt.init is not None:
                self.expect(stmt.init, stmt.type)
                self.value(stmt.init, path)
            # A variável só fica visível depois do inicializador
            slot = self.declare(stmt.name, stmt.type, stmt.pos)
            if stmt.init is not None:
                self.emit(Op.STORE, slot, path)
            return False
        if isinstance(stmt, Assign):
            self.assign(expand_compound(stmt), path)
            return False
        if isinstance(stmt, If):
            return self.if_stmt(stmt, path)
        if isinstance(stmt, While):
            self.expect(stmt.cond, BOOL)
            top, end = self.new_label(), self.new_label()
            self.emit(Op.LABEL, top, path)
            self.branch_false(stmt.cond, end, path)
            self.stmts(stmt.body.stmts, path + (ScopeTag.WHILE_BODY,))
            self.emit(Op.GOTO, top, path)
            self.emit(Op.LABEL, end, path)
            return False
        if isinstance(stmt, DoWhile):
            self.expect(stmt.cond, BOOL)
            top = self.new_label()
            self.emit(Op.LABEL, top, path)
            self.stmts(stmt.body.stmts, path + (ScopeTag.DOWHILE_BODY,))
            self.branch_true(stmt.cond, top, path)
            return False
        if isinstance(stmt, Switch):
            return self.switch(stmt, path)
        if isinstance(stmt, Return):
            return self.return_stmt(stmt, path)
        if isinstance(stmt, ExprStmt):
            if self.type_of(stmt.expr) is not None:
                raise CompileError(f"value returned by {stmt.expr.name} is discarded", stmt.pos)
            self.value(stmt.expr, path)
            return False
        if isinstance(stmt, Print):
            type_ = self.type_of(stmt.value)
            if type_ not in SCALAR_TYPES:
                raise CompileError(f"cannot print a value of type {type_ or 'void'}", stmt.pos)
            self.value(stmt.value, path)
            self.emit(Op.PRINT, None, path)
            return False
        raise TypeError(f"Statement desconhecido: {type(stmt).__name__}")

    def assign(self, stmt: Assign, path: ScopePath) -> None:
        target = stmt.target
        if isinstance(target, Index):
            self.expect(target, INT)
            self.expect(stmt.value, INT)
            self.value(target.target, path)
            self.value(target.index, path)
            self.value(stmt.value, path)
            self.emit(Op.ASTOREIDX, None, path)
            return
        self.expect(stmt.value, self.type_of(target))
        self.value(stmt.value, path)
        binding = self.scopes.lookup(target.ident)
        if binding is not None:
            self.emit(Op.STORE, binding[0], path)
        else:
            self.emit(Op.GSTORE, target.ident, path)

    def if_stmt(self, stmt: If, path: ScopePath) -> bool:
        self.expect(stmt.cond, BOOL)
        else_label = self.new_label()
        self.branch_false(stmt.cond, else_label, path)
        then_terminates = self.stmts(stmt.then.stmts, path + (ScopeTag.THEN,))
        if stmt.orelse is None:
            self.emit(Op.LABEL, else_label, path)
            return False
        end_label = self.new_label()
        if not then_terminates:
            self.emit(Op.GOTO, end_label, path)
        self.emit(Op.LABEL, else_label, path)
        else_terminates = self.stmts(stmt.orelse.stmts, path + (ScopeTag.ELSE,))
        if not then_terminates:
            self.emit(Op.LABEL, end_label, path)
        return then_terminates and else_terminates

    def switch(self, stmt: Switch, path: ScopePath) -> bool:
        self.expect(stmt.selector, INT)
        start = len(self.code)
        self.value(stmt.selector, path)
        selector_len = len(self.code) - start

        arm_labels = tuple(self.new_label() for _ in stmt.cases)
        default_label, end_label = self.new_label(), self.new_label()
        table = SwitchTable(
            keys=tuple(case.value for case in stmt.cases),
            labels=arm_labels,
            default=default_label,
            end=end_label,
            selector_len=selector_len,
            has_default=stmt.default is not None,
        )
        self.emit(Op.SWITCH, table, path)

        all_terminate = True
        for case, label in zip(stmt.cases, arm_labels):
            self.emit(Op.LABEL, label, path)
            arm_terminates = self.stmts(case.body, path + (ScopeTag.CASE_ARM,))
            if not arm_terminates:
                self.emit(Op.GOTO, end_label, path)
            all_terminate = all_terminate and arm_terminates

        self.emit(Op.LABEL, default_label, path)
        if stmt.default is not None:
            all_terminate = self.stmts(stmt.default, path + (ScopeTag.DEFAULT_ARM,)) and all_terminate
        else:
            all_terminate = False
        self.emit(Op.LABEL, end_label, path)
        return all_terminate

    def return_stmt(self, stmt: Return, path: ScopePath) -> bool:
        if stmt.value is None:
            if self.ret_type is not None:
                raise CompileError(f"{self.name} must return a value of type {self.ret_type}", stmt.pos)
            self.emit(Op.RETURN, None, path)
            return True
        if self.ret_type is None:
            raise CompileError(f"{self.name} is void and cannot return a value", stmt.pos)
        self.expect(stmt.value, self.ret_type)
        self.value(stmt.value, path)
        self.emit(Op.RETVAL, None, path)
        return True

    # ------------------------------------------------------------------
    # Expressões
    # ------------------------------------------------------------------

    def value(self, expr, path: ScopePath) -> None:
        """Emite o código que deixa o valor de `expr` no topo da pilha."""
        if isinstance(expr, IntLit):
            self.emit(Op.CONST, (INT, expr.value), path)
        elif isinstance(expr, StrLit):
            self.emit(Op.CONST, (STR, expr.lexeme), path)
        elif isinstance(expr, BoolLit):
            self.emit(Op.CONST, (BOOL, expr.value), path)
        elif isinstance(expr, Name):
            binding = self.scopes.lookup(expr.ident)
            if binding is not None:
                self.emit(Op.LOAD, binding[0], path)
            else:
                self.emit(Op.GLOAD, expr.ident, path)
        elif isinstance(expr, Index):
            self.value(expr.target, path)
            self.value(expr.index, path)
            self.emit(Op.ALOADIDX, None, path)
        elif isinstance(expr, Call):
            fid, decl = self.ctx.functions[expr.name]
            for arg in expr.args:
                self.value(arg, path)
            target = CallTarget(fid, len(expr.args), decl.ret_type is not None, name=expr.name)
            self.emit(Op.INVOKE, target, path)
        elif isinstance(expr, Read):
            self.emit(Op.READ, None, path)
        elif isinstance(expr, NewArray):
            self.value(expr.size, path)
            self.emit(Op.NEWARRAY, None, path)
        elif isinstance(expr, Unary):
            if expr.op == "-" and isinstance(expr.operand, IntLit):
                # Literais negativos são constantes
                self.emit(Op.CONST, (INT, -expr.operand.value), path)
            else:
                self.value(expr.operand, path)
                self.emit(Op.NEG if expr.op == "-" else Op.NOT, None, path)
        elif isinstance(expr, Binary) and expr.op in ARITHMETIC_OPS:
            self.value(expr.left, path)
            self.value(expr.right, path)
            self.emit(_ARITH_OPCODES[expr.op], None, path)
        elif isinstance(expr, Binary):
            # Comparações e lógicos em posição de valor: losango true/false
            false_label, end_label = self.new_label(), self.new_label()
            self.branch_false(expr, false_label, path)
            self.emit(Op.CONST, (BOOL, True), path)
            self.emit(Op.GOTO, end_label, path)
            self.emit(Op.LABEL, false_label, path)
            self.emit(Op.CONST, (BOOL, False), path)
            self.emit(Op.LABEL, end_label, path)
        else:
            raise TypeError(f"Expressão desconhecida: {type(expr).__name__}")

    def branch_false(self, expr, label: int, path: ScopePath) -> None:
        """Salta para `label` quando `expr` é falsa."""
        if isinstance(expr, BoolLit):
            if not expr.value:
                self.emit(Op.GOTO, label, path)
        elif isinstance(expr, Unary) and expr.op == "!":
            self.branch_true(expr.operand, label, path)
        elif isinstance(expr, Binary) and expr.op == "&&":
            self.branch_false(expr.left, label, path)
            self.branch_false(expr.right, label, path)
        elif isinstance(expr, Binary) and expr.op == "||":
            true_label = self.new_label()
            self.branch_true(expr.left, true_label, path)
            self.branch_false(expr.right, label, path)
            self.emit(Op.LABEL, true_label, path)
        elif isinstance(expr, Binary) and expr.op in COMPARISON_OPS:
            self.value(expr.left, path)
            self.value(expr.right, path)
            self.emit(Op.IFCMP, CmpBranch(CMP_NEGATION[CMP_OPS[expr.op]], label), path)
        else:
            self.value(expr, path)
            self.emit(Op.IFFALSE, label, path)

    def branch_true(self, expr, label: int, path: ScopePath) -> None:
        """Salta para `label` quando `expr` é verdadeira."""
        if isinstance(expr, BoolLit):
            if expr.value:
                self.emit(Op.GOTO, label, path)
        elif isinstance(expr, Unary) and expr.op == "!":
            self.branch_false(expr.operand, label, path)
        elif isinstance(expr, Binary) and expr.op == "&&":
            false_label = self.new_label()
            self.branch_false(expr.left, false_label, path)
            self.branch_true(expr.right, label, path)
            self.emit(Op.LABEL, false_label, path)
        elif isinstance(expr, Binary) and expr.op == "||":
            self.branch_true(expr.left, label, path)
            self.branch_true(expr.right, label, path)
        elif isinstance(expr, Binary) and expr.op in COMPARISON_OPS:
            self.value(expr.left, path)
            self.value(expr.right, path)
            self.emit(Op.IFCMP, CmpBranch(CMP_OPS[expr.op], label), path)
        else:
            self.value(expr, path)
            self.emit(Op.NOT, None, path)
            self.emit(Op.IFFALSE, label, path)


def _drop_unused_labels(code: List[LowToken]) -> List[LowToken]:
    """
    Remove LABELs que nenhum salto (nem tabela de SWITCH) referencia.

    O fim de um switch cujos braços terminam todos em return desaparece; o
    corpo do default é então delimitado pelo prefixo do caminho de scope.
    """
    used = set()
    for tok in code:
        if tok.label_target is not None:
            used.add(tok.label_target)
        elif tok.mnemonic == Op.SWITCH:
            used.update(tok.operand.labels)
            used.add(tok.operand.default)
    return [t for t in code if t.mnemonic != Op.LABEL or t.operand in used]


# ============================================================================
# API
# ============================================================================

def _compile_function(ctx: _Context, fid: int, func: FuncDecl) -> LowFunction:
    fc = _FunctionCompiler(ctx, func.name, func.ret_type)
    with fc.scopes.block():
        for param in func.params:
            fc.declare(param.name, param.type, param.pos)
        terminates = fc.stmts(func.body.stmts, ROOT_PATH)
    if not terminates:
        if func.ret_type is not None:
            raise CompileError(f"missing return in {func.name}", func.pos)
        fc.emit(Op.RETURN, None, ROOT_PATH)
    return fc.finish(fid, len(func.params))


def _compile_init(ctx: _Context, program: Program, fid: int) -> LowFunction:
    fc = _FunctionCompiler(ctx, INIT_FUNCTION, None)
    with fc.scopes.block():
        for decl in program.globals:
            if decl.init is None:
                continue
            fc.line = decl.pos[0] if decl.pos else None
            fc.expect(decl.init, decl.type)
            fc.value(decl.init, ROOT_PATH)
            fc.emit(Op.GSTORE, decl.name, ROOT_PATH)
    fc.emit(Op.RETURN, None, ROOT_PATH)
    return fc.finish(fid, 0)


def compile_program(program: Program) -> LowProgram:
    """
    Compila uma AST resolvida para o IR.

    Args:
        program: AST resolvida

    Returns:
        LowProgram (funções pela ordem de declaração; `<init>` no fim, se existir)

    Raises:
        CompileError: Tipos incompatíveis, return em falta ou código inalcançável
    """
    ctx = _Context(program)
    functions = [_compile_function(ctx, fid, func) for fid, func in enumerate(program.functions)]
    if any(g.init is not None for g in program.globals):
        functions.append(_compile_init(ctx, program, len(functions)))

    entry_id = ctx.functions[ENTRY_FUNCTION][0]
    logger.debug(f"Compiladas {len(functions)} funções ({sum(len(f.body) for f in functions)} tokens)")
    return LowProgram(tuple(functions), entry_id)

