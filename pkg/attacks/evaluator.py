"""
Avaliador de referência MiniJ (oráculo de preservação semântica).

Interpreta a AST diretamente. Divisão e resto truncam em direção a zero
(como em Java); os inteiros não fazem overflow. Variáveis declaradas sem
inicializador começam com o valor default do tipo.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from common.frontend.loader import SourceUnit
from common.frontend.resolver import LocalScopes
from common.frontend.syntax import (
    Program, Block, VarDecl, Assign, If, While, DoWhile, For, Switch, Return,
    ExprStmt, Print, IntLit, StrLit, BoolLit, Name, Index, Call, Read, NewArray,
    Unary, Binary, INT, BOOL, STR,
)
from common.utils.config import config
from common.utils.constants import ENTRY_FUNCTION, MAX_CALL_DEPTH
from common.utils.errors import RuntimeFault, StepBudgetExceeded


Trace = Tuple[str, ...]


def default_value(type_: str) -> Any:
    if type_ == INT:
        return 0
    if type_ == BOOL:
        return False
    if type_ == STR:
        return ""
    return None


def format_value(value: Any) -> str:
    """Texto impresso por `print`."""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def java_div(a: int, b: int) -> int:
    if b == 0:
        raise RuntimeFault("division by zero")
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def java_rem(a: int, b: int) -> int:
    if b == 0:
        raise RuntimeFault("division by zero")
    return a - java_div(a, b) * b


class _Cell:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value


class _ReturnSignal(Exception):

    def __init__(self, value):
        self.value = value


@dataclass
class _Frame:
    scopes: LocalScopes
    depth: int


class Evaluator:
    """
    Interpretador de um programa sobre um script de input.

    Args:
        program: AST resolvida
        inputs: Valores devolvidos por `read()`, por ordem
        step_budget: Número máximo de passos (statements + expressões)
    """

    def __init__(self, program: Program, inputs: Sequence[int], step_budget: Optional[int] = None):
        self.program = program
        self.inputs = list(inputs)
        self.next_input = 0
        self.step_budget = step_budget if step_budget is not None else config.step_budget
        self.steps = 0
        self.output: List[str] = []
        self.functions = {f.name: f for f in program.functions}
        self.globals: Dict[str, _Cell] = {}

    def run(self) -> Trace:
        for decl in self.program.globals:
            self.globals[decl.name] = _Cell(default_value(decl.type))
        init_frame = _Frame(LocalScopes(), 0)
        with init_frame.scopes.block():
            for decl in self.program.globals:
                if decl.init is not None:
                    self.globals[decl.name].value = self.expr(decl.init, init_frame)
        self.call(ENTRY_FUNCTION, [], 0)
        return tuple(self.output)

    # ========================================================================
    # Utilitários
    # ========================================================================

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.step_budget:
            raise StepBudgetExceeded(f"more than {self.step_budget} steps")

    def cell(self, name: str, frame: _Frame) -> _Cell:
        local = frame.scopes.lookup(name)
        return local if local is not None else self.globals[name]

    def call(self, name: str, args: List[Any], depth: int) -> Any:
        if depth >= MAX_CALL_DEPTH:
            raise RuntimeFault(f"call depth exceeded in {name}")
        func = self.functions[name]
        frame = _Frame(LocalScopes(), depth + 1)
        with frame.scopes.block():
            for param, value in zip(func.params, args):
                frame.scopes.declare(param.name, _Cell(value))
            try:
                self.stmts(func.body.stmts, frame)
            except _ReturnSignal as signal:
                return signal.value
        return None

    # ========================================================================
    # Statements
    # ========================================================================

    def stmts(self, stmts, frame: _Frame) -> None:
        with frame.scopes.block():
            for stmt in stmts:
                self.stmt(stmt, frame)

    def stmt(self, stmt, frame: _Frame) -> None:
        self.tick()
        if isinstance(stmt, Block):
            self.stmts(stmt.stmts, frame)
        elif isinstance(stmt, VarDecl):
            value = self.expr(stmt.init, frame) if stmt.init is not None else default_value(stmt.type)
            frame.scopes.declare(stmt.name, _Cell(value))
        elif isinstance(stmt, Assign):
            self.assign(stmt, frame)
        elif isinstance(stmt, If):
            if self.expr(stmt.cond, frame):
                self.stmts(stmt.then.stmts, frame)
            elif stmt.orelse is not None:
                self.stmts(stmt.orelse.stmts, frame)
        elif isinstance(stmt, While):
            while self.expr(stmt.cond, frame):
                self.stmts(stmt.body.stmts, frame)
                self.tick()
        elif isinstance(stmt, DoWhile):
            while True:
                self.stmts(stmt.body.stmts, frame)
                self.tick()
                if not self.expr(stmt.cond, frame):
                    break
        elif isinstance(stmt, For):
            with frame.scopes.block():
                if stmt.init is not None:
                    self.stmt(stmt.init, frame)
                while stmt.cond is None or self.expr(stmt.cond, frame):
                    self.stmts(stmt.body.stmts, frame)
                    if stmt.update is not None:
                        self.stmt(stmt.update, frame)
                    self.tick()
        elif isinstance(stmt, Switch):
            selector = self.expr(stmt.selector, frame)
            for case in stmt.cases:
                if case.value == selector:
                    self.stmts(case.body, frame)
                    break
            else:
                if stmt.default is not None:
                    self.stmts(stmt.default, frame)
        elif isinstance(stmt, Return):
            raise _ReturnSignal(self.expr(stmt.value, frame) if stmt.value is not None else None)
        elif isinstance(stmt, ExprStmt):
            self.expr(stmt.expr, frame)
        elif isinstance(stmt, Print):
            self.output.append(format_value(self.expr(stmt.value, frame)))
        else:
            raise TypeError(f"Statement desconhecido: {type(stmt).__name__}")

    def assign(self, stmt: Assign, frame: _Frame) -> None:
        target = stmt.target
        if isinstance(target, Index):
            array = self.array(target.target, frame)
            index = self.index(array, self.expr(target.index, frame))
            value = self.expr(stmt.value, frame)
            if stmt.op != "=":
                value = self.arith(stmt.op[0], array[index], value)
            array[index] = value
            return
        cell = self.cell(target.ident, frame)
        value = self.expr(stmt.value, frame)
        if stmt.op != "=":
            value = self.arith(stmt.op[0], cell.value, value)
        cell.value = value

    # ========================================================================
    # Expressões
    # ========================================================================

    def array(self, expr, frame: _Frame) -> list:
        array = self.expr(expr, frame)
        if array is None:
            raise RuntimeFault("array used before initialisation")
        return array

    @staticmethod
    def index(array: list, index: int) -> int:
        if not 0 <= index < len(array):
            raise RuntimeFault(f"index {index} out of bounds for length {len(array)}")
        return index

    @staticmethod
    def arith(op: str, a: int, b: int) -> int:
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            return java_div(a, b)
        return java_rem(a, b)

    def expr(self, expr, frame: _Frame) -> Any:
        self.tick()
        if isinstance(expr, (IntLit, BoolLit)):
            return expr.value
        if isinstance(expr, StrLit):
            return expr.value
        if isinstance(expr, Name):
            return self.cell(expr.ident, frame).value
        if isinstance(expr, Index):
            array = self.array(expr.target, frame)
            return array[self.index(array, self.expr(expr.index, frame))]
        if isinstance(expr, Call):
            args = [self.expr(a, frame) for a in expr.args]
            return self.call(expr.name, args, frame.depth)
        if isinstance(expr, Read):
            if self.next_input >= len(self.inputs):
                raise RuntimeFault("input exhausted")
            value = self.inputs[self.next_input]
            self.next_input += 1
            return value
        if isinstance(expr, NewArray):
            size = self.expr(expr.size, frame)
            if size < 0:
                raise RuntimeFault(f"negative array size {size}")
            return [0] * size
        if isinstance(expr, Unary):
            value = self.expr(expr.operand, frame)
            return -value if expr.op == "-" else not value
        if isinstance(expr, Binary):
            if expr.op == "&&":
                return bool(self.expr(expr.left, frame)) and bool(self.expr(expr.right, frame))
            if expr.op == "||":
                return bool(self.expr(expr.left, frame)) or bool(self.expr(expr.right, frame))
            left = self.expr(expr.left, frame)
            right = self.expr(expr.right, frame)
            if expr.op == "==":
                return left == right
            if expr.op == "!=":
                return left != right
            if expr.op == "<":
                return left < right
            if expr.op == "<=":
                return left <= right
            if expr.op == ">":
                return left > right
            if expr.op == ">=":
                return left >= right
            return self.arith(expr.op, left, right)
        raise TypeError(f"Expressão desconhecida: {type(expr).__name__}")


def evaluate_program(
    unit: SourceUnit,
    inputs: Sequence[int],
    step_budget: Optional[int] = None,
) -> Trace:
    """
    Executa um programa e devolve o trace de output.

    Args:
        unit: Programa carregado
        inputs: Script de input (valores de `read()`)
        step_budget: Orçamento de passos (default: configuração)

    Returns:
        Valores impressos, por ordem

    Raises:
        RuntimeFault: Divisão por zero, índice fora dos limites, input esgotado
        StepBudgetExceeded: Orçamento de passos excedido
    """
    try:
        return Evaluator(unit.ast, inputs, step_budget).run()
    except RecursionError:
        raise RuntimeFault("call depth exceeded")
