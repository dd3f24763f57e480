"""
Resolução de nomes MiniJ.

Regras:
- globais e funções partilham um único espaço de nomes;
- cada função tem um espaço de locais por blocos; um local pode esconder uma
  global mas nunca outro local (nem parâmetro) ainda visível;
- um local só é visível depois da sua declaração;
- inicializadores globais só podem referir globais declaradas antes;
- existe exatamente uma função `main`, sem parâmetros.
"""

from typing import Dict, Generic, Iterator, List, Optional, TypeVar
from contextlib import contextmanager

from common.frontend.syntax import (
    Program, GlobalDecl, FuncDecl, Block, VarDecl, Assign, If, While, DoWhile,
    For, Switch, Return, ExprStmt, Print, Name, Index, Call, Read, NewArray,
    Unary, Binary, IntLit, StrLit, BoolLit,
)
from common.utils.constants import ENTRY_FUNCTION
from common.utils.errors import ResolveError


T = TypeVar("T")


class LocalScopes(Generic[T]):
    """
    Pilha de blocos de uma função.

    Usada pelo resolver (valor = tipo) e pelo compilador (valor = slot e tipo).
    """

    def __init__(self):
        self._frames: List[Dict[str, T]] = []

    @contextmanager
    def block(self) -> Iterator[None]:
        self._frames.append({})
        try:
            yield
        finally:
            self._frames.pop()

    def declare(self, name: str, value: T, position=None) -> None:
        if self.lookup(name) is not None:
            raise ResolveError(name, position, "duplicate local")
        self._frames[-1][name] = value

    def lookup(self, name: str) -> Optional[T]:
        for frame in reversed(self._frames):
            if name in frame:
                return frame[name]
        return None


class _Resolver:

    def __init__(self, program: Program):
        self.program = program
        self.globals: Dict[str, GlobalDecl] = {}
        self.functions: Dict[str, FuncDecl] = {}
        self.locals: LocalScopes[str] = LocalScopes()

    def run(self) -> None:
        for decl in self.program.decls:
            if decl.name in self.globals or decl.name in self.functions:
                raise ResolveError(decl.name, decl.pos, "duplicate declaration")
            if isinstance(decl, FuncDecl):
                self.functions[decl.name] = decl
            else:
                self.globals[decl.name] = decl

        entry = self.functions.get(ENTRY_FUNCTION)
        if entry is None:
            raise ResolveError(ENTRY_FUNCTION, None, "missing entry function")
        if entry.params:
            raise ResolveError(ENTRY_FUNCTION, entry.pos, "entry function must not take parameters")

        visible_globals = set()
        for decl in self.program.decls:
            if isinstance(decl, GlobalDecl):
                if decl.init is not None:
                    self._expr(decl.init, visible_globals)
                visible_globals.add(decl.name)

        all_globals = set(self.globals)
        for func in self.program.functions:
            with self.locals.block():
                for param in func.params:
                    self.locals.declare(param.name, param.type, param.pos)
                # O corpo partilha o frame dos parâmetros
                self._stmts(func.body.stmts, all_globals)

    # ========================================================================
    # Statements
    # ========================================================================

    def _stmts(self, stmts, globals_) -> None:
        for stmt in stmts:
            self._stmt(stmt, globals_)

    def _block(self, block: Block, globals_) -> None:
        with self.locals.block():
            self._stmts(block.stmts, globals_)

    def _stmt(self, stmt, globals_) -> None:
        if isinstance(stmt, Block):
            self._block(stmt, globals_)
        elif isinstance(stmt, VarDecl):
            if stmt.init is not None:
                self._expr(stmt.init, globals_)
            self.locals.declare(stmt.name, stmt.type, stmt.pos)
        elif isinstance(stmt, Assign):
            self._expr(stmt.target, globals_)
            self._expr(stmt.value, globals_)
        elif isinstance(stmt, If):
            self._expr(stmt.cond, globals_)
            self._block(stmt.then, globals_)
            if stmt.orelse is not None:
                self._block(stmt.orelse, globals_)
        elif isinstance(stmt, While):
            self._expr(stmt.cond, globals_)
            self._block(stmt.body, globals_)
        elif isinstance(stmt, DoWhile):
            self._block(stmt.body, globals_)
            self._expr(stmt.cond, globals_)
        elif isinstance(stmt, For):
            with self.locals.block():
                if stmt.init is not None:
                    self._stmt(stmt.init, globals_)
                if stmt.cond is not None:
                    self._expr(stmt.cond, globals_)
                if stmt.update is not None:
                    self._stmt(stmt.update, globals_)
                self._block(stmt.body, globals_)
        elif isinstance(stmt, Switch):
            self._expr(stmt.selector, globals_)
            seen = set()
            for case in stmt.cases:
                if case.value in seen:
                    raise ResolveError(str(case.value), case.pos, "duplicate case label")
                seen.add(case.value)
                with self.locals.block():
                    self._stmts(case.body, globals_)
            if stmt.default is not None:
                with self.locals.block():
                    self._stmts(stmt.default, globals_)
        elif isinstance(stmt, Return):
            if stmt.value is not None:
                self._expr(stmt.value, globals_)
        elif isinstance(stmt, (ExprStmt, Print)):
            self._expr(stmt.expr if isinstance(stmt, ExprStmt) else stmt.value, globals_)
        else:
            raise TypeError(f"Statement desconhecido: {type(stmt).__name__}")

    # ========================================================================
    # Expressões
    # ========================================================================

    def _expr(self, expr, globals_) -> None:
        if isinstance(expr, Name):
            if self.locals.lookup(expr.ident) is not None:
                return
            if expr.ident in globals_:
                return
            if expr.ident in self.functions:
                raise ResolveError(expr.ident, expr.pos, "function used as a value")
            raise ResolveError(expr.ident, expr.pos)
        if isinstance(expr, Call):
            if expr.name not in self.functions:
                if self.locals.lookup(expr.name) is not None or expr.name in self.globals:
                    raise ResolveError(expr.name, expr.pos, "not a function")
                raise ResolveError(expr.name, expr.pos)
            for arg in expr.args:
                self._expr(arg, globals_)
            return
        if isinstance(expr, Index):
            self._expr(expr.target, globals_)
            self._expr(expr.index, globals_)
        elif isinstance(expr, NewArray):
            self._expr(expr.size, globals_)
        elif isinstance(expr, Unary):
            self._expr(expr.operand, globals_)
        elif isinstance(expr, Binary):
            self._expr(expr.left, globals_)
            self._expr(expr.right, globals_)
        elif not isinstance(expr, (IntLit, StrLit, BoolLit, Read)):
            raise TypeError(f"Expressão desconhecida: {type(expr).__name__}")


def resolve(program: Program) -> Program:
    """
    Valida a resolução de nomes de um programa.

    Args:
        program: AST produzida pelo parser

    Returns:
        O mesmo programa (para encadeamento)

    Raises:
        ResolveError: Nome não resolvido, declaração duplicada ou `main` inválido
    """
    _Resolver(program).run()
    return program
