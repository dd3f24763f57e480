"""
Pretty printer canónico MiniJ.

Chavetas K&R, parênteses mínimos segundo a precedência e cadeias `else if`.
Comentários não são preservados (a AST não os guarda).
"""

from typing import List

from common.frontend.syntax import (
    Program, FuncDecl, Block, VarDecl, Assign, If, While, DoWhile,
    For, Switch, Return, ExprStmt, Print, IntLit, StrLit, BoolLit, Name, Index,
    Call, Read, NewArray, Unary, Binary, PRECEDENCE, UNARY_PRECEDENCE,
)


ATOM_PRECEDENCE = 8


def _precedence(expr) -> int:
    if isinstance(expr, Binary):
        return PRECEDENCE[expr.op]
    if isinstance(expr, Unary):
        return UNARY_PRECEDENCE
    return ATOM_PRECEDENCE


def format_expr(expr) -> str:
    """Texto de uma expressão com parênteses mínimos."""
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, StrLit):
        return expr.lexeme
    if isinstance(expr, BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, Name):
        return expr.ident
    if isinstance(expr, Read):
        return "read()"
    if isinstance(expr, NewArray):
        return f"new int[{format_expr(expr.size)}]"
    if isinstance(expr, Call):
        return f"{expr.name}({', '.join(format_expr(a) for a in expr.args)})"
    if isinstance(expr, Index):
        target = format_expr(expr.target)
        if _precedence(expr.target) < ATOM_PRECEDENCE:
            target = f"({target})"
        return f"{target}[{format_expr(expr.index)}]"
    if isinstance(expr, Unary):
        operand = format_expr(expr.operand)
        if _precedence(expr.operand) < UNARY_PRECEDENCE:
            operand = f"({operand})"
        return f"{expr.op}{operand}"
    if isinstance(expr, Binary):
        prec = PRECEDENCE[expr.op]
        left = format_expr(expr.left)
        right = format_expr(expr.right)
        if _precedence(expr.left) < prec:
            left = f"({left})"
        # Operadores binários associam à esquerda
        if _precedence(expr.right) <= prec:
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    raise TypeError(f"Expressão desconhecida: {type(expr).__name__}")


def _format_simple(stmt) -> str:
    """VarDecl/Assign sem `;` (também usados no cabeçalho do for)."""
    if isinstance(stmt, VarDecl):
        if stmt.init is None:
            return f"{stmt.type} {stmt.name}"
        return f"{stmt.type} {stmt.name} = {format_expr(stmt.init)}"
    return f"{format_expr(stmt.target)} {stmt.op} {format_expr(stmt.value)}"


class _Printer:

    def __init__(self, indent: int):
        self.unit = " " * indent
        self.lines: List[str] = []

    def emit(self, depth: int, text: str) -> None:
        self.lines.append(f"{self.unit * depth}{text}")

    def program(self, program: Program) -> str:
        previous = None
        for decl in program.decls:
            if isinstance(decl, FuncDecl):
                if previous is not None:
                    self.lines.append("")
                self.function(decl)
            else:
                if isinstance(previous, FuncDecl):
                    self.lines.append("")
                self.emit(0, _format_simple(VarDecl(decl.type, decl.name, decl.init)) + ";")
            previous = decl
        return "\n".join(self.lines) + "\n" if self.lines else ""

    def function(self, func: FuncDecl) -> None:
        params = ", ".join(
            f"{p.type} {p.name}" if p.typed else p.name for p in func.params
        )
        ret = f": {func.ret_type}" if func.ret_type else ""
        self.emit(0, f"fn {func.name}({params}){ret} {{")
        self.stmts(func.body.stmts, 1)
        self.emit(0, "}")

    def stmts(self, stmts, depth: int) -> None:
        for stmt in stmts:
            self.stmt(stmt, depth)

    def stmt(self, stmt, depth: int) -> None:
        if isinstance(stmt, (VarDecl, Assign)):
            self.emit(depth, _format_simple(stmt) + ";")
        elif isinstance(stmt, Block):
            self.emit(depth, "{")
            self.stmts(stmt.stmts, depth + 1)
            self.emit(depth, "}")
        elif isinstance(stmt, If):
            self._if(stmt, depth, "if")
        elif isinstance(stmt, While):
            self.emit(depth, f"while ({format_expr(stmt.cond)}) {{")
            self.stmts(stmt.body.stmts, depth + 1)
            self.emit(depth, "}")
        elif isinstance(stmt, DoWhile):
            self.emit(depth, "do {")
            self.stmts(stmt.body.stmts, depth + 1)
            self.emit(depth, f"}} while ({format_expr(stmt.cond)});")
        elif isinstance(stmt, For):
            init = _format_simple(stmt.init) if stmt.init is not None else ""
            cond = format_expr(stmt.cond) if stmt.cond is not None else ""
            update = _format_simple(stmt.update) if stmt.update is not None else ""
            self.emit(depth, f"for ({init}; {cond}; {update}) {{")
            self.stmts(stmt.body.stmts, depth + 1)
            self.emit(depth, "}")
        elif isinstance(stmt, Switch):
            self.emit(depth, f"switch ({format_expr(stmt.selector)}) {{")
            for case in stmt.cases:
                self.emit(depth + 1, f"case {case.value}:")
                self.stmts(case.body, depth + 2)
            if stmt.default is not None:
                self.emit(depth + 1, "default:")
                self.stmts(stmt.default, depth + 2)
            self.emit(depth, "}")
        elif isinstance(stmt, Return):
            if stmt.value is None:
                self.emit(depth, "return;")
            else:
                self.emit(depth, f"return {format_expr(stmt.value)};")
        elif isinstance(stmt, ExprStmt):
            self.emit(depth, format_expr(stmt.expr) + ";")
        elif isinstance(stmt, Print):
            self.emit(depth, f"print({format_expr(stmt.value)});")
        else:
            raise TypeError(f"Statement desconhecido: {type(stmt).__name__}")

    def _if(self, stmt: If, depth: int, keyword: str) -> None:
        self.emit(depth, f"{keyword} ({format_expr(stmt.cond)}) {{")
        self.stmts(stmt.then.stmts, depth + 1)
        orelse = stmt.orelse
        if orelse is None:
            self.emit(depth, "}")
        elif len(orelse.stmts) == 1 and isinstance(orelse.stmts[0], If):
            self._if(orelse.stmts[0], depth, "} else if")
        else:
            self.emit(depth, "} else {")
            self.stmts(orelse.stmts, depth + 1)
            self.emit(depth, "}")


def print_program(program: Program, indent: int = 4) -> str:
    """
    Converte uma AST em código fonte canónico.

    Args:
        program: AST a imprimir
        indent: Espaços por nível de aninhamento

    Returns:
        Texto terminado em newline (vazio para um programa vazio)
    """
    if indent < 1:
        raise ValueError("indent deve ser positivo")
    return _Printer(indent).program(program)
