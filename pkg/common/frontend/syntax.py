"""
Árvore sintática (AST) da linguagem MiniJ.

Os nós são dataclasses imutáveis. A posição (`pos`) não entra na igualdade,
por isso duas árvores com o mesmo conteúdo são estruturalmente iguais
independentemente do layout do código fonte.
"""

from dataclasses import dataclass, field, fields
from typing import Iterator, Optional, Tuple, Union


Position = Optional[Tuple[int, int]]

# Tipos MiniJ: "int", "bool", "str", "int[]"; None = void
INT = "int"
BOOL = "bool"
STR = "str"
INT_ARRAY = "int[]"
SCALAR_TYPES = (INT, BOOL, STR)
VALUE_TYPES = (INT, BOOL, STR, INT_ARRAY)


def _pos():
    return field(default=None, compare=False, repr=False)


# ============================================================================
# Expressões
# ============================================================================

@dataclass(frozen=True)
class IntLit:
    value: int
    pos: Position = _pos()


@dataclass(frozen=True)
class StrLit:
    lexeme: str  # com aspas, tal como no código fonte
    pos: Position = _pos()

    @property
    def value(self) -> str:
        return self.lexeme[1:-1]


@dataclass(frozen=True)
class BoolLit:
    value: bool
    pos: Position = _pos()


@dataclass(frozen=True)
class Name:
    ident: str
    pos: Position = _pos()


@dataclass(frozen=True)
class Index:
    target: 'Expr'
    index: 'Expr'
    pos: Position = _pos()


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple['Expr', ...]
    pos: Position = _pos()


@dataclass(frozen=True)
class Read:
    pos: Position = _pos()


@dataclass(frozen=True)
class NewArray:
    size: 'Expr'
    pos: Position = _pos()


@dataclass(frozen=True)
class Unary:
    op: str  # "-" ou "!"
    operand: 'Expr'
    pos: Position = _pos()


@dataclass(frozen=True)
class Binary:
    op: str
    left: 'Expr'
    right: 'Expr'
    pos: Position = _pos()


Expr = Union[IntLit, StrLit, BoolLit, Name, Index, Call, Read, NewArray, Unary, Binary]

COMPARISON_OPS = ("<", "<=", ">", ">=", "==", "!=")
ARITHMETIC_OPS = ("+", "-", "*", "/", "%")
LOGICAL_OPS = ("&&", "||")
COMPOUND_OPS = ("+=", "-=", "*=", "/=", "%=")

# Precedência (maior = liga mais)
PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "==": 3, "!=": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6, "%": 6,
}
UNARY_PRECEDENCE = 7


# ============================================================================
# Statements
# ============================================================================

@dataclass(frozen=True)
class Block:
    stmts: Tuple['Stmt', ...]
    pos: Position = _pos()


@dataclass(frozen=True)
class VarDecl:
    type: str
    name: str
    init: Optional[Expr]
    pos: Position = _pos()


@dataclass(frozen=True)
class Assign:
    target: Union[Name, Index]
    op: str  # "=" ou operador composto
    value: Expr
    pos: Position = _pos()


@dataclass(frozen=True)
class If:
    cond: Expr
    then: Block
    orelse: Optional[Block]
    pos: Position = _pos()


@dataclass(frozen=True)
class While:
    cond: Expr
    body: Block
    pos: Position = _pos()


@dataclass(frozen=True)
class DoWhile:
    body: Block
    cond: Expr
    pos: Position = _pos()


@dataclass(frozen=True)
class For:
    init: Optional[Union[VarDecl, Assign]]
    cond: Optional[Expr]
    update: Optional[Assign]
    body: Block
    pos: Position = _pos()


@dataclass(frozen=True)
class Case:
    value: int
    body: Tuple['Stmt', ...]
    pos: Position = _pos()


@dataclass(frozen=True)
class Switch:
    selector: Expr
    cases: Tuple[Case, ...]
    default: Optional[Tuple['Stmt', ...]]
    pos: Position = _pos()


@dataclass(frozen=True)
class Return:
    value: Optional[Expr]
    pos: Position = _pos()


@dataclass(frozen=True)
class ExprStmt:
    expr: Call
    pos: Position = _pos()


@dataclass(frozen=True)
class Print:
    value: Expr
    pos: Position = _pos()


Stmt = Union[Block, VarDecl, Assign, If, While, DoWhile, For, Switch, Return, ExprStmt, Print]


# ============================================================================
# Declarações de topo
# ============================================================================

@dataclass(frozen=True)
class GlobalDecl:
    type: str
    name: str
    init: Optional[Expr]
    pos: Position = _pos()


@dataclass(frozen=True)
class Param:
    type: str
    name: str
    typed: bool = True  # False quando o tipo foi omitido (`fn f(a)`)
    pos: Position = _pos()


@dataclass(frozen=True)
class FuncDecl:
    name: str
    params: Tuple[Param, ...]
    ret_type: Optional[str]
    body: Block
    pos: Position = _pos()


@dataclass(frozen=True)
class Program:
    """Programa: declarações globais e funções, pela ordem do código fonte."""
    decls: Tuple[Union[GlobalDecl, FuncDecl], ...]

    @property
    def globals(self) -> Tuple[GlobalDecl, ...]:
        return tuple(d for d in self.decls if isinstance(d, GlobalDecl))

    @property
    def functions(self) -> Tuple[FuncDecl, ...]:
        return tuple(d for d in self.decls if isinstance(d, FuncDecl))

    def function(self, name: str) -> Optional[FuncDecl]:
        return next((f for f in self.functions if f.name == name), None)


Ast = Program


# ============================================================================
# Travessia
# ============================================================================

def children(node) -> Iterator:
    """Filhos diretos de um nó (expressões, statements, casos)."""
    for f in fields(node):
        if f.name == "pos":
            continue
        value = getattr(node, f.name)
        if isinstance(value, tuple):
            for item in value:
                if hasattr(item, "__dataclass_fields__"):
                    yield item
        elif hasattr(value, "__dataclass_fields__"):
            yield value


def walk(node) -> Iterator:
    """Percorre a árvore em pré-ordem."""
    yield node
    for child in children(node):
        yield from walk(child)
