"""
Representação de baixo nível (IR de máquina de pilha).

Cada instrução é um LowToken imutável com mnemónica, operando opcional e o
caminho de scope (tags das construções de controlo que a envolvem).
"""

from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Hashable, Optional, Tuple


ScopePath = Tuple[str, ...]


class Op:
    """Opcodes do IR."""
    CONST = "CONST"
    LOAD = "LOAD"
    STORE = "STORE"
    GLOAD = "GLOAD"
    GSTORE = "GSTORE"
    ADD = "ADD"
    SUB = "SUB"
    MUL = "MUL"
    DIV = "DIV"
    REM = "REM"
    NEG = "NEG"
    NOT = "NOT"
    IFCMP = "IFCMP"
    IFFALSE = "IFFALSE"
    GOTO = "GOTO"
    SWITCH = "SWITCH"
    LABEL = "LABEL"
    INVOKE = "INVOKE"
    RETURN = "RETURN"
    RETVAL = "RETVAL"
    PRINT = "PRINT"
    READ = "READ"
    NEWARRAY = "NEWARRAY"
    ALOADIDX = "ALOADIDX"
    ASTOREIDX = "ASTOREIDX"

    ALL = frozenset({
        CONST, LOAD, STORE, GLOAD, GSTORE, ADD, SUB, MUL, DIV, REM, NEG, NOT,
        IFCMP, IFFALSE, GOTO, SWITCH, LABEL, INVOKE, RETURN, RETVAL, PRINT,
        READ, NEWARRAY, ALOADIDX, ASTOREIDX,
    })
    BRANCHES = frozenset({IFCMP, IFFALSE, GOTO, SWITCH})
    TERMINATORS = frozenset({GOTO, RETURN, RETVAL})


class ScopeTag:
    """Tags de scope. O caminho começa sempre por ROOT."""
    ROOT = "fn"
    WHILE_BODY = "while-body"
    DOWHILE_BODY = "dowhile-body"
    THEN = "then"
    ELSE = "else"
    CASE_ARM = "case-arm"
    DEFAULT_ARM = "default-arm"

    NESTED = frozenset({WHILE_BODY, DOWHILE_BODY, THEN, ELSE, CASE_ARM, DEFAULT_ARM})


# Comparações do IFCMP e respetivas negações
CMP_OPS = {"<": "LT", "<=": "LE", ">": "GT", ">=": "GE", "==": "EQ", "!=": "NE"}
CMP_NEGATION = {"LT": "GE", "LE": "GT", "GT": "LE", "GE": "LT", "EQ": "NE", "NE": "EQ"}


@dataclass(frozen=True)
class CmpBranch:
    """Operando do IFCMP; `label` é None depois da generalização."""
    cmp: str
    label: Optional[int] = None

    def __post_init__(self):
        if self.cmp not in CMP_NEGATION:
            raise ValueError(f"Comparação inválida: {self.cmp}")


@dataclass(frozen=True)
class CallTarget:
    """
    Operando do INVOKE.

    O nome é apenas metadata: não entra na igualdade. `arg_slots` é
    preenchido pela remoção de argumentos: para cada argumento, o slot do
    chamador quando a preparação era um único LOAD (None nos outros casos).
    """
    fid: int
    argc: int
    returns: bool
    name: Optional[str] = field(default=None, compare=False)
    arg_slots: Tuple[Optional[int], ...] = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class SwitchTable:
    """
    Operando do SWITCH.

    `selector_len` é o número de tokens do seletor emitidos imediatamente
    antes do SWITCH; `has_default` distingue um `default:` vazio da ausência
    de default.
    """
    keys: Tuple[int, ...]
    labels: Tuple[int, ...]
    default: int
    end: int
    selector_len: int
    has_default: bool = False

    def __post_init__(self):
        if len(self.keys) != len(self.labels):
            raise ValueError("keys e labels devem ter o mesmo tamanho")
        if len(set(self.keys)) != len(self.keys):
            raise ValueError("chaves duplicadas no SWITCH")

    @property
    def arms(self) -> int:
        return len(self.keys)


@dataclass(frozen=True)
class LowToken:
    """
    Instrução do IR.

    Attributes:
        mnemonic: Opcode (ver Op)
        operand: Constante, slot, nome global, label, CmpBranch, CallTarget ou SwitchTable
        scope_path: Tags de scope a partir da raiz da função
        line: Linha de origem (apenas diagnóstico)
    """
    mnemonic: str
    operand: Hashable = None
    scope_path: ScopePath = (ScopeTag.ROOT,)
    line: Optional[int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.mnemonic not in Op.ALL:
            raise ValueError(f"Opcode desconhecido: {self.mnemonic}")
        if not self.scope_path or self.scope_path[0] != ScopeTag.ROOT:
            raise ValueError(f"scope_path inválido: {self.scope_path}")
        if any(tag not in ScopeTag.NESTED for tag in self.scope_path[1:]):
            raise ValueError(f"scope_path inválido: {self.scope_path}")

    @property
    def label_target(self) -> Optional[int]:
        """Label referenciada por um salto (None quando não há)."""
        if self.mnemonic == Op.IFCMP:
            return self.operand.label
        if self.mnemonic in (Op.IFFALSE, Op.GOTO):
            return self.operand
        return None

    def with_path(self, scope_path: ScopePath) -> 'LowToken':
        return replace(self, scope_path=scope_path)

    def with_operand(self, operand) -> 'LowToken':
        return replace(self, operand=operand)


def stack_effect(token: LowToken) -> Tuple[int, int]:
    """
    Efeito na pilha de uma instrução.

    Returns:
        (pops, pushes)
    """
    op = token.mnemonic
    if op in (Op.CONST, Op.LOAD, Op.GLOAD, Op.READ):
        return (0, 1)
    if op in (Op.STORE, Op.GSTORE, Op.IFFALSE, Op.RETVAL, Op.PRINT, Op.SWITCH):
        return (1, 0)
    if op in (Op.ADD, Op.SUB, Op.MUL, Op.DIV, Op.REM, Op.ALOADIDX):
        return (2, 1)
    if op in (Op.NEG, Op.NOT, Op.NEWARRAY):
        return (1, 1)
    if op == Op.IFCMP:
        return (2, 0)
    if op == Op.ASTOREIDX:
        return (3, 0)
    if op == Op.INVOKE:
        return (token.operand.argc, 1 if token.operand.returns else 0)
    return (0, 0)


@dataclass(frozen=True)
class LowFunction:
    """
    Função compilada.

    Attributes:
        fid: Índice de declaração (`<init>` fica com o último id)
        name: Nome da função
        param_count: Número de parâmetros
        body: Instruções
        returns: True se devolve valor (RETVAL)
    """
    fid: int
    name: str
    param_count: int
    body: Tuple[LowToken, ...]
    returns: bool = False

    def __post_init__(self):
        if self.param_count < 0:
            raise ValueError("param_count não pode ser negativo")
        if not self.body or self.body[-1].mnemonic not in (Op.RETURN, Op.RETVAL):
            raise ValueError(f"{self.name}: corpo deve terminar em RETURN ou RETVAL")

    @property
    def invoked_ids(self) -> FrozenSet[int]:
        return frozenset(t.operand.fid for t in self.body if t.mnemonic == Op.INVOKE)


@dataclass(frozen=True)
class LowProgram:
    """Programa compilado; funções ordenadas por fid."""
    functions: Tuple[LowFunction, ...]
    entry_id: int

    def __post_init__(self):
        if [f.fid for f in self.functions] != list(range(len(self.functions))):
            raise ValueError("fids devem ser 0..n-1 por ordem")
        known = {f.fid for f in self.functions}
        for func in self.functions:
            missing = func.invoked_ids - known
            if missing:
                raise ValueError(f"{func.name}: chamadas a funções inexistentes {sorted(missing)}")

    def function(self, fid: int) -> LowFunction:
        return self.functions[fid]

    def by_name(self, name: str) -> Optional[LowFunction]:
        return next((f for f in self.functions if f.name == name), None)

    @property
    def entry(self) -> LowFunction:
        return self.functions[self.entry_id]

    @property
    def names(self) -> Dict[int, str]:
        return {f.fid: f.name for f in self.functions}
