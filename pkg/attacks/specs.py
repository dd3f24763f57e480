"""
Taxonomia de ataques de plágio (seis níveis inclusivos).

Cada tipo de ataque tem um nível mínimo. Um caso de nível n (2..5) aplica o
ataque de assinatura do nível n sobre uma cadeia de ataques de níveis
inferiores. O nível 6 parte da variante lógica e acumula a cadeia 2-4 e os
ataques de statements.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from common.utils.constants import PLAGIARISM_LEVELS


class AttackKind:
    """Tipos de ataque."""
    # Nível 1: comentários e whitespace
    COMMENT_STRIP = "comment-strip"
    WHITESPACE_REFLOW = "whitespace-reflow"
    RENAME_ENTRY_ARTIFACTS = "rename-entry-artifacts"
    # Nível 2: identificadores
    RENAME_LOCALS = "rename-locals"
    RENAME_FUNCTIONS = "rename-functions"
    # Nível 3: posição das declarações
    RELOCATE_DECL_IN_BLOCK = "relocate-decl-in-block"
    RELOCATE_DECL_TO_GLOBAL = "relocate-decl-to-global"
    RELOCATE_DECL_OUT_OF_LOOP = "relocate-decl-out-of-loop"
    # Nível 4: módulos
    INLINE_FUNCTION = "inline-function"
    EXTRACT_BLOCK = "extract-block"
    # Nível 5: statements
    WHILE_TO_FOR = "while-to-for"
    WHILE_TO_DOWHILE = "while-to-dowhile"
    SWAP_IF_ARMS = "swap-if-arms"
    EXPAND_COMPOUND_ASSIGN = "expand-compound-assign"
    SWITCH_TO_IFCHAIN = "switch-to-ifchain"
    # Nível 6: lógica
    LOGIC_REWRITE = "logic-rewrite"


MIN_LEVEL: Dict[str, int] = {
    AttackKind.COMMENT_STRIP: 1,
    AttackKind.WHITESPACE_REFLOW: 1,
    AttackKind.RENAME_ENTRY_ARTIFACTS: 1,
    AttackKind.RENAME_LOCALS: 2,
    AttackKind.RENAME_FUNCTIONS: 2,
    AttackKind.RELOCATE_DECL_IN_BLOCK: 3,
    AttackKind.RELOCATE_DECL_TO_GLOBAL: 3,
    AttackKind.RELOCATE_DECL_OUT_OF_LOOP: 3,
    AttackKind.INLINE_FUNCTION: 4,
    AttackKind.EXTRACT_BLOCK: 4,
    AttackKind.WHILE_TO_FOR: 5,
    AttackKind.WHILE_TO_DOWHILE: 5,
    AttackKind.SWAP_IF_ARMS: 5,
    AttackKind.EXPAND_COMPOUND_ASSIGN: 5,
    AttackKind.SWITCH_TO_IFCHAIN: 5,
    AttackKind.LOGIC_REWRITE: 6,
}

ALL_KINDS = tuple(MIN_LEVEL)

# Ataques puramente léxicos (não passam pela AST)
LEXICAL_KINDS = frozenset({
    AttackKind.COMMENT_STRIP,
    AttackKind.WHITESPACE_REFLOW,
})

# Fora da pontuação por nível (artefactos de IDE/autoria)
UNSCORED_KINDS = frozenset({AttackKind.RENAME_ENTRY_ARTIFACTS})

# Ciclo de ataques de assinatura por nível (caso i usa CYCLE[i % len])
SIGNATURE_CYCLES: Dict[int, Tuple[str, ...]] = {
    1: (AttackKind.COMMENT_STRIP, AttackKind.WHITESPACE_REFLOW),
    2: (AttackKind.RENAME_LOCALS, AttackKind.RENAME_FUNCTIONS),
    3: (
        AttackKind.RELOCATE_DECL_TO_GLOBAL,
        AttackKind.RELOCATE_DECL_IN_BLOCK,
        AttackKind.RELOCATE_DECL_TO_GLOBAL,
        AttackKind.RELOCATE_DECL_IN_BLOCK,
        AttackKind.RELOCATE_DECL_OUT_OF_LOOP,
        AttackKind.RELOCATE_DECL_TO_GLOBAL,
        AttackKind.RELOCATE_DECL_IN_BLOCK,
        AttackKind.RELOCATE_DECL_TO_GLOBAL,
        AttackKind.RELOCATE_DECL_IN_BLOCK,
        AttackKind.RELOCATE_DECL_TO_GLOBAL,
    ),
    4: (AttackKind.INLINE_FUNCTION, AttackKind.EXTRACT_BLOCK),
    5: (
        AttackKind.WHILE_TO_FOR,
        AttackKind.EXPAND_COMPOUND_ASSIGN,
        AttackKind.SWITCH_TO_IFCHAIN,
        AttackKind.WHILE_TO_FOR,
        AttackKind.WHILE_TO_DOWHILE,
        AttackKind.EXPAND_COMPOUND_ASSIGN,
        AttackKind.SWITCH_TO_IFCHAIN,
        AttackKind.WHILE_TO_FOR,
        AttackKind.SWAP_IF_ARMS,
        AttackKind.EXPAND_COMPOUND_ASSIGN,
    ),
    6: (AttackKind.LOGIC_REWRITE,),
}

# Alternativas quando a assinatura não se aplica ao programa
SIGNATURE_FALLBACKS: Dict[int, Tuple[str, ...]] = {
    1: (AttackKind.WHITESPACE_REFLOW,),
    2: (AttackKind.RENAME_LOCALS, AttackKind.RENAME_FUNCTIONS),
    3: (AttackKind.RELOCATE_DECL_IN_BLOCK, AttackKind.RELOCATE_DECL_TO_GLOBAL),
    4: (AttackKind.EXTRACT_BLOCK, AttackKind.INLINE_FUNCTION),
    5: (
        AttackKind.WHILE_TO_FOR,
        AttackKind.EXPAND_COMPOUND_ASSIGN,
        AttackKind.SWITCH_TO_IFCHAIN,
    ),
    6: (),
}

# Cadeia de níveis inferiores: só ataques neutros em relação ao scope.
# Para cada nível, os tipos são tentados por ordem; aplicam-se todos os que
# estão num grupo "all", ou o primeiro aplicável num grupo "first".
CHAIN_STEPS: Dict[int, Tuple[str, Tuple[str, ...]]] = {
    2: ("all", (AttackKind.RENAME_LOCALS, AttackKind.RENAME_FUNCTIONS)),
    3: ("first", (AttackKind.RELOCATE_DECL_TO_GLOBAL, AttackKind.RELOCATE_DECL_IN_BLOCK)),
    4: ("first", (AttackKind.INLINE_FUNCTION, AttackKind.EXTRACT_BLOCK)),
}

# Ataques de fluxo: um caso que os leva fica só com a cadeia dos níveis 2-3
FLOW_KINDS = frozenset({AttackKind.WHILE_TO_DOWHILE})

# Nível 6: depois da variante lógica e da cadeia 2-4, todos os ataques de
# statements aplicáveis, por esta ordem
LOGIC_STATEMENT_STACK: Tuple[str, ...] = (
    AttackKind.SWAP_IF_ARMS,
    AttackKind.EXPAND_COMPOUND_ASSIGN,
    AttackKind.SWITCH_TO_IFCHAIN,
    AttackKind.WHILE_TO_FOR,
)


@dataclass(frozen=True)
class AttackSpec:
    """
    Um ataque a aplicar.

    Attributes:
        level: Nível do caso em que o ataque entra (1..6)
        kind: Tipo (ver AttackKind)
        seed: Semente determinística das escolhas do ataque
        target: Descrição do alvo escolhido (preenchida depois de aplicado)
    """
    level: int
    kind: str
    seed: int
    target: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in MIN_LEVEL:
            raise ValueError(f"Tipo de ataque desconhecido: {self.kind}")
        if self.level not in PLAGIARISM_LEVELS:
            raise ValueError(f"Nível inválido: {self.level}")
        if self.level < MIN_LEVEL[self.kind]:
            raise ValueError(
                f"{self.kind} é de nível {MIN_LEVEL[self.kind]}, não pode entrar num caso de nível {self.level}"
            )
        if not isinstance(self.seed, int):
            raise TypeError("seed deve ser int")

    @property
    def min_level(self) -> int:
        return MIN_LEVEL[self.kind]

    @property
    def is_lexical(self) -> bool:
        return self.kind in LEXICAL_KINDS

    def with_target(self, target: str) -> 'AttackSpec':
        return AttackSpec(self.level, self.kind, self.seed, target)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "level": self.level,
            "min_level": self.min_level,
            "seed": self.seed,
            "target": self.target,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AttackSpec':
        return cls(int(data["level"]), data["kind"], int(data["seed"]), data.get("target"))


def signature_kind(level: int, case_index: int) -> str:
    """Ataque de assinatura do caso `case_index` de um nível."""
    cycle = SIGNATURE_CYCLES[level]
    return cycle[case_index % len(cycle)]
