"""
Configuração das três abordagens (STA, LLA, Ext-LLA).
"""

from dataclasses import dataclass

from common.utils.constants import (
    APPROACH_STA,
    APPROACH_LLA,
    APPROACH_EXT_LLA,
    APPROACH_ORDER,
    DEFAULT_MIN_MATCH,
)


class Approach:
    """Identificadores das abordagens (valores usados na CLI e nos relatórios)."""
    STA = APPROACH_STA
    LLA = APPROACH_LLA
    EXT_LLA = APPROACH_EXT_LLA

    ALL = APPROACH_ORDER


# Flags por abordagem:
# (linearization, generalization, reinterpretation, weighting, argument_removal, invoked_removal)
_FLAGS = {
    Approach.STA: (False, False, False, False, False, False),
    Approach.LLA: (True, True, True, False, False, False),
    Approach.EXT_LLA: (True, True, True, True, True, True),
}


@dataclass(frozen=True)
class ApproachConfig:
    """
    Abordagem e respetivas features.

    Attributes:
        approach: sta, lla ou ext-lla
        min_match_length: Comprimento mínimo de um tile
        linearization_enabled: Inlining das chamadas (linearização de métodos)
        generalization_enabled: Remoção de labels/alvos de salto
        reinterpretation_enabled: SWITCH reescrito como cadeia de comparações
        weighting_enabled: Caminho de scope incluído nas chaves
        argument_removal_enabled: Heurística de remoção de argumentos
        invoked_removal_enabled: Só as raízes do grafo de chamadas são unidades
    """
    approach: str
    min_match_length: int
    linearization_enabled: bool
    generalization_enabled: bool
    reinterpretation_enabled: bool
    weighting_enabled: bool
    argument_removal_enabled: bool
    invoked_removal_enabled: bool

    def __post_init__(self):
        if self.approach not in _FLAGS:
            raise ValueError(f"Abordagem desconhecida: {self.approach}")
        if not isinstance(self.min_match_length, int) or self.min_match_length < 1:
            raise ValueError(f"min_match_length deve ser positivo, recebeu {self.min_match_length}")
        if self.flags != _FLAGS[self.approach]:
            raise ValueError(f"Flags inconsistentes para {self.approach}: {self.flags}")

    @property
    def flags(self):
        return (
            self.linearization_enabled,
            self.generalization_enabled,
            self.reinterpretation_enabled,
            self.weighting_enabled,
            self.argument_removal_enabled,
            self.invoked_removal_enabled,
        )

    @property
    def is_low_level(self) -> bool:
        return self.approach != Approach.STA

    @classmethod
    def create(cls, approach: str, min_match_length: int = DEFAULT_MIN_MATCH) -> 'ApproachConfig':
        """
        Cria a configuração de uma abordagem.

        Args:
            approach: sta, lla ou ext-lla
            min_match_length: Comprimento mínimo de um tile

        Returns:
            Configuração com as flags da abordagem

        Raises:
            ValueError: Abordagem desconhecida ou comprimento inválido
        """
        if approach not in _FLAGS:
            raise ValueError(f"Abordagem desconhecida: {approach}")
        return cls(approach, min_match_length, *_FLAGS[approach])
