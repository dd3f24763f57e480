"""
Estatísticas por nível de plágio.

As médias são racionais exatos (Fraction); o texto arredonda a 2 casas e o
JSON guarda a forma exata ("-7/2").
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from common.utils.constants import APPROACH_ORDER


@dataclass(frozen=True)
class ApproachStats:
    """Estatísticas de uma abordagem num nível."""
    approach: str
    count: int
    mean_rmt: Fraction
    zero_rmt: int
    min_rmt: int
    max_rmt: int
    mean_similarity: Optional[float] = None

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count deve ser >= 1")
        if self.mean_rmt > 0 or self.max_rmt > 0:
            raise ValueError("RMT nunca é positivo")
        if not 0 <= self.zero_rmt <= self.count:
            raise ValueError("zero_rmt fora de [0, count]")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "count": self.count,
            "mean_rmt": str(self.mean_rmt),
            "zero_rmt": self.zero_rmt,
            "min_rmt": self.min_rmt,
            "max_rmt": self.max_rmt,
            "mean_similarity": None if self.mean_similarity is None else round(self.mean_similarity, 6),
        }


@dataclass(frozen=True)
class Pairwise:
    """Vitórias/empates/derrotas de `first` contra `second` (maior RMT ganha)."""
    first: str
    second: str
    wins: int
    ties: int
    losses: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "first": self.first,
            "second": self.second,
            "wins": self.wins,
            "ties": self.ties,
            "losses": self.losses,
        }


@dataclass(frozen=True)
class LevelReport:
    """
    Relatório de um nível.

    Attributes:
        level: Nível de plágio
        case_count: Casos válidos do nível (0 se todos forem inválidos)
        stats: Estatísticas por abordagem (ordem canónica)
        pairwise: Comparações entre cada par de abordagens
        invalid_count: Casos do nível excluídos das estatísticas
    """
    level: int
    case_count: int
    stats: Tuple[ApproachStats, ...]
    pairwise: Tuple[Pairwise, ...]
    invalid_count: int = 0

    def __post_init__(self):
        if self.case_count == 0 and (self.stats or self.pairwise):
            raise ValueError("Nível sem casos válidos não tem estatísticas")
        for s in self.stats:
            if s.count != self.case_count:
                raise ValueError(f"{s.approach}: {s.count} casos != {self.case_count}")
        for p in self.pairwise:
            if p.wins + p.ties + p.losses != self.case_count:
                raise ValueError(f"{p.first}/{p.second}: contagens não somam {self.case_count}")

    def stats_for(self, approach: str) -> ApproachStats:
        return next(s for s in self.stats if s.approach == approach)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "case_count": self.case_count,
            "invalid_count": self.invalid_count,
            "approaches": {s.approach: s.to_dict() for s in self.stats},
            "pairwise": [p.to_dict() for p in self.pairwise],
        }


def summarize(
    level: int,
    rmts: Sequence[Mapping[str, int]],
    similarities: Sequence[Mapping[str, float]] = (),
    invalid_count: int = 0,
) -> LevelReport:
    """
    Resume os casos válidos de um nível.

    Args:
        level: Nível
        rmts: RMT por abordagem, um mapa por caso
        similarities: Similaridade por abordagem, um mapa por caso (opcional)
        invalid_count: Casos inválidos do nível

    Returns:
        LevelReport

    Raises:
        ValueError: Nenhum caso, válido ou inválido
    """
    if not rmts and invalid_count:
        return LevelReport(level, 0, (), (), invalid_count)
    if not rmts:
        raise ValueError(f"Nível {level} sem casos válidos")
    approaches = [a for a in APPROACH_ORDER if a in rmts[0]]
    count = len(rmts)

    stats = []
    for approach in approaches:
        values = [case[approach] for case in rmts]
        mean_similarity = None
        if similarities:
            mean_similarity = sum(case[approach] for case in similarities) / count
        stats.append(ApproachStats(
            approach=approach,
            count=count,
            mean_rmt=Fraction(sum(values), count),
            zero_rmt=sum(1 for v in values if v == 0),
            min_rmt=min(values),
            max_rmt=max(values),
            mean_similarity=mean_similarity,
        ))

    pairwise = []
    for first, second in combinations(approaches, 2):
        wins = sum(1 for case in rmts if case[first] > case[second])
        ties = sum(1 for case in rmts if case[first] == case[second])
        pairwise.append(Pairwise(first, second, wins, ties, count - wins - ties))

    return LevelReport(level, count, tuple(stats), tuple(pairwise), invalid_count)
