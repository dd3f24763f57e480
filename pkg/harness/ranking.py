"""
Ranking das abordagens por caso (dense ranking sobre o RMT).

Rank 1 = RMT mais alto; RMT iguais partilham o rank e o rank seguinte é o
imediatamente a seguir (1, 1, 2).
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Mapping, Tuple

from common.utils.constants import APPROACH_ORDER


def rank_case(rmts: Mapping[str, int]) -> Dict[str, int]:
    """
    Dense ranking de um caso.

    Args:
        rmts: RMT por abordagem

    Returns:
        Rank por abordagem (1 = melhor)

    Raises:
        ValueError: Menos de duas abordagens
    """
    if len(rmts) < 2:
        raise ValueError("rank_case precisa de pelo menos duas abordagens")
    distinct = sorted(set(rmts.values()), reverse=True)
    position = {value: rank for rank, value in enumerate(distinct, start=1)}
    return {approach: position[value] for approach, value in rmts.items()}


@dataclass(frozen=True)
class CaseRanking:
    """RMT e rank de cada abordagem num caso."""
    case_id: str
    level: int
    rmts: Tuple[Tuple[str, int], ...]
    ranks: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        if dict(self.ranks) != rank_case(dict(self.rmts)):
            raise ValueError(f"Ranks inconsistentes com o RMT em {self.case_id}")

    @classmethod
    def from_rmts(cls, case_id: str, level: int, rmts: Mapping[str, int]) -> 'CaseRanking':
        ordered = tuple((a, rmts[a]) for a in APPROACH_ORDER if a in rmts)
        ranks = rank_case(dict(ordered))
        return cls(case_id, level, ordered, tuple((a, ranks[a]) for a, _ in ordered))

    def rank_of(self, approach: str) -> int:
        return dict(self.ranks)[approach]

    def rmt_of(self, approach: str) -> int:
        return dict(self.rmts)[approach]


@dataclass(frozen=True)
class RankingTable:
    """
    Ranks de todos os casos e histograma por abordagem.

    Attributes:
        cases: Um CaseRanking por caso, ordenados por case_id
    """
    cases: Tuple[CaseRanking, ...]

    def __post_init__(self):
        ids = [c.case_id for c in self.cases]
        if ids != sorted(ids):
            raise ValueError("cases devem estar ordenados por case_id")
        if len(set(ids)) != len(ids):
            raise ValueError("case_id repetido no ranking")

    @classmethod
    def build(cls, cases: Iterable[CaseRanking]) -> 'RankingTable':
        return cls(tuple(sorted(cases, key=lambda c: c.case_id)))

    @classmethod
    def merge(cls, tables: Iterable['RankingTable']) -> 'RankingTable':
        """Junta fatias (por exemplo, uma por nível) num ranking do corpus inteiro."""
        return cls.build(c for table in tables for c in table.cases)

    def approaches(self) -> Tuple[str, ...]:
        present = {a for c in self.cases for a, _ in c.rmts}
        return tuple(a for a in APPROACH_ORDER if a in present)

    def histogram(self) -> Dict[str, Dict[int, int]]:
        """Número de casos em cada rank, por abordagem (um rank partilhado conta para todas)."""
        approaches = self.approaches()
        result = {a: {rank: 0 for rank in range(1, len(approaches) + 1)} for a in approaches}
        for case in self.cases:
            for approach, rank in case.ranks:
                result[approach][rank] += 1
        return result

    def rank1_share(self, approach: str) -> float:
        if not self.cases:
            return 0.0
        return self.histogram()[approach][1] / len(self.cases)

    def slice(self, level: int) -> 'RankingTable':
        return RankingTable(tuple(c for c in self.cases if c.level == level))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cases": [
                {
                    "case_id": c.case_id,
                    "level": c.level,
                    "rmt": dict(c.rmts),
                    "rank": dict(c.ranks),
                }
                for c in self.cases
            ],
            "histogram": {
                approach: {str(rank): n for rank, n in counts.items()}
                for approach, counts in self.histogram().items()
            },
        }
