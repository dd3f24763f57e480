"""
Emparelhamento de unidades de comparação entre dois programas.

Greedy: calcula o tiling de todos os pares cruzados, escolhe repetidamente
o par com mais tokens emparelhados (empates: nomes das unidades por ordem
lexicográfica) e retira ambas as unidades. As unidades que sobram ficam
sem par.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from common.matcher.tiling import TilingResult, rkr_gst
from common.pipeline.sequences import TokenSequence
from common.utils.constants import DEFAULT_INITIAL_SEARCH
from common.utils.logger import get_logger

logger = get_logger("pairing")


@dataclass(frozen=True)
class UnitPair:
    """Duas unidades emparelhadas e o respetivo tiling."""
    unit_a: str
    unit_b: str
    len_a: int
    len_b: int
    tiling: TilingResult

    def __post_init__(self):
        if self.tiling.matched > min(self.len_a, self.len_b):
            raise ValueError(
                f"matched {self.tiling.matched} excede min({self.len_a}, {self.len_b})"
            )

    @property
    def matched(self) -> int:
        return self.tiling.matched


@dataclass(frozen=True)
class UnitPairing:
    """
    Resultado do emparelhamento.

    Attributes:
        pairs: Pares escolhidos, pela ordem em que foram escolhidos
        unmatched_a: Unidades de A sem par
        unmatched_b: Unidades de B sem par
    """
    pairs: Tuple[UnitPair, ...]
    unmatched_a: Tuple[str, ...] = ()
    unmatched_b: Tuple[str, ...] = ()

    @property
    def matched_total(self) -> int:
        return sum(p.matched for p in self.pairs)

    def as_list(self) -> List[Tuple[str, Optional[str]]]:
        """Lista (unidade_a, unidade_b | None); as unidades de B sem par vêm como (None, b)."""
        result: List[Tuple[Optional[str], Optional[str]]] = [(p.unit_a, p.unit_b) for p in self.pairs]
        result.extend((name, None) for name in self.unmatched_a)
        result.extend((None, name) for name in self.unmatched_b)
        return result


def pair_units(
    units_a: Sequence[TokenSequence],
    units_b: Sequence[TokenSequence],
    mml: int,
    initial_search: int = DEFAULT_INITIAL_SEARCH,
) -> UnitPairing:
    """
    Emparelha as unidades de dois programas (mesma abordagem).

    Args:
        units_a: Sequências do programa A
        units_b: Sequências do programa B
        mml: Comprimento mínimo de match
        initial_search: Comprimento inicial de pesquisa do RKR

    Returns:
        UnitPairing; só são emparelhados pares com matched > 0
    """
    tilings: Dict[Tuple[int, int], TilingResult] = {}
    for i, seq_a in enumerate(units_a):
        for j, seq_b in enumerate(units_b):
            tilings[(i, j)] = rkr_gst(seq_a.items, seq_b.items, mml, initial_search)

    def order(key: Tuple[int, int]):
        i, j = key
        return (-tilings[key].matched, units_a[i].unit_name, units_b[j].unit_name, i, j)

    free_a = set(range(len(units_a)))
    free_b = set(range(len(units_b)))
    pairs: List[UnitPair] = []
    for i, j in sorted(tilings, key=order):
        if tilings[(i, j)].matched == 0:
            break
        if i not in free_a or j not in free_b:
            continue
        free_a.discard(i)
        free_b.discard(j)
        a, b = units_a[i], units_b[j]
        pairs.append(UnitPair(a.unit_name, b.unit_name, len(a), len(b), tilings[(i, j)]))

    pairing = UnitPairing(
        tuple(pairs),
        tuple(units_a[i].unit_name for i in sorted(free_a)),
        tuple(units_b[j].unit_name for j in sorted(free_b)),
    )
    logger.debug(
        f"{len(pairs)} pares, {len(free_a)}+{len(free_b)} unidades sem par, "
        f"matched={pairing.matched_total}"
    )
    return pairing
