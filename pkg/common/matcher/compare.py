"""
Comparação de dois programas sob uma abordagem.

    mt  = len_a + len_b - 2 * matched_total
    rmt = -mt
    similarity = 2 * matched_total / (len_a + len_b)   (1 se ambos vazios)

Os argumentos são normalizados internamente (menor comprimento total
primeiro, empate pelo dump das sequências), o que torna compare simétrico;
o resultado é sempre devolvido na ordem do chamador.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from common.frontend.loader import SourceUnit
from common.matcher.pairing import UnitPair, UnitPairing, pair_units
from common.matcher.tiling import Tile, TilingResult
from common.pipeline.approach import ApproachConfig
from common.pipeline.sequences import SequenceBundle, build_sequences, render_sequences
from common.utils.config import config as app_config
from common.utils.logger import get_logger

logger = get_logger("compare")


@dataclass(frozen=True)
class ComparisonResult:
    """
    Resultado da comparação de um par de programas.

    Attributes:
        approach: Abordagem usada
        pairing: Pares de unidades (com os tiles de cada par) e unidades sem par
        matched_total: Soma dos tokens emparelhados em todos os pares
        len_a: Total de tokens de todas as unidades de A
        len_b: Total de tokens de todas as unidades de B
        mt: Mismatched tokens
        rmt: -mt
        similarity: 2 * matched / (len_a + len_b)
        swapped: Se a normalização trocou os argumentos internamente
        diagnostics: Falhas da heurística de argumentos (A e B)
    """
    approach: str
    pairing: UnitPairing
    matched_total: int
    len_a: int
    len_b: int
    mt: int
    rmt: int
    similarity: float
    swapped: bool = False
    diagnostics: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.mt != self.len_a + self.len_b - 2 * self.matched_total:
            raise ValueError(f"mt inconsistente: {self.mt}")
        if self.rmt != -self.mt:
            raise ValueError(f"rmt inconsistente: {self.rmt}")
        if not 0.0 <= self.similarity <= 1.0:
            raise ValueError(f"similarity fora de [0, 1]: {self.similarity}")

    @property
    def unit_pairing(self) -> List[Tuple[Optional[str], Optional[str]]]:
        return self.pairing.as_list()

    @property
    def tiles(self) -> Dict[Tuple[str, str], Tuple[Tile, ...]]:
        return {(p.unit_a, p.unit_b): p.tiling.tiles for p in self.pairing.pairs}

    def to_dict(self) -> Dict[str, Any]:
        """Forma JSON (chaves estáveis, sem objetos Python)."""
        return {
            "approach": self.approach,
            "matched_total": self.matched_total,
            "len_a": self.len_a,
            "len_b": self.len_b,
            "mt": self.mt,
            "rmt": self.rmt,
            "similarity": self.similarity,
            "swapped": self.swapped,
            "unit_pairing": [list(p) for p in self.unit_pairing],
            "tiles": [
                {
                    "unit_a": p.unit_a,
                    "unit_b": p.unit_b,
                    "matched": p.matched,
                    "tiles": [[t.start_a, t.start_b, t.length] for t in p.tiling.tiles],
                }
                for p in self.pairing.pairs
            ],
            "diagnostics": list(self.diagnostics),
        }

    def format_text(self) -> str:
        """Uma linha `campo: valor` por campo."""
        pairing = ", ".join(
            f"{a if a is not None else '-'}~{b if b is not None else '-'}"
            for a, b in self.unit_pairing
        )
        tiles = "; ".join(
            f"{p.unit_a}~{p.unit_b}: "
            + " ".join(f"({t.start_a},{t.start_b},{t.length})" for t in p.tiling.tiles)
            for p in self.pairing.pairs
        )
        lines = [
            f"approach: {self.approach}",
            f"matched_total: {self.matched_total}",
            f"len_a: {self.len_a}",
            f"len_b: {self.len_b}",
            f"mt: {self.mt}",
            f"rmt: {self.rmt}",
            f"similarity: {self.similarity}",
            f"swapped: {str(self.swapped).lower()}",
            f"unit_pairing: {pairing}",
            f"tiles: {tiles}",
            f"diagnostics: {len(self.diagnostics)}",
        ]
        return "\n".join(lines) + "\n"


def similarity_of(matched: int, len_a: int, len_b: int) -> float:
    total = len_a + len_b
    if total == 0:
        return 1.0
    return 2 * matched / total


def _mirror(pairing: UnitPairing) -> UnitPairing:
    """Troca os papéis de A e B no emparelhamento."""
    pairs = tuple(
        UnitPair(
            p.unit_b,
            p.unit_a,
            p.len_b,
            p.len_a,
            TilingResult.from_tiles([Tile(t.start_b, t.start_a, t.length) for t in p.tiling.tiles]),
        )
        for p in pairing.pairs
    )
    return UnitPairing(pairs, pairing.unmatched_b, pairing.unmatched_a)


def compare_bundles(
    bundle_a: SequenceBundle,
    bundle_b: SequenceBundle,
    mml: int,
    initial_search: Optional[int] = None,
) -> ComparisonResult:
    """
    Compara duas coleções de sequências já construídas.

    Args:
        bundle_a, bundle_b: Sequências de cada programa (mesma abordagem)
        mml: Comprimento mínimo de match
        initial_search: Comprimento inicial do RKR (default: configuração)

    Returns:
        ComparisonResult na ordem (bundle_a, bundle_b)
    """
    if bundle_a.approach != bundle_b.approach:
        raise ValueError(f"Abordagens diferentes: {bundle_a.approach} vs {bundle_b.approach}")
    initial_search = initial_search if initial_search is not None else app_config.initial_search

    key_a = (bundle_a.total_length, render_sequences(bundle_a))
    key_b = (bundle_b.total_length, render_sequences(bundle_b))
    swapped = key_b < key_a
    first, second = (bundle_b, bundle_a) if swapped else (bundle_a, bundle_b)

    pairing = pair_units(first.sequences, second.sequences, mml, initial_search)
    if swapped:
        pairing = _mirror(pairing)

    matched = pairing.matched_total
    len_a, len_b = bundle_a.total_length, bundle_b.total_length
    mt = len_a + len_b - 2 * matched
    diagnostics = tuple(str(f) for f in bundle_a.failures + bundle_b.failures)
    return ComparisonResult(
        approach=bundle_a.approach,
        pairing=pairing,
        matched_total=matched,
        len_a=len_a,
        len_b=len_b,
        mt=mt,
        rmt=-mt,
        similarity=similarity_of(matched, len_a, len_b),
        swapped=swapped,
        diagnostics=diagnostics,
    )


def compare(
    unit_a: SourceUnit,
    unit_b: SourceUnit,
    config: ApproachConfig,
    initial_search: Optional[int] = None,
) -> ComparisonResult:
    """
    Compara dois programas sob uma abordagem.

    Args:
        unit_a, unit_b: Programas carregados
        config: Abordagem e comprimento mínimo de match
        initial_search: Comprimento inicial do RKR (default: configuração)

    Returns:
        ComparisonResult

    Raises:
        CompileError: Um dos programas não compila (abordagens de baixo nível)
    """
    bundle_a = build_sequences(unit_a, config)
    bundle_b = build_sequences(unit_b, config)
    result = compare_bundles(bundle_a, bundle_b, config.min_match_length, initial_search)
    logger.debug(
        f"{unit_a.name} vs {unit_b.name} [{config.approach}]: "
        f"matched={result.matched_total} rmt={result.rmt}"
    )
    return result
