"""
Greedy String Tiling.

- rkr_gst: versão Running-Karp-Rabin (hash rolante sobre janelas não
  marcadas, comprimento de pesquisa a diminuir para metade);
- reference_gst: versão quadrática sem hashing, usada como oráculo.

Em cada iteração ambas marcam apenas os matches de comprimento máximo, por
ordem (start_a, start_b), ignorando os que se sobrepõem a tiles já marcados.
Por isso produzem exatamente os mesmos tiles.
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Hashable, List, Sequence, Tuple

from common.utils.constants import DEFAULT_INITIAL_SEARCH, HASH_BASE, HASH_MODULUS


@dataclass(frozen=True)
class Tile:
    """Sequência de tokens igual em ambas as sequências."""
    start_a: int
    start_b: int
    length: int

    def __post_init__(self):
        if self.start_a < 0 or self.start_b < 0:
            raise ValueError("Índices de tile não podem ser negativos")
        if self.length < 1:
            raise ValueError(f"Comprimento de tile inválido: {self.length}")


@dataclass(frozen=True)
class TilingResult:
    tiles: Tuple[Tile, ...]
    matched: int

    @classmethod
    def from_tiles(cls, tiles: List[Tile]) -> 'TilingResult':
        ordered = tuple(sorted(tiles, key=lambda t: (t.start_a, t.start_b)))
        return cls(ordered, sum(t.length for t in ordered))


def _check_mml(mml: int) -> None:
    if mml < 1:
        raise ValueError(f"min_match_length deve ser >= 1, recebeu {mml}")


def _extend(a, b, marked_a, marked_b, p: int, t: int, start: int = 0) -> int:
    """Comprimento do match máximo não marcado a partir de (p, t)."""
    j = start
    while (
        p + j < len(a)
        and t + j < len(b)
        and not marked_a[p + j]
        and not marked_b[t + j]
        and a[p + j] == b[t + j]
    ):
        j += 1
    return j


def _mark(tiles, matches, marked_a, marked_b) -> None:
    for p, t, length in sorted(matches):
        if any(marked_a[p:p + length]) or any(marked_b[t:t + length]):
            continue  # oclusão
        for k in range(length):
            marked_a[p + k] = True
            marked_b[t + k] = True
        tiles.append(Tile(p, t, length))


# ============================================================================
# Oráculo quadrático
# ============================================================================

def reference_gst(a: Sequence[Hashable], b: Sequence[Hashable], mml: int) -> TilingResult:
    """
    Greedy String Tiling sem hashing.

    Args:
        a, b: Sequências de chaves
        mml: Comprimento mínimo de match

    Returns:
        Tiles e total de tokens emparelhados
    """
    _check_mml(mml)
    marked_a = [False] * len(a)
    marked_b = [False] * len(b)
    tiles: List[Tile] = []

    while True:
        max_match = mml
        matches: List[Tuple[int, int, int]] = []
        for p in range(len(a)):
            if marked_a[p]:
                continue
            for t in range(len(b)):
                if marked_b[t]:
                    continue
                j = _extend(a, b, marked_a, marked_b, p, t)
                if j == max_match:
                    matches.append((p, t, j))
                elif j > max_match:
                    matches = [(p, t, j)]
                    max_match = j
        if not matches:
            break
        _mark(tiles, matches, marked_a, marked_b)

    return TilingResult.from_tiles(tiles)


# ============================================================================
# Running-Karp-Rabin
# ============================================================================

def _unmarked_runs(marked: List[bool], length: int):
    """Intervalos [start, end) de tokens não marcados com pelo menos `length` tokens."""
    start = None
    for index, flag in enumerate(marked + [True]):
        if not flag and start is None:
            start = index
        elif flag and start is not None:
            if index - start >= length:
                yield start, index
            start = None


def _window_hashes(codes: List[int], marked: List[bool], s: int):
    """(posição, hash) de cada janela de comprimento s totalmente não marcada."""
    high = pow(HASH_BASE, s - 1, HASH_MODULUS)
    for start, end in _unmarked_runs(marked, s):
        h = 0
        for k in range(start, start + s):
            h = (h * HASH_BASE + codes[k]) % HASH_MODULUS
        yield start, h
        for pos in range(start + 1, end - s + 1):
            h = (h - codes[pos - 1] * high) % HASH_MODULUS
            h = (h * HASH_BASE + codes[pos + s - 1]) % HASH_MODULUS
            yield pos, h


def _scan(a, b, codes_a, codes_b, marked_a, marked_b, s: int) -> Tuple[int, List[Tuple[int, int, int]]]:
    """Matches de comprimento máximo (>= s) entre janelas não marcadas."""
    table: Dict[int, List[int]] = defaultdict(list)
    for p, h in _window_hashes(codes_a, marked_a, s):
        table[h].append(p)

    best = 0
    matches: List[Tuple[int, int, int]] = []
    for t, h in _window_hashes(codes_b, marked_b, s):
        for p in table.get(h, ()):
            # Colisões de hash verificadas diretamente
            if a[p:p + s] != b[t:t + s]:
                continue
            j = _extend(a, b, marked_a, marked_b, p, t, s)
            if j > best:
                best = j
                matches = [(p, t, j)]
            elif j == best:
                matches.append((p, t, j))
    return best, matches


def rkr_gst(
    a: Sequence[Hashable],
    b: Sequence[Hashable],
    mml: int,
    initial_search: int = DEFAULT_INITIAL_SEARCH,
) -> TilingResult:
    """
    Running-Karp-Rabin Greedy String Tiling.

    Args:
        a, b: Sequências de chaves (comparadas só por igualdade)
        mml: Comprimento mínimo de match
        initial_search: Comprimento inicial das janelas

    Returns:
        Tiles (ordenados por start_a) e total de tokens emparelhados

    Raises:
        ValueError: mml < 1
    """
    _check_mml(mml)
    a, b = list(a), list(b)
    vocabulary: Dict[Hashable, int] = {}
    codes_a = [vocabulary.setdefault(x, len(vocabulary) + 1) for x in a]
    codes_b = [vocabulary.setdefault(x, len(vocabulary) + 1) for x in b]

    marked_a = [False] * len(a)
    marked_b = [False] * len(b)
    tiles: List[Tile] = []
    s = max(initial_search, mml)

    while True:
        best, matches = _scan(a, b, codes_a, codes_b, marked_a, marked_b, s)
        if matches:
            _mark(tiles, matches, marked_a, marked_b)
        elif s > mml:
            s = max(mml, s // 2)
        else:
            break

    return TilingResult.from_tiles(tiles)
