"""
Avaliação de um corpus: compara cada caso nas três abordagens, resume por
nível e ordena as abordagens por caso.

Casos que não carregam ou não compilam ficam fora das estatísticas mas são
listados no relatório.
"""

import json
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from attacks.generator import parse_inputs
from attacks.specs import AttackSpec
from common.frontend.loader import SourceUnit, load
from common.matcher.compare import ComparisonResult, compare
from common.pipeline.approach import ApproachConfig
from common.utils.config import config
from common.utils.constants import (
    APPROACH_ORDER, CASE_ATTACKS, CASE_INPUT, CASE_ORIGINAL, CASE_PLAGIARIZED,
    LEVEL_DIR_PREFIX, PLAGIARISM_LEVELS,
)
from common.utils.errors import CodesimError, CorpusFormatError
from common.utils.logger import get_logger
from common.utils.run_logger import CorpusRunLogger
from harness.ranking import CaseRanking, RankingTable
from harness.summary import LevelReport, summarize


logger = get_logger("harness")


# ============================================================================
# Tipos
# ============================================================================

@dataclass(frozen=True)
class CorpusCase:
    """Um caso lido do disco (ainda não carregado)."""
    case_id: str
    level: int
    directory: Path

    @property
    def original_path(self) -> Path:
        return self.directory / CASE_ORIGINAL

    @property
    def plagiarized_path(self) -> Path:
        return self.directory / CASE_PLAGIARIZED

    def attacks(self) -> Tuple[AttackSpec, ...]:
        path = self.directory / CASE_ATTACKS
        if not path.is_file():
            return ()
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            return tuple(AttackSpec.from_dict(item) for item in data)
        except (ValueError, KeyError, TypeError) as e:
            raise CorpusFormatError(f"{path}: {e}")

    def inputs(self) -> Tuple[int, ...]:
        path = self.directory / CASE_INPUT
        if not path.is_file():
            return ()
        try:
            return parse_inputs(path.read_text(encoding="utf-8"))
        except ValueError as e:
            raise CorpusFormatError(f"{path}: {e}")

    def load(self) -> Tuple[SourceUnit, SourceUnit]:
        return load(self.original_path), load(self.plagiarized_path)


@dataclass(frozen=True)
class InvalidCase:
    """Caso excluído das estatísticas e o erro que o excluiu."""
    case_id: str
    level: int
    error: str

    def to_dict(self) -> Dict[str, Any]:
        return {"case_id": self.case_id, "level": self.level, "error": self.error}


@dataclass(frozen=True)
class CaseResult:
    """Comparação de um caso nas várias abordagens."""
    case_id: str
    level: int
    comparisons: Tuple[Tuple[str, ComparisonResult], ...]

    @property
    def rmts(self) -> Dict[str, int]:
        return {approach: result.rmt for approach, result in self.comparisons}

    @property
    def similarities(self) -> Dict[str, float]:
        return {approach: result.similarity for approach, result in self.comparisons}

    def ranking(self) -> CaseRanking:
        return CaseRanking.from_rmts(self.case_id, self.level, self.rmts)


@dataclass(frozen=True)
class CorpusEvaluation:
    """
    Resultado completo da avaliação de um corpus.

    Attributes:
        results: Casos válidos, por case_id
        invalid: Casos inválidos, por case_id
        levels: Um LevelReport por nível com casos (válidos ou não)
        ranking: Ranking de todos os casos válidos
        min_match: Comprimento mínimo de match usado
        initial_search: Comprimento inicial do RKR usado
    """
    results: Tuple[CaseResult, ...]
    invalid: Tuple[InvalidCase, ...]
    levels: Tuple[LevelReport, ...]
    ranking: RankingTable
    min_match: int
    initial_search: int
    approaches: Tuple[str, ...] = field(default=APPROACH_ORDER)

    @property
    def case_count(self) -> int:
        return len(self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": {
                "approaches": list(self.approaches),
                "initial_search": self.initial_search,
                "min_match": self.min_match,
            },
            "case_count": self.case_count,
            "levels": [report.to_dict() for report in self.levels],
            "ranking": self.ranking.to_dict(),
            "invalid_cases": [case.to_dict() for case in self.invalid],
        }


# ============================================================================
# Leitura do corpus
# ============================================================================

def load_corpus(root: Union[str, Path]) -> List[CorpusCase]:
    """
    Lista os casos de um corpus.

    Args:
        root: Raiz do corpus (`level-<n>/<case-id>/...`)

    Returns:
        Casos ordenados por case_id

    Raises:
        CorpusFormatError: Raiz inexistente, sem níveis, nível inválido,
            caso sem original/plagiado ou case_id repetido
    """
    root = Path(root)
    if not root.is_dir():
        raise CorpusFormatError(f"{root}: not a directory")

    cases: List[CorpusCase] = []
    level_dirs = sorted(p for p in root.iterdir() if p.is_dir() and p.name.startswith(LEVEL_DIR_PREFIX))
    if not level_dirs:
        raise CorpusFormatError(f"{root}: no {LEVEL_DIR_PREFIX}<n> directories")

    for level_dir in level_dirs:
        suffix = level_dir.name[len(LEVEL_DIR_PREFIX):]
        if not suffix.isdigit() or int(suffix) not in PLAGIARISM_LEVELS:
            raise CorpusFormatError(f"{level_dir}: invalid level directory")
        level = int(suffix)
        for case_dir in sorted(p for p in level_dir.iterdir() if p.is_dir()):
            for required in (CASE_ORIGINAL, CASE_PLAGIARIZED):
                if not (case_dir / required).is_file():
                    raise CorpusFormatError(f"{case_dir}: missing {required}")
            cases.append(CorpusCase(case_dir.name, level, case_dir))

    ids = [c.case_id for c in cases]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise CorpusFormatError(f"duplicate case ids: {', '.join(duplicates)}")
    return sorted(cases, key=lambda c: c.case_id)


# ============================================================================
# Avaliação
# ============================================================================

def evaluate_case(case: CorpusCase, min_match: int, initial_search: Optional[int] = None) -> CaseResult:
    """
    Compara original e plagiado de um caso nas três abordagens.

    Raises:
        CodesimError: O caso não carrega ou não compila
    """
    original, plagiarized = case.load()
    comparisons = tuple(
        (approach, compare(original, plagiarized, ApproachConfig.create(approach, min_match), initial_search))
        for approach in APPROACH_ORDER
    )
    return CaseResult(case.case_id, case.level, comparisons)


def evaluate_corpus(
    root: Union[str, Path],
    min_match: Optional[int] = None,
    workers: Optional[int] = None,
    initial_search: Optional[int] = None,
) -> CorpusEvaluation:
    """
    Avalia um corpus completo.

    Args:
        root: Raiz do corpus
        min_match: Comprimento mínimo de match (default: configuração)
        workers: Threads de avaliação (default: CODESIM_WORKERS)
        initial_search: Comprimento inicial do RKR (default: configuração)

    Returns:
        CorpusEvaluation (independente da ordem de execução)

    Raises:
        CorpusFormatError: Layout inválido
    """
    min_match = min_match if min_match is not None else config.min_match
    workers = workers if workers is not None else config.workers
    initial_search = initial_search if initial_search is not None else config.initial_search
    cases = load_corpus(root)
    logger.info(f"{len(cases)} casos em {root} (mml={min_match}, workers={workers})")

    run_log = CorpusRunLogger("evaluate")
    results: Dict[str, CaseResult] = {}
    invalid: Dict[str, InvalidCase] = {}

    def record(case: CorpusCase, outcome: Union[CaseResult, CodesimError]) -> None:
        if isinstance(outcome, CaseResult):
            results[case.case_id] = outcome
            run_log.log_case_evaluated(case.case_id, outcome.rmts, dict(outcome.ranking().ranks))
        else:
            invalid[case.case_id] = InvalidCase(case.case_id, case.level, outcome.diagnostic())
            run_log.log_invalid_case(case.case_id, outcome)

    def run(case: CorpusCase) -> Union[CaseResult, CodesimError]:
        try:
            return evaluate_case(case, min_match, initial_search)
        except CodesimError as e:
            return e

    try:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                futures = {executor.submit(run, case): case for case in cases}
                for future in as_completed(futures):
                    record(futures[future], future.result())
        else:
            for case in cases:
                record(case, run(case))
    finally:
        run_log.log_custom("evaluation_end", valid=len(results), invalid=len(invalid))
        run_log.close()

    ordered = tuple(results[k] for k in sorted(results))
    levels = []
    for level in PLAGIARISM_LEVELS:
        level_results = [r for r in ordered if r.level == level]
        level_invalid = sum(1 for case in invalid.values() if case.level == level)
        if level_results or level_invalid:
            levels.append(summarize(
                level,
                [r.rmts for r in level_results],
                [r.similarities for r in level_results],
                level_invalid,
            ))

    ranking = RankingTable.build(r.ranking() for r in ordered)
    if invalid:
        logger.warning(f"{len(invalid)} casos inválidos excluídos das estatísticas")
    return CorpusEvaluation(
        results=ordered,
        invalid=tuple(invalid[k] for k in sorted(invalid)),
        levels=tuple(levels),
        ranking=ranking,
        min_match=min_match,
        initial_search=initial_search,
    )
