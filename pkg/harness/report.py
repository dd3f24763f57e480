"""
Escrita dos relatórios de avaliação.

- report.json: níveis, ranking, configuração e casos inválidos (chaves
  ordenadas, LF)
- ranking.csv: uma linha por caso
- levels.csv: uma linha por nível e abordagem
"""

import csv
import json
from pathlib import Path
from typing import Iterable, List, Union

from common.utils.constants import (
    APPROACH_EXT_LLA, APPROACH_LLA, APPROACH_ORDER, APPROACH_STA, LEVELS_CSV,
    RANKING_CSV, REPORT_JSON,
)
from common.utils.errors import IoError
from common.utils.logger import get_logger
from harness.runner import CorpusEvaluation

logger = get_logger("report")

FORMAT_JSON = "json"
FORMAT_CSV = "csv"
REPORT_FORMATS = (FORMAT_JSON, FORMAT_CSV)

# Sufixo das colunas de cada abordagem em ranking.csv
_COLUMN_SUFFIX = {APPROACH_STA: "sta", APPROACH_LLA: "lla", APPROACH_EXT_LLA: "ext"}

RANKING_FIELDS = [
    "case_id", "level",
    "rmt_sta", "rmt_lla", "rmt_ext",
    "rank_sta", "rank_lla", "rank_ext",
]
LEVEL_FIELDS = [
    "level", "approach", "cases", "mean_rmt", "zero_rmt", "min_rmt", "max_rmt",
    "mean_similarity",
]


def render_json(evaluation: CorpusEvaluation) -> str:
    return json.dumps(evaluation.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def ranking_rows(evaluation: CorpusEvaluation) -> List[dict]:
    rows = []
    for case in evaluation.ranking.cases:
        row = {"case_id": case.case_id, "level": case.level}
        for approach, rmt in case.rmts:
            row[f"rmt_{_COLUMN_SUFFIX[approach]}"] = rmt
        for approach, rank in case.ranks:
            row[f"rank_{_COLUMN_SUFFIX[approach]}"] = rank
        rows.append(row)
    return rows


def _empty_level_row(level: int, approach: str) -> dict:
    row = {field: "" for field in LEVEL_FIELDS}
    row.update(level=level, approach=approach, cases=0)
    return row


def level_rows(evaluation: CorpusEvaluation) -> List[dict]:
    rows = []
    for report in evaluation.levels:
        if not report.stats:
            # nível só com casos inválidos
            rows.extend(_empty_level_row(report.level, approach) for approach in APPROACH_ORDER)
            continue
        for approach in APPROACH_ORDER:
            stats = report.stats_for(approach)
            rows.append({
                "level": report.level,
                "approach": approach,
                "cases": stats.count,
                "mean_rmt": f"{float(stats.mean_rmt):.2f}",
                "zero_rmt": stats.zero_rmt,
                "min_rmt": stats.min_rmt,
                "max_rmt": stats.max_rmt,
                "mean_similarity": "" if stats.mean_similarity is None else f"{stats.mean_similarity:.4f}",
            })
    return rows


def _write_csv(path: Path, fieldnames: List[str], rows: List[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def write_reports(
    evaluation: CorpusEvaluation,
    out_dir: Union[str, Path],
    formats: Iterable[str] = REPORT_FORMATS,
) -> List[Path]:
    """
    Escreve os ficheiros de relatório.

    Args:
        evaluation: Resultado da avaliação
        out_dir: Diretório de saída (criado se não existir)
        formats: Subconjunto de ("json", "csv")

    Returns:
        Ficheiros escritos

    Raises:
        ValueError: Formato desconhecido
        IoError: Falha de escrita
    """
    formats = set(formats)
    unknown = formats - set(REPORT_FORMATS)
    if unknown:
        raise ValueError(f"Formatos desconhecidos: {', '.join(sorted(unknown))}")

    out_dir = Path(out_dir)
    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if FORMAT_JSON in formats:
            path = out_dir / REPORT_JSON
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(render_json(evaluation))
            written.append(path)
        if FORMAT_CSV in formats:
            path = out_dir / RANKING_CSV
            _write_csv(path, RANKING_FIELDS, ranking_rows(evaluation))
            written.append(path)
            path = out_dir / LEVELS_CSV
            _write_csv(path, LEVEL_FIELDS, level_rows(evaluation))
            written.append(path)
    except OSError as e:
        raise IoError(out_dir, e.strerror or str(e))

    logger.info(f"Relatórios escritos: {', '.join(p.name for p in written)}")
    return written
