"""
Run Logger - registo detalhado das operações sobre um corpus.

Regista cada caso gerado, cada ataque ignorado, cada nova tentativa e cada
comparação, com um ID de operação, para facilitar a análise de uma geração
ou avaliação.
"""

import json
import threading
from datetime import datetime
from typing import Dict, Iterable, Optional
from loguru import logger

from common.utils.config import config


class CorpusRunLogger:
    """
    Logger especializado para gerar e avaliar corpora.

    Quando LOG_TO_FILE=true escreve também um ficheiro próprio por sessão
    (`corpus_<kind>_<sessão>.log`) em LOGS_DIR.
    """

    def __init__(self, kind: str):
        """
        Args:
            kind: Tipo de sessão ("generate" ou "evaluate")
        """
        self.kind = kind
        self.session_id = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.operation_counter = 0
        self._lock = threading.Lock()
        self._sink_id: Optional[int] = None
        self.log = logger.bind(name=f"corpus-{kind}")

        if config.log_to_file:
            self._setup_sink()

    def _setup_sink(self):
        """Adiciona o sink de ficheiro da sessão."""
        try:
            config.ensure_directories_exist()
            log_file = config.logs_dir / f"corpus_{self.kind}_{self.session_id}.log"
            self._sink_id = logger.add(
                log_file,
                format="{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {message}",
                level="DEBUG",
                rotation="10 MB",
                retention="30 days",
                enqueue=True,
                filter=lambda record: record["extra"].get("name") == f"corpus-{self.kind}",
            )
        except (PermissionError, OSError) as e:
            logger.warning(f"Não foi possível criar ficheiro de log do corpus: {e}")

    def close(self):
        if self._sink_id is not None:
            logger.remove(self._sink_id)
            self._sink_id = None

    def _get_operation_id(self) -> str:
        with self._lock:
            self.operation_counter += 1
            return f"OP-{self.session_id}-{self.operation_counter:04d}"

    # ========================================================================
    # Geração
    # ========================================================================

    def log_case_generated(self, case_id: str, seed_program: str, kinds: Iterable[str], attempts: int):
        op_id = self._get_operation_id()
        self.log.info(
            f"[{op_id}] CASE_GENERATED | "
            f"Case: {case_id} | "
            f"Seed program: {seed_program} | "
            f"Attacks: {', '.join(kinds)} | "
            f"Attempts: {attempts}"
        )

    def log_attack_skipped(self, case_id: str, kind: str, reason: str):
        op_id = self._get_operation_id()
        self.log.debug(
            f"[{op_id}] ATTACK_SKIPPED | "
            f"Case: {case_id} | "
            f"Kind: {kind} | "
            f"Reason: {reason}"
        )

    def log_case_retry(self, case_id: str, attempt: int, reason: str):
        op_id = self._get_operation_id()
        self.log.warning(
            f"[{op_id}] CASE_RETRY | "
            f"Case: {case_id} | "
            f"Attempt: {attempt} | "
            f"Reason: {reason}"
        )

    # ========================================================================
    # Avaliação
    # ========================================================================

    def log_case_evaluated(self, case_id: str, rmts: Dict[str, int], ranks: Dict[str, int]):
        op_id = self._get_operation_id()
        self.log.debug(
            f"[{op_id}] CASE_EVALUATED | "
            f"Case: {case_id} | "
            f"RMT: {json.dumps(rmts, sort_keys=True)} | "
            f"Ranks: {json.dumps(ranks, sort_keys=True)}"
        )

    def log_invalid_case(self, case_id: str, error: Exception):
        op_id = self._get_operation_id()
        self.log.warning(
            f"[{op_id}] CASE_INVALID | "
            f"Case: {case_id} | "
            f"Error: {type(error).__name__}: {error}"
        )

    def log_custom(self, event: str, **kwargs):
        """
        Regista evento customizado.

        Args:
            event: Nome do evento
            **kwargs: Dados adicionais
        """
        op_id = self._get_operation_id()
        data_str = " | ".join(f"{k}: {v}" for k, v in kwargs.items())
        self.log.info(f"[{op_id}] {event.upper()} | {data_str}")
