"""
Gestão de configuração do projeto.

Lê variáveis de ambiente (e do ficheiro .env, se existir) e fornece acesso
centralizado às configurações.
"""

import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv

from common.utils.constants import (
    DEFAULT_MIN_MATCH,
    DEFAULT_INITIAL_SEARCH,
    DEFAULT_GENERATOR_SEED,
    DEFAULT_STEP_BUDGET,
    DEFAULT_LOGS_DIR,
    LOG_LEVEL_INFO,
)


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


class Config:
    """
    Classe de configuração singleton.

    Carrega configurações do .env e fornece acesso através de atributos.
    """

    _instance: Optional['Config'] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        # Carregar .env
        load_dotenv()

        # Matcher
        self.min_match: int = int(os.getenv("CODESIM_MIN_MATCH", DEFAULT_MIN_MATCH))
        self.initial_search: int = int(os.getenv("CODESIM_INITIAL_SEARCH", DEFAULT_INITIAL_SEARCH))

        # Gerador
        self.generator_seed: int = int(os.getenv("CODESIM_SEED", DEFAULT_GENERATOR_SEED))
        self.seed_from_env: bool = os.getenv("CODESIM_SEED") is not None
        self.step_budget: int = int(os.getenv("CODESIM_STEP_BUDGET", DEFAULT_STEP_BUDGET))

        # Harness
        self.workers: int = max(1, int(os.getenv("CODESIM_WORKERS", 1)))

        # Paths
        self.logs_dir: Path = Path(os.getenv("LOGS_DIR", DEFAULT_LOGS_DIR))

        # Logging
        self.log_level: str = os.getenv("LOG_LEVEL", LOG_LEVEL_INFO)
        self.log_to_file: bool = _env_bool("LOG_TO_FILE", "false")

        # Debug
        self.debug: bool = _env_bool("DEBUG", "false")

        self._initialized = True

    def reload(self) -> 'Config':
        """
        Volta a ler as variáveis de ambiente.

        Returns:
            A própria instância, atualizada
        """
        self._initialized = False
        self.__init__()
        return self

    def ensure_directories_exist(self):
        """Cria os diretórios necessários se não existirem."""
        self.logs_dir.mkdir(parents=True, exist_ok=True)

    def __repr__(self) -> str:
        return (
            f"Config(\n"
            f"  min_match={self.min_match},\n"
            f"  initial_search={self.initial_search},\n"
            f"  generator_seed={self.generator_seed},\n"
            f"  workers={self.workers},\n"
            f"  log_level={self.log_level}\n"
            f")"
        )


# Instância global de configuração
config = Config()
