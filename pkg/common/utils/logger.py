"""
Logging do codesim (Loguru).

A consola é sempre o stderr: o stdout fica reservado para o output dos
comandos (`compare`, `tokens`, `dump`, `attack`). Os valores default vêm da
configuração no momento da chamada, por isso um `config.reload()` seguido de
`setup_logger()` aplica um novo LOG_LEVEL/LOG_TO_FILE.
"""

import sys
from typing import Optional

from loguru import logger

from common.utils.config import config
from common.utils.constants import APP_NAME


CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{extra[name]}</cyan>:<cyan>{function}</cyan> | "
    "<level>{message}</level>"
)

FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[name]}:{function}:{line} | {message}"


def setup_logger(
    level: Optional[str] = None,
    log_to_file: Optional[bool] = None,
    log_to_console: bool = True,
) -> logger:
    """
    (Re)configura os sinks globais do Loguru.

    Os sinks de sessão do CorpusRunLogger são independentes: cada um remove
    o seu em `close()`, mas uma reconfiguração a meio de uma sessão também
    os apaga.

    Args:
        level: Nível mínimo (default: LOG_LEVEL)
        log_to_file: Escrever também `<LOGS_DIR>/codesim.log` (default: LOG_TO_FILE)
        log_to_console: Escrever no stderr

    Returns:
        O logger do Loguru
    """
    level = level or config.log_level
    log_to_file = config.log_to_file if log_to_file is None else log_to_file

    logger.remove()
    logger.configure(extra={"name": APP_NAME})

    if log_to_console:
        logger.add(sys.stderr, format=CONSOLE_FORMAT, level=level, colorize=True)

    if log_to_file:
        try:
            config.ensure_directories_exist()
            logger.add(
                config.logs_dir / f"{APP_NAME}.log",
                format=FILE_FORMAT,
                level=level,
                rotation="10 MB",
                retention="7 days",
                compression="zip",
                enqueue=True,
            )
        except (PermissionError, OSError) as e:
            print(f"⚠️  Aviso: sem ficheiro de log ({e}); logs apenas na consola.", file=sys.stderr)

    return logger


setup_logger()


def get_logger(name: str) -> logger:
    """Logger com o contexto `name` (ex: "lexer", "linearize", "harness")."""
    return logger.bind(name=name)
