"""
Constantes globais do projeto codesim.

Define valores default do matcher, do gerador de corpus, nomes de ficheiros,
níveis de log, etc.
"""

# ============================================================================
# Versão
# ============================================================================

APP_NAME = "codesim"
VERSION = "1.0.0"

# ============================================================================
# Linguagem MiniJ
# ============================================================================

SOURCE_EXTENSION = ".mj"

# Nome da função de entrada e da função sintética de inicialização de globais
ENTRY_FUNCTION = "main"
INIT_FUNCTION = "<init>"

# ============================================================================
# Matcher (RKR-GST)
# ============================================================================

DEFAULT_MIN_MATCH = 3          # Minimum match length (tokens)
DEFAULT_INITIAL_SEARCH = 20    # Comprimento inicial de pesquisa do RKR

# Karp-Rabin: base e módulo do hash rolante
HASH_BASE = 1_000_003
HASH_MODULUS = (1 << 61) - 1

# ============================================================================
# Abordagens
# ============================================================================

APPROACH_STA = "sta"
APPROACH_LLA = "lla"
APPROACH_EXT_LLA = "ext-lla"

# Ordem canónica usada nos relatórios e no ranking
APPROACH_ORDER = (APPROACH_EXT_LLA, APPROACH_LLA, APPROACH_STA)

# ============================================================================
# Gerador de corpus
# ============================================================================

DEFAULT_GENERATOR_SEED = 2017
DEFAULT_PER_LEVEL = 10
PLAGIARISM_LEVELS = (1, 2, 3, 4, 5, 6)

# Tentativas antes de desistir de um caso
MAX_CASE_RETRIES = 12

# Avaliador de referência
DEFAULT_STEP_BUDGET = 200_000
MAX_CALL_DEPTH = 400
INPUT_SCRIPT_LENGTH = 8
INPUT_VALUE_RANGE = (0, 20)

# Layout do corpus
CORPUS_MANIFEST = "manifest.json"
CASE_ORIGINAL = "original.mj"
CASE_PLAGIARIZED = "plagiarized.mj"
CASE_INPUT = "input.txt"
CASE_ATTACKS = "attacks.json"
LEVEL_DIR_PREFIX = "level-"

# Sementes
DEFAULT_SEEDS_DIR = "support/seeds"
LOGIC_VARIANTS_DIR = "logic"

# ============================================================================
# Relatórios
# ============================================================================

REPORT_JSON = "report.json"
RANKING_CSV = "ranking.csv"
LEVELS_CSV = "levels.csv"

# ============================================================================
# Paths
# ============================================================================

DEFAULT_LOGS_DIR = "./logs"

# ============================================================================
# Logging
# ============================================================================

# Níveis de log
LOG_LEVEL_DEBUG = "DEBUG"
LOG_LEVEL_INFO = "INFO"
LOG_LEVEL_WARNING = "WARNING"
LOG_LEVEL_ERROR = "ERROR"
LOG_LEVEL_CRITICAL = "CRITICAL"

# ============================================================================
# Exit codes (CLI)
# ============================================================================

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
