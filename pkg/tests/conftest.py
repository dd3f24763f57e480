"""
Fixtures partilhadas pelos testes.

O corpus de aceitação é gerado uma única vez por sessão (10 casos por nível
a partir de support/seeds) e avaliado uma única vez.
"""

from pathlib import Path

import pytest

from attacks.generator import generate_corpus, load_seeds
from common.frontend.loader import SourceUnit, load_text
from common.pipeline.approach import ApproachConfig
from common.utils.constants import APPROACH_ORDER, DEFAULT_GENERATOR_SEED, DEFAULT_PER_LEVEL
from harness.runner import evaluate_corpus

ROOT = Path(__file__).resolve().parent.parent
SEEDS_DIR = ROOT / "support" / "seeds"
FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"


def unit(text: str, origin: str = "test.mj") -> SourceUnit:
    """Carrega um programa a partir de texto."""
    return load_text(text, origin)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def seeds_dir() -> Path:
    return SEEDS_DIR


@pytest.fixture(scope="session")
def seeds():
    return load_seeds(SEEDS_DIR)


@pytest.fixture(params=APPROACH_ORDER)
def approach_config(request) -> ApproachConfig:
    return ApproachConfig.create(request.param)


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("corpus")
    generate_corpus(SEEDS_DIR, root, DEFAULT_PER_LEVEL, DEFAULT_GENERATOR_SEED)
    return root


@pytest.fixture(scope="session")
def evaluation(corpus_dir):
    return evaluate_corpus(corpus_dir, min_match=3, workers=1, initial_search=20)
