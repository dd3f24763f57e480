"""
Gerador do corpus de plágio.

Para o caso i de cada nível usa-se o mesmo programa semente. O programa
plagiado de nível n aplica a cadeia de ataques dos níveis 2..n-1, depois o
ataque de assinatura do nível n e por fim uma reformatação (nível 1). O
nível 6 parte da variante lógica escrita à mão do programa semente.

Os níveis 1..5 são validados com o avaliador de referência sobre o script
de input do caso; se os traces diferirem, o caso é regenerado com outra
semente derivada.

Layout:

    <out>/manifest.json
    <out>/level-<n>/<case-id>/original.mj
    <out>/level-<n>/<case-id>/plagiarized.mj
    <out>/level-<n>/<case-id>/input.txt
    <out>/level-<n>/<case-id>/attacks.json
"""

import json
import random
import shutil
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from attacks.evaluator import evaluate_program
from attacks.specs import (
    AttackKind, AttackSpec, CHAIN_STEPS, FLOW_KINDS, LOGIC_STATEMENT_STACK,
    SIGNATURE_FALLBACKS, signature_kind,
)
from attacks.transforms import run_attack
from common.frontend.loader import SourceUnit, load
from common.utils.constants import (
    CASE_ATTACKS, CASE_INPUT, CASE_ORIGINAL, CASE_PLAGIARIZED, CORPUS_MANIFEST,
    INPUT_SCRIPT_LENGTH, INPUT_VALUE_RANGE, LEVEL_DIR_PREFIX, LOGIC_VARIANTS_DIR,
    MAX_CASE_RETRIES, PLAGIARISM_LEVELS, SOURCE_EXTENSION,
)
from common.utils.errors import (
    CodesimError, GenerationExhausted, IoError, NotApplicable, RuntimeFault,
    StepBudgetExceeded,
)
from common.utils.logger import get_logger
from common.utils.run_logger import CorpusRunLogger

logger = get_logger("generator")

# Só os níveis 1..5 preservam a semântica
CHECKED_LEVELS = (1, 2, 3, 4, 5)


# ============================================================================
# Tipos
# ============================================================================

@dataclass(frozen=True)
class SeedProgram:
    """Programa semente e a sua variante lógica (nível 6), se existir."""
    unit: SourceUnit
    logic_variant: Optional[SourceUnit] = None

    @property
    def name(self) -> str:
        return self.unit.name


@dataclass(frozen=True)
class CaseRecord:
    """
    Um caso do corpus.

    Attributes:
        case_id: Identificador (único no corpus)
        level: Nível de plágio (o do ataque mais alto aplicado)
        original: Programa original
        plagiarized: Programa plagiado
        attacks: Ataques aplicados, por ordem
        inputs: Script de input fixado para a validação semântica
        seed_program: Nome do programa semente
    """
    case_id: str
    level: int
    original: SourceUnit
    plagiarized: SourceUnit
    attacks: Tuple[AttackSpec, ...]
    inputs: Tuple[int, ...] = ()
    seed_program: str = ""

    def __post_init__(self):
        if self.level not in PLAGIARISM_LEVELS:
            raise ValueError(f"Nível inválido: {self.level}")
        if not self.case_id:
            raise ValueError("case_id não pode ser vazio")
        if any(spec.level != self.level for spec in self.attacks):
            raise ValueError("Todos os ataques devem estar marcados com o nível do caso")

    @property
    def kinds(self) -> List[str]:
        return [spec.kind for spec in self.attacks]

    def attacks_json(self) -> str:
        return _dump_json([spec.to_dict() for spec in self.attacks])

    def input_text(self) -> str:
        return "".join(f"{value}\n" for value in self.inputs)


def _dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def derive_seed(*parts: Any) -> int:
    """Semente de 32 bits derivada de forma estável das partes dadas."""
    return random.Random("/".join(str(p) for p in parts)).getrandbits(32)


def case_id_for(level: int, index: int) -> str:
    return f"L{level}C{index:03d}"


def parse_inputs(text: str) -> Tuple[int, ...]:
    """
    Lê um script de input (inteiros separados por whitespace).

    Raises:
        ValueError: Um valor não é inteiro
    """
    return tuple(int(token) for token in text.split())


# ============================================================================
# Sementes
# ============================================================================

def load_seeds(seeds_dir: Union[str, Path]) -> List[SeedProgram]:
    """
    Carrega os programas semente (`*.mj`) e as variantes em `logic/`.

    Args:
        seeds_dir: Diretório das sementes

    Returns:
        Sementes ordenadas por nome de ficheiro

    Raises:
        IoError: Diretório inexistente
        GenerationExhausted: Nenhum programa semente
    """
    seeds_dir = Path(seeds_dir)
    if not seeds_dir.is_dir():
        raise IoError(seeds_dir, "no such directory")

    seeds = []
    for path in sorted(seeds_dir.glob(f"*{SOURCE_EXTENSION}")):
        unit = load(path)
        variant_path = seeds_dir / LOGIC_VARIANTS_DIR / path.name
        variant = load(variant_path) if variant_path.is_file() else None
        seeds.append(SeedProgram(unit, variant))

    if not seeds:
        raise GenerationExhausted(f"no seed programs in {seeds_dir}")
    logger.info(
        f"{len(seeds)} programas semente, "
        f"{sum(1 for s in seeds if s.logic_variant is not None)} com variante lógica"
    )
    return seeds


# ============================================================================
# Construção de um caso
# ============================================================================

class _CaseBuilder:
    """Aplica a cadeia de ataques de um caso, guardando as specs aplicadas."""

    def __init__(self, level: int, case_seed: int, case_id: str, run_log: CorpusRunLogger):
        self.level = level
        self.case_seed = case_seed
        self.case_id = case_id
        self.run_log = run_log
        self.applied: List[AttackSpec] = []

    def spec(self, kind: str) -> AttackSpec:
        return AttackSpec(self.level, kind, derive_seed(self.case_seed, len(self.applied), kind))

    def apply(self, unit: SourceUnit, kind: str, variant: Optional[SourceUnit] = None) -> SourceUnit:
        result, applied = run_attack(unit, self.spec(kind), variant)
        self.applied.append(applied)
        return result

    def try_apply(self, unit: SourceUnit, kind: str) -> Optional[SourceUnit]:
        try:
            return self.apply(unit, kind)
        except NotApplicable as e:
            self.run_log.log_attack_skipped(self.case_id, kind, str(e))
            return None

    def steps(self, unit: SourceUnit, mode: str, kinds: Sequence[str]) -> SourceUnit:
        """Todos os tipos aplicáveis (`all`) ou só o primeiro aplicável (`first`)."""
        for kind in kinds:
            result = self.try_apply(unit, kind)
            if result is None:
                continue
            unit = result
            if mode == "first":
                break
        return unit

    def chain(self, unit: SourceUnit, top: int) -> SourceUnit:
        """Ataques dos níveis 2..top."""
        for step_level in range(2, top + 1):
            unit = self.steps(unit, *CHAIN_STEPS[step_level])
        return unit

    def signature(self, unit: SourceUnit, index: int) -> SourceUnit:
        kinds = [signature_kind(self.level, index)]
        kinds.extend(k for k in SIGNATURE_FALLBACKS[self.level] if k not in kinds)
        for kind in kinds:
            result = self.try_apply(unit, kind)
            if result is not None:
                return result
        raise NotApplicable(f"no level-{self.level} attack applies")


def build_case(
    seed: SeedProgram,
    level: int,
    index: int,
    case_seed: int,
    run_log: Optional[CorpusRunLogger] = None,
) -> CaseRecord:
    """
    Constrói um caso (sem validação semântica).

    Args:
        seed: Programa semente
        level: Nível do caso
        index: Índice do caso no nível
        case_seed: Semente do caso
        run_log: Logger da sessão

    Returns:
        CaseRecord

    Raises:
        NotApplicable: Nenhum ataque de assinatura se aplica
    """
    run_log = run_log or CorpusRunLogger("generate")
    case_id = case_id_for(level, index)
    builder = _CaseBuilder(level, case_seed, case_id, run_log)
    rng = random.Random(case_seed)
    inputs = tuple(rng.randint(*INPUT_VALUE_RANGE) for _ in range(INPUT_SCRIPT_LENGTH))

    if level == 1:
        plagiarized = builder.signature(seed.unit, index)
    elif level == 6:
        if seed.logic_variant is None:
            raise NotApplicable(f"{seed.name} has no logic variant")
        plagiarized = builder.apply(seed.unit, AttackKind.LOGIC_REWRITE, seed.logic_variant)
        plagiarized = builder.chain(plagiarized, 4)
        plagiarized = builder.steps(plagiarized, "all", LOGIC_STATEMENT_STACK)
        plagiarized = builder.apply(plagiarized, AttackKind.WHITESPACE_REFLOW)
    else:
        flow = signature_kind(level, index) in FLOW_KINDS
        plagiarized = builder.chain(seed.unit, 3 if flow else level - 1)
        plagiarized = builder.signature(plagiarized, index)
        plagiarized = builder.apply(plagiarized, AttackKind.WHITESPACE_REFLOW)

    return CaseRecord(
        case_id=case_id,
        level=level,
        original=seed.unit,
        plagiarized=plagiarized,
        attacks=tuple(builder.applied),
        inputs=inputs,
        seed_program=seed.name,
    )


def check_semantics(case: CaseRecord) -> None:
    """
    Verifica que original e plagiado produzem o mesmo trace.

    Raises:
        RuntimeFault: O original falha no script do caso, ou os traces diferem
        StepBudgetExceeded: Um dos programas não termina dentro do orçamento
    """
    expected = evaluate_program(case.original, case.inputs)
    actual = evaluate_program(case.plagiarized, case.inputs)
    if expected != actual:
        raise RuntimeFault(f"trace mismatch: {list(expected)} != {list(actual)}")


def generate_case(
    seeds: Sequence[SeedProgram],
    level: int,
    index: int,
    base_seed: int,
    run_log: Optional[CorpusRunLogger] = None,
) -> Tuple[CaseRecord, int]:
    """
    Gera um caso válido, com novas tentativas limitadas.

    Returns:
        (caso, número de tentativas usadas)

    Raises:
        GenerationExhausted: Nenhuma tentativa produziu um caso válido
    """
    run_log = run_log or CorpusRunLogger("generate")
    pool = [s for s in seeds if s.logic_variant is not None] if level == 6 else list(seeds)
    if not pool:
        raise GenerationExhausted(f"no seed program usable at level {level}")
    case_id = case_id_for(level, index)

    for attempt in range(MAX_CASE_RETRIES):
        # Mesmo programa semente para o caso i de cada nível; depois roda
        seed = pool[(index + attempt // 3) % len(pool)]
        case_seed = derive_seed(base_seed, level, index, attempt)
        try:
            case = build_case(seed, level, index, case_seed, run_log)
            if level in CHECKED_LEVELS:
                check_semantics(case)
            return case, attempt + 1
        except (NotApplicable, RuntimeFault, StepBudgetExceeded) as e:
            run_log.log_case_retry(case_id, attempt + 1, str(e))

    raise GenerationExhausted(f"{case_id}: no valid case after {MAX_CASE_RETRIES} attempts")


# ============================================================================
# Corpus
# ============================================================================

def _write(path: Path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise IoError(path, e.strerror or str(e))


def write_case(out_dir: Path, case: CaseRecord) -> Path:
    case_dir = out_dir / f"{LEVEL_DIR_PREFIX}{case.level}" / case.case_id
    case_dir.mkdir(parents=True, exist_ok=True)
    _write(case_dir / CASE_ORIGINAL, case.original.text)
    _write(case_dir / CASE_PLAGIARIZED, case.plagiarized.text)
    _write(case_dir / CASE_INPUT, case.input_text())
    _write(case_dir / CASE_ATTACKS, case.attacks_json())
    return case_dir


def _clear_previous(out_dir: Path) -> None:
    for level in PLAGIARISM_LEVELS:
        level_dir = out_dir / f"{LEVEL_DIR_PREFIX}{level}"
        if level_dir.is_dir():
            shutil.rmtree(level_dir)
    manifest = out_dir / CORPUS_MANIFEST
    if manifest.is_file():
        manifest.unlink()


def generate_corpus(
    seeds_dir: Union[str, Path],
    out_dir: Union[str, Path],
    per_level_count: int,
    seed: int,
) -> Dict[str, Any]:
    """
    Gera o corpus completo e escreve o manifest.

    Args:
        seeds_dir: Diretório dos programas semente
        out_dir: Raiz do corpus (os níveis existentes são substituídos)
        per_level_count: Casos por nível
        seed: Semente do gerador

    Returns:
        Conteúdo do manifest

    Raises:
        GenerationExhausted: Um caso esgotou as tentativas
        IoError: Falha de leitura/escrita
    """
    if per_level_count < 1:
        raise ValueError("per_level_count deve ser >= 1")

    seeds = load_seeds(seeds_dir)
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IoError(out_dir, e.strerror or str(e))
    _clear_previous(out_dir)

    run_log = CorpusRunLogger("generate")
    run_log.log_custom("generation_start", seeds=len(seeds), per_level=per_level_count, seed=seed)
    cases = []
    try:
        for level in PLAGIARISM_LEVELS:
            for index in range(per_level_count):
                case, attempts = generate_case(seeds, level, index, seed, run_log)
                write_case(out_dir, case)
                run_log.log_case_generated(case.case_id, case.seed_program, case.kinds, attempts)
                cases.append(case)
            logger.info(f"Nível {level}: {per_level_count} casos")
    finally:
        run_log.close()

    manifest = {
        "generator_seed": seed,
        "per_level": per_level_count,
        "counts": {str(level): per_level_count for level in PLAGIARISM_LEVELS},
        "total": len(cases),
        "seeds": [s.name for s in seeds],
        "cases": [
            {
                "case_id": case.case_id,
                "level": case.level,
                "seed_program": case.seed_program,
                "attacks": case.kinds,
            }
            for case in cases
        ],
    }
    _write(out_dir / CORPUS_MANIFEST, _dump_json(manifest))
    logger.info(f"Corpus com {len(cases)} casos escrito em {out_dir}")
    return manifest
