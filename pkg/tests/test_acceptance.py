"""
Propriedades de aceitação sobre o corpus gerado a partir de support/seeds
(10 casos por nível) e sobre ataques isolados aos programas semente.
"""

import random
from fractions import Fraction

import pytest

from attacks.evaluator import evaluate_program
from attacks.specs import AttackKind, AttackSpec, MIN_LEVEL
from attacks.transforms import apply_attack
from common.lowering.compiler import compile_program
from common.lowering.ir import Op, ScopeTag
from common.matcher.compare import compare
from common.matcher.tiling import reference_gst, rkr_gst
from common.pipeline.approach import Approach, ApproachConfig
from common.pipeline.sequences import build_sequences
from common.utils.constants import DEFAULT_GENERATOR_SEED, DEFAULT_PER_LEVEL, PLAGIARISM_LEVELS
from common.utils.errors import NotApplicable
from attacks.generator import generate_corpus
from harness.report import write_reports
from harness.runner import evaluate_corpus, load_corpus

from tests.conftest import SEEDS_DIR, unit


LLA = ApproachConfig.create(Approach.LLA)
EXT = ApproachConfig.create(Approach.EXT_LLA)
STA = ApproachConfig.create(Approach.STA)

ATTACK_SEEDS = (0, 1, 2, 3)


def rmt(a, b, config):
    return compare(a, b, config).rmt


def isolated(seeds, kind):
    """Pares (original, atacado) de um tipo de ataque sobre cada semente."""
    pairs = []
    for seed in seeds:
        seen = set()
        for attack_seed in ATTACK_SEEDS:
            try:
                result = apply_attack(seed.unit, AttackSpec(MIN_LEVEL[kind], kind, attack_seed))
            except NotApplicable:
                break
            if result.text not in seen:
                seen.add(result.text)
                pairs.append((seed.unit, result))
    return pairs


def results_at(evaluation, level):
    return [r for r in evaluation.results if r.level == level]


# ============================================================================
# Corpus
# ============================================================================

def test_corpus_is_complete(evaluation):
    assert evaluation.invalid == ()
    assert evaluation.case_count == DEFAULT_PER_LEVEL * len(PLAGIARISM_LEVELS)


@pytest.mark.parametrize("level", [1, 2])
def test_low_levels_are_exact(evaluation, level):
    for result in results_at(evaluation, level):
        assert result.rmts[Approach.EXT_LLA] == 0, result.case_id
        assert result.rmts[Approach.LLA] == 0, result.case_id


def test_sta_is_sensitive_to_renaming(evaluation):
    for result in results_at(evaluation, 2):
        assert result.rmts[Approach.STA] < 0, result.case_id


def test_ext_lla_degrades_monotonically(evaluation):
    means = [report.stats_for(Approach.EXT_LLA).mean_rmt for report in evaluation.levels]
    assert len(means) == len(PLAGIARISM_LEVELS)
    assert all(isinstance(m, Fraction) for m in means)
    assert means == sorted(means, reverse=True)


def test_ext_lla_dominates(evaluation):
    results = evaluation.results
    over_sta = sum(1 for r in results if r.rmts[Approach.EXT_LLA] >= r.rmts[Approach.STA])
    assert over_sta / len(results) >= 0.95
    assert evaluation.ranking.rank1_share(Approach.EXT_LLA) >= 0.95


def test_semantics_preserved(corpus_dir):
    for case in load_corpus(corpus_dir):
        if case.level == 6:
            continue
        original, plagiarized = case.load()
        inputs = case.inputs()
        assert evaluate_program(plagiarized, inputs) == evaluate_program(original, inputs), case.case_id


def test_generation_and_evaluation_are_deterministic(corpus_dir, evaluation, tmp_path):
    again = tmp_path / "again"
    generate_corpus(SEEDS_DIR, again, DEFAULT_PER_LEVEL, DEFAULT_GENERATOR_SEED)
    files = sorted(p.relative_to(corpus_dir) for p in corpus_dir.rglob("*") if p.is_file())
    assert files == sorted(p.relative_to(again) for p in again.rglob("*") if p.is_file())
    for rel in files:
        assert (again / rel).read_bytes() == (corpus_dir / rel).read_bytes(), rel

    first = write_reports(evaluation, tmp_path / "r1")
    second = write_reports(evaluate_corpus(again, min_match=3, workers=2, initial_search=20), tmp_path / "r2")
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes(), a.name


# ============================================================================
# Ataques isolados
# ============================================================================

def test_while_for_sugar_is_invisible(seeds):
    pairs = isolated(seeds, AttackKind.WHILE_TO_FOR)
    assert pairs
    for original, attacked in pairs:
        assert rmt(original, attacked, LLA) == 0, original.name
        assert rmt(original, attacked, EXT) == 0, original.name


def test_dowhile_changes_the_flow_paths(seeds):
    pairs = isolated(seeds, AttackKind.WHILE_TO_DOWHILE)
    assert pairs
    for original, attacked in pairs:
        assert rmt(original, attacked, EXT) < rmt(original, attacked, LLA), original.name


def test_dowhile_body_is_never_tiled_by_ext_lla():
    original = unit("""
        fn main() {
            int n = read();
            int total = 0;
            while (n > 0) {
                total = total + n * 2;
                n = n - 1;
            }
            print(total);
        }
    """)
    attacked = apply_attack(original, AttackSpec(5, AttackKind.WHILE_TO_DOWHILE, 0))
    pair = compare(original, attacked, EXT).pairing.pairs[0]
    tokens = build_sequences(original, EXT)[0].tokens
    body = {i for i, tok in enumerate(tokens) if "while-body" in tok.scope_path}
    assert body
    tiled = {i for t in pair.tiling.tiles for i in range(t.start_a, t.start_a + t.length)}
    assert not body & tiled


def _ext_tokens(source):
    return {s.unit_name: s.tokens for s in build_sequences(source, EXT)}


def test_dowhile_body_stays_untiled_on_every_seed(seeds):
    pairs = [
        (a, b) for a, b in isolated(seeds, AttackKind.WHILE_TO_DOWHILE)
        if not any(ScopeTag.DOWHILE_BODY in t.scope_path for ts in _ext_tokens(a).values() for t in ts)
    ]
    assert pairs
    for original, attacked in pairs:
        tokens = _ext_tokens(attacked)
        body = {
            (name, i) for name, ts in tokens.items()
            for i, tok in enumerate(ts) if ScopeTag.DOWHILE_BODY in tok.scope_path
        }
        assert body, original.name
        tiled = {
            (pair.unit_b, i)
            for pair in compare(original, attacked, EXT).pairing.pairs
            for t in pair.tiling.tiles for i in range(t.start_b, t.start_b + t.length)
        }
        assert not body & tiled, original.name


def test_dowhile_cases_in_the_corpus_favour_lla(corpus_dir, evaluation):
    rmts = {r.case_id: r.rmts for r in evaluation.results}
    cases = [
        c for c in load_corpus(corpus_dir)
        if any(a.kind == AttackKind.WHILE_TO_DOWHILE for a in c.attacks())
    ]
    assert cases
    for case in cases:
        scores = rmts[case.case_id]
        assert scores[Approach.EXT_LLA] < scores[Approach.LLA], case.case_id


def test_relocation_out_of_loop_hurts_ext_lla_more(seeds):
    pairs = isolated(seeds, AttackKind.RELOCATE_DECL_OUT_OF_LOOP)
    assert pairs
    for original, attacked in pairs:
        assert rmt(original, attacked, LLA) > rmt(original, attacked, EXT), original.name


def test_relocation_to_global_shatters_main(seeds):
    pairs = isolated(seeds, AttackKind.RELOCATE_DECL_TO_GLOBAL)
    assert pairs
    for original, attacked in pairs:
        assert rmt(original, attacked, EXT) < 0, original.name


def _has_argument_calls(source):
    return any(
        t.mnemonic == Op.INVOKE and t.operand.argc > 0
        for f in compile_program(source.ast).functions for t in f.body
    )


def test_extracted_blocks_never_favour_lla(seeds):
    pairs = isolated(seeds, AttackKind.EXTRACT_BLOCK)
    assert pairs
    for original, attacked in pairs:
        assert rmt(original, attacked, EXT) >= rmt(original, attacked, LLA), attacked.text


def test_argument_removal_pays_off(seeds):
    pairs = isolated(seeds, AttackKind.INLINE_FUNCTION) + isolated(seeds, AttackKind.EXTRACT_BLOCK)
    pairs = [(a, b) for a, b in pairs if _has_argument_calls(a) or _has_argument_calls(b)]
    assert pairs
    strictly = 0
    for original, attacked in pairs:
        ext, lla = rmt(original, attacked, EXT), rmt(original, attacked, LLA)
        assert ext >= lla, original.name
        strictly += ext > lla
    assert strictly >= 1


# ============================================================================
# Oráculos
# ============================================================================

def test_matcher_oracle():
    rng = random.Random(9)
    for _ in range(1000):
        a = [rng.randint(0, 4) for _ in range(rng.randint(0, 30))]
        b = [rng.randint(0, 4) for _ in range(rng.randint(0, 30))]
        mml = rng.randint(1, 4)
        result = rkr_gst(a, b, mml)
        assert result.matched == reference_gst(a, b, mml).matched
        assert result.matched <= min(len(a), len(b))
        covered_a, covered_b = set(), set()
        for tile in result.tiles:
            assert tile.length >= mml
            assert a[tile.start_a:tile.start_a + tile.length] == b[tile.start_b:tile.start_b + tile.length]
            span_a = set(range(tile.start_a, tile.start_a + tile.length))
            span_b = set(range(tile.start_b, tile.start_b + tile.length))
            assert not span_a & covered_a and not span_b & covered_b
            covered_a |= span_a
            covered_b |= span_b


def test_metric_identities_on_random_pairs(seeds):
    rng = random.Random(10)
    programs = [s.unit for s in seeds] + [s.logic_variant for s in seeds if s.logic_variant is not None]
    for _ in range(100):
        a, b = rng.choice(programs), rng.choice(programs)
        config = rng.choice([STA, LLA, EXT])
        ab = compare(a, b, config)
        ba = compare(b, a, config)
        assert ab.rmt == -(ab.len_a + ab.len_b - 2 * ab.matched_total)
        assert ab.similarity == pytest.approx(2 * ab.matched_total / (ab.len_a + ab.len_b))
        assert (ab.rmt, ab.similarity) == (ba.rmt, ba.similarity)
        assert compare(a, a, config).rmt == 0
