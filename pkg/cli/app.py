"""
Interface de linha de comandos do codesim.

Subcomandos:
    compare A.mj B.mj       Compara dois programas
    tokens FILE.mj          Mostra as sequências de tokens de uma abordagem
    dump FILE.mj            Mostra o IR compilado
    attack FILE.mj          Aplica um ataque de plágio e imprime o resultado
    corpus generate         Gera o corpus de plágio
    corpus evaluate         Avalia um corpus e escreve os relatórios

Exit codes: 0 sucesso, 1 erro do domínio (ficheiro, parse, corpus...),
2 erro de utilização.
"""

import json
from enum import Enum
from pathlib import Path
from typing import List, Optional

import typer
from rich.console import Console
from rich.table import Table

from attacks.generator import generate_corpus
from attacks.specs import ALL_KINDS, MIN_LEVEL, AttackSpec
from attacks.transforms import run_attack
from common.frontend.loader import load
from common.lowering.compiler import compile_program
from common.lowering.dump import dump
from common.matcher.compare import compare as compare_units
from common.pipeline.approach import ApproachConfig
from common.pipeline.sequences import build_sequences, render_sequences
from common.utils.config import config
from common.utils.constants import (
    APP_NAME, APPROACH_EXT_LLA, APPROACH_LLA, APPROACH_ORDER, APPROACH_STA,
    DEFAULT_PER_LEVEL, DEFAULT_SEEDS_DIR, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, VERSION,
)
from common.utils.errors import CodesimError
from common.utils.logger import get_logger, setup_logger
from harness.report import REPORT_FORMATS, write_reports
from harness.runner import CorpusEvaluation, evaluate_corpus

logger = get_logger("cli")

console = Console()
err_console = Console(stderr=True)


class ApproachName(str, Enum):
    sta = APPROACH_STA
    lla = APPROACH_LLA
    ext_lla = APPROACH_EXT_LLA


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


class ReportFormat(str, Enum):
    json = "json"
    csv = "csv"


AttackKindName = Enum("AttackKindName", {kind.replace("-", "_"): kind for kind in ALL_KINDS}, type=str)


app = typer.Typer(
    name=APP_NAME,
    help="Deteção de plágio em código fonte por tokens de baixo nível.",
    add_completion=False,
    no_args_is_help=True,
)
corpus_app = typer.Typer(help="Geração e avaliação do corpus de plágio.", no_args_is_help=True)
app.add_typer(corpus_app, name="corpus")


def _click_error(name: str) -> type:
    """Classe de erro do Click usada pelo Typer instalado (o pacote `click` ou a cópia embutida)."""
    return next(cls for cls in typer.BadParameter.__mro__ if cls.__name__ == name)


_USAGE_ERROR = _click_error("UsageError")
_CLICK_ERROR = _click_error("ClickException")


def _fail(error: CodesimError) -> typer.Exit:
    err_console.print(error.diagnostic(), markup=False, highlight=False)
    return typer.Exit(code=EXIT_FAILURE)


def _version_callback(value: bool):
    if value:
        typer.echo(f"{APP_NAME} {VERSION}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False, "--version", callback=_version_callback, is_eager=True, help="Mostra a versão e sai."
    ),
):
    """Deteção de plágio em código fonte por tokens de baixo nível."""
    config.reload()
    setup_logger()


def _min_match(value: Optional[int]) -> int:
    result = value if value is not None else config.min_match
    if result < 1:
        raise typer.BadParameter("deve ser >= 1", param_hint="--min-match")
    return result


# ============================================================================
# Comparação e inspeção
# ============================================================================

@app.command()
def compare(
    file_a: Path = typer.Argument(..., help="Primeiro programa (.mj)"),
    file_b: Path = typer.Argument(..., help="Segundo programa (.mj)"),
    approach: ApproachName = typer.Option(ApproachName.ext_lla, "--approach", "-a", help="Abordagem"),
    min_match: Optional[int] = typer.Option(None, "--min-match", "-m", help="Comprimento mínimo de match"),
    output_format: OutputFormat = typer.Option(OutputFormat.text, "--format", "-f", help="Formato do output"),
):
    """Compara dois programas e mostra o RMT e a similaridade."""
    mml = _min_match(min_match)
    try:
        result = compare_units(load(file_a), load(file_b), ApproachConfig.create(approach.value, mml))
    except CodesimError as e:
        raise _fail(e)

    if output_format == OutputFormat.json:
        typer.echo(json.dumps(result.to_dict(), indent=2, sort_keys=True))
    else:
        typer.echo(result.format_text(), nl=False)


@app.command()
def tokens(
    file: Path = typer.Argument(..., help="Programa (.mj)"),
    approach: ApproachName = typer.Option(ApproachName.ext_lla, "--approach", "-a", help="Abordagem"),
):
    """Mostra as unidades de comparação e os respetivos tokens."""
    try:
        bundle = build_sequences(load(file), ApproachConfig.create(approach.value, config.min_match))
    except CodesimError as e:
        raise _fail(e)
    typer.echo(render_sequences(bundle), nl=False)


@app.command("dump")
def dump_command(file: Path = typer.Argument(..., help="Programa (.mj)")):
    """Mostra o IR compilado (um token por linha, com o caminho de scope)."""
    try:
        program = compile_program(load(file).ast)
    except CodesimError as e:
        raise _fail(e)
    typer.echo(dump(program), nl=False)


@app.command()
def attack(
    file: Path = typer.Argument(..., help="Programa a atacar (.mj)"),
    kind: AttackKindName = typer.Option(..., "--kind", "-k", help="Tipo de ataque"),
    seed: int = typer.Option(0, "--seed", "-s", help="Semente do ataque"),
    level: Optional[int] = typer.Option(None, "--level", "-l", help="Nível do caso (default: nível do ataque)"),
    variant: Optional[Path] = typer.Option(None, "--variant", help="Variante lógica (logic-rewrite)"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Ficheiro de saída (default: stdout)"),
):
    """Aplica um ataque de plágio a um programa."""
    try:
        spec = AttackSpec(level if level is not None else MIN_LEVEL[kind.value], kind.value, seed)
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--level")

    try:
        unit = load(file)
        logic_variant = load(variant) if variant is not None else None
        result, applied = run_attack(unit, spec, logic_variant)
    except CodesimError as e:
        raise _fail(e)

    if out is None:
        typer.echo(result.text, nl=False)
    else:
        out.write_text(result.text, encoding="utf-8")
    err_console.print(f"{applied.kind}: {applied.target}", markup=False, highlight=False)


# ============================================================================
# Corpus
# ============================================================================

@corpus_app.command("generate")
def corpus_generate(
    seeds: Path = typer.Option(Path(DEFAULT_SEEDS_DIR), "--seeds", help="Diretório dos programas semente"),
    out: Path = typer.Option(..., "--out", "-o", help="Raiz do corpus"),
    per_level: int = typer.Option(DEFAULT_PER_LEVEL, "--per-level", "-n", min=1, help="Casos por nível"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semente do gerador (default: CODESIM_SEED)"),
):
    """Gera o corpus de plágio (seis níveis)."""
    generator_seed = seed if seed is not None else config.generator_seed
    if seed is not None and config.seed_from_env:
        logger.info(f"--seed {seed} tem precedência sobre CODESIM_SEED={config.generator_seed}")
    try:
        manifest = generate_corpus(seeds, out, per_level, generator_seed)
    except CodesimError as e:
        raise _fail(e)
    console.print(
        f"[green]✓[/green] {manifest['total']} casos gerados em {out} (seed {generator_seed})",
        highlight=False,
    )


def _summary_table(evaluation: CorpusEvaluation) -> Table:
    table = Table(title="RMT médio por nível")
    table.add_column("Nível", justify="right")
    table.add_column("Casos", justify="right")
    for approach in APPROACH_ORDER:
        table.add_column(approach, justify="right")
    for report in evaluation.levels:
        row = [str(report.level), str(report.case_count)]
        if report.invalid_count:
            row[1] += f" (+{report.invalid_count} inválidos)"
        if report.stats:
            row.extend(f"{float(report.stats_for(a).mean_rmt):.2f}" for a in APPROACH_ORDER)
        else:
            row.extend("-" for _ in APPROACH_ORDER)
        table.add_row(*row)

    histogram = evaluation.ranking.histogram()
    for rank in range(1, len(APPROACH_ORDER) + 1):
        row = [f"rank {rank}", ""]
        row.extend(str(histogram.get(a, {}).get(rank, 0)) for a in APPROACH_ORDER)
        table.add_row(*row, style="dim" if rank > 1 else None)
    return table


@corpus_app.command("evaluate")
def corpus_evaluate(
    corpus: Path = typer.Option(..., "--corpus", "-c", help="Raiz do corpus"),
    min_match: Optional[int] = typer.Option(None, "--min-match", "-m", help="Comprimento mínimo de match"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Diretório dos relatórios (default: a raiz do corpus)"),
    formats: Optional[List[ReportFormat]] = typer.Option(None, "--format", "-f", help="json e/ou csv (repetível)"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", min=1, help="Threads de avaliação"),
):
    """Avalia um corpus nas três abordagens e escreve os relatórios."""
    mml = _min_match(min_match)
    selected = [f.value for f in formats] if formats else list(REPORT_FORMATS)
    try:
        evaluation = evaluate_corpus(corpus, mml, workers)
        written = write_reports(evaluation, out if out is not None else corpus, selected)
    except CodesimError as e:
        raise _fail(e)

    console.print(_summary_table(evaluation))
    if evaluation.invalid:
        console.print(f"[yellow]⚠[/yellow] {len(evaluation.invalid)} casos inválidos (ver report)")
    for path in written:
        console.print(f"[green]✓[/green] {path}", highlight=False)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Executa a CLI e devolve o exit code.

    Args:
        argv: Argumentos (default: sys.argv[1:])

    Returns:
        0, 1 ou 2
    """
    try:
        result = app(args=argv, prog_name=APP_NAME, standalone_mode=False)
    except _USAGE_ERROR as e:
        e.show()
        return EXIT_USAGE
    except _CLICK_ERROR as e:
        e.show()
        return EXIT_FAILURE
    except typer.Abort:
        return EXIT_FAILURE
    return result if isinstance(result, int) else EXIT_OK
