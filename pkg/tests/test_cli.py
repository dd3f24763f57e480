import json

import typer
from typer.testing import CliRunner

from cli.app import _CLICK_ERROR, _USAGE_ERROR, app, run
from common.frontend.loader import load
from common.utils.config import config
from common.utils.constants import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, VERSION

runner = CliRunner()


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert VERSION in result.output


def test_compare_same_file(fixtures_dir, capsys):
    path = str(fixtures_dir / "while_sum.mj")
    assert run(["compare", path, path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "rmt: 0" in out
    assert "similarity: 1.0" in out


def test_compare_json(fixtures_dir, capsys):
    a = str(fixtures_dir / "while_sum.mj")
    b = str(fixtures_dir / "for_sum.mj")
    assert run(["compare", a, b, "--approach", "lla", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["approach"] == "lla"
    assert data["rmt"] == 0


def test_compare_sta_sees_the_difference(fixtures_dir, capsys):
    a = str(fixtures_dir / "while_sum.mj")
    b = str(fixtures_dir / "for_sum.mj")
    assert run(["compare", a, b, "-a", "sta"]) == EXIT_OK
    assert "rmt: 0" not in capsys.readouterr().out


def test_missing_file_is_a_failure(fixtures_dir, tmp_path, capsys):
    code = run(["compare", str(fixtures_dir / "while_sum.mj"), str(tmp_path / "nada.mj")])
    assert code == EXIT_FAILURE
    assert "IoError" in capsys.readouterr().err


def test_parse_error_is_a_failure(tmp_path, capsys):
    broken = tmp_path / "broken.mj"
    broken.write_text("fn main() { print(1) }", encoding="utf-8")
    assert run(["dump", str(broken)]) == EXIT_FAILURE
    assert "ParseError" in capsys.readouterr().err


def test_usage_errors():
    assert run(["compare", "--bogus"]) == EXIT_USAGE
    assert run(["nada"]) == EXIT_USAGE
    assert run(["compare", "a.mj", "b.mj", "--min-match", "0"]) == EXIT_USAGE
    assert run(["compare", "a.mj", "b.mj", "--approach", "ast"]) == EXIT_USAGE


def test_dump_matches_golden(fixtures_dir, capsys):
    assert run(["dump", str(fixtures_dir / "global_init.mj")]) == EXIT_OK
    expected = (fixtures_dir / "global_init.dump").read_text(encoding="utf-8")
    assert capsys.readouterr().out == expected


def test_tokens(fixtures_dir, capsys):
    assert run(["tokens", str(fixtures_dir / "global_init.mj"), "-a", "lla"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "== main/3 =="
    assert "GLOAD g" in out


def test_attack(fixtures_dir, tmp_path, capsys):
    out_file = tmp_path / "out.mj"
    code = run([
        "attack", str(fixtures_dir / "while_sum.mj"),
        "--kind", "while-to-for", "--seed", "3", "--out", str(out_file),
    ])
    assert code == EXIT_OK
    assert "while-to-for" in capsys.readouterr().err
    assert "for (" in out_file.read_text(encoding="utf-8")
    load(out_file)


def test_attack_level_below_minimum(fixtures_dir):
    code = run(["attack", str(fixtures_dir / "while_sum.mj"), "--kind", "inline-function", "--level", "2"])
    assert code == EXIT_USAGE
    code = run(["attack", str(fixtures_dir / "while_sum.mj"), "--kind", "comment-strip", "--level", "0"])
    assert code == EXIT_USAGE


def test_usage_errors_follow_the_installed_typer():
    # O Typer recente levanta as exceções da sua cópia embutida do Click
    assert issubclass(typer.BadParameter, _USAGE_ERROR)
    assert issubclass(_USAGE_ERROR, _CLICK_ERROR)


def test_attack_not_applicable(fixtures_dir, capsys):
    code = run(["attack", str(fixtures_dir / "while_sum.mj"), "--kind", "switch-to-ifchain"])
    assert code == EXIT_FAILURE
    assert "NotApplicable" in capsys.readouterr().err


def test_corpus_generate_and_evaluate(seeds_dir, tmp_path):
    corpus = tmp_path / "corpus"
    assert run(["corpus", "generate", "--seeds", str(seeds_dir), "--out", str(corpus), "-n", "1", "--seed", "4"]) == EXIT_OK
    manifest = json.loads((corpus / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["generator_seed"] == 4
    assert manifest["total"] == 6

    reports = tmp_path / "reports"
    assert run(["corpus", "evaluate", "--corpus", str(corpus), "--out", str(reports), "-f", "json"]) == EXIT_OK
    data = json.loads((reports / "report.json").read_text(encoding="utf-8"))
    assert data["case_count"] + len(data["invalid_cases"]) == 6
    assert not (reports / "ranking.csv").exists()


def test_corpus_evaluate_bad_root(tmp_path, capsys):
    assert run(["corpus", "evaluate", "--corpus", str(tmp_path / "nada")]) == EXIT_FAILURE
    assert "CorpusFormatError" in capsys.readouterr().err


def test_seed_from_environment(seeds_dir, tmp_path, monkeypatch):
    monkeypatch.setenv("CODESIM_SEED", "11")
    corpus = tmp_path / "corpus"
    assert run(["corpus", "generate", "--seeds", str(seeds_dir), "--out", str(corpus), "-n", "1"]) == EXIT_OK
    assert json.loads((corpus / "manifest.json").read_text(encoding="utf-8"))["generator_seed"] == 11
    assert run(["corpus", "generate", "--seeds", str(seeds_dir), "--out", str(corpus), "-n", "1", "--seed", "12"]) == EXIT_OK
    assert json.loads((corpus / "manifest.json").read_text(encoding="utf-8"))["generator_seed"] == 12
    monkeypatch.delenv("CODESIM_SEED")
    config.reload()
