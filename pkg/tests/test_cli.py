import json

import pytest
from typer.testing import CliRunner

from src.cli import app, run_command
from src.utils import constant

runner = CliRunner(mix_stderr=False)


def json_lines(output: str):
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


def test_universe_stats():
    result = runner.invoke(app, ["universe", "m3", "--rank", "3", "--stats"])
    assert result.exit_code == constant.EXIT_VALID
    assert "|V_<=2| = 4" in result.stdout
    assert "|V_<=3| = 256" in result.stdout


def test_universe_lists_small_levels():
    result = runner.invoke(app, ["--format", "json", "universe", "m3", "--rank", "1"])
    payload = json.loads(result.stdout)
    assert payload["names"] == ["{}"]


def test_eval_prints_the_value():
    result = runner.invoke(app, ["eval", "m3", "{} eq {}", "--rank", "1"])
    assert result.exit_code == constant.EXIT_VALID
    assert result.stdout.strip() == "1"


def test_eval_with_the_algebraic_policy():
    result = runner.invoke(
        app, ["--format", "json", "eval", "h3star", "~({} in {{}: 1/2})", "--policy", "algebraic"]
    )
    assert result.exit_code == constant.EXIT_VALID
    assert json.loads(result.stdout)["value"] == "1"


def test_free_variable_is_a_usage_error():
    result = runner.invoke(app, ["eval", "m3", "x in {}"])
    assert result.exit_code == constant.EXIT_USAGE
    assert "ScopeError" in result.stderr


def test_parse_error_reports_the_span():
    result = runner.invoke(app, ["--format", "json", "eval", "m3", "{} in "])
    assert result.exit_code == constant.EXIT_USAGE
    payload = json.loads(result.stderr.strip().splitlines()[-1])
    assert payload["error"] == "ParseError"
    assert payload["span"]["start"] == 6


def test_oversized_universe_is_a_resource_error():
    result = runner.invoke(app, ["universe", "m3", "--rank", "4"])
    assert result.exit_code == constant.EXIT_RESOURCE


def test_ceiling_option_lowers_the_limit():
    result = runner.invoke(app, ["--ceiling", "10", "universe", "m3", "--rank", "3"])
    assert result.exit_code == constant.EXIT_RESOURCE


def test_leibniz_counterexample_in_json():
    result = runner.invoke(app, ["--format", "json", "leibniz", "h3star", "--policy", "algebraic"])
    assert result.exit_code == constant.EXIT_COUNTEREXAMPLE
    (document,) = json_lines(result.stdout)
    assert document["verdict"] == constant.COUNTEREXAMPLE
    assert document["witness"]["phi"] == "~({} in x)"


def test_leibniz_holds_on_m3():
    result = runner.invoke(app, ["leibniz", "m3", "--depth", "0"])
    assert result.exit_code == constant.EXIT_VALID
    assert "valid" in result.stdout


@pytest.mark.slow
def test_leibniz_depth_two_on_m3():
    result = runner.invoke(
        app, ["--format", "json", "leibniz", "m3", "--rank", "2", "--depth", "2", "--policy", "standard"]
    )
    assert result.exit_code == constant.EXIT_VALID
    (document,) = json_lines(result.stdout)
    assert document["checked"] == 44112 * 16


def test_single_zf_axiom():
    result = runner.invoke(app, ["--format", "json", "zf", "m3", "--axiom", "pairing"])
    assert result.exit_code == constant.EXIT_VALID
    (document,) = json_lines(result.stdout)
    assert document["axiom"] == "pairing"
    assert document["verdict"] == constant.VALID


def test_separation_with_a_template():
    result = runner.invoke(
        app, ["zf", "h3star", "--axiom", "separation", "--policy", "algebraic", "--template", "~({} in x)"]
    )
    assert result.exit_code == constant.EXIT_COUNTEREXAMPLE
    assert "witness:" in result.stdout


def test_lemmas_on_m3():
    result = runner.invoke(app, ["--format", "json", "lemmas", "m3"])
    assert result.exit_code == constant.EXIT_VALID
    checks = [document["check"] for document in json_lines(result.stdout)]
    assert checks == ["identity-laws", "hat-lemma", "bounded-exactness", "monotonicity"]


def test_paraconsistent_m3_reports_the_witness():
    result = runner.invoke(app, ["paraconsistent", "m3"])
    assert result.exit_code == constant.EXIT_COUNTEREXAMPLE
    assert "v(alpha) = 1/2" in result.stdout


def test_prop_axioms_all():
    result = runner.invoke(app, ["prop-axioms", "m3", "--all"])
    assert result.exit_code == constant.EXIT_VALID
    assert result.stdout.count("valid") >= len(constant.SCHEMAS)


def test_check_structure_text():
    result = runner.invoke(app, ["check-structure", "m3"])
    assert result.exit_code == constant.EXIT_VALID
    assert "N_1/2 = {1}" in result.stdout


def test_saturate_prints_a_definition():
    result = runner.invoke(app, ["saturate", "boolean2"])
    assert result.exit_code == constant.EXIT_VALID
    assert json.loads(result.stdout)["N"]["0"] == ["1"]


def test_non_lattice_file(tmp_path):
    path = tmp_path / "pentagon.json"
    path.write_text(
        json.dumps(
            {
                "carrier": ["0", "a", "b", "c", "1"],
                "leq": [["0", "a"], ["a", "b"], ["b", "1"], ["0", "c"], ["c", "1"]],
            }
        )
    )
    result = runner.invoke(app, ["check-algebra", str(path)])
    assert result.exit_code == constant.EXIT_USAGE
    assert "NoResiduum" in result.stderr


@pytest.mark.parametrize("kind", ["verdict", "axiom", "validation"])
def test_report_schemas(kind):
    result = runner.invoke(app, ["schema", kind])
    assert result.exit_code == 0
    assert "properties" in json.loads(result.stdout)


def test_run_command_returns_the_exit_code():
    assert run_command(["eval", "m3", "{} eq {}"]) == constant.EXIT_VALID
    assert run_command(["paraconsistent", "m3"]) == constant.EXIT_COUNTEREXAMPLE
    assert run_command(["bogus"]) == constant.EXIT_USAGE
