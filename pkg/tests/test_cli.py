import json

import pytest

from app import cli
from app.core.errors import TheoremViolationError
from app.models.hypergraph import PartiteHypergraph
from app.schemas.cli import CommandConfig
from app.services.instance_io import InstanceIOService


@pytest.fixture
def complete_k4(tmp_path):
    path = tmp_path / "complete_k4.json"
    InstanceIOService.write_instance(PartiteHypergraph.complete(3, [1, 1, 1, 1]), path)
    return path


def _json_output(capsys):
    return json.loads(capsys.readouterr().out)


def test_density(complete_k4, capsys):
    assert cli.main(["density", str(complete_k4)]) == 0
    report = _json_output(capsys)
    assert report["result"]["rho"] == ["1", "1", "1", "1"]
    assert report["config"]["subcommand"] == "density"
    assert report["config"]["input"] == str(complete_k4)


def test_construct_then_cliques(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert cli.main(["construct", "--r", "3", "--rho", "9/10,9/10,9/10,9/10", "--out", str(out)]) == 0
    recipe = _json_output(capsys)["result"]
    assert recipe["clique_density"] == "3/5"
    assert (tmp_path / "g.recipe.json").exists()

    assert cli.main(["cliques", str(out)]) == 0
    assert _json_output(capsys)["result"]["C"] == "3/5"


def test_construct_without_out_embeds_the_instance(capsys):
    assert cli.main(["construct", "--r", "2", "--rho", "3/4,3/4,3/4"]) == 0
    result = _json_output(capsys)["result"]
    assert result["recipe"]["clique_density"] == "1/4"
    assert len(result["instance"]["classes"]) == 3


def test_verify_bound(capsys):
    assert cli.main(["verify-bound", "--r", "2", "--sizes", "1,1,1", "--mode", "exhaustive"]) == 0
    result = _json_output(capsys)["result"]
    assert result["instances_checked"] == 8
    assert result["violations"] == []


def test_report_is_reproducible(capsys):
    argv = ["verify-bound", "--r", "3", "--sizes", "2,2,2,2", "--mode", "random", "--trials", "30", "--seed", "9"]
    assert cli.main(argv) == 0
    first = capsys.readouterr().out
    assert cli.main(argv + ["--jobs", "2"]) == 0
    second = json.loads(capsys.readouterr().out)
    assert json.loads(first)["result"] == second["result"]
    assert cli.main(argv) == 0
    assert capsys.readouterr().out == first


def test_report_written_to_out(tmp_path, complete_k4, capsys):
    out = tmp_path / "report.json"
    assert cli.main(["codegrees", str(complete_k4), "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["result"]["min"] == 2


def test_csv_output(complete_k4, capsys):
    assert cli.main(["density", str(complete_k4), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "schema_version,subcommand,key,value"
    assert lines[1] == "1,density,rho,\"1,1,1,1\""


def test_table_output_with_decimals(capsys):
    assert cli.main(["pos-region", "9/10", "9/10", "9/10", "--format", "table", "--decimal", "3"]) == 0
    out = capsys.readouterr().out
    assert "0.900" in out
    assert "in_region" in out


def test_domain_errors_exit_one(tmp_path, capsys):
    assert cli.main(["construct", "--r", "2", "--rho", "1/2,1/2,1/2"]) == 1
    assert "OutOfRegimeError" in capsys.readouterr().err

    assert cli.main(["construct", "--r", "2", "--rho", "3/4,x,3/4"]) == 1
    assert "BadRationalError" in capsys.readouterr().err

    assert cli.main(["density", str(tmp_path / "missing.json")]) == 1
    assert "cannot access" in capsys.readouterr().err


def test_usage_errors_exit_one(capsys):
    assert cli.main(["frobnicate"]) == 1
    assert "usage error" in capsys.readouterr().err
    assert cli.main(["construct", "--rho", "1,1,1"]) == 1


def test_theorem_violation_exits_two(monkeypatch, capsys):
    def broken(config):
        raise TheoremViolationError("C below the bound")

    monkeypatch.setattr(cli, "_execute", broken)
    status, report = cli.run(CommandConfig(subcommand="pos-grid"))
    assert status == 2
    assert report is None
    assert "theorem violation" in capsys.readouterr().err


def test_pos_grid(capsys):
    assert cli.main(["pos-grid", "--denominator", "4"]) == 0
    assert _json_output(capsys)["result"]["triples_checked"] == 20


def test_lift_then_threshold(tmp_path, capsys):
    graph = tmp_path / "triangle.json"
    graph.write_text(json.dumps({"r": 2, "n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}))
    lifted = tmp_path / "lifted.json"
    assert cli.main(["lift", str(graph), "--out", str(lifted)]) == 0
    capsys.readouterr()
    assert InstanceIOService.read_instance(lifted).class_sizes == (3, 3, 3)

    assert cli.main(["threshold", str(lifted)]) == 0
    certificate = _json_output(capsys)["result"]
    assert certificate["margin"] == "1/3"
    assert certificate["witness"] is not None

    assert cli.main(["edge-count", str(graph)]) == 0
    assert _json_output(capsys)["result"]["exceeds"] is True


def test_blowup_and_balance(tmp_path, capsys):
    source = tmp_path / "half.json"
    InstanceIOService.write_instance(PartiteHypergraph(2, [["1/2"], [1], [1]], [[(0, 0), (1, 0)]]), source)
    blown = tmp_path / "blown.json"
    assert cli.main(["blowup", str(source), "--scale", "2,1,1", "--out", str(blown)]) == 0
    capsys.readouterr()
    assert InstanceIOService.read_instance(blown).class_sizes == (2, 1, 1)

    assert cli.main(["balance", str(blown)]) == 0
    assert _json_output(capsys)["result"]["balanced"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-bound", "--r", "2", "--sizes", "0,1,1"],
        ["verify-bound", "--r", "1", "--sizes", "1,1"],
        ["threshold-property", "--r", "2", "--count", "-1"],
    ],
)
def test_invalid_option_values_exit_one(argv, capsys):
    assert cli.main(argv) == 1
    assert "invalid options" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["--jobs", "0"], ["--decimal", "-1"]])
def test_invalid_common_options_are_usage_errors(argv, complete_k4, capsys):
    assert cli.main(["density", str(complete_k4), *argv]) == 1
    assert "usage error" in capsys.readouterr().err


def test_undecodable_file_exits_one(tmp_path, capsys):
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff")
    assert cli.main(["density", str(path)]) == 1
    err = capsys.readouterr().err
    assert "MalformedJsonError" in err
    assert "byte 0" in err


def test_empty_class_exits_one(tmp_path, capsys):
    path = tmp_path / "empty_class.json"
    document = {
        "r": 2,
        "classes": [{"weights": ["1"]}, {"weights": ["1"]}, {"weights": []}],
        "edges": [],
    }
    path.write_text(json.dumps(document))
    assert cli.main(["density", str(path)]) == 1
    assert "SchemaError" in capsys.readouterr().err


def test_threshold_property(capsys):
    assert cli.main(["threshold-property", "--r", "2", "--size", "2", "--count", "25", "--seed", "4"]) == 0
    result = _json_output(capsys)["result"]
    assert result["instances_checked"] == 25
    assert result["passed"] is True
    assert result["failures"] == []
    assert result["witnesses_found"] == result["witnesses_required"]


def test_threshold_property_failure_exits_two(monkeypatch, capsys):
    from app.services import search_oracle

    def failing_check(graph, index, partial):
        partial.checked += 1
        partial.fail(graph, index, "injected failure")

    monkeypatch.setattr(search_oracle, "check_balanced_instance", failing_check)
    assert cli.main(["threshold-property", "--r", "2", "--size", "1", "--count", "2", "--jobs", "1"]) == 2
    result = _json_output(capsys)["result"]
    assert result["passed"] is False
    assert result["failure_count"] == 2
    assert [f["reason"] for f in result["failures"]] == ["injected failure"] * 2
