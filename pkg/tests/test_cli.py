import json

from planelie import __version__
from planelie.core.config import configure
from planelie.main import cli
from planelie.schemas.catalog import TableReport
from planelie.services import catalog as catalog_service

MILNE_PINNEY = """\
param c nonzero
X1 = -x dy
X2 = -x/2 dx + y/2 dy
X3 = y dx + c/x^3 dy
"""


def run_json(runner, *args):
    result = runner.invoke(cli, ["--json", *args])
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert __version__ in result.output


def test_bracket(runner):
    out = run_json(runner, "bracket", "x^2 dx + y^2 dy", "dx + dy")
    assert out["schema"] == 1
    assert out["command"] == "bracket"
    assert out["results"]["bracket"]["x"] == "-2*x"
    assert out["results"]["bracket"]["y"] == "-2*y"
    assert out["results"]["commute"] == "proved-false"


def test_parameters_on_the_command_line(runner):
    out = run_json(runner, "conformal", "a*x dx + a*y dy", "gE", "--symbol", "a:nonzero")
    assert out["results"]["factor"] == "2*a"
    out = run_json(runner, "conformal", "a*x dx + a*y dy", "gE", "--param", "a=3")
    assert out["results"]["factor"] == "6"


def test_killing_and_curvature(runner):
    out = run_json(runner, "killing", "y dx - x dy", "gE")
    assert out["results"]["killing"] == "proved-true"
    out = run_json(runner, "curvature", "1/y^2 dxdx + 1/y^2 dydy")
    assert out["results"]["scalar_curvature"] == "-2"
    assert out["results"]["gaussian_curvature"] == "-1"


def test_lie_derivative_of_contravariant_tensor(runner):
    out = run_json(runner, "lieder", "y dx - x dy", "dxdx + dydy", "--contra")
    assert out["inputs"]["variance"] == "contravariant"
    assert out["results"]["zero"] == "proved-zero"


def test_input_error_exit_code(runner):
    result = runner.invoke(cli, ["bracket", "x^ dx", "dy"])
    assert result.exit_code == 2
    assert "error:" in result.output
    result = runner.invoke(cli, ["bracket", "z dx", "dy"])
    assert result.exit_code == 2


def test_degenerate_input_exit_code(runner):
    result = runner.invoke(cli, ["curvature", "dxdx"])
    assert result.exit_code == 3
    assert "degenerate" in result.output


def test_casimir_metric_from_file(runner, algebra_file):
    path = algebra_file(MILNE_PINNEY)
    out = run_json(runner, "casimir-metric", path, "--param", "c=2")
    assert out["results"]["classification"] == "sl2"
    assert out["results"]["casimirs"][0]["det"] == "2"
    assert out["results"]["casimirs"][0]["det_verdict"] == "proved-nonzero"
    assert set(out["results"]["hamiltonian"].values()) == {"proved-true"}


def test_algebra_source_is_required_once(runner, algebra_file):
    assert runner.invoke(cli, ["domain"]).exit_code == 2
    path = algebra_file(MILNE_PINNEY)
    assert runner.invoke(cli, ["domain", path, "--catalog", "I4"]).exit_code == 2


def test_domain_and_distributions_of_a_catalog_row(runner):
    out = run_json(runner, "domain", "--catalog", "I4")
    assert out["results"]["rank"] == 2
    assert len(out["results"]["singular_factors"]) == 1
    out = run_json(runner, "invariant-dist", "--catalog", "I4", "--candidate", "dx", "--candidate", "dy")
    assert [d["provenance"] for d in out["results"]["distributions"]] == ["candidate", "candidate"]


def test_obstruction(runner):
    out = run_json(runner, "obstruction", "--catalog", "P1", "--param", "alpha=0")
    frame = out["results"]["frames"][0]
    assert frame["dimension"] == 1
    assert frame["commuting"] is True
    assert frame["witnesses"][0]["signature"] == "definite"
    out = run_json(runner, "obstruction", "--catalog", "I14A", "--param", "c=1", "--frame", "dy", "dx + y dy")
    assert out["results"]["frames"][0]["commuting"] is False
    assert out["results"]["frames"][0]["dimension"] == 3


def test_catalog_list_and_grid(runner):
    out = run_json(runner, "catalog", "list")
    assert len(out["results"]["rows"]) == 33
    out = run_json(runner, "catalog", "grid", "P1")
    assert [p["alpha"] for p in out["results"]["points"]] == ["0", "1/2", "1", "2"]


def test_catalog_show_instantiates(runner):
    out = run_json(runner, "catalog", "show", "I16", "--param", "alpha=1", "--param", "r=2")
    assert len(out["results"]["basis"]) == 5
    out = run_json(runner, "catalog", "show", "I16")
    assert "basis" not in out["results"]


def test_catalog_verify(runner):
    out = run_json(runner, "catalog", "verify", "I4")
    assert out["ok"] is True
    assert out["entries"][0]["status"] == "PASS"
    result = runner.invoke(cli, ["catalog", "verify", "Q9"])
    assert result.exit_code == 2


def test_catalog_verify_mismatch_exits_one(runner, tmp_path):
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps({
        "version": 1,
        "entries": [{"id": "T", "cls": "primitive", "iso": "R^2", "basis": ["dx", "dy"], "kill": "-"}],
    }), encoding="utf-8")
    configure(catalog_path=path)
    result = runner.invoke(cli, ["catalog", "verify", "all"])
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_milne_pinney_example(runner):
    out = run_json(runner, "example", "milne-pinney", "--c", "2")
    assert out["results"]["classification"] == "sl2"
    assert out["results"]["casimir"]["det"] == "2"
    items = out["results"]["erratum"]["items"]
    assert [item["holds"] for item in items] == [False, True]


def test_schrodinger_example(runner):
    out = run_json(runner, "example", "schrodinger")
    assert out["results"]["classification"] == "so3"
    assert out["results"]["scalar_curvature"] == "8"


def test_output_is_deterministic(runner):
    first = runner.invoke(cli, ["--json", "example", "milne-pinney"])
    second = runner.invoke(cli, ["--json", "example", "milne-pinney"])
    assert first.output == second.output


def test_plain_output(runner):
    result = runner.invoke(cli, ["bracket", "dx", "x dy"])
    assert result.exit_code == 0
    assert result.output.startswith("bracket\n")
    assert "commute: proved-false" in result.output


def test_verify_all_passes_the_eta_family(runner, monkeypatch):
    seen = {}

    def fake_verify_all(ids=None, grid=None, eta="poly"):
        seen["eta"] = eta
        return TableReport(entries=[])

    monkeypatch.setattr(catalog_service, "verify_all", fake_verify_all)
    result = runner.invoke(cli, ["catalog", "verify", "all", "--eta", "exp"])
    assert result.exit_code == 0, result.output
    assert seen["eta"] == "exp"


def test_domain_excludes_poles(runner, algebra_file):
    out = run_json(runner, "domain", algebra_file(MILNE_PINNEY))
    assert out["results"]["rank"] == 2
    assert out["results"]["pole_factors"] == ["x"]
    assert "x" in out["results"]["singular_factors"]
