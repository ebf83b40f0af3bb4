import io
import json
import subprocess
import sys
from importlib import resources

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from graphbraid.cli import run
from graphbraid.fixtures import fixture_tree, load_json_tree, tree_to_json
from graphbraid.graph_model import complete_graph


def _schemas():
    root = resources.files("graphbraid") / "schema"
    out = {}
    for name in ("report", "graph", "tree", "verdict"):
        out[name] = json.loads((root / f"{name}.schema.json").read_text())
    return out


SCHEMAS = _schemas()
REGISTRY = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in SCHEMAS.values())


def validate(name, obj):
    Draft202012Validator(SCHEMAS[name], registry=REGISTRY).validate(obj)


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def result(*argv):
    code, text = cli(*argv)
    assert code == 0
    rep = json.loads(text)
    validate("report", rep)
    return rep["result"]


def test_raag_s0():
    res = result("raag", "--fixture", "S0", "--n", "5")
    validate("verdict", res)
    assert res["verdict"] == "NotRAAG" and res["certificate"]["kind"] == "ContainsS0"


def test_homology_k33():
    res = result("homology", "--fixture", "K33", "--n", "2", "--dim", "1")
    assert (res["betti"], res["torsion"]) == (4, [2])


def test_oracle_compare_theta():
    assert result("oracle-compare", "--fixture", "Theta", "--n", "3", "--maxdim", "2")["status"] == "match"


def test_other_commands_run():
    assert result("cells", "--fixture", "S0", "--n", "3", "--dim", "1")["1"]["critical"] > 0
    assert "2" in result("morse", "--fixture", "Theta", "--n", "2")["boundaries"]
    assert result("present", "--fixture", "S0", "--n", "4", "--script", "auto")["commutator_related"]
    assert result("minor", "--fixture", "K4", "--n", "2", "--pattern", "S0")["contains"]
    assert result("audit", "--fixture", "K33", "--n", "2")["consistent"]
    assert result("planar-torsion", "--fixture", "K4", "--n", "2")["planar"]
    assert "cup_graph" in result("cohomology", "--fixture", "T2", "--n", "3")


def test_graph_file_input(tmp_path):
    f = tmp_path / "k4.json"
    f.write_text(json.dumps(complete_graph(4).to_json()))
    validate("graph", json.loads(f.read_text()))
    res = result("homology", "--graph", str(f), "--n", "2", "--dim", "1")
    assert res["torsion"] == []
    t = tmp_path / "tree.json"
    t.write_text(json.dumps(tree_to_json(fixture_tree("Theta", 2))))
    assert result("cells", "--graph", str(t), "--n", "2", "--dim", "0")["0"]["critical"] == 1


def test_output_is_byte_identical():
    argv = ("present", "--fixture", "Theta", "--n", "3", "--script", "auto")
    assert cli(*argv)[1] == cli(*argv)[1]
    assert cli(*argv)[1] == cli(*argv, "--threads", "4")[1]


def test_exit_codes(tmp_path):
    assert cli("homology", "--n", "2")[0] == 2
    assert cli("nonsense")[0] == 2
    assert cli("homology", "--fixture", "NoSuchFigure", "--n", "2")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli("homology", "--graph", str(bad), "--n", "2")[0] == 1
    assert cli("oracle-compare", "--fixture", "K5", "--n", "3", "--budget", "10")[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "graphbraid", "homology", "--fixture", "Theta", "--n", "2", "--dim", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["betti"] == 1


@pytest.mark.parametrize("name", ["Fig2", "Fig11", "Fig12", "Fig13", "Fig14", "Fig15", "Fig25", "Fig26", "Fig3"])
def test_fixture_json_matches_builder(name):
    data = tree_to_json(load_json_tree(name))
    validate("tree", data)
    assert data == tree_to_json(fixture_tree(name))
