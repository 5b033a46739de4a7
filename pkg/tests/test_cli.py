import json
import xml.etree.ElementTree as ET

import pytest

from arrwwid.cli import main
from arrwwid import catalog


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_catalog_lists_builtins(capsys):
    code, out = run(capsys, "catalog")
    assert code == 0
    names = {row["name"] for row in json.loads(out)}
    assert names == set(catalog.names())


def test_validate_ok_and_exit_codes(capsys):
    code, out = run(capsys, "validate", "--tiling", "daun")
    assert code == 0 and json.loads(out)["valid"]


def test_certify_matches_operation(capsys, daun):
    from arrwwid.certify import certify_max_degree
    code, out = run(capsys, "certify", "--tiling", "daun", "--bound", "3")
    assert code == 0
    payload = json.loads(out)
    cert = certify_max_degree(daun, 3)
    assert payload["status"] == cert.status == "certified"
    assert payload["steps"] == cert.steps


def test_certify_refuted_exit_one(capsys):
    code, out = run(capsys, "certify", "--tiling", "quadtree", "--bound", "3")
    assert code == 1
    assert json.loads(out)["status"] == "counterexample"


def test_unknown_input_exit_two(capsys):
    code, _ = run(capsys, "validate", "--tiling", "nonexistent-thing")
    assert code == 2


def test_unknown_flag_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["certify", "--no-such-flag"])
    assert exc.value.code == 2


def test_arrwwid_command_dekking(capsys):
    code, out = run(capsys, "arrwwid", "--order", "dekking",
                    "--depths", "2..3", "--seed", "7", "--samples", "60")
    assert code == 0
    payload = json.loads(out)
    assert payload["max_fragments"] == 3


def test_connections_json_equals_operation(capsys, kochel):
    from arrwwid.curves import classify_connections
    code, out = run(capsys, "connections", "--order", "kochel", "--depth", "2")
    assert code == 0
    assert json.loads(out) == classify_connections(kochel, 2).as_dict()


def test_entryexit(capsys):
    code, out = run(capsys, "entryexit", "--order", "hilbert")
    payload = json.loads(out)
    assert payload["entry"] == [0.0, 0.0] and payload["exit"] == [1.0, 0.0]


def test_render_svg_well_formed(capsys):
    code, out = run(capsys, "render", "--tiling", "daun", "--depth", "1",
                    "--format", "svg")
    assert code == 0
    ET.fromstring(out)


def test_recursify_cmd(capsys):
    code, out = run(capsys, "recursify", "--spec", "hex-9", "--levels", "2")
    payload = json.loads(out)
    assert payload["degree"] == 3 and payload["cells_per_label"] == [81]


def test_predict_cmd(capsys):
    code, out = run(capsys, "predict", "--family", "hypercube", "--dim", "3")
    assert json.loads(out)["arrwwid"] == 8


def test_out_file(tmp_path, capsys):
    path = tmp_path / "o.json"
    code, _ = run(capsys, "degrees", "--tiling", "daun", "--depth", "2",
                  "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text())["max_interior_degree"] == 3


def test_simulate_csv(capsys):
    code, out = run(capsys, "simulate", "--order", "hilbert", "--order", "zorder",
                    "--points", "500", "--queries", "5", "--ratios", "1,10",
                    "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 4
    assert "total_cost" in lines[0]
