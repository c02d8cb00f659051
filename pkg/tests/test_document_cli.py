import json
import pathlib
from fractions import Fraction as F

import pytest

from normrig import cli, fixtures
from normrig.document import (
    DocumentError,
    load_document,
    load_document_dict,
    serialize_document,
)


def minimal_doc(**overrides):
    doc = {
        "norm": {"kind": "linf", "dim": 2},
        "vertices": [
            {"id": "a", "coords": ["0", "0"]},
            {"id": "b", "coords": ["1", "1/3"]},
        ],
        "edges": [["a", "b"]],
    }
    doc.update(overrides)
    return doc


def test_load_minimal_document():
    doc = load_document_dict(minimal_doc())
    assert doc.framework.ctx.backend == "exact"
    assert doc.framework.points["b"] == (F(1), F(1, 3))
    assert doc.action is None


def test_rational_strings_parse_exactly():
    doc = load_document_dict(minimal_doc(vertices=[
        {"id": "a", "coords": ["-1/4", "-1"]},
        {"id": "b", "coords": ["1/4", "3/2"]},
    ]))
    assert doc.framework.points["a"] == (F(-1, 4), F(-1))
    assert doc.framework.points["b"] == (F(1, 4), F(3, 2))


def test_duplicate_ids_and_coincident_points_rejected():
    with pytest.raises(DocumentError, match="duplicate vertex id"):
        load_document_dict(minimal_doc(vertices=[
            {"id": "a", "coords": ["0", "0"]},
            {"id": "a", "coords": ["1", "0"]},
        ]))
    with pytest.raises(DocumentError, match="not injective"):
        load_document_dict(minimal_doc(vertices=[
            {"id": "a", "coords": ["0", "0"]},
            {"id": "b", "coords": ["0", "0"]},
        ]))


def test_schema_errors_carry_pointers():
    with pytest.raises(DocumentError, match="/norm"):
        load_document_dict({"vertices": [], "edges": []})
    with pytest.raises(DocumentError, match="/edges/0"):
        load_document_dict(minimal_doc(edges=[["a", "zz"]]))
    with pytest.raises(DocumentError, match="/vertices/1/coords"):
        load_document_dict(minimal_doc(vertices=[
            {"id": "a", "coords": ["0", "0"]},
            {"id": "b", "coords": ["1"]},
        ]))


def test_builtin_norm_names_expand():
    doc = load_document_dict(minimal_doc(norm="linf2"))
    assert doc.framework.norm.is_polyhedral
    doc3 = load_document("example3d")
    assert doc3.framework.norm.label == "hexprism(3)"
    with pytest.raises(DocumentError):
        load_document_dict(minimal_doc(norm="nope9"))


def test_lq_and_polyhedral_norm_objects():
    doc = load_document_dict(minimal_doc(norm={"kind": "lq", "dim": 2, "q": "3/2"}))
    assert doc.framework.norm.q == F(3, 2)
    doc2 = load_document_dict(minimal_doc(norm={
        "kind": "polyhedral", "dim": 2,
        "facets": [["1", "0"], ["-1", "0"], ["0", "1"], ["0", "-1"]]}))
    assert len(doc2.framework.norm.facet_pairs) == 2
    doc3 = load_document_dict(minimal_doc(norm={
        "kind": "polyhedral", "dim": 2,
        "ball_vertices": [["1", "1"], ["1", "-1"], ["-1", "1"], ["-1", "-1"]]}))
    assert len(doc3.framework.norm.facets) == 4


def test_fixture_files_match_builders():
    base = pathlib.Path(cli.__file__).parent / "fixtures"
    for name, builder in fixtures.FIXTURES.items():
        on_disk = json.loads((base / f"{name}.json").read_text())
        assert on_disk == builder(), name


def test_all_fixture_names_load():
    for name in fixtures.FIXTURES:
        doc = load_document(name)
        assert doc.framework.graph.n >= 4
    load_document("fig1c.json")
    with pytest.raises(DocumentError):
        load_document("missing-thing")


def test_serialize_round_trip_idempotent():
    doc = load_document("fig1c")
    once = serialize_document(doc)
    again = serialize_document(load_document_dict(once))
    assert json.dumps(once, sort_keys=True) == json.dumps(again, sort_keys=True)


def test_group_theta_validation():
    base = fixtures.fig1c()
    base["group"]["theta"]["c2"]["v1"] = "v1"
    with pytest.raises(DocumentError, match="theta"):
        load_document_dict(base)


def test_cli_analyze_exit_codes(capsys):
    assert cli.main(["analyze", "fig1c"]) == 0
    out = capsys.readouterr().out
    assert "isostatic" in out
    assert cli.main(["analyze", "fig3a"]) == 0  # flexible but no proven check fails
    assert cli.main(["analyze", "no-such-file.json"]) == 2


def test_cli_symmetry_exit_codes(capsys):
    assert cli.main(["symmetry", "fig1c"]) == 0
    assert cli.main(["symmetry", "fig3a"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_cli_color_exit_codes(capsys):
    assert cli.main(["color", "fig1c"]) == 0
    assert cli.main(["color", "fig3a"]) == 1
    capsys.readouterr()


def test_cli_json_output_parses(capsys):
    assert cli.main(["analyze", "fig1c", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["body"]["verdict"] == "isostatic"
    assert payload["provenance"]["backend"] == "exact"
    assert cli.main(["symmetry", "example3d", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["body"]["valid"] is True


def test_cli_backend_override(capsys):
    assert cli.main(["analyze", "fig1c", "--backend", "float", "--tolerance", "1e-8"]) == 0
    out = capsys.readouterr().out
    assert "backend=float" in out
    assert cli.main(["analyze", "example3d", "--backend", "exact"]) == 2


def test_cli_svg_rendering(tmp_path, capsys):
    target = tmp_path / "fig.svg"
    assert cli.main(["color", "fig1c", "--svg", str(target)]) == 0
    capsys.readouterr()
    assert target.exists() and target.stat().st_size > 500
    target3d = tmp_path / "example3d.png"
    assert cli.main(["analyze", "example3d", "--svg", str(target3d)]) == 0
    capsys.readouterr()
    assert target3d.exists() and target3d.stat().st_size > 500


def test_cli_explore_writes_report(tmp_path, capsys):
    out = tmp_path / "scan.json"
    rc = cli.main(["explore", "--group", "c2", "--max-vertices", "5",
                   "--trials", "60", "--seed", "4", "--out", str(out)])
    assert rc == 0
    capsys.readouterr()
    payload = json.loads(out.read_text())
    assert payload["config"]["group"] == "c2"
    assert payload["summary"]["would_refute_necessity"] == []


def test_cli_explore_rejects_bad_group(capsys):
    assert cli.main(["explore", "--group", "c17"]) == 2
    capsys.readouterr()


def test_cli_symmetry_without_group_is_input_error(tmp_path, capsys):
    path = tmp_path / "plain.json"
    path.write_text(json.dumps(minimal_doc()))
    assert cli.main(["symmetry", str(path)]) == 2
    capsys.readouterr()


def test_cli_human_form_has_delimited_tables(capsys):
    cli.main(["symmetry", "fig1c"])
    out = capsys.readouterr().out
    rows = [line for line in out.splitlines() if line.startswith("\t")]
    assert rows and all("\t" in r for r in rows)
