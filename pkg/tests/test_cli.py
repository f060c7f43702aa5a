import json

import pytest

from pgconstraints import graph_from_json, parse_constraints, print_constraint
from pgconstraints.cli import EXIT_DISAGREE, EXIT_OK, EXIT_PARSE, EXIT_USAGE, EXIT_VIOLATED, run
from pgconstraints.corpus import CORPUS
from pgconstraints.graph import graph_to_json
from pgconstraints.witnesses import WITNESSES, gfd_vs_1ggd_witness


@pytest.fixture
def bundle_files(tmp_path):
    b = gfd_vs_1ggd_witness()
    (tmp_path / "g1.json").write_text(graph_to_json(b.g1))
    (tmp_path / "g2.json").write_text(graph_to_json(b.g2))
    (tmp_path / "c.pgc").write_text(print_constraint(b.constraint))
    return tmp_path


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_validate_exit_codes(bundle_files, capsys):
    d = bundle_files
    assert run(["validate", "-g", str(d / "g1.json"), "-c", str(d / "c.pgc")]) == EXIT_OK
    assert "Satisfied" in capsys.readouterr().out
    assert run(["validate", "-g", str(d / "g2.json"), "-c", str(d / "c.pgc"), "--format", "json"]) == EXIT_VIOLATED
    (v,) = _json(capsys)
    assert v["status"] == "Violated" and v["witness"]["matches"]


def test_translate_speaks(tmp_path, capsys):
    src = tmp_path / "speaks.pgc"
    src.write_text(CORPUS["speaks"][0])
    assert run(["translate", "--rule", "gfd-to-pgkeys", "-c", str(src)]) == EXIT_OK
    out = capsys.readouterr().out
    keys = parse_constraints(out)
    assert [k.keyword for k in keys] == ["MANDATORY", "MANDATORY", "SINGLETON"]
    assert run(["translate", "--rule", "gfd-to-pgkeys", "-c", str(src), "--format", "json"]) == EXIT_OK
    (rep,) = _json(capsys)
    assert [print_constraint(k) for k in keys] == rep["outputs"]


def test_translate_to_file(tmp_path):
    src = tmp_path / "in.pgc"
    src.write_text(CORPUS["forum_mod"][0])
    out = tmp_path / "out.pgc"
    assert run(["translate", "--rule", "ggd1-to-mpgkey", "--in", str(src), "--out", str(out)]) == EXIT_OK
    (key,) = parse_constraints(out.read_text())
    assert key.keyword == "MANDATORY"


def test_translate_rejects_wrong_kind(tmp_path, capsys):
    src = tmp_path / "in.pgc"
    src.write_text(CORPUS["forum_mod"][0])
    assert run(["translate", "--rule", "gfd-to-pgkeys", "-c", str(src)]) == EXIT_PARSE
    assert "pgc:" in capsys.readouterr().err


def test_classify(tmp_path, capsys):
    src = tmp_path / "c.pgc"
    src.write_text("\n".join(CORPUS[n][0] for n in ("speaks", "forum_mod", "creator")))
    assert run(["classify", "-c", str(src), "--format", "json"]) == EXIT_OK
    rows = _json(capsys)
    assert [r["formalism"] for r in rows] == ["GFD", "GGD", "PGKey"]
    assert rows[1]["shared"] == 1


def test_equiv(tmp_path, capsys):
    left, right, bad = tmp_path / "l.pgc", tmp_path / "r.pgc", tmp_path / "b.pgc"
    left.write_text(CORPUS["same_a"][0])
    assert run(["translate", "--rule", "gfd-to-pgkeys", "-c", str(left), "--out", str(right)]) == EXIT_OK
    assert run(["equiv", "--left", str(left), "--right", str(right)]) == EXIT_OK
    assert "agree on" in capsys.readouterr().out
    keys = parse_constraints(right.read_text())
    bad.write_text("\n".join(print_constraint(k) for k in keys[:2]))
    assert run(["equiv", "--left", str(left), "--right", str(bad), "--format", "json"]) == EXIT_DISAGREE
    rep = _json(capsys)
    assert rep["agree"] is False
    graph_from_json(json.dumps(rep["first_disagreement"]["graph"]))


def test_equiv_with_spec_file(tmp_path, capsys):
    left, right, spec = tmp_path / "l.pgc", tmp_path / "r.pgc", tmp_path / "s.json"
    left.write_text(CORPUS["exclusive_a"][0])
    assert run(["translate", "--rule", "pgkey-to-ggd", "-c", str(left), "--out", str(right)]) == EXIT_OK
    spec.write_text(json.dumps({"max_vertices": 2, "max_edges": 0, "vertex_keys": ["a"], "values": ["0", "1"]}))
    assert run(["equiv", "--left", str(left), "--right", str(right), "--spec", str(spec), "--format", "json"]) == EXIT_OK
    assert _json(capsys)["spec"]["max_vertices"] == 2
    spec.write_text('{"bogus": 1}')
    assert run(["equiv", "--left", str(left), "--right", str(right), "--spec", str(spec)]) == EXIT_PARSE


PARAMS = {"hierarchy": ["--param", "m=1", "--param", "k=4"], "ggd-vs-pgkeys": ["--param", "N=4"]}


@pytest.mark.parametrize("name", sorted(WITNESSES))
def test_witness_check(name, capsys):
    assert run(["witness", name, "--check", "--format", "json", *PARAMS.get(name, [])]) == EXIT_OK
    obj = _json(capsys)
    assert obj["check"] and all(r["ok"] for r in obj["check"])
    for key in ("g1", "g2"):
        g = graph_from_json(json.dumps(obj[key]))
        assert g.to_dict() == obj[key]
    for text in obj["constraints"]:
        assert print_constraint(parse_constraints(text)[0]) == text


def test_witness_out_dir(tmp_path, capsys):
    assert run(["witness", "gfd-vs-1ggd", "--out-dir", str(tmp_path)]) == EXIT_OK
    capsys.readouterr()
    g2 = tmp_path / "g2.json"
    c = tmp_path / "constraints.pgc"
    assert run(["validate", "-g", str(g2), "-c", str(c)]) == EXIT_VIOLATED


def test_matches(bundle_files, capsys):
    g = str(bundle_files / "g2.json")
    assert run(["matches", "-g", g, "-q", "(x), (y)", "--where", "x.a != y.a", "--format", "json"]) == EXIT_OK
    ms = _json(capsys)
    assert sorted((m["x"], m["y"]) for m in ms) == [("u", "v"), ("v", "u")]
    assert run(["matches", "-g", g, "-q", "(x)-[:nope]->(y)"]) == EXIT_OK
    assert "(no matches)" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["validate", "-g", "x.json"],
        ["translate", "--rule", "no-such-rule", "-c", "x"],
        ["witness", "hierarchy", "--param", "m=0", "--param", "k=4"],
        ["witness", "singleton", "--param", "nonsense"],
        ["witness", "singleton", "--param", "zz=1"],
        ["validate", "-g", "/nonexistent/g.json", "-c", "/nonexistent/c.pgc"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE
    assert capsys.readouterr().err


def test_parse_errors(tmp_path, bundle_files):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{not json")
    bad_dsl = tmp_path / "bad.pgc"
    bad_dsl.write_text("GFD { match (x then }")
    empty = tmp_path / "empty.pgc"
    empty.write_text("# nothing here\n")
    c = str(bundle_files / "c.pgc")
    g = str(bundle_files / "g1.json")
    assert run(["validate", "-g", str(bad_json), "-c", c]) == EXIT_PARSE
    assert run(["validate", "-g", g, "-c", str(bad_dsl)]) == EXIT_PARSE
    assert run(["validate", "-g", g, "-c", str(empty)]) == EXIT_PARSE
    assert run(["matches", "-g", g, "-q", "(x)-[:/a(/]->(y)"]) == EXIT_PARSE
