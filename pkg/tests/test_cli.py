import json

import pytest

from jkinv import cli, schemas, zoo


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    schemas.validate_report(doc)
    return code, doc, err


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def test_pencil_horizontal_block(capsys, tmp_path):
    path = write(tmp_path, "h1.json", {"A": [[1, 0]], "B": [[0, 1]]})
    code, doc, _ = run_json(capsys, "pencil", path)
    assert code == cli.EXIT_OK
    assert doc["kind"] == "pencil"
    res = doc["result"]
    assert res["eps"] == [1] and res["eta"] == [] and res["k_hor"] == 2 and res["rank"] == 1


def test_pencil_zero_matrix(capsys, tmp_path):
    path = write(tmp_path, "z.json", {"A": [[0, 0, 0], [0, 0, 0]], "B": [[0, 0, 0], [0, 0, 0]]})
    code, doc, _ = run_json(capsys, "pencil", path)
    assert code == 0
    assert doc["result"]["eps"] == [0, 0, 0] and doc["result"]["eta"] == [0, 0]


def test_pencil_rational_entries_and_jordan(capsys, tmp_path):
    path = write(tmp_path, "j.json", {"A": [["1/2", 1], [0, "1/2"]], "B": [[1, 0], [0, 1]]})
    code, doc, _ = run_json(capsys, "pencil", path)
    assert code == 0
    assert doc["result"]["jordan"][0]["eigenvalue"] == "1/2"


def test_pencil_shape_mismatch(capsys, tmp_path):
    path = write(tmp_path, "bad.json", {"A": [[1, 0, 0], [0, 1, 0]], "B": [[1, 0], [0, 1], [0, 0]]})
    code, out, err = run(capsys, "pencil", path)
    assert code == cli.EXIT_INPUT
    assert "2x3" in err and "3x2" in err
    assert out == ""


@pytest.mark.parametrize("content", ["{not json", json.dumps({"A": [[1]]}), json.dumps({"A": [[1, 2], [3]],
                                                                                      "B": [[1, 2], [3, 4]]})])
def test_pencil_malformed_files(capsys, tmp_path, content):
    code, _, err = run(capsys, "pencil", write(tmp_path, "m.json", content))
    assert code == cli.EXIT_INPUT and err.startswith("jkinv:")


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "pencil", str(tmp_path / "nope.json"))
    assert code == cli.EXIT_INPUT and "nope.json" in err


def test_rep_analyze_zoo_coadjoint(capsys):
    code, doc, _ = run_json(capsys, "rep", "analyze", "--zoo", "sl2", "--rep", "coadjoint")
    assert code == 0
    exp = zoo.get("sl2").expected
    res = doc["result"]
    assert (res["rank"], res["eps"], res["eta"], res["k_vert"]) == (exp.rank, list(exp.eps), list(exp.eta),
                                                                     exp.k_vert)


def test_rep_analyze_h3(capsys):
    code, doc, _ = run_json(capsys, "rep", "analyze", "--zoo", "h3")
    assert code == 0 and doc["result"]["deg_D"] == 2


def test_rep_analyze_from_algebra_file(capsys, tmp_path):
    path = write(tmp_path, "sl2.json", zoo.get("sl2").algebra().to_json())
    code, doc, _ = run_json(capsys, "rep", "analyze", path, "--rep", "adjoint")
    assert code == 0 and doc["result"]["rank"] == 2


def test_rep_needs_rep_kind_with_file(capsys, tmp_path):
    path = write(tmp_path, "sl2.json", zoo.get("sl2").algebra().to_json())
    code, _, err = run(capsys, "rep", "analyze", path)
    assert code == 2 and "--rep" in err


def test_corrupted_brackets_report_jacobi(capsys, tmp_path):
    bad = {"dim": 3, "brackets": [{"i": 0, "j": 1, "k": 0, "c": "-2"}, {"i": 0, "j": 2, "k": 1, "c": "1"},
                                  {"i": 1, "j": 2, "k": 2, "c": "1"}]}
    code, out, err = run(capsys, "rep", "analyze", write(tmp_path, "bad.json", bad), "--rep", "coadjoint")
    assert code == cli.EXIT_INPUT
    doc = json.loads(out)
    schemas.validate_report(doc)
    assert doc["kind"] == "error"
    assert doc["result"]["violation"]["kind"] == "jacobi"
    assert "jkinv:" in err


def test_semiinvariant_command(capsys):
    code, doc, _ = run_json(capsys, "rep", "semiinvariant", "--zoo", "h3")
    assert code == 0
    assert doc["result"]["degree_via_pencil"] == 2 and doc["result"]["degrees_agree"]


def test_semiinvariant_ceiling(capsys):
    code, _, err = run(capsys, "rep", "semiinvariant", "--zoo", "sl2", "--ceiling", "2")
    assert code == 2 and err


def test_shifts_command(capsys):
    code, doc, _ = run_json(capsys, "shifts", "--zoo", "sl2", "--a", "1,2,3", "--trials", "4")
    assert code == 0
    res = doc["result"]
    assert res["trdeg"]["trdeg"] == 2 and res["trdeg"]["equality"]
    assert all(v["holds"] for v in res["vorontsov"] + res["degree_sums"])
    assert len(res["formal_chains"]) == 1


def test_shifts_non_regular_origin_skips_chains(capsys):
    code, doc, _ = run_json(capsys, "shifts", "--zoo", "sl2", "--a", "0,0,0", "--trials", "3")
    assert code == 0
    assert doc["result"]["formal_chains"] == [] and "formal_chains_skipped" in doc["result"]


def test_shifts_rejects_non_invariant(capsys, tmp_path):
    path = write(tmp_path, "inv.json", {"polynomials": [[{"exponents": [0, 1, 0], "coeff": "1"}]]})
    code, out, _ = run(capsys, "shifts", "--zoo", "sl2", "--invariants", path)
    assert code == 2
    assert json.loads(out)["kind"] == "error"


def test_shifts_bad_origin(capsys):
    code, _, err = run(capsys, "shifts", "--zoo", "sl2", "--a", "1,2")
    assert code == 2 and "3 coordinates" in err


def test_check_passes(capsys):
    code, doc, _ = run_json(capsys, "check", "--trials", "4")
    assert code == 0
    assert doc["result"]["passed"] and doc["result"]["agreed"]
    assert {e["name"] for e in doc["result"]["entries"]} == set(zoo.ZOO)


def test_check_with_degenerate_bound_disagrees(capsys):
    code, doc, _ = run_json(capsys, "check", "--bound", "1")
    assert code == cli.EXIT_DISAGREE
    assert not doc["result"]["agreed"]


def test_check_zoo_list(capsys):
    code, doc, _ = run_json(capsys, "check", "--zoo", "list")
    assert code == 0
    assert len(doc["result"]["entries"]) == 6


def test_check_unknown_entry(capsys):
    code, _, err = run(capsys, "check", "--zoo", "sl7")
    assert code == 2 and "sl7" in err


def test_zoo_show(capsys):
    code, doc, _ = run_json(capsys, "zoo", "show", "h3")
    assert code == 0 and doc["result"]["name"] == "h3"
    code, _, err = run(capsys, "zoo", "show", "e8")
    assert code == 2 and "e8" in err
    code, _, _ = run(capsys, "zoo", "show")
    assert code == 2


def test_text_format(capsys):
    code, out, _ = run(capsys, "rep", "analyze", "--zoo", "h3", "--format", "text")
    assert code == 0
    assert "deg_D" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("JK_SEED", "5")
    _, env_doc, _ = run_json(capsys, "rep", "analyze", "--zoo", "sl2")
    _, flag_doc, _ = run_json(capsys, "rep", "analyze", "--zoo", "sl2", "--seed", "5")
    assert env_doc == flag_doc
    monkeypatch.setenv("JK_SEED", "minus one")
    code, _, err = run(capsys, "rep", "analyze", "--zoo", "sl2")
    assert code == 2 and "JK_SEED" in err


def test_too_few_trials(capsys):
    code, _, err = run(capsys, "rep", "analyze", "--zoo", "sl2", "--trials", "2")
    assert code == 2 and "trials" in err


def test_argparse_errors_exit_with_usage(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["pencil"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["rep", "analyze", "--zoo", "sl2", "--seed", "-1"])
