import json

import pytest

from hilbk3.cli import SCHEMA, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(argv, capsys):
    code, out = run(argv + ["--json"], capsys)
    return code, json.loads(out)


def test_betti_json_payload(capsys):
    code, payload = run_json(["betti", "--n", "2"], capsys)
    assert code == 0
    assert payload["schema"] == SCHEMA
    assert payload["command"] == "betti"
    assert payload["status"] == "ok"
    assert payload["parameters"]["n"] == 2
    assert payload["result"]["betti"] == [1, 0, 23, 0, 276, 0, 23, 0, 1]
    assert payload["checks"] and all(c["ok"] for c in payload["checks"])


def test_betti_is_byte_deterministic(capsys):
    _, out1 = run(["betti", "--n", "3", "--json"], capsys)
    _, out2 = run(["betti", "--n", "3", "--json"], capsys)
    assert out1 == out2


def test_betti_max_degree_truncates(capsys):
    code, payload = run_json(["betti", "--n", "4", "--max-degree", "4"], capsys)
    assert code == 0
    assert len(payload["result"]["betti"]) == 5


def test_betti_custom_surface(capsys):
    code, payload = run_json(["betti", "--n", "2", "--surface", "1,5,1"], capsys)
    assert code == 0
    assert payload["result"]["betti"][2] == 6


def test_betti_rejects_bad_surface(capsys):
    code, payload = run_json(["betti", "--n", "2", "--surface", "2,22,1"], capsys)
    assert code == 1
    assert payload["status"] == "error"
    assert "error" in payload


def test_table_output_is_flat(capsys):
    code, out = run(["betti", "--n", "2", "--table"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert all(": " in line for line in lines)
    assert any(line.startswith("schema: ") for line in lines)
    # default format is the table
    code2, out2 = run(["betti", "--n", "2"], capsys)
    assert out2 == out


def test_strata_command(capsys):
    code, payload = run_json(["strata", "--n", "3"], capsys)
    assert code == 0
    strata = payload["result"]["strata"]
    assert len(strata) == 3
    assert {tuple(s["diagram"]) for s in strata} == {(3,), (2, 1), (1, 1, 1)}
    for s in strata:
        assert s["codim"] == 2 * sum(p - 1 for p in s["diagram"])


def test_certify_command(capsys):
    code, payload = run_json(["certify", "--n", "6"], capsys)
    assert code == 0
    assert payload["result"]["verdict"] == "certified"
    statuses = {tuple(c["diagram"]): c["status"] for c in payload["result"]["certificates"]}
    assert statuses[(3, 3)] == "obstructed"
    assert statuses[(3, 1, 1, 1)] == "flagged"


def test_certify_seed_changes_details_not_verdict(capsys):
    _, p0 = run_json(["certify", "--n", "6", "--seed", "0"], capsys)
    _, p1 = run_json(["certify", "--n", "6", "--seed", "1"], capsys)
    assert p0["result"]["verdict"] == p1["result"]["verdict"] == "certified"
    s0 = [c["status"] for c in p0["result"]["certificates"]]
    s1 = [c["status"] for c in p1["result"]["certificates"]]
    assert s0 == s1


def test_certify_gram_file(tmp_path, capsys):
    gram = {"dim": 4, "rows": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]}
    path = tmp_path / "gram.json"
    path.write_text(json.dumps(gram))
    code, payload = run_json(["certify", "--n", "3", "--gram", str(path)], capsys)
    assert code == 0
    assert payload["result"]["verdict"] == "certified"


def test_certify_rejects_bad_n(capsys):
    code, payload = run_json(["certify", "--n", "0"], capsys)
    assert code == 1
    assert payload["status"] == "error"


def test_ideals_command(capsys):
    code, payload = run_json(["ideals", "--N", "6"], capsys)
    assert code == 0
    powers = [i["maximal_ideal_power"] for i in payload["result"]["ideals"]]
    assert powers == [1, 2, 3, 4, 5]
    assert all(c["ok"] for c in payload["checks"])


def test_ideals_over_cap_is_error(capsys):
    code, payload = run_json(["ideals", "--N", "13"], capsys)
    assert code == 1
    assert payload["status"] == "error"


def test_punctual_command(capsys):
    code, payload = run_json(["punctual", "--i", "6"], capsys)
    assert code == 0
    points = payload["result"]["fixed_points"]
    assert [p["staircase"] for p in points] == [[3, 2, 1]]
    assert points[0]["generators"] == [[3, 0], [2, 1], [1, 2], [0, 3]]
    code, payload = run_json(["punctual", "--i", "5"], capsys)
    assert code == 0
    assert payload["result"]["fixed_points"] == []


def test_frobenius_command_full(capsys):
    code, payload = run_json(["frobenius", "--dimv", "2", "--n", "2"], capsys)
    assert code == 0
    assert payload["result"]["dimensions"] == [1, 2, 3, 2, 1]
    names = {c["name"] for c in payload["checks"]}
    assert "pairing-nondegenerate" in names
    assert "associative" in names


def test_frobenius_command_dimensions_only(capsys):
    code, payload = run_json(["frobenius", "--dimv", "23", "--n", "2"], capsys)
    assert code == 0
    assert payload["result"]["dimensions"] == [1, 23, 276, 23, 1]
    assert payload["result"]["mode"] == "dimensions-only"


def test_unknown_command_exits_nonzero(capsys):
    with pytest.raises(SystemExit):
        main(["frobble"])
