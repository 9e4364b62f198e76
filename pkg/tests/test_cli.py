import csv
import io
import json

import pytest

from dioph.cli import main


def run_cli(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, out.read_text() if out.exists() else ""


def test_search_dkn(tmp_path):
    code, text = run_cli(
        ["search", "--mode", "dkn", "--k", "2", "--n", "1", "--max", "200",
         "--min-size", "4"],
        tmp_path,
    )
    assert code == 0
    body = json.loads(text)
    assert body["schema"] == 1
    assert body["config"]["seed"] == "0"
    assert {"1", "3", "8", "120"} == set(body["results"][0]["elements"])


def test_search_pell(tmp_path):
    code, text = run_cli(
        ["search", "--mode", "pell", "--a", "2", "--u", "-1", "--zmax", "100"],
        tmp_path,
    )
    assert code == 0
    zs = [row["z"] for row in json.loads(text)["results"]]
    assert zs == ["1", "5", "29"]


def test_search_cube(tmp_path):
    code, text = run_cli(
        ["search", "--mode", "cube", "--k", "2", "--n", "3", "--max", "100",
         "--a0", "1"],
        tmp_path,
    )
    assert code == 0
    gens = [row["generators"] for row in json.loads(text)["results"]]
    assert ["6", "13"] in gens


def test_search_bdkn_with_sieve(tmp_path):
    code, text = run_cli(
        ["search", "--mode", "bdkn", "--k", "2", "--n", "1", "--max", "130",
         "--size-a", "2", "--sieve-q", "130"],
        tmp_path,
    )
    assert code == 0
    rows = json.loads(text)["results"]
    target = [r for r in rows if r["A"] == ["1", "3"]]
    assert target and target[0]["B"] == ["8", "120"]
    assert "sieve_bound" in target[0]


def test_usage_errors(tmp_path):
    # argparse rejects unknown/missing arguments with status 2
    with pytest.raises(SystemExit) as exc:
        main(["search"])
    assert exc.value.code == 2
    # domain errors in values are usage errors too
    code = main(
        ["search", "--mode", "dkn", "--k", "1", "--n", "1", "--max", "10"]
    )
    assert code == 2


def test_budget_error(tmp_path):
    code = main(
        ["search", "--mode", "dkn", "--k", "2", "--n", "1", "--max", "50000"]
    )
    assert code == 4


def test_verify_valid_quadruple(tmp_path):
    inst = tmp_path / "quad.json"
    inst.write_text(
        json.dumps(
            {"schema": 1, "type": "dkn", "k": "2", "n": "1",
             "elements": ["1", "3", "8", "120"]}
        )
    )
    code, text = run_cli(["verify", "--file", str(inst)], tmp_path)
    assert code == 0
    result = json.loads(text)["results"][0]
    assert result["valid"]
    assert result["audits"]["identity"]["holds"] is True


def test_verify_cube_instance(tmp_path):
    inst = tmp_path / "cube.json"
    inst.write_text(
        json.dumps(
            {"schema": 1, "type": "cube", "k": "2", "n": "3", "a0": "1",
             "generators": ["6", "13"]}
        )
    )
    code, text = run_cli(["verify", "--file", str(inst)], tmp_path)
    assert code == 0
    result = json.loads(text)["results"][0]
    assert result["valid"]
    assert "dimension_bounds" in result["audits"]


def test_verify_failure_exit_5(tmp_path):
    inst = tmp_path / "bad.json"
    inst.write_text(
        json.dumps(
            {"schema": 1, "type": "dkn", "k": "2", "n": "1",
             "elements": ["1", "2", "3"]}
        )
    )
    code, text = run_cli(["verify", "--file", str(inst)], tmp_path)
    assert code == 5
    result = json.loads(text)["results"][0]
    assert not result["valid"]
    assert result["violations"]


def test_parse_error_exit_3(tmp_path):
    inst = tmp_path / "malformed.json"
    inst.write_text('{"schema": 1, "type": "dkn", "k": ')
    assert main(["verify", "--file", str(inst)]) == 3

    inst.write_text(json.dumps({"schema": 1, "type": "mystery"}))
    assert main(["verify", "--file", str(inst)]) == 3

    inst.write_text(json.dumps({"schema": 2, "type": "dkn"}))
    assert main(["verify", "--file", str(inst)]) == 3


def test_verify_pell_instance(tmp_path):
    inst = tmp_path / "pell.json"
    inst.write_text(
        json.dumps(
            {"schema": 1, "type": "pell", "a": "2", "u": "-1",
             "solutions": [["1", "1"], ["7", "5"]]}
        )
    )
    code, text = run_cli(["verify", "--file", str(inst)], tmp_path)
    assert code == 0

    inst.write_text(
        json.dumps(
            {"schema": 1, "type": "pell", "a": "2", "u": "-1",
             "solutions": [["2", "1"]]}
        )
    )
    assert main(["verify", "--file", str(inst)]) == 5


def test_thread_count_does_not_change_bytes(tmp_path):
    outputs = []
    for threads, name in ((1, "t1.json"), (8, "t8.json")):
        code, text = run_cli(
            ["search", "--mode", "dkn", "--k", "2", "--n", "-1", "--max", "300",
             "--min-size", "3", "--threads", str(threads)],
            tmp_path,
            name,
        )
        assert code == 0
        outputs.append(text)
    assert outputs[0] == outputs[1]


def test_report_aggregation_and_format_agreement(tmp_path):
    inputs = []
    for i, n in enumerate((-2, -1, 1, 2)):
        out = tmp_path / f"run{i}.json"
        code = main(
            ["search", "--mode", "dkn", "--k", "2", "--n", str(n), "--max", "60",
             "--min-size", "2", "--out", str(out)]
        )
        assert code == 0
        inputs.append(str(out))

    code, jtext = run_cli(["report", "--inputs"] + inputs, tmp_path, "agg.json")
    assert code == 0
    jrows = json.loads(jtext)["results"]
    assert all(r["type"] == "dkn" for r in jrows)
    assert {(r["param1"], r["param2"]) for r in jrows} == {
        ("2", "-2"), ("2", "-1"), ("2", "1"), ("2", "2")
    }

    code = main(
        ["report", "--inputs"] + inputs + ["--format", "csv", "--out",
         str(tmp_path / "agg.csv")]
    )
    assert code == 0
    crows = list(csv.DictReader(io.StringIO((tmp_path / "agg.csv").read_text())))
    assert len(crows) == len(jrows)
    for jrow, crow in zip(jrows, crows):
        for key, value in jrow.items():
            assert crow[key] == ("" if value is None else str(value))


def test_report_empty_inputs(tmp_path):
    code, text = run_cli(["report"], tmp_path, "empty.json")
    assert code == 0
    assert json.loads(text)["results"] == []
    code = main(["report", "--format", "csv", "--out", str(tmp_path / "e.csv")])
    assert code == 0
    # empty table still carries the header row
    assert (tmp_path / "e.csv").read_text() == (
        "type,param1,param2,count,max_size,min_sieve_bound\n"
    )


def test_report_rejects_mixed_schema(tmp_path):
    good = tmp_path / "good.json"
    main(["search", "--mode", "dkn", "--k", "2", "--n", "1", "--max", "30",
          "--out", str(good)])
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": 99, "results": []}))
    assert main(["report", "--inputs", str(good), str(bad)]) == 3
