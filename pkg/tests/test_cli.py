import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from branchdata.cli import main

BASE = '{"d":3,"A":[3],"B":[3],"M":[2]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_examples(capsys):
    code, out, _ = run(capsys, "check", BASE)
    payload = json.loads(out)
    assert code == 0 and payload["genus"] == 1 and payload["verdict"] == "realizable"
    assert payload["belyi_datum"] == {"d": 3, "partitions": [[3], [3], [3]]}
    code, out, _ = run(capsys, "check", '{"d":4,"A":[2,2],"B":[2,2],"M":[2]}')
    assert code == 1 and json.loads(out)["reason"] == "GCD_OBSTRUCTION"
    code, out, err = run(capsys, "check", '{"d":2,"A":[3],"B":[2],"M":[1]}')
    assert code == 2 and out == "" and "sums to 3" in err


def test_malformed_json_reports_position(capsys):
    code, _, err = run(capsys, "check", '{"d":3,\n "A":[3],')
    assert code == 2 and "line 2" in err


def test_datum_from_file_and_stdin(capsys, tmp_path, monkeypatch):
    f = tmp_path / "datum.json"
    f.write_text(BASE)
    code, out_file, _ = run(capsys, "check", "--file", str(f))
    assert code == 0
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(BASE))
    code, out_stdin, _ = run(capsys, "check")
    assert code == 0 and out_stdin == out_file
    code, _, err = run(capsys, "check", "--file", str(tmp_path / "missing.json"))
    assert code == 2


def test_realize_examples(capsys):
    code, out, _ = run(capsys, "realize", "--format", "cycles", BASE)
    assert (code, out) == (0, "(1,2,3) (1,2,3) (1,2,3)\n")
    code, out, _ = run(capsys, "realize", '{"d":6,"A":[3,3],"B":[3,3],"M":[4]}')
    assert code == 0
    assert json.loads(out) == {"d": 6, "perms": [[6, 4, 1, 5, 2, 3], [4, 3, 5, 6, 2, 1], [2, 3, 4, 5, 1, 6]]}
    code, out, _ = run(capsys, "realize", '{"d":2,"A":[2],"B":[2],"M":[1]}')
    assert code == 1 and json.loads(out)["reason"] == "ODD_TOTAL_BRANCHING"


def test_realize_budget(capsys):
    datum = '{"d":9,"A":[2,2,2,1,1,1],"B":[2,2,2,1,1,1],"M":[2,2,2,2,1,1]}'
    code, _, err = run(capsys, "realize", "--search-budget", "10", datum)
    assert code == 3 and "budget" in err


def test_verify_examples(capsys):
    good = '{"d":3,"perms":[[2,3,1],[2,3,1],[2,3,1]]}'
    code, out, _ = run(capsys, "verify", BASE, good)
    assert (code, json.loads(out)) == (0, {"valid": True})
    bad = '{"d":3,"perms":[[2,3,1],[3,1,2],[2,3,1]]}'
    code, out, _ = run(capsys, "verify", BASE, bad)
    assert code == 1 and json.loads(out)["failure"] == "product"
    intrans = '{"d":4,"perms":[[2,1,4,3],[2,1,4,3],[2,1,3,4],[2,1,3,4]]}'
    code, out, _ = run(capsys, "verify", '{"d":4,"A":[2,2],"B":[2,2],"M":[1,1]}', intrans)
    assert code == 1 and json.loads(out)["failure"] == "transitivity"
    code, _, _ = run(capsys, "verify", BASE, '{"d":3,"perms":[[1,1,2]]}')
    assert code == 2
    code, _, _ = run(capsys, "verify", BASE, '{"d":4,"perms":[[1,2,3,4]]}')
    assert code == 2


def test_count_examples(capsys):
    code, out, _ = run(capsys, "count", '{"d":3,"partitions":[[3],[3],[3]]}')
    r = json.loads(out)
    assert code == 0 and (r["class_count"], r["weighted_count"]) == (1, "1/3")
    code, out, _ = run(capsys, "count", "--oracle", '{"d":2,"partitions":[[2],[2],[2],[2]]}')
    r = json.loads(out)
    assert code == 0 and (r["class_count"], r["weighted_count"], r["oracle_agrees"]) == (1, "1/2", True)
    code, out, _ = run(capsys, "count", "--oracle", '{"d":5,"A":[3,2],"B":[4,1],"M":[2,1]}')
    assert code == 0 and json.loads(out)["oracle_agrees"]
    code, _, err = run(capsys, "count", "--max-degree", "4", '{"d":5,"A":[3,2],"B":[4,1],"M":[2,1]}')
    assert code == 3


def test_sweep_examples(capsys):
    code, out, _ = run(capsys, "sweep", "--d", "5", "--mode", "realize")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and lines[-1]["summary"]["defects"] == 0
    assert all(x["status"] == "ok" for x in lines[:-1])
    code, out, _ = run(capsys, "sweep", "--d", "6", "--genus-min", "0", "--genus-max", "0", "--mode", "check")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert all(x["search_found"] == x["realizable"] for x in lines[:-1] if "search_found" in x)
    code, out, _ = run(capsys, "sweep", "--d", "4", "--genus-min", "3", "--genus-max", "2")
    assert code == 0 and json.loads(out)["summary"]["lines"] == 0
    code, _, _ = run(capsys, "sweep", "--d", "12", "--mode", "count")
    assert code == 2


def test_sweep_thread_count_does_not_change_output(capsys):
    _, one, _ = run(capsys, "sweep", "--d", "5", "--genus-max", "2", "--mode", "realize")
    _, three, _ = run(capsys, "sweep", "--d", "5", "--genus-max", "2", "--mode", "realize", "--threads", "3")
    assert one == three


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and out.endswith("0 failure(s)\n")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["realize", "--format", "xml", BASE])
    assert err.value.code == 2


@settings(max_examples=80, deadline=None)
@given(st.one_of(st.text(max_size=40),
                 st.dictionaries(st.sampled_from(["d", "A", "B", "M", "x"]),
                                 st.one_of(st.integers(-3, 9), st.lists(st.integers(-1, 6), max_size=4),
                                           st.text(max_size=3)), max_size=5).map(json.dumps)))
def test_fuzzed_input_exit_codes(text):
    try:
        code = main(["check", text]) if text else 2
    except SystemExit as exc:  # argparse rejects text that looks like an option
        code = exc.code
    assert code in (0, 1, 2)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "branchdata", "check", BASE], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["v"] == 6
