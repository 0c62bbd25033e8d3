import csv
import io
import json
import subprocess
import sys

import pytest

from modenergy.cli import main

import oracles


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_proc(*argv):
    proc = subprocess.run([sys.executable, "-m", "modenergy", *argv], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_eval_examples():
    assert run("eval", "--m", "5", "--n", "12") == (0, "2\n")
    assert run("eval", "--m", "6", "--n", "7") == (0, "8\n")
    assert run("eval", "--m", "1", "--n", "999") == (0, "0\n")


@pytest.mark.parametrize("algo", ["naive", "grouped", "block", "divisor-batch"])
def test_eval_algorithms(algo):
    code, out = run("eval", "--m", "6", "--n", "7", "--algo", algo, "--format", "json")
    assert code == 0
    assert json.loads(out) == {"m": 6, "n": 7, "value": "8", "algo": algo}


def test_eval_record_formats():
    code, out = run("--format", "csv", "eval", "--m", "300", "--n", "301", "--timing")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["value"] == str(oracles.energy(300, 301))
    assert rows[0]["algo"] == "naive" and int(rows[0]["elapsed_ns"]) >= 0
    code, out = run("eval", "--m", "5000", "--n", "5000", "--format", "json")
    assert json.loads(out)["algo"] == "grouped"



def test_eval_errors():
    assert run("eval", "--m", "7", "--n", "8", "--algo", "diagonal")[0] == 2
    assert run("eval", "--m", "0", "--n", "8")[0] == 2
    assert run("eval", "--m", "5", "--n", str(2**63))[0] == 3
    assert run("eval", "--m", "5", "--n", "2000", "--algo", "divisor-batch", "--sieve-bound", "100")[0] == 3
    assert run("eval", "--m", "5")[0] == 2
    assert run("eval", "--m", "x", "--n", "1")[0] == 2
    assert run("--sieve-bound", str(10**8 + 1), "eval", "--m", "5", "--n", "5")[0] == 3


def test_range_csv_round_trip():
    code, out = run("range", "--m", "6", "--n-start", "6", "--n-end", "7", "--format", "csv")
    assert code == 0
    assert out == "m,n,value\n6,6,3\n6,7,8\n"
    code, out = run("range", "--m", "4", "--n-start", "12", "--n-end", "12", "--format", "csv")
    assert out.splitlines()[1:] == ["4,12,0"]


def test_range_spot_checks():
    import random

    code, out = run("range", "--m", "50", "--n-start", "1", "--n-end", "1000", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1000
    rng = random.Random(0)
    for i in rng.sample(range(1000), 10):
        n = int(rows[i]["n"])
        assert int(rows[i]["value"]) == oracles.energy(50, n)
    # lossless round trip
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "n", "value"])
    w.writerows([r["m"], r["n"], r["value"]] for r in rows)
    assert buf.getvalue() == out


def test_range_text_and_json():
    code, out = run("range", "--m", "3", "--n-start", "0", "--n-end", "3")
    assert out == "0\t0\n1\t2\n2\t2\n3\t1\n"
    code, out = run("range", "--m", "3", "--n-start", "0", "--n-end", "3", "--format", "json")
    assert [r["value"] for r in json.loads(out)] == ["0", "2", "2", "1"]


def test_range_limits():
    assert run("range", "--m", "3", "--n-start", "0", "--n-end", "5000", "--sieve-bound", "1000")[0] == 3
    assert run("range", "--m", "3", "--n-start", "5", "--n-end", "4")[0] == 2


def test_verify_json_report():
    code, out = run("verify", "--suites", "regimes,prime-claims", "--max-m", "8", "--max-n", "8", "--seed", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["totals"]["failed"] == 0
    assert {f["claim"] for f in doc["findings"]} == {"quotient-range", "m-prime-congruence"}


def test_verify_text_and_csv():
    code, out = run("verify", "--suites", "diagonal", "--max-n", "50", "--format", "text")
    assert code == 0 and "diagonal" in out and "failed=0" in out
    code, out = run("verify", "--suites", "bounds", "--max-m", "5", "--max-n", "5", "--format", "csv")
    assert out.splitlines()[0] == "id,passed,failed"


def test_verify_unknown_suite():
    assert run("verify", "--suites", "nosuch")[0] == 2


def test_verify_deterministic():
    argv = ("verify", "--suites", "all", "--max-m", "10", "--max-n", "10", "--max-t", "3", "--seed", "9")
    assert run(*argv) == run(*argv)


def test_prime_command():
    code, out = run("prime", "--n", "13")
    assert code == 0 and out.startswith("13 prime") and "sigma=14" in out and "=11" in out
    assert run("prime", "--n", "2")[1].startswith("2 prime")
    assert run("prime", "--n", "9991")[1].startswith("9991 composite")
    code, out = run("prime", "--n", "6", "--format", "json")
    assert json.loads(out) == {"n": 6, "prime": False, "sigma": "12", "diff": "-1"}
    assert run("prime", "--n", "1")[0] == 2
    assert run("prime", "--n", "5000", "--sieve-bound", "100")[0] == 3


def test_table_command():
    code, out = run("table", "--n-max", "20", "--format", "csv")
    assert code == 0
    rows = {int(r["n"]): r for r in csv.DictReader(io.StringIO(out))}
    assert [rows[n]["status"] for n in (1, 2, 3)] == ["MATCH"] * 3
    assert (rows[4]["computed"], rows[4]["published"], rows[4]["status"]) == ("1", "4", "MISMATCH")
    assert all(int(rows[n]["computed"]) == oracles.energy(n, n) for n in rows)
    code, out = run("table", "--n-max", "25")
    assert "mismatches: 17 of 20" in out
    doc = json.loads(run("table", "--format", "json")[1])
    assert doc["mismatches"] == 17 and doc["compared"] == 20


def test_bench_command():
    code, out = run("bench", "--sizes", "100", "--reps", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["algo", "m", "n", "reps", "median_ns", "work", "value", "backend"]
    assert {r["algo"] for r in rows} == {"naive", "grouped", "block", "divisor-batch", "diagonal"}
    assert {r["value"] for r in rows} == {str(oracles.energy(100, 100))}
    assert run("bench", "--sizes", "10:x")[0] == 2
    assert run("bench", "--sizes", "100", "--reps", "2")[0] == 2
    assert run("bench", "--sizes", "100", "--algos", "quantum")[0] == 2


def test_black_box_exit_codes():
    assert run_proc("eval", "--m", "5", "--n", "12")[:2] == (0, "2\n")
    assert run_proc("verify", "--suites", "nosuch")[0] == 2
    assert run_proc("eval", "--m", "5", "--n", str(2**64))[0] == 3
    assert run_proc("eval")[0] == 2


def test_eval_wide_value_is_decimal_string():
    argv = ("eval", "--m", str(2**40 + 7), "--n", str(3 * 2**38 + 5), "--algo", "grouped", "--format", "json")
    code, out = run(*argv)
    value = json.loads(out)["value"]
    assert code == 0 and isinstance(value, str) and int(value) > 2**64
