import json
import os
import subprocess
import sys

import pytest

from partition_stats.cli import (
    EXIT_CHECK_FAILED,
    EXIT_DATA,
    EXIT_OK,
    EXIT_USAGE,
    cmd_compare,
    cmd_estimate,
    main,
    parse_config,
)
from partition_stats.errors import InputParseError, MalformedValue, MissingRequired, TiedBoundaries, UnknownFlag
from partition_stats.estimators import Excluded, ExponentialMatched, Truncated
from partition_stats.report import parse_values, read_csv_tables


def run_cli(args, env=None):
    full_env = {**os.environ, **(env or {})}
    return subprocess.run([sys.executable, "-m", "partition_stats", *args],
                          capture_output=True, text=True, env=full_env)


@pytest.fixture
def data123(tmp_path):
    p = tmp_path / "data.csv"
    p.write_text("# three points\n3\n\n1\n2  # inline comment\n")
    return str(p)


# -- parse_config ------------------------------------------------------------------

def test_parse_estimate(data123):
    cfg = parse_config(["estimate", "--input", data123, "--tail", "exp"])
    assert cfg.command == "estimate"
    assert cfg.tail_policy() == ExponentialMatched()


def test_parse_verify():
    cfg = parse_config(["verify", "--dist", "normal:0,1", "--n", "3", "--reps", "100000", "--seed", "7"])
    assert (cfg.command, cfg.dist, cfg.n, cfg.reps, cfg.seed) == ("verify", "normal:0,1", 3, 100000, 7)


def test_parse_defaults():
    cfg = parse_config(["verify", "--dist", "exp:1", "--n", "2"])
    assert cfg.seed == 0 and cfg.reps == 100000 and cfg.format == "json"


def test_parse_tail_variants():
    assert parse_config(["estimate", "--data", "1,2", "--tail", "trunc:0,5"]).tail_policy() == Truncated(0.0, 5.0)
    assert parse_config(["estimate", "--data", "1,2"]).tail_policy() == Excluded()


@pytest.mark.parametrize("argv, exc, flag", [
    (["verify", "--reps", "10"], MissingRequired, "--dist"),
    (["verify", "--dist", "normal:0,1", "--n", "3", "--reps", "10"], MalformedValue, "--reps"),
    (["verify", "--dist", "cauchy:0,1", "--n", "3"], MalformedValue, "--dist"),
    (["verify", "--dist", "normal:0,1", "--n", "x"], MalformedValue, "--n"),
    (["estimate", "--data", "1,2", "--bogus"], UnknownFlag, "--bogus"),
    (["estimate"], MissingRequired, "--input"),
    (["estimate", "--data", "1,2", "--tail", "lognormal"], MalformedValue, "--tail"),
    (["quantile", "--data", "1,2", "--q", "1.5"], MalformedValue, "--q"),
    (["entropy", "--n", "-1"], MalformedValue, "--n"),
])
def test_parse_errors(argv, exc, flag):
    with pytest.raises(exc) as e:
        parse_config(argv)
    assert e.value.flag == flag


def test_usage_error_exit_code(capsys):
    assert main(["verify", "--reps", "10"]) == EXIT_USAGE
    assert "--dist" in capsys.readouterr().err


# -- input parsing -----------------------------------------------------------------

def test_parse_values_comments_and_columns():
    assert parse_values("1\n# c\n\n2.5\n") == [1.0, 2.5]
    assert parse_values("a,1\nb,2\n", column=2) == [1.0, 2.0]


def test_parse_error_line_number(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1\n2\nabc\n")
    with pytest.raises(InputParseError) as e:
        parse_values(p.read_text())
    assert e.value.line == 3
    assert main(["estimate", "--input", str(p)]) == EXIT_DATA
    assert "line 3" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["estimate", "--input", str(tmp_path / "nope.txt")]) == EXIT_DATA


# -- estimate -----------------------------------------------------------------------

def test_estimate_json(data123, capsys):
    assert main(["estimate", "--input", data123]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema_version"] == 1 and doc["command"] == "estimate"
    r = doc["results"]
    assert r["plotting_positions"] == [0.25, 0.5, 0.75]
    assert r["entropy_bits"] == 2.0
    assert [o["ecdf"] for o in r["order_statistics"]] == [1 / 3, 2 / 3, 1.0]
    assert [row["height"] for row in r["density"]] == [0.25, 0.25]


def test_estimate_single_point_excluded():
    _, rep = cmd_estimate(parse_config(["estimate", "--data", "5", "--tail", "none"]))
    assert rep.results["density"] == []
    assert rep.results["cdf_anchors"] == [[5.0, 0.5]]


def test_estimate_exponential_tails_serialize_infinity(capsys):
    assert main(["estimate", "--data", "1,2,3", "--tail", "exp"]) == EXIT_OK
    dens = json.loads(capsys.readouterr().out)["results"]["density"]
    assert dens[0]["lower"] == "-inf" and dens[-1]["upper"] == "inf"


def test_estimate_ties():
    with pytest.raises(TiedBoundaries):
        cmd_estimate(parse_config(["estimate", "--data", "1,1,2"]))
    _, rep = cmd_estimate(parse_config(["estimate", "--data", "1,1,2", "--no-density"]))
    assert rep.results["ties"] == [[0, 1]]
    assert main(["estimate", "--data", "1,1,2"]) == EXIT_DATA


# -- compare ------------------------------------------------------------------------

def test_compare_n3(data123):
    _, rep = cmd_compare(parse_config(["compare", "--input", data123]))
    last = rep.results["pairs"][-1]
    assert (last["ecdf"], last["partition"]) == (1.0, 0.75)
    assert rep.results["tail_mass_above_max"] == {"ecdf": 0.0, "partition": 0.25}


@pytest.mark.parametrize("data, sup", [("5", 0.5), ("1,2,3,4,5,6,7,8,9", 0.1)])
def test_compare_sup(data, sup):
    _, rep = cmd_compare(parse_config(["compare", "--data", data]))
    assert rep.results["sup_difference"] == sup


def test_csv_and_json_agree(data123):
    for argv in (["compare", "--input", data123], ["estimate", "--input", data123, "--tail", "trunc:0,4"]):
        _, rep = {"compare": cmd_compare, "estimate": cmd_estimate}[argv[0]](parse_config(argv))
        tables = read_csv_tables(rep.to_csv())
        doc = json.loads(rep.to_json())["results"]
        if argv[0] == "compare":
            rows = tables["pairs"]
            assert [float(r["ecdf"]) for r in rows] == [p["ecdf"] for p in doc["pairs"]]
            assert [float(r["partition"]) for r in rows] == [p["partition"] for p in doc["pairs"]]
            assert float(tables["summary"][0]["sup_difference"]) == doc["sup_difference"]
        else:
            assert [float(r["height"]) for r in tables["density"]] == [d["height"] for d in doc["density"]]
            assert [float(r["plotting_position"]) for r in tables["order_statistics"]] == doc["plotting_positions"]


# -- entropy, quantile, sample ---------------------------------------------------------

def test_entropy(capsys):
    assert main(["entropy", "--n", "3"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["results"]["entropy"] == 2.0
    assert main(["entropy", "--data", "1,2,3,4,5,6,7,8,9", "--format", "csv"]) == EXIT_OK
    row = read_csv_tables(capsys.readouterr().out)["entropy"][0]
    assert abs(float(row["entropy"]) - 3.321928094887362) < 1e-12


def test_quantile_command(capsys):
    assert main(["quantile", "--data", "1,2,3", "--q", "0.25,0.375,0.5"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)["results"]["quantiles"]
    assert [r["x"] for r in rows] == [1.0, 1.5, 2.0]
    assert main(["quantile", "--data", "1,2,3", "--q", "0.5", "--tail", "none"]) == EXIT_DATA


def test_sample_command_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["sample", "--data", "1,2,3", "--m", "50", "--seed", "3", "--tail", "trunc:0,4"]
    assert main(args + ["--output", str(out1)]) == EXIT_OK
    assert main(args + ["--output", str(out2)]) == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()
    assert len(json.loads(out1.read_text())["results"]["samples"]) == 50


# -- verify -------------------------------------------------------------------------

def test_verify_uniform_n1(capsys):
    assert main(["verify", "--dist", "uniform:0,1", "--n", "1", "--reps", "10000"]) == EXIT_OK
    r = json.loads(capsys.readouterr().out)["results"]
    assert r["passed"] is True
    assert all(abs(m - 0.5) < 0.02 for m in r["expected_masses"]["mean"])


def test_verify_subflags(capsys):
    argv = ["verify", "--dist", "exp:1", "--n", "3", "--reps", "20000", "--seed", "1",
            "--spacings", "--beta-mean", "--conditional-share"]
    assert main(argv) == EXIT_OK
    r = json.loads(capsys.readouterr().out)["results"]
    assert set(r) >= {"expected_masses", "spacings", "beta_mean", "conditional_share", "passed"}
    assert [row["target"] for row in r["conditional_share"]] == [1 / 4, 1 / 3, 1 / 2]


def test_verify_failure_exit_code():
    assert main(["verify", "--dist", "uniform:0,1", "--n", "2", "--reps", "2000", "--z-max", "0"]) == EXIT_CHECK_FAILED


def test_verify_byte_identical_across_threads():
    args = ["verify", "--dist", "normal:0,1", "--n", "3", "--reps", "20000", "--seed", "7"]
    outs = {t: run_cli(args, {"PARTITION_STATS_THREADS": t}) for t in ("1", "2", "4")}
    for res in outs.values():
        assert res.returncode == 0, res.stderr
    assert outs["1"].stdout == outs["2"].stdout == outs["4"].stdout
    assert run_cli(args).stdout == outs["1"].stdout
