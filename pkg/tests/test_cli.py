"""End-to-end checks of the command-line front end.

Every test drives ``cli.main`` directly with an argv list and inspects
exit code, stdout, and stderr; nothing here shells out.
"""

import json
from fractions import Fraction

import pytest

from stirlingexp import cli, coefficients
from stirlingexp.coefficients import COEFF_METHODS
from stirlingexp.identities import report_from_pairs
from stirlingexp.series import TruncatedSeries, parse_rational


def run_cli(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# coeffs


def test_coeffs_csv_all_methods(capsys):
    code, out, err = run_cli(
        capsys, ["coeffs", "--max", "5", "--format", "csv"]
    )
    assert code == 0
    assert err == ""
    lines = out.strip().splitlines()
    assert lines[0] == "k," + ",".join(COEFF_METHODS) + ",agree"
    assert len(lines) == 7
    row_k1 = lines[2].split(",")
    assert row_k1[0] == "1"
    assert set(row_k1[1:-1]) == {"1/12"}
    assert row_k1[-1] == "yes"
    assert all(line.endswith(",yes") for line in lines[1:])


def test_coeffs_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, ["coeffs", "--max", "4", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["index_max"] == 4
    assert payload["agreed"] is True
    assert [t["method"] for t in payload["tables"]] == list(COEFF_METHODS)
    for table in payload["tables"]:
        values = [parse_rational(v) for v in table["values"]]
        assert values[0] == 1
        assert values[1] == Fraction(1, 12)
        assert values[4] == Fraction(-571, 2488320)


def test_coeffs_single_method_plain(capsys):
    code, out, _ = run_cli(
        capsys, ["coeffs", "--max", "2", "--methods", "bernoulli"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "a_0: bernoulli=1 [ok]"
    assert lines[1] == "a_1: bernoulli=1/12 [ok]"
    assert lines[2] == "a_2: bernoulli=1/288 [ok]"


def test_coeffs_negative_max_is_usage_error(capsys):
    code, _, err = run_cli(capsys, ["coeffs", "--max", "-1"])
    assert code == 2
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# series


def test_series_plain_inverse_exp(capsys):
    code, out, _ = run_cli(capsys, ["series", "--which", "inv-exp"])
    assert code == 0
    assert out.startswith("inv-exp(x) = x - x^2/6 + x^3/36 - x^4/270")


def test_series_json_round_trip(capsys):
    code, out, _ = run_cli(
        capsys, ["series", "--which", "inv-log", "--order", "5", "--format", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload.pop("which") == "inv-log"
    rebuilt = TruncatedSeries.from_json_dict(payload)
    assert rebuilt == coefficients.inverse_series("log", 5)


@pytest.mark.parametrize("which", cli.SERIES_CHOICES)
def test_series_csv_row_count(capsys, which):
    code, out, _ = run_cli(
        capsys, ["series", "--which", which, "--order", "6", "--format", "csv"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    # header plus powers 0..6
    assert len(lines) == 8
    assert lines[0] == "power,coeff"


def test_series_order_zero_rejected_for_inverse(capsys):
    code, _, err = run_cli(
        capsys, ["series", "--which", "inv-exp", "--order", "0"]
    )
    assert code == 2
    assert "order" in err


def test_series_kernel_order_zero_allowed(capsys):
    code, out, _ = run_cli(
        capsys, ["series", "--which", "exp-kernel", "--order", "0"]
    )
    assert code == 0
    assert out.strip() == "exp-kernel(x) = 1"


# ---------------------------------------------------------------------------
# verify


def test_verify_small_range_passes(capsys):
    code, out, err = run_cli(capsys, ["verify", "--max", "6"])
    assert code == 0
    assert err == ""
    assert "FAIL" not in out
    assert "coefficient-cross-check" in out


def test_verify_json_ok_flag(capsys):
    code, out, _ = run_cli(capsys, ["verify", "--max", "6", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["cross_check"]["agreed"] is True
    names = {r["identity"] for r in payload["identities"]}
    assert "reciprocal-consistency" in names


def test_verify_output_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, ["verify", "--max", "6", "--format", "json"])
    _, second, _ = run_cli(capsys, ["verify", "--max", "6", "--format", "json"])
    assert first == second


def test_verify_reports_failure_with_exit_code_one(capsys, monkeypatch):
    """A failing identity must surface as exit code 1, not an exception."""
    broken = report_from_pairs(
        "sum-identity", [(3, Fraction(1, 2), Fraction(1, 3))]
    )

    def fake_run_all(max_index):
        return [broken]

    monkeypatch.setattr(cli.identities, "run_all", fake_run_all)
    code, out, err = run_cli(capsys, ["verify", "--max", "6"])
    assert code == 1
    assert "FAIL sum-identity" in out
    assert "identity failure detected" in err


# ---------------------------------------------------------------------------
# approx


def test_approx_csv_header_and_values(capsys):
    code, out, _ = run_cli(
        capsys, ["approx", "--n", "6", "--terms", "2", "--format", "csv"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,terms,precision_bits,approx,exact,rel_error,scaled_error"
    row = lines[1].split(",")
    assert row[0] == "6"
    assert row[1] == "2"
    assert row[2] == "128"
    assert row[4] == "720"


def test_approx_json_precision_from_env(capsys, monkeypatch):
    monkeypatch.setenv(cli.PRECISION_ENV_VAR, "96")
    code, out, _ = run_cli(capsys, ["approx", "--n", "5", "--format", "json"])
    assert code == 0
    assert json.loads(out)["precision_bits"] == 96


def test_approx_flag_overrides_env(capsys, monkeypatch):
    monkeypatch.setenv(cli.PRECISION_ENV_VAR, "96")
    code, out, _ = run_cli(
        capsys,
        ["approx", "--n", "5", "--precision-bits", "192", "--format", "json"],
    )
    assert code == 0
    assert json.loads(out)["precision_bits"] == 192


def test_approx_bad_env_value_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv(cli.PRECISION_ENV_VAR, "lots")
    code, _, err = run_cli(capsys, ["approx", "--n", "5"])
    assert code == 2
    assert cli.PRECISION_ENV_VAR in err


def test_approx_rejects_n_zero(capsys):
    code, _, err = run_cli(capsys, ["approx", "--n", "0"])
    assert code == 2
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# comb


def test_comb_csv_partition_spot_value(capsys):
    code, out, _ = run_cli(
        capsys, ["comb", "--r", "3", "--max-n", "6", "--format", "csv"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,n,k,value"
    assert "3,6,2,10" in lines


def test_comb_json_derangement_spot_values(capsys):
    code, out, _ = run_cli(
        capsys,
        ["comb", "--r", "3", "--max-n", "7", "--kind", "derangement",
         "--format", "json"],
    )
    assert code == 0
    rows = {(e["r"], e["n"], e["k"]): e["value"] for e in json.loads(out)}
    assert rows[(3, 6, 2)] == "40"
    assert rows[(3, 7, 2)] == "420"


def test_comb_invalid_block_size_is_usage_error(capsys):
    code, _, err = run_cli(capsys, ["comb", "--r", "0"])
    assert code == 2
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# parser-level behaviour


def test_unknown_format_exits_two(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["coeffs", "--format", "nope"])
    assert excinfo.value.code == 2


def test_missing_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == 2


def test_output_flag_writes_file_instead_of_stdout(capsys, tmp_path):
    target = tmp_path / "series.txt"
    code, out, _ = run_cli(
        capsys,
        ["--output", str(target), "series", "--which", "inv-exp"],
    )
    assert code == 0
    assert out == ""
    _, direct, _ = run_cli(capsys, ["series", "--which", "inv-exp"])
    assert target.read_text(encoding="utf-8") == direct
