"""CLI surface: spec parsing, output formats, exit codes, report rendering."""

import io
import json
import math

import pytest

from dirseries import SeriesParseError, build_sequence, parse_series_spec
from dirseries.cli import main


def run_cli(args):
    out, err = io.StringIO(), io.StringIO()
    code = main(args, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


# --- series-spec parsing ---------------------------------------------------

SPEC_TEXTS = [
    "zeta",
    "power:t=0.5",
    "power:t=-1",
    "g:r=2",
    "ci:r=0.5",
    "cii:r=2",
    "kalmar:m=1",
    "recip:alpha=2,base=zeta",
    "recip:alpha=1,base=g:r=0.5",
    "conv(power:t=0.5,zeta)",
    "conv(zeta,conv(zeta,zeta))",
]


@pytest.mark.parametrize("text", SPEC_TEXTS)
def test_spec_roundtrip(text):
    node = parse_series_spec(text)
    again = parse_series_spec(node.to_text())
    assert again.to_text() == node.to_text()
    build_sequence(node).materialize(8)  # must be constructible


@pytest.mark.parametrize(
    "bad", ["", "zeta(", "power:t=", "frobnicate", "conv(zeta", "kalmar:m=1.5", "g:r"]
)
def test_spec_rejects_malformed(bad):
    with pytest.raises(SeriesParseError):
        parse_series_spec(bad)


def test_spec_parse_error_has_position():
    with pytest.raises(SeriesParseError) as exc:
        parse_series_spec("conv(zeta,")
    assert isinstance(exc.value.position, int)


# --- coeffs ----------------------------------------------------------------

def test_coeffs_csv():
    code, out, err = run_cli(["coeffs", "--series", "kalmar:m=1", "--limit", "12", "--format", "csv"])
    assert code == 0 and not err
    lines = out.strip().splitlines()
    assert lines[0] == "n,value"
    values = [int(line.split(",")[1]) for line in lines[1:]]
    assert values == [1, 1, 1, 2, 1, 3, 1, 4, 2, 3, 1, 8]


def test_coeffs_json_matches_csv():
    code_j, out_j, _ = run_cli(["coeffs", "--series", "cii:r=2", "--limit", "20", "--format", "json"])
    code_c, out_c, _ = run_cli(["coeffs", "--series", "cii:r=2", "--limit", "20", "--format", "csv"])
    assert code_j == 0 and code_c == 0
    from_json = json.loads(out_j)
    from_csv = [float(line.split(",")[1]) for line in out_c.strip().splitlines()[1:]]
    assert from_json == from_csv


# --- eval and float round-trip --------------------------------------------

def test_eval_json_bit_identical_roundtrip():
    code, out, _ = run_cli(["eval", "--series", "zeta", "--s", "2", "--limit", "100000"])
    assert code == 0
    doc = json.loads(out)
    from dirseries import evaluate, ones

    direct = evaluate(ones(), 2.0, 10**5, tail=True)
    assert doc["value"] == direct.value  # %.17g round-trips float64 exactly
    assert doc["terms_used"] == 100000


def test_eval_complex_point():
    code, out, _ = run_cli(["eval", "--series", "zeta", "--s", "2,1", "--limit", "1000"])
    assert code == 0
    doc = json.loads(out)
    direct = sum(n ** -(2 + 1j) for n in range(1, 1001))
    assert doc["value"]["re"] == pytest.approx(direct.real, abs=1e-14)
    assert doc["value"]["im"] == pytest.approx(direct.imag, abs=1e-14)


# --- primes / smooth -------------------------------------------------------

def test_primes_command():
    code, out, _ = run_cli(["primes", "--count", "10"])
    assert code == 0
    assert json.loads(out) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_smooth_command():
    code, out, _ = run_cli(["smooth", "--index", "2", "--limit", "50"])
    assert code == 0
    assert json.loads(out) == [1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27, 32, 36, 48]


# --- abscissa / delta / rho ------------------------------------------------

def test_abscissa_command():
    code, out, _ = run_cli(["abscissa", "--series", "power:t=0.5", "--limit", "1e5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["estimate"] == pytest.approx(1.5, abs=1e-3)
    assert doc["method"] == "two-point-slope"
    assert "caveat" in doc


def test_delta_command():
    code, out, _ = run_cli(["delta", "--series", "zeta", "--max-index", "2", "--limit", "1e5"])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["per_n"]) == 2
    assert doc["delta_estimate"] >= max(entry[1]["estimate"] for entry in doc["per_n"]) - 1e-15


def test_rho_command():
    code, out, _ = run_cli(["rho", "--series", "recip:alpha=1,base=zeta", "--alpha", "1", "--tol", "1e-8"])
    assert code == 0
    doc = json.loads(out)
    assert doc["rho"] == pytest.approx(1.7286472389981836, abs=1e-7)
    assert doc["residual"] <= 1e-8


def test_rhom_command():
    code, out, _ = run_cli(["rhom", "--m", "2", "--tol", "1e-10"])
    assert code == 0
    assert json.loads(out)["rho"] == pytest.approx(2.3352067802437656, abs=1e-8)


# --- kernel ----------------------------------------------------------------

def test_kernel_gram_command(tmp_path):
    pts = [{"re": 2.0, "im": 0.0}, {"re": 2.5, "im": 1.0}]
    pfile = tmp_path / "points.json"
    pfile.write_text(json.dumps(pts))
    code, out, _ = run_cli(["kernel", "gram", "--series", "zeta", "--points", str(pfile), "--limit", "10000"])
    assert code == 0
    doc = json.loads(out)
    assert doc["psd"] is True
    m = doc["matrix"]
    assert m[0][1][0] == pytest.approx(m[1][0][0])
    assert m[0][1][1] == pytest.approx(-m[1][0][1])


def test_kernel_member_command():
    code, out, _ = run_cli(["kernel", "member", "--series", "zeta", "--b", "power:t=-1", "--limit", "1e5"])
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(1.6449340668482264, abs=1e-4)


# --- errors and exit codes -------------------------------------------------

def test_parse_error_exit_code_2():
    code, out, err = run_cli(["eval", "--series", "frobnicate", "--s", "2", "--limit", "10"])
    assert code == 2 and not out
    doc = json.loads(err)
    assert doc["code"] == 2 and doc["message"]


def test_domain_error_exit_code_1():
    code, out, err = run_cli(["rho", "--series", "zeta", "--alpha", "1"])
    assert code == 1 and not out
    assert json.loads(err)["code"] == 1


def test_error_output_single_line():
    _, _, err = run_cli(["eval", "--series", "conv(zeta", "--s", "2", "--limit", "10"])
    assert err.strip().count("\n") == 0


# --- report ----------------------------------------------------------------

def test_report_writes_tables_and_figures(tmp_path):
    out_dir = tmp_path / "report"
    code, out, _ = run_cli(
        ["report", "--series", "recip:alpha=2,base=zeta", "--limit", "2000", "--out", str(out_dir)]
    )
    assert code == 0
    written = json.loads(out)["written"]
    names = sorted(p.rsplit("/", 1)[-1] for p in written)
    assert "coeffs.csv" in names and "coeffs.png" in names
    assert "abscissa.json" in names and "abscissa.png" in names
    assert "convergence.csv" in names and "convergence.png" in names
    assert "rho.csv" in names and "rho.png" in names
    for p in written:
        import os

        assert os.path.getsize(p) > 0


def test_report_non_recip_skips_rho(tmp_path):
    out_dir = tmp_path / "report2"
    code, out, _ = run_cli(["report", "--series", "zeta", "--limit", "2000", "--out", str(out_dir)])
    assert code == 0
    names = [p.rsplit("/", 1)[-1] for p in json.loads(out)["written"]]
    assert "rho.csv" not in names
