import csv
import io
import json
import math
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from resurgent import cli
from resurgent.contour import NonConvergence

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "result_record.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return data


def strip_times(obj):
    if isinstance(obj, dict):
        return {k: strip_times(v) for k, v in obj.items() if k != "wall_time"}
    if isinstance(obj, list):
        return [strip_times(v) for v in obj]
    return obj


# ---- parsing ----------------------------------------------------------------------

@settings(max_examples=100)
@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_complex_round_trip(z):
    assert cli.parse_complex(cli.format_complex(z)) == z


@pytest.mark.parametrize("text,z", [("1", 1), ("-2.5", -2.5), ("2i", 2j), ("-i", -1j), ("1+0.2i", 1 + 0.2j),
                                    ("3e-2-1.5e-1i", 0.03 - 0.15j), ("0.5j", 0.5j)])
def test_complex_forms(text, z):
    assert cli.parse_complex(text) == z


@pytest.mark.parametrize("bad", ["", "1+", "i1", "nan", "inf", "1e999", "1 + 2i", "2i+1", "abc"])
def test_complex_rejects(bad):
    with pytest.raises(cli.UsageError):
        cli.parse_complex(bad)


def test_order_lists():
    assert cli.parse_orders("1..5") == [1, 2, 3, 4, 5]
    assert cli.parse_orders("2,4,6") == [2, 4, 6]
    with pytest.raises(cli.UsageError):
        cli.parse_orders("5..1")


# ---- subcommands ------------------------------------------------------------------

def test_eval_zeta(capsys):
    d = run_json(capsys, "eval", "--problem", "riemann_zeta", "--alpha", "0.75", "--w", "2", "--gamma", "1")
    assert abs(d["value"]["re"] - math.pi ** 2 / 6) < 1e-9
    assert d["schema"] == "resurgent.result/1"


def test_eval_faddeev(capsys):
    d = run_json(capsys, "eval", "--problem", "faddeev", "--w", "1", "--gamma", "0.2", "--theta-tilde", "0")
    assert math.isfinite(d["value"]["re"]) and d["error"] < 1e-10
    assert d["extra"]["log_S"]["re"] == pytest.approx(d["value"]["re"] / 4)


def test_expand_faddeev_parity(capsys):
    code, out, _ = run(capsys, "expand", "--w", "1", "--n", "6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["m"]) for r in rows] == list(range(-1, 7))
    for r in rows:
        if int(r["m"]) % 2 == 0:
            assert float(r["re_c"]) == 0 and float(r["im_c"]) == 0


def test_expand_below_pole_order(capsys):
    d = run_json(capsys, "expand", "--problem", "gamma", "--w", "1.5", "--n=-1")
    assert d["extra"]["terms"] == [] and d["value"] == {"re": 0.0, "im": 0.0}


def test_expand_gamma_rows(capsys):
    alpha, w = 0.75, 1.5
    d = run_json(capsys, "expand", "--problem", "gamma", "--alpha", str(alpha), "--w", str(w), "--n", "4")
    for row in d["extra"]["terms"]:
        m = row["m"]
        hm = (-1) ** m * math.gamma(w + m) * alpha ** (-w - m)
        assert row["c"]["re"] == pytest.approx((1 - alpha) ** m / math.factorial(m) * hm, rel=1e-12)


def test_expand_quadrature_uses_cache(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    a = run_json(capsys, "expand", "--problem", "gamma", "--w", "1.5", "--n", "2", "--quadrature")
    assert (tmp_path / "moments.json").exists()
    b = run_json(capsys, "expand", "--problem", "gamma", "--w", "1.5", "--n", "2", "--quadrature")
    assert a["extra"]["terms"] == b["extra"]["terms"]


def test_certify_fe(capsys):
    d = run_json(capsys, "certify", "--problem", "faddeev", "--theorem", "FE", "--n", "1..5", "--w", "1",
                 "--gamma", "0.2")
    assert len(d) == 5 and all(r["extra"]["pass"] for r in d)
    assert [r["extra"]["n"] for r in d] == [1, 2, 3, 4, 5]


def test_certify_forced_failure(capsys):
    d = run_json(capsys, "certify", "--problem", "riemann_zeta", "--theorem", "global", "--n", "1", "--w", "2",
                 "--gamma", "0.5", "--delta1", "0.8")
    assert not d[0]["extra"]["pass"] and d[0]["extra"]["reason"]


def test_certify_csv_columns(capsys):
    code, out, _ = run(capsys, "certify", "--problem", "gamma", "--theorem", "global", "--n", "0..2", "--w", "1.5",
                       "--gamma", "0.5", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:4] == ["n", "bound", "measured", "pass"]
    assert len(rows) == 4


def test_parallel_order_is_input_order(capsys):
    args = ["certify", "--theorem", "FE", "--n", "3,1,2", "--w", "1", "--gamma", "0.1"]
    serial = strip_times(run_json(capsys, *args))
    parallel = strip_times(run_json(capsys, *args, "--jobs", "3"))
    assert [r["extra"]["n"] for r in parallel] == [3, 1, 2]
    assert [r["extra"] for r in serial] == [r["extra"] for r in parallel]


def test_borel(capsys):
    d = run_json(capsys, "borel", "--problem", "faddeev", "--w", "1", "--xi", "0.5")
    assert d["extra"]["cross_check_delta"] < 1e-8


def test_stokes_scan(capsys):
    code, out, _ = run(capsys, "stokes", "--problem", "faddeev", "--w", "1", "--gamma", "0.3", "--scan", "8",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8 and set(rows[0]) == {"theta", "re", "im", "stokes_crossing"}


def test_stokes_scan_marks_crossing(capsys):
    # gamma on the imaginary axis: the scan sector contains the Stokes ray at pi/2
    d = run_json(capsys, "stokes", "--w", "1", "--gamma", "0.3i", "--scan", "9")
    assert sum(s["stokes_crossing"] for s in d["extra"]["scan"]) == 1
    assert all(j["discrepancy"] < 1e-6 for j in d["extra"]["jumps"])


def test_roots(capsys):
    d = run_json(capsys, "roots", "--orders", "2,4,6,8,10")
    table = [2.42067585291066, 2.64172230058665, 2.75972744591817, 2.83308766213237, 2.88302232511053]
    assert all(abs(r["extra"]["r"] - t) < 1e-10 for r, t in zip(d, table))


def test_verify(capsys):
    d = run_json(capsys, "verify")
    assert all(r["extra"]["pass"] for r in d)


# ---- determinism, definition files, exit codes ------------------------------------

def test_deterministic_output(capsys):
    args = ["eval", "--problem", "gamma", "--w", "1.5", "--gamma", "0.5"]
    assert strip_times(run_json(capsys, *args)) == strip_times(run_json(capsys, *args))


def test_definition_file(capsys, tmp_path):
    f = tmp_path / "zeta.ini"
    f.write_text("[problem]\nid = riemann_zeta\nalpha = 0.6\n")
    d = run_json(capsys, "eval", "--problem", str(f), "--w", "3", "--gamma", "1")
    assert d["inputs"]["params"] == {"alpha": 0.6}
    assert d["value"]["re"] == pytest.approx(1.2020569031595942, rel=1e-9)


@pytest.mark.parametrize("text", ["[problem]\nid = riemann_zeta\nbeta = 1\n", "[problem]\nalpha = 0.5\n",
                                  "[problem]\nid = nope\n", "[problem]\nid = gamma\nalpha = big\n",
                                  "[problem]\nid = gamma\n[extra]\nx = 1\n"])
def test_definition_file_fails_closed(capsys, tmp_path, text):
    f = tmp_path / "bad.ini"
    f.write_text(text)
    code, _, err = run(capsys, "eval", "--problem", str(f), "--w", "2", "--gamma", "1")
    assert code == 1 and json.loads(err)["kind"] == "usage"


@pytest.mark.parametrize("argv", [
    ["eval", "--w", "1", "--gamma", "1+"],
    ["eval", "--w", "1", "--gamma", "0.2", "--tol", "1e-20"],
    ["eval", "--w", "1"],
    ["nonsense"],
    ["eval", "--problem", "gamma", "--w", "1", "--gamma", "1", "--eps", "3"],
    ["certify", "--theorem", "entire", "--w", "1", "--gamma", "0.2"],
    ["certify", "--theorem", "low_order", "--n", "3", "--w", "1", "--gamma", "0.2"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == ""
    assert json.loads(err)["kind"] == "usage"


@pytest.mark.parametrize("argv", [
    ["eval", "--w", "3.5", "--gamma", "0.2"],
    ["eval", "--problem", "hurwitz_zeta", "--w", "3", "--q", "-0.5"],
    ["eval", "--problem", "gauss_2f1", "--w", "0.5", "--gamma", "1"],
])
def test_domain_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and json.loads(err)["kind"] == "domain"


def test_numerical_failure_exit_3(capsys, monkeypatch):
    def boom(cfg):
        raise NonConvergence("quadrature did not converge")
    monkeypatch.setitem(cli.COMMANDS, "eval", boom)
    code, _, err = run(capsys, "eval", "--w", "1", "--gamma", "0.2")
    assert code == 3 and json.loads(err)["kind"] == "numerical"


def test_output_file(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code, stdout, _ = run(capsys, "roots", "--orders", "2", "--format", "csv", "--output", str(out))
    assert code == 0 and stdout == ""
    assert out.read_text().splitlines()[0] == "order,r,c_prime"


def test_definition_file_inline_comments(capsys, tmp_path):
    f = tmp_path / "g.ini"
    f.write_text("[problem]\nid = gauss_2f1  ; Mellin-Barnes form\na = 0.5\n")
    d = run_json(capsys, "eval", "--problem", str(f), "--w", "-0.4", "--gamma", "1")
    assert d["extra"]["hyp2f1"]["re"] == pytest.approx(0.916079783099616, rel=1e-9)
