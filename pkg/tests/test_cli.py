import json
import math
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from qinfo import analytic, cli
from qinfo.cli import main, parse_measures

SCHEMA = json.loads(resources.files("qinfo").joinpath("schemas/measure_report.schema.json").read_text())


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_measure_cfs_example(capsys):
    code, out, _ = run(["measure", "--n", "1", "--l", "0", "--m", "0", "--Z", "1", "--measures", "cfs"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    (rec,) = doc["measures"]
    assert rec["name"] == "cfs"
    assert rec["numeric"] == pytest.approx(3.711999, abs=1e-6)
    assert rec["analytic"] == pytest.approx(2 * math.e / math.pi ** (1 / 3), rel=1e-15)
    assert rec["rel_dev"] < 1e-10


def test_measure_w1_example(capsys):
    code, out, _ = run(["measure", "--n", "1", "--l", "0", "--m", "0", "--Z", "1", "--measures", "w:q=1"], capsys)
    assert code == 0
    assert json.loads(out)["measures"][0]["numeric"] == pytest.approx(1.0, abs=1e-12)


def test_invalid_l_exit_2(capsys):
    code, _, err = run(["measure", "--n", "2", "--l", "2", "--m", "0"], capsys)
    assert code == 2
    assert "l must satisfy l ≤ n−1" in err


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["measure", "--n", "0"], "n"),
        (["measure", "--n", "2", "--l", "1", "--m", "2"], "m"),
        (["measure", "--n", "1", "--Z", "-1"], "Z"),
        (["measure", "--n", "1", "--measures", "nope"], "unknown measure"),
        (["measure", "--n", "1", "--measures", "w:q=0"], "q > 0"),
        (["measure", "--n", "1", "--measures", "renyi:q=1"], "q ≠ 1"),
        (["measure", "--n", "1", "--measures", "w"], "w:q=<value>"),
        (["measure", "--n", "1", "--measures", "r:k=x"], "number"),
        (["measure", "--n", "1", "--kg", "--Z", "70"], "supercritical"),
        (["measure", "--n", "2", "--dim", "4", "--measures", "cfs"], "clmc"),
        (["measure", "--n", "2", "--dim", "1"], "D must be"),
        (["measure", "--n", "1", "--nodes-radial", "1"], "node counts"),
        (["figure", "fig2", "--z-values", "10,69"], "supercritical"),
        (["figure", "fig1", "--n-max", "0"], "n_max"),
        (["figure", "fig3", "--d-max", "1"], "D_max"),
    ],
)
def test_invalid_inputs_exit_2(argv, needle, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert needle in err
    assert out == ""


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["measure"])
    assert exc.value.code == 2


def test_numeric_failure_exit_3(capsys):
    code, _, err = run(["measure", "--n", "1", "--kg", "--Z", "10", "--measures", "f"], capsys)
    assert code == 3
    assert "not integrable" in err


def test_figure2_charge_density_exit_3(capsys):
    code, out, err = run(["figure", "fig2", "--z-values", "10,20"], capsys)
    assert code == 3 and out == ""
    assert "--kg-density probability" in err


def test_measure_all_default_measures(capsys):
    code, out, _ = run(["measure", "--n", "3", "--l", "2", "--m", "-1", "--Z", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    by = {r["name"]: r for r in doc["measures"]}
    assert set(by) == {"r:k=1", "r:k=2", "v", "f", "s", "d", "j", "clmc", "cfs", "ccr"}
    for name in ("r:k=1", "r:k=2", "v", "f", "ccr"):
        assert by[name]["rel_dev"] < 1e-9
    assert by["s"]["analytic"] is None


def test_measure_ground_all_analytic(capsys):
    names = "r:k=-2,r:k=-1,r:k=0,v,f,s,w:q=0.5,w:q=3,d,renyi:q=2,j,clmc,cfs,ccr"
    code, out, _ = run(["measure", "--n", "1", "--Z", "1.5", "--measures", names], capsys)
    assert code == 0
    for rec in json.loads(out)["measures"]:
        assert rec["analytic"] is not None, rec["name"]
        assert rec["rel_dev"] < 1e-9, rec


def test_measure_ddim_and_kg(capsys):
    code, out, _ = run(["measure", "--n", "2", "--dim", "5"], capsys)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert code == 0 and doc["state"]["system"] == "ddim" and doc["measures"][0]["rel_dev"] < 1e-10
    code, out, _ = run(["measure", "--n", "2", "--l", "1", "--alpha", "0.0073", "--Z", "30", "--measures", "cfs,s,v"], capsys)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert code == 0 and doc["state"]["system"] == "kleingordon"
    assert all(r["analytic"] is None for r in doc["measures"])


def test_measure_csv_format(capsys, tmp_path):
    out_file = tmp_path / "m.csv"
    code, out, _ = run(["measure", "--n", "1", "--measures", "v,s", "--format", "csv", "--out", str(out_file)], capsys)
    assert code == 0 and out == ""
    lines = out_file.read_text().split("\n")
    assert lines[0] == "name,numeric,analytic,abs_dev,rel_dev"
    assert lines[1].startswith("v,0.7") and lines[-1] == ""


def test_quadrature_overrides(capsys):
    code, out, _ = run(["measure", "--n", "2", "--measures", "cfs", "--nodes-radial", "60", "--nodes-angular", "24", "--tol", "1e-9"], capsys)
    assert code == 0
    assert json.loads(out)["measures"][0]["numeric"] == pytest.approx(13.0581071, rel=1e-7)


def test_config_file(monkeypatch, tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"measures": ["v"], "fig1": {"n_max": 3}}))
    monkeypatch.setenv("QINFO_CONFIG", str(cfg))
    code, out, _ = run(["measure", "--n", "2"], capsys)
    assert [r["name"] for r in json.loads(out)["measures"]] == ["v"]
    code, out, _ = run(["figure", "fig1"], capsys)
    assert out.count("\n") == 4
    monkeypatch.setenv("QINFO_CONFIG", str(tmp_path / "missing.json"))
    code, _, _ = run(["measure", "--n", "1"], capsys)
    assert code == 2


def _csv_invariants(text, header):
    lines = text.split("\n")
    assert lines[0] == header
    assert lines[-1] == ""
    for line in lines[:-1]:
        assert line == line.rstrip()
        for cell in line.split(","):
            assert "," not in cell
    return [line.split(",") for line in lines[1:-1]]


def test_fig1(capsys):
    code, out, _ = run(["figure", "fig1"], capsys)
    assert code == 0
    rows = _csv_invariants(out, "n,c_fs")
    assert [int(r[0]) for r in rows] == list(range(1, 9))
    assert float(rows[0][1]) == pytest.approx(3.711999, abs=1e-6)
    vals = [float(r[1]) for r in rows]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_fig2_probability(capsys):
    code, out, _ = run(["figure", "fig2", "--kg-density", "probability", "--z-values", "1,30,60"], capsys)
    assert code == 0
    rows = _csv_invariants(out, "Z,c_fs_kg,c_fs_schrodinger")
    assert [float(r[0]) for r in rows] == [1.0, 30.0, 60.0]
    assert float(rows[2][1]) > float(rows[1][1]) > float(rows[0][1])


def test_fig3(capsys):
    code, out, _ = run(["figure", "fig3"], capsys)
    assert code == 0
    rows = _csv_invariants(out, "n,D,c_lmc")
    assert len(rows) == 33
    assert rows[0][:2] == ["1", "2"] and float(rows[0][2]) == pytest.approx(1.8473, abs=5e-5)


@pytest.mark.parametrize("fig", ["fig1", "fig3"])
def test_figure_reruns_are_byte_identical(fig, tmp_path, capsys):
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    assert main(["figure", fig, "--out", str(a)]) == 0
    assert main(["figure", fig, "--out", str(b)]) == 0
    assert main(["figure", fig, "--out", str(c), "--jobs", "3"]) == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_plot_script(tmp_path, capsys):
    csv_path, script = tmp_path / "f3.csv", tmp_path / "plot_f3.py"
    assert main(["figure", "fig3", "--out", str(csv_path), "--plot-script", str(script)]) == 0
    text = script.read_text()
    compile(text, str(script), "exec")
    assert str(csv_path) in text and "matplotlib" in text
    code, _, err = run(["figure", "fig3", "--plot-script", str(script)], capsys)
    assert code == 2 and "--out" in err


def test_parse_measures_labels():
    specs = parse_measures("cfs, w:q=2,r:k=-1,renyi:q=0.5")
    assert [s.label for s in specs] == ["cfs", "w:q=2", "r:k=-1", "renyi:q=0.5"]


def test_verify_fast_table(capsys):
    code = main(["verify", "fast"])
    out = capsys.readouterr().out
    assert "fisher_analytic vs quadrature" in out
    assert "errata exercised:" in out
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert all(l.startswith(("[PASS]", "[FAIL]")) for l in lines)
    # exit code reflects the table
    assert code == (0 if all(l.startswith("[PASS]") for l in lines) else 1)


def test_verify_detects_tampered_fisher_exponent(monkeypatch, capsys):
    def tampered(n, m, Z=1.0):
        return analytic.AnalyticResult(4.0 * Z**3 * (n - abs(m)) / n**3, "fisher")

    monkeypatch.setattr(analytic, "fisher_analytic", tampered)
    code = main(["verify", "fast"])
    out = capsys.readouterr().out
    assert code == 1
    assert any(l.startswith("[FAIL]") and "fisher_analytic vs quadrature" in l for l in out.splitlines())


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qinfo.cli", "measure", "--n", "1", "--measures", "ccr"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["measures"][0]["numeric"] == pytest.approx(3.0, rel=1e-10)
