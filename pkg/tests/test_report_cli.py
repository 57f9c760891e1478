import csv
import io
import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from ruptureopt.cli import main
from ruptureopt.evaluation import evaluate
from ruptureopt.report import (
    ReportRow,
    fingerprint,
    format_design,
    parse_design,
    read_report_csv,
    report_csv,
)
from ruptureopt.scenarios import builtin_designs
from ruptureopt.svg import render_panel
from ruptureopt.torque_space import TensionBounds

SVG = "{http://www.w3.org/2000/svg}"


def svg_counts(path):
    root = ET.parse(path).getroot()
    return (len(root.findall(f".//{SVG}polygon")), len(root.findall(f".//{SVG}circle")),
            [g.get("class") for g in root.iter(f"{SVG}g") if "badge" in (g.get("class") or "")])


def test_format_design():
    assert format_design([[-0.1], [0.1], [0.1], [0.1]]) == "-1 1 1 1"
    assert format_design(np.array([[-0.05, -0.1], [0.1, 0.02]])) == "-0.5 1; -1 0.2"
    assert np.allclose(parse_design("-0.5 1; -1 0.2"), [[-0.05, -0.1], [0.1, 0.02]])
    with pytest.raises(ValueError):
        parse_design("1 2; 3")


def test_fingerprint_is_permutation_invariant():
    assert fingerprint([[0.1], [-0.1], [0.1], [-0.1], [0.1]]) == "(-0.1,-0.1,0.1,0.1,0.1)"
    assert fingerprint([[0.1, 0], [-0.1, 0.05]]) == fingerprint([[-0.1, 0.05], [0.1, 0]])


def test_csv_round_trip():
    rows = []
    for d in builtin_designs():
        ev = evaluate(d.G, d.problem.bounds, d.problem.tau, d.problem.m_min)
        rows.append(ReportRow.from_eval(d.label, d.G, ev, wall_time=0.0123456789 if len(rows) % 2 else None))
    text = report_csv(rows)
    assert read_report_csv(io.StringIO(text)) == rows
    assert report_csv(read_report_csv(io.StringIO(text))) == text


def test_svg_panel_structure(tmp_path):
    sq = np.array([[-1, -1], [1, -1], [1, 1], [-1, 1]], dtype=float)
    for r, inc in ((0.5, True), (0.0, False), (0.0, True)):
        p = tmp_path / "p.svg"
        p.write_text(render_panel(sq, np.zeros(2), r, inc, 2, "t & <x>"))
        polys, circles, badge = svg_counts(p)
        assert polys == 1 and circles == (1 if r > 0 else 0)
        assert badge == ["badge included" if inc else "badge excluded"]


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    return code, capsys.readouterr().out


def test_cli_rits_scenario(capsys, tmp_path):
    code, out = run(capsys, "rits", "--scenario", "table1/m4/tg-5", "--out", tmp_path)
    assert code == 0 and "radius: 25\n" in out


def test_cli_rits_zero_design(capsys, tmp_path):
    code, out = run(capsys, "rits", "--G", "[[0,0],[0,0]]", "--tau-g", "0,0", "--out", tmp_path)
    assert code == 0
    assert "radius: 0\n" in out and "degenerate: yes" in out


def test_cli_rits_rupture_excluded(capsys, tmp_path):
    code, out = run(capsys, "rits", "--rupture", "3", "--scenario", "fig5/A-prime", "--out", tmp_path)
    assert code == 0 and "radius: 0\n" in out
    assert svg_counts(tmp_path / "fig5_A-prime_rupt3.svg")[2] == ["badge excluded"]


def test_cli_eval_panels(capsys, tmp_path):
    code, _ = run(capsys, "eval", "--scenario", "table2/m5/mmin5/tg00", "--scenario", "table3/original",
                  "--out", tmp_path)
    assert code == 0
    for i in range(6):
        polys, circles, badge = svg_counts(tmp_path / f"table2_m5_mmin5_tg00_rupt{i}.svg")
        assert polys == 1 and circles <= 1 and badge == ["badge included"]
    badges = [svg_counts(tmp_path / f"table3_original_rupt{i}.svg")[2][0] for i in range(5)]
    assert [b.endswith("excluded") for b in badges] == [False, False, False, True, True]
    rows = read_report_csv(open(tmp_path / "eval.csv", encoding="utf-8"))
    assert [r.scenario for r in rows] == ["table2/m5/mmin5/tg00", "table3/original"]


def test_cli_eval_empty_design_list(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"designs": [], "output": {"dir": str(tmp_path / "o")}}))
    code, _ = run(capsys, "eval", "--config", cfg)
    assert code == 0
    text = (tmp_path / "o" / "eval.csv").read_text()
    assert text.count("\n") == 1 and text.startswith("scenario,design,radii")


def test_cli_optimize_no_solution(capsys, tmp_path):
    code, out = run(capsys, "optimize", "--scenario", "table1/m3/tg0", "--seed", 0, "--out", tmp_path)
    assert code == 0 and "no solution" in out
    row = read_report_csv(open(tmp_path / "table1_m3_tg0_best.csv", encoding="utf-8"))[0]
    assert row.e == 0.0
    hist = list(csv.reader(open(tmp_path / "table1_m3_tg0_history.csv", encoding="utf-8")))
    assert hist[0] == ["generation", "max", "mean"] and len(hist) == 52


def test_cli_optimize_six_muscles(capsys, tmp_path):
    code, _ = run(capsys, "optimize", "--scenario", "table1/m6/tg0", "--seed", 1, "--out", tmp_path)
    assert code == 0
    row = read_report_csv(open(tmp_path / "table1_m6_tg0_best.csv", encoding="utf-8"))[0]
    assert sorted(row.design.split()) == ["-1"] * 3 + ["1"] * 3


def test_cli_optimize_deterministic(capsys, tmp_path):
    for d in ("a", "b"):
        assert run(capsys, "optimize", "--scenario", "table2/m4/mmin4/tg-50", "--seed", 42,
                   "--out", tmp_path / d)[0] == 0
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert any(f.endswith(".svg") for f in files) and any(f.endswith(".csv") for f in files)
    assert files == sorted(p.name for p in (tmp_path / "b").iterdir())
    for f in files:
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_cli_config_file(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"problem": {"scenario": "table1/m4/tg0"},
                               "ga": {"population": 20, "generations": 3},
                               "output": {"dir": str(tmp_path / "o"), "svg": False}}))
    assert run(capsys, "optimize", "--config", cfg)[0] == 0
    assert sorted(p.name for p in (tmp_path / "o").iterdir()) == ["table1_m4_tg0_best.csv", "table1_m4_tg0_history.csv"]


@pytest.mark.parametrize("argv, code", [
    (["rits", "--scenario", "nope"], 2),
    (["rits", "--G", "[[0.1, 0, 0, 0]]", "--tau-g", "0,0,0,0"], 3),
    (["eval", "--G", "[[0.1], [0.1]", "--tau-g", "0"], 2),
    (["rits", "--scenario", "fig5/A", "--rupture", "9"], 2),
    (["optimize", "--scenario", "table1/m4/tg0", "--seed", "-1"], 2),
])
def test_cli_exit_codes(capsys, tmp_path, argv, code):
    assert main(argv + ["--out", str(tmp_path)]) == code
    assert "error:" in capsys.readouterr().err


def test_cli_bad_config_json(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text("{not json")
    assert main(["eval", "--config", str(cfg)]) == 2


def test_cli_list(capsys):
    code, out = run(capsys, "list")
    assert code == 0 and "table3/original" in out.split()


def test_sweep_table1_rows(capsys, tmp_path):
    code, _ = run(capsys, "sweep", "table1", "--out", tmp_path)
    assert code == 0
    rows = list(csv.DictReader(open(tmp_path / "table1_sweep.csv", encoding="utf-8")))
    assert len(rows) == 8
    flagged = [r["scenario"] for r in rows if r["no_solution"] == "yes"]
    assert flagged == ["table1/m3/tg0"]
    m5 = next(r for r in rows if r["scenario"] == "table1/m5/tg-5")
    assert m5["fingerprint"] == "(-0.1,-0.1,0.1,0.1,0.1)"


@pytest.mark.slow
def test_sweep_table2_rows(capsys, tmp_path):
    code, _ = run(capsys, "sweep", "table2", "--out", tmp_path)
    assert code == 0
    rows = list(csv.DictReader(open(tmp_path / "table2_sweep.csv", encoding="utf-8")))
    assert len(rows) == 8
    flagged = sorted(r["scenario"] for r in rows if r["no_solution"] == "yes")
    assert flagged == ["table2/m4/mmin3/tg00", "table2/m4/mmin4/tg00"]
