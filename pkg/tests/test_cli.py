import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from helpers import DEAN_ALTS
from rcint import formats
from rcint.cli import main
from rcint.integrals import choquet

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def csv_values(out):
    lines = out.strip().splitlines()
    return {row.split(",")[0]: row.split(",")[1] for row in lines[1:]}


@pytest.mark.parametrize("kind", ["lower", "upper"])
@pytest.mark.parametrize("mode", ["exact", "float"])
def test_eval_dean(capsys, kind, mode):
    code, out, _ = run(capsys, "eval", "--capacity", DATA / f"dean_{kind}.json", "--alts", DATA / "dean_alts.csv", "--mode", mode)
    assert code == 0
    assert out.splitlines()[0] == "id,value"
    assert csv_values(out) == {"S1": "7.5", "S2": "7.6", "S3": "7.4"}


def test_rank_dean(capsys):
    code, out, _ = run(capsys, "rank", "--capacity", DATA / "dean_lower.json", "--alts", DATA / "dean_alts.csv")
    assert code == 0
    assert out.splitlines() == ["rank,id,value,tie", "1,S2,7.6,", "2,S1,7.5,", "3,S3,7.4,"]


def test_rank_reports_ties(capsys, tmp_path):
    alts = tmp_path / "alts.csv"
    alts.write_text("id,M_lo,M_hi,Ph_lo,Ph_hi,L_lo,L_hi\nA,5,5,5,5,5,5\nB,5,5,5,5,5,5\nC,1,2,1,2,1,2\n")
    code, out, _ = run(capsys, "rank", "--capacity", DATA / "dean_lower.json", "--alts", alts, "--format", "json")
    assert code == 0
    groups = json.loads(out)["ranking"]
    assert groups[0]["ids"] == ["A", "B"] and groups[0]["tie"]
    assert groups[1]["ids"] == ["C"] and not groups[1]["tie"]


def test_eval_json_exact_prints_fractions(capsys):
    code, out, _ = run(
        capsys, "eval", "--capacity", DATA / "dean_lower.json", "--alts", DATA / "dean_alts.csv", "--mode", "exact", "--format", "json"
    )
    doc = json.loads(out)
    assert code == 0
    assert [r["value"] for r in doc["results"]] == ["15/2", "38/5", "37/5"]


def test_mode_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("RCINT_MODE", "exact")
    code, out, _ = run(capsys, "eval", "--capacity", DATA / "dean_lower.json", "--alts", DATA / "dean_alts.csv", "--format", "json")
    assert json.loads(out)["results"][1]["value"] == "38/5"


def test_eval_samples_column(capsys):
    code, out, _ = run(capsys, "eval", "--capacity", DATA / "dean_lower.json", "--alts", DATA / "dean_alts.csv", "--samples", "4000")
    assert code == 0
    header, *rows = out.strip().splitlines()
    assert header == "id,value,riemann"
    for row in rows:
        _, exact, approx = row.split(",")
        assert abs(float(exact) - float(approx)) < 1e-2


def test_eval_writes_out_file(capsys, tmp_path):
    target = tmp_path / "values.csv"
    code, out, _ = run(capsys, "eval", "--capacity", DATA / "dean_lower.json", "--alts", DATA / "dean_alts.csv", "--out", target)
    assert code == 0 and out == ""
    assert "S2,7.6" in target.read_text()


@pytest.mark.parametrize(
    "integral, capacity, alts, expect",
    [
        ("rci-mobius", "dean_lower.json", "dean_alts.csv", {"S1": "7.5", "S2": "7.6", "S3": "7.4"}),
        ("bipolar", "dean_bipolar.json", "dean_alts.csv", {"S1": "7.5", "S2": "7.6", "S3": "7.4"}),
        ("mpoint", "dean_mpoint.json", "dean_mpoint.csv", {"S1": "7.5", "S2": "7.6", "S3": "7.4"}),
        ("rsi", "sugeno_ex1.json", "sugeno_ex1_alts.csv", {"x": "4"}),
        ("rsi", "student_lower.json", "student_alts.csv", {"S": "26"}),
        ("rsi", "student_upper.json", "student_alts.csv", {"S": "26"}),
    ],
)
def test_eval_other_integrals(capsys, integral, capacity, alts, expect):
    code, out, err = run(capsys, "eval", "--integral", integral, "--capacity", DATA / capacity, "--alts", DATA / alts)
    assert code == 0, err
    assert csv_values(out) == expect


def test_eval_level(capsys):
    code, out, _ = run(capsys, "eval", "--integral", "level", "--capacity", DATA / "dean_level.json", "--alts", DATA / "dean_alts.csv")
    assert code == 0
    assert set(csv_values(out)) == {"S1", "S2", "S3"}


def test_eval_concave_at_least_rci(capsys):
    code, out, _ = run(
        capsys, "eval", "--integral", "concave", "--capacity", DATA / "dean_lower.json", "--alts", DATA / "dean_alts.csv", "--mode", "exact"
    )
    assert code == 0
    values = {k: float(v) for k, v in csv_values(out).items()}
    assert values["S1"] >= 7.5 and values["S2"] >= 7.6 and values["S3"] >= 7.4


def test_eval_shilkret_robust_normalizes(capsys, tmp_path):
    alts = tmp_path / "alts.csv"
    alts.write_text("id,M_lo,M_hi,Ph_lo,Ph_hi,L_lo,L_hi\nA,1,1,1,1,1,1\n")
    code, out, _ = run(capsys, "eval", "--integral", "shilkret-r", "--capacity", DATA / "dean_lower.json", "--alts", alts)
    assert code == 0 and csv_values(out) == {"A": "1"}


def test_classical_kinds_use_diagonal(capsys, tmp_path):
    alts = tmp_path / "alts.csv"
    alts.write_text("id,M_lo,M_hi,Ph_lo,Ph_hi,L_lo,L_hi\nA,0.2,0.2,0.6,0.6,0.4,0.4\n")
    code, out, _ = run(capsys, "eval", "--integral", "choquet", "--capacity", DATA / "nu_lower.json", "--alts", alts)
    assert code == 0
    assert float(csv_values(out)["A"]) == pytest.approx(0.2 * 0.2 + 0.3 * 0.6 + 0.5 * 0.4)
    for kind in ("sugeno", "shilkret", "choquet"):
        code, out, _ = run(capsys, "eval", "--integral", kind, "--capacity", DATA / "dean_lower.json", "--alts", alts)
        assert code == 0


def test_classical_kinds_reject_intervals(capsys):
    code, _, err = run(capsys, "eval", "--integral", "choquet", "--capacity", DATA / "dean_lower.json", "--alts", DATA / "dean_alts.csv")
    assert code == 2 and "degenerate" in err


def test_check_valid(capsys):
    code, out, _ = run(capsys, "check", "--capacity", DATA / "dean_lower.json")
    assert code == 0
    assert "separable: no" in out


def test_check_tampered(capsys, tmp_path):
    doc = json.loads((DATA / "dean_lower.json").read_text())
    for e in doc["entries"]:
        if e["A"] == ["Ph"] and e["B"] == ["M", "Ph", "L"]:
            e["v"] = 0.95  # above mu({M,Ph},N) = 0.9
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "check", "--capacity", bad)
    assert code == 2
    assert "not monotone" in err and "A={Ph};B={M,Ph,L}" in err


def test_mobius_then_check(capsys, tmp_path):
    target = tmp_path / "m.json"
    code, _, _ = run(capsys, "mobius", "--capacity", DATA / "dean_lower.json", "--mode", "exact", "--out", target)
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["mobius"] is True and len(doc["entries"]) == 27
    assert sum(Fraction(e["v"]) for e in doc["entries"]) == 1
    code, out, _ = run(capsys, "check", "--capacity", target, "--mode", "exact")
    assert code == 0 and out.startswith("ok: Möbius")
    code, out, _ = run(capsys, "eval", "--integral", "rci-mobius", "--capacity", target, "--alts", DATA / "dean_alts.csv", "--mode", "exact")
    assert csv_values(out) == {"S1": "7.5", "S2": "7.6", "S3": "7.4"}


def test_check_bad_mobius(capsys, tmp_path):
    doc = json.loads((DATA / "dean_lower.json").read_text())
    doc["mobius"] = True  # a capacity table read as a Möbius table sums to more than 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "check", "--capacity", bad)
    assert code == 2 and "condition 2" in err


def test_gen_separable_roundtrip(capsys, tmp_path):
    target = tmp_path / "sep.json"
    code, _, _ = run(
        capsys, "gen-separable", "--alpha", "3/10", "--lower", DATA / "nu_lower.json", "--upper", DATA / "nu_upper.json",
        "--mode", "exact", "--out", target,
    )  # fmt: skip
    assert code == 0
    code, out, _ = run(capsys, "check", "--capacity", target)
    assert code == 0 and "separable: yes" in out
    code, out, _ = run(capsys, "eval", "--capacity", target, "--alts", DATA / "dean_alts.csv", "--mode", "exact", "--format", "json")
    got = {r["id"]: Fraction(r["value"]) for r in json.loads(out)["results"]}
    lo, _ = formats.load_classical(DATA / "nu_lower.json")
    up, _ = formats.load_classical(DATA / "nu_upper.json")
    alpha = Fraction(3, 10)
    for ident, x in DEAN_ALTS.items():
        assert got[ident] == alpha * choquet(x.lower(), lo) + (1 - alpha) * choquet(x.upper(), up)


def test_missing_file_is_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "check", "--capacity", tmp_path / "nope.json")
    assert code == 1 and "nope.json" in err


def test_bad_csv_names_line(capsys, tmp_path):
    alts = tmp_path / "alts.csv"
    alts.write_text("id,M_lo,M_hi,Ph_lo,Ph_hi,L_lo,L_hi\nA,1,2,3,4,5,6\nB,3,1,1,1,1,1\n")
    code, _, err = run(capsys, "eval", "--capacity", DATA / "dean_lower.json", "--alts", alts)
    assert code == 2 and "alts.csv:3" in err


def test_incomplete_capacity_is_validation_error(capsys, tmp_path):
    doc = json.loads((DATA / "dean_lower.json").read_text())
    doc["entries"].pop()
    bad = tmp_path / "short.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "check", "--capacity", bad)
    assert code == 2 and "missing" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rcint", "rank", "--capacity", str(DATA / "dean_upper.json"), "--alts", str(DATA / "dean_alts.csv")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert [line.split(",")[1] for line in proc.stdout.splitlines()[1:]] == ["S2", "S1", "S3"]
