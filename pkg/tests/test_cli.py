import csv
import json
import math
import subprocess
import sys

import pytest

from triqubit import cli
from triqubit import states as st


@pytest.fixture
def state_files(tmp_path):
    paths = {}
    for name in "OGWB":
        p = tmp_path / f"{name}.json"
        st.save_state(st.named_state(name), p)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("text,value", [
    ("0.5", 0.5), ("pi", math.pi), ("pi/4", math.pi / 4), ("3pi/4", 3 * math.pi / 4),
    ("2*pi/3", 2 * math.pi / 3), ("-pi/2", -math.pi / 2), ("1e-3", 1e-3),
])
def test_parse_angle(text, value):
    assert cli.parse_angle(text) == pytest.approx(value, abs=1e-15)


def test_parse_angle_rejects_garbage():
    with pytest.raises(Exception):
        cli.parse_angle("tau/2")


def test_invariants_json(capsys, state_files):
    code, out, _ = run(capsys, "invariants", "--state", state_files["G"])
    doc = json.loads(out)
    assert code == 0
    assert list(doc) == list(cli.INVARIANT_KEYS)
    assert doc["ip123"] == pytest.approx(1, abs=1e-12) and doc["ip5"] == pytest.approx(1, abs=1e-12)


def test_invariants_csv(capsys, state_files):
    code, out, _ = run(capsys, "invariants", "--state", state_files["W"], "--format", "csv")
    rows = list(csv.DictReader(out.splitlines()))
    assert code == 0 and len(rows) == 1
    assert float(rows[0]["ip4"]) == pytest.approx(1, abs=1e-12)
    code, out, _ = run(capsys, "invariants", "--state", state_files["O"], "--format", "csv")
    row = next(csv.DictReader(out.splitlines()))
    assert [float(row[k]) for k in ("ip123", "ip4", "ip5")] == [0, 0, 0]


def test_invariants_bad_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "invariants", "--state", str(bad))[0] == 2
    zero = tmp_path / "zero.json"
    st.save_state(st.ThreeQubitPure([0] * 8), zero)
    assert run(capsys, "invariants", "--state", str(zero))[0] == 2
    assert run(capsys, "invariants", "--state", str(tmp_path / "missing.json"))[0] == 2


def test_invariants_accepts_csv_state(capsys, tmp_path):
    p = tmp_path / "g.csv"
    r = repr(1 / math.sqrt(2))
    p.write_text(",".join([r, "0"] + ["0"] * 12 + [r, "0"]) + "\n")
    code, out, _ = run(capsys, "invariants", "--state", str(p))
    assert code == 0 and json.loads(out)["i5"] == pytest.approx(1, abs=1e-12)


def test_project(capsys, state_files):
    code, out, _ = run(capsys, "project", "--state", state_files["G"], "--party", "A", "--theta", "0", "--phi", "0")
    doc = json.loads(out)
    assert code == 0 and doc["prob"] == 0.5 and doc["concurrence"] == 0
    code, out, _ = run(capsys, "project", "--state", state_files["G"], "--party", "A", "--theta", "pi/2", "--phi", "0")
    doc = json.loads(out)
    assert doc["prob"] == 0.5 and doc["concurrence"] == 1
    assert doc["collapsed"][0][0] == pytest.approx(1 / math.sqrt(2), abs=1e-15)


def test_project_undefined_collapse(capsys, state_files):
    code, out, _ = run(capsys, "project", "--state", state_files["O"], "--party", "A", "--theta", "pi")
    doc = json.loads(out)
    assert code == 0 and doc["collapsed"] is None and doc["concurrence"] == 0


def test_project_invalid_party(capsys, state_files):
    with pytest.raises(SystemExit) as exc:
        cli.main(["project", "--state", state_files["G"], "--party", "D", "--theta", "0"])
    assert exc.value.code == 2


def test_project_theta_out_of_range(capsys, state_files):
    assert run(capsys, "project", "--state", state_files["G"], "--party", "A", "--theta", "4")[0] == 2


def test_integrals_both(capsys, state_files):
    code, out, _ = run(capsys, "integrals", "--state", state_files["G"], "--pair", "BC", "--method", "both")
    doc = json.loads(out)
    assert code == 0
    assert doc["quadrature"]["c4"] == pytest.approx(math.pi / 6, abs=1e-13)
    assert doc["closed"]["c4"] == pytest.approx(math.pi / 6, abs=1e-13)
    assert max(doc["abs_diff"].values()) < 1e-12


def test_integrals_closed_product(capsys, state_files):
    code, out, _ = run(capsys, "integrals", "--state", state_files["O"], "--pair", "AB", "--method", "closed")
    doc = json.loads(out)
    assert code == 0 and "quadrature" not in doc
    assert all(v == 0 for v in doc["closed"].values())


def test_integrals_standard_normalization(capsys, state_files):
    code, out, _ = run(capsys, "integrals", "--state", state_files["G"], "--pair", "BC",
                       "--normalization", "standard")
    doc = json.loads(out)
    assert doc["quadrature"]["c4"] == pytest.approx(2 * math.pi / 3, abs=1e-13)
    assert max(doc["abs_diff"].values()) < 1e-12


def test_integrals_below_threshold(capsys, state_files):
    code, _, err = run(capsys, "integrals", "--state", state_files["G"], "--pair", "BC",
                       "--method", "quadrature", "--nodes-theta", "4")
    assert code == 2 and "exactness" in err


def test_sample_csv(capsys, tmp_path):
    out = tmp_path / "pts.csv"
    assert run(capsys, "sample", "--count", "50", "--seed", "42", "--out", str(out))[0] == 0
    text = out.read_text()
    assert "\r" not in text
    rows = list(csv.reader(text.splitlines()))
    assert rows[0] == ["ip123", "ip4", "ip5"] and len(rows) == 51
    for row in rows[1:]:
        assert all(-1e-9 <= float(v) <= 1 + 1e-9 for v in row)


def test_sample_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "sample", "--count", "1", "--seed", "7", "--out", str(a))
    run(capsys, "sample", "--count", "1", "--seed", "7", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_sample_prefix_stable(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "sample", "--count", "3", "--seed", "7", "--out", str(a))
    run(capsys, "sample", "--count", "5", "--seed", "7", "--out", str(b))
    assert b.read_text().splitlines()[:4] == a.read_text().splitlines()


def test_sample_json_and_svg(capsys, tmp_path):
    j, s = tmp_path / "p.json", tmp_path / "p.svg"
    assert run(capsys, "sample", "--count", "5", "--seed", "1", "--out", str(j), "--format", "json")[0] == 0
    doc = json.loads(j.read_text())
    assert len(doc) == 5 and set(doc[0]) == {"ip123", "ip4", "ip5"}
    assert run(capsys, "sample", "--count", "5", "--seed", "1", "--out", str(s), "--format", "svg")[0] == 0
    svg = s.read_text()
    assert svg.startswith("<svg") and svg.count("<circle") == 15
    assert svg.count('viewBox="0 0 600 600"') == 3


def test_sample_errors(capsys, tmp_path):
    assert run(capsys, "sample", "--count", "0", "--seed", "1", "--out", str(tmp_path / "x.csv"))[0] == 2
    assert run(capsys, "sample", "--count", "2", "--out", str(tmp_path / "no" / "dir" / "x.csv"))[0] == 2


def test_boundary_og(capsys, tmp_path):
    out = tmp_path / "og.csv"
    code, _, err = run(capsys, "boundary", "--family", "OG", "--steps", "11", "--out", str(out))
    assert code == 0 and "corrected" in err
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == ["theta", "ip123", "ip4", "ip5"] and len(rows) == 12
    first = [float(v) for v in rows[1][1:]]
    last = [float(v) for v in rows[-1][1:]]
    assert first == pytest.approx([0, 0, 0], abs=1e-12)
    assert last == pytest.approx([1, 27 / 28, 1], abs=1e-10)


def test_boundary_ob_midpoint_is_b(capsys, tmp_path):
    out = tmp_path / "ob.csv"
    run(capsys, "boundary", "--family", "OB", "--steps", "3", "--out", str(out), "--span", "full")
    mid = [float(v) for v in out.read_text().splitlines()[2].split(",")]
    assert mid[0] == pytest.approx(math.pi / 4)
    assert mid[1:] == pytest.approx([2 / 3, 27 / 28, 0], abs=1e-10)


def test_boundary_wg_contains_g(capsys, tmp_path):
    out = tmp_path / "wg.csv"
    run(capsys, "boundary", "--family", "WG", "--steps", "4", "--out", str(out))
    rows = [[float(v) for v in line.split(",")] for line in out.read_text().splitlines()[1:]]
    assert rows[0][1:] == pytest.approx([1, 27 / 28, 1], abs=1e-10)
    assert rows[-1][1:] == pytest.approx([8 / 9, 1, 0], abs=1e-10)


def test_boundary_bad_family(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        cli.main(["boundary", "--family", "XY", "--steps", "3", "--out", str(tmp_path / "x.csv")])
    assert exc.value.code == 2
    assert run(capsys, "boundary", "--family", "OG", "--steps", "1", "--out", str(tmp_path / "x.csv"))[0] == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "20", "--seed", "3", "--tol", "1e-10")
    assert code == 0
    assert out.strip().endswith("verify: PASS")
    assert "c8p printed form [BC]" in out and "documented typo" in out


def test_verify_rounding_floor(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "2", "--seed", "3", "--tol", "1e-300")
    assert code == 1 and "FAIL" in out


def test_verify_bad_args(capsys):
    assert run(capsys, "verify", "--trials", "0")[0] == 2
    assert run(capsys, "verify", "--trials", "1", "--tol", "-1")[0] == 2


def test_module_entry_point(state_files):
    proc = subprocess.run(
        [sys.executable, "-m", "triqubit", "invariants", "--state", state_files["G"], "--format", "csv"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("i0,i1")
