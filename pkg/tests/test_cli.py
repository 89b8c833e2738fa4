import csv
import json
import math

import pytest

from qchan.cli import main, parse_number
from qchan.errors import QchanError
from qchan.numerics import binary_entropy as H

H_INV_SQRT2 = 0.872429339856468073485639413712


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coherence_bit_flip(capsys):
    code, out, _ = run(capsys, "coherence", "--channel", "preset=bit_flip,p=0.3", "--basis", "computational",
                       "--measure", "rel")
    assert code == 0
    data = json.loads(out)
    assert data["value"] == pytest.approx(1.0, abs=1e-12)
    assert data["diag_entropy"] == pytest.approx(H(0.3) + 1, abs=1e-12)
    assert data["basis"]["name"] == "computational"


def test_coherence_pauli_x_l1_json_channel(capsys):
    spec = json.dumps({"preset": {"name": "pauli_x", "params": {}}})
    code, out, _ = run(capsys, "coherence", "--channel", spec, "--basis", "plus-minus", "--measure", "l1")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(3.0, abs=1e-12)


def test_malformed_json_exit_2(capsys):
    code, out, err = run(capsys, "coherence", "--channel", "{not json", "--measure", "rel")
    assert code == 2 and out == ""
    assert len(err.strip().splitlines()) == 1


def test_bad_basis_exit_2(capsys):
    code, _, _ = run(capsys, "coherence", "--channel", "identity", "--basis", "nope")
    assert code == 2


def test_bound_pauli_x(capsys):
    code, out, _ = run(capsys, "bound", "--channel", "pauli_x", "--basis1", "computational",
                       "--basis2", "plus-minus", "--measure", "l1")
    data = json.loads(out)
    assert code == 0
    assert data["sum_coherence"] == pytest.approx(4.0, abs=1e-12)
    assert data["lower_bound"] == pytest.approx(4.0, abs=1e-12)
    assert data["saturated"] is True


def test_bound_bit_flip_rel(capsys):
    code, out, _ = run(capsys, "bound", "--channel", "bit_flip,p=0.2", "--basis1", "computational",
                       "--basis2", "plus-minus", "--measure", "rel")
    data = json.loads(out)
    assert code == 0
    assert data["slack"] == pytest.approx((3 - H(0.2)) - (H_INV_SQRT2 - 2 * H(0.2) + 2), abs=1e-12)
    assert data["slack"] > 0


def test_bound_scope_exit_3(capsys):
    code, _, err = run(capsys, "bound", "--channel", "bit_flip,p=0.2", "--measure", "l1")
    assert code == 3 and "unitary" in err


def test_bound_c_override(capsys):
    code, out, _ = run(capsys, "bound", "--channel", "pauli_x", "--basis2", "example2-golden",
                       "--c-max", "0.3819660112501051")
    assert code == 0
    assert abs(json.loads(out)["slack"]) <= 1e-9


def _read(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_sweep_bit_flip(tmp_path, capsys):
    out = tmp_path / "bf.csv"
    code, _, _ = run(capsys, "sweep", "--channel", "bit_flip", "--param", "p", "--start", "0", "--stop", "1",
                     "--step", "0.01", "--measure", "rel", "--out", str(out))
    assert code == 0
    rows = _read(out)
    assert rows[0] == ["param", "sum_coherence", "lower_bound", "slack", "saturated"]
    assert len(rows) == 102
    assert float(rows[1][1]) == pytest.approx(3.0, abs=1e-9)
    assert float(rows[1][2]) == pytest.approx(H_INV_SQRT2 + 2, abs=1e-9)
    for row in rows[1:]:
        p = float(row[0])
        assert float(row[1]) == pytest.approx(3 - H(p), abs=1e-9)
        assert float(row[2]) == pytest.approx(H_INV_SQRT2 - 2 * H(p) + 2, abs=1e-9)


def test_sweep_rotation(tmp_path, capsys):
    out = tmp_path / "rot.csv"
    code, _, _ = run(capsys, "sweep", "--channel", "rotation", "--param", "alpha", "--start", "0",
                     "--stop", "pi", "--step", "pi/180", "--measure", "l1", "--out", str(out))
    assert code == 0
    rows = _read(out)[1:]
    assert len(rows) == 181
    minima = [i for i, r in enumerate(rows) if abs(float(r[1]) - 4) <= 1e-9]
    assert minima == [0, 45, 90, 135, 180]
    assert all(r[4] == ("true" if i in minima else "false") for i, r in enumerate(rows))
    for r in rows:
        a = float(r[0])
        assert float(r[1]) == pytest.approx(2 * (abs(math.sin(2 * a)) + abs(math.cos(2 * a))) + 2, abs=1e-9)
        assert float(r[2]) == pytest.approx(4.0, abs=1e-12)


def test_sweep_phase_damping_yprime(tmp_path, capsys):
    out = tmp_path / "pd.csv"
    code, _, _ = run(capsys, "sweep", "--channel", "phase_damping", "--param", "lambda", "--start", "0",
                     "--stop", "1", "--step", "0.25", "--basis2", "example3-yprime", "--c-max", "9/16",
                     "--out", str(out))
    assert code == 0
    rows = _read(out)[1:]
    assert len(rows) == 5
    # computed value: the slack is H(9/16) - H(3/4) at every lambda
    for r in rows:
        assert float(r[3]) == pytest.approx(H(9 / 16) - H(0.75), abs=1e-9)


def test_sweep_refuses_overwrite(tmp_path, capsys):
    out = tmp_path / "x.csv"
    out.write_text("keep")
    args = ["sweep", "--channel", "bit_flip", "--param", "p", "--start", "0", "--stop", "1", "--step", "0.5",
            "--out", str(out)]
    code, _, _ = run(capsys, *args)
    assert code == 2 and out.read_text() == "keep"
    code, _, _ = run(capsys, *args, "--force")
    assert code == 0 and len(_read(out)) == 4


def test_sweep_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        run(capsys, "sweep", "--channel", "rotation", "--param", "alpha", "--start", "0", "--stop", "pi/2",
            "--step", "pi/36", "--measure", "l1", "--out", str(p), "--gnuplot", str(tmp_path / "plot.gp"))
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert b"," in paths[0].read_bytes() and "lower bound" in (tmp_path / "plot.gp").read_text()


@pytest.mark.parametrize(
    "extra",
    [["--step", "0"], ["--step", "-1"], ["--param", "q"], ["--stop", "-1"]],
)
def test_sweep_spec_errors(tmp_path, capsys, extra):
    args = {"--channel": "bit_flip", "--param": "p", "--start": "0", "--stop": "1", "--step": "0.5",
            "--out": str(tmp_path / "e.csv")}
    args.update(dict(zip(extra[::2], extra[1::2])))
    code, _, _ = run(capsys, "sweep", *[t for kv in args.items() for t in kv])
    assert code == 2


def test_verify_exit_codes(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "lemma1", "--trials", "300", "--seed", "7")
    assert code == 0 and json.loads(out)["passed"]

    from qchan import verify

    monkeypatch.setitem(verify._TRIALS, verify.Target.LEMMA1, lambda rng, c: (-1.0, {}))
    code, out, _ = run(capsys, "verify", "lemma1", "--trials", "3", "--seed", "7")
    assert code == 4
    assert len(json.loads(out)["violations"]) == 3


def test_verify_gmin(capsys):
    code, out, _ = run(capsys, "verify", "gmin", "--trials", "50", "--c-max", "0.5625")
    data = json.loads(out)
    assert code == 0
    assert abs(data["grid_check"]["grid_minimum"] - (H(0.75) + 2)) <= 2e-3


def test_verify_bad_target(capsys):
    assert run(capsys, "verify", "theorem9")[0] == 2
    assert run(capsys, "verify", "lemma1", "--trials", "0")[0] == 2


def test_presets(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == 0
    assert json.loads(out)["bit_flip"] == ["p"]


def test_parse_number():
    assert parse_number("pi/180") == math.pi / 180
    assert parse_number("3*pi/4") == 3 * math.pi / 4
    assert parse_number("-0.5") == -0.5
    for bad in ["__import__('os')", "1/0", "pi**2", "x"]:
        with pytest.raises(QchanError):
            parse_number(bad)
