import json

import numpy as np
import pytest

from hopflambda import checks
from hopflambda.cli import main
from hopflambda.hopf.tracing import read_curves_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enhance_zwbar_json(capsys):
    code, out, _ = run(capsys, "enhance", "--expr", "F = z*conj(w)", "--method", "both", "--json")
    d = json.loads(out)
    assert code == 0
    assert (d["lambda"], d["rho"], d["mu"]) == (1, 0, 1)
    assert d["all_checks_pass"] and all(c["pass"] for c in d["checks"])


def test_enhance_degenerate(capsys):
    code, _, err = run(capsys, "enhance", "--expr", "f = x*y; g = 0")
    assert code == 1
    assert "isolated critical point check failed" in err


def test_enhance_radius(capsys):
    _, out1, _ = run(capsys, "enhance", "--expr", "F = z*w", "--json")
    _, out2, _ = run(capsys, "enhance", "--expr", "F = z*w", "--radius", "0.5", "--json")
    a, b = json.loads(out1), json.loads(out2)
    assert (a["lambda"], a["rho"], a["mu"]) == (b["lambda"], b["rho"], b["mu"]) == (0, 1, 1)


def test_enhance_text_and_file(tmp_path, capsys):
    f = tmp_path / "map.txt"
    f.write_text("f = x*u - y*v;\ng = x*v + y*u\n")
    code, out, _ = run(capsys, "enhance", "--file", str(f), "--no-mirror")
    assert code == 0
    assert "lambda" in out and "[PASS]" in out


def test_enhance_parse_error(capsys):
    code, _, err = run(capsys, "enhance", "--expr", "F = z*q")
    assert code == 1
    assert "position" in err and "^" in err


def test_enhance_needs_one_source(capsys):
    assert run(capsys, "enhance")[0] == 1
    assert run(capsys, "enhance", "F = z*w", "--expr", "F = z*w")[0] == 1


def test_enhance_failed_check_exit_code(capsys, monkeypatch):
    import hopflambda.enhancement as enh
    monkeypatch.setattr(enh, "brieskorn_mu", lambda p, q: 99)
    code, _, _ = run(capsys, "enhance", "F = z^2 - w^3", "--no-mirror")
    assert code == 2


def test_export_curves(tmp_path, capsys):
    base = tmp_path / "cusp.csv"
    code, _, _ = run(capsys, "enhance", "F = z^2 - w^3", "--no-mirror", "--export-curves", str(base))
    assert code == 0
    curves = read_curves_csv(tmp_path / "cusp_minus.csv")
    assert len(curves) >= 2
    assert (tmp_path / "cusp_plus.csv").exists()


def test_determinism(capsys):
    argv = ["enhance", "F = z^2 - w^3", "--method", "both", "--seed", "42", "--json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    da, db = json.loads(a), json.loads(b)
    da.pop("timestamp"), db.pop("timestamp")
    assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


@pytest.mark.parametrize("word, expect", [
    ("B2: s1 s1 s1", dict(lam=0, e=3, comps=1)),
    ("B3:", dict(lam=4, e=0, comps=3)),
])
def test_braid(capsys, word, expect):
    code, out, _ = run(capsys, "braid", word, "--json")
    d = json.loads(out)
    assert code == 0
    assert (d["lambda"], d["exponent_sum"], d["components"]) == tuple(expect.values())


def test_braid_out_of_range(capsys):
    code, _, err = run(capsys, "braid", "B2: s9")
    assert code == 1 and "IndexOutOfRange" in err


def test_plumb(capsys, tmp_path):
    code, out, _ = run(capsys, "plumb", '{"signs":["+","-","-"],"edges":[[0,1],[1,2]]}', "--json")
    assert code == 0 and json.loads(out) == {"lambda": 2, "mu": 3, "mirror_lambda": 1}
    f = tmp_path / "t.json"
    f.write_text('{"signs":["+","-"],"edges":[[0,1]]}')
    assert run(capsys, "plumb", str(f))[0] == 0
    code, _, err = run(capsys, "plumb", '{"signs":["+","-"],"edges":[]}')
    assert code == 1 and "NotATree" in err


def test_trace_hopf_fiber(tmp_path, capsys):
    out_path = tmp_path / "fiber.csv"
    code, _, _ = run(capsys, "trace", "--expr", "F = z*w", "--which", "minus", "--q", "0,0,1",
                     "--out", str(out_path))
    assert code == 0
    (curve,) = read_curves_csv(out_path)
    assert curve.length == pytest.approx(2 * np.pi, rel=1e-3)


def test_trace_no_preimage(tmp_path, capsys):
    out_path = tmp_path / "none.csv"
    code, out, _ = run(capsys, "trace", "--expr", "F = z*w", "--which", "plus", "--q", "0,0,1",
                       "--out", str(out_path))
    assert code == 0 and "no preimage" in out
    assert not out_path.exists()


def test_trace_bad_q(capsys):
    assert run(capsys, "trace", "--expr", "F = z*w", "--q", "0,0,2")[0] == 1
    assert run(capsys, "trace", "--expr", "F = z*w", "--q", "0,1")[0] == 1


def test_check_default(capsys):
    code, out, _ = run(capsys, "check")
    assert code == 0 and "FAIL" not in out


def test_check_deterministic(capsys):
    a = run(capsys, "check", "--n-random", "100", "--seed", "7")
    b = run(capsys, "check", "--n-random", "100", "--seed", "7")
    assert a == b and a[0] == 0


def test_check_injected_fault(capsys, monkeypatch):
    real = checks.check_map

    def broken(name, F, points):
        row = real(name, F, points)
        row.plucker_defect = 1.0
        return row

    monkeypatch.setattr(checks, "check_map", broken)
    code, out, _ = run(capsys, "check", "--n-random", "2")
    assert code == 2 and "FAIL" in out


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "--help")[0] == 0
