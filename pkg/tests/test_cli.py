import json
import os

import pytest

from exczero.cli import main

DATA = os.path.join(os.path.dirname(__file__), "..", "data")
CURVE11 = os.path.join(DATA, "11a1.txt")
CURVE15 = os.path.join(DATA, "15a1.txt")


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["tree", "--p", "3", "--frobnicate"])
    assert exc.value.code == 2


def test_tree_check(capsys):
    code, out = run(["tree", "--p", "3", "--radius", "2", "--check"], capsys)
    assert code == 0
    assert out.startswith("PASS")
    assert "vertices=17" in out


def test_gauss_json(capsys):
    code, out = run(["--format", "json", "gauss", "--p", "5",
                     "--conductor-exp", "1", "--char-spec", "1"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["status"] == "PASS"
    assert abs(float(obj["abs2"]) - 5) < 1e-9


def test_local_integral(capsys):
    code, out = run(["local-integral", "--p", "3", "--alpha", "-1",
                     "--t", "2"], capsys)
    assert code == 0 and out.startswith("PASS")


def test_lp_roundtrip(tmp_path, capsys):
    from exczero.measures import dirac, save_measure
    mu = dirac(5, 3, 2)
    path = tmp_path / "mu.txt"
    save_measure(mu, path)
    code, out = run(["lp", "--measure", str(path), "--s", "5",
                     "--level", "2"], capsys)
    assert code == 0 and out.startswith("PASS")
    code, out = run(["lp", "--measure", str(path), "--moments", "1",
                     "--level", "2"], capsys)
    assert code == 0 and "moment1" in out


def test_ezero_report(capsys):
    code, out = run(["ezero", "--curve", CURVE11, "--p", "11",
                     "--level", "2", "--prec", "8"], capsys)
    assert code == 0
    assert out.startswith("PASS")
    assert "lp_at_0=0" in out


def test_ezero_rejects_nonsplit():
    with pytest.raises(SystemExit) as exc:
        main(["ezero", "--curve", CURVE15, "--p", "3", "--level", "2"])
    assert exc.value.code == 2


def test_interp_nonsplit_control(capsys):
    code, out = run(["interp", "--curve", CURVE15, "--p", "3",
                     "--level", "2"], capsys)
    assert code == 0 and "kind=nonsplit" in out and "predicted=2" in out


def test_desk_caps():
    for argv in (["interp", "--curve", CURVE11, "--p", "3", "--level", "6"],
                 ["linv", "--curve", CURVE11, "--p", "17"],
                 ["tree", "--p", "17"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_seed_determinism(capsys):
    _, out1 = run(["--seed", "7", "detcheck", "--trials", "50"], capsys)
    _, out2 = run(["--seed", "7", "detcheck", "--trials", "50"], capsys)
    assert out1 == out2
