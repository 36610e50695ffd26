import json

import pytest

from luecorr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_correlator_plain(capsys):
    code, out = run(capsys, "correlator", "-k", "2,2", "--format", "plain")
    assert code == 0
    assert out.strip() == "2α(1+2α²)N + 2(1+11α²)N² + 36αN³ + 18N⁴"


def test_correlator_json_schema(capsys):
    code, out = run(capsys, "correlator", "-k", "-1", "--margin", "3")
    doc = json.loads(out)
    assert set(doc) == {"request", "result", "provenance"}
    assert doc["provenance"] == {"order_margin": 3}
    assert doc["result"]["denominator"] == [{"shift": 0, "multiplicity": 1}]


def test_negative_keys_accepted(capsys):
    code, out = run(capsys, "correlator", "-k", "-2,3", "--format", "plain")
    assert code == 0 and "a_1" in out


def test_deterministic(capsys):
    _, a = run(capsys, "correlator", "-k", "3,-1,-1", "--format", "json")
    _, b = run(capsys, "correlator", "-k", "3,-1,-1", "--format", "json")
    assert a == b


def test_eval(capsys):
    _, out = run(capsys, "correlator", "-k", "-1", "--eval", "N=2,alpha=3/2", "--format", "plain")
    assert out.strip() == "4/3"


def test_eval_refuses_pochhammer_zero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["correlator", "-k", "-2", "--eval", "alpha=1"])
    assert exc.value.code == 2
    assert "--eval" in capsys.readouterr().err


@pytest.mark.parametrize("argv, flag", [
    (["correlator", "-k", "1,0"], "--keys"),
    (["hurwitz", "--flavor", "strict", "--mu", "3,-1", "--gmax", "1"], "--mu"),
    (["hurwitz", "--flavor", "mixed", "--mu", "3", "--gmax", "1"], "--flavor"),
    (["oracle", "lue", "-k", "1", "--N", "5"], "--N"),
])
def test_usage_errors_name_the_flag(capsys, argv, flag):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_hurwitz_csv(capsys):
    code, out = run(capsys, "hurwitz", "--flavor", "strict", "--mu", "3,1", "--gmax", "1", "--format", "csv")
    rows = out.strip().splitlines()
    assert rows[0] == "g,s,H" and "0,2,9" in rows


def test_oracles(capsys):
    _, out = run(capsys, "oracle", "gue", "-k", "4", "--format", "plain")
    assert out.strip() == "2*N^3 + N"
    _, out = run(capsys, "oracle", "hurwitz", "--flavor", "strict", "--mu", "1,1", "--nu", "2", "--g", "0")
    assert json.loads(out)["result"]["count"] == 1


def test_hodge_elsv(capsys):
    _, out = run(capsys, "hodge", "elsv", "--mu", "1", "--g", "1", "--format", "json")
    assert json.loads(out)["result"]["hurwitz_side"] == "-1"


def test_check_suite(capsys):
    code, out = run(capsys, "check", "factorization")
    assert code == 0 and out.startswith("factorization: ok")


def test_check_failure_exit_code(capsys, monkeypatch):
    from luecorr import checks
    from luecorr.topo import Report

    def broken():
        rep = Report("virasoro")
        rep.expect(False, ("n", 1, "degree", 2))
        return rep

    monkeypatch.setitem(checks.SUITES, "virasoro", broken)
    code, out = run(capsys, "check", "virasoro")
    assert code == 1
    assert "first counterexample" in out and "'degree', 2" in out
