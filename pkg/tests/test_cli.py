import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from wcw.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_classify_height0_seed7():
    code, out, _ = call("classify", "--p", "5", "--ell", "1", "--scenario", "height0", "--seed", "7",
                        "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["match"] and rep["computed"]["classes"] == 1
    assert all(m["seed"] == 7 for m in rep["modules"])


def test_non_prime_is_usage_error():
    code, _, err = call("classify", "--p", "4", "--scenario", "height0")
    assert code == 2 and "NonPrime" in err


def test_chi_sources_exclusive():
    assert call("classify", "--p", "5")[0] == 2
    assert call("classify", "--p", "5", "--scenario", "height0", "--chi", "{}")[0] == 2
    with pytest.raises(SystemExit) as exc:
        call("classify")
    assert exc.value.code == 2


def test_unknown_chi_key_is_error(tmp_path):
    f = tmp_path / "chi.json"
    f.write_text(json.dumps({"p": 5, "ell": 1, "values": {"e(-1,1)": "1"}, "extra": 1}))
    assert call("verma", "--p", "5", "--ell", "1", "--chi", str(f))[0] == 2
    f.write_text(json.dumps({"p": 5, "ell": 1, "values": {"x(1)": "1"}}))
    assert call("verma", "--p", "5", "--ell", "1", "--chi", str(f))[0] == 2


def test_chi_flag_mismatch():
    assert call("verma", "--p", "5", "--ell", "0", "--chi", '{"p": 5, "ell": 1, "values": {}}')[0] == 2


def test_unsupported_regime_exit_3():
    code, _, err = call("classify", "--p", "5", "--ell", "1", "--chi", '{"values": {"e(3,0)": "1"}}')
    assert code == 3 and "unsupported" in err


def test_verma_subcommand():
    code, out, _ = call("verma", "--p", "5", "--ell", "0", "--chi", '{"values": {}}', "--lambda", "4",
                        "--format", "json")
    assert code == 0
    (row,) = json.loads(out)["modules"]
    assert row["dim"] == 5 and row["verdict"] == "ReducibleWithWitness" and row["witness_dim"] == 1


def test_verma_auto_extends_field():
    code, out, _ = call("verma", "--p", "5", "--ell", "0", "--chi", '{"values": {"e(0,0)": "1"}}',
                        "--format", "json")
    assert code == 0
    js = json.loads(out)
    assert js["field"]["m"] == 5 and len(js["modules"]) == 5


def test_induce_subcommand(tmp_path):
    f = tmp_path / "chi.json"
    f.write_text(json.dumps({"p": 7, "ell": 0, "values": {"e(1,0)": "2"}}))
    code, out, _ = call("induce", "--p", "7", "--ell", "0", "--chi", str(f), "--format", "json")
    assert code == 0
    js = json.loads(out)
    assert js["dim"] == 49 == js["predicted_dim"] and js["verdict"] == "Irreducible"
    assert call("induce", "--p", "5", "--ell", "1", "--scenario", "height0")[0] == 3


def test_hom_subcommand():
    code, out, _ = call("hom", "--p", "5", "--ell", "1", "--chi", '{"values": {"e(-1,1)": "1"}}',
                        "--lambda", "3", "--mu", "1", "--format", "json")
    js = json.loads(out)
    assert code == 0 and js["hom_dimension"] == 1 and js["intertwiner"] == "valid"
    code, out, _ = call("hom", "--p", "5", "--ell", "1", "--chi", '{"values": {"e(0,1)": "1"}}',
                        "--lambda", "3", "--mu", "1", "--format", "json")
    js = json.loads(out)
    assert code == 0 and js["hom_dimension"] == 0 and js["agree"]


def test_check_lemma_subcommand():
    code, out, _ = call("check-lemma", "--p", "7", "--ell", "1", "--scenario", "heightr(4)",
                        "--format", "json")
    js = json.loads(out)
    assert code == 0 and js["ok"] and [r["k"] for r in js["lemma"]] == [0, 1, 2]


def test_selftest():
    code, out, _ = call("selftest")
    assert code == 0 and "FAIL" not in out


def test_cache_dir_env_gives_identical_reports(tmp_path, monkeypatch):
    args = ("classify", "--p", "5", "--ell", "1", "--scenario", "height1-b", "--seed", "3", "--format", "json")
    plain = call(*args)[1]
    monkeypatch.setenv("WCW_CACHE_DIR", str(tmp_path))
    first = call(*args)[1]
    assert list(tmp_path.glob("*.json"))
    second = call(*args)[1]
    assert plain == first == second
