import io
import json
import subprocess
import sys

import jsonschema
import pytest

from arithkleinian.cli import output_schema, run


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(argv):
    code, out, err = call(["--json", *argv])
    doc = json.loads(out)
    jsonschema.validate(doc, output_schema())
    return code, doc, err


def test_bianchi_volume():
    code, doc, _ = call_json(["volume", "bianchi", "--d", "-1"])
    assert code == 0
    assert doc["result"]["value"] == pytest.approx(0.305321, abs=1e-5)
    assert doc["result"]["error_bound"] <= 1e-6


def test_ramify_minus1_minus3_over_sqrt_minus2():
    code, doc, _ = call_json(["quat", "ramify", "--field", "d=-2", "--a", "-1", "--b", "-3"])
    assert code == 0
    assert doc["result"] == {"finite": ["p3", "p3bar"], "infinite": []}


def test_domain_error_exit_1():
    code, out, err = call(["volume", "bianchi", "--d", "4"])
    assert code == 1
    assert "NotSquarefreeError" in err and "negative squarefree" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["nope"],
        ["volume", "bianchi"],
        ["volume", "bianchi", "--d", "-1", "--unknown", "3"],
        ["quat", "ramify", "--field", "d=oops", "--a", "1", "--b", "1"],
        ["quat", "ramify", "--field", "d=-1", "--a", "x+", "--b", "1"],
        ["geom", "dist3", "--p", "0,1", "--q", "0,0,1"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, _, err = call(argv)
    assert code == 2 and err


def test_negative_element_values_parse():
    code, doc, _ = call_json(["lattice", "clozel", "--field", "d=-1", "--a", "3", "--b", "-3+w"])
    assert code == 0 and doc["result"]["clozel_applies"] is False


def test_output_is_deterministic_and_rounded():
    argv = ["zeta", "--field", "d=-7", "--eps", "1e-8"]
    first, second = call(["--json", *argv])[1], call(["--json", *argv])[1]
    assert first == second
    value = json.loads(first)["result"]["value"]
    assert len(repr(value).replace(".", "").lstrip("0")) <= 10


@pytest.mark.parametrize(
    "argv",
    [
        ["field", "info", "--field", "poly=-1,-1,0,1"],
        ["field", "split", "--field", "d=-5", "--p", "3"],
        ["field", "class-number", "--d", "-23"],
        ["quat", "norm", "--field", "d=-2", "--a", "-1", "--b", "-3", "--x", "1,w,0,1/2"],
        ["quat", "mul", "--field", "Q", "--a", "-1", "--b", "-1", "--x", "0,1,0,0", "--y", "0,0,1,0"],
        ["quat", "realize", "--set", "2,3,5,7"],
        ["geom", "dist2", "--p", "0,1", "--q", "0,2"],
        ["geom", "dist3", "--p", "0,0,1", "--q", "1,0,1"],
        ["geom", "act2", "--g", "1,1,0,1", "--p", "0,1"],
        ["geom", "act3", "--g", "0,-1,1,0", "--p", "0.3,0.1,0.8"],
        ["geom", "slash", "--g", "1,0,1,1", "--p", "0,0,1", "--k", "2", "--value", "1,0,0"],
        ["geom", "slash", "--g", "1,0,1,1", "--p", "0,1", "--k", "4", "--value", "1"],
        ["geom", "sym", "--k", "3", "--m", "1,2,3,4"],
        ["geom", "bessel", "--nu", "1", "--y", "2.5"],
        ["geom", "expand", "--field", "d=-1", "--p", "0.1,0.2,0.5", "--coeff", "1,0,1", "--coeff", "0,1,2+1I"],
        ["zeta", "--field", "Q"],
        ["zeta", "--field", "d=-3", "--method", "euler"],
        ["volume", "covol", "--field", "d=-2", "--a", "-1", "--b", "-3"],
        ["lattice", "classify", "--field", "Q", "--a", "1", "--b", "1"],
        ["lattice", "cusps", "--d", "-10"],
        ["lattice", "eis-dim", "--d", "-3"],
        ["lattice", "cuspidal-vanishing", "--d", "-71"],
        ["schema"],
    ],
)
def test_every_subcommand_produces_valid_json(argv):
    code, doc, _ = call_json(argv)
    assert code == 0 and doc["ok"]


def test_quat_mul_gives_k():
    _, doc, _ = call_json(["quat", "mul", "--field", "Q", "--a", "-1", "--b", "-1", "--x", "0,1,0,0", "--y", "0,0,1,0"])
    assert doc["result"]["product"] == ["0", "0", "0", "1"]


def test_plain_output():
    code, out, _ = call(["lattice", "cusps", "--d", "-5"])
    assert code == 0 and "cusps: 2" in out


def test_env_var_sets_default_eps(monkeypatch):
    monkeypatch.setenv("ARITHKLEIN_EPS", "1e-3")
    _, loose, _ = call_json(["zeta", "--field", "d=-1"])
    monkeypatch.delenv("ARITHKLEIN_EPS")
    _, tight, _ = call_json(["zeta", "--field", "d=-1"])
    assert loose["result"]["terms_used"] < tight["result"]["terms_used"]
    monkeypatch.setenv("ARITHKLEIN_EPS", "abc")
    assert call(["zeta", "--field", "d=-1"])[0] == 2


def write(tmp_path, text):
    p = tmp_path / "batch.txt"
    p.write_text(text)
    return str(p)


def test_batch_empty(tmp_path):
    code, out, _ = call(["batch", write(tmp_path, "# nothing\n\n")])
    assert code == 0 and json.loads(out) == []


def test_batch_bianchi_table(tmp_path):
    text = "\n".join(f"volume bianchi --d {d}" for d in (-1, -2, -3, -7, -11)) + "\n"
    code, out, _ = call(["batch", write(tmp_path, text)])
    doc = json.loads(out)
    jsonschema.validate(doc, output_schema())
    assert code == 0 and [item["line"] for item in doc] == [1, 2, 3, 4, 5]
    values = [item["result"]["value"] for item in doc]
    assert values[:4] == pytest.approx([0.305321, 1.003841, 0.169156, 0.888914], abs=1e-5)


def test_batch_with_malformed_item(tmp_path):
    text = 'volume bianchi --d -1\nquat ramify --field d=-2 --a "-1\nvolume bianchi --d 6\n'
    code, out, _ = call(["batch", write(tmp_path, text)])
    doc = json.loads(out)
    jsonschema.validate(doc, output_schema())
    assert code == 1
    assert [item["ok"] for item in doc] == [True, False, False]
    assert doc[1]["error"]["message"].startswith("line 2")
    assert doc[2]["error"]["type"] == "NotSquarefreeError"


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "arithkleinian.cli", "--json", "lattice", "cusps", "--d", "-23"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["cusps"] == 3
