import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cancelkit.cli import RunConfig, dumps, main, run
from cancelkit.errors import ParseError
from cancelkit.numberfield import QQ, nf_create
from cancelkit.parsing import parse_conic, parse_field, parse_polynomial, split_generators
from cancelkit.polyring import Polynomial, chebyshev, power_map

SQRT2 = nf_create([-2, 0, 1])
x = Polynomial.x()


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), (json.loads(err) if err.strip().startswith("{") else err)


# -- parsing ----------------------------------------------------------------------------------

def test_parse_examples():
    assert parse_polynomial("x^3 - 2*x") == Polynomial(QQ, [0, -2, 0, 1])
    t = SQRT2.gen()
    assert parse_polynomial("(1/2)*x^2 + t*x", SQRT2) == Polynomial(SQRT2, [0, t, Fraction(1, 2)])
    assert parse_polynomial("T(6)") == chebyshev(6)
    assert parse_polynomial("P(5) + 2*x**2") == power_map(5) + 2 * x ** 2


@pytest.mark.parametrize("text, code", [
    ("x + 1", "DEGREE_LT_2"),
    ("x^2 +", "SYNTAX_ERROR"),
    ("y^2", "UNKNOWN_SYMBOL"),
    ("x^2 / 0", "DIVISION_BY_ZERO"),
    ("x^2 )", "SYNTAX_ERROR"),
])
def test_parse_errors(text, code):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, QQ, generator=True)
    assert err.value.code == code
    assert err.value.position is not None


def test_parse_field_and_generators():
    assert parse_field("t") == QQ
    assert parse_field("t^2 - 2") == SQRT2
    assert split_generators("T(2), x^2 + (1/2)*x, P(3)") == ["T(2)", "x^2 + (1/2)*x", "P(3)"]


def test_parse_conic():
    C = parse_conic("X^2 + X*Y + Y^2 - 3", QQ)
    assert C.coefficients() == (1, 1, 1, 0, 0, -3)
    with pytest.raises(ParseError) as err:
        parse_conic("X^3 + Y", QQ)
    assert err.value.code == "NOT_A_CONIC"


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@settings(max_examples=200, deadline=None)
@given(st.lists(coeff, max_size=8))
def test_round_trip_over_q(cs):
    p = Polynomial(QQ, cs)
    assert parse_polynomial(str(p), QQ) == p


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(coeff, coeff), max_size=6))
def test_round_trip_over_number_field(pairs):
    p = Polynomial(SQRT2, [SQRT2([a, b]) for a, b in pairs])
    assert parse_polynomial(str(p), SQRT2) == p


# -- commands ---------------------------------------------------------------------------------

def test_decide_chebyshev_pair(capsys):
    code, doc, _ = cli(capsys, "decide", "--gens", "T(2),T(3)", "--depth", "1")
    assert code == 0
    rep = doc["report"]
    assert rep["verdict"] == "OBSTRUCTED"
    assert "3a" in [w["case"] for w in rep["witnesses"]]
    assert doc["config"]["depth"] == 1 and doc["version"]


def test_decide_proven_cancellation(capsys):
    code, doc, _ = cli(capsys, "decide", "--gens", "T(5),P(5)")
    assert code == 0
    rep = doc["report"]
    assert rep["verdict"] == "PROVEN_CANCELLATION"
    assert rep["absence_proof"]["rule_trace"]
    assert sorted(rep["absence_proof"]["candidate_d_set"]) == ["2", "3", "4", "6"]


def test_conic_command(capsys):
    code, doc, _ = cli(capsys, "conic", "--conic", "X^2 + X*Y + Y^2 - 3")
    assert code == 0 and doc["report"]["point"] == ["1", "1"]
    code, doc, _ = cli(capsys, "conic", "--conic", "X^2 + Y^2 + 1")
    assert doc["report"]["status"] == "NO_POINT"


def test_other_commands(capsys):
    code, doc, _ = cli(capsys, "normal-form", "--poly", "x^3 + 3*x")
    assert code == 0 and "CHEBYSHEV" in doc["report"]["kinds"]
    code, doc, _ = cli(capsys, "cheb", "--poly", "x^3")
    assert doc["report"]["coefficients"] == {"1": "3", "3": "1"}
    code, doc, _ = cli(capsys, "oracle", "--gens", "T(2),T(3)", "--a", "1", "--b", "-1")
    assert doc["report"]["collision"]["depth"] == 1
    code, doc, _ = cli(capsys, "witness", "--gens", "x^3,x^2", "--depth", "1", "--pairs", "3", "--iterate-j", "1")
    assert code == 0 and len(doc["report"]["pairs"]) == 3
    for p in doc["report"]["pairs"]:
        assert p["h1j_a"] != p["h1j_b"]


def test_rationals_serialized_as_strings(capsys):
    code, doc, _ = cli(capsys, "cheb", "--poly", "(1/3)*x^2")
    assert doc["report"]["a0"] == "2/3" and doc["report"]["coefficients"] == {"2": "1/3"}


@pytest.mark.parametrize("argv, code", [
    (["decide", "--gens", "x + 1"], "DEGREE_LT_2"),
    (["decide", "--gens", "x^2 +"], "SYNTAX_ERROR"),
    (["decide", "--field", "t^2 - 1", "--gens", "x^2"], "REDUCIBLE"),
    (["decide", "--gens", "x^2", "--depth", "0"], "USAGE"),
])
def test_error_exit_codes(capsys, argv, code):
    assert main(argv) == 1
    assert json.loads(capsys.readouterr().err)["error"]["code"] == code


def test_unknown_command_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


def test_certificate_failure_exit_code(capsys, monkeypatch):
    from cancelkit import decider
    from cancelkit.errors import CertificateFailure

    def broken(w):
        raise CertificateFailure("forced")

    monkeypatch.setattr(decider, "certify", broken)
    assert main(["decide", "--gens", "T(2),T(3)", "--depth", "1"]) == 2
    assert json.loads(capsys.readouterr().err)["error"]["code"] == "CERTIFICATE_FAILURE"


def test_json_file_output(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["decide", "--gens", "x^3,x^2", "--depth", "1", "--json", str(out)]) == 0
    printed = capsys.readouterr().out
    assert out.read_text() == printed


def test_output_is_canonical():
    doc = run(RunConfig(command="decide", generators=["T(2)", "T(3)"], depth=2))
    text = dumps(doc)
    assert text == json.dumps(json.loads(text), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def test_printed_polynomials_reparse(capsys):
    code, doc, _ = cli(capsys, "decide", "--gens", "T(2),T(3),x^3 - 2*x", "--depth", "2")
    K = QQ

    def walk(o):
        if isinstance(o, dict):
            for k, v in o.items():
                if k in ("polynomial", "outer_P", "inner_Q") and v:
                    p = parse_polynomial(v, K)
                    assert str(p) == v
                walk(v)
        elif isinstance(o, list):
            for v in o:
                walk(v)

    walk(doc)


def test_identical_output_across_processes():
    env = dict(os.environ)
    outs = []
    for seed in ("1", "2"):
        env["PYTHONHASHSEED"] = seed
        r = subprocess.run([sys.executable, "-m", "cancelkit.cli", "decide", "--gens", "T(2),T(3),x^2", "--depth", "2"],
                           capture_output=True, env=env, check=True)
        outs.append(r.stdout)
    assert outs[0] == outs[1]
