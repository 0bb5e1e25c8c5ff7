import json

from click.testing import CliRunner
from gmpy2 import mpq

from qphi import q_pochhammer, rat
from qphi.cli import main

runner = CliRunner()


def run(*args):
    return runner.invoke(main, list(args))


def test_eval_x_zero():
    res = run("eval", "--phi", "1", "1", "--upper", "0", "--lower", "1/2",
              "--q", "1/2", "--x", "0")
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["value"] == "1"


def test_eval_chu_matches_closed_form():
    res = run("eval", "--phi", "2", "1", "--upper", "8", "--upper", "1/3",
              "--lower", "1/5", "--q", "1/2", "--x", "3/40")
    assert res.exit_code == 0, res.output
    q, b, c = rat(1, 2), rat(1, 3), rat(1, 5)
    want = q_pochhammer(c / b, q, 3) / q_pochhammer(c, q, 3)
    assert mpq(json.loads(res.output)["value"]) == want


def test_eval_float_mode():
    res = run("eval", "--phi", "1", "1", "--upper", "1/3", "--lower", "1/5",
              "--q", "1/2", "--x", "-1/2", "--mode", "float", "--prec", "96")
    assert res.exit_code == 0, res.output
    body = json.loads(res.output)
    assert body["mode"] == "float" and body["precision"] == 96


def test_eval_exact_nonterminating_is_usage_error():
    res = run("eval", "--phi", "1", "1", "--upper", "1/3", "--lower", "1/5",
              "--q", "1/2", "--x", "1/2")
    assert res.exit_code == 2


def test_coeff_golden():
    res = run("coeff", "--family", "st", "--k", "1", "--m", "1", "--n", "0",
              "--a", "1/3", "--c", "1/5", "--x", "2/5", "--q", "1/2")
    assert res.exit_code == 0, res.output
    body = json.loads(res.output)
    assert mpq(body["pair"]["S"]) == rat(1, 5) - rat(1, 3) * rat(2, 5)
    assert mpq(body["pair"]["T"]) == rat(4, 5)


def test_coeff_uv():
    res = run("coeff", "--family", "uv", "--m", "2", "--n", "2",
              "--c", "1/5", "--x", "2/5", "--q", "1/2")
    assert res.exit_code == 0, res.output
    body = json.loads(res.output)
    c, x, q = rat(1, 5), rat(2, 5), rat(1, 2)
    assert mpq(body["pair"]["U"]) == -(1 - c) * (1 - c * q) / x
    assert body["flavor"] == "UV"


def test_coeff_uv_rejects_st_arguments():
    res = run("coeff", "--family", "uv", "--k", "1", "--m", "1", "--n", "0",
              "--a", "1/3", "--c", "1/5", "--x", "2/5", "--q", "1/2")
    assert res.exit_code == 2


def test_coeff_st_needs_k_and_a():
    res = run("coeff", "--family", "st", "--m", "1", "--n", "0",
              "--c", "1/5", "--x", "2/5", "--q", "1/2")
    assert res.exit_code == 2


def test_coeff_pole_is_exit_1():
    res = run("coeff", "--family", "st", "--k", "1", "--m", "1", "--n", "0",
              "--a", "1/3", "--c", "1", "--x", "2/5", "--q", "1/2")
    assert res.exit_code == 1


def test_bessel_exact_t():
    res = run("bessel", "--kind", "3", "--x", "1/2", "--q", "1/3", "--t", "1/9")
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["kind"] == 3


def test_bessel_nu_xor_t():
    res = run("bessel", "--kind", "2", "--x", "1", "--q", "1/2",
              "--nu", "1", "--t", "1/2")
    assert res.exit_code == 2
    res = run("bessel", "--kind", "2", "--x", "1", "--q", "1/2")
    assert res.exit_code == 2


def test_lommel_csv():
    res = run("lommel", "--kind", "2", "--m", "2", "--t", "2/7", "--q", "1/3",
              "--format", "csv")
    assert res.exit_code == 0, res.output
    lines = res.output.strip().splitlines()
    assert lines[0] == "exponent,coefficient"
    assert lines[1] == "-2,95/147"
    assert lines[2] == "0,-2/7"


def test_lommel_text_mentions_denominator():
    res = run("lommel", "--kind", "2", "--m", "1", "--n", "2",
              "--t", "2/7", "--q", "1/3")
    assert res.exit_code == 0, res.output
    assert "denominator" in res.output


def test_lommel_json():
    res = run("lommel", "--kind", "3", "--m", "1", "--t", "2/7", "--q", "1/3",
              "--format", "json")
    assert res.exit_code == 0, res.output
    body = json.loads(res.output)
    assert body["rows"][0] == {"exponent": -1, "coefficient": "5/7"}


def test_verify_small_sweep_table():
    res = run("verify", "--suite", "3trr_0phi1", "--max-shift", "1",
              "--trials", "1", "--order", "16")
    assert res.exit_code == 0, res.output
    assert "3trr_0phi1" in res.output
    assert "total" in res.output


def test_verify_json_deterministic():
    args = ("verify", "--suite", "relation_UV", "--max-shift", "1",
            "--trials", "1", "--order", "16", "--format", "json")
    a, b = run(*args), run(*args)
    assert a.exit_code == 0 and b.exit_code == 0
    assert a.output == b.output
    json.loads(a.output)  # valid JSON


def test_verify_case_and_forced_failure():
    case = json.dumps({
        "id": "3trr_1phi1", "shifts": [3, -2, 1], "mode": "float",
        "params": {"a": "1/3", "c": "1/5", "q": "1/2", "x": "1/4"},
    })
    res = run("verify", "--case", case, "--order", "16")
    assert res.exit_code == 0, res.output
    res = run("verify", "--case", case, "--order", "16", "--condition", "1e-38")
    assert res.exit_code == 1
    assert "FAIL" in res.output


def test_verify_unknown_suite():
    res = run("verify", "--suite", "wat")
    assert res.exit_code == 2


def test_verify_bad_case_json():
    res = run("verify", "--case", "{not json")
    assert res.exit_code == 2


def test_bench():
    res = run("bench", "--k", "1", "--m", "1", "--n", "0", "--repeat", "1")
    assert res.exit_code == 0, res.output
    body = json.loads(res.output)
    assert body["agree"] is True
    assert body["shifts"] == [1, 1, 0]


def test_bench_explicit_params_need_all_four():
    res = run("bench", "--k", "1", "--m", "1", "--n", "0", "--a", "1/3")
    assert res.exit_code == 2


def test_usage_error_on_bad_scalar():
    res = run("eval", "--phi", "1", "1", "--upper", "zebra", "--lower", "1/5",
              "--q", "1/2", "--x", "0")
    assert res.exit_code == 2
