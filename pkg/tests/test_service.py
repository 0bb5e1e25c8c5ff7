from fastapi.testclient import TestClient
from gmpy2 import mpfr, mpq

from qphi import q_pochhammer, rat
from qphi.service import app

client = TestClient(app)


def test_root_lists_endpoints():
    r = client.get("/")
    assert r.status_code == 200
    body = r.json()
    assert body["name"] == "qphi"
    assert "/eval" in body["endpoints"]


def test_eval_exact_terminating():
    r = client.post("/eval", json={
        "r": 2, "s": 1, "upper": ["8", "1/3"], "lower": ["1/5"],
        "q": "1/2", "x": "3/40", "mode": "exact",
    })
    assert r.status_code == 200
    body = r.json()
    # q^-3 = 8 so this is the Chu-Vandermonde instance with j = 3
    q, b, c = rat(1, 2), rat(1, 3), rat(1, 5)
    want = q_pochhammer(c / b, q, 3) / q_pochhammer(c, q, 3)
    assert mpq(body["value"]) == want
    assert body["mode"] == "exact" and body["terminated"] is True
    assert body["terms_used"] == 4


def test_eval_float_nonterminating():
    r = client.post("/eval", json={
        "r": 1, "s": 1, "upper": ["1/3"], "lower": ["1/5"],
        "q": "1/2", "x": "-1/2", "mode": "float", "precision": 96,
    })
    assert r.status_code == 200
    body = r.json()
    assert body["terminated"] is False
    assert body["tail_bound"] is not None
    assert body["precision"] == 96
    assert mpfr(body["value"], 96) != 0


def test_eval_count_mismatch_422():
    r = client.post("/eval", json={
        "r": 2, "s": 1, "upper": ["1/8"], "lower": ["1/5"], "q": "1/2", "x": "1",
    })
    assert r.status_code == 422


def test_eval_exact_nonterminating_400():
    # a library error, not a schema error: the service reports it as 400
    # (the CLI maps this one to usage exit code 2)
    r = client.post("/eval", json={
        "r": 1, "s": 1, "upper": ["1/3"], "lower": ["1/5"],
        "q": "1/2", "x": "1/2", "mode": "exact",
    })
    assert r.status_code == 400
    assert r.json()["error"] == "NonTerminatingError"


def test_coeff_golden():
    r = client.post("/coeff", json={
        "family": "st", "k": 1, "m": 1, "n": 0,
        "a": "1/3", "c": "1/5", "x": "2/5", "q": "1/2",
    })
    assert r.status_code == 200
    body = r.json()
    assert body["flavor"] == "ST"
    assert mpq(body["pair"]["S"]) == rat(1, 5) - rat(1, 3) * rat(2, 5)
    assert mpq(body["pair"]["T"]) == rat(4, 5)


def test_coeff_uv_rejects_k_a():
    r = client.post("/coeff", json={
        "family": "uv", "k": 1, "m": 1, "n": 0, "a": "1/3",
        "c": "1/5", "x": "2/5", "q": "1/2",
    })
    assert r.status_code == 422


def test_coeff_pole_400():
    r = client.post("/coeff", json={
        "family": "st", "k": 1, "m": 1, "n": 0,
        "a": "1/3", "c": "1", "x": "2/5", "q": "1/2",
    })
    assert r.status_code == 400
    body = r.json()
    assert body["error"] == "PoleError"
    assert "c=" in body["detail"]


def test_bessel_exact_t():
    r = client.post("/bessel", json={
        "kind": 3, "x": "1/2", "q": "1/3", "t": "1/9",
    })
    assert r.status_code == 200
    assert r.json()["kind"] == 3


def test_bessel_nu_xor_t():
    r = client.post("/bessel", json={
        "kind": 2, "x": "1", "q": "1/2", "nu": "1", "t": "1/2",
    })
    assert r.status_code == 422
    r = client.post("/bessel", json={"kind": 2, "x": "1", "q": "1/2"})
    assert r.status_code == 422


def test_bessel_negative_integer_order_400():
    r = client.post("/bessel", json={"kind": 2, "x": "1", "q": "1/2", "nu": "-1"})
    assert r.status_code == 400
    assert r.json()["error"] == "PoleError"


def test_lommel_rows():
    r = client.post("/lommel", json={"kind": 2, "m": 2, "t": "2/7", "q": "1/3"})
    assert r.status_code == 200
    body = r.json()
    assert body["rows"] == [
        {"exponent": -2, "coefficient": "95/147"},
        {"exponent": 0, "coefficient": "-2/7"},
    ]
    assert body["den_order"] == 0


def test_lommel_denominator_order():
    r = client.post("/lommel", json={"kind": 2, "m": 1, "n": 2, "t": "2/7", "q": "1/3"})
    assert r.status_code == 200
    assert r.json()["den_order"] == 2


def test_verify_small_sweep():
    r = client.post("/verify", json={
        "suite": "all", "max_shift": 0, "trials": 1, "order": 16,
    })
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] is True
    assert body["report"]["totals"]["fail"] == 0
    assert body["wall_time"] > 0


def test_verify_single_case():
    r = client.post("/verify", json={
        "case": {
            "id": "3trr_0phi1", "shifts": [2, 2], "mode": "exact",
            "params": {"c": "1/5", "q": "1/2"},
        },
        "order": 16,
    })
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] is True
    assert body["report"]["cases"][0]["status"] == "pass"


def test_verify_unknown_suite_422():
    r = client.post("/verify", json={"suite": "wat"})
    assert r.status_code == 422


def test_bench_endpoint():
    r = client.post("/bench", json={"k": 1, "m": 1, "n": 0, "repeat": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] is True
    assert body["result"]["agree"] is True
