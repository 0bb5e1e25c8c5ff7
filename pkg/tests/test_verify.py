import json
import random

from gmpy2 import mpfr, mpq

from qphi import (
    FLOAT_ONLY,
    IDENTITY_IDS,
    IdentityCase,
    SweepConfig,
    rat,
    run_bench,
    run_case,
    run_sweep,
)
from qphi.verify import draw_rational, is_q_power, render_table


def test_identity_catalog():
    assert len(IDENTITY_IDS) == 16
    assert FLOAT_ONLY < set(IDENTITY_IDS)
    for ident in ("3trr_1phi1", "3trr_0phi1", "3trr_J3", "lommel2", "chu_vandermonde"):
        assert ident in IDENTITY_IDS


def test_small_sweep_all_pass():
    report = run_sweep(SweepConfig(max_shift=0, trials=1, order=16))
    totals = report.totals
    assert report.ok
    assert totals["fail"] == 0
    assert totals["pass"] > 0


def test_sweep_deterministic():
    cfg = SweepConfig(identities=("3trr_1phi1", "chu_vandermonde", "phi_transform"),
                      max_shift=1, trials=2, order=16)
    a = run_sweep(cfg).to_json()
    b = run_sweep(cfg).to_json()
    assert a == b


def test_seed_changes_draws():
    cfg0 = SweepConfig(identities=("3trr_1phi1",), max_shift=0, trials=1, seed=0)
    cfg1 = SweepConfig(identities=("3trr_1phi1",), max_shift=0, trials=1, seed=1)
    p0 = run_sweep(cfg0).cases[0].case.params
    p1 = run_sweep(cfg1).cases[0].case.params
    assert p0 != p1


def test_spec_example_cases_pass():
    case = IdentityCase(
        "3trr_1phi1", (1, 1, 0),
        {"a": rat(1, 3), "c": rat(1, 5), "q": rat(1, 2)}, "exact",
    )
    assert run_case(case, order=16).status == "pass"
    case = IdentityCase("3trr_0phi1", (2, 2), {"c": rat(1, 5), "q": rat(1, 2)}, "exact")
    assert run_case(case, order=16).status == "pass"


def test_identity_shift_trivial():
    case = IdentityCase(
        "3trr_1phi1", (1, 1, 1),
        {"a": rat(1, 3), "c": rat(1, 5), "q": rat(1, 2)}, "exact",
    )
    assert run_case(case, order=16).status == "pass"


def test_skipped_pole():
    q = rat(1, 2)
    case = IdentityCase(
        "3trr_1phi1", (2, 2, 2), {"a": rat(1, 3), "c": mpq(1), "q": q}, "exact"
    )
    res = run_case(case, order=16)
    assert res.status == "skipped-pole"
    assert res.residual  # names the vanishing factor


def test_forced_float_failure_has_repro():
    case = IdentityCase(
        "3trr_1phi1", (3, -2, 1),
        {"a": rat(1, 3), "c": rat(1, 5), "q": rat(1, 2), "x": rat(1, 4)}, "float",
    )
    res = run_case(case, order=16, condition=1e-38)
    assert res.status == "fail"
    assert "qphi verify --case" in res.repro
    # the repro command carries the case as JSON; round-trip it
    payload = res.repro.split("--case ")[1].split("'")[1]
    again = IdentityCase.from_dict(json.loads(payload))
    assert run_case(again, order=16, condition=1e-38).status == "fail"
    assert run_case(again, order=16).status == "pass"


def test_float_residuals_tiny():
    report = run_sweep(
        SweepConfig(identities=("3trr_1phi1", "3trr_J2"), max_shift=2,
                    trials=1, modes=("float",))
    )
    assert report.ok
    for res in report.cases:
        if res.status == "pass":
            assert mpfr(res.residual) < mpfr(2) ** -100


def test_float_only_identities_always_float():
    report = run_sweep(
        SweepConfig(identities=("phi_transform", "special_1phi1"), max_shift=1,
                    trials=1, modes=("exact",))
    )
    assert report.ok
    assert {r.case.mode for r in report.cases} == {"float"}


def test_report_schema():
    report = run_sweep(SweepConfig(identities=("relation_ST",), max_shift=1, trials=1))
    d = report.to_dict()
    assert set(d) == {"config", "cases", "totals"}
    assert set(d["totals"]) == {"pass", "fail", "skipped-pole"}
    case = d["cases"][0]
    assert set(case) == {"id", "shifts", "params", "mode", "status", "residual", "repro"}
    assert all(isinstance(v, str) for v in case["params"].values())
    # cases are sorted by key, so the JSON is canonical
    keys = [(c["id"], c["shifts"], sorted(c["params"].items()), c["mode"])
            for c in d["cases"]]
    assert keys == sorted(keys)


def test_render_table():
    report = run_sweep(SweepConfig(identities=("relation_UV",), max_shift=1, trials=1))
    text = render_table(report.to_dict(), wall_time=1.25)
    assert "relation_UV" in text
    assert "total" in text
    assert "(1.2" in text  # wall time only in the table


def test_case_round_trip():
    case = IdentityCase(
        "lommel3", (4,), {"t": rat(2, 7), "q": rat(1, 3)}, "exact"
    )
    d = case.to_dict()
    assert IdentityCase.from_dict(d) == case


def test_is_q_power():
    q = rat(1, 3)
    assert is_q_power(q**5, q)
    assert is_q_power(q**-3, q)
    assert is_q_power(mpq(1), q)
    assert not is_q_power(rat(2, 7), q)
    assert not is_q_power(q**2 + rat(1, 1000), q)


def test_draw_rational_range():
    rng = random.Random(0)
    for _ in range(100):
        v = draw_rational(rng)
        assert 0 < v < 1


def test_bench_agreement():
    out = run_bench(2, 1, -1, seed=3)
    assert out["agree"] is True
    assert mpfr(out["relative_difference"]) <= mpfr(out["tolerance"])
    assert set(out["direct"]) == {"value", "seconds"}
    assert set(out["direct"]["seconds"]) == {"min", "median", "max"}
    # the two strategies produce the same value up to the gate tolerance
    direct = mpfr(out["direct"]["value"], 128)
    recur = mpfr(out["recurrence"]["value"], 128)
    assert abs(direct - recur) <= mpfr(out["tolerance"]) * abs(direct)


def test_bench_explicit_params():
    params = {"a": rat(1, 3), "c": rat(1, 5), "x": rat(1, 4), "q": rat(1, 2)}
    out = run_bench(1, 1, 0, params=params, repeat=1)
    assert out["agree"] is True
    assert out["params"] == {k: str(v) for k, v in params.items()}
