import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from thetaquad.catalog import builtin_catalog, get_rule, parse_rule
from thetaquad.counting import count_enum, count_series, square, triangular
from thetaquad.verify import engine
from thetaquad.verify.closed_forms import (
    CLOSED_FORMS,
    closed_t_1_1_6_8,
    closed_t_1_1_6_24,
    closed_t_2_3_3_8,
)
from thetaquad.verify.identities import (
    THETA_IDENTITIES,
    flip_sign,
    lemma5_1_check,
    square_correction,
    theta_identity_suite,
    thm2_7_check,
    thm2_7_values,
)
from thetaquad.verify.report import Counterexample, Method, Status, VerifyReport, to_csv, to_json
from thetaquad.verify.scan import EngineDisagreement, append_jsonl, conjecture_rules, scan_conjecture, scan_rule
from thetaquad.verify.suites import partitions, small_compositions

PERTURBED = "rule p: forall a b | odd(a), odd(b) :: t(a,2a,2a,2b; n) == 1/2 N(a,a,4a,2b; 8n+5a+2b+1)"


# --- reports ---------------------------------------------------------------------


def test_report_invariants():
    with pytest.raises(ValueError):
        VerifyReport("x", {}, 0, 1, Method.SERIES, Status.FAIL, [])
    with pytest.raises(ValueError):
        VerifyReport("x", {}, 0, 1, Method.SERIES, Status.PASS, [Counterexample(0, Fraction(1), Fraction(2))])
    with pytest.raises(ValueError):
        VerifyReport("x", {}, 0, 1, Method.SERIES, Status.SKIPPED, [])


def test_counterexample_serialises_fractions():
    d = Counterexample(3, Fraction(5, 2), Fraction(2)).as_dict()
    assert d == {"n": 3, "lhs": "5/2", "rhs": 2}


def test_json_is_deterministic_without_timings():
    rep = engine.verify_rule(get_rule("thm2.1"), {"a": 1, "b": 1}, (0, 50))
    again = engine.verify_rule(get_rule("thm2.1"), {"a": 1, "b": 1}, (0, 50))
    assert to_json([rep]) == to_json([again])
    assert json.loads(to_json([rep]))[0]["elapsed_ms"] is None
    assert json.loads(to_json([rep], timings=True))[0]["elapsed_ms"] is not None
    assert to_csv([rep]).splitlines()[0].startswith("rule_id,")


# --- engine ------------------------------------------------------------------------


def test_small_instance_both_methods():
    rule = get_rule("thm2.1")
    for method in Method:
        rep = engine.verify_rule(rule, {"a": 1, "b": 1}, (0, 100), method)
        assert rep.status is Status.PASS and rep.checked == 101


def test_halving_rule_by_enumeration():
    rep = engine.verify_rule(get_rule("eq3.29"), {"a": 1, "b": 1, "c": 1}, (0, 100), Method.ENUM)
    assert rep.status is Status.PASS


def test_perturbed_rule_fails_early():
    rep = engine.verify_rule(parse_rule(PERTURBED), {"a": 1, "b": 1}, (0, 100))
    assert rep.status is Status.FAIL
    first = rep.counterexamples[0]
    assert first.n <= 10
    assert first.lhs == count_enum(triangular(1, 2, 2, 2), first.n)
    assert first.rhs == Fraction(count_enum(square(1, 1, 4, 2), 8 * first.n + 8), 2)


def test_skipped_when_nothing_admissible():
    rule = parse_rule("rule s: forall | n ≡ 3 (mod 7), n <= 2 :: t(1; n) == t(1; n)")
    rep = engine.verify_rule(rule, {}, (0, 50))
    assert rep.status is Status.SKIPPED and rep.reason


def test_negative_arguments_count_zero():
    rule = parse_rule("rule z: t(1,1,6,24; 2n-2) == t(1,1,6,24; 2n-2)")
    rep = engine.verify_rule(rule, {}, (0, 5))
    assert rep.status is Status.PASS
    rule = parse_rule("rule z2: t(1,1; n-3) == 0 t(1; n)")
    rep = engine.verify_rule(rule, {}, (0, 5))
    assert [c.n for c in rep.counterexamples] == [3, 4, 5]


def test_chained_sides():
    rule = parse_rule("rule c: t(1; n) == t(1; n) == t(2; n)")
    rep = engine.verify_rule(rule, {}, (0, 10))
    assert rep.status is Status.FAIL


def test_large_rational_coefficients_stay_exact():
    rule = parse_rule("rule big: 3/7 N(1,1,1,1; n) == 3/7 N(1,1,1,1; n)")
    assert engine.verify_rule(rule, {}, (0, 500)).status is Status.PASS


@pytest.mark.parametrize("rule", builtin_catalog(), ids=lambda r: r.id)
def test_series_and_enum_reports_agree(rule):
    inst = engine.instances(rule, 3)
    if not inst:
        pytest.skip("no admissible parameters below 4")
    a = dict(inst[0])
    s = engine.verify_rule(rule, a, (0, 150), Method.SERIES)
    e = engine.verify_rule(rule, a, (0, 150), Method.ENUM)
    assert (s.status, s.counterexamples, s.checked) == (e.status, e.counterexamples, e.checked)


def test_quadrupling_rule_long_range():
    rep = engine.verify_rule(get_rule("cor5.1.a"), {}, (0, 1000))
    assert rep.status is Status.PASS
    tab = count_series(square(1, 1, 1, 6), 4000)
    assert all(tab[4 * n] == 5 * tab[n] for n in range(1001) if n % 8 in (5, 7))


def test_run_jobs_order_independent_of_workers():
    jobs = engine.catalog_jobs([get_rule("thm2.1"), get_rule("thm2.2")], 3, 0, 60)
    assert to_json(engine.run_jobs(jobs, 1)) == to_json(engine.run_jobs(jobs, 2))


def test_enum_sample_is_seeded():
    jobs = engine.catalog_jobs(builtin_catalog()[:30], 3, 0, 10)
    a = engine.enum_sample(jobs, 0.1, seed=3)
    assert a == engine.enum_sample(jobs, 0.1, seed=3)
    assert all(j.method is Method.ENUM for j in a)
    assert len(a) == -(-len(jobs) // 10)


def test_default_workers_env(monkeypatch):
    monkeypatch.setenv("THETAQUAD_THREADS", "3")
    assert engine.default_workers() == 3
    monkeypatch.setenv("THETAQUAD_THREADS", "0")
    with pytest.raises(ValueError):
        engine.default_workers()


# --- closed forms --------------------------------------------------------------------


def test_closed_form_spot_values():
    assert closed_t_1_1_6_24(3).value == 32
    assert closed_t_1_1_6_24(4).value == 32
    assert closed_t_1_1_6_24(2).value == 16
    assert closed_t_2_3_3_8(5).value == 32
    assert closed_t_2_3_3_8(4).value == 0
    assert closed_t_2_3_3_8(6).value == 32
    assert closed_t_1_1_6_8(2).value == 16
    assert closed_t_1_1_6_8(1).value == 32


def test_closed_form_paths():
    assert closed_t_1_1_6_24(1).path == "enum"
    assert closed_t_2_3_3_8(1).path == "enum"
    assert closed_t_2_3_3_8(2).path == "enum"
    assert closed_t_2_3_3_8(3).path == "enum"
    assert closed_t_2_3_3_8(5).path == "odd"
    assert {closed_t_1_1_6_8(n).path for n in range(1, 20)} == {"even", "odd"}
    with pytest.raises(ValueError):
        closed_t_1_1_6_24(0)


@pytest.mark.parametrize("coeffs", sorted(CLOSED_FORMS))
def test_closed_forms_match_series(coeffs):
    tab = count_series(triangular(*coeffs), 2000)
    fn = CLOSED_FORMS[coeffs]
    assert [fn(n).value for n in range(1, 2001)] == tab[1:].tolist()


@settings(max_examples=40)
@given(st.integers(1, 400))
def test_closed_forms_match_enum(n):
    for coeffs, fn in CLOSED_FORMS.items():
        assert fn(n).value == count_enum(triangular(*coeffs), n)


# --- identity checks -------------------------------------------------------------------


@pytest.mark.parametrize("trunc", [500, 2000])
def test_theta_suite_passes(trunc):
    rep = theta_identity_suite(trunc)
    assert rep.status is Status.PASS
    assert len(rep.detail["identities"]) == 13


def test_theta_suite_names_flipped_identity():
    idents = list(THETA_IDENTITIES)
    idents[3] = flip_sign(idents[3], side=1, term=0)
    rep = theta_identity_suite(300, tuple(idents))
    assert rep.status is Status.FAIL
    assert rep.detail["failed"] == [THETA_IDENTITIES[3].id + ".flipped"]


@pytest.mark.parametrize("ab", [(1, 3), (3, 1), (1, 7), (3, 5), (5, 3), (7, 1)])
def test_dissection_formulas(ab):
    assert lemma5_1_check(*ab, 300)


def test_dissection_formula_gate():
    with pytest.raises(ValueError):
        lemma5_1_check(1, 1, 10)


def test_square_corrected_identity_values():
    v0 = thm2_7_values(0)
    assert (v0.t, v0.r3, v0.N, v0.correction) == (8, 30, 10, 3)
    assert thm2_7_values(1).correction == 0
    v5 = thm2_7_values(5)
    assert v5.correction == 7 and v5.holds
    assert square_correction(2) == -5  # 25 = 5^2, (-1)^3 * 5


def test_square_corrected_identity_range():
    assert all(thm2_7_check(n) for n in range(301))


# --- scanning ----------------------------------------------------------------------------


def test_scan_examples():
    (rep,) = scan_conjecture("conj5.1.a", 500)
    assert rep.status is Status.PASS and rep.detail["frontier"] == 500
    reps = scan_conjecture("conj5.20", 500)
    assert reps and all(r.status is Status.PASS for r in reps)


def test_scan_rejects_unknown_and_theorems():
    with pytest.raises(KeyError):
        conjecture_rules("conj9.9")
    with pytest.raises(ValueError):
        conjecture_rules("thm2.1")


def test_scan_corrupted_conjecture_is_confirmed_by_enumeration():
    rule = parse_rule("conjecture bad: forall | n ≡ 0,1,5 (mod 7), n >= 1 :: t(1,2,2,7; n) == 2 N(1,2,2,7; 2n+5)")
    rep = scan_rule(rule, 60)
    assert rep.status is Status.FAIL
    assert rep.detail["counterexamples_confirmed_by"] == "enum"
    assert rep.detail["frontier"] == rep.counterexamples[0].n - 1


def test_scan_raises_on_engine_disagreement(monkeypatch):
    from thetaquad.verify import scan

    rule = parse_rule("conjecture bad: t(1,2; n) == 2 t(1,2; n)")
    real = scan.check_concrete

    def fake(concrete, lo, hi, method, *args, **kwargs):
        rep = real(concrete, lo, hi, method, *args, **kwargs)
        if method is Method.ENUM:
            return VerifyReport(rep.rule_id, rep.params, lo, hi, method, Status.PASS, [])
        return rep

    monkeypatch.setattr(scan, "check_concrete", fake)
    with pytest.raises(EngineDisagreement):
        scan_rule(rule, 5)


def test_append_jsonl_only_appends(tmp_path):
    log = tmp_path / "scan.jsonl"
    reps = scan_conjecture("conj5.19", 100)
    append_jsonl(log, reps)
    append_jsonl(log, reps)
    lines = log.read_text().splitlines()
    assert len(lines) == 2 * len(reps)
    assert lines[0] == lines[len(reps)]


def test_small_grids():
    assert len(partitions(8)) == 22
    assert sum(len(partitions(k)) for k in range(1, 8)) == 44
    assert len(small_compositions()) == 8 + 36 + 120 + 330
