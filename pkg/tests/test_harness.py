"""Differential harness: IEEE reference rules, conformance suite, report."""

from fractions import Fraction as F

import pytest

from intervalfp import (
    BINARY64,
    Classification,
    Fp,
    OpKind,
    RoundingDirection,
    ZeroMode,
    backend_agreement,
    classify_vs_ieee,
    deviation_report,
    ieee_reference,
    ieee_reference_native,
    native_rounding_available,
    run_theorem_suite,
    totality_fuzz,
)
from intervalfp.harness import binary64_pairs

RD = RoundingDirection
UP, DOWN = RD.TO_POS_INF, RD.TO_NEG_INF


# -- the IEEE reference ----------------------------------------------------------


def test_invalid_operations_give_nan(toy):
    z, inf = Fp.zero(toy), Fp.inf(toy)
    for d in (UP, DOWN, RD.NEAREST, RD.TO_ZERO):
        assert ieee_reference(z, inf, OpKind.MUL, d).is_nan
        assert ieee_reference(inf, z, OpKind.MUL, d).is_nan
        assert ieee_reference(inf, inf, OpKind.SUB, d).is_nan
        assert ieee_reference(inf, inf, OpKind.DIV, d).is_nan
        assert ieee_reference(z, z, OpKind.DIV, d).is_nan
        assert ieee_reference(inf, -inf, OpKind.ADD, d).is_nan


def test_division_by_zero_signs(toy):
    one, z, nz = Fp.from_exact(toy, 1), Fp.zero(toy), Fp.zero(toy, negative=True)
    assert ieee_reference(one, z, OpKind.DIV, UP) == Fp.inf(toy)
    assert ieee_reference(one, nz, OpKind.DIV, UP) == Fp.inf(toy, negative=True)
    assert ieee_reference(-one, z, OpKind.DIV, UP) == Fp.inf(toy, negative=True)
    assert ieee_reference(Fp.inf(toy), z, OpKind.DIV, UP) == Fp.inf(toy)


def test_exact_zero_sum_signs(toy):
    z, nz = Fp.zero(toy), Fp.zero(toy, negative=True)
    one = Fp.from_exact(toy, 1)
    # like signs keep the sign in every direction
    assert ieee_reference(z, z, OpKind.ADD, DOWN) == z
    assert ieee_reference(nz, nz, OpKind.ADD, UP) == nz
    # opposite signs and cancellation: +0 except rounding down
    assert ieee_reference(z, nz, OpKind.ADD, UP) == z
    assert ieee_reference(z, nz, OpKind.ADD, DOWN) == nz
    assert ieee_reference(one, -one, OpKind.ADD, RD.NEAREST) == z
    assert ieee_reference(one, one, OpKind.SUB, DOWN) == nz


def test_directed_rounding_of_quotient(toy):
    one, three = Fp.from_exact(toy, 1), Fp.from_exact(toy, 3)
    assert ieee_reference(one, three, OpKind.DIV, UP).to_rational() == F(3, 8)
    assert ieee_reference(one, three, OpKind.DIV, DOWN).to_rational() == F(5, 16)


def test_overflow_stays_finite_when_directed_inward(toy):
    M = toy.max_finite()
    two = Fp.from_exact(toy, 2)
    assert ieee_reference(M, two, OpKind.MUL, DOWN) == M
    assert ieee_reference(M, two, OpKind.MUL, UP) == Fp.inf(toy)
    assert ieee_reference(-M, two, OpKind.MUL, UP) == -M


def test_nan_propagates(toy):
    nan = Fp.nan(toy)
    for op in OpKind:
        assert ieee_reference(nan, Fp.from_exact(toy, 1), op, UP).is_nan
        assert ieee_reference(Fp.inf(toy), nan, op, DOWN).is_nan


# -- conformance suites ------------------------------------------------------------


def test_theorem_suite_exhaustive_toy(toy):
    result = run_theorem_suite(toy, ops=(OpKind.ADD, OpKind.SUB, OpKind.MUL))
    assert result.ok and result.checked == 3 * 56 * 56 * 2
    result = run_theorem_suite(toy, ops=(OpKind.DIV,))
    assert result.ok and result.checked == 56 * 54 * 2  # zero divisors excluded


def test_theorem_suite_random_binary64():
    result = run_theorem_suite(BINARY64, samples=2000, seed=5)
    assert result.ok
    assert result.checked > 0


def test_sampling_is_deterministic():
    a = list(binary64_pairs(500, 99))
    b = list(binary64_pairs(500, 99))
    assert a == b
    c = list(binary64_pairs(500, 100))
    assert a != c


# -- deviation report / classification thresholds -----------------------------------


def test_report_covers_catalog(toy):
    rows = deviation_report(toy)
    assert len(rows) == 23
    by_name = {r.name: r for r in rows}
    assert by_name["inf-sub-inf"].ieee == "nan"
    assert by_name["inf-sub-inf"].interval == "(-inf, +inf)"
    assert by_name["inf-sub-inf"].classification is Classification.NEWLY_DEFINED
    assert by_name["a-mul-inf-lt1"].classification is Classification.DEVIATES
    assert by_name["a-mul-inf-ge1"].classification is Classification.CONFORMS


def _finite_positives(fmt):
    return [v for v in fmt.enumerate() if v.is_finite and not v.is_zero and not v.negative]


def test_mul_inf_conforms_iff_at_least_one(toy, toy4):
    for fmt in (toy, toy4):
        inf = Fp.inf(fmt)
        for a in _finite_positives(fmt):
            cls = classify_vs_ieee(a, inf, OpKind.MUL, ZeroMode.FINITE)
            want = (
                Classification.CONFORMS
                if a.to_rational() >= 1
                else Classification.DEVIATES
            )
            assert cls is want, a


def test_add_inf_conforms_iff_nonnegative(toy):
    inf = Fp.inf(toy)
    for a in toy.enumerate():
        if not a.is_finite or a.is_zero:
            continue
        cls = classify_vs_ieee(a, inf, OpKind.ADD, ZeroMode.FINITE)
        want = (
            Classification.CONFORMS
            if a.to_rational() > 0
            else Classification.DEVIATES
        )
        assert cls is want, a


def test_div_by_inf_threshold(toy):
    # a / +inf means [0, ru(a/M)], which is the meaning of +0 exactly when
    # a <= m*M; beyond that the result is wider than +0 and deviates
    inf = Fp.inf(toy)
    boundary = toy.min_pos().to_rational() * toy.max_finite().to_rational()
    for a in _finite_positives(toy):
        cls = classify_vs_ieee(a, inf, OpKind.DIV, ZeroMode.FINITE)
        want = (
            Classification.CONFORMS
            if a.to_rational() <= boundary
            else Classification.DEVIATES
        )
        assert cls is want, a


def test_inf_div_a_conforms_iff_at_most_one(toy):
    inf = Fp.inf(toy)
    for a in _finite_positives(toy):
        cls = classify_vs_ieee(inf, a, OpKind.DIV, ZeroMode.FINITE)
        want = (
            Classification.CONFORMS
            if a.to_rational() <= 1
            else Classification.DEVIATES
        )
        assert cls is want, a


def test_div_by_zero_threshold(toy):
    z = Fp.zero(toy)
    boundary = toy.min_pos().to_rational() * toy.max_finite().to_rational()
    for a in _finite_positives(toy):
        cls = classify_vs_ieee(a, z, OpKind.DIV, ZeroMode.FINITE)
        want = (
            Classification.CONFORMS
            if a.to_rational() >= boundary
            else Classification.DEVIATES
        )
        assert cls is want, a


def test_formerly_nan_patterns_all_newly_defined(toy):
    inf, ninf, z = Fp.inf(toy), Fp.inf(toy, negative=True), Fp.zero(toy)
    cases = [
        (z, inf, OpKind.MUL),
        (inf, inf, OpKind.DIV),
        (inf, ninf, OpKind.DIV),
        (ninf, ninf, OpKind.DIV),
        (z, z, OpKind.DIV),
        (inf, inf, OpKind.SUB),
    ]
    for a, b, op in cases:
        assert classify_vs_ieee(a, b, op, ZeroMode.FINITE) is Classification.NEWLY_DEFINED


# -- native backend and fuzzing -------------------------------------------------------


def test_backend_agreement_sample():
    result = backend_agreement(pairs_per_combo=500, seed=7)
    if result.skipped:
        pytest.skip(result.skipped)
    assert result.ok
    assert result.checked == 500 * 8


@pytest.mark.skipif(not native_rounding_available(), reason="no rounding-mode access")
def test_native_backend_directed_results():
    one = Fp.from_float(BINARY64, 1.0)
    three = Fp.from_float(BINARY64, 3.0)
    up = ieee_reference_native(one, three, OpKind.DIV, UP)
    down = ieee_reference_native(one, three, OpKind.DIV, DOWN)
    assert up == BINARY64.round(F(1, 3), UP)
    assert down == BINARY64.round(F(1, 3), DOWN)
    assert up != down


def test_totality_fuzz_sample():
    result = totality_fuzz(pairs_per_op=800, seed=3)
    assert result.ok
    assert result.checked == 4 * 800
