"""Interval layer: hull, the four total operations, predicates, syntax."""

import random
from fractions import Fraction as F

import pytest

from intervalfp import Fp, OpKind, parse_interval
from intervalfp.interval import (
    ExtInterval,
    NEG_INF,
    POS_INF,
    add,
    apply_op,
    div,
    hull,
    member,
    mul,
    negate,
    sub,
    subset,
)


def iv(text, fmt):
    return parse_interval(text, fmt)


def rand_interval(rng, fmt, values=None):
    """Random interval over the format's values, occasionally empty."""
    if values is None:
        values = fmt.enumerate()
    if rng.random() < 0.05:
        return ExtInterval.empty(fmt)
    while True:
        a, b = rng.choice(values), rng.choice(values)
        for lo, hi in ((a, b), (b, a)):
            try:
                return ExtInterval.make(lo, hi)
            except ValueError:
                continue


# -- construction and hull -------------------------------------------------------


def test_hull_examples(toy):
    assert str(hull(F(1, 3), F(1, 3), toy)) == "[0.3125, 0.375]"
    assert str(hull(NEG_INF, F(5), toy)) == "(-inf, 5]"
    assert str(hull(F(15), F(20), toy)) == "[14, +inf)"


def test_hull_is_least_containing_interval(toy):
    x = hull(F(1, 3), F(2, 3), toy)
    assert member(F(1, 3), x) and member(F(2, 3), x)
    # shrinking either bound would lose containment
    assert not member(F(1, 3), ExtInterval.make(x.lo.next_up(), x.hi))
    assert not member(F(2, 3), ExtInterval.make(x.lo, x.hi.next_down()))


def test_bound_normalisation(toy):
    x = ExtInterval.make(Fp.zero(toy, negative=True), Fp.from_exact(toy, 1))
    assert x.lo == Fp.zero(toy)
    assert x == ExtInterval.make(Fp.zero(toy), Fp.from_exact(toy, 1))


def test_make_rejects_malformed(toy):
    with pytest.raises(ValueError):
        ExtInterval.make(Fp.from_exact(toy, 2), Fp.from_exact(toy, 1))
    with pytest.raises(ValueError):
        ExtInterval.make(Fp.inf(toy), Fp.inf(toy))
    with pytest.raises(ValueError):
        ExtInterval.make(Fp.nan(toy), Fp.from_exact(toy, 1))


# -- the paper-derived operation examples -------------------------------------------


def test_add_examples(toy):
    assert str(iv("[0, 0.0625]", toy) + iv("[0, 0.0625]", toy)) == "[0, 0.125]"
    assert str(iv("[14, inf)", toy) + iv("[14, inf)", toy)) == "[14, +inf)"
    assert str(iv("[-2, -2]", toy) + iv("[14, inf)", toy)) == "[12, +inf)"


def test_sub_examples(toy):
    assert str(iv("[14, inf)", toy) - iv("[14, inf)", toy)) == "(-inf, +inf)"
    assert str(iv("[3, 3]", toy) - iv("[1, 1]", toy)) == "[2, 2]"
    assert (
        str(iv("[0, 0.0625]", toy) - iv("[0, 0.0625]", toy)) == "[-0.0625, 0.0625]"
    )


def test_mul_examples(toy):
    assert str(iv("[0, 0.0625]", toy) * iv("[14, inf)", toy)) == "[0, +inf)"
    assert str(iv("[14, inf)", toy) * iv("[14, inf)", toy)) == "[14, +inf)"
    assert str(iv("[0.5, 0.5]", toy) * iv("[14, inf)", toy)) == "[7, +inf)"


def test_div_examples(toy):
    assert str(iv("[1, 1]", toy) / iv("[-1, 1]", toy)) == "(-inf, +inf)"
    assert str(iv("[14, inf)", toy) / iv("[0, 0.0625]", toy)) == "[14, +inf)"
    assert str(iv("[0.5, 0.5]", toy) / iv("[0, 0.0625]", toy)) == "[8, +inf)"
    assert str(iv("[14, inf)", toy) / iv("[14, inf)", toy)) == "[0, +inf)"


def test_div_zero_cases(toy):
    zero = iv("[0, 0]", toy)
    assert (iv("[2, 2]", toy) / zero).is_empty
    assert str(zero / zero) == "(-inf, +inf)"
    assert str(iv("[-1, 2]", toy) / iv("[-1, 1]", toy)) == "(-inf, +inf)"
    # one-sided zero divisor: half line
    assert str(iv("[1, 1]", toy) / iv("[0, 2]", toy)) == "[0.5, +inf)"
    assert str(iv("[1, 1]", toy) / iv("[-2, 0]", toy)) == "(-inf, -0.5]"
    assert str(iv("[-1, -1]", toy) / iv("[0, 2]", toy)) == "(-inf, -0.5]"


def test_empty_propagation(toy):
    e = ExtInterval.empty(toy)
    x = iv("[1, 2]", toy)
    for op in OpKind:
        assert apply_op(op, e, x).is_empty
        assert apply_op(op, x, e).is_empty
        assert apply_op(op, e, e).is_empty


# -- predicates -------------------------------------------------------------------------


def test_member_examples(toy):
    assert member(F(0), iv("[0, 0.0625]", toy))
    assert not member(F(-1), iv("[0, inf)", toy))
    assert member(F(10) ** 100, iv("[14, inf)", toy))
    assert not member(F(1), ExtInterval.empty(toy))


def test_subset_examples(toy):
    assert subset(iv("[1, 2]", toy), iv("[0, 3]", toy))
    assert subset(ExtInterval.empty(toy), ExtInterval.empty(toy))
    assert subset(iv("[14, inf)", toy), iv("[0, inf)", toy))
    assert not subset(iv("[0, 3]", toy), iv("[1, 2]", toy))
    assert subset(ExtInterval.empty(toy), iv("[1, 1]", toy))
    assert not subset(iv("[1, 1]", toy), ExtInterval.empty(toy))


# -- algebraic properties (seeded random) ----------------------------------------------


def test_commutativity(toy):
    rng = random.Random(20)
    values = toy.enumerate()
    for _ in range(400):
        x, y = rand_interval(rng, toy, values), rand_interval(rng, toy, values)
        assert add(x, y) == add(y, x)
        assert mul(x, y) == mul(y, x)


def test_negation_symmetry(toy):
    rng = random.Random(21)
    values = toy.enumerate()
    for _ in range(400):
        x, y = rand_interval(rng, toy, values), rand_interval(rng, toy, values)
        assert negate(add(x, y)) == add(negate(x), negate(y))
        assert mul(negate(x), negate(y)) == mul(x, y)
        assert div(negate(x), y) == negate(div(x, y))


def test_point_interval_consistency(toy):
    finite = [v for v in toy.enumerate() if v.is_finite and not v.is_zero]
    for a in finite:
        for b in finite:
            pa, pb = ExtInterval.point(a), ExtInterval.point(b)
            qa, qb = a.to_rational(), b.to_rational()
            for op, real in (
                (OpKind.ADD, qa + qb),
                (OpKind.SUB, qa - qb),
                (OpKind.MUL, qa * qb),
                (OpKind.DIV, qa / qb),
            ):
                try:
                    expected = Fp.from_exact(toy, real)
                except ValueError:
                    continue  # not exactly representable
                got = apply_op(op, pa, pb)
                assert got == ExtInterval.point(expected), (a, b, op)


def _sample_points(x, rng):
    """Membership probes: endpoints, a midpoint, near-zero, near the format
    extremes, plus a couple of random rationals clipped into the set."""
    if x.is_empty:
        return []
    lo, hi = x.lo_ext, x.hi_ext
    candidates = []
    if isinstance(lo, F):
        candidates += [lo, lo + 1]
    if isinstance(hi, F):
        candidates += [hi, hi - 1]
    if isinstance(lo, F) and isinstance(hi, F):
        candidates.append((lo + hi) / 2)
    candidates += [F(0), F(1, 16), F(-1, 16), F(14), F(-14), F(100), F(-100),
                   F(rng.randint(-50, 50), rng.randint(1, 7))]
    return [q for q in candidates if member(q, x)]


def test_soundness_by_sampling(toy):
    rng = random.Random(22)
    values = toy.enumerate()
    for _ in range(400):
        x, y = rand_interval(rng, toy, values), rand_interval(rng, toy, values)
        xs, ys = _sample_points(x, rng), _sample_points(y, rng)
        for op in OpKind:
            result = apply_op(op, x, y)
            for qx in xs:
                for qy in ys:
                    if op is OpKind.DIV and qy == 0:
                        continue
                    real = {
                        OpKind.ADD: qx + qy,
                        OpKind.SUB: qx - qy,
                        OpKind.MUL: qx * qy,
                        OpKind.DIV: qx / qy if qy else None,
                    }[op]
                    assert member(real, result), (x, y, op, qx, qy)


def test_inclusion_monotonicity(toy):
    rng = random.Random(23)
    values = toy.enumerate()
    for _ in range(400):
        outer_x = rand_interval(rng, toy, values)
        outer_y = rand_interval(rng, toy, values)
        inner_x = _shrink(outer_x, rng)
        inner_y = _shrink(outer_y, rng)
        for op in OpKind:
            small = apply_op(op, inner_x, inner_y)
            big = apply_op(op, outer_x, outer_y)
            assert subset(small, big), (inner_x, inner_y, outer_x, outer_y, op)


def _shrink(x, rng):
    """A random subinterval (possibly empty)."""
    if x.is_empty or rng.random() < 0.1:
        return ExtInterval.empty(x.fmt)
    lo, hi = x.lo, x.hi
    for _ in range(rng.randint(0, 2)):
        nxt = lo.next_up()
        try:
            if ExtInterval.make(nxt, hi) and subset(ExtInterval.make(nxt, hi), x):
                lo = nxt
        except ValueError:
            break
    for _ in range(rng.randint(0, 2)):
        nxt = hi.next_down()
        try:
            candidate = ExtInterval.make(lo, nxt)
        except ValueError:
            break
        hi = nxt
    return ExtInterval.make(lo, hi)


# -- text syntax --------------------------------------------------------------------------


def test_parse_print_round_trip(toy):
    rng = random.Random(24)
    values = toy.enumerate()
    for _ in range(300):
        x = rand_interval(rng, toy, values)
        assert parse_interval(str(x), toy) == x


def test_parse_variants(toy):
    assert parse_interval("empty", toy).is_empty
    assert parse_interval("(-inf, inf)", toy) == ExtInterval.full_line(toy)
    assert parse_interval("[0x1.8p+1, inf)", toy) == parse_interval("[3, +inf)", toy)
    assert parse_interval("[-0, 0]", toy) == ExtInterval.point(Fp.zero(toy))
    with pytest.raises(ValueError):
        parse_interval("[2, 1]", toy)
    with pytest.raises(ValueError):
        parse_interval("[1; 2]", toy)
