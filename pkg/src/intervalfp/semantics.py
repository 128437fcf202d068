"""Set-valued meaning of floats and the total operations it induces.

Every float denotes a set of reals: a finite nonzero value is the point
set containing it, +inf is everything from the greatest finite value up,
-inf the mirror, and the zeros depend on the selected zero mode.  Under
this reading all four arithmetic operations are total: combinations that
IEEE 754 maps to NaN come out as honest (wide) intervals, and a directed
IEEE result is one bound of the operation's interval.

The identity catalog records the special-operand formulas this semantics
produces, parametric in the format constants m (least positive value) and
M (greatest finite value), so they can be instantiated and checked on any
format.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .fpformat import (
    DomainError,
    EnumerationLimitError,
    FloatFormat,
    Fp,
    FpKind,
    RoundingDirection,
    value_cmp,
)
from .interval import ExtInterval, OpKind, apply_op

FpOpKind = OpKind  # one enumeration serves both the interval and the float layer


class ZeroMode(Enum):
    """How the signed zeros are read as sets.

    FINITE: +0 means [0, m] and -0 means [-m, 0]; zeros are one ulp wide
    and NaN has no meaning.  INFINITE: both zeros mean the exact point
    [0, 0] and NaN means the empty set.
    """

    FINITE = "finite"
    INFINITE = "infinite"


class Classification(Enum):
    CONFORMS = "conforms"
    DEVIATES = "deviates"
    NEWLY_DEFINED = "newly-defined"


# -- interpretation ----------------------------------------------------------


def interpret(x: Fp, mode: ZeroMode) -> ExtInterval:
    """The set of reals a float stands for."""
    if x.kind is FpKind.FINITE:
        return ExtInterval.point(x)
    return _special_meaning(x.fmt, x.kind, mode)


@lru_cache(maxsize=None)
def _special_meaning(fmt: FloatFormat, kind: FpKind, mode: ZeroMode) -> ExtInterval:
    if kind is FpKind.NAN:
        if mode is ZeroMode.FINITE:
            raise DomainError("NaN has no set meaning with finite-width zeros")
        return ExtInterval.empty(fmt)
    if kind is FpKind.POS_INF:
        return ExtInterval.make(fmt.max_finite(), Fp.inf(fmt))
    if kind is FpKind.NEG_INF:
        return ExtInterval.make(Fp.inf(fmt, negative=True), -fmt.max_finite())
    if mode is ZeroMode.INFINITE:
        return ExtInterval.point(Fp.zero(fmt))
    if kind is FpKind.POS_ZERO:
        return ExtInterval.make(Fp.zero(fmt), fmt.min_pos())
    return ExtInterval.make(-fmt.min_pos(), Fp.zero(fmt))


def represent(x: ExtInterval, mode: ZeroMode) -> Optional[Fp]:
    """The float whose interpretation is exactly this set, if one exists.

    Point sets of finite nonzero values map back to that value; the other
    candidates are the zeros and infinities.  In INFINITE mode the two
    zeros share one interpretation, and +0 is returned for it; the empty
    set maps to NaN."""
    fmt = x.fmt
    if x.is_empty:
        return Fp.nan(fmt) if mode is ZeroMode.INFINITE else None
    if x.is_point() and x.lo.kind is FpKind.FINITE:
        return x.lo
    for candidate in (
        Fp.zero(fmt),
        Fp.zero(fmt, negative=True),
        Fp.inf(fmt),
        Fp.inf(fmt, negative=True),
    ):
        if interpret(candidate, mode) == x:
            return candidate
    return None


# -- total operations -----------------------------------------------------------


def fp_interval_op(a: Fp, b: Fp, op: OpKind, mode: ZeroMode) -> ExtInterval:
    """Interval result of a float operation; total for all non-NaN inputs,
    and total outright in INFINITE mode (NaN reads as the empty set)."""
    return apply_op(op, interpret(a, mode), interpret(b, mode))


def extract_bound(result: ExtInterval, direction: RoundingDirection) -> Fp:
    """One bound of an interval as a float: the upper bound for TO_POS_INF,
    the lower for TO_NEG_INF.  Empty extracts as NaN.  A bound that is real
    zero carries sign +0, except an upper bound reached from negative
    values, which carries -0, mirroring the usual sign conventions."""
    if direction not in (RoundingDirection.TO_POS_INF, RoundingDirection.TO_NEG_INF):
        raise ValueError("bound extraction is defined for the two directed roundings")
    if result.is_empty:
        return Fp.nan(result.fmt)
    if direction is RoundingDirection.TO_POS_INF:
        bound = result.hi
        if bound.is_zero and result.lo_ext < 0:
            return Fp.zero(result.fmt, negative=True)
        return bound
    return result.lo


def fp_scalar_op(
    a: Fp, b: Fp, op: OpKind, direction: RoundingDirection, mode: ZeroMode
) -> Fp:
    """One bound of the operation's interval, as a float (see extract_bound)."""
    return extract_bound(fp_interval_op(a, b, op, mode), direction)


# -- comparison against IEEE 754 ---------------------------------------------------


def same_value(a: Fp, b: Fp) -> bool:
    """Numeric equality: zeros compare equal regardless of sign, NaN equals NaN."""
    if a.is_nan or b.is_nan:
        return a.is_nan and b.is_nan
    return value_cmp(a, b) == 0


def classify_vs_ieee(a: Fp, b: Fp, op: OpKind, mode: ZeroMode) -> Classification:
    """How the interval result relates to the IEEE 754 result.

    NEWLY_DEFINED: IEEE yields NaN but the set semantics yields a set.
    CONFORMS: the results agree, either as the single float representing
    the result set (wide results such as the meaning of +inf) or bound by
    bound against the two directed IEEE results.  DEVIATES otherwise."""
    from .harness import ieee_reference

    r_dn = ieee_reference(a, b, op, RoundingDirection.TO_NEG_INF)
    r_up = ieee_reference(a, b, op, RoundingDirection.TO_POS_INF)
    if r_dn.is_nan:
        return Classification.NEWLY_DEFINED
    result = fp_interval_op(a, b, op, mode)
    single = represent(result, mode)
    if single is not None:
        ok = same_value(single, r_dn) and same_value(single, r_up)
    else:
        ok = same_value(
            fp_scalar_op(a, b, op, RoundingDirection.TO_NEG_INF, mode), r_dn
        ) and same_value(fp_scalar_op(a, b, op, RoundingDirection.TO_POS_INF, mode), r_up)
    return Classification.CONFORMS if ok else Classification.DEVIATES


# -- identity catalog ----------------------------------------------------------------

# Operand classes a record may quantify over.
_CLASS_PREDICATES = {
    "pos": lambda q: q > 0,
    "pos<1": lambda q: 0 < q < 1,
    "pos>=1": lambda q: q >= 1,
    "nonzero": lambda q: q != 0,
}


@dataclass(frozen=True)
class IdentityRecord:
    """One special-operand identity: an operand pattern, the operation, the
    zero mode it lives in, and the expected interval as a format-parametric
    expression (rd/ru denote rounding down/up in the active format)."""

    name: str
    pattern: str
    op: OpKind
    mode: ZeroMode
    group: str  # "redefined" | "formerly-nan" | "exact-zeros"
    operand_class: Optional[str]
    expr_text: str
    make_operands: Callable[[FloatFormat, Optional[Fp]], tuple[Fp, Fp]]
    expected: Callable[[FloatFormat, Optional[Fp]], ExtInterval]

    def operand_candidates(self, fmt: FloatFormat, cap: Optional[int] = None) -> list[Optional[Fp]]:
        """Concrete choices for the free operand; [None] for fixed patterns.

        Enumerable formats yield every matching finite value; larger ones a
        fixed representative spread, including the values where division
        formulas change character (a near m*M)."""
        if self.operand_class is None:
            return [None]
        pred = _CLASS_PREDICATES[self.operand_class]
        try:
            values = [
                v for v in fmt.enumerate() if v.kind is FpKind.FINITE and pred(v.to_rational())
            ]
        except EnumerationLimitError:
            m = fmt.min_pos().to_rational()
            big = fmt.max_finite().to_rational()
            probes = [
                m,
                Fraction(1, 2),
                Fraction(1),
                Fraction(2),
                m * big / 2,
                m * big,
                m * big * 2,
                big / 2,
                big,
            ]
            values = []
            for q in probes + [-q for q in probes]:
                if not pred(q):
                    continue
                try:
                    values.append(Fp.from_exact(fmt, q))
                except ValueError:
                    pass
        if cap is not None:
            values = values[:cap]
        return values


def _rd(fmt: FloatFormat, q: Fraction) -> Fp:
    return fmt.round(q, RoundingDirection.TO_NEG_INF)


def _ru(fmt: FloatFormat, q: Fraction) -> Fp:
    return fmt.round(q, RoundingDirection.TO_POS_INF)


def _m(fmt: FloatFormat) -> Fraction:
    return fmt.min_pos().to_rational()


def _M(fmt: FloatFormat) -> Fraction:
    return fmt.max_finite().to_rational()


def _up_from(fmt, lo: Fp) -> ExtInterval:
    return ExtInterval.make(lo, Fp.inf(fmt))


def _min_fp(a: Fp, b: Fp) -> Fp:
    return a if value_cmp(a, b) <= 0 else b


def _pos_inf_meaning(fmt: FloatFormat, _a=None) -> ExtInterval:
    return ExtInterval.make(fmt.max_finite(), Fp.inf(fmt))


def _neg_inf_meaning(fmt: FloatFormat, _a=None) -> ExtInterval:
    return ExtInterval.make(Fp.inf(fmt, negative=True), -fmt.max_finite())


def _nonneg_halfline(fmt: FloatFormat, _a=None) -> ExtInterval:
    return ExtInterval.make(Fp.zero(fmt), Fp.inf(fmt))


def _nonpos_halfline(fmt: FloatFormat, _a=None) -> ExtInterval:
    return ExtInterval.make(Fp.inf(fmt, negative=True), Fp.zero(fmt))


def _zero_point(fmt: FloatFormat, _a=None) -> ExtInterval:
    return ExtInterval.point(Fp.zero(fmt))


def _empty(fmt: FloatFormat, _a=None) -> ExtInterval:
    return ExtInterval.empty(fmt)


def _full(fmt: FloatFormat, _a=None) -> ExtInterval:
    return ExtInterval.full_line(fmt)


def _fixed(b_of_fmt_a: Callable[[FloatFormat], tuple[Fp, Fp]]):
    return lambda fmt, _a: b_of_fmt_a(fmt)


_PINF = lambda fmt: Fp.inf(fmt)
_NINF = lambda fmt: Fp.inf(fmt, negative=True)
_PZ = lambda fmt: Fp.zero(fmt)
_NZ = lambda fmt: Fp.zero(fmt, negative=True)


def _build_catalog() -> tuple[IdentityRecord, ...]:
    F, I = ZeroMode.FINITE, ZeroMode.INFINITE
    records = [
        # --- operations IEEE defines whose meaning is re-derived ---
        IdentityRecord(
            "inf-mul-inf", "+inf * +inf", OpKind.MUL, F, "redefined", None,
            "[M, +inf)",
            _fixed(lambda fmt: (_PINF(fmt), _PINF(fmt))),
            _pos_inf_meaning,
        ),
        IdentityRecord(
            "inf-mul-neginf", "+inf * -inf", OpKind.MUL, F, "redefined", None,
            "(-inf, -M]",
            _fixed(lambda fmt: (_PINF(fmt), _NINF(fmt))),
            _neg_inf_meaning,
        ),
        IdentityRecord(
            "a-mul-inf-ge1", "a * +inf (a >= 1)", OpKind.MUL, F, "redefined", "pos>=1",
            "[M, +inf)",
            lambda fmt, a: (a, _PINF(fmt)),
            _pos_inf_meaning,
        ),
        IdentityRecord(
            "a-mul-inf-lt1", "a * +inf (0 < a < 1)", OpKind.MUL, F, "redefined", "pos<1",
            "[rd(a*M), +inf)",
            lambda fmt, a: (a, _PINF(fmt)),
            lambda fmt, a: _up_from(fmt, _rd(fmt, a.to_rational() * _M(fmt))),
        ),
        IdentityRecord(
            "inf-add-inf", "+inf + +inf", OpKind.ADD, F, "redefined", None,
            "[M, +inf)",
            _fixed(lambda fmt: (_PINF(fmt), _PINF(fmt))),
            _pos_inf_meaning,
        ),
        IdentityRecord(
            "a-add-inf", "a + +inf (finite nonzero a)", OpKind.ADD, F, "redefined", "nonzero",
            "[min(rd(a+M), M), +inf)",
            lambda fmt, a: (a, _PINF(fmt)),
            lambda fmt, a: _up_from(
                fmt, _min_fp(_rd(fmt, a.to_rational() + _M(fmt)), fmt.max_finite())
            ),
        ),
        IdentityRecord(
            "poszero-add-poszero", "+0 + +0", OpKind.ADD, F, "redefined", None,
            "[0, ru(2m)]",
            _fixed(lambda fmt: (_PZ(fmt), _PZ(fmt))),
            lambda fmt, _a: ExtInterval.make(Fp.zero(fmt), _ru(fmt, 2 * _m(fmt))),
        ),
        IdentityRecord(
            "poszero-add-negzero", "+0 + -0", OpKind.ADD, F, "redefined", None,
            "[-m, m]",
            _fixed(lambda fmt: (_PZ(fmt), _NZ(fmt))),
            lambda fmt, _a: ExtInterval.make(-fmt.min_pos(), fmt.min_pos()),
        ),
        IdentityRecord(
            "a-div-inf", "a / +inf (finite positive a)", OpKind.DIV, F, "redefined", "pos",
            "[0, ru(a/M)]",
            lambda fmt, a: (a, _PINF(fmt)),
            lambda fmt, a: ExtInterval.make(
                Fp.zero(fmt), _ru(fmt, a.to_rational() / _M(fmt))
            ),
        ),
        IdentityRecord(
            "inf-div-a", "+inf / a (finite positive a)", OpKind.DIV, F, "redefined", "pos",
            "[min(M, rd(M/a)), +inf)",
            lambda fmt, a: (_PINF(fmt), a),
            lambda fmt, a: _up_from(
                fmt, _min_fp(fmt.max_finite(), _rd(fmt, _M(fmt) / a.to_rational()))
            ),
        ),
        IdentityRecord(
            "inf-div-poszero", "+inf / +0", OpKind.DIV, F, "redefined", None,
            "[rd(M/m), +inf) = [M, +inf)",
            _fixed(lambda fmt: (_PINF(fmt), _PZ(fmt))),
            lambda fmt, _a: _up_from(fmt, _rd(fmt, _M(fmt) / _m(fmt))),
        ),
        IdentityRecord(
            "a-div-poszero", "a / +0 (finite positive a)", OpKind.DIV, F, "redefined", "pos",
            "[rd(a/m), +inf)",
            lambda fmt, a: (a, _PZ(fmt)),
            lambda fmt, a: _up_from(fmt, _rd(fmt, a.to_rational() / _m(fmt))),
        ),
        # --- operations IEEE leaves undefined (NaN) ---
        IdentityRecord(
            "zero-mul-inf", "+0 * +inf", OpKind.MUL, F, "formerly-nan", None,
            "[0, +inf)",
            _fixed(lambda fmt: (_PZ(fmt), _PINF(fmt))),
            _nonneg_halfline,
        ),
        IdentityRecord(
            "inf-div-inf", "+inf / +inf", OpKind.DIV, F, "formerly-nan", None,
            "[0, +inf)",
            _fixed(lambda fmt: (_PINF(fmt), _PINF(fmt))),
            _nonneg_halfline,
        ),
        IdentityRecord(
            "inf-div-neginf", "+inf / -inf", OpKind.DIV, F, "formerly-nan", None,
            "(-inf, 0]",
            _fixed(lambda fmt: (_PINF(fmt), _NINF(fmt))),
            _nonpos_halfline,
        ),
        IdentityRecord(
            "neginf-div-neginf", "-inf / -inf", OpKind.DIV, F, "formerly-nan", None,
            "[0, +inf)",
            _fixed(lambda fmt: (_NINF(fmt), _NINF(fmt))),
            _nonneg_halfline,
        ),
        # Note: the divisor set [0, m] admits the witness y = 0 with x = 0,
        # so the relational solution set is the whole line (the same witness
        # that makes [0,0]/[0,0] the whole line in exact-zero mode); the
        # quotients alone would only cover [0, +inf).
        IdentityRecord(
            "poszero-div-poszero", "+0 / +0", OpKind.DIV, F, "formerly-nan", None,
            "(-inf, +inf)",
            _fixed(lambda fmt: (_PZ(fmt), _PZ(fmt))),
            _full,
        ),
        IdentityRecord(
            "inf-sub-inf", "+inf - +inf", OpKind.SUB, F, "formerly-nan", None,
            "(-inf, +inf)",
            _fixed(lambda fmt: (_PINF(fmt), _PINF(fmt))),
            _full,
        ),
        # --- the zero-involving formulas under exact (point) zeros ---
        IdentityRecord(
            "poszero-add-poszero-exact", "+0 + +0", OpKind.ADD, I, "exact-zeros", None,
            "[0, 0]",
            _fixed(lambda fmt: (_PZ(fmt), _PZ(fmt))),
            _zero_point,
        ),
        IdentityRecord(
            "poszero-add-negzero-exact", "+0 + -0", OpKind.ADD, I, "exact-zeros", None,
            "[0, 0]",
            _fixed(lambda fmt: (_PZ(fmt), _NZ(fmt))),
            _zero_point,
        ),
        IdentityRecord(
            "inf-div-poszero-exact", "+inf / +0", OpKind.DIV, I, "exact-zeros", None,
            "empty",
            _fixed(lambda fmt: (_PINF(fmt), _PZ(fmt))),
            _empty,
        ),
        IdentityRecord(
            "a-div-poszero-exact", "a / +0 (finite positive a)", OpKind.DIV, I,
            "exact-zeros", "pos",
            "empty",
            lambda fmt, a: (a, _PZ(fmt)),
            _empty,
        ),
        IdentityRecord(
            "zero-mul-inf-exact", "+0 * +inf", OpKind.MUL, I, "exact-zeros", None,
            "[0, 0]",
            _fixed(lambda fmt: (_PZ(fmt), _PINF(fmt))),
            _zero_point,
        ),
    ]
    return tuple(records)


_CATALOG = _build_catalog()


def identity_catalog() -> tuple[IdentityRecord, ...]:
    """All 23 special-operand identities (12 redefined, 6 formerly NaN,
    5 exact-zero-mode variants)."""
    return _CATALOG


def catalog_rows(fmt: FloatFormat) -> list[dict]:
    """Catalog as plain rows with one representative instantiation each,
    for the report generator."""
    rows = []
    for rec in identity_catalog():
        sample = representative_operand(rec, fmt)
        lhs_a, lhs_b = rec.make_operands(fmt, sample)
        rows.append(
            {
                "name": rec.name,
                "pattern": rec.pattern,
                "op": rec.op.value,
                "mode": rec.mode.value,
                "group": rec.group,
                "expr": rec.expr_text,
                "operands": f"{lhs_a} {rec.op.value} {lhs_b}",
                "result": str(rec.expected(fmt, sample)),
            }
        )
    return rows


def representative_operand(rec: IdentityRecord, fmt: FloatFormat) -> Optional[Fp]:
    """A single representative free operand for report rows (None for fixed
    patterns): 1/2 for the below-one branch, 2 otherwise, falling back to
    whatever the format offers."""
    if rec.operand_class is None:
        return None
    candidates = rec.operand_candidates(fmt)
    targets = {"pos<1": Fraction(1, 2), "pos>=1": Fraction(2), "pos": Fraction(2),
               "nonzero": Fraction(2)}
    want = targets[rec.operand_class]
    for v in candidates:
        if v is not None and v.to_rational() == want:
            return v
    return candidates[0] if candidates else None
