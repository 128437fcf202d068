"""Parametric binary floating-point formats with exact rational rounding.

A format is described by its precision (significand bits including the
hidden bit), an exponent range, and a subnormal toggle.  Values are kept
in an exact canonical encoding, so every finite number converts to a
`fractions.Fraction` without loss and rounding is decided by integer
arithmetic only.  Tiny formats can be enumerated exhaustively, which is
what the verification suites rely on; binary64 is just another instance
of the same machinery.
"""

from __future__ import annotations

import math
import re
import struct
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Union

RationalLike = Union[Fraction, int]

# Formats with more values than this refuse to enumerate.
ENUMERATION_LIMIT = 1 << 24


class DomainError(ValueError):
    """An operation was applied to a value outside its domain (NaN, wrong infinity)."""


class EnumerationLimitError(ValueError):
    """The format has too many values to enumerate exhaustively."""


class RoundingDirection(Enum):
    TO_NEG_INF = "down"
    TO_POS_INF = "up"
    TO_ZERO = "zero"
    NEAREST = "nearest"


class FpKind(Enum):
    FINITE = "finite"  # finite and nonzero
    POS_ZERO = "+0"
    NEG_ZERO = "-0"
    POS_INF = "+inf"
    NEG_INF = "-inf"
    NAN = "nan"


@dataclass(frozen=True)
class FloatFormat:
    """A binary float format: precision bits, exponent range, subnormal toggle."""

    precision: int
    e_min: int
    e_max: int
    subnormals: bool = True

    def __post_init__(self):
        if self.precision < 2:
            raise ValueError("precision must be at least 2")
        if self.e_min > self.e_max:
            raise ValueError("e_min must not exceed e_max")

    # -- derived constants -------------------------------------------------

    def value_count(self) -> int:
        """Number of distinct values: finites, two zeros, two infinities (no NaN)."""
        per_exp = 1 << (self.precision - 1)
        n_pos = (self.e_max - self.e_min + 1) * per_exp
        if self.subnormals:
            n_pos += per_exp - 1
        return 2 * n_pos + 4

    def max_finite(self) -> "Fp":
        """Greatest finite value of the format."""
        return _max_finite(self)

    def min_pos(self) -> "Fp":
        """Least value strictly greater than zero (subnormal when enabled)."""
        return _min_pos(self)

    # -- rounding ----------------------------------------------------------

    def round(self, q: RationalLike, direction: RoundingDirection) -> "Fp":
        """Round an exact rational to the format.  Total: overflow saturates
        to the greatest finite value or to an infinity depending on direction,
        and exact zeros come out as +0 (a negative value collapsing to zero
        yields -0)."""
        num, den = q.numerator, q.denominator
        if num == 0:
            return Fp.zero(self)
        neg = num < 0
        lo, hi = _floor_ceil_pos(self, -num if neg else num, den)
        if direction is RoundingDirection.TO_POS_INF:
            mag = lo if neg else hi
        elif direction is RoundingDirection.TO_NEG_INF:
            mag = hi if neg else lo
        elif direction is RoundingDirection.TO_ZERO:
            mag = lo
        else:
            mag = _nearest_of(self, Fraction(-num if neg else num, den), lo, hi)
        if mag.is_zero:
            return Fp.zero(self, negative=neg)
        if mag.is_inf:
            return Fp.inf(self, negative=neg)
        return Fp(self, FpKind.FINITE, neg, mag.c, mag.e) if neg else mag

    def round_both(self, q: RationalLike) -> tuple["Fp", "Fp"]:
        """(round down, round up) sharing one bracket computation."""
        num, den = q.numerator, q.denominator
        if num == 0:
            z = Fp.zero(self)
            return z, z
        if num > 0:
            return _floor_ceil_pos(self, num, den)
        lo, hi = _floor_ceil_pos(self, -num, den)
        return -hi, -lo

    # -- enumeration ---------------------------------------------------------

    def enumerate(self) -> list["Fp"]:
        """All values in ascending order: -inf, negatives, -0, +0, positives, +inf.

        NaN is excluded.  Refuses formats beyond ENUMERATION_LIMIT values."""
        if self.value_count() > ENUMERATION_LIMIT:
            raise EnumerationLimitError(
                f"{self.descriptor()} has {self.value_count()} values; "
                f"limit is {ENUMERATION_LIMIT}"
            )
        half = 1 << (self.precision - 1)
        pos = []
        if self.subnormals:
            pos.extend(Fp(self, FpKind.FINITE, False, c, self.e_min) for c in range(1, half))
        for e in range(self.e_min, self.e_max + 1):
            pos.extend(Fp(self, FpKind.FINITE, False, c, e) for c in range(half, 2 * half))
        neg = [-x for x in reversed(pos)]
        return (
            [Fp.inf(self, negative=True)]
            + neg
            + [Fp.zero(self, negative=True), Fp.zero(self)]
            + pos
            + [Fp.inf(self)]
        )

    # -- text form -----------------------------------------------------------

    def descriptor(self) -> str:
        if self == BINARY64:
            return "b64"
        text = f"p{self.precision}e{self.e_min}:{self.e_max}"
        return text if self.subnormals else text + "ns"

    def __repr__(self):
        return f"FloatFormat({self.descriptor()!r})"


_FORMAT_RE = re.compile(r"^p(\d+)e(-?\d+):(-?\d+)(ns)?$")


def parse_format(text: str) -> FloatFormat:
    """Parse a format descriptor: ``b64`` or ``p<P>e<EMIN>:<EMAX>[ns]``."""
    text = text.strip()
    if text == "b64":
        return BINARY64
    m = _FORMAT_RE.match(text)
    if not m:
        raise ValueError(f"bad format descriptor {text!r}")
    return FloatFormat(int(m.group(1)), int(m.group(2)), int(m.group(3)), m.group(4) is None)


@dataclass(frozen=True, slots=True)
class Fp:
    """One datum of a format: a finite nonzero value, a signed zero, a signed
    infinity, or NaN.

    Finite nonzero values satisfy ``value = (-1)**negative * c * 2**(e - p + 1)``
    with the canonical constraint that c has exactly p bits (normal) or e is
    the minimum exponent and c has fewer (subnormal).  Each representable real
    has exactly one encoding, so dataclass equality is value identity, with
    +0 and -0 distinct.
    """

    fmt: FloatFormat
    kind: FpKind
    negative: bool = False
    c: int = 0
    e: int = 0

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(fmt: FloatFormat, negative: bool = False) -> "Fp":
        return Fp(fmt, FpKind.NEG_ZERO if negative else FpKind.POS_ZERO)

    @staticmethod
    def inf(fmt: FloatFormat, negative: bool = False) -> "Fp":
        return Fp(fmt, FpKind.NEG_INF if negative else FpKind.POS_INF)

    @staticmethod
    def nan(fmt: FloatFormat) -> "Fp":
        return Fp(fmt, FpKind.NAN)

    @staticmethod
    def from_exact(fmt: FloatFormat, q: RationalLike) -> "Fp":
        """Encode a rational that is exactly representable; raise otherwise."""
        q = Fraction(q)
        if q == 0:
            return Fp.zero(fmt)
        lo, hi = _floor_ceil_pos(fmt, abs(q.numerator), q.denominator)
        if lo != hi:
            raise ValueError(f"{q} is not representable in {fmt.descriptor()}")
        return -lo if q < 0 else lo

    @staticmethod
    def from_float(fmt: FloatFormat, x: float) -> "Fp":
        """Encode a host float (exact for binary64)."""
        if fmt == BINARY64:
            return _fp_from_bits64(fmt, _f64_bits(x))
        if math.isnan(x):
            return Fp.nan(fmt)
        if math.isinf(x):
            return Fp.inf(fmt, negative=x < 0)
        if x == 0.0:
            return Fp.zero(fmt, negative=math.copysign(1.0, x) < 0)
        return Fp.from_exact(fmt, Fraction(*x.as_integer_ratio()))

    # -- predicates ------------------------------------------------------------

    @property
    def is_nan(self) -> bool:
        return self.kind is FpKind.NAN

    @property
    def is_inf(self) -> bool:
        return self.kind in (FpKind.POS_INF, FpKind.NEG_INF)

    @property
    def is_zero(self) -> bool:
        return self.kind in (FpKind.POS_ZERO, FpKind.NEG_ZERO)

    @property
    def is_finite(self) -> bool:
        return self.kind is FpKind.FINITE or self.is_zero

    @property
    def sign_negative(self) -> bool:
        """Sign bit, meaningful for every kind except NaN."""
        if self.kind is FpKind.FINITE:
            return self.negative
        return self.kind in (FpKind.NEG_ZERO, FpKind.NEG_INF)

    # -- conversions -------------------------------------------------------------

    def to_rational(self) -> Fraction:
        """Exact value of a finite datum (both zeros give 0)."""
        if self.kind is not FpKind.FINITE:
            if self.is_zero:
                return Fraction(0)
            raise DomainError(f"{self} has no rational value")
        s = self.e - self.fmt.precision + 1
        mag = Fraction(self.c << s) if s >= 0 else Fraction(self.c, 1 << -s)
        return -mag if self.negative else mag

    def to_float(self) -> float:
        """Host-float value (exact when the format fits in binary64)."""
        if self.is_nan:
            return math.nan
        if self.is_inf:
            return -math.inf if self.kind is FpKind.NEG_INF else math.inf
        if self.is_zero:
            return -0.0 if self.kind is FpKind.NEG_ZERO else 0.0
        mag = math.ldexp(self.c, self.e - self.fmt.precision + 1)
        return -mag if self.negative else mag

    # -- neighbours ----------------------------------------------------------------

    def next_up(self) -> "Fp":
        """Successor in the value order, with -0 immediately below +0.

        next_up(M) is +inf and next_up(-inf) is -M; NaN and +inf have no
        successor."""
        k = self.kind
        if k is FpKind.NAN or k is FpKind.POS_INF:
            raise DomainError(f"next_up undefined for {self}")
        if k is FpKind.NEG_INF:
            return -self.fmt.max_finite()
        if k is FpKind.NEG_ZERO:
            return Fp.zero(self.fmt)
        if k is FpKind.POS_ZERO:
            return self.fmt.min_pos()
        if self.negative:
            return -(-self)._pred()
        return self._succ()

    def next_down(self) -> "Fp":
        """Predecessor in the same order; mirror of next_up."""
        k = self.kind
        if k is FpKind.NAN or k is FpKind.NEG_INF:
            raise DomainError(f"next_down undefined for {self}")
        if k is FpKind.POS_INF:
            return self.fmt.max_finite()
        if k is FpKind.POS_ZERO:
            return Fp.zero(self.fmt, negative=True)
        if k is FpKind.NEG_ZERO:
            return -self.fmt.min_pos()
        if self.negative:
            return -(-self)._succ()
        return self._pred()

    def _succ(self) -> "Fp":
        fmt = self.fmt
        c, e = self.c + 1, self.e
        if c == 1 << fmt.precision:
            c, e = 1 << (fmt.precision - 1), e + 1
            if e > fmt.e_max:
                return Fp.inf(fmt)
        return Fp(fmt, FpKind.FINITE, False, c, e)

    def _pred(self) -> "Fp":
        fmt = self.fmt
        half = 1 << (fmt.precision - 1)
        c, e = self.c - 1, self.e
        if c >= half:
            return Fp(fmt, FpKind.FINITE, False, c, e)
        if e > fmt.e_min:
            return Fp(fmt, FpKind.FINITE, False, 2 * half - 1, e - 1)
        if fmt.subnormals and c >= 1:
            return Fp(fmt, FpKind.FINITE, False, c, e)
        return Fp.zero(fmt)

    # -- arithmetic-free helpers ------------------------------------------------------

    def __neg__(self) -> "Fp":
        k = self.kind
        if k is FpKind.FINITE:
            return Fp(self.fmt, k, not self.negative, self.c, self.e)
        flip = {
            FpKind.POS_ZERO: FpKind.NEG_ZERO,
            FpKind.NEG_ZERO: FpKind.POS_ZERO,
            FpKind.POS_INF: FpKind.NEG_INF,
            FpKind.NEG_INF: FpKind.POS_INF,
            FpKind.NAN: FpKind.NAN,
        }
        return Fp(self.fmt, flip[k])

    # -- text form ----------------------------------------------------------------------

    def decimal_str(self) -> str:
        """Exact decimal expansion of a finite value (may be long)."""
        if self.is_zero:
            return "0"
        if self.kind is not FpKind.FINITE:
            raise DomainError(f"{self} has no decimal form")
        c, s = self.c, self.e - self.fmt.precision + 1
        tz = (c & -c).bit_length() - 1
        c, s = c >> tz, s + tz
        sign = "-" if self.negative else ""
        if s >= 0:
            return sign + str(c << s)
        digits = str(c * 5**-s)
        point = len(digits) + s
        if point <= 0:
            return sign + "0." + "0" * -point + digits
        return sign + digits[:point] + "." + digits[point:]

    def hex_str(self) -> str:
        """C-style hex float; subnormals print with a leading 0 digit."""
        if self.kind is not FpKind.FINITE:
            raise DomainError(f"{self} has no hex form")
        fmt = self.fmt
        half = 1 << (fmt.precision - 1)
        lead, frac, e = (1, self.c - half, self.e) if self.c >= half else (0, self.c, self.e)
        fracbits = fmt.precision - 1
        nibbles = (fracbits + 3) // 4
        fracint = frac << (4 * nibbles - fracbits)
        sign = "-" if self.negative else ""
        body = f"0x{lead:d}"
        if nibbles:
            body += f".{fracint:0{nibbles}x}"
        return f"{sign}{body}p{e:+d}"

    def __str__(self):
        k = self.kind
        if k is FpKind.NAN:
            return "nan"
        if k is FpKind.POS_INF:
            return "+inf"
        if k is FpKind.NEG_INF:
            return "-inf"
        if k is FpKind.POS_ZERO:
            return "+0"
        if k is FpKind.NEG_ZERO:
            return "-0"
        dec = self.decimal_str()
        return dec if len(dec) <= 20 else self.hex_str()

    def __repr__(self):
        return f"Fp({str(self)!r}, {self.fmt.descriptor()!r})"


BINARY64 = FloatFormat(precision=53, e_min=-1022, e_max=1023, subnormals=True)


@lru_cache(maxsize=None)
def _max_finite(fmt: FloatFormat) -> Fp:
    return Fp(fmt, FpKind.FINITE, False, (1 << fmt.precision) - 1, fmt.e_max)


@lru_cache(maxsize=None)
def _min_pos(fmt: FloatFormat) -> Fp:
    if fmt.subnormals:
        return Fp(fmt, FpKind.FINITE, False, 1, fmt.e_min)
    return Fp(fmt, FpKind.FINITE, False, 1 << (fmt.precision - 1), fmt.e_min)


# -- value-order comparison ------------------------------------------------------


def _value_key(x: Fp) -> tuple[int, int, int]:
    """Integer sort key ordering values of one format (zeros tie): the
    canonical encoding is value-monotone in (e, c) per sign."""
    k = x.kind
    if k is FpKind.FINITE:
        if x.negative:
            return (-1, -x.e, -x.c)
        return (1, x.e, x.c)
    if k is FpKind.NEG_INF:
        return (-2, 0, 0)
    if k is FpKind.POS_INF:
        return (2, 0, 0)
    if k is FpKind.NAN:
        raise DomainError("NaN is unordered")
    return (0, 0, 0)


def value_cmp(a: Fp, b: Fp) -> int:
    """Three-way compare by real value; zeros compare equal, NaN is an error."""
    ka, kb = _value_key(a), _value_key(b)
    return (ka > kb) - (ka < kb)


# -- binary64 bit bridge -----------------------------------------------------------


def _f64_bits(x: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", x))[0]


def _fp_from_bits64(fmt: FloatFormat, bits: int) -> Fp:
    """Decode an IEEE binary64 bit pattern straight into the canonical
    encoding (no rational bracketing)."""
    neg = bool(bits >> 63)
    biased = (bits >> 52) & 0x7FF
    trailing = bits & ((1 << 52) - 1)
    if biased == 0x7FF:
        if trailing:
            return Fp.nan(fmt)
        return Fp.inf(fmt, negative=neg)
    if biased == 0:
        if trailing == 0:
            return Fp.zero(fmt, negative=neg)
        return Fp(fmt, FpKind.FINITE, neg, trailing, fmt.e_min)
    return Fp(fmt, FpKind.FINITE, neg, trailing | (1 << 52), biased - 1023)


# -- rounding internals ------------------------------------------------------------


def _fp_from_mag(fmt: FloatFormat, c: int, scale: int) -> Fp:
    """Positive finite Fp from magnitude c * 2**scale; c may carry one bit past
    the precision (normalised here) and must already be format-aligned."""
    if c == 1 << fmt.precision:
        c >>= 1
        scale += 1
    e = scale + fmt.precision - 1
    if e > fmt.e_max:
        return Fp.inf(fmt)
    return Fp(fmt, FpKind.FINITE, False, c, e)


def _floor_ceil_pos(fmt: FloatFormat, num: int, den: int) -> tuple[Fp, Fp]:
    """Bracket a positive rational num/den between adjacent representable
    magnitudes: (greatest value <= q, possibly +0; least value >= q, possibly
    +inf).  Equal results mean q is representable."""
    p = fmt.precision
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        if num < (den << e):
            e -= 1
    elif (num << -e) < den:
        e -= 1
    if e > fmt.e_max:
        return fmt.max_finite(), Fp.inf(fmt)
    if e < fmt.e_min and not fmt.subnormals:
        return Fp.zero(fmt), fmt.min_pos()
    scale = max(e, fmt.e_min) - (p - 1)
    if scale >= 0:
        c, rem = divmod(num, den << scale)
    else:
        c, rem = divmod(num << -scale, den)
    lo = _fp_from_mag(fmt, c, scale) if c else Fp.zero(fmt)
    if rem == 0:
        return lo, lo
    return lo, _fp_from_mag(fmt, c + 1, scale)


def _nearest_of(fmt: FloatFormat, mag: Fraction, lo: Fp, hi: Fp) -> Fp:
    """Round-to-nearest between the bracketing magnitudes, ties to even
    significand; overflow follows the usual threshold at M plus half an ulp."""
    if lo == hi:
        return lo
    if hi.is_inf:
        threshold = Fraction(1 << (fmt.e_max + 1)) - Fraction(2) ** (fmt.e_max - fmt.precision)
        return hi if mag >= threshold else lo
    d_lo = mag - lo.to_rational()
    d_hi = hi.to_rational() - mag
    if d_lo < d_hi:
        return lo
    if d_hi < d_lo:
        return hi
    return lo if lo.c % 2 == 0 else hi


# -- literal parsing ------------------------------------------------------------------


_HEX_RE = re.compile(
    r"^(?P<sign>[+-]?)0x(?P<int>[0-9a-fA-F]+)(?:\.(?P<frac>[0-9a-fA-F]*))?"
    r"(?:p(?P<exp>[+-]?\d+))?$"
)


def fraction_from_literal(text: str) -> Fraction:
    """Exact value of a decimal or hex-float literal."""
    text = text.strip()
    m = _HEX_RE.match(text)
    if m:
        frac = m.group("frac") or ""
        mant = int(m.group("int") + frac, 16)
        exp = int(m.group("exp") or 0)
        q = Fraction(mant, 16 ** len(frac)) * Fraction(2) ** exp
        return -q if m.group("sign") == "-" else q
    return Fraction(text)


@lru_cache(maxsize=None)
def _cached_enumeration(fmt: FloatFormat) -> tuple[Fp, ...]:
    return tuple(fmt.enumerate())


def enumeration(fmt: FloatFormat) -> tuple[Fp, ...]:
    """Cached form of FloatFormat.enumerate for the test suites."""
    return _cached_enumeration(fmt)
