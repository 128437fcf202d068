"""Differential testing against IEEE 754 behaviour.

The reference semantics (ieee_reference) follows the standard's rules in
exact rational arithmetic: NaN for the classically invalid combinations,
signed zeros per the sign rules, directed rounding via the format rounder.
For binary64 an optional native backend drives the actual FPU through
fesetround, so the softfloat rules can be diffed against hardware.

The conformance suite checks the headline property: for finite operands,
the directed-rounding IEEE result equals the matching bound of the
operation's interval.  Zeros take part as exact points and results are
compared by numeric value, since an interval bound carries no zero sign.
"""

from __future__ import annotations

import ctypes
import math
import random
import struct
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional

from .fpformat import (
    BINARY64,
    EnumerationLimitError,
    FloatFormat,
    Fp,
    FpKind,
    RoundingDirection,
    value_cmp,
)
from .interval import ExtInterval, OpKind
from .semantics import (
    Classification,
    ZeroMode,
    classify_vs_ieee,
    fp_interval_op,
    fp_scalar_op,
    identity_catalog,
    representative_operand,
    same_value,
)

DEFAULT_SEED = 271828


# -- IEEE 754 reference (softfloat) -------------------------------------------------


def ieee_reference(a: Fp, b: Fp, op: OpKind, direction: RoundingDirection) -> Fp:
    """The IEEE 754 result of a op b under a rounding direction, computed
    from exact rationals.  NaN is an ordinary value here."""
    if a.fmt is not b.fmt and a.fmt != b.fmt:
        raise ValueError("operands use different formats")
    if a.is_nan or b.is_nan:
        return Fp.nan(a.fmt)
    if op is OpKind.ADD:
        return _ieee_add(a, b, direction)
    if op is OpKind.SUB:
        return _ieee_add(a, -b, direction)
    if op is OpKind.MUL:
        return _ieee_mul(a, b, direction)
    return _ieee_div(a, b, direction)


def _ieee_add(a: Fp, b: Fp, direction: RoundingDirection) -> Fp:
    fmt = a.fmt
    if a.is_inf or b.is_inf:
        if a.is_inf and b.is_inf and a.sign_negative != b.sign_negative:
            return Fp.nan(fmt)
        return a if a.is_inf else b
    q = a.to_rational() + b.to_rational()
    if q == 0:
        if a.is_zero and b.is_zero and a.sign_negative == b.sign_negative:
            return Fp.zero(fmt, a.sign_negative)
        # opposite-sign zeros or exact cancellation: +0 except when rounding down
        return Fp.zero(fmt, direction is RoundingDirection.TO_NEG_INF)
    return fmt.round(q, direction)


def _ieee_mul(a: Fp, b: Fp, direction: RoundingDirection) -> Fp:
    fmt = a.fmt
    sign = a.sign_negative != b.sign_negative
    if a.is_inf or b.is_inf:
        if a.is_zero or b.is_zero:
            return Fp.nan(fmt)
        return Fp.inf(fmt, sign)
    if a.is_zero or b.is_zero:
        return Fp.zero(fmt, sign)
    return fmt.round(a.to_rational() * b.to_rational(), direction)


def _ieee_div(a: Fp, b: Fp, direction: RoundingDirection) -> Fp:
    fmt = a.fmt
    sign = a.sign_negative != b.sign_negative
    if a.is_inf:
        if b.is_inf:
            return Fp.nan(fmt)
        return Fp.inf(fmt, sign)
    if b.is_inf:
        return Fp.zero(fmt, sign)
    if b.is_zero:
        if a.is_zero:
            return Fp.nan(fmt)
        return Fp.inf(fmt, sign)
    if a.is_zero:
        return Fp.zero(fmt, sign)
    return fmt.round(a.to_rational() / b.to_rational(), direction)


# -- native backend (binary64 via the host FPU) ---------------------------------------

# fesetround constants differ per architecture; candidates are verified
# semantically before use, never assumed.
_FE_CANDIDATES = (
    {"near": 0x0, "down": 0x400, "up": 0x800, "zero": 0xC00},  # x86 family
    {"near": 0x0, "up": 0x400000, "down": 0x800000, "zero": 0xC00000},  # arm64
)
_LIB_NAMES = ("libm.so.6", "libm.so", "libc.so.6", "libSystem.B.dylib")


class _NativeRounding:
    def __init__(self):
        self.lib = None
        self.consts = None
        self.probed = False

    def available(self) -> bool:
        if not self.probed:
            self._probe()
        return self.lib is not None

    def _probe(self):
        self.probed = True
        lib = None
        for name in _LIB_NAMES:
            try:
                cand = ctypes.CDLL(name)
                cand.fesetround
                cand.fegetround
                lib = cand
                break
            except (OSError, AttributeError):
                continue
        if lib is None:
            return
        one, three = float(1.0), float(3.0)
        want_dn = BINARY64.round(Fraction(1, 3), RoundingDirection.TO_NEG_INF).to_float()
        want_up = BINARY64.round(Fraction(1, 3), RoundingDirection.TO_POS_INF).to_float()
        for consts in _FE_CANDIDATES:
            old = lib.fegetround()
            try:
                if lib.fesetround(consts["down"]) != 0:
                    continue
                got_dn = one / three
                if lib.fesetround(consts["up"]) != 0:
                    continue
                got_up = one / three
            finally:
                lib.fesetround(old)
            if got_dn == want_dn and got_up == want_up:
                self.lib = lib
                self.consts = consts
                return

    @contextmanager
    def mode(self, direction: RoundingDirection):
        names = {
            RoundingDirection.TO_NEG_INF: "down",
            RoundingDirection.TO_POS_INF: "up",
            RoundingDirection.TO_ZERO: "zero",
            RoundingDirection.NEAREST: "near",
        }
        old = self.lib.fegetround()
        self.lib.fesetround(self.consts[names[direction]])
        try:
            yield
        finally:
            self.lib.fesetround(old)


_NATIVE = _NativeRounding()


def native_rounding_available() -> bool:
    """True when the host FPU rounding mode can be driven and verified."""
    return _NATIVE.available()


def ieee_reference_native(a: Fp, b: Fp, op: OpKind, direction: RoundingDirection) -> Fp:
    """IEEE result for binary64 computed by the host FPU under fesetround.

    Division by zero is synthesised (Python refuses it) but is rounding-mode
    independent, so the hardware is still exercised everywhere it matters."""
    if a.fmt != BINARY64 or b.fmt != BINARY64:
        raise ValueError("native backend is binary64 only")
    if not _NATIVE.available():
        raise RuntimeError("no verified native rounding access on this platform")
    xa, xb = a.to_float(), b.to_float()
    if math.isnan(xa) or math.isnan(xb):
        return Fp.nan(BINARY64)
    with _NATIVE.mode(direction):
        if op is OpKind.ADD:
            r = xa + xb
        elif op is OpKind.SUB:
            r = xa - xb
        elif op is OpKind.MUL:
            r = xa * xb
        elif xb == 0.0:
            if xa == 0.0:
                r = math.nan
            else:
                neg = (math.copysign(1.0, xa) < 0) != (math.copysign(1.0, xb) < 0)
                r = -math.inf if neg else math.inf
        else:
            r = xa / xb
    return Fp.from_float(BINARY64, r)


# -- operand sampling ------------------------------------------------------------------


def adversarial_binary64() -> list[Fp]:
    """Fixed stress operands: zeros, subnormal and normal boundaries, units,
    powers of two, extremes, infinities."""
    specials = [0.0, 5e-324, 2.0**-1022 - 5e-324, 2.0**-1022, 1.0, 2.0, 0.5,
                2.0**52, 2.0**-52, 1.7976931348623157e308, math.inf]
    out = []
    for v in specials:
        out.append(Fp.from_float(BINARY64, v))
        out.append(Fp.from_float(BINARY64, -v))
    return out


def sample_binary64(rng: random.Random, finite_only: bool = False) -> Fp:
    """Bit-uniform binary64 sample (never NaN); stresses exponent extremes."""
    while True:
        bits = rng.getrandbits(64)
        x = struct.unpack("<d", struct.pack("<Q", bits))[0]
        if math.isnan(x):
            continue
        if finite_only and math.isinf(x):
            continue
        return Fp.from_float(BINARY64, x)


def binary64_pairs(
    n: int, seed: int, finite_only: bool = False, adversarial: bool = True
) -> Iterator[tuple[Fp, Fp]]:
    """Deterministic operand-pair stream: the adversarial cross product
    first (counted against n), then bit-uniform samples."""
    rng = random.Random(seed)
    count = 0
    if adversarial:
        fixed = adversarial_binary64()
        if finite_only:
            fixed = [v for v in fixed if not v.is_inf]
        for a in fixed:
            for b in fixed:
                if count >= n:
                    return
                yield a, b
                count += 1
    while count < n:
        yield sample_binary64(rng, finite_only), sample_binary64(rng, finite_only)
        count += 1


# -- conformance suite ------------------------------------------------------------------


class Verdict(Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    IEEE_NAN = "ieee-nan"


@dataclass(frozen=True)
class DiffCase:
    a: Fp
    b: Fp
    op: OpKind
    direction: RoundingDirection
    ieee_result: Fp
    interval_bound: Fp
    verdict: Verdict

    def __str__(self):
        return (
            f"{self.a} {self.op.value} {self.b} [{self.direction.value}] "
            f"ieee={self.ieee_result} interval={self.interval_bound} {self.verdict.value}"
        )


@dataclass
class SuiteResult:
    fmt: FloatFormat
    checked: int = 0
    mismatches: list[DiffCase] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.mismatches)} mismatches"
        lines = [f"conformance {self.fmt.descriptor()}: {self.checked} comparisons, {status}"]
        lines += [f"  {c}" for c in self.mismatches[:20]]
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


_DIRECTED = (RoundingDirection.TO_NEG_INF, RoundingDirection.TO_POS_INF)


def run_theorem_suite(
    fmt: FloatFormat,
    samples: int = 100_000,
    seed: int = DEFAULT_SEED,
    ops: tuple[OpKind, ...] = tuple(OpKind),
) -> SuiteResult:
    """Check that each directed IEEE result equals the matching interval
    bound: over every finite operand pair for enumerable formats, or a
    seeded random sample for formats too large to enumerate.  Division
    skips zero divisors, the one case the claim excludes."""
    result = SuiteResult(fmt)
    try:
        finites = [v for v in fmt.enumerate() if v.is_finite]
        pairs = [(a, b) for a in finites for b in finites]
        result.notes.append(f"exhaustive over {len(finites)} finite values")
    except EnumerationLimitError:
        pairs = list(binary64_pairs(samples, seed, finite_only=True))
        result.notes.append(f"random sample of {len(pairs)} pairs, seed {seed}")
    for op in ops:
        for a, b in pairs:
            if op is OpKind.DIV and b.is_zero:
                continue
            for direction in _DIRECTED:
                ieee = ieee_reference(a, b, op, direction)
                bound = fp_scalar_op(a, b, op, direction, ZeroMode.INFINITE)
                result.checked += 1
                if ieee.is_nan:
                    verdict = Verdict.IEEE_NAN
                elif same_value(ieee, bound):
                    verdict = Verdict.MATCH
                else:
                    verdict = Verdict.MISMATCH
                if verdict is not Verdict.MATCH:
                    result.mismatches.append(
                        DiffCase(a, b, op, direction, ieee, bound, verdict)
                    )
    return result


# -- deviation report ----------------------------------------------------------------------


@dataclass(frozen=True)
class ReportRow:
    name: str
    pattern: str
    group: str
    mode: ZeroMode
    expr: str
    operands: str
    ieee: str
    interval: str
    classification: Classification


def deviation_report(fmt: FloatFormat, mode: Optional[ZeroMode] = None) -> list[ReportRow]:
    """One row per catalog identity: representative operands, the IEEE
    result, the interval result, and how the two relate."""
    rows = []
    for rec in identity_catalog():
        if mode is not None and rec.mode is not mode:
            continue
        a = representative_operand(rec, fmt)
        x, y = rec.make_operands(fmt, a)
        ieee = ieee_reference(x, y, rec.op, RoundingDirection.NEAREST)
        interval_result = fp_interval_op(x, y, rec.op, rec.mode)
        cls = classify_vs_ieee(x, y, rec.op, rec.mode)
        rows.append(
            ReportRow(
                rec.name,
                rec.pattern,
                rec.group,
                rec.mode,
                rec.expr_text,
                f"{x} {rec.op.value} {y}",
                str(ieee),
                str(interval_result),
                cls,
            )
        )
    return rows


# -- backend agreement and totality fuzzing ----------------------------------------------


@dataclass
class AgreementResult:
    checked: int = 0
    disagreements: list[str] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.disagreements


def backend_agreement(
    pairs_per_combo: int = 1_000_000, seed: int = DEFAULT_SEED
) -> AgreementResult:
    """Diff the softfloat IEEE reference against the host FPU over seeded
    random binary64 pairs for every op and directed rounding.  Skips (with
    a reason) where no verified rounding-mode access exists."""
    result = AgreementResult()
    if not native_rounding_available():
        result.skipped = "no verified native rounding-mode access on this platform"
        return result
    for direction in _DIRECTED:
        for op in OpKind:
            for a, b in binary64_pairs(pairs_per_combo, seed):
                soft = ieee_reference(a, b, op, direction)
                native = ieee_reference_native(a, b, op, direction)
                result.checked += 1
                if soft != native:
                    result.disagreements.append(
                        f"{a} {op.value} {b} [{direction.value}] soft={soft} native={native}"
                    )
    return result


@dataclass
class FuzzResult:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _interval_well_formed(x: ExtInterval) -> bool:
    if x.is_empty:
        return x.lo is None and x.hi is None
    if x.lo.is_nan or x.hi.is_nan:
        return False
    if x.lo.kind is FpKind.POS_INF or x.hi.kind is FpKind.NEG_INF:
        return False
    if x.lo.kind is FpKind.NEG_ZERO or x.hi.kind is FpKind.NEG_ZERO:
        return False
    return value_cmp(x.lo, x.hi) <= 0


def totality_fuzz(
    pairs_per_op: int = 1_000_000, seed: int = DEFAULT_SEED, mode: ZeroMode = ZeroMode.FINITE
) -> FuzzResult:
    """Throw random non-NaN binary64 pairs at every operation and verify the
    result is always a well-formed interval: no exception, no NaN output,
    and never empty in finite-zero mode."""
    result = FuzzResult()
    for op in OpKind:
        for a, b in binary64_pairs(pairs_per_op, seed + ord(op.value)):
            result.checked += 1
            try:
                out = fp_interval_op(a, b, op, mode)
            except Exception as exc:  # totality means this must not happen
                result.failures.append(f"{a} {op.value} {b}: raised {exc!r}")
                continue
            if not _interval_well_formed(out):
                result.failures.append(f"{a} {op.value} {b}: malformed {out}")
            elif mode is ZeroMode.FINITE and out.is_empty:
                result.failures.append(f"{a} {op.value} {b}: empty result")
    return result
