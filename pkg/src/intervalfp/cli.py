"""Command-line front end.

Grammar of the expression language (EBNF):

    expr    = term , { ("+" | "-") , term } ;
    term    = unary , { ("*" | "/") , unary } ;
    unary   = [ "+" | "-" ] , unary | atom ;
    atom    = NUMBER | "inf" | "nan" | "(" , expr , ")" ;
    NUMBER  = decimal or hex-float literal ;

A unary sign folds into a literal, so ``-0`` is the negative-zero literal
while a bare ``0`` means +0; ``1-0`` stays a subtraction.  Leaves map
through the set interpretation of the active format and zero mode, inner
nodes combine intervals directly (intermediate results are never collapsed
back to single floats, which would silently drop width).

Subcommands: ``eval`` an expression, ``check`` a format against the
independent oracle and the directed-rounding conformance suite, ``report``
the special-operand identity table, ``flagdemo`` the rounding-flag scheme,
and a line-oriented ``repl``.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Union

from .fpformat import (
    BINARY64,
    EnumerationLimitError,
    FloatFormat,
    Fp,
    RoundingDirection,
    fraction_from_literal,
    parse_format,
)
from .interval import ExtInterval, OpKind, apply_op, negate
from .oracle import exhaustive_compare
from .roundflag import PreRoundedWord, apply_flagged_round, attach_exponent, recover_bounds
from .semantics import ZeroMode, extract_bound, interpret
from .harness import DEFAULT_SEED, deviation_report, run_theorem_suite

# -- abstract syntax ------------------------------------------------------------


class LitKind(Enum):
    NUMBER = "number"
    POS_ZERO = "+0"
    NEG_ZERO = "-0"
    POS_INF = "+inf"
    NEG_INF = "-inf"
    NAN = "nan"


@dataclass(frozen=True)
class Lit:
    kind: LitKind
    value: Optional[Fraction] = None  # set for NUMBER only


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: OpKind
    lhs: "Expr"
    rhs: "Expr"


Expr = Union[Lit, Neg, BinOp]


class ExprSyntaxError(ValueError):
    """Parse failure with the offset and the tokens that would have fit."""

    def __init__(self, pos: int, expected: tuple[str, ...]):
        self.pos = pos
        self.expected = expected
        super().__init__(f"syntax error at position {pos}: expected {' or '.join(expected)}")


class EvalError(ValueError):
    pass


# -- lexer ----------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>
        0[xX][0-9a-fA-F]+(?:\.[0-9a-fA-F]*)?(?:[pP][+-]?\d+)?
      | (?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?
    )
  | (?P<name>[a-zA-Z_]\w*)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "name" | one of "+-*/()" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExprSyntaxError(pos, ("number", "inf", "nan", "operator", "("))
        if m.lastgroup != "ws":
            kind = m.group("op") if m.lastgroup == "op" else m.lastgroup
            tokens.append(_Token(kind, m.group(m.lastgroup), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


# -- parser -----------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(tok.pos, ("+", "-", "*", "/", "end of input"))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek().kind in ("+", "-"):
            op = OpKind.ADD if self.advance().kind == "+" else OpKind.SUB
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek().kind in ("*", "/"):
            op = OpKind.MUL if self.advance().kind == "*" else OpKind.DIV
            e = BinOp(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind in ("+", "-"):
            self.advance()
            inner = self.unary()
            if tok.kind == "+":
                return inner
            return _negated(inner)
        return self.atom()

    def atom(self) -> Expr:
        tok = self.advance()
        if tok.kind == "number":
            q = fraction_from_literal(tok.text)
            if q == 0:
                return Lit(LitKind.POS_ZERO)
            return Lit(LitKind.NUMBER, q)
        if tok.kind == "name":
            if tok.text == "inf":
                return Lit(LitKind.POS_INF)
            if tok.text == "nan":
                return Lit(LitKind.NAN)
            raise ExprSyntaxError(tok.pos, ("inf", "nan", "number"))
        if tok.kind == "(":
            e = self.expr()
            closing = self.advance()
            if closing.kind != ")":
                raise ExprSyntaxError(closing.pos, (")",))
            return e
        raise ExprSyntaxError(tok.pos, ("number", "inf", "nan", "(", "-"))


def _negated(e: Expr) -> Expr:
    """Fold a unary minus into a literal; wrap anything else."""
    if isinstance(e, Lit):
        flip = {
            LitKind.POS_ZERO: Lit(LitKind.NEG_ZERO),
            LitKind.NEG_ZERO: Lit(LitKind.POS_ZERO),
            LitKind.POS_INF: Lit(LitKind.NEG_INF),
            LitKind.NEG_INF: Lit(LitKind.POS_INF),
            LitKind.NAN: Lit(LitKind.NAN),
        }
        if e.kind is LitKind.NUMBER:
            return Lit(LitKind.NUMBER, -e.value)
        return flip[e.kind]
    if isinstance(e, Neg):
        return e.operand
    return Neg(e)


def parse(text: str) -> Expr:
    """Parse an expression; raises ExprSyntaxError with position and the
    expected-token set."""
    return _Parser(text).parse()


# -- printing -----------------------------------------------------------------------


def _decimal_of(q: Fraction) -> str:
    """Exact decimal for fractions with 10-smooth denominators (every
    parseable literal); falls back to num/den otherwise."""
    den = q.denominator
    twos = (den & -den).bit_length() - 1
    rest = den >> twos
    fives = 0
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return f"{q.numerator}/{q.denominator}"
    k = max(twos, fives)
    digits = abs(q.numerator) * 10**k // den
    sign = "-" if q < 0 else ""
    if k == 0:
        return sign + str(digits)
    text = str(digits).rjust(k + 1, "0")
    return f"{sign}{text[:-k]}.{text[-k:]}"


_PREC = {OpKind.ADD: 1, OpKind.SUB: 1, OpKind.MUL: 2, OpKind.DIV: 2}


def unparse(e: Expr) -> str:
    """Render an expression; reparsing yields an identical tree."""
    return _unparse(e, 0, False)


def _unparse(e: Expr, parent_prec: int, is_right: bool) -> str:
    if isinstance(e, Lit):
        if e.kind is LitKind.NUMBER:
            return _decimal_of(e.value)
        return e.kind.value
    if isinstance(e, Neg):
        inner = _unparse(e.operand, 3, False)
        text = f"-{inner}"
        return f"({text})" if parent_prec >= 3 else text
    prec = _PREC[e.op]
    text = (
        f"{_unparse(e.lhs, prec, False)} {e.op.value} {_unparse(e.rhs, prec, True)}"
    )
    if prec < parent_prec or (prec == parent_prec and is_right):
        return f"({text})"
    return text


# -- evaluation ----------------------------------------------------------------------


def eval_expr(
    e: Expr,
    fmt: FloatFormat,
    mode: ZeroMode,
    warn: Optional[Callable[[str], None]] = None,
) -> ExtInterval:
    """Evaluate under the set semantics: leaves become their meaning as
    sets, inner nodes apply the interval operations.  Literals that the
    format cannot hold exactly are rounded to nearest with a warning."""
    if isinstance(e, Lit):
        return interpret(_literal_fp(e, fmt, warn), mode)
    if isinstance(e, Neg):
        return negate(eval_expr(e.operand, fmt, mode, warn))
    lhs = eval_expr(e.lhs, fmt, mode, warn)
    rhs = eval_expr(e.rhs, fmt, mode, warn)
    return apply_op(e.op, lhs, rhs)


def _literal_fp(e: Lit, fmt: FloatFormat, warn) -> Fp:
    if e.kind is LitKind.NUMBER:
        try:
            return Fp.from_exact(fmt, e.value)
        except ValueError:
            rounded = fmt.round(e.value, RoundingDirection.NEAREST)
            if warn is not None:
                warn(
                    f"literal {_decimal_of(e.value)} is not representable in "
                    f"{fmt.descriptor()}; rounded to nearest = {rounded}"
                )
            return rounded
    if e.kind is LitKind.POS_ZERO:
        return Fp.zero(fmt)
    if e.kind is LitKind.NEG_ZERO:
        return Fp.zero(fmt, negative=True)
    if e.kind is LitKind.POS_INF:
        return Fp.inf(fmt)
    if e.kind is LitKind.NEG_INF:
        return Fp.inf(fmt, negative=True)
    return Fp.nan(fmt)


# -- configuration ---------------------------------------------------------------------


def load_config(path: Optional[str]) -> dict[str, str]:
    """Plain key=value file with # comments; keys: format, mode, seed."""
    if path is None:
        return {}
    settings = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            settings[key.strip()] = value.strip()
    return settings


def _resolve(args, config: dict[str, str]):
    fmt_text = args.format or config.get("format", "b64")
    mode_text = getattr(args, "mode", None) or config.get("mode", "finite")
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = int(config.get("seed", DEFAULT_SEED))
    try:
        fmt = parse_format(fmt_text)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    try:
        mode = ZeroMode(mode_text)
    except ValueError:
        raise SystemExit(f"error: bad zero mode {mode_text!r} (finite or infinite)")
    return fmt, mode, seed


# -- subcommands -------------------------------------------------------------------------


def _cmd_eval(args, config) -> int:
    fmt, mode, _ = _resolve(args, config)
    try:
        tree = parse(args.expr)
        result = eval_expr(tree, fmt, mode, warn=lambda m: print(f"warning: {m}", file=sys.stderr))
    except (ExprSyntaxError, EvalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.round in ("down", "both"):
        print(f"down: {extract_bound(result, RoundingDirection.TO_NEG_INF)}")
    if args.round in ("up", "both"):
        print(f"up: {extract_bound(result, RoundingDirection.TO_POS_INF)}")
    if args.round is None:
        print(result)
    return 0


def _cmd_check(args, config) -> int:
    fmt, mode, seed = _resolve(args, config)
    failed = False
    try:
        mismatches = exhaustive_compare(fmt, mode)
        print(
            f"oracle: {fmt.descriptor()} {mode.value} zeros: "
            f"{'ok' if not mismatches else f'{len(mismatches)} mismatches'}"
        )
        for m in mismatches[:20]:
            print(f"  {m}")
        failed = failed or bool(mismatches)
    except EnumerationLimitError:
        print(f"oracle: skipped ({fmt.descriptor()} is too large to enumerate)")
    suite = run_theorem_suite(fmt, samples=args.samples, seed=seed)
    print(suite.summary())
    failed = failed or not suite.ok
    return 1 if failed else 0


def _cmd_report(args, config) -> int:
    fmt, _, _ = _resolve(args, config)
    rows = deviation_report(fmt)  # every catalog identity, both zero modes
    header = ("name", "pattern", "group", "mode", "expected", "operands", "ieee",
              "interval", "classification")
    table = [
        (r.name, r.pattern, r.group, r.mode.value, r.expr, r.operands, r.ieee,
         r.interval, r.classification.value)
        for r in rows
    ]
    if args.csv:
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(table)
        return 0
    widths = [max(len(row[i]) for row in [header] + table) for i in range(len(header))]
    for row in [header] + table:
        print("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return 0


def _cmd_flagdemo(args, config) -> int:
    fmt, _, _ = _resolve(args, config)
    try:
        word = PreRoundedWord.parse(args.word)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rounded = apply_flagged_round(word)
    print(f"word:     {word}   (exact value {word.value()})")
    print(f"rounded:  {rounded}   flag: {rounded.flag.value}")
    exponent = args.exp
    result = attach_exponent(rounded, exponent, fmt)
    lo, hi = recover_bounds(result, rounded.flag)
    true_value = word.value() * Fraction(2) ** exponent
    down = fmt.round(true_value, RoundingDirection.TO_NEG_INF)
    up = fmt.round(true_value, RoundingDirection.TO_POS_INF)
    print(f"placed at 2^{exponent} in {fmt.descriptor()}: {result}")
    print(f"recovered bounds: [{lo}, {hi}]")
    print(f"directed rounding of the exact value: [{down}, {up}]")
    return 0


def _cmd_repl(args, config) -> int:
    fmt, mode, _ = _resolve(args, config)
    round_sel = None
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            print(f"{fmt.descriptor()}:{mode.value}> ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            return 0
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(":"):
            parts = line[1:].split()
            try:
                if parts[0] in ("q", "quit", "exit"):
                    return 0
                if parts[0] == "format":
                    fmt = parse_format(parts[1])
                elif parts[0] == "mode":
                    mode = ZeroMode(parts[1])
                elif parts[0] == "round":
                    round_sel = None if parts[1] == "none" else parts[1]
                else:
                    print(f"error: unknown command :{parts[0]}")
            except (IndexError, ValueError) as exc:
                print(f"error: {exc}")
            continue
        try:
            tree = parse(line)
            result = eval_expr(tree, fmt, mode, warn=lambda m: print(f"warning: {m}"))
        except (ExprSyntaxError, EvalError, ValueError) as exc:
            print(f"error: {exc}")
            continue
        if round_sel in ("down", "both"):
            print(f"down: {extract_bound(result, RoundingDirection.TO_NEG_INF)}")
        if round_sel in ("up", "both"):
            print(f"up: {extract_bound(result, RoundingDirection.TO_POS_INF)}")
        if round_sel is None:
            print(result)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intervalfp",
        description="Total floating-point arithmetic over sets of reals.",
    )
    parser.add_argument("--config", help="key=value file with defaults (format, mode, seed)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate an expression to an interval")
    p_eval.add_argument("expr")
    p_eval.add_argument("--format", help="format descriptor, e.g. b64 or p3e-2:3")
    p_eval.add_argument("--mode", help="zero mode: finite or infinite")
    p_eval.add_argument("--round", choices=("up", "down", "both"),
                        help="print the directed bound(s) instead of the interval")
    p_eval.set_defaults(func=_cmd_eval)

    p_check = sub.add_parser(
        "check", help="run the oracle comparison and the conformance suite"
    )
    p_check.add_argument("--format", help="format descriptor")
    p_check.add_argument("--mode", help="zero mode")
    p_check.add_argument("--seed", type=int, help="seed for sampled suites")
    p_check.add_argument("--samples", type=int, default=100_000,
                         help="pair count for non-enumerable formats")
    p_check.set_defaults(func=_cmd_check)

    p_report = sub.add_parser("report", help="emit the special-operand identity table")
    p_report.add_argument("--format", help="format descriptor")
    p_report.add_argument("--csv", action="store_true", help="machine-readable output")
    p_report.set_defaults(func=_cmd_report)

    p_flag = sub.add_parser("flagdemo", help="demonstrate the rounding-flag scheme")
    p_flag.add_argument("word", help="pre-rounded word, e.g. 1.011|01")
    p_flag.add_argument("--format", help="format descriptor")
    p_flag.add_argument("--exp", type=int, default=0, help="binary exponent for placement")
    p_flag.set_defaults(func=_cmd_flagdemo)

    p_repl = sub.add_parser("repl", help="line-oriented read-eval loop")
    p_repl.add_argument("--format", help="format descriptor")
    p_repl.add_argument("--mode", help="zero mode")
    p_repl.set_defaults(func=_cmd_repl)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return args.func(args, config)


if __name__ == "__main__":
    sys.exit(main())
