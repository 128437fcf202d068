"""Expression language and the command-line surface."""

import io
from fractions import Fraction as F

import pytest

from intervalfp import OpKind
from intervalfp.cli import (
    BinOp,
    ExprSyntaxError,
    Lit,
    LitKind,
    Neg,
    eval_expr,
    main,
    parse,
    unparse,
)
from intervalfp import ZeroMode, parse_format, parse_interval


def lit(v):
    if v == 0:
        return Lit(LitKind.POS_ZERO)
    return Lit(LitKind.NUMBER, F(v))


# -- parsing ---------------------------------------------------------------------


def test_parse_example_tree():
    got = parse("1/3 + 2*inf")
    want = BinOp(
        OpKind.ADD,
        BinOp(OpKind.DIV, lit(1), lit(3)),
        BinOp(OpKind.MUL, lit(2), Lit(LitKind.POS_INF)),
    )
    assert got == want


def test_parse_signed_zero_literals():
    got = parse("(-0)/( +0)")
    assert got == BinOp(OpKind.DIV, Lit(LitKind.NEG_ZERO), Lit(LitKind.POS_ZERO))
    # a bare 0 means +0, and 1-0 stays a subtraction
    assert parse("0") == Lit(LitKind.POS_ZERO)
    assert parse("1-0") == BinOp(OpKind.SUB, lit(1), Lit(LitKind.POS_ZERO))


def test_parse_error_position_and_expectations():
    with pytest.raises(ExprSyntaxError) as err:
        parse("1 +")
    assert err.value.pos == 3
    assert err.value.expected
    with pytest.raises(ExprSyntaxError) as err:
        parse("(1 + 2")
    assert err.value.pos == 6
    assert ")" in err.value.expected
    with pytest.raises(ExprSyntaxError):
        parse("1 $ 2")
    with pytest.raises(ExprSyntaxError):
        parse("foo + 1")


def test_precedence_and_associativity():
    assert parse("1-2-3") == BinOp(OpKind.SUB, BinOp(OpKind.SUB, lit(1), lit(2)), lit(3))
    assert parse("2*3+4") == BinOp(OpKind.ADD, BinOp(OpKind.MUL, lit(2), lit(3)), lit(4))
    assert parse("2+3*4") == BinOp(OpKind.ADD, lit(2), BinOp(OpKind.MUL, lit(3), lit(4)))
    assert parse("2*(3+4)") == BinOp(OpKind.MUL, lit(2), BinOp(OpKind.ADD, lit(3), lit(4)))


def test_unary_minus_folds_into_literals():
    assert parse("-3") == Lit(LitKind.NUMBER, F(-3))
    assert parse("-inf") == Lit(LitKind.NEG_INF)
    assert parse("--3") == lit(3)
    assert parse("-(1+2)") == Neg(BinOp(OpKind.ADD, lit(1), lit(2)))
    assert parse("-2*3") == BinOp(OpKind.MUL, Lit(LitKind.NUMBER, F(-2)), lit(3))


def test_hex_literals():
    assert parse("0x1.8p+1") == Lit(LitKind.NUMBER, F(3))


@pytest.mark.parametrize(
    "text",
    [
        "1/3 + 2*inf",
        "(-0)/(+0)",
        "1 - 2 - 3",
        "-(1 + 2) * 4",
        "2 * (3 + 4) / (5 - 6)",
        "-0 - -0",
        "0.5 * inf - nan",
        "1.25e2 / 0x1.8p+1",
    ],
)
def test_unparse_round_trip(text):
    tree = parse(text)
    assert parse(unparse(tree)) == tree


# -- evaluation --------------------------------------------------------------------


def test_eval_examples(toy):
    assert str(eval_expr(parse("inf - inf"), toy, ZeroMode.FINITE)) == "(-inf, +inf)"
    assert str(eval_expr(parse("+0 / +0"), toy, ZeroMode.INFINITE)) == "(-inf, +inf)"
    assert str(eval_expr(parse("2 + 3"), toy, ZeroMode.FINITE)) == "[5, 5]"
    assert str(eval_expr(parse("1/0"), toy, ZeroMode.FINITE)) == "[14, +inf)"


def test_eval_single_op_matches_fp_interval_op(toy):
    from intervalfp import Fp, fp_interval_op

    cases = [
        ("2 * inf", Fp.from_exact(toy, 2), Fp.inf(toy), OpKind.MUL),
        ("-0 + 0", Fp.zero(toy, True), Fp.zero(toy), OpKind.ADD),
        ("1 / 3", Fp.from_exact(toy, 1), Fp.from_exact(toy, 3), OpKind.DIV),
        ("inf - inf", Fp.inf(toy), Fp.inf(toy), OpKind.SUB),
    ]
    for text, a, b, op in cases:
        for mode in ZeroMode:
            assert eval_expr(parse(text), toy, mode) == fp_interval_op(a, b, op, mode)


def test_eval_keeps_intermediate_width(toy):
    # (1/3)*3 is wider than [1,1]: the quotient's width must not collapse
    out = eval_expr(parse("(1/3) * 3"), toy, ZeroMode.FINITE)
    assert out == parse_interval("[0.9375, 1.25]", toy)


def test_eval_literal_rounding_warns(toy):
    warnings = []
    out = eval_expr(parse("0.3"), toy, ZeroMode.FINITE, warn=warnings.append)
    assert out == parse_interval("[0.3125, 0.3125]", toy)
    assert len(warnings) == 1 and "0.3" in warnings[0]


def test_eval_nan_literal(toy):
    with pytest.raises(Exception):
        eval_expr(parse("nan + 1"), toy, ZeroMode.FINITE)
    assert eval_expr(parse("nan + 1"), toy, ZeroMode.INFINITE).is_empty


# -- the command-line surface ----------------------------------------------------------


def test_cmd_eval(capsys):
    assert main(["eval", "1/0", "--mode", "finite", "--format", "p3e-2:3"]) == 0
    assert capsys.readouterr().out.strip() == "[14, +inf)"
    assert main(["eval", "1/3", "--format", "p3e-2:3", "--round", "both"]) == 0
    out = capsys.readouterr().out
    assert "down: 0.3125" in out and "up: 0.375" in out


def test_cmd_eval_syntax_error(capsys):
    assert main(["eval", "1 +", "--format", "p3e-2:3"]) == 1
    assert "position 3" in capsys.readouterr().err


def test_cmd_check_passes(capsys):
    assert main(["check", "--format", "p2e0:0ns", "--mode", "finite"]) == 0
    out = capsys.readouterr().out
    assert "oracle" in out and "ok" in out


def test_cmd_check_infinite_mode(capsys):
    assert main(["check", "--format", "p2e0:0ns", "--mode", "infinite"]) == 0


def test_cmd_report_contains_all_identities(capsys):
    assert main(["report", "--format", "p3e-2:3"]) == 0
    out = capsys.readouterr().out
    from intervalfp import identity_catalog

    for rec in identity_catalog():
        assert rec.name in out


def test_cmd_report_csv(capsys):
    assert main(["report", "--format", "p3e-2:3", "--csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 24  # header + 23 identities
    assert lines[0].startswith("name,")


def test_cmd_flagdemo(capsys):
    assert main(["flagdemo", "1.011|11", "--format", "p4e-3:3"]) == 0
    out = capsys.readouterr().out
    assert "rounded-up" in out and "recovered bounds: [1.375, 1.5]" in out
    assert main(["flagdemo", "not-a-word"]) == 1


def test_cmd_repl(capsys, monkeypatch):
    monkeypatch.setattr(
        "sys.stdin", io.StringIO("1/3\n:round both\n1/3\n:format b64\n:mode infinite\n2/0\n:quit\n")
    )
    assert main(["repl", "--format", "p3e-2:3"]) == 0
    out = capsys.readouterr().out
    assert "[0.3125, 0.375]" in out
    assert "down: 0.3125" in out
    assert "up: nan" in out  # 2/0 with exact zeros is empty


def test_unknown_command_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["eval", "1", "--round", "sideways"])
    assert err.value.code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "settings.cfg"
    cfg.write_text("# defaults\nformat = p3e-2:3\nmode = infinite\nseed = 7\n")
    assert main(["--config", str(cfg), "eval", "2/0"]) == 0
    assert capsys.readouterr().out.strip() == "empty"
    # explicit flags override the file
    assert main(["--config", str(cfg), "eval", "2/0", "--mode", "finite"]) == 0
    assert capsys.readouterr().out.strip() == "[14, +inf)"


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("format p3e-2:3\n")
    assert main(["--config", str(bad), "eval", "1"]) == 1
    assert "key=value" in capsys.readouterr().err
