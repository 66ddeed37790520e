from __future__ import annotations

from fractions import Fraction

import pytest

from mwplab import potlang
from mwplab.potlang import (
    Assignment,
    Comment,
    ErrorKind,
    PotError,
    Return,
    evaluate,
    execute_source,
    parse,
    run,
    to_source,
)
from conftest import SAMPLE_ANSWERS

MINIMAL = "def solution():\n    return 0\n"


def expect_error(source: str, kind: ErrorKind):
    with pytest.raises(PotError) as exc:
        evaluate(parse(source))
    assert exc.value.kind == kind
    return exc.value


class TestParse:
    def test_minimal_program(self):
        program = parse(MINIMAL)
        assert len(program.statements) == 1
        assert isinstance(program.statements[0], Return)

    def test_sample_corpus_structure(self, sample_problems):
        superman = parse(sample_problems[0]["solution_source"])
        kinds = [type(s) for s in superman.statements]
        assert kinds.count(Assignment) == 5
        assert kinds.count(Return) == 1
        assert isinstance(superman.statements[-1], Return)
        assert kinds.count(Comment) == 5

    def test_leading_prose_is_tolerated(self):
        program = parse("Sure, here is a problem.\n\n" + MINIMAL)
        assert isinstance(program.statements[0], Return)

    def test_trailing_lines_are_captured_not_parsed(self):
        src = MINIMAL + "print(solution())\nThis text is not even Python.\n"
        program = parse(src)
        assert program.trailing_ignored == ["print(solution())",
                                            "This text is not even Python."]

    def test_continuation_inside_parens(self):
        src = ("def solution():\n"
               "    result = (1 +\n"
               "        2 + 3)\n"
               "    return result\n")
        assert str(evaluate(parse(src))) == "6"

    def test_no_solution_function(self):
        err = expect_error("x = 1\nreturn x\n", ErrorKind.NO_SOLUTION_FUNCTION)
        assert "def solution()" in err.message

    def test_wrong_function_name_is_not_a_header(self):
        expect_error("def answer():\n    return 1\n", ErrorKind.NO_SOLUTION_FUNCTION)

    def test_missing_return(self):
        expect_error("def solution():\n    x = 1\n", ErrorKind.MISSING_RETURN)
        expect_error("def solution():\n", ErrorKind.MISSING_RETURN)

    def test_statement_after_return(self):
        src = "def solution():\n    return 1\n    x = 2\n"
        expect_error(src, ErrorKind.PARSE_ERROR)

    @pytest.mark.parametrize("body", [
        "for i in range(3):",
        "while x:",
        "if x:",
        "import math",
        "x = f(3)",
        "print(3)",
        "x = 'hello'",
        "x = [1, 2]",
        "x = {1: 2}",
        "x = y == z",
    ])
    def test_unsupported_constructs(self, body):
        expect_error(f"def solution():\n    {body}\n    return 0\n",
                     ErrorKind.UNSUPPORTED_CONSTRUCT)

    @pytest.mark.parametrize("body", [
        "x = = 3",
        "x 3",
        "x = 3 +",
        "x = (3",
        "return",
    ])
    def test_malformed_statements(self, body):
        expect_error(f"def solution():\n    {body}\n    return 0\n",
                     ErrorKind.PARSE_ERROR)

    def test_lex_error_on_alien_character(self):
        expect_error("def solution():\n    x = 3 $ 4\n    return x\n",
                     ErrorKind.LEX_ERROR)

    def test_error_carries_location(self):
        err = expect_error("def solution():\n    x = 1\n    y = z + 1\n    return y\n",
                           ErrorKind.UNDEFINED_VARIABLE)
        assert err.line == 3


class TestEvaluate:
    def test_sample_corpus_oracle_values(self, sample_problems):
        for record in sample_problems:
            value = evaluate(parse(record["solution_source"]))
            assert str(value) == SAMPLE_ANSWERS[record["id"]], record["id"]

    def test_minimal(self):
        assert str(evaluate(parse(MINIMAL))) == "0"

    @pytest.mark.parametrize("expr,expected", [
        ("2 + 3 * 4", "14"),
        ("(2 + 3) * 4", "20"),
        ("2 ** 3 ** 2", "512"),
        ("-2 ** 2", "-4"),
        ("7 // 2", "3"),
        ("-7 // 2", "-4"),
        ("7 % 3", "1"),
        ("-7 % 3", "2"),
        ("1 / 8", "0.125"),
        ("2 ** -2", "0.25"),
        ("10 - 2 - 3", "5"),
        ("1.5 * 2", "3"),
        ("100 * 1.1", "110"),
    ])
    def test_arithmetic(self, expr, expected):
        assert str(evaluate(parse(f"def solution():\n    return {expr}\n"))) == expected

    @pytest.mark.parametrize("expr,kind", [
        ("1 / 0", ErrorKind.DIVISION_BY_ZERO),
        ("1 // 0", ErrorKind.DIVISION_BY_ZERO),
        ("1 % 0", ErrorKind.DIVISION_BY_ZERO),
        ("1 / (2 - 2)", ErrorKind.DIVISION_BY_ZERO),
        ("0 ** -1", ErrorKind.DIVISION_BY_ZERO),
        ("2 ** 0.5", ErrorKind.NON_INTEGER_EXPONENT),
        ("2 ** (1 / 3)", ErrorKind.NON_INTEGER_EXPONENT),
    ])
    def test_arithmetic_errors(self, expr, kind):
        expect_error(f"def solution():\n    return {expr}\n", kind)

    def test_undefined_variable(self):
        expect_error("def solution():\n    return missing\n",
                     ErrorKind.UNDEFINED_VARIABLE)

    def test_environment_is_sequential(self):
        src = ("def solution():\n"
               "    x = 2\n"
               "    x = x + 3\n"
               "    return x\n")
        assert str(evaluate(parse(src))) == "5"

    def test_floordiv_and_mod_results_are_integral(self):
        src = "def solution():\n    return 22 // 7 + 22 % 7\n"
        execution = run(parse(src))
        assert execution.result.is_integer
        assert not execution.saw_non_integer


class TestRendering:
    @pytest.mark.parametrize("value,text", [
        (Fraction(4100), "4100"),
        (Fraction(-3), "-3"),
        (Fraction(1, 4), "0.25"),
        (Fraction(-1, 4), "-0.25"),
        (Fraction(1, 3), "0.333333333333"),
        (Fraction(2, 3), "0.666666666667"),
        (Fraction(5, 2), "2.5"),
        (Fraction(10**13 + 1, 10**13), "1"),
        # round-half-even at the 12th digit: .5 ties go to the even neighbour
        (Fraction(25, 2 * 10**12), "0.000000000012"),
        (Fraction(35, 2 * 10**12), "0.000000000018"),
    ])
    def test_render(self, value, text):
        assert potlang.render_rational(value) == text


class TestPrettyPrint:
    def test_round_trip_on_sample_corpus(self, sample_problems):
        for record in sample_problems:
            program = parse(record["solution_source"])
            printed = to_source(program)
            reparsed = parse(printed)
            assert reparsed.statements == program.statements, record["id"]
            assert str(evaluate(reparsed)) == SAMPLE_ANSWERS[record["id"]]

    def test_layout_has_comment_above_assignment(self):
        src = ("def solution():\n"
               "    #two apples\n"
               "    apples = 2\n"
               "    return apples\n")
        assert to_source(parse(src)) == src

    def test_decimal_literal_flag_survives(self):
        src = "def solution():\n    x = 2.0\n    return x * 1.5\n"
        assert to_source(parse(src)) == src


class TestExecuteSource:
    def test_ok(self):
        outcome = execute_source(MINIMAL)
        assert outcome.ok and outcome.answer == "0"

    def test_error_mapped_to_kind(self):
        outcome = execute_source("def solution():\n    return 1 / 0\n")
        assert not outcome.ok
        assert outcome.status == "division_by_zero"
        assert outcome.answer is None
