"""Randomized property suites for the interpreter.

The acceptance suite runs these same properties at 10,000 cases; here a
smaller count keeps the default test run quick.
"""

from __future__ import annotations

import random

import pytest

from mwplab.potlang import (
    ErrorKind,
    PotError,
    evaluate,
    parse,
    profile_operations,
    to_source,
    uses_only,
    OperationProfile,
)
from randprog import random_program

N_CASES = 500


def check_case(seed: int) -> None:
    source, expected = random_program(seed, with_trailing=seed % 7 == 0)
    program = parse(source)
    value = evaluate(program)
    assert value.value == expected, f"seed {seed}"
    # determinism: a fresh parse/evaluate renders byte-identically
    again = evaluate(parse(source))
    assert str(again) == str(value)
    # round trip: pretty-printed source reparses to an equal AST
    printed = to_source(program)
    assert parse(printed).statements == program.statements


def test_random_programs_match_oracle():
    for seed in range(N_CASES):
        check_case(seed)


def test_integer_only_programs_stay_integral():
    # without true division, every floordiv/mod result has denominator 1
    for seed in range(200):
        source, expected = random_program(seed * 31 + 7, allow_negative_pow=False)
        if "/" in source.replace("//", "") or "." in source:
            continue
        assert expected.denominator == 1
        assert evaluate(parse(source)).is_integer


def test_division_by_zero_is_always_reported():
    for seed in range(200):
        rng = random.Random(seed)
        op = rng.choice(["/", "//", "%"])
        zero = rng.choice(["0", "(2 - 2)", "(0 * 5)"])
        src = f"def solution():\n    x = {rng.randint(1, 99)}\n    return x {op} {zero}\n"
        with pytest.raises(PotError) as exc:
            evaluate(parse(src))
        assert exc.value.kind == ErrorKind.DIVISION_BY_ZERO


def test_unsupported_constructs_are_always_rejected():
    bad_lines = [
        "for i in range(3):",
        "while True:",
        "if x > 1:",
        "x = len(items)",
        "x = 'text'",
        "x = [1]",
        "import math",
        "x = y if z else w",
    ]
    for seed in range(200):
        rng = random.Random(seed)
        source, _ = random_program(seed)
        lines = source.splitlines()
        pos = rng.randrange(1, len(lines))
        lines.insert(pos, "    " + rng.choice(bad_lines))
        with pytest.raises(PotError) as exc:
            evaluate(parse("\n".join(lines) + "\n"))
        assert exc.value.kind == ErrorKind.UNSUPPORTED_CONSTRUCT


def test_addition_flag_is_monotone():
    # wrapping the returned expression in "(...) + 0" never clears addition
    for seed in range(100):
        source, _ = random_program(seed)
        program = parse(source)
        base = profile_operations(program, "question text")
        padded = source.replace("    return ", "    return 0 + (", 1)
        padded = padded.rstrip("\n") + ")\n" if "return 0 + (" in padded else padded
        grown = profile_operations(parse(padded), "question text")
        assert grown.addition
        for flag in ("subtraction", "multiplication", "division"):
            assert getattr(grown, flag) == getattr(base, flag)


def test_uses_only_implies_single_operator_flag():
    for seed in range(200):
        rng = random.Random(seed)
        profile = OperationProfile(
            addition=rng.random() < 0.5,
            subtraction=rng.random() < 0.5,
            multiplication=rng.random() < 0.5,
            division=rng.random() < 0.5,
            fractions=rng.random() < 0.5,
            decimals=rng.random() < 0.5,
        )
        for op in ("addition", "subtraction", "multiplication", "division"):
            if uses_only(profile, op):
                operator_count = sum([profile.addition, profile.subtraction,
                                      profile.multiplication, profile.division])
                assert operator_count == 1
