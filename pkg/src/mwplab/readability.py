"""Readability scoring for question text.

Flesch-Kincaid Grade Level with the classical coefficients
0.39 * (words/sentences) + 11.8 * (syllables/words) - 15.59. Scores can be
negative (very short words and sentences) and a score above 8 marks a
question as beyond the K-8 reading band.

Syllables use a fixed heuristic so fixtures are stable: per word, lowercase
and strip non-letters, count maximal vowel-group runs over a/e/i/o/u/y,
subtract one for a trailing "e" not preceded by "l" when more than one run
was found, floor at one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

Tokenizer = Callable[[str], list[str]]

FKGL_WORDS_PER_SENTENCE = 0.39
FKGL_SYLLABLES_PER_WORD = 11.8
FKGL_OFFSET = 15.59

#: Reading level above which a question is out of band for K-8.
GRADE_CEILING = 8.0

_WORD_RE = re.compile(r"[0-9A-Za-z]+")
_VOWEL_RUN_RE = re.compile(r"[aeiouy]+")

# Dots that do not terminate a sentence: decimals and common abbreviations.
_ABBREVIATIONS = {
    "mr", "mrs", "ms", "dr", "st", "jr", "sr", "prof", "vs", "etc", "eg",
    "ie", "no", "dept", "approx", "inc",
}


class EmptyTextError(ValueError):
    pass


@dataclass(frozen=True)
class TextBreakdown:
    sentences: int
    words: int
    syllables: int


@dataclass(frozen=True)
class ReadabilityReport:
    fkgl: float
    breakdown: TextBreakdown
    token_length: int

    @property
    def beyond_grade_8(self) -> bool:
        return self.fkgl > GRADE_CEILING


def whitespace_tokenizer(text: str) -> list[str]:
    return text.split()


def count_syllables(word: str) -> int:
    letters = re.sub(r"[^a-z]", "", word.lower())
    if not letters:
        return 1
    runs = _VOWEL_RUN_RE.findall(letters)
    count = len(runs)
    if count > 1 and letters.endswith("e") and not letters.endswith("le"):
        count -= 1
    return max(count, 1)


def _split_sentences(text: str) -> list[str]:
    sentences: list[str] = []
    current: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        current.append(ch)
        if ch in ".!?":
            if ch == ".":
                prev = text[i - 1] if i > 0 else ""
                nxt = text[i + 1] if i + 1 < n else ""
                if prev.isdigit() and nxt.isdigit():  # decimal point
                    i += 1
                    continue
                last_word = _WORD_RE.findall("".join(current))
                if last_word and last_word[-1].lower() in _ABBREVIATIONS:
                    i += 1
                    continue
            # consume any run of terminal punctuation ("?!", "...")
            while i + 1 < n and text[i + 1] in ".!?":
                i += 1
                current.append(text[i])
            sentence = "".join(current).strip()
            if sentence:
                sentences.append(sentence)
            current = []
        i += 1
    tail = "".join(current).strip()
    if tail:
        sentences.append(tail)
    return sentences


def analyze_text(text: str) -> TextBreakdown:
    """Count sentences, words, and syllables. Raises EmptyTextError when the
    text is blank."""
    if not text.strip():
        raise EmptyTextError("cannot analyze empty text")
    sentences = [s for s in _split_sentences(text) if _WORD_RE.search(s)]
    if not sentences:
        sentences = [text.strip()]
    words = _WORD_RE.findall(text)
    syllables = sum(count_syllables(word) for word in words)
    return TextBreakdown(sentences=len(sentences), words=len(words),
                         syllables=syllables)


def fkgl(breakdown: TextBreakdown) -> float:
    if breakdown.words < 1 or breakdown.sentences < 1:
        raise ValueError("fkgl needs at least one word and one sentence")
    return (FKGL_WORDS_PER_SENTENCE * breakdown.words / breakdown.sentences
            + FKGL_SYLLABLES_PER_WORD * breakdown.syllables / breakdown.words
            - FKGL_OFFSET)


def token_length(text: str, tokenizer: Tokenizer = whitespace_tokenizer) -> int:
    """Token count under the given tokenizer (whitespace by default; inject
    a model tokenizer to reproduce token statistics computed elsewhere)."""
    return len(tokenizer(text))


def analyze(text: str, tokenizer: Tokenizer = whitespace_tokenizer) -> ReadabilityReport:
    breakdown = analyze_text(text)
    return ReadabilityReport(fkgl=fkgl(breakdown), breakdown=breakdown,
                             token_length=token_length(text, tokenizer))
