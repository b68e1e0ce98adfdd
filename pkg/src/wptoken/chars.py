"""Punctuation and whitespace classification (BERT BasicTokenizer conventions)."""

from __future__ import annotations

import unicodedata
from functools import lru_cache

import numpy as np

WORD, SPACE, PUNCT = 0, 1, 2

ASCII_PUNCTUATION = frozenset(
    chr(c) for c in [*range(33, 48), *range(58, 65), *range(91, 97), *range(123, 127)]
)


def is_punctuation(ch: str) -> bool:
    return ch in ASCII_PUNCTUATION or unicodedata.category(ch).startswith("P")


def is_whitespace(ch: str) -> bool:
    return ch in " \t\n\r" or unicodedata.category(ch) == "Zs"


def char_class(ch: str) -> int:
    if is_whitespace(ch):
        return SPACE
    if is_punctuation(ch):
        return PUNCT
    return WORD


@lru_cache(maxsize=1)
def class_table() -> np.ndarray:
    """WORD/SPACE/PUNCT for every code point, built once (~0.5 s)."""
    table = np.zeros(0x110000, dtype=np.int8)
    for cp in range(0x110000):
        cat = unicodedata.category(chr(cp))
        if cat == "Zs":
            table[cp] = SPACE
        elif cat[0] == "P":
            table[cp] = PUNCT
    for ch in " \t\n\r":
        table[ord(ch)] = SPACE
    for ch in ASCII_PUNCTUATION:
        table[ord(ch)] = PUNCT
    return table


def classify(codepoints: np.ndarray) -> np.ndarray:
    return class_table()[codepoints]


def e2e_punctuation_set(tokens) -> frozenset[str]:
    """Punctuation characters that get a precomputed leaf: ASCII punctuation
    plus every punctuation character occurring in ``tokens``."""
    seen = set(ASCII_PUNCTUATION)
    for tok in tokens:
        seen.update(ch for ch in tok if is_punctuation(ch))
    return frozenset(seen)
