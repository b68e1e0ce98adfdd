"""Synthetic vocabularies and corpora for benchmarks."""

from __future__ import annotations

import string

import numpy as np


def adversarial_vocab(depth: int = 16, suffix_indicator: str = "##") -> list[str]:
    """``a``, ``##a`` plus dead-end chains ``a^k b`` / ``##a^k b``.

    On runs of ``a`` every greedy lookup walks up to ``depth + 1`` characters
    before failing, and the failure-link matcher crosses long link chains.
    """
    toks = ["[UNK]", "a", suffix_indicator + "a", "b", suffix_indicator + "b"]
    for k in range(1, depth + 1):
        toks.append("a" * k + "b")
        toks.append(suffix_indicator + "a" * k + "b")
    return toks


def adversarial_words(n: int, count: int, seed: int = 0, b_rate: float = 0.02) -> list[str]:
    """``count`` words of exactly ``n`` characters, mostly ``a``."""
    rng = np.random.default_rng(seed)
    pick = rng.random((count, n)) < b_rate
    return ["".join("b" if x else "a" for x in row) for row in pick]


# rough English letter frequencies
_LETTER_WEIGHTS = np.array([
    8.2, 1.5, 2.8, 4.3, 12.7, 2.2, 2.0, 6.1, 7.0, 0.15, 0.77, 4.0, 2.4,
    6.7, 7.5, 1.9, 0.095, 6.0, 6.3, 9.1, 2.8, 0.98, 2.4, 0.15, 2.0, 0.074])
_LETTER_P = _LETTER_WEIGHTS / _LETTER_WEIGHTS.sum()
_LETTERS = np.array(list(string.ascii_lowercase))


def _random_strings(rng, count: int, lo: int, hi: int) -> list[str]:
    lens = rng.integers(lo, hi + 1, size=count)
    return ["".join(rng.choice(_LETTERS, size=k, p=_LETTER_P)) for k in lens]


def natural_vocab(size: int = 4000, seed: int = 0, suffix_indicator: str = "##") -> list[str]:
    """Letters, suffix letters and random letter strings of length 2-6."""
    rng = np.random.default_rng(seed)
    toks = ["[UNK]"] + list(string.ascii_lowercase)
    toks += [suffix_indicator + c for c in string.ascii_lowercase]
    seen = set(toks)
    while len(toks) < size:
        for s in _random_strings(rng, size, 2, 6):
            t = suffix_indicator + s if rng.random() < 0.5 else s
            if t not in seen:
                seen.add(t)
                toks.append(t)
                if len(toks) >= size:
                    break
    return toks


def natural_words(count: int, seed: int = 1, mean_len: float = 4.0) -> list[str]:
    """Short words, length 1 + Poisson(mean_len - 1)."""
    rng = np.random.default_rng(seed)
    lens = 1 + rng.poisson(mean_len - 1, size=count)
    return ["".join(rng.choice(_LETTERS, size=k, p=_LETTER_P)) for k in lens]


def texts(count: int, alphabet: str, max_len: int, seed: int = 0) -> list[str]:
    """Uniform random strings over ``alphabet`` with length 0..max_len."""
    rng = np.random.default_rng(seed)
    chars = np.array(list(alphabet))
    lens = rng.integers(0, max_len + 1, size=count)
    return ["".join(rng.choice(chars, size=k)) for k in lens]
