"""Slow reference implementations used as differential-test oracles.

Everything here works on plain strings and favours being obviously right
over being fast.  ``original_wordpiece_word`` is the classic greedy
longest-match-first loop; it is quadratic in the word length and doubles
as the naive baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .chars import is_punctuation, is_whitespace
from .trie import Trie
from .vocab import Vocabulary


@dataclass(frozen=True)
class MinPopResult:
    landing: Optional[int]
    pops: list[int] = field(default_factory=list)


def longest_prefix_p(vocab: Vocabulary, w: str) -> Optional[str]:
    """Longest non-empty prefix of ``w`` in the vocabulary, or None.

    The suffix indicator itself never counts, and if ``w`` starts with the
    indicator so must the prefix.
    """
    si = vocab.suffix_indicator
    if w == si:
        return None
    needs_si = bool(si) and w.startswith(si)
    for k in range(len(w), 0, -1):
        p = w[:k]
        if p == si or (needs_si and not p.startswith(si)):
            continue
        if p in vocab:
            return p
    return None


def suffix_q(vocab: Vocabulary, w: str) -> str:
    p = longest_prefix_p(vocab, w)
    if p is None:
        raise ValueError(f"{w!r} has no vocabulary prefix")
    return vocab.suffix_indicator + w[len(p):]


def maxmatch_recursive(vocab: Vocabulary, w: str) -> list[int]:
    si = vocab.suffix_indicator
    if w == "" or w == si:
        return []
    p = longest_prefix_p(vocab, w)
    if p is None:
        return [vocab.unk_id]
    rest = maxmatch_recursive(vocab, si + w[len(p):])
    if rest == [vocab.unk_id]:
        return [vocab.unk_id]
    return [vocab.id_of[p]] + rest


def original_wordpiece_word(vocab: Vocabulary, w: str) -> list[int]:
    cap = vocab.max_word_length
    if cap is not None and len(w) > cap:
        return [vocab.unk_id]
    si = vocab.suffix_indicator
    out = []
    start = 0
    while start < len(w):
        end = len(w)
        cur = None
        while start < end:
            sub = w[start:end]
            if start > 0:
                sub = si + sub
            if sub in vocab:
                cur = sub
                break
            end -= 1
        if cur is None:
            return [vocab.unk_id]
        out.append(vocab.id_of[cur])
        start = end
    return out


def augmented_trie(trie: Trie, vocab: Vocabulary) -> Trie:
    """Copy of ``trie`` with two extra non-vocabulary nodes spelling the
    boundary char and the suffix indicator followed by it."""
    aug = trie.copy()
    aug.insert(vocab.boundary_char)
    aug.insert(vocab.boundary_char, start=aug.r_sharp)
    return aug


def minpop_g(vocab: Vocabulary, trie: Trie, w: str) -> MinPopResult:
    v = trie.find(w)
    if v is not None:
        return MinPopResult(v, [])
    p = longest_prefix_p(vocab, w)
    if p is None:
        return MinPopResult(None, [])
    sub = minpop_g(vocab, trie, vocab.suffix_indicator + w[len(p):])
    return MinPopResult(sub.landing, [vocab.id_of[p]] + sub.pops)


def onestep_h(vocab: Vocabulary, trie: Trie, u: Optional[int], c: str) -> MinPopResult:
    if u is None:
        return MinPopResult(None, [])
    return minpop_g(vocab, trie, trie.node_string(u) + c)


def maxmatch_via_minpop(vocab: Vocabulary, aug: Trie, w: str) -> list[int]:
    res = minpop_g(vocab, aug, w + vocab.boundary_char)
    return [vocab.unk_id] if res.landing is None else res.pops


def pretokenize(text: str) -> list[str]:
    """Split on whitespace, then split every punctuation char into its own word."""
    # str.split() has a wider notion of whitespace than the classifier
    words, cur = [], []
    for ch in text:
        if is_whitespace(ch) or is_punctuation(ch):
            if cur:
                words.append("".join(cur))
                cur = []
            if not is_whitespace(ch):
                words.append(ch)
        else:
            cur.append(ch)
    if cur:
        words.append("".join(cur))
    return words


def e2e_reference(vocab: Vocabulary, text: str) -> list[int]:
    out = []
    for word in pretokenize(text):
        out.extend(original_wordpiece_word(vocab, word))
    return out
