import itertools

import numpy as np
import pytest

from support import sample_vocab
from wptoken import kernels
from wptoken.matcher import (Batch, build_model, match_loop, token_strings, tokenize_word,
                             tokenize_word_fst, tokenize_word_naive, tokenize_words, word_stats)
from wptoken.oracle import maxmatch_recursive, original_wordpiece_word
from wptoken.vocab import VocabConfig, from_tokens

BACKENDS = kernels.available_backends()


@pytest.fixture(scope="module")
def sample():
    return build_model(sample_vocab(), fst=True)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("s,tokens,landing,stop", [
    ("abcdz ", ["a", "##b", "##c", "##dz"], "##", 5),
    ("abcd ", ["a", "##b", "##c"], "##d", 4),
    (" ", [], "", 0),
])
def test_match_loop_examples(sample, backend, s, tokens, landing, stop):
    toks, u, i, _ = match_loop(sample, s, 0, backend)
    assert token_strings(sample, toks) == tokens
    assert sample.trie.node_string(u) == landing and i == stop


def test_match_loop_stops_inside_word(sample):
    _, _, i, _ = match_loop(sample, "abcz ")
    assert i == 3


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("w,want", [
    ("abcdz", ["a", "##b", "##c", "##dz"]),
    ("abcz", ["[UNK]"]),
    ("abcd", ["[UNK]"]),
    ("##bc", ["##b", "##c"]),
    ("abcdx", ["abcdx"]),
    ("", []),
    ("##", ["[UNK]"]),
    ("z", ["[UNK]"]),
    ("aé", ["[UNK]"]),
])
def test_word_examples(sample, backend, w, want):
    for fn in (tokenize_word, tokenize_word_fst, tokenize_word_naive):
        assert token_strings(sample, fn(sample, w, backend)) == want


def test_indicator_word_follows_greedy_loop():
    v = from_tokens(["##", "a"])
    m = build_model(v, fst=True)
    assert tokenize_word(m, "##") == original_wordpiece_word(v, "##") == [0]
    assert tokenize_word_fst(m, "##") == [0]


def test_empty_indicator():
    v = from_tokens(["ab", "b", "a"], VocabConfig(suffix_indicator=""))
    m = build_model(v, fst=True)
    for w in ["ab", "ba", "abb", "", "c", "aab"]:
        want = original_wordpiece_word(v, w)
        assert tokenize_word(m, w) == want == tokenize_word_fst(m, w) == tokenize_word_naive(m, w)


def test_word_cap():
    v = from_tokens(["a", "##a"], VocabConfig(max_word_length=4))
    m = build_model(v, fst=True)
    for engine in ("linmax", "fst", "naive"):
        got = tokenize_words(m, ["aaaa", "aaaaa"], engine)
        assert got == [[0, 1, 1, 1], [v.unk_id]]


def test_boundary_char_in_word_rejected(sample):
    with pytest.raises(ValueError):
        Batch.from_words(sample, ["a b"])


def test_custom_boundary_char():
    v = from_tokens(["a b", "##c"], VocabConfig(boundary_char="|"))
    m = build_model(v)
    assert tokenize_word(m, "a bc") == [0, 1]


POOL = ["a", "#a", "a#", "##a", "##b#", "##c", "b#c", "###", "##a#b", "c"]


def _words(alphabet, n):
    return ["".join(p) for k in range(n + 1) for p in itertools.product(alphabet, repeat=k)]


def _respell(vocab, ids, w):
    si = vocab.suffix_indicator
    toks = [vocab.tokens[i] for i in ids]
    first = toks[0]
    return first + "".join(t[len(si):] if t.startswith(si) else t for t in toks[1:])


@pytest.mark.slow
def test_exhaustive_grid_with_hash_alphabet():
    words = _words("abc#", 6)
    mismatches = 0
    for k in range(1, 4):
        for combo in itertools.combinations(POOL, k):
            v = from_tokens(combo)
            m = build_model(v, fst=True)
            lin = tokenize_words(m, words, "linmax")
            fst = tokenize_words(m, words, "fst")
            for w, a, b in zip(words, lin, fst):
                want = original_wordpiece_word(v, w)
                if a != want or b != want:
                    mismatches += 1
                if w != "##" and maxmatch_recursive(v, w) != want:
                    mismatches += 1
                if a and a != [v.unk_id] and w != "##":
                    mismatches += _respell(v, a, w) != w
    assert mismatches == 0


def test_work_bound():
    v = from_tokens(["a", "##a", "ab", "##ab", "aab", "##aaab"])
    m = build_model(v)
    for w in _words("ab", 9):
        st = word_stats(m, w)
        assert st.failure <= st.normal <= len(w) + 1


def test_backends_agree():
    if len(BACKENDS) < 2:
        pytest.skip("numba not available")
    rng = np.random.default_rng(5)
    v = from_tokens(POOL)
    m = build_model(v, fst=True)
    words = ["".join(rng.choice(list("abc#"), size=rng.integers(0, 12))) for _ in range(500)]
    for engine in ("linmax", "fst", "naive"):
        assert tokenize_words(m, words, engine, "numba") == tokenize_words(m, words, engine, "python")
    for w in words[:50]:
        assert word_stats(m, w, backend="numba") == word_stats(m, w, backend="python")


def test_fst_engine_requires_tables(sample):
    m = build_model(sample_vocab())
    with pytest.raises(ValueError, match="FST"):
        tokenize_word_fst(m, "a")
