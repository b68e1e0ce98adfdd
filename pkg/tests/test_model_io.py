import random

import numpy as np
import pytest

from support import E2E_EXAMPLE_TOKENS, sample_vocab, random_text, random_text_vocab
from wptoken import model_io
from wptoken.e2e import E2EModel, build_e2e_model, tokenize_text
from wptoken.matcher import build_model, tokenize_words
from wptoken.vocab import VocabConfig, from_tokens


def test_word_model_round_trip(tmp_path):
    m = build_model(sample_vocab(), fst=True)
    path = tmp_path / "m.bin"
    model_io.save(m, path)
    m2 = model_io.load(path)
    assert m2.vocab.tokens == m.vocab.tokens and m2.vocab.unk_id == m.vocab.unk_id
    assert m2.trie.edges == m.trie.edges and m2.failure == m.failure
    assert np.array_equal(m2.fst.h_prime, m.fst.h_prime)
    assert np.array_equal(m2.fst.sigma, m.fst.sigma)
    assert m2.suffix_indicator_tokens == m.suffix_indicator_tokens
    words = ["abcdz", "abcd", "##bc", "", "##", "abcdx"]
    for engine in ("linmax", "fst", "naive"):
        assert tokenize_words(m2, words, engine) == tokenize_words(m, words, engine)


def test_config_preserved():
    v = from_tokens(["a", "~~b"], VocabConfig("~~", "<unk>", "|", 7))
    m2 = model_io.loads(model_io.dumps(build_model(v)))
    assert m2.vocab.config == v.config
    assert m2.fst is None


def test_e2e_round_trip():
    rng = random.Random(1)
    for toks in [E2E_EXAMPLE_TOKENS] + [random_text_vocab(rng) for _ in range(20)]:
        m = build_e2e_model(from_tokens(toks))
        m2 = model_io.loads(model_io.dumps(m))
        assert isinstance(m2, E2EModel) and m2.r_p == m.r_p and m2.leaves == m.leaves
        for _ in range(20):
            t = random_text(rng)
            assert tokenize_text(m2, t) == tokenize_text(m, t)


def test_header_is_little_endian():
    data = model_io.dumps(build_model(sample_vocab()))
    assert data[:8] == model_io.MAGIC
    assert int.from_bytes(data[8:12], "little") == model_io.VERSION


@pytest.mark.parametrize("mangle", [
    lambda d: b"NOTMODEL" + d[8:],
    lambda d: d[:8] + (99).to_bytes(4, "little") + d[12:],
    lambda d: d[:-4],
])
def test_bad_files(mangle):
    data = model_io.dumps(build_model(sample_vocab(), fst=True))
    with pytest.raises(model_io.ModelFormatError):
        model_io.loads(mangle(data))
