"""Single-pass text tokenization: pre-tokenization folded into the matcher."""

from __future__ import annotations

from typing import Optional

import numpy as np

from . import kernels
from .chars import SPACE, classify, e2e_punctuation_set, is_punctuation, is_whitespace
from .failure import augment_for_e2e, compile_fst, link_punctuation_leaves, precompute
from .matcher import MatchStats, TokenizerModel, _stats
from .trie import build_trie
from .vocab import Vocabulary


class E2EModel:
    """A :class:`TokenizerModel` over the punctuation-augmented trie.

    ``r_p`` is the sink that punctuation leaves fail over to; it has no
    parent, no edges and no failure link.
    """

    def __init__(self, base: TokenizerModel, r_p: int, leaves: list[int]):
        self.base = base
        self.r_p = r_p
        self.leaves = list(leaves)

    @property
    def vocab(self) -> Vocabulary:
        return self.base.vocab


def build_e2e_model(vocab: Vocabulary, fst: bool = False) -> E2EModel:
    punct = e2e_punctuation_set(vocab.matchable) - {vocab.boundary_char}
    trie = build_trie(vocab)
    r_p, leaves = augment_for_e2e(trie, vocab, punct)
    ftab = precompute(trie, vocab)
    link_punctuation_leaves(ftab, leaves, r_p)
    table = compile_fst(trie, ftab, vocab) if fst else None
    return E2EModel(TokenizerModel(vocab, trie, ftab, table), r_p, leaves)


def is_word_boundary(s: str, i: int) -> bool:
    return (i >= len(s) or (i > 0 and is_punctuation(s[i - 1]))
            or is_whitespace(s[i]) or is_punctuation(s[i]))


def _prepare(model: E2EModel, text: str):
    cps = np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32).astype(np.int32)
    chars = model.base.encode_codepoints(cps)
    cls = classify(cps)
    bnd = ord(model.vocab.boundary_char)
    # the boundary char counts as whitespace whatever the classifier says
    cls[cps == bnd] = SPACE
    return chars, cls


def tokenize_text(model: E2EModel, text: str, backend: Optional[str] = None,
                  engine: str = "e2e") -> list[int]:
    return tokenize_text_with_stats(model, text, backend, engine)[0]


def text_runner(model: E2EModel, text: str, backend: Optional[str] = None,
                engine: str = "e2e"):
    """Bind ``text`` to its kernel; returns ``(run, out, stats)`` where
    ``run()`` returns the number of ids written to ``out``."""
    backend = backend or kernels.DEFAULT_BACKEND
    base = model.base
    t = base.arrays(backend)
    chars, cls = _prepare(model, text)
    cap = len(text) + len(base.suffix_indicator_tokens) + 2
    stats = np.zeros(3, dtype=np.int64)
    if backend == "python":
        chars, cls = chars.tolist(), cls.tolist()
        out, st = [0] * cap, stats.tolist()
    else:
        out, st = np.empty(cap, dtype=np.int32), stats
    r, r_sharp, unk, cap_len = base.r, base.r_sharp, base.vocab.unk_id, base.max_len
    if engine == "e2e":
        fn = kernels.get("e2e_text", backend)
        si = base.si_tokens(backend)

        def run():
            return fn(chars, cls, t.edge_ptr, t.edge_lab, t.edge_dst, t.fail, t.pops_ptr,
                      t.pops, r, r_sharp, model.r_p, unk, si, cap_len, out, st)
    elif engine == "e2e-naive":
        fn = kernels.get("e2e_naive_text", backend)

        def run():
            return fn(chars, cls, t.edge_ptr, t.edge_lab, t.edge_dst, t.token_id, r,
                      r_sharp, unk, cap_len, out)
    else:
        raise ValueError(f"unknown text engine {engine!r}")
    return run, out, st


def tokenize_text_with_stats(model: E2EModel, text: str, backend: Optional[str] = None,
                             engine: str = "e2e") -> tuple[list[int], MatchStats]:
    run, out, st = text_runner(model, text, backend, engine)
    n = run()
    ids = list(out[:n]) if isinstance(out, list) else out[:n].tolist()
    return ids, _stats(st)


__all__ = ["E2EModel", "build_e2e_model", "is_word_boundary", "tokenize_text",
           "tokenize_text_with_stats", "text_runner"]
