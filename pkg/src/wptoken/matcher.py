"""Single-word tokenization over a precomputed model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .failure import FailureTable, FstTable, compile_fst, precompute
from .oracle import original_wordpiece_word
from .trie import Trie, build_trie
from .vocab import Vocabulary


@dataclass(frozen=True)
class MatchStats:
    normal: int = 0
    failure: int = 0
    classify: int = 0


@dataclass
class Tables:
    """Flat arrays the kernels run on; edges are CSR rows sorted by alphabet index."""

    alphabet: np.ndarray
    edge_ptr: np.ndarray
    edge_lab: np.ndarray
    edge_dst: np.ndarray
    token_id: np.ndarray
    fail: np.ndarray
    pops_ptr: np.ndarray
    pops: np.ndarray
    # FST, present when compiled
    h_prime: Optional[np.ndarray] = None
    sigma_ptr: Optional[np.ndarray] = None
    sigma: Optional[np.ndarray] = None
    chain_end: Optional[np.ndarray] = None
    fst_width: int = 0

    @classmethod
    def pack(cls, trie: Trie, ftab: FailureTable, alphabet: np.ndarray,
             fst: Optional[FstTable] = None) -> "Tables":
        n = len(trie)
        col = {chr(c): k for k, c in enumerate(alphabet.tolist())}
        ptr = np.zeros(n + 1, dtype=np.int64)
        labs: list[int] = []
        dsts: list[int] = []
        for u in range(n):
            row = sorted((col[c], v) for c, v in trie.edges[u].items())
            labs.extend(k for k, _ in row)
            dsts.extend(v for _, v in row)
            ptr[u + 1] = len(labs)
        pops_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum([len(p) for p in ftab.F], out=pops_ptr[1:])
        t = cls(
            alphabet=alphabet,
            edge_ptr=ptr,
            edge_lab=np.asarray(labs, dtype=np.int32),
            edge_dst=np.asarray(dsts, dtype=np.int32),
            token_id=np.asarray(trie.token_id, dtype=np.int32),
            fail=np.asarray(ftab.f, dtype=np.int32),
            pops_ptr=pops_ptr,
            pops=np.fromiter((t for p in ftab.F for t in p), dtype=np.int32,
                             count=int(pops_ptr[-1])),
        )
        if fst is not None:
            assert np.array_equal(fst.alphabet, alphabet)
            t.h_prime = fst.h_prime.reshape(-1)
            t.sigma_ptr = fst.sigma_ptr
            t.sigma = fst.sigma
            t.chain_end = fst.chain_end
            t.fst_width = fst.width
        return t


class TokenizerModel:
    """Vocabulary, trie, failure table and optional FST tables, frozen after
    construction.  Use :func:`build_model` rather than calling this directly."""

    def __init__(self, vocab: Vocabulary, trie: Trie, failure: FailureTable,
                 fst: Optional[FstTable] = None, suffix_indicator_tokens=None):
        self.vocab = vocab
        self.trie = trie
        self.failure = failure
        self.fst = fst
        if suffix_indicator_tokens is None:
            suffix_indicator_tokens = original_wordpiece_word(vocab, vocab.suffix_indicator)
        self.suffix_indicator_tokens = tuple(suffix_indicator_tokens)
        alphabet = fst.alphabet if fst is not None else _alphabet(trie)
        self.tables = Tables.pack(trie, failure, alphabet, fst)
        self._si = np.asarray(self.suffix_indicator_tokens, dtype=np.int32)
        self._py_cache: dict[str, object] = {}

    @property
    def r(self) -> int:
        return self.trie.r

    @property
    def r_sharp(self) -> int:
        return self.trie.r_sharp

    @property
    def max_len(self) -> int:
        cap = self.vocab.max_word_length
        return -1 if cap is None else cap

    def encode(self, text: str) -> np.ndarray:
        """Code points mapped to alphabet indices, -1 where no edge exists."""
        cps = np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32).astype(np.int32)
        return self.encode_codepoints(cps)

    def encode_codepoints(self, cps: np.ndarray) -> np.ndarray:
        alpha = self.tables.alphabet
        if len(alpha) == 0:
            return np.full(len(cps), -1, dtype=np.int32)
        k = np.searchsorted(alpha, cps)
        k[k == len(alpha)] = 0
        return np.where(alpha[k] == cps, k, -1).astype(np.int32)

    def arrays(self, backend: str) -> "Tables":
        """The tables as the given backend wants them (lists for the
        interpreter: element access on ndarrays is slow there)."""
        if backend != "python":
            return self.tables
        cached = self._py_cache.get("tables")
        if cached is None:
            t = self.tables
            cached = Tables(**{k: (v.tolist() if isinstance(v, np.ndarray) else v)
                               for k, v in vars(t).items()})
            self._py_cache["tables"] = cached
        return cached

    def si_tokens(self, backend: str):
        return self._si if backend != "python" else list(self.suffix_indicator_tokens)


def _alphabet(trie: Trie) -> np.ndarray:
    from .failure import trie_alphabet
    return trie_alphabet(trie)


def build_model(vocab: Vocabulary, fst: bool = False) -> TokenizerModel:
    trie = build_trie(vocab)
    ftab = precompute(trie, vocab)
    table = compile_fst(trie, ftab, vocab) if fst else None
    return TokenizerModel(vocab, trie, ftab, table)


def _stats(arr) -> MatchStats:
    return MatchStats(int(arr[0]), int(arr[1]), int(arr[2]))


def match_loop(model: TokenizerModel, s: str, start: int = 0, backend: Optional[str] = None
               ) -> tuple[list[int], int, int, MatchStats]:
    """Failure-transition matching over ``s`` (which should end with the
    boundary char) from ``start``.

    Returns (tokens, landing node, index of the first unconsumed character,
    transition counts).
    """
    backend = backend or kernels.DEFAULT_BACKEND
    t = model.arrays(backend)
    chars = model.encode(s)
    out = np.zeros(len(s) + 1, dtype=np.int32)
    stats = np.zeros(3, dtype=np.int64)
    if backend == "python":
        chars, out_l, st = chars.tolist(), out.tolist(), stats.tolist()
        u, i, n = kernels.get("match_loop", backend)(
            chars, start, t.edge_ptr, t.edge_lab, t.edge_dst, t.fail, t.pops_ptr,
            t.pops, model.r, out_l, st)
        return out_l[:n], int(u), int(i), _stats(st)
    u, i, n = kernels.get("match_loop", backend)(
        chars, start, t.edge_ptr, t.edge_lab, t.edge_dst, t.fail, t.pops_ptr, t.pops,
        model.r, out, stats)
    return out[:n].tolist(), int(u), int(i), _stats(stats)


@dataclass
class Batch:
    """Words packed for the kernels: each word followed by a -1 sentinel."""

    chars: np.ndarray
    offsets: np.ndarray
    n_chars: int = field(default=0)

    @classmethod
    def from_words(cls, model: TokenizerModel, words: Sequence[str]) -> "Batch":
        bnd = model.vocab.boundary_char
        for w in words:
            if bnd in w:
                raise ValueError(f"word {w!r} contains the boundary char")
        joined = bnd.join(words) + bnd if words else ""
        chars = model.encode(joined)
        lens = np.fromiter((len(w) + 1 for w in words), dtype=np.int64, count=len(words))
        offsets = np.zeros(len(words) + 1, dtype=np.int64)
        np.cumsum(lens, out=offsets[1:])
        chars[offsets[1:] - 1] = -1
        return cls(chars, offsets, int(offsets[-1]))

    def __len__(self) -> int:
        return len(self.offsets) - 1


def out_capacity(model: TokenizerModel, n_chars: int, n_words: int) -> int:
    return n_chars + n_words * (len(model.suffix_indicator_tokens) + 1) + 1


def batch_runner(model: TokenizerModel, batch: Batch, engine: str = "linmax",
                 backend: Optional[str] = None, stats: Optional[np.ndarray] = None):
    """Bind a batch to its kernel with preallocated outputs.

    Returns ``(run, out, out_offsets, stats)``; each ``run()`` call
    tokenizes the whole batch again and returns the number of ids written.
    """
    backend = backend or kernels.DEFAULT_BACKEND
    t = model.arrays(backend)
    cap = out_capacity(model, batch.n_chars, len(batch))
    st = np.zeros(3, dtype=np.int64) if stats is None else stats
    py = backend == "python"
    out = [0] * cap if py else np.empty(cap, dtype=np.int32)
    offs = [0] * (len(batch) + 1) if py else np.empty(len(batch) + 1, dtype=np.int64)
    s = batch.chars.tolist() if py else batch.chars
    o = batch.offsets.tolist() if py else batch.offsets
    st_arg = st.tolist() if py else st
    si = model.si_tokens(backend)
    r, r_sharp, unk, cap_len = model.r, model.r_sharp, model.vocab.unk_id, model.max_len
    if engine == "linmax":
        fn = kernels.get("linmax_batch", backend)

        def run():
            return fn(s, o, t.edge_ptr, t.edge_lab, t.edge_dst, t.fail, t.pops_ptr, t.pops,
                      r, r_sharp, unk, si, cap_len, out, offs, st_arg)
    elif engine == "fst":
        if model.fst is None:
            raise ValueError("model has no FST tables (build with fst=True)")
        fn = kernels.get("fst_batch", backend)

        def run():
            return fn(s, o, t.h_prime, t.sigma_ptr, t.sigma, t.chain_end, t.fst_width,
                      r, r_sharp, unk, si, cap_len, out, offs, st_arg)
    elif engine == "naive":
        fn = kernels.get("naive_batch", backend)

        def run():
            return fn(s, o, t.edge_ptr, t.edge_lab, t.edge_dst, t.token_id, r, r_sharp,
                      unk, cap_len, out, offs)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return run, out, offs, st_arg


def run_batch(model: TokenizerModel, batch: Batch, engine: str = "linmax",
              backend: Optional[str] = None, stats: Optional[np.ndarray] = None
              ) -> tuple[np.ndarray, np.ndarray]:
    """Tokenize a packed batch; returns (flat ids, offsets)."""
    run, out, offs, st = batch_runner(model, batch, engine, backend, stats)
    n = run()
    if isinstance(out, list):
        if stats is not None:
            stats[:] = st
        return np.asarray(out[:n], dtype=np.int32), np.asarray(offs, dtype=np.int64)
    return out[:n], offs


def tokenize_words(model: TokenizerModel, words: Sequence[str], engine: str = "linmax",
                   backend: Optional[str] = None) -> list[list[int]]:
    flat, offs = run_batch(model, Batch.from_words(model, words), engine, backend)
    flat = flat.tolist()
    offs = offs.tolist()
    return [flat[offs[k]:offs[k + 1]] for k in range(len(words))]


def tokenize_word(model: TokenizerModel, w: str, backend: Optional[str] = None) -> list[int]:
    return tokenize_words(model, [w], "linmax", backend)[0]


def tokenize_word_fst(model: TokenizerModel, w: str, backend: Optional[str] = None) -> list[int]:
    return tokenize_words(model, [w], "fst", backend)[0]


def tokenize_word_naive(model: TokenizerModel, w: str, backend: Optional[str] = None) -> list[int]:
    return tokenize_words(model, [w], "naive", backend)[0]


def word_stats(model: TokenizerModel, w: str, engine: str = "linmax",
               backend: Optional[str] = None) -> MatchStats:
    """Transition counts for one word (the linearity witness)."""
    st = np.zeros(3, dtype=np.int64)
    run_batch(model, Batch.from_words(model, [w]), engine, backend, stats=st)
    return _stats(st)


def token_strings(model: TokenizerModel, ids: Iterable[int]) -> list[str]:
    return [model.vocab.tokens[i] for i in ids]
