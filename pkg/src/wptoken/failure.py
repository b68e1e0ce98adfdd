"""Failure links and failure pops, the punctuation-augmented trie, and the
failure-free transition tables (FST form)."""

from __future__ import annotations

from collections import deque
from collections.abc import Collection
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .oracle import longest_prefix_p
from .trie import NO_NODE, Trie
from .vocab import Vocabulary


@dataclass
class FailureTable:
    """``f[v]`` is the failure link (``NO_NODE`` when absent) and ``F[v]``
    the token ids popped when following it."""

    f: list[int]
    F: list[list[int]]

    def link(self, v: int) -> Optional[int]:
        x = self.f[v]
        return None if x == NO_NODE else x

    def pops_size(self) -> int:
        return sum(len(p) for p in self.F)


def precompute(trie: Trie, vocab: Vocabulary, stats: Optional[dict] = None) -> FailureTable:
    """Breadth-first computation of f/F from the parent's f/F.

    A vocabulary node fails over to r_sharp popping itself; any other node
    inherits the parent's pops plus whatever the parent's failure chain
    pops before it can take the same edge label.  ``stats`` (if given)
    receives BFS edge visits and failure-link steps.
    """
    n = len(trie)
    f = [NO_NODE] * n
    F: list[list[int]] = [[] for _ in range(n)]
    r, r_sharp = trie.r, trie.r_sharp
    edge_visits = link_steps = 0

    queue = deque([r] if r == r_sharp else [r, r_sharp])
    while queue:
        u = queue.popleft()
        for c, v in trie.edges[u].items():
            edge_visits += 1
            if v == r_sharp:
                continue
            if trie.token_id[v] != NO_NODE:
                f[v] = r_sharp
                F[v] = [trie.token_id[v]]
            else:
                z = f[u]
                Z: list[int] = []
                while z != NO_NODE and c not in trie.edges[z]:
                    Z.extend(F[z])
                    z = f[z]
                    link_steps += 1
                if z != NO_NODE:
                    f[v] = trie.edges[z][c]
                    F[v] = F[u] + Z
            queue.append(v)

    if stats is not None:
        stats["edge_visits"] = edge_visits
        stats["link_steps"] = link_steps
    return FailureTable(f, F)


def failure_by_definition(trie: Trie, vocab: Vocabulary, v: int) -> tuple[Optional[int], list[int]]:
    """Pop longest vocabulary prefixes off the node string until what is left
    is on the trie.  Absent link (and no pops) if a pop finds no prefix."""
    if v in (trie.r, trie.r_sharp):
        return None, []
    si = vocab.suffix_indicator
    s = trie.node_string(v)
    pops = []
    while True:
        p = longest_prefix_p(vocab, s)
        if p is None:
            return None, []
        pops.append(vocab.id_of[p])
        s = si + s[len(p):]
        node = trie.find(s)
        if node is not None:
            return node, pops


def augment_for_e2e(trie: Trie, vocab: Vocabulary, punctuation: Collection[str],
                    whitespace=None) -> tuple[int, list[int]]:
    """Prepare a freshly built trie for single-pass text tokenization.

    Every edge labelled with a punctuation (or whitespace) character is cut,
    then each character of ``punctuation`` gets a childless data node under
    r carrying its own id, or the unk id if it is not a token.  Returns the
    new sink node and the leaf ids; run :func:`precompute` next, then
    :func:`link_punctuation_leaves`.
    """
    if not isinstance(punctuation, Collection) or isinstance(punctuation, str):
        raise TypeError("punctuation must be a finite collection of characters")
    from .chars import is_punctuation, is_whitespace

    space = whitespace if whitespace is not None else is_whitespace
    for u in range(len(trie)):
        for c in [c for c in trie.edges[u] if is_punctuation(c) or c in punctuation or space(c)]:
            trie.remove_edge(u, c)
    leaves = []
    for c in sorted(punctuation):
        tid = vocab.id_of[c] if c in vocab else vocab.unk_id
        leaves.append(trie.add_leaf(trie.r, c, tid))
    r_p = trie.add_orphan()
    return r_p, leaves


def link_punctuation_leaves(ftab: FailureTable, leaves: list[int], r_p: int) -> None:
    for v in leaves:
        ftab.f[v] = r_p


def cascade(trie: Trie, ftab: FailureTable, u: int, c: str) -> tuple[Optional[int], list[int], int]:
    """Failure cascade from ``u`` on ``c``.

    Returns (node reached by consuming ``c`` or None, pops collected, node
    where the cascade stopped).  The stop node only matters on failure.
    """
    pops: list[int] = []
    while True:
        v = trie.edges[u].get(c)
        if v is not None:
            return v, pops, u
        if ftab.f[u] == NO_NODE:
            return None, pops, u
        pops.extend(ftab.F[u])
        u = ftab.f[u]


@dataclass
class FstTable:
    """Dense per-(node, character) transition and output tables.

    Columns follow ``alphabet`` (sorted code points of all trie edge labels)
    and one last column shared by the boundary char and every character
    outside the alphabet.  ``chain_end[u]`` is where a cascade from ``u``
    stops when no edge ever matches.
    """

    alphabet: np.ndarray          # int32 code points, sorted
    h_prime: np.ndarray           # int32 [n_nodes, A + 1], NO_NODE when absent
    sigma_ptr: np.ndarray         # int64 [n_nodes * (A + 1) + 1]
    sigma: np.ndarray             # int32 flat token ids
    chain_end: np.ndarray         # int32 [n_nodes]

    @property
    def width(self) -> int:
        return self.h_prime.shape[1]

    def column(self, c: str) -> int:
        cp = ord(c)
        k = int(np.searchsorted(self.alphabet, cp))
        if k < len(self.alphabet) and self.alphabet[k] == cp:
            return k
        return self.width - 1

    def lookup(self, u: int, c: str) -> tuple[Optional[int], list[int]]:
        col = self.column(c)
        cell = u * self.width + col
        nxt = int(self.h_prime[u, col])
        out = self.sigma[self.sigma_ptr[cell]:self.sigma_ptr[cell + 1]].tolist()
        return (None if nxt == NO_NODE else nxt), out


def trie_alphabet(trie: Trie) -> np.ndarray:
    labels = {ord(c) for e in trie.edges for c in e}
    return np.asarray(sorted(labels), dtype=np.int32)


def compile_fst(trie: Trie, ftab: FailureTable, vocab: Vocabulary) -> FstTable:
    """Eliminate failure transitions by tabulating every (node, char) pair.

    Rows are filled through the link recursion: an existing edge is taken
    as is, otherwise the row of f(u) is reused with F(u) prepended.  f(u)
    is always resolved before u.
    """
    alphabet = trie_alphabet(trie)
    chars = [chr(c) for c in alphabet.tolist()]
    n, width = len(trie), len(chars) + 1
    nxt: list[Optional[list[int]]] = [None] * n
    outs: list[Optional[list[list[int]]]] = [None] * n
    ends = [NO_NODE] * n

    def fill(u: int) -> None:
        link = ftab.f[u]
        if link == NO_NODE:
            row = [trie.edges[u].get(c, NO_NODE) for c in chars] + [NO_NODE]
            nxt[u] = row
            outs[u] = [[] for _ in range(width)]
            ends[u] = u
            return
        base_n, base_o = nxt[link], outs[link]
        pre = ftab.F[u]
        row, out = [], []
        for k in range(width):
            v = trie.edges[u].get(chars[k], NO_NODE) if k < len(chars) else NO_NODE
            if v != NO_NODE:
                row.append(v)
                out.append([])
            else:
                row.append(base_n[k])
                out.append(pre + base_o[k])
        nxt[u], outs[u], ends[u] = row, out, ends[link]

    for v in range(n):
        stack = [v]
        while stack:
            u = stack[-1]
            if nxt[u] is not None:
                stack.pop()
                continue
            link = ftab.f[u]
            if link != NO_NODE and nxt[link] is None:
                stack.append(link)
                continue
            fill(u)
            stack.pop()

    sizes = np.fromiter((len(cell) for row in outs for cell in row), dtype=np.int64,
                        count=n * width)
    ptr = np.zeros(n * width + 1, dtype=np.int64)
    np.cumsum(sizes, out=ptr[1:])
    flat = np.fromiter((t for row in outs for cell in row for t in cell), dtype=np.int32,
                       count=int(ptr[-1]))
    return FstTable(
        alphabet=alphabet,
        h_prime=np.asarray(nxt, dtype=np.int32).reshape(n, width),
        sigma_ptr=ptr,
        sigma=flat,
        chain_end=np.asarray(ends, dtype=np.int32),
    )
