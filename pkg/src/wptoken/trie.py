"""Vocabulary trie stored as a node arena with integer ids."""

from __future__ import annotations

from typing import Iterator, Optional

import numpy as np

from .vocab import Vocabulary, token_length

NO_NODE = -1


class Trie:
    """Arena trie.  ``edges[u]`` maps a character to the child id.

    ``r`` represents the empty string and ``r_sharp`` the suffix indicator
    (the same node when the indicator is empty).  Node strings are rebuilt
    from parent links on demand rather than stored.
    """

    def __init__(self, suffix_indicator: str = ""):
        self.suffix_indicator = suffix_indicator
        self.edges: list[dict[str, int]] = []
        self.parent: list[int] = []
        self.label: list[Optional[str]] = []
        self.token_id: list[int] = []
        self.r = self._new_node(NO_NODE, None)
        self.r_sharp = self.insert(suffix_indicator)

    def _new_node(self, parent: int, label: Optional[str]) -> int:
        v = len(self.edges)
        self.edges.append({})
        self.parent.append(parent)
        self.label.append(label)
        self.token_id.append(NO_NODE)
        if parent != NO_NODE:
            self.edges[parent][label] = v
        return v

    def add_orphan(self) -> int:
        """A node with no parent and no edges (used for the punctuation sink)."""
        return self._new_node(NO_NODE, None)

    def add_leaf(self, u: int, c: str, token_id: int) -> int:
        v = self._new_node(u, c)
        self.token_id[v] = token_id
        return v

    def insert(self, s: str, start: Optional[int] = None) -> int:
        u = self.r if start is None else start
        for c in s:
            v = self.edges[u].get(c)
            if v is None:
                v = self._new_node(u, c)
            u = v
        return u

    def remove_edge(self, u: int, c: str) -> None:
        v = self.edges[u].pop(c)
        self.parent[v] = NO_NODE
        self.label[v] = None

    def __len__(self) -> int:
        return len(self.edges)

    def child(self, u: int, c: str) -> Optional[int]:
        return self.edges[u].get(c)

    def is_vocab(self, v: int) -> bool:
        return self.token_id[v] != NO_NODE

    def node_string(self, v: int) -> str:
        chars = []
        while self.parent[v] != NO_NODE:
            chars.append(self.label[v])
            v = self.parent[v]
        return "".join(reversed(chars))

    def find(self, s: str) -> Optional[int]:
        """Node spelling ``s`` from the root, or None when ``s`` is off the trie."""
        u = self.r
        for c in s:
            u = self.edges[u].get(c)
            if u is None:
                return None
        return u

    def depth(self, v: int) -> int:
        s = self.node_string(v)
        si = self.suffix_indicator
        return len(s) - len(si) if si and s.startswith(si) else len(s)

    def reachable(self) -> Iterator[int]:
        """Nodes reachable from r, in BFS order."""
        queue = [self.r]
        for u in queue:
            yield u
            queue.extend(self.edges[u].values())

    def copy(self) -> "Trie":
        t = Trie.__new__(Trie)
        t.suffix_indicator = self.suffix_indicator
        t.edges = [dict(e) for e in self.edges]
        t.parent = list(self.parent)
        t.label = list(self.label)
        t.token_id = list(self.token_id)
        t.r, t.r_sharp = self.r, self.r_sharp
        return t

    def edge_triples(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edges as (parent, label code point, child) arrays, in node order."""
        par, lab, chd = [], [], []
        for u, e in enumerate(self.edges):
            for c, v in e.items():
                par.append(u)
                lab.append(ord(c))
                chd.append(v)
        return (np.asarray(par, dtype=np.int32), np.asarray(lab, dtype=np.int32),
                np.asarray(chd, dtype=np.int32))

    @classmethod
    def from_triples(cls, n_nodes: int, suffix_indicator: str, r: int, r_sharp: int,
                     parents, labels, children, token_id) -> "Trie":
        t = cls.__new__(cls)
        t.suffix_indicator = suffix_indicator
        t.edges = [{} for _ in range(n_nodes)]
        t.parent = [NO_NODE] * n_nodes
        t.label = [None] * n_nodes
        t.token_id = [int(x) for x in token_id]
        t.r, t.r_sharp = r, r_sharp
        for u, c, v in zip(parents.tolist(), labels.tolist(), children.tolist()):
            ch = chr(c)
            t.edges[u][ch] = v
            t.parent[v] = u
            t.label[v] = ch
        return t


def build_trie(vocab: Vocabulary) -> Trie:
    """Trie over the matchable vocabulary tokens.

    Node ids follow insertion order: r, the suffix-indicator path, then each
    token's new nodes in vocabulary order.
    """
    trie = Trie(vocab.suffix_indicator)
    for tid, tok in enumerate(vocab.matchable):
        trie.token_id[trie.insert(tok)] = tid
    return trie


def node_depths(trie: Trie) -> list[int]:
    return [trie.depth(v) for v in range(len(trie))]


__all__ = ["NO_NODE", "Trie", "build_trie", "node_depths", "token_length"]
