"""Shared fixtures data and generators for the test suite."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from wptoken.vocab import Vocabulary, from_tokens

SAMPLE_TOKENS = ["a", "abcdx", "##b", "##c", "##cdy", "##dz"]

# node id -> (f as node string or None, F as token strings); ids follow
# insertion order, which reproduces the reference numbering
SAMPLE_NODES = {
    0: "", 1: "#", 2: "##", 3: "a", 4: "ab", 5: "abc", 6: "abcd", 7: "abcdx",
    8: "##b", 9: "##c", 10: "##cd", 11: "##cdy", 12: "##d", 13: "##dz",
}
SAMPLE_FAILURE = {
    0: (None, []), 1: (None, []), 2: (None, []),
    3: (2, ["a"]), 4: (8, ["a"]), 5: (9, ["a", "##b"]), 6: (10, ["a", "##b"]),
    7: (2, ["abcdx"]), 8: (2, ["##b"]), 9: (2, ["##c"]), 10: (12, ["##c"]),
    11: (2, ["##cdy"]), 12: (None, []), 13: (2, ["##dz"]),
}

# (w, g(w) node, G(w) tokens)
MINPOP_TABLE = [
    ("abcd", 6, []),
    ("##bcd", 10, ["##b"]),
    ("##cdz", 13, ["##c"]),
    ("##bcdz", 13, ["##b", "##c"]),
    ("z", None, []),
]

# (u, c, h(u, c) as node string, H(u, c)); the landing node for (13, " ")
# is the augmented "## " node, see the ledger
ONESTEP_TABLE = [
    (8, "c", "##c", ["##b"]),
    (9, "d", "##cd", []),
    (10, "z", "##dz", ["##c"]),
    (13, " ", "## ", ["##dz"]),
    (6, "z", "##dz", ["a", "##b", "##c"]),
    (0, "z", None, []),
]

E2E_EXAMPLE_TOKENS = ["[UNK]", "john", "johan", "##son", "'", "s"]

GRID_POOL = ["a", "b", "abc", "abcab", "##a", "##b", "##c", "##bc", "##cab", "##caa"]
GRID_ALPHABET = "abc"


def sample_vocab() -> Vocabulary:
    return from_tokens(SAMPLE_TOKENS)


def grid_vocabs():
    for k in range(1, 7):
        for combo in itertools.combinations(GRID_POOL, k):
            yield combo


@lru_cache(maxsize=1)
def grid_words() -> tuple[str, ...]:
    """All words of length 0-8 over the grid alphabet, plus the same words
    of length 0-6 behind the suffix indicator."""
    words = []
    for n in range(9):
        words += ["".join(p) for p in itertools.product(GRID_ALPHABET, repeat=n)]
    words += ["##" + "".join(p) for n in range(7)
              for p in itertools.product(GRID_ALPHABET, repeat=n)]
    return tuple(words)


def random_vocab_tokens(rng: random.Random, alphabet: str = "abc", n_min: int = 2,
                        n_max: int = 12, max_len: int = 4) -> list[str]:
    toks = set()
    n = rng.randint(n_min, n_max)
    while len(toks) < n:
        body = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))
        toks.add("##" + body if rng.random() < 0.5 else body)
    return sorted(toks)


def random_text_vocab(rng: random.Random) -> list[str]:
    """Vocabulary for the {a, b, !, ., space} text alphabet."""
    toks = set(random_vocab_tokens(rng, "ab", 1, 8, 3))
    for p in "!.":
        if rng.random() < 0.6:
            toks.add(p)
    # tokens spanning punctuation can never match after pre-tokenization
    if rng.random() < 0.3:
        toks.add(rng.choice(["a!", "##.", "b.a", "!a"]))
    out = sorted(toks)
    if rng.random() < 0.5:
        out.insert(0, "[UNK]")
    return out


def random_text(rng: random.Random, alphabet: str = "ab!. ", max_len: int = 40) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))
