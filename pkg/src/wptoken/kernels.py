"""Hot loops over the flattened model arrays.

Each kernel is plain Python written in the numba subset.  With numba
available they are compiled with ``njit``; setting ``WPTOKEN_DISABLE_JIT=1``
(or running without numba) selects the interpreted versions instead.  Both
paths execute the same source, so every test exercises the same logic.

Conventions: characters are alphabet indices (``-1`` for characters with no
trie edge anywhere, including the boundary sentinel); node ids are int32
with ``-1`` for the null node.
"""

from __future__ import annotations

import os

try:
    import numba
    from numba.extending import register_jitable
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

    def register_jitable(fn):
        return fn

HAVE_NUMBA = numba is not None
_DISABLED = os.environ.get("WPTOKEN_DISABLE_JIT", "").lower() in ("1", "true", "yes")
DEFAULT_BACKEND = "numba" if HAVE_NUMBA and not _DISABLED else "python"

WORD, SPACE, PUNCT = 0, 1, 2
VIRTUAL_LEAF = -2

# stats slots
NORMAL, FAILURE, CLASSIFY = 0, 1, 2


@register_jitable
def _child(edge_ptr, edge_lab, edge_dst, u, c):
    if c < 0:
        return -1
    lo = edge_ptr[u]
    hi = edge_ptr[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        x = edge_lab[mid]
        if x < c:
            lo = mid + 1
        elif x > c:
            hi = mid
        else:
            return edge_dst[mid]
    return -1


@register_jitable
def _match_loop(s, i, end, edge_ptr, edge_lab, edge_dst, fail, pops_ptr, pops,
                r, out, nout, stats):
    u = r
    while i < end:
        c = s[i]
        while True:
            v = _child(edge_ptr, edge_lab, edge_dst, u, c)
            if v >= 0:
                break
            fu = fail[u]
            if fu < 0:
                return u, i, nout
            for k in range(pops_ptr[u], pops_ptr[u + 1]):
                out[nout] = pops[k]
                nout += 1
            u = fu
            stats[FAILURE] += 1
        u = v
        i += 1
        stats[NORMAL] += 1
    return u, i, nout


def match_loop(s, start, edge_ptr, edge_lab, edge_dst, fail, pops_ptr, pops, r,
               out, stats):
    """Run the failure-transition loop over ``s`` from ``start``.

    Returns (landing node, stop index, number of tokens written to ``out``).
    """
    return _match_loop(s, start, len(s), edge_ptr, edge_lab, edge_dst, fail,
                       pops_ptr, pops, r, out, 0, stats)


def linmax_batch(s, offsets, edge_ptr, edge_lab, edge_dst, fail, pops_ptr, pops,
                 r, r_sharp, unk_id, si_tokens, max_len, out, out_offsets, stats):
    """Tokenize every word of a flat batch.

    Word ``k`` is ``s[offsets[k]:offsets[k+1]-1]``; the slot at
    ``offsets[k+1]-1`` holds the boundary sentinel.
    """
    nout = 0
    n_words = len(offsets) - 1
    for k in range(n_words):
        start = offsets[k]
        end = offsets[k + 1]
        out_offsets[k] = nout
        if max_len >= 0 and end - 1 - start > max_len:
            out[nout] = unk_id
            nout += 1
            continue
        base = nout
        u, i, nout = _match_loop(s, start, end, edge_ptr, edge_lab, edge_dst, fail,
                                 pops_ptr, pops, r, out, nout, stats)
        if i < end - 1 or (u != r and u != r_sharp):
            nout = base
            out[nout] = unk_id
            nout += 1
        elif u == r_sharp and nout == base:
            for t in range(len(si_tokens)):
                out[nout] = si_tokens[t]
                nout += 1
    out_offsets[n_words] = nout
    return nout


def fst_batch(s, offsets, h_prime, sigma_ptr, sigma, chain_end, width,
              r, r_sharp, unk_id, si_tokens, max_len, out, out_offsets, stats):
    """Same contract as :func:`linmax_batch`, one table lookup per character.

    ``h_prime`` is the flattened [node * width + column] transition table;
    the last column is shared by the boundary sentinel and unseen characters.
    """
    last = width - 1
    nout = 0
    n_words = len(offsets) - 1
    for k in range(n_words):
        start = offsets[k]
        end = offsets[k + 1]
        out_offsets[k] = nout
        if max_len >= 0 and end - 1 - start > max_len:
            out[nout] = unk_id
            nout += 1
            continue
        base = nout
        u = r
        i = start
        while i < end:
            c = s[i]
            col = last if c < 0 else c
            cell = u * width + col
            for t in range(sigma_ptr[cell], sigma_ptr[cell + 1]):
                out[nout] = sigma[t]
                nout += 1
            v = h_prime[cell]
            if v < 0:
                u = chain_end[u]
                break
            u = v
            i += 1
            stats[NORMAL] += 1
        if i < end - 1 or (u != r and u != r_sharp):
            nout = base
            out[nout] = unk_id
            nout += 1
        elif u == r_sharp and nout == base:
            for t in range(len(si_tokens)):
                out[nout] = si_tokens[t]
                nout += 1
    out_offsets[n_words] = nout
    return nout


@register_jitable
def _lookup(s, start, end, from_node, edge_ptr, edge_lab, edge_dst, token_id):
    u = from_node
    for k in range(start, end):
        u = _child(edge_ptr, edge_lab, edge_dst, u, s[k])
        if u < 0:
            return -1
    return token_id[u]


@register_jitable
def _naive_word(s, ws, we, edge_ptr, edge_lab, edge_dst, token_id, r, r_sharp,
                unk_id, max_len, out, nout):
    # greedy longest-match-first; every candidate is looked up from scratch
    if max_len >= 0 and we - ws > max_len:
        out[nout] = unk_id
        return nout + 1
    base = nout
    start = ws
    while start < we:
        end = we
        cur = -1
        root = r if start == ws else r_sharp
        while start < end:
            cur = _lookup(s, start, end, root, edge_ptr, edge_lab, edge_dst, token_id)
            if cur >= 0:
                break
            end -= 1
        if cur < 0:
            out[base] = unk_id
            return base + 1
        out[nout] = cur
        nout += 1
        start = end
    return nout


def naive_batch(s, offsets, edge_ptr, edge_lab, edge_dst, token_id, r, r_sharp,
                unk_id, max_len, out, out_offsets):
    nout = 0
    n_words = len(offsets) - 1
    for k in range(n_words):
        out_offsets[k] = nout
        nout = _naive_word(s, offsets[k], offsets[k + 1] - 1, edge_ptr, edge_lab,
                           edge_dst, token_id, r, r_sharp, unk_id, max_len, out, nout)
    out_offsets[n_words] = nout
    return nout


@register_jitable
def _class_at(cls, n, i, seen):
    # seen is the last position looked up; the class lookup counts as a
    # classifier call only for a new position, and the appended boundary
    # char at n needs none.  Returns (class, seen, calls).
    if i >= n:
        return SPACE, seen, 0
    return cls[i], i, (0 if seen == i else 1)


@register_jitable
def _is_bnd(cls, n, i, seen):
    """Returns (boundary?, seen, calls)."""
    if i >= n:
        return True, seen, 0
    calls = 0
    if i > 0:
        k, seen, c = _class_at(cls, n, i - 1, seen)
        calls += c
        if k == PUNCT:
            return True, seen, calls
    k, seen, c = _class_at(cls, n, i, seen)
    return k != WORD, seen, calls + c


@register_jitable
def _e2e_match_loop(s, cls, n, i, edge_ptr, edge_lab, edge_dst, fail, pops_ptr, pops,
                    r, r_p, unk_id, out, nout, stats):
    # s[n] is the appended boundary char; a punctuation char without a
    # precomputed leaf behaves as a leaf holding unk
    u = r
    while i < n + 1:
        c = s[i] if i < n else -1
        while True:
            if u == VIRTUAL_LEAF:
                v = -1
            else:
                v = _child(edge_ptr, edge_lab, edge_dst, u, c)
                if v < 0 and u == r and i < n and cls[i] == PUNCT:
                    v = VIRTUAL_LEAF
            if v != -1:
                break
            if u == VIRTUAL_LEAF:
                out[nout] = unk_id
                nout += 1
                u = r_p
            else:
                fu = fail[u]
                if fu < 0:
                    return u, i, nout
                for k in range(pops_ptr[u], pops_ptr[u + 1]):
                    out[nout] = pops[k]
                    nout += 1
                u = fu
            stats[FAILURE] += 1
        u = v
        i += 1
        stats[NORMAL] += 1
    return u, i, nout


def e2e_text(s, cls, edge_ptr, edge_lab, edge_dst, fail, pops_ptr, pops,
             r, r_sharp, r_p, unk_id, si_tokens, max_len, out, stats):
    """Single-pass text tokenization; returns the number of ids written."""
    n = len(s)
    seen = -1
    calls = 0
    nout = 0
    i = 0
    while i < n + 1:
        start = i
        base = nout
        u, i, nout = _e2e_match_loop(s, cls, n, i, edge_ptr, edge_lab, edge_dst, fail,
                                     pops_ptr, pops, r, r_p, unk_id, out, nout, stats)
        stalled = False
        if i == start and i < n:
            k, seen, c = _class_at(cls, n, i, seen)
            calls += c
            stalled = k == WORD
        if stalled:
            # nothing consumed at a word char (no edge from r): the word is
            # unknown, and the cursor must still move
            nout = base
            out[nout] = unk_id
            nout += 1
            i += 1
            bnd, seen, c = _is_bnd(cls, n, i, seen)
            calls += c
        else:
            bnd, seen, c = _is_bnd(cls, n, i, seen)
            calls += c
            if not bnd or (u != r and u != r_sharp and u != r_p):
                nout = base
                out[nout] = unk_id
                nout += 1
            elif u == r_sharp and nout == base:
                for t in range(len(si_tokens)):
                    out[nout] = si_tokens[t]
                    nout += 1
        while i < n + 1 and not bnd:
            i += 1
            bnd, seen, c = _is_bnd(cls, n, i, seen)
            calls += c
        if max_len >= 0 and i - start > max_len:
            nout = base
            out[nout] = unk_id
            nout += 1
        while i < n:
            k, seen, c = _class_at(cls, n, i, seen)
            calls += c
            if k != SPACE:
                break
            i += 1
        if i == n:
            i += 1
    stats[CLASSIFY] += calls
    return nout


def e2e_naive_text(s, cls, edge_ptr, edge_lab, edge_dst, token_id, r, r_sharp,
                   unk_id, max_len, out):
    """Pre-tokenize on whitespace/punctuation, then run the naive word loop."""
    n = len(s)
    nout = 0
    i = 0
    while i < n:
        k = cls[i]
        if k == SPACE:
            i += 1
        elif k == PUNCT:
            nout = _naive_word(s, i, i + 1, edge_ptr, edge_lab, edge_dst, token_id,
                               r, r_sharp, unk_id, max_len, out, nout)
            i += 1
        else:
            j = i
            while j < n and cls[j] == WORD:
                j += 1
            nout = _naive_word(s, i, j, edge_ptr, edge_lab, edge_dst, token_id,
                               r, r_sharp, unk_id, max_len, out, nout)
            i = j
    return nout


_PY = {
    "match_loop": match_loop,
    "linmax_batch": linmax_batch,
    "fst_batch": fst_batch,
    "naive_batch": naive_batch,
    "e2e_text": e2e_text,
    "e2e_naive_text": e2e_naive_text,
}

_JIT: dict = {}


def get(name: str, backend: str | None = None):
    """Kernel ``name`` for ``backend`` ('numba' or 'python')."""
    backend = backend or DEFAULT_BACKEND
    if backend == "python":
        return _PY[name]
    if backend != "numba":
        raise ValueError(f"unknown backend {backend!r}")
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    fn = _JIT.get(name)
    if fn is None:
        fn = _JIT[name] = numba.njit(cache=True, nogil=True)(_PY[name])
    return fn


def available_backends() -> list[str]:
    return ["numba", "python"] if HAVE_NUMBA else ["python"]
