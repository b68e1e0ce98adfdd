"""Binary model files.

Layout (little-endian)::

    magic     8 bytes  b"WPTKMDL\\x00"
    version   u32
    hdr_len   u32
    header    hdr_len bytes of UTF-8 JSON
    arrays    raw little-endian blobs, in header["arrays"] order

The trie is stored as (parent, label code point, child) triples, the
failure table as a link array (-1 for none) plus an offset array into a
flat pool of token ids.
"""

from __future__ import annotations

import io
import json
import struct
from typing import Union

import numpy as np

from .e2e import E2EModel
from .failure import FailureTable, FstTable
from .matcher import TokenizerModel
from .trie import Trie
from .vocab import VocabConfig, from_tokens

MAGIC = b"WPTKMDL\x00"
VERSION = 1

Model = Union[TokenizerModel, E2EModel]


class ModelFormatError(ValueError):
    pass


def _split_pops(ptr: np.ndarray, flat: np.ndarray) -> list[list[int]]:
    flat_l = flat.tolist()
    p = ptr.tolist()
    return [flat_l[p[k]:p[k + 1]] for k in range(len(p) - 1)]


def dumps(model: Model) -> bytes:
    e2e = isinstance(model, E2EModel)
    base = model.base if e2e else model
    vocab, trie, ftab = base.vocab, base.trie, base.failure
    par, lab, chd = trie.edge_triples()
    pops_ptr = np.zeros(len(trie) + 1, dtype=np.int64)
    np.cumsum([len(p) for p in ftab.F], out=pops_ptr[1:])
    arrays = {
        "edge_parent": par,
        "edge_label": lab,
        "edge_child": chd,
        "token_id": np.asarray(trie.token_id, dtype=np.int32),
        "fail": np.asarray(ftab.f, dtype=np.int32),
        "pops_ptr": pops_ptr,
        "pops": np.asarray([t for p in ftab.F for t in p], dtype=np.int32),
    }
    fst = base.fst
    if fst is not None:
        arrays.update(fst_alphabet=fst.alphabet, fst_next=fst.h_prime.reshape(-1),
                      fst_sigma_ptr=fst.sigma_ptr, fst_sigma=fst.sigma,
                      fst_chain_end=fst.chain_end)
    header = {
        "vocab": {
            "tokens": list(vocab.matchable),
            "suffix_indicator": vocab.suffix_indicator,
            "unk_token": vocab.unk_token,
            "boundary_char": vocab.boundary_char,
            "max_word_length": vocab.max_word_length,
        },
        "n_nodes": len(trie),
        "r": trie.r,
        "r_sharp": trie.r_sharp,
        "suffix_indicator_tokens": list(base.suffix_indicator_tokens),
        "e2e": e2e,
        "r_p": model.r_p if e2e else None,
        "leaves": model.leaves if e2e else [],
        "fst_width": fst.width if fst is not None else 0,
        "arrays": [],
    }
    blobs = []
    for name, arr in arrays.items():
        dt = np.dtype(arr.dtype).newbyteorder("<")
        header["arrays"].append({"name": name, "dtype": dt.str, "len": int(arr.size)})
        blobs.append(np.ascontiguousarray(arr, dtype=dt).tobytes())
    hdr = json.dumps(header, ensure_ascii=False).encode("utf-8")
    buf = io.BytesIO()
    buf.write(MAGIC)
    buf.write(struct.pack("<II", VERSION, len(hdr)))
    buf.write(hdr)
    for b in blobs:
        buf.write(b)
    return buf.getvalue()


def loads(data: bytes) -> Model:
    if data[:8] != MAGIC:
        raise ModelFormatError("not a model file (bad magic)")
    version, hdr_len = struct.unpack_from("<II", data, 8)
    if version != VERSION:
        raise ModelFormatError(f"unsupported model version {version}")
    pos = 16 + hdr_len
    header = json.loads(data[16:pos].decode("utf-8"))
    arrays = {}
    for spec in header["arrays"]:
        dt = np.dtype(spec["dtype"])
        nbytes = dt.itemsize * spec["len"]
        if pos + nbytes > len(data):
            raise ModelFormatError("truncated model file")
        arrays[spec["name"]] = np.frombuffer(data, dtype=dt, count=spec["len"], offset=pos).astype(
            dt.newbyteorder("="))
        pos += nbytes

    hv = header["vocab"]
    vocab = from_tokens(hv["tokens"], VocabConfig(hv["suffix_indicator"], hv["unk_token"],
                                                  hv["boundary_char"], hv["max_word_length"]))
    n = header["n_nodes"]
    trie = Trie.from_triples(n, hv["suffix_indicator"], header["r"], header["r_sharp"],
                             arrays["edge_parent"], arrays["edge_label"],
                             arrays["edge_child"], arrays["token_id"])
    ftab = FailureTable(arrays["fail"].tolist(), _split_pops(arrays["pops_ptr"], arrays["pops"]))
    fst = None
    if "fst_next" in arrays:
        width = header["fst_width"]
        fst = FstTable(alphabet=arrays["fst_alphabet"],
                       h_prime=arrays["fst_next"].reshape(n, width),
                       sigma_ptr=arrays["fst_sigma_ptr"], sigma=arrays["fst_sigma"],
                       chain_end=arrays["fst_chain_end"])
    base = TokenizerModel(vocab, trie, ftab, fst, header["suffix_indicator_tokens"])
    if header["e2e"]:
        return E2EModel(base, header["r_p"], header["leaves"])
    return base


def save(model: Model, path) -> None:
    with open(path, "wb") as fh:
        fh.write(dumps(model))


def load(path) -> Model:
    with open(path, "rb") as fh:
        return loads(fh.read())
