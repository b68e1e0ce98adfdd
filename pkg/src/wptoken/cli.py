"""Command line: build a model, tokenize stdin, benchmark engines."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Optional, Sequence

from . import bench as bench_mod
from . import corpus as corpus_mod
from . import kernels, model_io
from .e2e import E2EModel, build_e2e_model, tokenize_text
from .matcher import build_model, tokenize_words
from .vocab import VocabConfig, VocabError, read_vocab

log = logging.getLogger("wptoken")

ENGINES = bench_mod.WORD_ENGINES + bench_mod.TEXT_ENGINES


class CliError(Exception):
    pass


def _read_lines(stream) -> list[str]:
    return [ln.rstrip("\r\n") for ln in stream]


def cmd_build(args) -> int:
    config = VocabConfig(args.suffix_indicator, args.unk, args.boundary_char, args.max_word_length)
    try:
        vocab = read_vocab(args.vocab, config)
    except (VocabError, OSError, UnicodeDecodeError) as exc:
        raise CliError(str(exc)) from exc
    t0 = time.perf_counter()
    model = build_e2e_model(vocab, fst=args.fst) if args.e2e else build_model(vocab, fst=args.fst)
    build_ms = (time.perf_counter() - t0) * 1e3
    model_io.save(model, args.output)
    base = model.base if args.e2e else model
    print(f"tokens={len(vocab.tokens)} nodes={len(base.trie)} "
          f"pops={base.failure.pops_size()} fst={'yes' if base.fst is not None else 'no'} "
          f"e2e={'yes' if args.e2e else 'no'} build_ms={build_ms:.1f}")
    return 0


def _load(path: str):
    try:
        return model_io.load(path)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot load model {path}: {exc}") from exc


def cmd_tokenize(args) -> int:
    model = _load(args.model)
    vocab = model.vocab
    lines = _read_lines(sys.stdin)
    engine = args.engine
    if args.mode == "word":
        engine = engine or "linmax"
        if engine not in bench_mod.WORD_ENGINES:
            raise CliError(f"engine {engine} does not work in word mode")
        base = model.base if isinstance(model, E2EModel) else model
        if engine == "fst" and base.fst is None:
            raise CliError("model has no FST tables; rebuild with --fst")
        try:
            results = tokenize_words(base, lines, engine, args.backend)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    else:
        engine = engine or "e2e"
        if engine not in bench_mod.TEXT_ENGINES:
            raise CliError(f"engine {engine} does not work in text mode")
        if not isinstance(model, E2EModel):
            raise CliError("text mode needs a model built with --e2e")
        results = [tokenize_text(model, ln, args.backend, engine) for ln in lines]
    out = sys.stdout
    for ids in results:
        if args.emit == "ids":
            out.write(" ".join(map(str, ids)) + "\n")
        else:
            out.write(" ".join(vocab.tokens[i] for i in ids) + "\n")
    return 0


def cmd_bench(args) -> int:
    model = _load(args.model)
    with open(args.corpus, encoding="utf-8") as fh:
        items = _read_lines(fh)
    items = [s for s in items if s] if args.skip_empty else items
    if not items:
        raise CliError("corpus is empty")
    engines = args.engines or (["linmax", "fst", "naive"] if args.mode == "word"
                               else ["e2e", "e2e-naive"])
    base = model.base if isinstance(model, E2EModel) else model
    if "fst" in engines and base.fst is None:
        raise CliError("model has no FST tables; rebuild with --fst")
    backends = args.backend or kernels.available_backends()
    results = []
    for be in backends:
        try:
            rep = bench_mod.bench(model, items, engines, args.mode, be, args.repeats,
                                  args.warmup, args.min_time_ms / 1e3, args.iterations)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        results.extend(rep.results)
    if args.json:
        json.dump([{"engine": r.engine, "backend": r.backend, "n": r.n_items,
                    "mean_ns": r.mean_ns, "p95_ns": r.p95_ns,
                    "buckets": {str(k): v for k, v in sorted(r.bucket_ns.items())}}
                   for r in results], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for r in results:
            print(r.line())
    return 0


def cmd_corpus(args) -> int:
    if args.kind == "adversarial-vocab":
        lines = corpus_mod.adversarial_vocab(args.depth)
    elif args.kind == "adversarial":
        lines = []
        for n in args.lengths:
            lines += corpus_mod.adversarial_words(n, args.count, args.seed + n)
    elif args.kind == "natural-vocab":
        lines = corpus_mod.natural_vocab(args.count, args.seed)
    else:
        lines = corpus_mod.natural_words(args.count, args.seed)
    sys.stdout.write("".join(s + "\n" for s in lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wptoken", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="compile a vocabulary file into a model")
    b.add_argument("vocab", help="one token per line, UTF-8")
    b.add_argument("-o", "--output", required=True)
    b.add_argument("--suffix-indicator", default="##")
    b.add_argument("--unk", default="[UNK]")
    b.add_argument("--boundary-char", default=" ")
    b.add_argument("--max-word-length", type=int, default=None)
    b.add_argument("--e2e", action="store_true", help="build for whole-text tokenization")
    b.add_argument("--fst", action="store_true", help="also compile failure-free tables")
    b.set_defaults(func=cmd_build)

    t = sub.add_parser("tokenize", help="tokenize stdin, one line in, one line out")
    t.add_argument("model")
    t.add_argument("--mode", choices=["word", "text"], default="word")
    t.add_argument("--engine", choices=ENGINES, default=None)
    t.add_argument("--emit", choices=["ids", "tokens"], default="ids",
                   help="token ids (default) or token strings for debugging")
    t.add_argument("--backend", choices=["numba", "python"], default=None)
    t.set_defaults(func=cmd_tokenize)

    k = sub.add_parser("bench", help="time engines over a corpus file")
    k.add_argument("model")
    k.add_argument("corpus", help="one word (or text) per line")
    k.add_argument("--mode", choices=["word", "text"], default="word")
    k.add_argument("--engines", nargs="+", choices=ENGINES, default=None)
    k.add_argument("--backend", nargs="+", choices=["numba", "python"], default=None)
    k.add_argument("--repeats", type=int, default=10)
    k.add_argument("--warmup", type=int, default=1)
    k.add_argument("--iterations", type=int, default=None,
                   help="fixed calls per bucket instead of --min-time-ms")
    k.add_argument("--min-time-ms", type=float, default=10.0)
    k.add_argument("--skip-empty", action="store_true")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_bench)

    c = sub.add_parser("corpus", help="print a synthetic vocabulary or corpus")
    c.add_argument("kind", choices=["adversarial", "adversarial-vocab", "natural",
                                    "natural-vocab"])
    c.add_argument("--count", type=int, default=1000)
    c.add_argument("--lengths", type=int, nargs="+", default=[64, 128, 256, 512])
    c.add_argument("--depth", type=int, default=16)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
