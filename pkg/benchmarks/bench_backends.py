"""Compare the compiled and interpreted kernels on the synthetic corpora.

    python benchmarks/bench_backends.py [--repeats N] [--quick]

Prints mean / 95th-percentile ns per word for each engine and backend, the
growth factor per doubling of word length on the adversarial corpus, and the
compiled-over-interpreted speedup.
"""

from __future__ import annotations

import argparse

from wptoken import corpus, kernels
from wptoken.bench import bench
from wptoken.e2e import build_e2e_model
from wptoken.matcher import build_model
from wptoken.vocab import from_tokens


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=10)
    ap.add_argument("--quick", action="store_true", help="smaller corpora, 3 repeats")
    args = ap.parse_args()
    repeats = 3 if args.quick else args.repeats
    per_len = 10 if args.quick else 50
    n_nat = 2000 if args.quick else 20000
    backends = kernels.available_backends()

    adv_model = build_model(from_tokens(corpus.adversarial_vocab()), fst=True)
    lengths = (64, 128, 256, 512)
    adv = [w for n in lengths for w in corpus.adversarial_words(n, per_len, seed=n)]
    nat_vocab = from_tokens(corpus.natural_vocab())
    nat_model = build_model(nat_vocab, fst=True)
    nat = corpus.natural_words(n_nat)
    text_model = build_e2e_model(nat_vocab)
    texts = [" ".join(nat[k:k + 12]) + "." for k in range(0, n_nat, 12)]

    means: dict[tuple[str, str, str], float] = {}
    for label, model, items, engines, mode in [
        ("adversarial", adv_model, adv, ["linmax", "fst", "naive"], "word"),
        ("natural", nat_model, nat, ["linmax", "fst", "naive"], "word"),
        ("text", text_model, texts, ["e2e", "e2e-naive"], "text"),
    ]:
        print(f"== {label} ({len(items)} inputs)")
        for be in backends:
            # the interpreter is slow on the long adversarial words
            eng = engines if be == "numba" or label != "adversarial" else ["linmax", "fst"]
            rep = bench(model, items, eng, mode, be, repeats=repeats)
            for r in rep.results:
                print("  " + r.line())
                means[(label, r.engine, be)] = r.mean_ns
                if label == "adversarial":
                    growth = [r.bucket_ns[b] / r.bucket_ns[a] for a, b in zip(lengths, lengths[1:])]
                    print(f"  {'':<10} growth per doubling: "
                          + " ".join(f"{g:.2f}" for g in growth))
    if "python" in backends and "numba" in backends:
        print("== compiled speedup over interpreted")
        for (label, engine, be), v in sorted(means.items()):
            if be == "numba" and (label, engine, "python") in means:
                print(f"  {label:<12} {engine:<10} x{means[(label, engine, 'python')] / v:.1f}")


if __name__ == "__main__":
    main()
