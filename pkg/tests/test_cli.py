import json
import subprocess
import sys

import pytest

from support import E2E_EXAMPLE_TOKENS, SAMPLE_TOKENS
from wptoken import model_io


def run(*args, stdin=""):
    return subprocess.run([sys.executable, "-m", "wptoken.cli", *args], input=stdin,
                          capture_output=True, text=True, encoding="utf-8")


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    (d / "sample.txt").write_text("\n".join(SAMPLE_TOKENS) + "\n", encoding="utf-8")
    (d / "ex.txt").write_text("\n".join(E2E_EXAMPLE_TOKENS) + "\n", encoding="utf-8")
    assert run("build", str(d / "sample.txt"), "-o", str(d / "sample.bin"), "--fst").returncode == 0
    assert run("build", str(d / "sample.txt"), "-o", str(d / "plain.bin")).returncode == 0
    assert run("build", str(d / "ex.txt"), "--e2e", "-o", str(d / "ex.bin")).returncode == 0
    return d


def test_build_reports_stats(files):
    res = run("build", str(files / "sample.txt"), "-o", str(files / "again.bin"))
    assert res.returncode == 0
    assert "nodes=14" in res.stdout and "pops=12" in res.stdout and "build_ms=" in res.stdout
    m = model_io.load(files / "again.bin")
    assert m.failure.f[6] == 10 and m.fst is None
    assert model_io.load(files / "sample.bin").fst is not None


def test_build_rejects_space_token(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("a\nb c\n", encoding="utf-8")
    res = run("build", str(p), "-o", str(tmp_path / "x.bin"))
    assert res.returncode == 1 and "boundary" in res.stderr


def test_build_missing_file(tmp_path):
    assert run("build", str(tmp_path / "nope.txt"), "-o", str(tmp_path / "x.bin")).returncode == 1


@pytest.mark.parametrize("engine", ["linmax", "fst", "naive"])
def test_tokenize_words(files, engine):
    res = run("tokenize", str(files / "sample.bin"), "--engine", engine, stdin="abcdz\n\nabcd\n")
    assert res.returncode == 0
    assert res.stdout == "0 2 3 5\n\n6\n"
    res = run("tokenize", str(files / "sample.bin"), "--engine", engine, "--emit", "tokens",
              stdin="abcdz\n##bc\n")
    assert res.stdout == "a ##b ##c ##dz\n##b ##c\n"


@pytest.mark.parametrize("engine", ["e2e", "e2e-naive"])
def test_tokenize_text(files, engine):
    res = run("tokenize", str(files / "ex.bin"), "--mode", "text", "--engine", engine,
              "--emit", "tokens", stdin="john johanson's\n\n")
    assert res.returncode == 0 and res.stdout == "john johan ##son ' s\n\n"


def test_tokenize_errors(files):
    assert run("tokenize", str(files / "plain.bin"), "--engine", "fst", stdin="a\n").returncode == 1
    assert run("tokenize", str(files / "sample.bin"), "--mode", "text", stdin="a\n").returncode == 1
    assert run("tokenize", str(files / "ex.bin"), "--mode", "text", "--engine", "linmax",
               stdin="a\n").returncode == 1
    assert run("tokenize", str(files / "sample.bin"), stdin="a b\n").returncode == 1
    assert run("tokenize", str(files / "sample.txt"), stdin="a\n").returncode == 1


def test_engines_byte_identical(files):
    words = "\n".join(["abcdz", "abcdx", "##bc", "", "##", "abcz", "a", "x", "aa"]) + "\n"
    outs = {run("tokenize", str(files / "sample.bin"), "--engine", e, stdin=words).stdout
            for e in ("linmax", "fst", "naive")}
    assert len(outs) == 1


def test_bench_json_and_errors(files, tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("abcdz\nabcdz\nabcdz\n", encoding="utf-8")
    res = run("bench", str(files / "sample.bin"), str(corpus), "--repeats", "2",
              "--min-time-ms", "1", "--json", "--backend", "numba")
    assert res.returncode == 0
    rows = json.loads(res.stdout)
    assert {r["engine"] for r in rows} == {"linmax", "fst", "naive"}
    for r in rows:
        # one length bucket: percentile equals mean
        assert r["p95_ns"] == r["mean_ns"] and r["n"] == 3
    empty = tmp_path / "e.txt"
    empty.write_text("", encoding="utf-8")
    assert run("bench", str(files / "sample.bin"), str(empty)).returncode == 1
    res = run("bench", str(files / "ex.bin"), str(corpus), "--mode", "text", "--repeats", "1",
              "--min-time-ms", "1")
    assert res.returncode == 0 and "e2e-naive" in res.stdout


def test_corpus_command():
    res = run("corpus", "adversarial", "--count", "2", "--lengths", "3", "5")
    assert [len(x) for x in res.stdout.split()] == [3, 3, 5, 5]
