"""Vocabulary loading and the string conventions shared by every module.

A vocabulary file holds one token per line (the BERT ``vocab.txt``
convention); the line index is the token id.  Characters are Unicode code
points throughout.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

logger = logging.getLogger(__name__)

DEFAULT_SUFFIX_INDICATOR = "##"
DEFAULT_UNK_TOKEN = "[UNK]"
DEFAULT_BOUNDARY_CHAR = " "


class VocabError(ValueError):
    """Raised for vocabulary files or settings that cannot be used."""


@dataclass(frozen=True)
class VocabConfig:
    suffix_indicator: str = DEFAULT_SUFFIX_INDICATOR
    unk_token: str = DEFAULT_UNK_TOKEN
    boundary_char: str = DEFAULT_BOUNDARY_CHAR
    max_word_length: Optional[int] = None


@dataclass(frozen=True)
class Vocabulary:
    tokens: tuple[str, ...]
    id_of: dict[str, int] = field(repr=False)
    suffix_indicator: str
    unk_token: str
    unk_id: int
    boundary_char: str
    max_word_length: Optional[int]
    # Number of leading entries of ``tokens`` that came from the file; an
    # appended unk token is not a matchable vocabulary string.
    n_matchable: int
    duplicates: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        i = self.id_of.get(token)
        return i is not None and i < self.n_matchable

    @property
    def matchable(self) -> Sequence[str]:
        return self.tokens[: self.n_matchable]

    @property
    def max_token_length_m(self) -> int:
        return max((token_length(self, t) for t in self.matchable), default=0)

    @property
    def total_token_length_M(self) -> int:
        return sum(token_length(self, t) for t in self.matchable)

    @property
    def config(self) -> VocabConfig:
        return VocabConfig(self.suffix_indicator, self.unk_token,
                           self.boundary_char, self.max_word_length)

    def to_text(self) -> str:
        """Canonical file form: the matchable tokens, one per line."""
        return "".join(t + "\n" for t in self.matchable)


def token_length(vocab: Vocabulary, token: str) -> int:
    si = vocab.suffix_indicator
    if si and token.startswith(si):
        return len(token) - len(si)
    return len(token)


def _split_lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [ln[:-1] if ln.endswith("\r") else ln for ln in lines]


def from_tokens(tokens: Sequence[str], config: VocabConfig = VocabConfig()) -> Vocabulary:
    """Build a vocabulary from an ordered token list (index = id)."""
    if len(config.boundary_char) != 1:
        raise VocabError(f"boundary char must be a single character, got {config.boundary_char!r}")
    if config.boundary_char in config.suffix_indicator:
        raise VocabError("suffix indicator contains the boundary char")
    if config.max_word_length is not None and config.max_word_length < 0:
        raise VocabError("max_word_length must be non-negative")
    if not tokens:
        raise VocabError("vocabulary is empty")

    kept: list[str] = []
    id_of: dict[str, int] = {}
    dups: list[str] = []
    for lineno, tok in enumerate(tokens, 1):
        if tok == "":
            raise VocabError(f"blank line at line {lineno}")
        if config.boundary_char in tok:
            raise VocabError(
                f"token {tok!r} on line {lineno} contains the boundary char {config.boundary_char!r}")
        if tok in id_of:
            dups.append(tok)
            continue
        id_of[tok] = len(kept)
        kept.append(tok)
    for tok in dups:
        logger.warning("duplicate vocabulary token %r ignored (keeping id %d)", tok, id_of[tok])

    n_matchable = len(kept)
    if config.unk_token not in id_of:
        id_of[config.unk_token] = len(kept)
        kept.append(config.unk_token)
    return Vocabulary(
        tokens=tuple(kept),
        id_of=id_of,
        suffix_indicator=config.suffix_indicator,
        unk_token=config.unk_token,
        unk_id=id_of[config.unk_token],
        boundary_char=config.boundary_char,
        max_word_length=config.max_word_length,
        n_matchable=n_matchable,
        duplicates=tuple(dups),
    )


def load_vocab(text: str, config: VocabConfig = VocabConfig()) -> Vocabulary:
    """Parse vocabulary file contents.

    Duplicates keep their first id and are logged; blank lines, an empty
    file, or a token containing the boundary char raise ``VocabError``.
    """
    lines = _split_lines(text)
    if not lines:
        raise VocabError("vocabulary file is empty")
    return from_tokens(lines, config)


def read_vocab(path, config: VocabConfig = VocabConfig()) -> Vocabulary:
    with open(path, encoding="utf-8") as fh:
        return load_vocab(fh.read(), config)
