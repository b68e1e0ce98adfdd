"""Linear-time WordPiece tokenization with failure links."""

from .e2e import E2EModel, build_e2e_model, tokenize_text
from .matcher import (TokenizerModel, build_model, token_strings, tokenize_word,
                      tokenize_word_fst, tokenize_word_naive, tokenize_words)
from .vocab import VocabConfig, VocabError, Vocabulary, from_tokens, load_vocab, read_vocab

__version__ = "0.1.0"

__all__ = [
    "E2EModel", "TokenizerModel", "VocabConfig", "VocabError", "Vocabulary",
    "build_e2e_model", "build_model", "from_tokens", "load_vocab", "read_vocab",
    "token_strings", "tokenize_text", "tokenize_word", "tokenize_word_fst",
    "tokenize_word_naive", "tokenize_words",
]
