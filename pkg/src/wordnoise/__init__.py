"""Reproducible word-form perturbations and robustness measurement."""

from .corpus import TaggedSentence, read_conllu, read_plain, write_plain
from .noise import (
    Alphabet,
    MixtureSpec,
    NoiseSpec,
    build_alphabet,
    flip_word,
    noise_corpus,
    noise_sentence,
    scramble_word,
    swap_word,
)

__version__ = "0.1.0"
