"""Plain-text and CoNLL-U corpora.

A sentence is a tuple of token strings; a corpus is a list of sentences.
Input is assumed to be pre-tokenized: only whitespace splitting happens here.
"""

from __future__ import annotations

import io
import os
import sys
import unicodedata
from dataclasses import dataclass
from typing import IO, Iterable, Sequence, Union

Sentence = tuple  # tuple[str, ...]
Corpus = list  # list[Sentence] or list[TaggedSentence]
Source = Union[str, os.PathLike, IO]


class CorpusFormatError(ValueError):
    """Malformed input (bad encoding, bad CoNLL-U line, illegal token)."""


@dataclass(frozen=True)
class TaggedSentence:
    tokens: tuple
    tags: tuple

    def __post_init__(self):
        if len(self.tokens) != len(self.tags):
            raise ValueError(
                f"{len(self.tokens)} tokens but {len(self.tags)} tags"
            )

    def __len__(self):
        return len(self.tokens)


def is_valid_token(token: str) -> bool:
    if not token:
        return False
    for ch in token:
        if ch.isspace() or unicodedata.category(ch) == "Cc":
            return False
    return True


def _read_bytes(source: Source) -> bytes:
    if isinstance(source, (str, os.PathLike)):
        if os.fspath(source) == "-":
            return sys.stdin.buffer.read()
        with open(source, "rb") as f:
            return f.read()
    data = source.read()
    if isinstance(data, str):
        return data.encode("utf-8")
    return data


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusFormatError(f"invalid UTF-8 at byte offset {exc.start}") from None


def _lines(text: str) -> list[str]:
    # Only LF separates lines; str.splitlines would also break on U+2028 etc.
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]


def read_plain(source: Source) -> list:
    """One sentence per line, tokens separated by runs of whitespace."""
    corpus = []
    for lineno, line in enumerate(_lines(_decode(_read_bytes(source))), 1):
        tokens = tuple(line.split())
        for tok in tokens:
            if not is_valid_token(tok):
                raise CorpusFormatError(f"line {lineno}: control character in token {tok!r}")
        corpus.append(tokens)
    return corpus


def format_plain(corpus: Iterable[Sequence[str]]) -> str:
    return "".join(" ".join(sent) + "\n" for sent in corpus)


def write_plain(corpus: Iterable[Sequence[str]], stream: IO[str] | None = None) -> str:
    """Serialize ``corpus``; also write it to ``stream`` if one is given."""
    text = format_plain(corpus)
    if stream is not None:
        stream.write(text)
    return text


def read_conllu(source: Source) -> list[TaggedSentence]:
    """Read FORM and UPOS|FEATS from CoNLL-U, skipping comments and ranges."""
    corpus = []
    tokens: list[str] = []
    tags: list[str] = []
    in_sentence = False
    for lineno, line in enumerate(_lines(_decode(_read_bytes(source))), 1):
        if not line.strip():
            if in_sentence:
                corpus.append(TaggedSentence(tuple(tokens), tuple(tags)))
                tokens, tags, in_sentence = [], [], False
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 10:
            raise CorpusFormatError(
                f"line {lineno}: expected 10 tab-separated columns, got {len(cols)}"
            )
        in_sentence = True
        if "-" in cols[0] or "." in cols[0]:
            continue
        form = cols[1]
        if not is_valid_token(form):
            raise CorpusFormatError(f"line {lineno}: illegal FORM {form!r}")
        tokens.append(form)
        tags.append(f"{cols[3]}|{cols[5]}")
    if in_sentence:
        corpus.append(TaggedSentence(tuple(tokens), tuple(tags)))
    return corpus


def format_conllu(corpus: Iterable[TaggedSentence]) -> str:
    """Minimal CoNLL-U writer (FORM, UPOS, FEATS filled; other columns ``_``)."""
    out = io.StringIO()
    for sent in corpus:
        for i, (tok, tag) in enumerate(zip(sent.tokens, sent.tags), 1):
            upos, _, feats = tag.partition("|")
            out.write(f"{i}\t{tok}\t_\t{upos}\t_\t{feats or '_'}\t_\t_\t_\t_\n")
        out.write("\n")
    return out.getvalue()


def tokens_of(corpus: Iterable) -> list:
    """Bare token tuples, whether ``corpus`` is plain or tagged."""
    return [s.tokens if isinstance(s, TaggedSentence) else tuple(s) for s in corpus]
