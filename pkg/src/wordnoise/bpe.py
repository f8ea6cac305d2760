"""Byte-pair-encoding merges: learning, segmentation, rendering, decoding.

Symbols are strings; a word-final symbol carries a trailing ``"\\0"``
internally (rendered ``</w>`` in merge files). Tokens never contain control
characters, so the marker cannot collide with text, and plain string
comparison orders symbols by (text, final) code point order.
"""

from __future__ import annotations

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .corpus import tokens_of

EOW = "\0"
EOW_TEXT = "</w>"
CONTINUATION = "@@"
HEADER = "#bpe v1"

DEFAULT_MERGES_TAGGING = 2000
DEFAULT_MERGES_MT = 50000


class MergeFileError(ValueError):
    pass


class DanglingContinuationError(ValueError):
    pass


@dataclass(frozen=True)
class MergeTable:
    merges: tuple  # ((left, right), ...) in learning order
    num_requested: int

    def __post_init__(self):
        merges = tuple(tuple(m) for m in self.merges)
        object.__setattr__(self, "merges", merges)
        if len(set(merges)) != len(merges):
            raise ValueError("duplicate merge in table")
        if len(merges) > self.num_requested:
            raise ValueError("more merges than requested")
        object.__setattr__(self, "_ranks", {m: r for r, m in enumerate(merges)})

    def __len__(self):
        return len(self.merges)

    def rank(self, pair) -> int | None:
        return self._ranks.get(pair)


def word_symbols(token: str) -> list[str]:
    syms = list(token)
    syms[-1] += EOW
    return syms


def pair_counts(symbols: Sequence[str]) -> Counter:
    """Adjacent pairs, counted as greedy left-to-right replacement would fire.

    Distinct-symbol pairs cannot overlap; for a run like ``a a a`` the
    ``(a, a)`` pair counts once (floor of run/2).
    """
    counts = Counter()
    consumed = -1  # right index of the last counted identical pair
    for i in range(len(symbols) - 1):
        a, b = symbols[i], symbols[i + 1]
        if a == b:
            if consumed == i:
                continue
            consumed = i + 1
        counts[a, b] += 1
    return counts


def merge_pair(symbols: Sequence[str], pair: tuple) -> list[str]:
    a, b = pair
    out = []
    i, n = 0, len(symbols)
    while i < n:
        if i < n - 1 and symbols[i] == a and symbols[i + 1] == b:
            out.append(a + b)
            i += 2
        else:
            out.append(symbols[i])
            i += 1
    return out


def count_word_frequencies(corpus: Iterable) -> Counter:
    freqs = Counter()
    for sent in tokens_of(corpus):
        freqs.update(sent)
    return freqs


def bpe_learn(word_freqs: dict, num_merges: int) -> MergeTable:
    """Greedy most-frequent-pair merging; ties go to the smaller (left, right)."""
    if num_merges < 0:
        raise ValueError("num_merges must be >= 0")
    words = [word_symbols(w) for w in word_freqs]
    freqs = [word_freqs[w] for w in word_freqs]

    stats: Counter = Counter()
    where: dict = defaultdict(set)
    for wi, syms in enumerate(words):
        for pair, c in pair_counts(syms).items():
            stats[pair] += c * freqs[wi]
            where[pair].add(wi)

    heap = [(-c, pair) for pair, c in stats.items()]
    heapq.heapify(heap)
    merges = []
    done = set()
    while len(merges) < num_merges:
        best = None
        while heap:
            negc, pair = heap[0]
            # a merged pair can re-form when a later merge rebuilds one of its
            # symbols; replay would never apply it again, so neither do we
            if pair not in done and stats.get(pair, 0) == -negc:
                best = pair
                break
            heapq.heappop(heap)  # stale entry
        if best is None or stats[best] < 2:
            break
        heapq.heappop(heap)
        merges.append(best)
        done.add(best)

        touched = set()
        for wi in where.pop(best):
            syms = words[wi]
            before = pair_counts(syms)
            if best not in before:
                continue
            after = pair_counts(merge_pair(syms, best))
            words[wi] = merge_pair(syms, best)
            f = freqs[wi]
            for pair in before.keys() | after.keys():
                delta = (after.get(pair, 0) - before.get(pair, 0)) * f
                if delta:
                    stats[pair] += delta
                    touched.add(pair)
            for pair in after:
                if pair not in done:
                    where[pair].add(wi)
        stats.pop(best, None)
        touched.discard(best)
        for pair in touched - done:
            c = stats[pair]
            if c > 0:
                heapq.heappush(heap, (-c, pair))
            else:
                del stats[pair]
    return MergeTable(tuple(merges), num_merges)


@dataclass(frozen=True)
class SegmentedToken:
    units: tuple

    def render(self) -> str:
        return (CONTINUATION + " ").join(self.units)

    def __len__(self):
        return len(self.units)


class Segmenter:
    """Applies a merge table, caching segmentations per word type."""

    def __init__(self, table: MergeTable):
        self.table = table
        self._cache: dict[str, SegmentedToken] = {}

    def __call__(self, token: str) -> SegmentedToken:
        seg = self._cache.get(token)
        if seg is None:
            seg = self._cache[token] = self._segment(token)
        return seg

    def _segment(self, token: str) -> SegmentedToken:
        syms = word_symbols(token)
        rank = self.table.rank
        floor = 0
        # Replaying merges in table order == repeatedly applying the
        # lowest-ranked present merge whose rank is past the last one applied.
        while len(syms) > 1:
            best = None
            for i in range(len(syms) - 1):
                r = rank((syms[i], syms[i + 1]))
                if r is not None and r >= floor and (best is None or r < best):
                    best = r
            if best is None:
                break
            syms = merge_pair(syms, self.table.merges[best])
            floor = best + 1
        syms[-1] = syms[-1][: -len(EOW)]
        return SegmentedToken(tuple(syms))

    def segment_sentence(self, sentence: Sequence[str]) -> list[SegmentedToken]:
        return [self(tok) for tok in sentence]

    def render_sentence(self, sentence: Sequence[str]) -> str:
        return " ".join(self(tok).render() for tok in sentence)


def bpe_apply(token: str, table: MergeTable) -> SegmentedToken:
    return Segmenter(table)(token)


def render(seg: SegmentedToken) -> str:
    return seg.render()


def bpe_decode(line: str) -> list[str]:
    """Undo ``@@ `` junctions in one rendered line; return the tokens."""
    tokens = []
    pending = []
    for unit in line.split():
        if unit.endswith(CONTINUATION):
            pending.append(unit[: -len(CONTINUATION)])
        else:
            pending.append(unit)
            tokens.append("".join(pending))
            pending = []
    if pending:
        raise DanglingContinuationError(f"line ends inside a token: {line!r}")
    return tokens


def _symbol_text(sym: str) -> str:
    return sym[:-1] + EOW_TEXT if sym.endswith(EOW) else sym


def _symbol_from_text(text: str) -> str:
    return text[: -len(EOW_TEXT)] + EOW if text.endswith(EOW_TEXT) and len(text) > len(EOW_TEXT) else text


def format_merges(table: MergeTable) -> str:
    lines = [HEADER]
    lines += [f"{_symbol_text(a)} {_symbol_text(b)}" for a, b in table.merges]
    return "\n".join(lines) + "\n"


def write_merges(table: MergeTable, stream: IO[str]) -> None:
    stream.write(format_merges(table))


def parse_merges(text: str) -> MergeTable:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].rstrip("\r") != HEADER:
        raise MergeFileError(f"merge file must start with {HEADER!r}")
    merges = []
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.rstrip("\r").split(" ")
        if len(parts) != 2 or not all(parts):
            raise MergeFileError(f"line {lineno}: expected 'left right', got {line!r}")
        a, b = map(_symbol_from_text, parts)
        if a.endswith(EOW):
            raise MergeFileError(f"line {lineno}: word-final symbol on the left")
        merges.append((a, b))
    if len(set(merges)) != len(merges):
        raise MergeFileError("duplicate merge in file")
    return MergeTable(tuple(merges), len(merges))
