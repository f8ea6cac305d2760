"""Corpus BLEU, unknown-word rate, edit distance, segmentation divergence."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bpe import MergeTable, Segmenter
from .corpus import tokens_of


class UndefinedMetricError(ValueError):
    pass


class AlignmentError(ValueError):
    pass


@dataclass(frozen=True)
class BleuScore:
    score: float
    precisions: tuple  # 4 fractions in [0, 1]
    brevity_penalty: float
    hyp_length: int
    ref_length: int
    matches: tuple = ()
    totals: tuple = ()

    def format(self) -> str:
        ratio = self.hyp_length / self.ref_length if self.ref_length else 0.0
        precs = "/".join(f"{100 * p:.1f}" for p in self.precisions)
        return (
            f"BLEU = {self.score:.2f}, {precs} (BP={self.brevity_penalty:.3f}, "
            f"ratio={ratio:.3f}, hyp_len={self.hyp_length}, ref_len={self.ref_length})"
        )


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def corpus_bleu(hypotheses: Iterable, references: Iterable, max_n: int = 4) -> BleuScore:
    """Case-sensitive single-reference corpus BLEU without smoothing."""
    hyps = tokens_of(hypotheses)
    refs = tokens_of(references)
    if len(hyps) != len(refs):
        raise AlignmentError(f"{len(hyps)} hypotheses vs {len(refs)} references")
    matches = [0] * max_n
    totals = [0] * max_n
    hyp_len = ref_len = 0
    for hyp, ref in zip(hyps, refs):
        hyp_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, max_n + 1):
            h, r = _ngrams(hyp, n), _ngrams(ref, n)
            matches[n - 1] += sum(min(c, r[g]) for g, c in h.items())
            totals[n - 1] += max(len(hyp) - n + 1, 0)
    if ref_len == 0:
        raise UndefinedMetricError("all references are empty")
    if hyp_len == 0:
        raise UndefinedMetricError("hypotheses are empty")
    precisions = tuple(m / t if t else 0.0 for m, t in zip(matches, totals))
    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    if min(matches) == 0:
        score = 0.0
    else:
        score = 100.0 * bp * math.exp(sum(math.log(p) for p in precisions) / max_n)
    return BleuScore(score, precisions, bp, hyp_len, ref_len, tuple(matches), tuple(totals))


def unk_rate(corpus: Iterable, vocabulary) -> float:
    total = unknown = 0
    for sent in tokens_of(corpus):
        for tok in sent:
            total += 1
            unknown += tok not in vocabulary
    if total == 0:
        raise UndefinedMetricError("corpus has no tokens")
    return unknown / total


def levenshtein(a: str, b: str) -> int:
    """Unit-cost insert/delete/substitute distance (two-row DP)."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


@dataclass(frozen=True)
class SegmentationDivergence:
    mean_units_clean: float
    mean_units_noisy: float
    changed_fraction: float
    unk_rate_clean: float
    unk_rate_noisy: float
    tokens: int = 0

    def as_rows(self) -> list[tuple[str, str]]:
        return [
            ("tokens", str(self.tokens)),
            ("mean_units_clean", f"{self.mean_units_clean:.4f}"),
            ("mean_units_noisy", f"{self.mean_units_noisy:.4f}"),
            ("changed_fraction", f"{self.changed_fraction:.4f}"),
            ("unk_rate_clean", f"{self.unk_rate_clean:.4f}"),
            ("unk_rate_noisy", f"{self.unk_rate_noisy:.4f}"),
        ]


def segmentation_divergence(clean: Iterable, noisy: Iterable, merges: MergeTable,
                            word_vocab) -> SegmentationDivergence:
    """How much noise changes BPE segmentations and word-level coverage."""
    clean_s, noisy_s = tokens_of(clean), tokens_of(noisy)
    if len(clean_s) != len(noisy_s):
        raise AlignmentError(f"{len(clean_s)} clean vs {len(noisy_s)} noisy sentences")
    seg = Segmenter(merges)
    n = units_c = units_n = changed = 0
    for i, (cs, ns) in enumerate(zip(clean_s, noisy_s)):
        if len(cs) != len(ns):
            raise AlignmentError(f"sentence {i}: {len(cs)} vs {len(ns)} tokens")
        for ct, nt in zip(cs, ns):
            a, b = seg(ct), seg(nt)
            n += 1
            units_c += len(a)
            units_n += len(b)
            changed += a.units != b.units
    if n == 0:
        raise UndefinedMetricError("corpora have no tokens")
    return SegmentationDivergence(
        mean_units_clean=units_c / n,
        mean_units_noisy=units_n / n,
        changed_fraction=changed / n,
        unk_rate_clean=unk_rate(clean_s, word_vocab),
        unk_rate_noisy=unk_rate(noisy_s, word_vocab),
        tokens=n,
    )
