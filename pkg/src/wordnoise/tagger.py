"""Averaged-perceptron morphological tagger with noise-adaptive training.

Tokens are classified independently (no transition features); context comes
from neighbouring word identities. Words that are rare in training, or
unseen, get prefix/suffix features up to length 10.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from . import rng as _rng
from .corpus import TaggedSentence
from .metrics import UndefinedMetricError
from .noise import Alphabet, MixtureSpec, CLEAN, build_alphabet, noise_corpus

log = logging.getLogger(__name__)

MAX_AFFIX = 10
WINDOW = 2
BOS = "<S>"
EOS = "</S>"
MODEL_HEADER = "#wordnoise-tagger v1"
_SHUFFLE = _rng.name_key("shuffle")


class TrainingError(ValueError):
    pass


class ModelFormatError(ValueError):
    pass


def _is_punct(ch: str) -> bool:
    return not ch.isalnum()


def extract_features(sentence: Sequence[str], index: int, freqs: dict,
                     rare_threshold: int) -> dict:
    """Sparse feature counts for the token at ``index``."""
    word = sentence[index]
    feats: Counter = Counter()
    feats["bias"] += 1
    feats["w0=" + word] += 1
    feats["lw0=" + word.lower()] += 1

    freq = freqs.get(word)
    if freq is None or freq < rare_threshold:
        for k in range(1, min(MAX_AFFIX, len(word)) + 1):
            feats[f"pre{k}={word[:k]}"] += 1
            feats[f"suf{k}={word[-k:]}"] += 1

    for off in range(-WINDOW, WINDOW + 1):
        if off == 0:
            continue
        j = index + off
        if j < 0:
            ctx = BOS
        elif j >= len(sentence):
            ctx = EOS
        else:
            ctx = sentence[j]
        feats[f"w{off:+d}={ctx}"] += 1

    if any(ch.isdigit() for ch in word):
        feats["has_digit"] += 1
    if any(_is_punct(ch) for ch in word):
        feats["has_punct"] += 1
    if word.isupper():
        feats["all_caps"] += 1
    if word[0].isupper():
        feats["init_cap"] += 1
    return dict(feats)


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 5
    seed: int = 0
    augmentation: MixtureSpec = field(default_factory=lambda: MixtureSpec.single(CLEAN))
    rare_threshold: int = 10

    def __post_init__(self):
        if self.epochs < 1:
            raise TrainingError("epochs must be >= 1")
        if self.rare_threshold < 0:
            raise TrainingError("rare_threshold must be >= 0")
        _rng.check_seed(self.seed)


class TaggerModel:
    def __init__(self, tagset: Sequence[str], weights: dict, freqs: dict,
                 config: TrainConfig, averaged: bool = True):
        self.tagset = list(tagset)
        self.weights = weights  # feature -> {tag index: weight}
        self.freqs = dict(freqs)
        self.config = config
        self.averaged = averaged

    def __eq__(self, other):
        return (isinstance(other, TaggerModel) and self.tagset == other.tagset
                and self.weights == other.weights and self.freqs == other.freqs
                and self.config == other.config and self.averaged == other.averaged)

    def features(self, sentence: Sequence[str], index: int) -> dict:
        return extract_features(sentence, index, self.freqs, self.config.rare_threshold)

    def predict(self, sentence: Sequence[str]) -> list[str]:
        return [self.tagset[i] for i in _predict_indices(self.weights, len(self.tagset),
                                                         sentence, self.freqs,
                                                         self.config.rare_threshold)]


def _argmax(weights: dict, ntags: int, feats: dict) -> int:
    scores = [0.0] * ntags
    for f, c in feats.items():
        wf = weights.get(f)
        if wf:
            for t, w in wf.items():
                scores[t] += c * w
    best = 0
    for t in range(1, ntags):
        if scores[t] > scores[best]:
            best = t
    return best


def _predict_indices(weights, ntags, sentence, freqs, rare_threshold):
    return [_argmax(weights, ntags, extract_features(sentence, i, freqs, rare_threshold))
            for i in range(len(sentence))]


class _Averager:
    """Perceptron weights plus lazily accumulated running sums."""

    def __init__(self):
        self.weights: dict = {}
        self._totals: dict = {}
        self._stamps: dict = {}
        self.instances = 0

    def update(self, feats: dict, gold: int, pred: int) -> None:
        i = self.instances
        for f, c in feats.items():
            wf = self.weights.setdefault(f, {})
            for t, delta in ((gold, c), (pred, -c)):
                key = (f, t)
                w = wf.get(t, 0.0)
                self._totals[key] = self._totals.get(key, 0.0) + (i - self._stamps.get(key, 0)) * w
                self._stamps[key] = i
                wf[t] = w + delta

    def averaged(self) -> dict:
        n = self.instances
        out: dict = {}
        for f, wf in self.weights.items():
            for t, w in wf.items():
                key = (f, t)
                total = self._totals.get(key, 0.0) + (n - self._stamps.get(key, 0)) * w
                avg = total / n if n else 0.0
                if avg:
                    out.setdefault(f, {})[t] = avg
        return out


def train_tagger(corpus: Sequence[TaggedSentence], config: TrainConfig,
                 alphabet: Alphabet | None = None) -> TaggerModel:
    """Noise-adaptive training: fresh noise every epoch, gold tags unchanged."""
    corpus = list(corpus)
    if not corpus:
        raise TrainingError("training corpus is empty")
    tagset = sorted({t for s in corpus for t in s.tags})
    if not tagset:
        raise TrainingError("training corpus has no tags")
    tag_index = {t: i for i, t in enumerate(tagset)}
    freqs = Counter(tok for s in corpus for tok in s.tokens)
    mixture = config.augmentation
    if mixture.needs_alphabet() and alphabet is None:
        alphabet = build_alphabet(corpus)

    model = _Averager()
    ntags = len(tagset)
    gold = [[tag_index[t] for t in s.tags] for s in corpus]
    for epoch in range(config.epochs):
        if mixture.is_clean():
            inputs = [s.tokens for s in corpus]
        else:
            inputs, _ = noise_corpus(corpus, mixture, config.seed, alphabet, epoch=epoch)
        order = list(range(len(corpus)))
        _rng.Stream.from_seed(_rng.derive_seed(config.seed, epoch, _SHUFFLE)).shuffle(order)
        errors = total = 0
        for si in order:
            sent = inputs[si]
            for i in range(len(sent)):
                feats = extract_features(sent, i, freqs, config.rare_threshold)
                pred = _argmax(model.weights, ntags, feats)
                g = gold[si][i]
                if pred != g:
                    model.update(feats, g, pred)
                    errors += 1
                total += 1
                model.instances += 1
        log.debug("epoch %d: %d/%d training errors", epoch, errors, total)
    return TaggerModel(tagset, model.averaged(), freqs, config)


def predict_tags(model: TaggerModel, sentence: Sequence[str]) -> list[str]:
    return model.predict(sentence)


def evaluate_tagger(model: TaggerModel, corpus: Iterable[TaggedSentence],
                    inputs: Sequence[Sequence[str]] | None = None) -> float:
    """Token accuracy; ``inputs`` optionally replaces the (e.g. noised) tokens."""
    correct = total = 0
    for k, sent in enumerate(corpus):
        tokens = sent.tokens if inputs is None else inputs[k]
        for p, g in zip(model.predict(tokens), sent.tags):
            correct += p == g
            total += 1
    if total == 0:
        raise UndefinedMetricError("cannot compute accuracy over zero tokens")
    return correct / total


def format_model(model: TaggerModel) -> str:
    cfg = model.config
    lines = [
        MODEL_HEADER,
        f"meta\tepochs\t{cfg.epochs}",
        f"meta\tseed\t{cfg.seed}",
        f"meta\trare_threshold\t{cfg.rare_threshold}",
        f"meta\taugmentation\t{cfg.augmentation.to_json()}",
        f"meta\taveraged\t{int(model.averaged)}",
        "tags\t" + "\t".join(model.tagset),
    ]
    for word in sorted(model.freqs):
        lines.append(f"freq\t{word}\t{model.freqs[word]}")
    for f in sorted(model.weights):
        for t in sorted(model.weights[f]):
            lines.append(f"w\t{f}\t{t}\t{model.weights[f][t]!r}")
    return "\n".join(lines) + "\n"


def write_model(model: TaggerModel, stream: IO[str]) -> None:
    stream.write(format_model(model))


def parse_model(text: str) -> TaggerModel:
    lines = text.split("\n")
    if not lines or lines[0] != MODEL_HEADER:
        raise ModelFormatError(f"not a tagger model (expected {MODEL_HEADER!r})")
    meta: dict = {}
    tagset = None
    freqs: dict = {}
    weights: dict = {}
    try:
        for lineno, line in enumerate(lines[1:], 2):
            if not line:
                continue
            kind, _, rest = line.partition("\t")
            if kind == "meta":
                key, value = rest.split("\t", 1)
                meta[key] = value
            elif kind == "tags":
                tagset = rest.split("\t")
            elif kind == "freq":
                word, count = rest.split("\t")
                freqs[word] = int(count)
            elif kind == "w":
                f, t, w = rest.split("\t")
                weights.setdefault(f, {})[int(t)] = float(w)
            else:
                raise ModelFormatError(f"line {lineno}: unknown record {kind!r}")
        config = TrainConfig(
            epochs=int(meta["epochs"]),
            seed=int(meta["seed"]),
            augmentation=MixtureSpec.from_json(meta["augmentation"]),
            rare_threshold=int(meta["rare_threshold"]),
        )
        averaged = bool(int(meta.get("averaged", "1")))
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ModelFormatError):
            raise
        raise ModelFormatError(f"malformed model file: {exc}") from None
    if tagset is None:
        raise ModelFormatError("model file has no tagset")
    for wf in weights.values():
        for t in wf:
            if not 0 <= t < len(tagset):
                raise ModelFormatError(f"weight refers to tag index {t} outside tagset")
    return TaggerModel(tagset, weights, freqs, config, averaged)
