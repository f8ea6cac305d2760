"""Word-form perturbations: character swaps, word scrambles, character flips.

Generators take an explicit :class:`~wordnoise.rng.Stream`; corpus-level
noising derives one stream per sentence so results do not depend on
processing order.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import rng as _rng
from .corpus import is_valid_token, tokens_of

KINDS = ("clean", "swap", "scramble", "flip")
MODES = ("cycle", "sample")
MAX_COUNT = (1 << 64) - 1


class NoiseConfigError(ValueError):
    pass


class InsufficientAlphabetError(ValueError):
    pass


@dataclass(frozen=True)
class NoiseSpec:
    kind: str = "clean"
    rate: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise NoiseConfigError(f"unknown noise kind {self.kind!r}")
        if not 0.0 <= self.rate <= 1.0:
            raise NoiseConfigError(f"rate must be in [0, 1], got {self.rate}")

    @property
    def label(self) -> str:
        if self.kind in ("swap", "flip"):
            return f"{self.kind}@{self.rate * 100:g}%"
        return self.kind


CLEAN = NoiseSpec("clean")

_LABEL_RE = re.compile(r"^(swap|flip)@([0-9.]+)%$")


def parse_label(label: str) -> NoiseSpec:
    """``"clean"``, ``"scramble"``, ``"swap@10%"``, ``"flip@5%"``."""
    if label in ("clean", "scramble"):
        return NoiseSpec(label, 1.0 if label == "scramble" else 0.0)
    m = _LABEL_RE.match(label)
    if not m:
        raise NoiseConfigError(f"cannot parse noise label {label!r}")
    return NoiseSpec(m.group(1), float(m.group(2)) / 100.0)


@dataclass(frozen=True)
class MixtureSpec:
    entries: tuple  # ((NoiseSpec, weight), ...)
    mode: str = "cycle"
    seed: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((s, float(w)) for s, w in self.entries))
        if self.mode not in MODES:
            raise NoiseConfigError(f"mode must be 'cycle' or 'sample', got {self.mode!r}")
        if not self.entries:
            raise NoiseConfigError("mixture needs at least one entry")
        for spec, weight in self.entries:
            if not isinstance(spec, NoiseSpec):
                raise NoiseConfigError(f"mixture entry is not a NoiseSpec: {spec!r}")
            if weight < 0 or math.isnan(weight):
                raise NoiseConfigError(f"negative weight {weight}")
        if self.mode == "sample":
            total = math.fsum(w for _, w in self.entries)
            if abs(total - 1.0) > 1e-9:
                raise NoiseConfigError(f"sample-mode weights sum to {total}, not 1")

    @classmethod
    def single(cls, spec: NoiseSpec) -> "MixtureSpec":
        return cls(((spec, 1.0),), "cycle")

    @property
    def specs(self) -> list[NoiseSpec]:
        return [s for s, _ in self.entries]

    def needs_alphabet(self) -> bool:
        return any(s.kind == "flip" and s.rate > 0 for s in self.specs)

    def is_clean(self) -> bool:
        return all(s.kind == "clean" for s in self.specs)

    def to_dict(self) -> dict:
        d = {
            "mode": self.mode,
            "entries": [{"kind": s.kind, "rate": s.rate, "weight": w} for s, w in self.entries],
        }
        if self.seed is not None:
            d["seed"] = self.seed
        return d

    @classmethod
    def from_dict(cls, d) -> "MixtureSpec":
        if isinstance(d, str):
            return cls.single(parse_label(d)) if d != "combined" else COMBINED
        if not isinstance(d, dict) or "entries" not in d:
            raise NoiseConfigError("mixture JSON must be an object with 'entries'")
        entries = []
        for e in d["entries"]:
            if isinstance(e, str):
                entries.append((parse_label(e), 1.0))
                continue
            try:
                kind = e["kind"]
            except (KeyError, TypeError):
                raise NoiseConfigError(f"mixture entry without 'kind': {e!r}") from None
            rate = e.get("rate", 1.0 if kind == "scramble" else 0.0)
            if not isinstance(rate, (int, float)) or isinstance(rate, bool):
                raise NoiseConfigError(f"rate must be a number: {rate!r}")
            entries.append((NoiseSpec(kind, float(rate)), e.get("weight", 1.0)))
        seed = d.get("seed")
        if seed is not None:
            try:
                _rng.check_seed(seed)
            except ValueError as exc:
                raise NoiseConfigError(str(exc)) from None
        return cls(tuple(entries), d.get("mode", "cycle"), seed)

    @classmethod
    def from_json(cls, text: str) -> "MixtureSpec":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise NoiseConfigError(f"bad mixture JSON: {exc}") from None
        return cls.from_dict(d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# Sentence-level "combined" training mixture, assigned round robin.
COMBINED = MixtureSpec(
    ((CLEAN, 1.0), (NoiseSpec("scramble", 1.0), 1.0),
     (NoiseSpec("swap", 0.10), 1.0), (NoiseSpec("flip", 0.10), 1.0)),
    "cycle",
)

# The "noisy" MT training distribution: 50% clean, 20% swap@5%, 10% scramble, 20% flip@5%.
MT_NOISY = MixtureSpec(
    ((CLEAN, 0.5), (NoiseSpec("swap", 0.05), 0.2),
     (NoiseSpec("scramble", 1.0), 0.1), (NoiseSpec("flip", 0.05), 0.2)),
    "sample",
)


@dataclass(frozen=True)
class Alphabet:
    chars: tuple

    def __post_init__(self):
        chars = tuple(self.chars)
        object.__setattr__(self, "chars", chars)
        if len(set(chars)) != len(chars):
            raise InsufficientAlphabetError("alphabet has duplicate characters")
        for ch in chars:
            if len(ch) != 1 or not is_valid_token(ch):
                raise InsufficientAlphabetError(f"illegal alphabet character {ch!r}")
        if len(chars) < 2:
            raise InsufficientAlphabetError(f"alphabet needs at least 2 characters, has {len(chars)}")
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(chars)})

    def __len__(self):
        return len(self.chars)

    def __contains__(self, ch):
        return ch in self._index

    def index(self, ch: str) -> int:
        return self._index[ch]


def build_alphabet(corpus: Iterable) -> Alphabet:
    """All distinct characters of the corpus' tokens, sorted by code point."""
    chars = set()
    ntok = 0
    for sent in tokens_of(corpus):
        for tok in sent:
            ntok += 1
            chars.update(tok)
    if ntok == 0:
        raise InsufficientAlphabetError("corpus has no tokens")
    return Alphabet(tuple(sorted(chars)))


def swap_word(token: str, rate: float, stream: _rng.Stream) -> str:
    """Left to right, swap positions i and i+1 with probability ``rate``.

    Works on the already-modified sequence, so a character can travel
    several places to the right.
    """
    chars = list(token)
    for i in range(len(chars) - 1):
        if stream.random() < rate:
            chars[i], chars[i + 1] = chars[i + 1], chars[i]
    return "".join(chars)


def scramble_word(token: str, stream: _rng.Stream) -> str:
    """Uniformly permute the interior; first and last characters stay."""
    if len(token) <= 3:
        return token
    interior = list(token[1:-1])
    stream.shuffle(interior)
    return token[0] + "".join(interior) + token[-1]


def flip_word(token: str, rate: float, alphabet: Alphabet, stream: _rng.Stream) -> str:
    """Replace each character with probability ``rate`` by a different one."""
    chars = list(token)
    size = len(alphabet)
    for i, ch in enumerate(chars):
        if stream.random() < rate:
            if ch in alphabet:
                j = stream.below(size - 1)
                if j >= alphabet.index(ch):
                    j += 1
            else:
                j = stream.below(size)
            chars[i] = alphabet.chars[j]
    return "".join(chars)


def noise_token(token: str, spec: NoiseSpec, stream: _rng.Stream, alphabet: Alphabet | None = None) -> str:
    if spec.kind == "clean":
        return token
    if spec.kind == "swap":
        return swap_word(token, spec.rate, stream)
    if spec.kind == "scramble":
        return scramble_word(token, stream)
    if alphabet is None:
        raise NoiseConfigError("flip noise needs an alphabet")
    return flip_word(token, spec.rate, alphabet, stream)


def noise_sentence(sentence: Sequence[str], spec: NoiseSpec, stream: _rng.Stream,
                   alphabet: Alphabet | None = None) -> tuple:
    if spec.kind == "clean":
        return tuple(sentence)
    if spec.kind == "flip" and alphabet is None:
        raise NoiseConfigError("flip noise needs an alphabet")
    return tuple(noise_token(tok, spec, stream, alphabet) for tok in sentence)


def _choose(mixture: MixtureSpec, index: int, stream: _rng.Stream) -> NoiseSpec:
    if mixture.mode == "cycle":
        return mixture.entries[index % len(mixture.entries)][0]
    u = stream.random()
    acc = 0.0
    for spec, weight in mixture.entries:
        acc += weight
        if u < acc:
            return spec
    # rounding slack: fall back to the last entry with positive weight
    return next(s for s, w in reversed(mixture.entries) if w > 0)


def noise_corpus(corpus: Iterable, mixture: MixtureSpec, seed: int,
                 alphabet: Alphabet | None = None, epoch: int | None = None):
    """Noise every sentence; return ``(noised, assignments)``.

    Sentence i draws from ``substream(seed, i)``, or from the stream keyed by
    ``(seed, epoch, i)`` when ``epoch`` is given. In sample mode the first
    draw of that stream picks the sentence's noise type.
    """
    _rng.check_seed(seed)
    if mixture.needs_alphabet() and alphabet is None:
        raise NoiseConfigError("mixture contains flips but no alphabet was given")
    base = seed if epoch is None else _rng.derive_seed(seed, epoch)
    out, assignments = [], []
    for i, sent in enumerate(tokens_of(corpus)):
        stream = _rng.substream(base, i)
        spec = _choose(mixture, i, stream)
        assignments.append(spec)
        out.append(noise_sentence(sent, spec, stream, alphabet))
    return out, assignments


def format_assignments(assignments: Sequence[NoiseSpec]) -> str:
    """TSV: sentence_index, kind, rate."""
    return "".join(f"{i}\t{s.kind}\t{s.rate:g}\n" for i, s in enumerate(assignments))


def parse_assignments(text: str) -> list[NoiseSpec]:
    specs = []
    for line in text.splitlines():
        if line:
            _, kind, rate = line.split("\t")
            specs.append(NoiseSpec(kind, float(rate)))
    return specs


def flip_variant_bound(n: int, alphabet_size: int) -> int:
    """Upper bound n*C on word forms reachable with at most one flip."""
    if n < 1 or alphabet_size < 2:
        raise ValueError("need n >= 1 and alphabet size >= 2")
    return n * alphabet_size


def scramble_variant_count(n: int) -> int:
    """(n-2)! interior orderings; 1 for words of length <= 3."""
    if n < 1:
        raise ValueError("word length must be >= 1")
    if n <= 3:
        return 1
    count = math.factorial(n - 2)
    if count > MAX_COUNT:
        raise OverflowError(f"({n}-2)! does not fit in 64 bits")
    return count
