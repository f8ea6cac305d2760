"""Train-noise x test-noise robustness matrices and flip-rate sweeps.

Every noising and training stream is keyed by the condition *name* and its
role, so a cell's value never depends on which other conditions are in the
experiment.
"""

from __future__ import annotations

import json
import logging
import statistics
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

from . import rng as _rng
from .corpus import TaggedSentence, read_conllu
from .noise import Alphabet, MixtureSpec, NoiseConfigError, NoiseSpec, build_alphabet, noise_corpus
from .tagger import TrainConfig, evaluate_tagger, train_tagger

log = logging.getLogger(__name__)

ROLE_TRAIN = 1
ROLE_TEST = 2


class ExperimentConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Condition:
    name: str
    mixture: MixtureSpec

    @classmethod
    def parse(cls, obj) -> "Condition":
        """``"flip@10%"`` or ``{"name": ..., "mixture": <mixture JSON or label>}``."""
        if isinstance(obj, str):
            return cls(obj, MixtureSpec.from_dict(obj))
        try:
            name = obj["name"]
            mixture = MixtureSpec.from_dict(obj.get("mixture", name))
        except (KeyError, TypeError, AttributeError):
            raise ExperimentConfigError(f"bad condition {obj!r}") from None
        return cls(name, mixture)


@dataclass
class MatrixReport:
    train_conditions: list
    test_conditions: list
    scores: list  # rows = train conditions
    stdev: list | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.scores) != len(self.train_conditions) or any(
            len(row) != len(self.test_conditions) for row in self.scores
        ):
            raise ValueError("score grid shape does not match the condition lists")

    def cell(self, train: str, test: str) -> float:
        return self.scores[self.train_conditions.index(train)][self.test_conditions.index(test)]

    def row(self, train: str) -> list:
        return self.scores[self.train_conditions.index(train)]


def _check_names(conditions: Sequence[Condition]) -> None:
    names = [c.name for c in conditions]
    if len(set(names)) != len(names):
        raise ExperimentConfigError(f"duplicate condition names in {names}")


def noise_test_set(corpus: Sequence[TaggedSentence], condition: Condition, seed: int,
                   alphabet: Alphabet | None, repeat: int = 0) -> list:
    key = _rng.derive_seed(seed, _rng.name_key(condition.name), ROLE_TEST, repeat)
    noised, _ = noise_corpus(corpus, condition.mixture, key, alphabet)
    return noised


def train_for_condition(corpus: Sequence[TaggedSentence], condition: Condition,
                        config: TrainConfig, alphabet: Alphabet | None):
    key = _rng.derive_seed(config.seed, _rng.name_key(condition.name), ROLE_TRAIN)
    cfg = replace(config, seed=key, augmentation=condition.mixture)
    return train_tagger(corpus, cfg, alphabet)


def robustness_matrix(train_corpus: Sequence[TaggedSentence], test_corpus: Sequence[TaggedSentence],
                      train_conditions: Sequence[Condition], test_conditions: Sequence[Condition],
                      config: TrainConfig, repeats: int = 1, meta: dict | None = None) -> MatrixReport:
    """Train one tagger per train condition and score it on every test condition."""
    _check_names(train_conditions)
    _check_names(test_conditions)
    if repeats < 1:
        raise ExperimentConfigError("repeats must be >= 1")
    needs_alphabet = any(c.mixture.needs_alphabet() for c in [*train_conditions, *test_conditions])
    alphabet = build_alphabet(train_corpus) if needs_alphabet else None

    test_sets = {
        c.name: [noise_test_set(test_corpus, c, config.seed, alphabet, r) for r in range(repeats)]
        for c in test_conditions
    }
    scores, spreads = [], []
    for tc in train_conditions:
        model = train_for_condition(train_corpus, tc, config, alphabet)
        row, spread = [], []
        for ec in test_conditions:
            accs = [evaluate_tagger(model, test_corpus, inputs) for inputs in test_sets[ec.name]]
            row.append(statistics.fmean(accs))
            spread.append(statistics.stdev(accs) if len(accs) > 1 else 0.0)
            log.info("train=%s test=%s acc=%.4f", tc.name, ec.name, row[-1])
        scores.append(row)
        spreads.append(spread)
    info = {"seed": config.seed, "epochs": config.epochs,
            "rare_threshold": config.rare_threshold, "repeats": repeats}
    info.update(meta or {})
    return MatrixReport([c.name for c in train_conditions], [c.name for c in test_conditions],
                        scores, spreads if repeats > 1 else None, info)


def flip_condition(rate: float) -> Condition:
    spec = NoiseSpec("flip", rate) if rate > 0 else NoiseSpec("clean")
    return Condition(f"flip@{rate * 100:g}%", MixtureSpec.single(spec))


def flip_sweep(train_corpus, test_corpus, train_rates: Sequence[float], test_rates: Sequence[float],
               config: TrainConfig, repeats: int = 1, meta: dict | None = None) -> MatrixReport:
    """Rows are training flip rates, columns test flip rates."""
    for r in [*train_rates, *test_rates]:
        if not 0.0 <= r <= 1.0:
            raise ExperimentConfigError(f"flip rate {r} outside [0, 1]")
    return robustness_matrix(train_corpus, test_corpus,
                             [flip_condition(r) for r in train_rates],
                             [flip_condition(r) for r in test_rates],
                             config, repeats, meta)


def format_tsv(report: MatrixReport) -> str:
    lines = ["\t".join(["test", *report.test_conditions])]
    for name, row in zip(report.train_conditions, report.scores):
        lines.append("\t".join([name, *(f"{v:.4f}" for v in row)]))
    return "\n".join(lines) + "\n"


def _round_grid(grid):
    return None if grid is None else [[round(v, 4) for v in row] for row in grid]


def format_json(report: MatrixReport) -> str:
    doc = {
        "train_conditions": report.train_conditions,
        "test_conditions": report.test_conditions,
        "scores": _round_grid(report.scores),
        "meta": report.meta,
    }
    if report.stdev is not None:
        doc["stdev"] = _round_grid(report.stdev)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_json(text: str) -> MatrixReport:
    doc = json.loads(text)
    return MatrixReport(doc["train_conditions"], doc["test_conditions"], doc["scores"],
                        doc.get("stdev"), doc.get("meta", {}))


def emit_report(report: MatrixReport, fmt: str = "tsv") -> str:
    if fmt == "tsv":
        return format_tsv(report)
    if fmt == "json":
        return format_json(report)
    raise ValueError(f"unknown report format {fmt!r}")


def run_config(config: dict, base_dir: Path | str = ".") -> MatrixReport:
    """Run an experiment described by the JSON config document."""
    base = Path(base_dir)
    try:
        train_path, test_path = config["train_corpus"], config["test_corpus"]
        seed = _rng.check_seed(config["seed"])
    except KeyError as exc:
        raise ExperimentConfigError(f"config is missing {exc}") from None
    except ValueError as exc:
        raise ExperimentConfigError(str(exc)) from None
    train = read_conllu(base / train_path)
    test = read_conllu(base / test_path)
    tag = config.get("tagger", {})
    try:
        tcfg = TrainConfig(epochs=int(tag.get("epochs", 5)), seed=seed,
                           rare_threshold=int(tag.get("rare_threshold", 10)))
    except (TypeError, ValueError) as exc:
        raise ExperimentConfigError(str(exc)) from None
    repeats = int(config.get("repeats", 1))
    meta = {"train_corpus": str(train_path), "test_corpus": str(test_path)}
    try:
        if "flip_sweep" in config:
            sweep = config["flip_sweep"]
            return flip_sweep(train, test, sweep["train_rates"], sweep["test_rates"],
                              tcfg, repeats, meta)
        conds = [Condition.parse(c) for c in config["conditions"]]
        test_conds = [Condition.parse(c) for c in config.get("test_conditions", [])] or conds
    except (KeyError, TypeError) as exc:
        raise ExperimentConfigError(f"bad conditions: {exc}") from None
    except NoiseConfigError as exc:
        raise ExperimentConfigError(str(exc)) from None
    return robustness_matrix(train, test, conds, test_conds, tcfg, repeats, meta)
