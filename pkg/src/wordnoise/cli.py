"""Command-line interface: ``wordnoise <subcommand> ...``.

Exit status 0 on success, 1 for validation/config errors, 2 for I/O or
format errors. Outputs are written to a temporary file and renamed into
place, so a failed run never leaves partial output. ``-`` means stdin/stdout.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import bpe, experiment, metrics, noise, tagger
from .corpus import CorpusFormatError, format_plain, read_conllu, read_plain
from .rng import MASK64

log = logging.getLogger("wordnoise")


class UsageError(Exception):
    pass


class ConfigError(Exception):
    """Exit status 1."""


class FormatError(Exception):
    """Exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _load_mixture(value: str) -> noise.MixtureSpec:
    text = value if value.lstrip().startswith(("{", "\"")) else _read_text(value)
    try:
        return noise.MixtureSpec.from_json(text)
    except noise.NoiseConfigError as exc:
        raise ConfigError(str(exc)) from None


# -- subcommands -----------------------------------------------------------

def cmd_noise(args) -> None:
    mixture = _load_mixture(args.mixture)
    corpus = read_plain(args.inp)
    alphabet = noise.build_alphabet(corpus) if mixture.needs_alphabet() else None
    noised, assignments = noise.noise_corpus(corpus, mixture, args.seed, alphabet)
    _write_text(args.out, format_plain(noised))
    if args.assignments:
        _write_text(args.assignments, noise.format_assignments(assignments))


def cmd_bpe_learn(args) -> None:
    if args.num_merges < 0:
        raise ConfigError("--num-merges must be >= 0")
    freqs = bpe.count_word_frequencies(read_plain(args.inp))
    table = bpe.bpe_learn(freqs, args.num_merges)
    _write_text(args.merges_out, bpe.format_merges(table))


def _load_merges(path: str) -> bpe.MergeTable:
    try:
        return bpe.parse_merges(_read_text(path))
    except bpe.MergeFileError as exc:
        raise FormatError(f"{path}: {exc}") from None


def cmd_bpe_apply(args) -> None:
    seg = bpe.Segmenter(_load_merges(args.merges))
    corpus = read_plain(args.inp)
    _write_text(args.out, "".join(seg.render_sentence(s) + "\n" for s in corpus))


def cmd_bpe_decode(args) -> None:
    lines = read_plain(args.inp)
    try:
        decoded = [bpe.bpe_decode(" ".join(units)) for units in lines]
    except bpe.DanglingContinuationError as exc:
        raise FormatError(str(exc)) from None
    _write_text(args.out, format_plain(decoded))


def cmd_tag_train(args) -> None:
    mixture = _load_mixture(args.augment) if args.augment else noise.MixtureSpec.single(noise.CLEAN)
    try:
        config = tagger.TrainConfig(epochs=args.epochs, seed=args.seed, augmentation=mixture,
                                    rare_threshold=args.rare_threshold)
    except tagger.TrainingError as exc:
        raise ConfigError(str(exc)) from None
    corpus = read_conllu(args.train)
    model = tagger.train_tagger(corpus, config)
    _write_text(args.model_out, tagger.format_model(model))


def cmd_tag_eval(args) -> None:
    try:
        model = tagger.parse_model(_read_text(args.model))
    except tagger.ModelFormatError as exc:
        raise FormatError(f"{args.model}: {exc}") from None
    corpus = read_conllu(args.test)
    inputs = None
    if args.noise:
        if args.seed is None:
            raise ConfigError("--noise requires --seed")
        mixture = _load_mixture(args.noise)
        alphabet = noise.build_alphabet(corpus) if mixture.needs_alphabet() else None
        inputs, _ = noise.noise_corpus(corpus, mixture, args.seed, alphabet)
    acc = tagger.evaluate_tagger(model, corpus, inputs)
    sys.stdout.write(f"accuracy\t{acc:.4f}\n")


def cmd_bleu(args) -> None:
    score = metrics.corpus_bleu(read_plain(args.hyp), read_plain(args.ref))
    sys.stdout.write(score.format() + "\n")


def cmd_stats(args) -> None:
    clean = read_plain(args.clean)
    noisy = read_plain(args.noisy)
    table = _load_merges(args.merges)
    if args.vocab:
        vocab = {tok for sent in read_plain(args.vocab) for tok in sent}
    else:
        vocab = {tok for sent in clean for tok in sent}
    div = metrics.segmentation_divergence(clean, noisy, table, vocab)
    _write_text(args.out, "".join(f"{k}\t{v}\n" for k, v in div.as_rows()))


def cmd_matrix(args) -> None:
    try:
        config = json.loads(_read_text(args.config))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"bad config JSON: {exc}") from None
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    base = Path(args.config).parent if args.config != "-" else Path(".")
    report = experiment.run_config(config, base)
    _write_text(args.out, experiment.emit_report(report, args.format))


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wordnoise", description="Word-form noise, BPE, tagging robustness tools.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("noise", help="perturb a plain-text corpus")
    s.add_argument("--in", dest="inp", required=True, help="input corpus ('-' for stdin)")
    s.add_argument("--out", required=True, help="output corpus ('-' for stdout)")
    s.add_argument("--mixture", required=True, help="mixture JSON file, or inline JSON")
    s.add_argument("--seed", type=_seed, required=True, help="64-bit global seed")
    s.add_argument("--assignments", help="write per-sentence noise assignments (TSV)")
    s.set_defaults(func=cmd_noise)

    s = sub.add_parser("bpe-learn", help="learn BPE merges from a corpus")
    s.add_argument("--in", dest="inp", required=True, help="training corpus")
    s.add_argument("--merges-out", required=True, help="merge file to write")
    s.add_argument("--num-merges", type=int, default=bpe.DEFAULT_MERGES_TAGGING,
                   help=f"number of merges (default {bpe.DEFAULT_MERGES_TAGGING}; MT scale "
                        f"is {bpe.DEFAULT_MERGES_MT})")
    s.set_defaults(func=cmd_bpe_learn)

    s = sub.add_parser("bpe-apply", help="segment a corpus with a merge file")
    s.add_argument("--in", dest="inp", required=True, help="input corpus")
    s.add_argument("--merges", required=True, help="merge file")
    s.add_argument("--out", required=True, help="segmented output")
    s.set_defaults(func=cmd_bpe_apply)

    s = sub.add_parser("bpe-decode", help="join '@@ ' segmented text back into tokens")
    s.add_argument("--in", dest="inp", required=True, help="segmented input")
    s.add_argument("--out", required=True, help="decoded output")
    s.set_defaults(func=cmd_bpe_decode)

    s = sub.add_parser("tag-train", help="train the perceptron tagger on CoNLL-U")
    s.add_argument("--train", required=True, help="CoNLL-U training data")
    s.add_argument("--model-out", required=True, help="model file to write")
    s.add_argument("--epochs", type=int, default=5, help="training epochs (default 5)")
    s.add_argument("--seed", type=_seed, required=True, help="64-bit seed")
    s.add_argument("--augment", help="training-noise mixture JSON (default: clean)")
    s.add_argument("--rare-threshold", type=int, default=10,
                   help="words seen fewer times get affix features (default 10)")
    s.set_defaults(func=cmd_tag_train)

    s = sub.add_parser("tag-eval", help="token accuracy of a model on CoNLL-U")
    s.add_argument("--model", required=True, help="model file")
    s.add_argument("--test", required=True, help="CoNLL-U test data")
    s.add_argument("--noise", help="optional test-noise mixture JSON")
    s.add_argument("--seed", type=_seed, help="seed for --noise")
    s.set_defaults(func=cmd_tag_eval)

    s = sub.add_parser("bleu", help="corpus BLEU of a hypothesis file")
    s.add_argument("--hyp", required=True, help="hypotheses, one sentence per line")
    s.add_argument("--ref", required=True, help="references, line-aligned")
    s.set_defaults(func=cmd_bleu)

    s = sub.add_parser("stats", help="segmentation divergence of clean vs noisy text")
    s.add_argument("--clean", required=True, help="clean corpus")
    s.add_argument("--noisy", required=True, help="noised corpus, token-aligned")
    s.add_argument("--merges", required=True, help="merge file")
    s.add_argument("--vocab", help="word vocabulary file (default: tokens of --clean)")
    s.add_argument("--out", default="-", help="output TSV (default stdout)")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("matrix", help="run a train x test noise experiment")
    s.add_argument("--config", required=True, help="experiment config JSON")
    s.add_argument("--out", default="-", help="report file (default stdout)")
    s.add_argument("--format", choices=("tsv", "json"), default="tsv", help="report format")
    s.set_defaults(func=cmd_matrix)
    return p


_CONFIG_ERRORS = (ConfigError, noise.NoiseConfigError, noise.InsufficientAlphabetError,
                  experiment.ExperimentConfigError, tagger.TrainingError,
                  metrics.AlignmentError, metrics.UndefinedMetricError)
_FORMAT_ERRORS = (FormatError, CorpusFormatError, bpe.MergeFileError, tagger.ModelFormatError,
                  OSError, UnicodeDecodeError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except _CONFIG_ERRORS as exc:
        print(f"wordnoise {args.command}: {exc}", file=sys.stderr)
        return 1
    except _FORMAT_ERRORS as exc:
        print(f"wordnoise {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
