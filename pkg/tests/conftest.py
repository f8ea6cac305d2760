from pathlib import Path

import pytest

from wordnoise.corpus import read_conllu

DATA = Path(__file__).parent / "data"
TRAIN_CONLLU = DATA / "ud_sample_train.conllu"
TEST_CONLLU = DATA / "ud_sample_test.conllu"

# A receipt-complaint sentence in the style of the UD English web data.
RECEIPT_SENTENCE = (
    "I used my card to order a meal from the menu and the total on my receipt "
    "was $ 8.95 but when I checked my transaction online it showed $ 10.74 ."
)


@pytest.fixture(scope="session")
def train_tagged():
    return read_conllu(TRAIN_CONLLU)


@pytest.fixture(scope="session")
def test_tagged():
    return read_conllu(TEST_CONLLU)


@pytest.fixture(scope="session")
def train_plain(train_tagged):
    return [s.tokens for s in train_tagged]


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
