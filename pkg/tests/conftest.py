import sys
from pathlib import Path

import pytest

from commentcomplete import MINI_CORPUS
from commentcomplete.corpus import load_corpus
from commentcomplete.datasetgen import build_dataset
from commentcomplete.preprocess import run_pipeline

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def mini_raw():
    instances, _ = load_corpus(MINI_CORPUS)
    return instances


@pytest.fixture(scope="session")
def mini_clean(mini_raw):
    cleaned, _ = run_pipeline(mini_raw)
    return cleaned


@pytest.fixture(scope="session")
def mini_dataset(mini_clean):
    return build_dataset(mini_clean, seed=42)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
