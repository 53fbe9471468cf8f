from pathlib import Path

import pytest

from metriclie.io import load_instance

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
DATA = Path(__file__).resolve().parent / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


def corpus_files():
    return sorted(CORPUS.rglob("*.json"))


@pytest.fixture(scope="session")
def corpus():
    return [(p.relative_to(CORPUS).as_posix(), load_instance(p)) for p in corpus_files()]
