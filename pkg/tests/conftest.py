import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from fixtures import load_fixture  # noqa: E402
from fpres import Presentation  # noqa: E402
from word import Word  # noqa: E402

NAMES = ("a", "b", "c", "d")


def random_presentation(rng: random.Random, max_gens: int = 4, max_rels: int = 6, max_len: int = 12) -> Presentation:
    n = rng.randint(1, max_gens)
    letters = [g for g in range(1, n + 1)] + [-g for g in range(1, n + 1)]
    relators = []
    for _ in range(rng.randint(1, max_rels)):
        relators.append(Word(rng.choice(letters) for _ in range(rng.randint(1, max_len))))
    return Presentation(NAMES[:n], relators)


@pytest.fixture(scope="session")
def gamma1() -> Presentation:
    return load_fixture("gamma1")


@pytest.fixture(scope="session")
def gamma2() -> Presentation:
    return load_fixture("gamma2")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
