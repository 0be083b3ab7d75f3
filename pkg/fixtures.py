# fixtures.py
"""
Builtin presentations.

gamma1  the Gamma_1 presentation, read from data/gamma1.fp
gamma2  the kernel of gamma1's maximal elementary abelian 3-quotient,
        always recomputed from gamma1 (never stored by hand)
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from errors import InputError
from fpres import Presentation, load_presentation

DATA_DIR = Path(__file__).resolve().parent / "data"
GAMMA1_PATH = DATA_DIR / "gamma1.fp"

FIXTURES = ("gamma1", "gamma2")


@lru_cache(maxsize=None)
def load_fixture(name: str) -> Presentation:
    if name == "gamma1":
        return load_presentation(GAMMA1_PATH)
    if name == "gamma2":
        from tower import descend_once

        return descend_once(load_fixture("gamma1"), 3).kernel
    raise InputError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
