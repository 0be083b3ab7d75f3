# abelian.py
"""
Abelianization of a presentation: Betti number and torsion over Z, and the
maximal elementary abelian p-quotient as an explicit homomorphism (PHom).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from errors import NotPrimeError, VerificationFailure
from exactlinalg import (
    FpMatrix,
    IntMatrix,
    betti_lower_bound_check,
    check_prime,
    fp_rank,
    fp_rref,
    modp_reduce,
    rational_rank,
    smith_invariants,
)
from fpres import Presentation
from word import Word, exponent_vector

logger = logging.getLogger(__name__)

BETTI_SHORTCUT_PRIMES = (5, 7, 11)


@dataclass(frozen=True)
class AbelianInvariants:
    betti: int
    torsion: Tuple[int, ...]

    def __str__(self) -> str:
        parts = ["Z"] * self.betti + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class PHom:
    """Surjection onto F_p^r: generator k goes to images[k-1]."""

    p: int
    r: int
    images: Tuple[Tuple[int, ...], ...]

    def apply(self, w: Word) -> Tuple[int, ...]:
        out = [0] * self.r
        for x in w.letters:
            img = self.images[abs(x) - 1]
            s = 1 if x > 0 else -1
            for i in range(self.r):
                out[i] += s * img[i]
        return tuple(v % self.p for v in out)

    def check(self, P: Presentation) -> None:
        zero = (0,) * self.r
        for k, rel in enumerate(P.relators):
            if self.apply(rel) != zero:
                raise VerificationFailure("phom-kills-relators", f"relator {k + 1} maps to {self.apply(rel)}")
        if self.r:
            span = fp_rank(FpMatrix.from_rows(self.p, self.images, cols=self.r))
            if span != self.r:
                raise VerificationFailure("phom-surjective", f"images span rank {span} < {self.r}")

    def matrix(self) -> np.ndarray:
        """n x r matrix whose rows are the generator images."""
        return np.array(self.images, dtype=np.int64).reshape(len(self.images), self.r)


def relation_matrix(P: Presentation) -> IntMatrix:
    n = P.ngens
    return IntMatrix.from_rows([exponent_vector(r, n) for r in P.relators], cols=n)


def abelian_invariants(P: Presentation) -> AbelianInvariants:
    diag = smith_invariants(relation_matrix(P))
    return AbelianInvariants(
        betti=P.ngens - len(diag),
        torsion=tuple(d for d in diag if d > 1),
    )


def _check_odd_prime(p: int) -> int:
    p = check_prime(p)
    if p == 2:
        raise NotPrimeError("p = 2 is not supported; use an odd prime")
    return p


def elementary_abelian_quotient(P: Presentation, p: int) -> PHom:
    """
    Quotient F_p^n / rowspace(relation matrix mod p). Coordinates of the
    quotient are the non-pivot columns of the reduced echelon form, so a
    free generator e_f maps to its own basis vector and a pivot generator
    e_c maps to minus the free part of its pivot row.
    """
    p = _check_odd_prime(p)
    n = P.ngens
    M = modp_reduce(relation_matrix(P), p)
    red, pivots = fp_rref(M)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    r = len(free)
    col_of = {f: k for k, f in enumerate(free)}
    images: List[Tuple[int, ...]] = []
    row_of = {c: i for i, c in enumerate(pivots)}
    for g in range(n):
        if g in col_of:
            v = [0] * r
            v[col_of[g]] = 1
        else:
            row = red.data[row_of[g]]
            v = [int(-row[f]) % p for f in free]
        images.append(tuple(v))
    logger.debug("[ABELIAN] mod-%d rank %d of %d generators", p, r, n)
    return PHom(p=p, r=r, images=tuple(images))


def index_p_maps(P: Presentation, p: int) -> List[PHom]:
    """
    One surjection onto F_p per index-p normal subgroup of P: the composites
    of the maximal quotient with each nonzero functional on F_p^r whose first
    nonzero coordinate is 1. There are (p^r - 1) / (p - 1) of them.
    """
    h = elementary_abelian_quotient(P, p)
    out = []
    for u in itertools.product(range(p), repeat=h.r):
        nonzero = [x for x in u if x]
        if not nonzero or nonzero[0] != 1:
            continue
        images = tuple((sum(a * b for a, b in zip(u, img)) % p,) for img in h.images)
        out.append(PHom(p=p, r=1, images=images))
    return out


def betti_number(P: Presentation, p: int = 3) -> Tuple[int, str]:
    """
    Betti number with the method that decided it: full column rank mod q
    (q in 5, 7, 11, never the tower prime) certifies 0 cheaply; otherwise SNF.
    """
    M = relation_matrix(P)
    primes = [q for q in BETTI_SHORTCUT_PRIMES if q != p]
    if len(primes) < len(BETTI_SHORTCUT_PRIMES):
        primes.append(13)
    for q in primes:
        if betti_lower_bound_check(M, q):
            return 0, f"mod-{q}"
    return P.ngens - rational_rank(M), "snf"
