# baerq.py
"""
Class-2 exponent-p quotients through the Baer correspondence (p >= 3).

The free class-2 exponent-p group on n generators is V + L2(V), V = F_p^n,
L2(V) its exterior square with coordinates (i, j), i < j, in lexicographic
order, and multiplication

    (v, w) o (v', w') = (v + v', w + w' + 1/2 * v ^ v').

A presentation's class-2 exponent-p quotient is that group modulo the ideal
spanned by the evaluated relators (v_k, w_k) and the brackets (0, v_k ^ e_j);
L2(V) is central, so no further brackets are needed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from abelian import elementary_abelian_quotient
from errors import NotPrimeError
from exactlinalg import FpMatrix, check_prime, fp_rank
from fpres import Presentation
from word import Word

logger = logging.getLogger(__name__)


def _check_baer_prime(p: int) -> int:
    p = check_prime(p)
    if p < 3:
        raise NotPrimeError("the Baer correspondence needs p >= 3")
    return p


@lru_cache(maxsize=None)
def half(p: int) -> int:
    """Inverse of 2 modulo the odd prime p."""
    return (p + 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Position of e_i ^ e_j (0-based, i < j) among the C(n, 2) coordinates."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def wedge(v: Sequence[int], u: Sequence[int], p: int) -> Tuple[int, ...]:
    n = len(v)
    return tuple(
        (v[i] * u[j] - v[j] * u[i]) % p for i in range(n) for j in range(i + 1, n)
    )


@dataclass(frozen=True)
class BaerElement:
    p: int
    v: Tuple[int, ...]
    w: Tuple[int, ...]

    def __post_init__(self):
        if len(self.w) != comb(len(self.v), 2):
            raise ValueError("commutator part has the wrong number of coordinates")

    @property
    def n(self) -> int:
        return len(self.v)

    @classmethod
    def identity(cls, n: int, p: int) -> "BaerElement":
        return cls(p, (0,) * n, (0,) * comb(n, 2))

    @classmethod
    def basis(cls, n: int, p: int, k: int) -> "BaerElement":
        """The image (e_k, 0) of generator k (1-based)."""
        v = [0] * n
        v[k - 1] = 1
        return cls(p, tuple(v), (0,) * comb(n, 2))

    def __mul__(self, other: "BaerElement") -> "BaerElement":
        if (self.p, self.n) != (other.p, other.n):
            raise ValueError("Baer elements from different groups")
        p = self.p
        h = half(p)
        cross = wedge(self.v, other.v, p)
        return BaerElement(
            p,
            tuple((a + b) % p for a, b in zip(self.v, other.v)),
            tuple((a + b + h * c) % p for a, b, c in zip(self.w, other.w, cross)),
        )

    def inverse(self) -> "BaerElement":
        p = self.p
        return BaerElement(p, tuple(-a % p for a in self.v), tuple(-a % p for a in self.w))

    def __pow__(self, e: int) -> "BaerElement":
        base = self if e >= 0 else self.inverse()
        out = BaerElement.identity(self.n, self.p)
        for _ in range(abs(e) % self.p):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not any(self.v) and not any(self.w)


def baer_eval(word: Word, images: Sequence[BaerElement]) -> BaerElement:
    if not images:
        if word:
            raise ValueError("word uses generators but no images were given")
        raise ValueError("need at least one image to fix (n, p)")
    p, n = images[0].p, images[0].n
    _check_baer_prime(p)
    for img in images:
        if (img.p, img.n) != (p, n):
            raise ValueError("all images must live in the same Baer group")
    inverses = [img.inverse() for img in images]
    out = BaerElement.identity(n, p)
    for x in word.letters:
        out = out * (images[x - 1] if x > 0 else inverses[-x - 1])
    return out


def _eval_on_basis(word: Word, n: int, p: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    baer_eval at the standard basis, in O(n) numpy work per letter. Returns v
    and the commutator part as an n x n matrix with entry (i, j), i < j.
    """
    c0 = half(p)
    v = np.zeros(n, dtype=np.int64)
    W = np.zeros((n, n), dtype=np.int64)
    for x in word.letters:
        g = abs(x) - 1
        s = 1 if x > 0 else -1
        c = (s * c0) % p
        # w += 1/2 * v ^ (s e_g)
        if g:
            W[:g, g] = (W[:g, g] + c * v[:g]) % p
        if g + 1 < n:
            W[g, g + 1 :] = (W[g, g + 1 :] - c * v[g + 1 :]) % p
        v[g] = (v[g] + s) % p
    return v, W


def eval_relators(P: Presentation, p: int) -> List[BaerElement]:
    """Relators of P evaluated at the standard basis of the free class-2 exponent-p group."""
    p = _check_baer_prime(p)
    n = P.ngens
    iu = np.triu_indices(n, 1)
    out = []
    for rel in P.relators:
        v, W = _eval_on_basis(rel, n, p)
        out.append(BaerElement(p, tuple(int(x) for x in v), tuple(int(x) for x in W[iu])))
    return out


@dataclass(frozen=True)
class BaerQuotientReport:
    p: int
    n: int
    dim_total: int
    dim_linear: int
    elementary_abelian: bool
    class2_dim: int
    caveat: bool
    method: str

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "dim_total": self.dim_total,
            "dim_linear": self.dim_linear,
            "elementary_abelian": self.elementary_abelian,
            "class2_dim": self.class2_dim,
            "caveat": self.caveat,
            "method": self.method,
        }


def _direct_dims(P: Presentation, p: int) -> Tuple[int, int]:
    n = P.ngens
    npairs = comb(n, 2)
    rows = []
    lin = []
    for el in eval_relators(P, p):
        rows.append(list(el.v) + list(el.w))
        lin.append(list(el.v))
        for j in range(n):
            e = [0] * n
            e[j] = 1
            rows.append([0] * n + list(wedge(el.v, e, p)))
    ideal = fp_rank(FpMatrix.from_rows(p, rows, cols=n + npairs)) if rows else 0
    lin_rank = fp_rank(FpMatrix.from_rows(p, lin, cols=n)) if lin else 0
    return n + npairs - ideal, n - lin_rank


def _reduced_dims(P: Presentation, p: int) -> Tuple[int, int]:
    """
    Same dimensions computed in V + L2(V/R), R the span of the linear parts:
    R ^ V lies in the ideal and L2(V) / (R ^ V) is L2(V/R).
    """
    n = P.ngens
    h = elementary_abelian_quotient(P, p)
    m = h.r
    Pi = h.matrix()
    iu_m = np.triu_indices(m, 1)
    rows = []
    for rel in P.relators:
        v, W = _eval_on_basis(rel, n, p)
        A = (W - W.T) % p
        B = (Pi.T @ A % p) @ Pi % p
        rows.append(np.concatenate([v, B[iu_m]]))
    width = n + comb(m, 2)
    rho = fp_rank(FpMatrix(p, np.array(rows, dtype=np.int64).reshape(len(rows), width))) if rows else 0
    return n + comb(m, 2) - rho, m


def class2_expp_quotient(P: Presentation, p: int, method: str = "reduced") -> BaerQuotientReport:
    p = _check_baer_prime(p)
    if method == "reduced":
        dim_total, dim_linear = _reduced_dims(P, p)
    elif method == "direct":
        dim_total, dim_linear = _direct_dims(P, p)
    else:
        raise ValueError(f"unknown method {method!r}")
    report = BaerQuotientReport(
        p=p,
        n=P.ngens,
        dim_total=dim_total,
        dim_linear=dim_linear,
        elementary_abelian=dim_total == dim_linear,
        class2_dim=dim_total - dim_linear,
        caveat=p > 3,
        method=method,
    )
    logger.info(
        "[BAER] p=%d n=%d: dim %d (linear %d)", p, report.n, dim_total, dim_linear
    )
    return report


class ExpPCertificate(NamedTuple):
    elementary: bool
    rank: int
    caveat: bool


def certify_expp_elementary(P: Presentation, p: int) -> ExpPCertificate:
    """
    For p = 3 a true result means G/G^3 is elementary abelian of this rank:
    exponent-3 groups are nilpotent, and a nilpotent group whose class-2
    quotient is abelian is abelian. For p > 3 the result only speaks about
    the class-2 quotient, and `caveat` says so.
    """
    report = class2_expp_quotient(P, p)
    return ExpPCertificate(report.elementary_abelian, report.dim_linear, report.caveat)
