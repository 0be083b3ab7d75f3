# cosets.py
"""
Coset tables for finite-index subgroups.

table_from_phom builds the table of ker(h) directly: cosets are the vectors
of F_p^r in lexicographic order and generator g adds h(g). todd_coxeter is an
independent HLT enumerator (union-find coincidences, lookahead near the cap)
used as an oracle against it.

Columns of the working table are letters in the order gen1, gen1^-1, gen2,
gen2^-1, ...; the same order drives standardization and Schreier transversals.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from abelian import PHom
from config import get_settings
from errors import CosetCapExceeded, EnumerationOverflow, VerificationFailure
from fpres import Presentation
from word import Word, commutator

logger = logging.getLogger(__name__)

UNDEF = -1


def letter_order(ngens: int) -> List[int]:
    out = []
    for g in range(1, ngens + 1):
        out += [g, -g]
    return out


@dataclass(frozen=True)
class CosetTable:
    """action[g-1][c] is the coset c.g; coset 0 is the subgroup itself."""

    n: int
    action: Tuple[Tuple[int, ...], ...]
    inverse: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        inv = []
        for perm in self.action:
            if len(perm) != self.n:
                raise ValueError("permutation length does not match the coset count")
            back = [UNDEF] * self.n
            for c, d in enumerate(perm):
                back[d] = c
            inv.append(tuple(back))
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def ngens(self) -> int:
        return len(self.action)

    def act(self, c: int, letter: int) -> int:
        if letter > 0:
            return self.action[letter - 1][c]
        return self.inverse[-letter - 1][c]

    def check(self, P: Presentation, subgroup_gens: Sequence[Word] = ()) -> None:
        """Raise VerificationFailure unless all four table invariants hold."""
        full = set(range(self.n))
        for g, perm in enumerate(self.action, start=1):
            if set(perm) != full:
                raise VerificationFailure("table-bijective", f"generator {g}")
        for k, rel in enumerate(P.relators, start=1):
            for c in range(self.n):
                if trace(self, c, rel) != c:
                    raise VerificationFailure("table-relators", f"relator {k} moves coset {c}")
        seen = {0}
        todo = deque([0])
        while todo:
            c = todo.popleft()
            for perm in itertools.chain(self.action, self.inverse):
                d = perm[c]
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
        if len(seen) != self.n:
            raise VerificationFailure("table-transitive", f"{len(seen)} of {self.n} cosets reachable")
        for k, w in enumerate(subgroup_gens, start=1):
            if trace(self, 0, w) != 0:
                raise VerificationFailure("table-subgroup", f"subgroup generator {k} moves coset 0")


def trace(table: CosetTable, start: int, w: Word) -> int:
    c = start
    for x in w.letters:
        c = table.act(c, x)
    return c


def table_from_phom(P: Presentation, h: PHom, cap: Optional[int] = None) -> CosetTable:
    cap = get_settings().coset_cap if cap is None else cap
    n = h.p ** h.r
    if n > cap:
        raise CosetCapExceeded(f"{h.p}^{h.r} = {n} cosets exceeds the cap {cap}")
    weights = [h.p ** (h.r - 1 - i) for i in range(h.r)]
    vectors = list(itertools.product(range(h.p), repeat=h.r))
    action = []
    for img in h.images:
        perm = []
        for v in vectors:
            perm.append(sum(((v[i] + img[i]) % h.p) * weights[i] for i in range(h.r)))
        action.append(tuple(perm))
    logger.info("[COSETS] kernel table: %d cosets over %d generators", n, P.ngens)
    return CosetTable(n, tuple(action))


def standardize(table: CosetTable) -> CosetTable:
    """Renumber cosets in BFS order from coset 0 under the fixed letter order."""
    order = letter_order(table.ngens)
    new = {0: 0}
    queue = [0]
    i = 0
    while i < len(queue):
        c = queue[i]
        i += 1
        for x in order:
            d = table.act(c, x)
            if d not in new:
                new[d] = len(queue)
                queue.append(d)
    action = []
    for perm in table.action:
        out = [0] * len(queue)
        for c in queue:
            out[new[c]] = new[perm[c]]
        action.append(tuple(out))
    return CosetTable(len(queue), tuple(action))


# ---------------------------------------------------------------------------
# HLT Todd-Coxeter
# ---------------------------------------------------------------------------

class _Enumerator:
    LOOKAHEAD_FRACTION = 0.75

    def __init__(self, ngens: int, relators: Sequence[Word], cap: int):
        self.ngens = ngens
        self.relators = [self._cols(r) for r in relators]
        self.cap = cap
        self.table: List[List[int]] = []
        self.parent: List[int] = []
        self.live = 0
        self.next_lookahead = max(1, int(cap * self.LOOKAHEAD_FRACTION))
        self._new_coset()

    # letter g>0 -> column 2(g-1), g^-1 -> 2(g-1)+1; inverse column is col ^ 1
    @staticmethod
    def _col(x: int) -> int:
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    def _cols(self, w: Word) -> List[int]:
        return [self._col(x) for x in w.letters]

    def _new_coset(self) -> int:
        if self.live >= self.cap:
            raise EnumerationOverflow(f"coset enumeration exceeded {self.cap} live cosets")
        c = len(self.table)
        self.table.append([UNDEF] * (2 * self.ngens))
        self.parent.append(c)
        self.live += 1
        return c

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, col: int) -> int:
        d = self._new_coset()
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        return d

    def _merge(self, a: int, b: int, queue: List[int]) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        a, b = min(a, b), max(a, b)
        self.parent[b] = a
        self.live -= 1
        queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        queue: List[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = self.table[e]
            for col in range(2 * self.ngens):
                f = row[col]
                if f == UNDEF:
                    continue
                self.table[f][col ^ 1] = UNDEF
                e1, f1 = self.find(e), self.find(f)
                if self.table[e1][col] != UNDEF:
                    self._merge(f1, self.table[e1][col], queue)
                elif self.table[f1][col ^ 1] != UNDEF:
                    self._merge(e1, self.table[f1][col ^ 1], queue)
                else:
                    self.table[e1][col] = f1
                    self.table[f1][col ^ 1] = e1

    def scan(self, c: int, cols: List[int], fill: bool) -> None:
        """Scan c under the word; with fill, define cosets until it closes."""
        table = self.table
        f, i = c, 0
        b, j = c, len(cols) - 1
        while True:
            while i <= j and table[f][cols[i]] != UNDEF:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and table[b][cols[j] ^ 1] != UNDEF:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, cols[i])

    def lookahead(self) -> None:
        before = self.live
        for c in range(len(self.table)):
            if not self.alive(c):
                continue
            for cols in self.relators:
                self.scan(c, cols, fill=False)
                if not self.alive(c):
                    break
        logger.info("[COSETS] lookahead: %d -> %d live cosets", before, self.live)

    def run(self, subgroup_gens: Sequence[Word]) -> None:
        for w in subgroup_gens:
            self.scan(0, self._cols(w), fill=True)
        c = 0
        while c < len(self.table):
            if self.live >= self.next_lookahead:
                self.lookahead()
                self.next_lookahead = max(self.live, self.next_lookahead) + max(1, self.cap // 20)
            if self.alive(c):
                for cols in self.relators:
                    self.scan(c, cols, fill=True)
                    if not self.alive(c):
                        break
                if self.alive(c):
                    for col in range(2 * self.ngens):
                        if self.table[c][col] == UNDEF:
                            self.define(c, col)
            c += 1

    def compact(self) -> CosetTable:
        live = [c for c in range(len(self.table)) if self.alive(c)]
        number = {c: k for k, c in enumerate(live)}
        action = []
        for g in range(self.ngens):
            action.append(tuple(number[self.find(self.table[c][2 * g])] for c in live))
        return CosetTable(len(live), tuple(action))


def todd_coxeter(P: Presentation, subgroup_gens: Sequence[Word], cap: Optional[int] = None) -> CosetTable:
    cap = get_settings().coset_cap if cap is None else cap
    enum = _Enumerator(P.ngens, P.relators, cap)
    enum.run(list(subgroup_gens))
    table = standardize(enum.compact())
    logger.info("[COSETS] todd-coxeter: index %d (%d cosets defined)", table.n, len(enum.table))
    return table


# ---------------------------------------------------------------------------
# Oracle cross-check
# ---------------------------------------------------------------------------

def power_commutator_generators(P: Presentation, p: int) -> List[Word]:
    gens = [Word((g,)) for g in range(1, P.ngens + 1)]
    out = [g ** p for g in gens]
    for a, b in itertools.combinations(gens, 2):
        out.append(commutator(a, b))
    return out


def exponent_p_abelian_presentation(P: Presentation, p: int) -> Presentation:
    """P with every p-th power and every generator commutator added as a relator.

    It presents G / G^p[G, G], so the trivial subgroup of it has the same
    coset table as the kernel of the maximal elementary abelian p-quotient.
    """
    return Presentation(P.names, list(P.relators) + power_commutator_generators(P, p))


@dataclass(frozen=True)
class CrossCheck:
    outcome: str  # "agree" | "disagree" | "inconclusive"
    generator_set: str
    index: Optional[int]
    expected_index: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "outcome": self.outcome,
            "generator_set": self.generator_set,
            "index": self.index,
            "expected_index": self.expected_index,
        }


ORACLE_ROUTE = "exponent-p-abelian-quotient"


def kernel_cross_check(P: Presentation, h: PHom, cap: int = 100_000) -> CrossCheck:
    """Compare the direct kernel table of h against an enumeration that never sees h.

    The oracle enumerates the trivial subgroup of P + {g^p} + {[g_i, g_j]}.
    If h is the maximal elementary abelian p-quotient both tables are the
    regular action of the same group and agree after standardization; any
    other h gives a different index or action and is reported as disagree.
    """
    direct = standardize(table_from_phom(P, h))
    Q = exponent_p_abelian_presentation(P, h.p)
    try:
        oracle = todd_coxeter(Q, [], cap)
    except EnumerationOverflow:
        logger.info("[COSETS] cross-check enumeration overflowed at cap %d", cap)
        return CrossCheck("inconclusive", ORACLE_ROUTE, None, direct.n)
    if oracle == direct:
        return CrossCheck("agree", ORACLE_ROUTE, oracle.n, direct.n)
    logger.warning("[COSETS] cross-check disagrees: oracle index %d, direct index %d", oracle.n, direct.n)
    return CrossCheck("disagree", ORACLE_ROUTE, oracle.n, direct.n)
