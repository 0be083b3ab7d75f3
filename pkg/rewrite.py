# rewrite.py
"""
Reidemeister-Schreier presentations of finite-index subgroups, and a
conservative Tietze simplifier.

Schreier generator x_{c,g} = rep[c] * g * rep[c.g]^-1 is named "<g>_<c>".
Tree edges (words that freely reduce to 1) are dropped up front, so an
index-m subgroup of an n-generator group gets exactly m*(n-1)+1 generators.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from config import get_settings
from cosets import CosetTable, letter_order
from fpres import Presentation
from word import Word, cyclic_key, cyclic_reduce, invert, substitute

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Transversal:
    reps: Tuple[Word, ...]

    def __len__(self) -> int:
        return len(self.reps)


def schreier_transversal(table: CosetTable) -> Transversal:
    """BFS from coset 0; letters tried as gen1, gen1^-1, gen2, gen2^-1, ..."""
    reps: List[Optional[Word]] = [None] * table.n
    reps[0] = Word.identity()
    queue = [0]
    i = 0
    order = letter_order(table.ngens)
    while i < len(queue):
        c = queue[i]
        i += 1
        for x in order:
            d = table.act(c, x)
            if reps[d] is None:
                reps[d] = Word._trusted(reps[c].letters + (x,))
                queue.append(d)
    if len(queue) != table.n:
        raise ValueError("coset table is not transitive")
    return Transversal(tuple(reps))


def schreier_generators(table: CosetTable, T: Transversal) -> List[Tuple[Tuple[int, int], Word]]:
    """[((coset, generator), word), ...] in coset-major, generator-minor order."""
    out = []
    for c in range(table.n):
        for g in range(1, table.ngens + 1):
            d = table.act(c, g)
            w = T.reps[c] * Word._trusted((g,)) * invert(T.reps[d])
            if w:
                out.append(((c, g), w))
    return out


@dataclass(frozen=True)
class Rewrite:
    presentation: Presentation
    labels: Tuple[Tuple[int, int], ...]
    words: Tuple[Word, ...]
    index: int
    # one per (relator, coset), counted before empty relators are dropped
    nrelators_raw: int

    def ambient_words(self) -> Dict[str, Word]:
        return dict(zip(self.presentation.names, self.words))


def rewrite_subgroup(P: Presentation, table: CosetTable) -> Rewrite:
    T = schreier_transversal(table)
    gens = schreier_generators(table, T)
    number: Dict[Tuple[int, int], int] = {label: k + 1 for k, (label, _) in enumerate(gens)}
    names = [f"{P.names[g - 1]}_{c}" for (c, g), _ in gens]

    def rewrite_from(c: int, rel: Word) -> Word:
        out: List[int] = []
        for x in rel.letters:
            if x > 0:
                k = number.get((c, x))
                if k is not None:
                    out.append(k)
                c = table.act(c, x)
            else:
                c = table.act(c, x)
                k = number.get((c, -x))
                if k is not None:
                    out.append(-k)
        return Word(out)

    relators = [rewrite_from(c, rel) for rel in P.relators for c in range(table.n)]
    logger.info(
        "[REWRITE] index %d: %d generators, %d relators",
        table.n, len(names), len(relators),
    )
    return Rewrite(
        presentation=Presentation(names, relators),
        labels=tuple(label for label, _ in gens),
        words=tuple(w for _, w in gens),
        index=table.n,
        nrelators_raw=len(relators),
    )


def rewrite_subgroup_presentation(P: Presentation, table: CosetTable) -> Presentation:
    return rewrite_subgroup(P, table).presentation


def expand_word(w: Word, ambient: Sequence[Word]) -> Word:
    """Substitute each subgroup letter k by ambient[k-1]."""
    return substitute(w, {k + 1: a for k, a in enumerate(ambient)})


# ---------------------------------------------------------------------------
# Tietze
# ---------------------------------------------------------------------------

def _occurrences(rel: Tuple[int, ...]) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for x in rel:
        counts[abs(x)] = counts.get(abs(x), 0) + 1
    return counts


def _tidy(relators: List[Word]) -> Tuple[List[Word], bool]:
    """Cyclically reduce, drop empties and duplicates up to rotation/inversion."""
    seen = set()
    out: List[Word] = []
    changed = False
    for r in relators:
        core, conj = cyclic_reduce(r)
        if conj:
            changed = True
        if not core:
            changed = True
            continue
        key = cyclic_key(core)
        if key in seen:
            changed = True
            continue
        seen.add(key)
        out.append(core)
    return out, changed


def _pick_elimination(relators: List[Word], alive: set, budget_length: int, total: int):
    """
    Smallest relator containing a generator exactly once; ties by relator
    position then generator. Skipped if the substitution would exceed the
    length budget.
    """
    occ = [_occurrences(r.letters) for r in relators]
    order = sorted(range(len(relators)), key=lambda k: (len(relators[k]), k))
    for k in order:
        rel = relators[k].letters
        counts = occ[k]
        for g in sorted(counts):
            if counts[g] != 1 or g not in alive:
                continue
            uses = sum(o.get(g, 0) for j, o in enumerate(occ) if j != k)
            growth = uses * (len(rel) - 2) - len(rel)
            if total + growth > budget_length:
                continue
            return k, g
    return None


def tietze_simplify(
    P: Presentation,
    budget: Optional[int] = None,
    length_factor: float = 4.0,
) -> Presentation:
    """
    Apply, pass by pass: cyclic reduction, removal of empty and duplicate
    relators, and elimination of one generator that occurs exactly once in
    some relator. Surviving generators keep their names; indices are
    compacted at the end.
    """
    budget = get_settings().tietze_budget if budget is None else budget
    relators = list(P.relators)
    alive = set(range(1, P.ngens + 1))
    total0 = sum(len(r) for r in relators)
    budget_length = int(length_factor * total0) + 64
    passes = 0
    for passes in range(1, budget + 1):
        relators, changed = _tidy(relators)
        total = sum(len(r) for r in relators)
        pick = _pick_elimination(relators, alive, budget_length, total)
        if pick is not None:
            k, g = pick
            rel = relators[k].letters
            i = next(i for i, x in enumerate(rel) if abs(x) == g)
            rotated = rel[i:] + rel[:i]
            rest = Word(rotated[1:])
            # g * rest = 1  or  g^-1 * rest = 1
            value = invert(rest) if rotated[0] > 0 else rest
            relators = [substitute(r, {g: value}) for j, r in enumerate(relators) if j != k]
            alive.discard(g)
            changed = True
            logger.debug("[TIETZE] pass %d: eliminated %s", passes, P.names[g - 1])
        if not changed:
            break
    relators, _ = _tidy(relators)
    keep = sorted(alive)
    renumber = {g: k + 1 for k, g in enumerate(keep)}
    compact = [Word((renumber[abs(x)] if x > 0 else -renumber[abs(x)]) for x in r.letters) for r in relators]
    out = Presentation([P.names[g - 1] for g in keep], compact)
    logger.info(
        "[TIETZE] %d passes: %d/%d generators, %d/%d relators",
        passes, out.ngens, P.ngens, out.nrelators, P.nrelators,
    )
    return out
