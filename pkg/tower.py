# tower.py
"""
The p-descent tower: repeatedly pass to the kernel of the maximal elementary
abelian p-quotient and certify each level.

Level 0 is the input group; level i is the i-th kernel. Starting from the
gamma1 fixture, Gamma_2 sits at level 1, which is where the (Z/3)^3
hypothesis gets anchored for that tower.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

import pandas as pd

from abelian import PHom, _check_odd_prime, betti_number, elementary_abelian_quotient
from baerq import class2_expp_quotient
from config import get_settings
from cosets import table_from_phom
from errors import GeneratorCapExceeded, ResourceCapError, TheoremContradiction
from fpres import Presentation
from rewrite import expand_word, rewrite_subgroup, tietze_simplify
from word import Word

logger = logging.getLogger(__name__)

HYPOTHESIS_RANK = 3
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Caps:
    coset_cap: int
    gen_cap: int
    depth_cap: int
    tietze_budget: int

    @classmethod
    def from_settings(cls, **overrides) -> "Caps":
        s = get_settings()
        values = {
            "coset_cap": s.coset_cap,
            "gen_cap": s.gen_cap,
            "depth_cap": s.depth_cap,
            "tietze_budget": s.tietze_budget,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class LevelCertificate:
    level: int
    p: int
    index_in_parent: int
    index_in_root: int
    ngens_raw: int
    nrelators_raw: int
    ngens: int
    nrelators: int
    h1_fp_rank: int
    betti: int
    betti_method: str
    expp_elementary: bool
    expp_rank: Optional[int]
    expp_caveat: bool
    class2_dim: int

    @property
    def rational_homology_sphere(self) -> bool:
        return self.betti == 0

    @property
    def analytic_obstruction(self) -> bool:
        # dim H^1(., F_p) >= 4 rules out a p-adic analytic pro-p completion
        return self.h1_fp_rank >= 4

    @property
    def satisfies_hypothesis(self) -> bool:
        # a class-2-only certificate (p > 3) does not establish G/G^p itself
        return self.expp_elementary and self.expp_rank == HYPOTHESIS_RANK and not self.expp_caveat

    def to_dict(self) -> Dict[str, object]:
        d = asdict(self)
        d["rational_homology_sphere"] = self.rational_homology_sphere
        d["analytic_obstruction"] = self.analytic_obstruction
        return d


def certify(
    P: Presentation,
    p: int,
    level: int = 0,
    index_in_parent: int = 1,
    index_in_root: int = 1,
    raw_counts: Optional[Tuple[int, int]] = None,
) -> LevelCertificate:
    h = elementary_abelian_quotient(P, p)
    betti, method = betti_number(P, p)
    baer = class2_expp_quotient(P, p)
    ngens_raw, nrel_raw = raw_counts if raw_counts else (P.ngens, P.nrelators)
    return LevelCertificate(
        level=level,
        p=p,
        index_in_parent=index_in_parent,
        index_in_root=index_in_root,
        ngens_raw=ngens_raw,
        nrelators_raw=nrel_raw,
        ngens=P.ngens,
        nrelators=P.nrelators,
        h1_fp_rank=h.r,
        betti=betti,
        betti_method=method,
        expp_elementary=baer.elementary_abelian,
        expp_rank=baer.dim_linear if baer.elementary_abelian else None,
        expp_caveat=baer.caveat,
        class2_dim=baer.class2_dim,
    )


class Descent(NamedTuple):
    kernel: Presentation
    cert: LevelCertificate
    ambient: Dict[str, Word]


def descend_once(
    P: Presentation,
    p: int,
    caps: Optional[Caps] = None,
    level: int = 1,
    index_in_root: int = 1,
    h: Optional[PHom] = None,
) -> Descent:
    """
    Kernel of the maximal elementary abelian p-quotient, simplified, with its
    certificate. `index_in_root` is the parent's index in the root; `ambient`
    maps each surviving kernel generator to its word in P's generators.

    Passing `h` descends along that map instead, e.g. one of index_p_maps(P, p).
    """
    p = _check_odd_prime(p)
    caps = caps or Caps.from_settings()
    if h is None:
        h = elementary_abelian_quotient(P, p)
    else:
        if h.p != p:
            raise ValueError(f"map is onto F_{h.p}^{h.r}, not over F_{p}")
        h.check(P)
    if h.r == 0:
        logger.info("[TOWER] level %d: rank-0 quotient, kernel is the group itself", level)
        ambient = {name: Word((k + 1,)) for k, name in enumerate(P.names)}
        cert = certify(P, p, level, 1, index_in_root)
        return Descent(P, cert, ambient)
    table = table_from_phom(P, h, caps.coset_cap)
    rw = rewrite_subgroup(P, table)
    raw = rw.presentation
    kernel = tietze_simplify(raw, caps.tietze_budget)
    if kernel.ngens > caps.gen_cap:
        raise GeneratorCapExceeded(
            f"level {level}: {kernel.ngens} generators after simplification exceeds the cap {caps.gen_cap}"
        )
    words = rw.ambient_words()
    ambient = {name: words[name] for name in kernel.names}
    cert = certify(
        kernel,
        p,
        level=level,
        index_in_parent=table.n,
        index_in_root=index_in_root * table.n,
        raw_counts=(raw.ngens, rw.nrelators_raw),
    )
    logger.info(
        "[TOWER] level %d: index %d, %d gens (%d raw), dim H1(F_%d) %d, betti %d (%s)",
        level, table.n, kernel.ngens, raw.ngens, p, cert.h1_fp_rank, cert.betti, cert.betti_method,
    )
    return Descent(kernel, cert, ambient)


@dataclass
class TowerReport:
    p: int
    root_fingerprint: str
    root: LevelCertificate
    levels: List[LevelCertificate] = field(default_factory=list)
    depth_requested: int = 1
    truncated: bool = False
    truncation_reason: Optional[str] = None
    stationary: bool = False

    @property
    def prop1_hypothesis(self) -> bool:
        return self.root.satisfies_hypothesis

    @property
    def prop1_anchor(self) -> Optional[int]:
        for cert in [self.root] + self.levels:
            if cert.satisfies_hypothesis:
                return cert.level
        return None

    def certificates(self) -> List[LevelCertificate]:
        return [self.root] + self.levels

    def to_dict(self) -> Dict[str, object]:
        return {
            "schema": SCHEMA_VERSION,
            "p": self.p,
            "root_fingerprint": self.root_fingerprint,
            "root": self.root.to_dict(),
            "levels": [c.to_dict() for c in self.levels],
            "depth_requested": self.depth_requested,
            "truncated": self.truncated,
            "truncation_reason": self.truncation_reason,
            "stationary": self.stationary,
            "prop1_hypothesis": self.prop1_hypothesis,
            "prop1_anchor": self.prop1_anchor,
        }

    def to_frame(self) -> pd.DataFrame:
        columns = [
            "level", "index_in_parent", "index_in_root", "ngens_raw", "nrelators_raw",
            "ngens", "nrelators", "h1_fp_rank", "betti", "betti_method",
            "expp_elementary", "expp_rank",
        ]
        df = pd.DataFrame([c.to_dict() for c in self.certificates()])
        # expp_rank is None on truncated or skipped levels
        df["expp_rank"] = df["expp_rank"].astype("Int64")
        return df[columns].set_index("level")


def enforce_theorem(report: TowerReport) -> None:
    """
    Below a level that certifies G/G^p = (Z/p)^3, every level must have
    betti 0 and dim H^1(., F_p) <= 3.
    """
    anchor = report.prop1_anchor
    if anchor is None:
        return
    for cert in report.levels:
        if cert.level <= anchor:
            continue
        if cert.betti != 0:
            raise TheoremContradiction(
                "betti-zero-below-anchor", f"level {cert.level} has betti {cert.betti}"
            )
        if cert.h1_fp_rank > HYPOTHESIS_RANK:
            raise TheoremContradiction(
                "h1-rank-below-anchor", f"level {cert.level} has dim H1 = {cert.h1_fp_rank}"
            )


def descend(P: Presentation, p: int, depth: int = 1, caps: Optional[Caps] = None) -> TowerReport:
    p = _check_odd_prime(p)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    caps = caps or Caps.from_settings()
    report = TowerReport(
        p=p,
        root_fingerprint=P.fingerprint(),
        root=certify(P, p),
        depth_requested=depth,
    )
    target = depth
    if depth > caps.depth_cap:
        target = caps.depth_cap
        report.truncated = True
        report.truncation_reason = f"depth {depth} exceeds the depth cap {caps.depth_cap}"
        logger.warning("[TOWER] %s", report.truncation_reason)
    current, index = P, 1
    for level in range(1, target + 1):
        try:
            step = descend_once(current, p, caps, level=level, index_in_root=index)
        except ResourceCapError as exc:
            report.truncated = True
            report.truncation_reason = f"level {level}: {exc}"
            logger.warning("[TOWER] truncated at %s", report.truncation_reason)
            break
        report.levels.append(step.cert)
        enforce_theorem(report)
        if step.cert.index_in_parent == 1:
            report.stationary = True
            break
        current, index = step.kernel, step.cert.index_in_root
    return report


class Prop1Evidence(NamedTuple):
    holds: bool
    fp_rank: int
    baer: dict

    @property
    def caveat(self) -> bool:
        return bool(self.baer["caveat"])


def check_prop1_hypothesis(P: Presentation, p: int) -> Prop1Evidence:
    p = _check_odd_prime(p)
    h = elementary_abelian_quotient(P, p)
    baer = class2_expp_quotient(P, p)
    holds = baer.elementary_abelian and baer.dim_linear == HYPOTHESIS_RANK
    return Prop1Evidence(holds, h.r, baer.to_dict())


def lift_words(ambient_chain: List[Dict[str, Word]]) -> List[Word]:
    """
    Compose the per-level `ambient` maps of successive descents: the words of
    the last kernel's generators in the generators of the root.
    """
    if not ambient_chain:
        return []
    words = [Word((k + 1,)) for k in range(len(ambient_chain[-1]))]
    for mapping in reversed(ambient_chain):
        images = list(mapping.values())
        words = [expand_word(w, images) for w in words]
    return words
