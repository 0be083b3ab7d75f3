# cli.py
"""
homotower command line.

    homotower <abelianize|kernel|tower|verify-cd>
              [--input PATH | --fixture NAME] [--prime P] [--depth D]
              [--format text|json] [--out PATH] [--coset-cap N] [--gen-cap N]

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from sympy import isprime

from abelian import abelian_invariants, elementary_abelian_quotient
from config import get_settings
from cosets import kernel_cross_check
from errors import (
    HomotowerError,
    InputError,
    PresentationParseError,
    ResourceCapError,
    VerificationFailure,
)
from fixtures import FIXTURES, load_fixture
from fpres import Presentation, load_presentation, print_presentation
from tower import SCHEMA_VERSION, Caps, TowerReport, descend, descend_once

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

COMMANDS = ("abelianize", "kernel", "tower", "verify-cd")

# expected shape of the gamma1 -> gamma2 descent at p = 3
CD_PRIME = 3
CD_ROOT_RANK = 2
CD_INDEX = 9
CD_RAW_GENS = 28
CD_RAW_RELATORS = 54
CD_RANK = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str]
    fixture: Optional[str]
    p: int
    depth: int
    caps: Caps
    output_format: str = "text"
    out: Optional[str] = None
    kernel_out: Optional[str] = None

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.p < 3 or not isprime(self.p):
            raise InputError(f"--prime must be an odd prime, got {self.p}")
        if self.depth < 1:
            raise InputError(f"--depth must be at least 1, got {self.depth}")
        for name in ("coset_cap", "gen_cap", "depth_cap", "tietze_budget"):
            if getattr(self.caps, name) < 1:
                raise InputError(f"{name} must be positive")
        if self.output_format not in ("text", "json"):
            raise InputError(f"--format must be text or json, got {self.output_format!r}")
        return self

    def source_name(self) -> str:
        return self.input_path or self.fixture or "gamma1"

    def load(self) -> Presentation:
        if self.input_path:
            path = Path(self.input_path)
            if not path.is_file():
                raise InputError(f"no such input file: {path}")
            try:
                return load_presentation(path)
            except PresentationParseError as exc:
                raise PresentationParseError(
                    f"{path}: {exc.message}", exc.line, exc.column, exc.kind
                ) from exc
        return load_fixture(self.fixture or "gamma1")


# ---------------------------------------------------------------------------
# Commands: each returns (exit code, payload, text rendering)
# ---------------------------------------------------------------------------

Result = Tuple[int, Dict[str, object], str]


def cmd_abelianize(config: RunConfig) -> Result:
    P = config.load()
    inv = abelian_invariants(P)
    h = elementary_abelian_quotient(P, config.p)
    payload = {
        "source": config.source_name(),
        "ngens": P.ngens,
        "nrelators": P.nrelators,
        "betti": inv.betti,
        "torsion": list(inv.torsion),
        "p": config.p,
        "elementary_abelian_rank": h.r,
    }
    text = "\n".join([
        f"source:       {payload['source']}",
        f"generators:   {P.ngens}",
        f"relators:     {P.nrelators}",
        f"H1(G, Z):     {inv}",
        f"betti:        {inv.betti}",
        f"torsion:      {list(inv.torsion)}",
        f"mod-{config.p} rank:   {h.r}",
    ])
    return EXIT_OK, payload, text


def _cert_text(d: Dict[str, object]) -> str:
    return "\n".join(f"  {k}: {d[k]}" for k in sorted(d))


def cmd_kernel(config: RunConfig) -> Result:
    P = config.load()
    step = descend_once(P, config.p, config.caps)
    fp_text = print_presentation(step.kernel)
    if config.kernel_out:
        Path(config.kernel_out).write_text(fp_text + "\n", encoding="utf-8")
        logger.info("[CLI] kernel presentation written to %s", config.kernel_out)
    cert = step.cert.to_dict()
    payload = {"source": config.source_name(), "kernel": fp_text, "certificate": cert}
    text = fp_text + "\n\ncertificate:\n" + _cert_text(cert)
    return EXIT_OK, payload, text


def _tower_text(report: TowerReport) -> str:
    lines = [
        f"p-descent tower, p = {report.p}",
        f"root fingerprint: {report.root_fingerprint}",
        report.to_frame().to_string(),
        f"prop1 hypothesis at root: {report.prop1_hypothesis}",
        f"hypothesis anchored at level: {report.prop1_anchor}",
    ]
    if report.stationary:
        lines.append("stationary: the elementary abelian quotient became trivial")
    if report.truncated:
        lines.append(f"TRUNCATED: {report.truncation_reason}")
    return "\n".join(lines)


def cmd_tower(config: RunConfig) -> Result:
    P = config.load()
    report = descend(P, config.p, config.depth, config.caps)
    if report.truncated:
        print(f"warning: report truncated ({report.truncation_reason})", file=sys.stderr)
    payload = report.to_dict()
    payload["source"] = config.source_name()
    return EXIT_OK, payload, _tower_text(report)


def _cd_checks(report: TowerReport, cross: Optional[Dict[str, object]]) -> List[Tuple[str, bool, str]]:
    checks: List[Tuple[str, bool, str]] = []

    def add(name: str, ok: bool, detail: str) -> None:
        checks.append((name, bool(ok), detail))

    root = report.root
    add("root-quotient-rank", root.h1_fp_rank == CD_ROOT_RANK,
        f"mod-3 rank of Gamma_1 is {root.h1_fp_rank} (want {CD_ROOT_RANK})")
    if not report.levels:
        add("level-1-computed", False, report.truncation_reason or "no level computed")
        return checks
    one = report.levels[0]
    add("level-1-index", one.index_in_parent == CD_INDEX,
        f"index {one.index_in_parent} (want {CD_INDEX})")
    add("level-1-raw-generators", one.ngens_raw == CD_RAW_GENS,
        f"{one.ngens_raw} Schreier generators (want {CD_RAW_GENS})")
    add("level-1-raw-relators", one.nrelators_raw == CD_RAW_RELATORS,
        f"{one.nrelators_raw} rewritten relators (want {CD_RAW_RELATORS})")
    add("level-1-h1-rank", one.h1_fp_rank == CD_RANK,
        f"dim H1(Gamma_2, F_3) = {one.h1_fp_rank} (want {CD_RANK})")
    add("level-1-exponent-3-quotient", one.expp_elementary and one.expp_rank == CD_RANK,
        f"class-2 exponent-3 quotient elementary={one.expp_elementary}, rank={one.expp_rank}")
    for cert in report.certificates():
        add(f"level-{cert.level}-betti-zero", cert.betti == 0,
            f"betti {cert.betti} via {cert.betti_method}")
    if cross is not None:
        add("level-1-oracle", cross["outcome"] != "disagree",
            f"todd-coxeter {cross['outcome']} via the {cross['generator_set']} enumeration")
    return checks


def cmd_verify_cd(config: RunConfig) -> Result:
    if config.input_path or (config.fixture and config.fixture != "gamma1"):
        raise InputError("verify-cd runs on the builtin gamma1 fixture only")
    P = load_fixture("gamma1")
    report = descend(P, config.p, config.depth, config.caps)
    payload: Dict[str, object] = {"source": "gamma1", "tower": report.to_dict()}
    if config.p != CD_PRIME:
        payload["claim"] = None
        payload["mode"] = "exploratory"
        text = _tower_text(report) + f"\n\nexploratory run at p = {config.p}: no claim is made"
        return EXIT_OK, payload, text

    cross = kernel_cross_check(P, elementary_abelian_quotient(P, CD_PRIME)).to_dict()
    checks = _cd_checks(report, cross)
    failed = [name for name, ok, _ in checks if not ok]
    payload["oracle"] = cross
    payload["checks"] = [{"name": n, "passed": ok, "detail": d} for n, ok, d in checks]
    payload["claim"] = (
        "Gamma_2/Gamma_2^3 = (Z/3)^3 and every computed level has betti 0"
        if not failed else None
    )
    payload["verdict"] = "pass" if not failed else "fail"
    lines = [_tower_text(report), ""]
    lines += [f"[{'PASS' if ok else 'FAIL'}] {n}: {d}" for n, ok, d in checks]
    if failed:
        lines.append(f"verification failed: {', '.join(failed)}")
        return EXIT_VERIFY, payload, "\n".join(lines)
    lines.append("verified: Gamma_2/Gamma_2^3 = (Z/3Z)^3; all computed levels are rational homology spheres")
    return EXIT_OK, payload, "\n".join(lines)


HANDLERS: Dict[str, Callable[[RunConfig], Result]] = {
    "abelianize": cmd_abelianize,
    "kernel": cmd_kernel,
    "tower": cmd_tower,
    "verify-cd": cmd_verify_cd,
}


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def render_json(command: str, payload: Dict[str, object]) -> str:
    body = dict(payload)
    body["schema"] = SCHEMA_VERSION
    body["command"] = command
    canonical = json.dumps(body, sort_keys=True, separators=(",", ":"))
    body["digest"] = hashlib.sha256(canonical.encode("utf-8")).hexdigest()
    return json.dumps(body, sort_keys=True, indent=2)


def emit(config: RunConfig, payload: Dict[str, object], text: str) -> None:
    out = render_json(config.command, payload) if config.output_format == "json" else text
    if config.out:
        Path(config.out).write_text(out + "\n", encoding="utf-8")
    else:
        sys.stdout.write(out + "\n")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="presentation file (.fp)")
    src.add_argument("--fixture", metavar="NAME", help=f"builtin presentation: {', '.join(FIXTURES)}")
    common.add_argument("--prime", type=int, default=3, help="odd prime p (default 3)")
    common.add_argument("--depth", type=int, default=None, help="tower depth")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--coset-cap", type=int, default=settings.coset_cap)
    common.add_argument("--gen-cap", type=int, default=settings.gen_cap)
    common.add_argument("--depth-cap", type=int, default=settings.depth_cap)
    common.add_argument("--tietze-budget", type=int, default=settings.tietze_budget)
    common.add_argument("--kernel-out", metavar="PATH", help="kernel: also write the kernel presentation here")
    common.add_argument("--log-level", default=settings.log_level)

    parser = _Parser(prog="homotower", description="p-descent towers of finitely presented groups")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("abelianize", parents=[common], help="abelian invariants and mod-p rank")
    sub.add_parser("kernel", parents=[common], help="kernel of the maximal elementary abelian p-quotient")
    sub.add_parser("tower", parents=[common], help="iterated kernels with per-level certificates")
    sub.add_parser("verify-cd", parents=[common], help="verify the Gamma_1 -> Gamma_2 computation")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    default_depth = 2 if args.command == "verify-cd" else 1
    return RunConfig(
        command=args.command,
        input_path=args.input,
        fixture=args.fixture,
        p=args.prime,
        depth=args.depth if args.depth is not None else default_depth,
        caps=Caps(
            coset_cap=args.coset_cap,
            gen_cap=args.gen_cap,
            depth_cap=args.depth_cap,
            tietze_budget=args.tietze_budget,
        ),
        output_format=args.format,
        out=args.out,
        kernel_out=args.kernel_out,
    ).validate()


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        config = config_from_args(args)
        code, payload, text = HANDLERS[config.command](config)
        emit(config, payload, text)
        return code
    except (InputError, OSError) as exc:
        print(f"homotower: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationFailure as exc:
        print(f"homotower: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ResourceCapError as exc:
        print(f"homotower: resource cap reached: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HomotowerError as exc:
        print(f"homotower: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
