"""Command line: skeleton, equivalence, oracle, cohomology and x0."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .errors import BelowX0, CapExceeded, CoclassError
from .family import CoclassFamily, ProPData, compute_x0
from .fixtures import FAMILIES, family_data
from .groups import all_subgroups
from .quillen import (category_table, category_to_dot, category_to_json, check_equivalence,
                      functor_F, functor_FS, oracle_check, skeleton_Gx, skeleton_S)
from .splitting import verify_splitting

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    data: Optional[str] = None
    x: Optional[int] = None
    y: Optional[int] = None
    n: int = 1
    r: Optional[int] = None
    slack: int = 8
    format: str = "table"
    cap: int = 2**12
    functor: str = "F"

    def load(self) -> ProPData:
        if self.data:
            return ProPData.load(self.data)
        return family_data(self.family or "dihedral2")

    def build(self) -> CoclassFamily:
        top = max(v for v in (self.x, self.y, 0) if v is not None) + 1
        return CoclassFamily(self.load(), x_cap=max(12, top), slack=self.slack)


def _emit(C, fmt: str, word=None) -> str:
    if fmt == "json":
        return category_to_json(C, word) + "\n"
    if fmt == "dot":
        return category_to_dot(C)
    return category_table(C)


def cmd_skeleton(cfg: RunConfig, out) -> int:
    fam = cfg.build()
    if cfg.x is None:
        C = skeleton_S(fam)
        P = fam.P

        def word(pair):
            return P.labels[pair] if isinstance(pair, int) else str(pair)
        out.write(_emit(C, cfg.format, word))
    else:
        C = skeleton_Gx(fam, cfg.x)
        G = fam.group(cfg.x)
        out.write(_emit(C, cfg.format, lambda i: G.word(G.ext.element_at(i))))
    return EXIT_OK


def cmd_equivalence(cfg: RunConfig, out) -> int:
    fam = cfg.build()
    x0 = compute_x0(fam.data, fam.x_cap, fam.slack)
    x = cfg.x if cfg.x is not None else x0
    y = cfg.y if cfg.y is not None else x + 1
    out.write(f"x0 = {x0}\n")
    if min(x, y) < x0:
        out.write(f"refused: x = {min(x, y)} is below x0 = {x0}\n")
        return EXIT_USAGE
    ok = True
    if cfg.functor == "FS":
        for z in range(x, y + 1):
            rep = check_equivalence(functor_FS(fam, z))
            out.write(_verdict(f"F_S at x = {z}", rep))
        return EXIT_OK
    lo, hi = min(x, y), max(x, y)
    for z in range(lo, hi):
        F = functor_F(fam, z)
        F.check_functor()
        rep = check_equivalence(F)
        ok = ok and rep.equivalence
        out.write(_verdict(f"F: x = {z} -> {z + 1}", rep))
    out.write(("equivalent" if ok else "not equivalent") + f" for x = {lo} .. {hi}\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def _verdict(name, rep) -> str:
    d = rep.as_dict()
    fields = ["essentially_surjective", "full", "full_on_nonempty", "faithful", "bijective_on_objects"]
    line = name + ": " + ", ".join(f"{k} = {d[k]}" for k in fields)
    if rep.witnesses:
        line += "; " + "; ".join(f"{k}: {v}" for k, v in sorted(d["witnesses"].items()))
    return line + "\n"


def cmd_oracle(cfg: RunConfig, out) -> int:
    fam = cfg.build()
    x = cfg.x or 0
    rep = oracle_check(fam, x, cfg.cap)
    if cfg.format == "json":
        out.write(json.dumps(rep.as_dict(), indent=1, sort_keys=True) + "\n")
    else:
        out.write(f"|G_{x}| = {fam.group(x).order}\n")
        out.write(f"skeleton objects: {rep.skeleton_objects}, elementary abelian subgroups: "
                  f"{rep.oracle_objects}\n")
        out.write("Hom cardinalities:\n")
        for row in rep.hom_matrix:
            out.write("  " + " ".join(str(v) for v in row) + "\n")
        for label, (target, g) in sorted(rep.conjugating_witnesses.items()):
            out.write(f"  {label} ~ {target} via {g}\n")
        for p in rep.problems:
            out.write("mismatch: " + p + "\n")
        out.write("agree\n" if rep.agree else "disagree\n")
    return EXIT_OK if rep.agree else EXIT_MISMATCH


def cmd_cohomology(cfg: RunConfig, out) -> int:
    fam = cfg.build()
    r = cfg.r if cfg.r is not None else 2 * fam.m
    ok = True
    out.write(f"n = {cfg.n}, r = {r}\n")
    out.write("subgroup | H^n(L,T) | H^(n+1)(L,T) | H^n(L,T/p^r) | Z = I + K | I & K = 0 | mul K\n")
    for L in all_subgroups(fam.P):
        rep = verify_splitting(L, fam.action, cfg.n, r, fam.N)
        h = fam._coh(L, cfg.n).invariants
        h1 = fam._coh(L, cfg.n + 1).invariants
        ok = ok and rep.ok
        out.write(f"{L.label()} | {list(h)} | {list(h1)} | {rep.h_finite} | "
                  f"{rep.z_order} = {rep.i_order} * {rep.k_order} | {rep.intersection_order == 1} | "
                  f"{rep.mul_compatible}\n")
    out.write("splitting verified\n" if ok else "splitting FAILED\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_x0(cfg: RunConfig, out) -> int:
    fam = cfg.build()
    P = fam.P
    bounds = fam.x_bounds()
    vals = fam.defect_valuations()
    for (Le, He, w), b in sorted(bounds.items()):
        L, H = P.subgroup(Le), P.subgroup(He)
        v = vals[(Le, He, w)]
        out.write(f"{L.label()} -> {H.label()} by {P.labels[w]}: defect valuation "
                  f"{'none' if v is None else v}, x = {b}\n")
    out.write(f"x0 = {compute_x0(fam.data, fam.x_cap, fam.slack)}\n")
    return EXIT_OK


COMMANDS = {"skeleton": cmd_skeleton, "equivalence": cmd_equivalence, "oracle": cmd_oracle,
            "cohomology": cmd_cohomology, "x0": cmd_x0}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coclass-quillen",
                                 description="Quillen categories along coclass families")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--family", choices=sorted(FAMILIES))
        src.add_argument("--data", help="ProPData JSON file")
        p.add_argument("--x", type=int)
        p.add_argument("--y", type=int)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--r", type=int)
        p.add_argument("--precision-slack", type=int, default=8, dest="slack")
        p.add_argument("--format", choices=["table", "json", "dot"], default="table")
        p.add_argument("--cap", type=int, default=2**12)
        p.add_argument("--functor", choices=["F", "FS"], default="F")
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = RunConfig(**{k: v for k, v in vars(args).items()})
    for k in ("x", "y", "r"):
        v = getattr(cfg, k)
        if v is not None and v < 0:
            sys.stderr.write(f"--{k} must be non-negative\n")
            return EXIT_USAGE
    try:
        return COMMANDS[cfg.command](cfg, out)
    except BelowX0 as exc:
        out.write(f"refused: x = {exc.x} is below x0 = {exc.x0}\n")
        return EXIT_USAGE
    except CapExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (OSError, ValueError, KeyError, CoclassError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
