"""Compare every semi-skeleton with the brute-force Quillen category of G_x
and check F and F_S along the family."""

import argparse
import time
from dataclasses import dataclass

from coclass_quillen.family import CoclassFamily, compute_x0
from coclass_quillen.fixtures import FAMILIES, family_data
from coclass_quillen.quillen import check_equivalence, functor_F, functor_FS, oracle_check


@dataclass
class OracleConfig:
    families: tuple = tuple(FAMILIES)
    oracle_x: tuple = (0, 1, 2)
    steps: int = 4
    cap: int = 2**12


def run(cfg: OracleConfig) -> int:
    bad = 0
    for name in cfg.families:
        fam = CoclassFamily(family_data(name))
        for x in cfg.oracle_x:
            t = time.perf_counter()
            rep = oracle_check(fam, x, cfg.cap)
            print(f"{name} x = {x}: |G_x| = {fam.group(x).order}, {rep.oracle_objects} subgroups, "
                  f"{rep.skeleton_objects} skeleton objects, {rep.oracle_classes} classes, "
                  f"{'agree' if rep.agree else rep.problems} ({time.perf_counter() - t:.2f}s)")
            bad += not rep.agree
        x0 = compute_x0(fam.data)
        for x in range(x0, x0 + cfg.steps):
            F = functor_F(fam, x)
            F.check_functor()
            rF = check_equivalence(F)
            rS = check_equivalence(functor_FS(fam, x))
            print(f"{name} x = {x}: F equivalence {rF.equivalence}; F_S dense {rS.essentially_surjective}, "
                  f"full on nonempty {rS.full_on_nonempty}, faithful {rS.faithful}")
            bad += not rF.equivalence
    return bad


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=4)
    args = ap.parse_args()
    raise SystemExit(1 if run(OracleConfig(steps=args.steps)) else 0)
