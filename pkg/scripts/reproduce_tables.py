"""Print the semi-skeleton tables of the three built-in families and diff
them against the reference tables."""

import argparse
from dataclasses import dataclass

from coclass_quillen.family import CoclassFamily
from coclass_quillen.fixtures import FAMILIES, S_OBJECTS, S_TABLE, family_data, gx_objects, gx_table
from coclass_quillen.quillen import category_table, skeleton_Gx, skeleton_S
from coclass_quillen.reference import compare_gx_table, compare_s_table


@dataclass
class TableConfig:
    families: tuple = tuple(FAMILIES)
    x_max: int = 5
    slack: int = 8
    show: bool = True


def run(cfg: TableConfig) -> int:
    failures = 0
    for name in cfg.families:
        fam = CoclassFamily(family_data(name), slack=cfg.slack)
        if name == "dihedral2":
            S = skeleton_S(fam)
            problems = compare_s_table(fam, S, S_OBJECTS, S_TABLE)
            print(f"== {name}, S: {'match' if not problems else problems}")
            if cfg.show:
                print(category_table(S))
            failures += bool(problems)
        for x in range(cfg.x_max + 1):
            C = skeleton_Gx(fam, x)
            problems = compare_gx_table(fam, x, C, gx_objects(name), gx_table(name))
            print(f"== {name}, x = {x}: {len(C.objects)} objects, "
                  f"{'match' if not problems else problems}")
            if cfg.show and x == 1:
                print(category_table(C))
            failures += bool(problems)
    return failures


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x-max", type=int, default=5)
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args()
    raise SystemExit(1 if run(TableConfig(x_max=args.x_max, show=not args.quiet)) else 0)
