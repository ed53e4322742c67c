#!/usr/bin/env python3
"""Generate the full set of correlation-sweep tables.

For each initial state (Bell, Werner r_b=0.8, MEMS gamma=0.8) this writes
six CSVs: damping sweeps without protection (eta = 0 and 1) and
measurement-strength sweeps with one- and two-qubit protection at fixed
p = 0.5 (again eta = 0 and 1).  A final pair of tables scans the
initial-state parameter alpha^2 of the partially entangled pure family
under every protection mode.  All outputs carry raw and normalized
columns and are deterministic.
"""

import argparse
import pathlib

from qcorrkit.channels import WmrMode
from qcorrkit.states import StateFamily
from qcorrkit.sweep import SweepConfig, run_sweep, write_sweep_csv

FAMILIES = {
    "bell": StateFamily("bell"),
    "werner08": StateFamily("werner", 0.8),
    "mems08": StateFamily("mems", 0.8),
}


def write(config: SweepConfig, path: pathlib.Path) -> None:
    result = run_sweep(config)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        write_sweep_csv(result, fh)
    print(f"wrote {path} ({len(result.rows)} rows)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("sweeps"))
    parser.add_argument("--points", type=int, default=201)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for label, family in FAMILIES.items():
        for eta in (0.0, 1.0):
            tag = f"eta{int(eta)}"
            write(
                SweepConfig(family=family, eta=eta, points=args.points),
                args.out / f"{label}_p_{tag}.csv",
            )
            for mode, mode_tag in ((WmrMode.ONE_QUBIT, "wm1"), (WmrMode.TWO_QUBIT, "wm2")):
                write(
                    SweepConfig(
                        family=family, eta=eta, mode=mode, var="q", points=args.points
                    ),
                    args.out / f"{label}_q_{mode_tag}_{tag}.csv",
                )

    for eta in (0.0, 1.0):
        tag = f"eta{int(eta)}"
        write(
            SweepConfig(
                family=StateFamily("nme", 0.5), var="alpha2", eta=eta, points=args.points
            ),
            args.out / f"nme_alpha2_none_{tag}.csv",
        )
        for mode, mode_tag in ((WmrMode.ONE_QUBIT, "wm1"), (WmrMode.TWO_QUBIT, "wm2")):
            write(
                SweepConfig(
                    family=StateFamily("nme", 0.5),
                    var="alpha2",
                    eta=eta,
                    mode=mode,
                    q_fixed=0.5,
                    points=args.points,
                ),
                args.out / f"nme_alpha2_{mode_tag}_{tag}.csv",
            )


if __name__ == "__main__":
    main()
