"""Sweep-generated feature/target tables for the discord predictor.

A dataset row holds the five raw (unnormalized) measures
[jsd, concurrence, fidelity, qs, chi] as features and the trace-distance
discord as the target, tagged with the generating scenario.  Two
scenarios exist: a damping sweep without protection ("no_wmr", p runs
over [0, 1]) and a measurement-strength sweep with two-qubit protection
("wmr2", p fixed at 0.5, q runs over [0, 0.99] with the per-point
optimal reversal strength).  Interchange format is CSV with the header
``scenario,eta,sweep_var,sweep_value,jsd,concurrence,fidelity,qs,chi,tdd``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .channels import ChannelParams, WmrMode, WmrParams, apply_cad, wmr_pipeline
from .measures import correlation_vector
from .optimize import optimal_qmr
from .states import StateFamily, make_state

SCENARIOS = ("no_wmr", "wmr2")
CSV_HEADER = [
    "scenario", "eta", "sweep_var", "sweep_value",
    "jsd", "concurrence", "fidelity", "qs", "chi", "tdd",
]

#: feature column order, matching the CSV layout
FEATURE_COLUMNS = ("jsd", "concurrence", "fidelity", "qs", "chi")


@dataclass
class Dataset:
    features: np.ndarray      # (n, 5) raw measure values
    targets: np.ndarray       # (n,) trace-distance discord
    scenario: str
    eta: float
    sweep_var: str
    sweep_values: np.ndarray  # (n,)

    def __len__(self) -> int:
        return len(self.targets)


def _row_from_state(state) -> tuple[list[float], float]:
    v = correlation_vector(state)
    if v.qs is None or v.tdd is None:
        raise ValueError("sweep produced a non-X state; measures undefined")
    return [v.jsd, v.concurrence, v.fidelity, v.qs, v.chi], v.tdd


def build_dataset(
    family: StateFamily,
    scenario: str,
    eta: float,
    points: int = 500,
    p_fixed: float = 0.5,
) -> Dataset:
    """Evaluate all measures along a sweep and package them as a dataset."""
    if scenario not in SCENARIOS:
        raise ValueError(f"scenario must be one of {SCENARIOS}, got {scenario!r}")
    if points < 50:
        raise ValueError("need at least 50 rows")
    rho0 = make_state(family)
    feats, targets = [], []
    if scenario == "no_wmr":
        sweep_var = "p"
        values = np.linspace(0.0, 1.0, points)
        for p in values:
            f, t = _row_from_state(apply_cad(rho0, ChannelParams(float(p), eta)))
            feats.append(f)
            targets.append(t)
    else:
        sweep_var = "q"
        values = np.linspace(0.0, 0.99, points)
        ch = ChannelParams(p_fixed, eta)
        for q in values:
            r_star = optimal_qmr(family, ch, float(q), WmrMode.TWO_QUBIT).r_star
            out = wmr_pipeline(rho0, ch, WmrParams(float(q), r_star, WmrMode.TWO_QUBIT))
            f, t = _row_from_state(out.state)
            feats.append(f)
            targets.append(t)
    features = np.array(feats)
    targets = np.array(targets)
    if not (np.isfinite(features).all() and np.isfinite(targets).all()):
        raise ValueError("non-finite measure values in generated dataset")
    return Dataset(features, targets, scenario, eta, sweep_var, values)


def write_dataset_csv(path, data: Dataset) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for i in range(len(data)):
            writer.writerow(
                [data.scenario, repr(float(data.eta)), data.sweep_var, repr(float(data.sweep_values[i]))]
                + [repr(float(x)) for x in data.features[i]]
                + [repr(float(data.targets[i]))]
            )


def read_dataset_csv(path) -> Dataset:
    """Parse a dataset CSV; malformed cells are reported by row and column."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if header != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        feats, targets, values = [], [], []
        scenario, eta, sweep_var = None, None, None
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(CSV_HEADER):
                raise ValueError(f"{path}: row {line_no} has {len(row)} fields")
            scenario, sweep_var = row[0], row[2]
            numbers = []
            for col, cell in zip(CSV_HEADER[3:], row[3:]):
                try:
                    numbers.append(float(cell))
                except ValueError:
                    raise ValueError(
                        f"{path}: row {line_no}, column {col!r}: not a number: {cell!r}"
                    ) from None
            try:
                eta = float(row[1])
            except ValueError:
                raise ValueError(
                    f"{path}: row {line_no}, column 'eta': not a number: {row[1]!r}"
                ) from None
            values.append(numbers[0])
            feats.append(numbers[1:6])
            targets.append(numbers[6])
    if not targets:
        raise ValueError(f"{path}: no data rows")
    return Dataset(
        features=np.array(feats),
        targets=np.array(targets),
        scenario=scenario,
        eta=eta,
        sweep_var=sweep_var,
        sweep_values=np.array(values),
    )
