"""On-disk formats: network JSON and dataset CSV.

Network JSON layout::

    {
      "variables": [{"name": "RAIN", "states": ["false", "true"]}, ...],
      "edges": [["SEASON", "RAIN"], ...],
      "cpts": {"RAIN": {"parents": ["SEASON"], "rows": [[...], [...]]}, ...}
    }

CPT rows follow the package convention (one row per parent configuration,
first parent slowest).  Loading validates fully; rows whose sum is within
ROW_SUM_TOL of 1 are renormalized exactly, anything further off is
rejected.

Dataset CSV: a header row of variable names, then one state NAME per cell.
State names not declared for the column's variable are load errors.  When
no variable declarations are supplied the states are inferred as the
sorted distinct values of each column.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .dag import build_dag
from .errors import DatasetFormatError, NetworkFormatError
from .network import Cpt, Dataset, Network, ROW_SUM_TOL, Variable, validate_network

__all__ = [
    "network_to_json_dict",
    "network_from_json_dict",
    "load_network",
    "save_network",
    "load_dataset",
    "save_dataset",
]


def network_to_json_dict(network: Network) -> dict:
    return {
        "variables": [
            {"name": v.name, "states": list(v.states)} for v in network.variables
        ],
        "edges": sorted(
            [network.dag.names[p], network.dag.names[c]] for p, c in network.dag.edges
        ),
        "cpts": {
            cpt.child: {"parents": list(cpt.parents), "rows": cpt.rows.tolist()}
            for cpt in network.cpts
        },
    }


def network_from_json_dict(doc: dict) -> Network:
    """Build and fully validate a Network from its JSON form."""
    try:
        variables = [
            Variable(item["name"], tuple(item["states"])) for item in doc["variables"]
        ]
        edges = [(parent, child) for parent, child in doc["edges"]]
        cpt_docs = doc["cpts"]
    except (KeyError, TypeError, ValueError) as exc:
        raise NetworkFormatError(f"malformed network document: {exc}") from exc
    for var in variables:
        if var.arity < 2:
            raise NetworkFormatError(
                f"variable {var.name!r} needs at least 2 states"
            )
    dag = build_dag([v.name for v in variables], edges)
    cpts = []
    for var in variables:
        if var.name not in cpt_docs:
            raise NetworkFormatError(f"missing cpt for variable {var.name!r}")
        entry = cpt_docs[var.name]
        cpt = Cpt(var.name, tuple(entry["parents"]), entry["rows"])
        rows = cpt.rows
        if rows.shape[1] == var.arity:
            sums = rows.sum(axis=1)
            if np.all(np.abs(sums - 1.0) <= ROW_SUM_TOL):
                cpt = Cpt(var.name, cpt.parents, rows / sums[:, None])
        cpts.append(cpt)
    network = Network(dag, variables, cpts)
    report = validate_network(network)
    if report:
        raise NetworkFormatError("; ".join(report))
    return network


def load_network(path: str | Path) -> Network:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"{path}: {exc}") from exc
    return network_from_json_dict(doc)


def save_network(network: Network, path: str | Path) -> None:
    doc = network_to_json_dict(network)
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_dataset(path: str | Path, variables: Sequence[Variable] | None = None) -> Dataset:
    """Read a CSV of state names, against declared or inferred variables."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetFormatError(f"{path}: missing header row") from None
        body = [row for row in reader if row]
    if len(set(header)) != len(header):
        raise DatasetFormatError(f"{path}: duplicate column names")
    for i, row in enumerate(body):
        if len(row) != len(header):
            raise DatasetFormatError(
                f"{path}: row {i + 1} has {len(row)} cells, expected {len(header)}"
            )
    if variables is not None:
        by_name = {v.name: v for v in variables}
        missing = [name for name in header if name not in by_name]
        if missing:
            raise DatasetFormatError(f"{path}: unknown columns {missing!r}")
        ordered = [by_name[name] for name in header]
    else:
        ordered = []
        for j, name in enumerate(header):
            states = sorted({row[j] for row in body})
            if len(states) < 2:
                raise DatasetFormatError(
                    f"{path}: column {name!r} needs at least 2 distinct states "
                    "to infer a variable"
                )
            ordered.append(Variable(name, tuple(states)))
    index_maps = [
        {state: k for k, state in enumerate(var.states)} for var in ordered
    ]
    rows = np.empty((len(body), len(header)), dtype=np.int64)
    for i, row in enumerate(body):
        for j, cell in enumerate(row):
            try:
                rows[i, j] = index_maps[j][cell]
            except KeyError:
                raise DatasetFormatError(
                    f"{path}: unknown state {cell!r} for variable "
                    f"{ordered[j].name!r} in row {i + 1}"
                ) from None
    return Dataset(tuple(ordered), rows)


def save_dataset(dataset: Dataset, path: str | Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(dataset.names)
        for row in dataset.rows:
            writer.writerow([dataset.variables[j].states[v] for j, v in enumerate(row)])
