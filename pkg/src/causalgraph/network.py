"""Discrete Bayesian networks: a Dag plus one conditional probability table per node.

Layout conventions used everywhere in this package:

* A CPT is a 2-D array with one row per parent configuration and one column
  per child state.  Rows are ordered row-major over the parent state
  indices with the FIRST parent varying slowest.
* A joint table stores its probabilities as an n-D array with one axis per
  variable, in network variable order; the flat C-order view is therefore
  row-major with the first variable slowest, matching the CPT convention.

Networks are containers, not validators: structurally odd CPTs (wrong row
sums, parent lists that disagree with the graph) are representable so that
``validate_network`` can report them.  Numeric operations assume a network
that validates cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .dag import Dag, topological_order
from .errors import (
    ImpossibleEvidenceError,
    IncompleteAssignmentError,
    TooLargeError,
    UnknownVariableError,
    VariableMismatchError,
)

__all__ = [
    "Variable",
    "Cpt",
    "Network",
    "JointTable",
    "Dataset",
    "validate_network",
    "joint_probability",
    "enumerate_joint",
    "forward_sample",
    "marginalize",
    "condition",
    "ROW_SUM_TOL",
    "JOINT_CELL_CAP",
    "ZERO_EVIDENCE",
]

ROW_SUM_TOL = 1e-9
JOINT_CELL_CAP = 1 << 20
ZERO_EVIDENCE = 1e-12


@dataclass(frozen=True)
class Variable:
    """A named discrete variable with an ordered tuple of state names."""

    name: str
    states: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        if len(set(self.states)) != len(self.states):
            raise VariableMismatchError(
                f"variable {self.name!r} has duplicate state names"
            )

    @property
    def arity(self) -> int:
        return len(self.states)

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise UnknownVariableError(
                f"variable {self.name!r} has no state {state!r}"
            ) from None


class Cpt:
    """Conditional probability table for one child variable.

    ``rows`` has one row per parent configuration (first parent slowest)
    and one column per child state.  The constructor only coerces shapes to
    a float matrix; probabilistic invariants are validate_network's job.
    """

    __slots__ = ("child", "parents", "rows")

    def __init__(
        self, child: str, parents: Sequence[str], rows: Iterable[Iterable[float]]
    ):
        self.child = child
        self.parents = tuple(parents)
        self.rows = np.atleast_2d(np.asarray(rows, dtype=float))

    def __repr__(self) -> str:
        return f"Cpt({self.child!r}, parents={list(self.parents)!r}, rows={self.rows.tolist()!r})"


class Network:
    """A Dag, a Variable per node, and a Cpt per node."""

    __slots__ = ("dag", "variables", "cpts", "_by_name")

    def __init__(self, dag: Dag, variables: Sequence[Variable], cpts: Sequence[Cpt]):
        self.dag = dag
        self.variables: tuple[Variable, ...] = tuple(variables)
        names = tuple(v.name for v in self.variables)
        if names != dag.names:
            raise VariableMismatchError(
                f"variable list {names!r} does not match dag nodes {dag.names!r}"
            )
        cpt_list = tuple(cpts)
        by_child = {cpt.child: cpt for cpt in cpt_list}
        if set(by_child) != set(names) or len(by_child) != len(cpt_list):
            raise VariableMismatchError("need exactly one cpt per variable")
        self.cpts: tuple[Cpt, ...] = tuple(by_child[name] for name in names)
        self._by_name = {v.name: v for v in self.variables}

    @property
    def names(self) -> tuple[str, ...]:
        return self.dag.names

    def variable(self, name: str) -> Variable:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def cpt(self, name: str) -> Cpt:
        return self.cpts[self.dag.index_of(name)]

    def arities(self) -> tuple[int, ...]:
        return tuple(v.arity for v in self.variables)


@dataclass(frozen=True)
class JointTable:
    """Explicit joint distribution: one n-D probability array over all variables."""

    variables: tuple[Variable, ...]
    probs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        expected = tuple(v.arity for v in self.variables)
        if self.probs.shape != expected:
            raise VariableMismatchError(
                f"joint shape {self.probs.shape} does not match arities {expected}"
            )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def axis_of(self, name: str) -> int:
        for i, v in enumerate(self.variables):
            if v.name == name:
                return i
        raise UnknownVariableError(f"unknown variable {name!r}")

    def lookup(self, assignment: Mapping[str, int]) -> float:
        idx = tuple(assignment[v.name] for v in self.variables)
        return float(self.probs[idx])


@dataclass(frozen=True)
class Dataset:
    """Complete discrete observations: one state index per variable per row."""

    variables: tuple[Variable, ...]
    rows: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        rows = np.asarray(self.rows, dtype=np.int64)
        if rows.ndim != 2 or rows.shape[1] != len(self.variables):
            raise VariableMismatchError(
                f"rows shape {rows.shape} does not match {len(self.variables)} variables"
            )
        for j, var in enumerate(self.variables):
            col = rows[:, j]
            if col.size and (col.min() < 0 or col.max() >= var.arity):
                raise VariableMismatchError(
                    f"column {var.name!r} holds a state index outside 0..{var.arity - 1}"
                )
        object.__setattr__(self, "rows", rows)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def column(self, name: str) -> np.ndarray:
        for j, v in enumerate(self.variables):
            if v.name == name:
                return self.rows[:, j]
        raise UnknownVariableError(f"unknown variable {name!r}")

    def __len__(self) -> int:
        return int(self.rows.shape[0])


def validate_network(network: Network) -> list[str]:
    """Check every CPT invariant; an empty report means the network is valid.

    Reported problems: parent lists that disagree with the dag, row counts
    that disagree with the parent arities, row widths that disagree with
    the child arity, entries outside [0, 1], and row sums outside
    1 +/- ROW_SUM_TOL (the message names the child, row index and sum).
    """
    report: list[str] = []
    for var, cpt in zip(network.variables, network.cpts):
        dag_parents = set(network.dag.parents_of(var.name))
        if len(set(cpt.parents)) != len(cpt.parents) or set(cpt.parents) != dag_parents:
            report.append(
                f"cpt {var.name!r}: parents {list(cpt.parents)!r} do not match "
                f"dag parents {sorted(dag_parents)!r}"
            )
            continue
        expected_rows = 1
        for parent in cpt.parents:
            expected_rows *= network.variable(parent).arity
        if cpt.rows.shape[0] != expected_rows:
            report.append(
                f"cpt {var.name!r}: {cpt.rows.shape[0]} rows, expected {expected_rows}"
            )
            continue
        if cpt.rows.shape[1] != var.arity:
            report.append(
                f"cpt {var.name!r}: rows have {cpt.rows.shape[1]} entries, "
                f"expected {var.arity}"
            )
            continue
        if np.any(cpt.rows < 0.0) or np.any(cpt.rows > 1.0):
            report.append(f"cpt {var.name!r}: entries outside [0, 1]")
        for i, row_sum in enumerate(cpt.rows.sum(axis=1)):
            if abs(row_sum - 1.0) > ROW_SUM_TOL:
                report.append(
                    f"cpt {var.name!r}: row {i} sums to {row_sum!r}, "
                    f"must be 1 within {ROW_SUM_TOL:g}"
                )
    return report


def _cpt_row_index(network: Network, cpt: Cpt, assignment: Mapping[str, int]) -> int:
    row = 0
    for parent in cpt.parents:
        row = row * network.variable(parent).arity + assignment[parent]
    return row


def joint_probability(network: Network, assignment: Mapping[str, int]) -> float:
    """Probability of one complete assignment: the product of CPT entries."""
    missing = [name for name in network.names if name not in assignment]
    if missing:
        raise IncompleteAssignmentError(
            f"assignment misses variables {missing!r}"
        )
    prob = 1.0
    for var, cpt in zip(network.variables, network.cpts):
        row = _cpt_row_index(network, cpt, assignment)
        prob *= float(cpt.rows[row, assignment[var.name]])
    return prob


def _aligned_cpt(network: Network, index: int) -> np.ndarray:
    """The node's CPT broadcast against the full joint shape."""
    cpt = network.cpts[index]
    scope = [network.dag.index_of(p) for p in cpt.parents] + [index]
    shaped = cpt.rows.reshape(
        tuple(network.variables[i].arity for i in scope[:-1])
        + (network.variables[index].arity,)
    )
    order = np.argsort(scope, kind="stable")
    shaped = shaped.transpose(tuple(order))
    sorted_scope = {scope[i] for i in order}
    view_shape = tuple(
        network.variables[axis].arity if axis in sorted_scope else 1
        for axis in range(len(network.variables))
    )
    return shaped.reshape(view_shape)


def enumerate_joint(network: Network, max_cells: int = JOINT_CELL_CAP) -> JointTable:
    """Brute-force the full joint distribution as one table.

    Refuses (TooLargeError) when the state space exceeds ``max_cells``.
    """
    cells = 1
    for arity in network.arities():
        cells *= arity
    if cells > max_cells:
        raise TooLargeError(
            f"joint table needs {cells} cells, cap is {max_cells}"
        )
    probs = np.ones(network.arities(), dtype=float)
    for index in range(len(network.variables)):
        probs = probs * _aligned_cpt(network, index)
    return JointTable(network.variables, probs)


def forward_sample(network: Network, seed: int, n: int) -> Dataset:
    """Draw ``n`` complete rows ancestrally, reproducibly for a given seed.

    Generator: numpy PCG64 seeded with ``seed``.  Draw protocol (this is
    the contract that makes datasets bit-reproducible): visit variables in
    ``topological_order``; for each variable draw the n uniforms for all
    rows in one ``random(n)`` call, then set the state to the smallest k
    with u < cumsum(row)[k], where row is the CPT row selected by the
    already-sampled parents (clipped to the last state index).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    columns: dict[str, np.ndarray] = {}
    for name in topological_order(network.dag):
        var = network.variable(name)
        cpt = network.cpt(name)
        row_index = np.zeros(n, dtype=np.int64)
        for parent in cpt.parents:
            row_index = row_index * network.variable(parent).arity + columns[parent]
        cdf = np.cumsum(cpt.rows, axis=1)[row_index]
        u = rng.random(n)
        states = (cdf <= u[:, None]).sum(axis=1)
        columns[name] = np.minimum(states, var.arity - 1)
    rows = np.column_stack([columns[v.name] for v in network.variables])
    return Dataset(network.variables, rows)


def marginalize(joint: JointTable, keep: Iterable[str]) -> JointTable:
    """Sum out every variable not in ``keep``; kept axes stay in joint order."""
    keep_set = set(keep)
    names = set(joint.names)
    unknown = keep_set - names
    if unknown:
        raise UnknownVariableError(f"unknown variables {sorted(unknown)!r}")
    drop_axes = tuple(
        i for i, v in enumerate(joint.variables) if v.name not in keep_set
    )
    kept_vars = tuple(v for v in joint.variables if v.name in keep_set)
    probs = joint.probs.sum(axis=drop_axes) if drop_axes else joint.probs.copy()
    return JointTable(kept_vars, np.asarray(probs))


def condition(joint: JointTable, evidence: Mapping[str, int]) -> JointTable:
    """Slice the observed axes out and renormalize the remainder.

    Raises ImpossibleEvidenceError when the evidence mass is below
    ZERO_EVIDENCE.  With empty evidence this is a normalized copy.
    """
    probs = joint.probs
    kept = list(joint.variables)
    for name, state in sorted(evidence.items(), key=lambda kv: joint.axis_of(kv[0])):
        axis = next(i for i, v in enumerate(kept) if v.name == name)
        var = kept.pop(axis)
        if not 0 <= state < var.arity:
            raise UnknownVariableError(
                f"state index {state} out of range for {name!r}"
            )
        probs = np.take(probs, state, axis=axis)
    mass = float(probs.sum())
    if mass < ZERO_EVIDENCE:
        raise ImpossibleEvidenceError(
            f"evidence {dict(evidence)!r} has probability {mass!r}"
        )
    return JointTable(tuple(kept), np.asarray(probs / mass))
