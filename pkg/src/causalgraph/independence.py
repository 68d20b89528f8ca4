"""Conditional independence: exact table checks, the G-test, and the
graph-vs-distribution checkers.

Two interchangeable oracles answer I(x, y | s) queries:

* ExactCiOracle reads a full joint table and declares independence when the
  conditional factorization holds within a tolerance in every conditioning
  stratum of nonnegligible mass.
* GTestCiOracle runs a stratified G-test (likelihood-ratio chi-square)
  against observed rows.

``check_markov`` verifies that every variable is independent of its
nondescendants given its parents; ``check_faithfulness`` hunts for
independencies the graph does not entail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import log
from typing import Iterable, Protocol

import numpy as np

from .chisquare import chi2_upper_tail
from .dag import d_separated, descendants
from .errors import (
    DegenerateStrataError,
    EmptyDatasetError,
    OverlappingSetsError,
    TooLargeError,
    VariableMismatchError,
)
from .network import Dataset, JointTable, Network, marginalize

__all__ = [
    "CiQuery",
    "CiDecision",
    "CiOracle",
    "ExactCiOracle",
    "GTestCiOracle",
    "exact_ci",
    "g_test_ci",
    "check_markov",
    "check_faithfulness",
    "EXACT_CI_TOL",
    "DEFAULT_ALPHA",
]

EXACT_CI_TOL = 1e-9
DEFAULT_ALPHA = 0.01
FAITHFULNESS_QUERY_CAP = 100_000


@dataclass(frozen=True)
class CiQuery:
    """One independence question: are x and y independent given s?"""

    x: str
    y: str
    s: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", frozenset(self.s))
        if self.x == self.y or self.x in self.s or self.y in self.s:
            raise OverlappingSetsError(
                f"query variables {self.x!r}, {self.y!r} must be distinct "
                f"and disjoint from {sorted(self.s)!r}"
            )


@dataclass(frozen=True)
class CiDecision:
    """An answered CiQuery with the evidence behind the verdict.

    For the exact oracle the test statistic is the largest factorization
    deviation found (0 when independent) and p_value is 1 or 0 by
    convention; for the G-test they are the G statistic and chi-square
    tail probability.
    """

    query: CiQuery
    independent: bool
    statistic: float
    dof: int
    p_value: float
    method: str

    def to_json_dict(self) -> dict:
        return {
            "x": self.query.x,
            "y": self.query.y,
            "s": sorted(self.query.s),
            "independent": self.independent,
            "statistic": self.statistic,
            "dof": self.dof,
            "p_value": self.p_value,
            "method": self.method,
        }


class CiOracle(Protocol):
    """Deterministic answerer of CiQuery objects over a fixed variable set."""

    @property
    def variables(self) -> tuple[str, ...]: ...

    def query(self, q: CiQuery) -> CiDecision: ...


def exact_ci(joint: JointTable, q: CiQuery, tol: float = EXACT_CI_TOL) -> CiDecision:
    """Decide I(x, y | s) directly from a joint table.

    Independent iff in every s-stratum of mass above ``tol`` the
    conditional satisfies |P(x,y|s) - P(x|s)P(y|s)| <= tol for all states.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    needed = {q.x, q.y} | q.s
    sub = marginalize(joint, needed)
    ax_x = sub.axis_of(q.x)
    ax_y = sub.axis_of(q.y)
    arr = np.moveaxis(sub.probs, (ax_x, ax_y), (0, 1))
    nx, ny = arr.shape[0], arr.shape[1]
    arr = arr.reshape(nx, ny, -1)
    worst = 0.0
    for k in range(arr.shape[2]):
        cell = arr[:, :, k]
        mass = float(cell.sum())
        if mass <= tol:
            continue
        pxy = cell / mass
        px = pxy.sum(axis=1)
        py = pxy.sum(axis=0)
        deviation = float(np.abs(pxy - np.outer(px, py)).max())
        worst = max(worst, deviation)
    independent = worst <= tol
    return CiDecision(
        query=q,
        independent=independent,
        statistic=0.0 if independent else worst,
        dof=0,
        p_value=1.0 if independent else 0.0,
        method="exact",
    )


def g_test_ci(data: Dataset, q: CiQuery, alpha: float = DEFAULT_ALPHA) -> CiDecision:
    """Stratified G-test of I(x, y | s) against observed rows.

    G = 2 * sum O ln(O/E) over the (x, y) cells of every populated
    s-stratum, expectations from the stratum margins; zero-count cells
    contribute nothing.  Degrees of freedom accumulate
    (arity_x - 1) * (arity_y - 1) per populated stratum and empty strata
    are skipped entirely.  Independent iff the chi-square tail probability
    exceeds ``alpha``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly between 0 and 1")
    if len(data) == 0:
        raise EmptyDatasetError("cannot test independence on zero rows")
    x_col = data.column(q.x)
    y_col = data.column(q.y)
    s_names = sorted(q.s, key=data.names.index)
    nx = next(v.arity for v in data.variables if v.name == q.x)
    ny = next(v.arity for v in data.variables if v.name == q.y)

    stratum = np.zeros(len(data), dtype=np.int64)
    n_strata = 1
    for name in s_names:
        arity = next(v.arity for v in data.variables if v.name == name)
        stratum = stratum * arity + data.column(name)
        n_strata *= arity

    g = 0.0
    dof = 0
    populated = 0
    for sid in range(n_strata):
        mask = stratum == sid
        count = int(mask.sum())
        if count == 0:
            continue
        populated += 1
        table = np.zeros((nx, ny), dtype=np.int64)
        np.add.at(table, (x_col[mask], y_col[mask]), 1)
        row_margin = table.sum(axis=1)
        col_margin = table.sum(axis=0)
        for i in range(nx):
            for j in range(ny):
                observed = table[i, j]
                if observed == 0:
                    continue
                expected = row_margin[i] * col_margin[j] / count
                g += 2.0 * observed * log(observed / expected)
        dof += (nx - 1) * (ny - 1)
    if populated == 0:
        raise DegenerateStrataError("every conditioning stratum is empty")
    g = max(g, 0.0)
    p_value = chi2_upper_tail(g, dof)
    return CiDecision(
        query=q,
        independent=p_value > alpha,
        statistic=g,
        dof=dof,
        p_value=p_value,
        method="g_test",
    )


class ExactCiOracle:
    """CiOracle backed by a joint table and ``exact_ci``."""

    def __init__(self, joint: JointTable, tol: float = EXACT_CI_TOL):
        self.joint = joint
        self.tol = tol

    @property
    def variables(self) -> tuple[str, ...]:
        return self.joint.names

    def query(self, q: CiQuery) -> CiDecision:
        return exact_ci(self.joint, q, self.tol)


class GTestCiOracle:
    """CiOracle backed by observed rows and ``g_test_ci``."""

    def __init__(self, data: Dataset, alpha: float = DEFAULT_ALPHA):
        self.data = data
        self.alpha = alpha

    @property
    def variables(self) -> tuple[str, ...]:
        return self.data.names

    def query(self, q: CiQuery) -> CiDecision:
        return g_test_ci(self.data, q, self.alpha)


def _require_same_variables(network: Network, joint: JointTable) -> None:
    if set(joint.names) != set(network.names):
        raise VariableMismatchError(
            f"joint variables {sorted(joint.names)!r} do not match "
            f"network variables {sorted(network.names)!r}"
        )


def check_markov(
    network: Network, joint: JointTable, tol: float = EXACT_CI_TOL
) -> list[CiDecision]:
    """Violations of: each variable independent of its nondescendants given parents.

    Returns the failing decisions; an empty list means the joint satisfies
    the condition for the network's graph at this tolerance.
    """
    _require_same_variables(network, joint)
    violations: list[CiDecision] = []
    for name in network.names:
        parents = set(network.dag.parents_of(name))
        below = descendants(network.dag, name)
        for other in network.names:
            if other == name or other in parents or other in below:
                continue
            decision = exact_ci(joint, CiQuery(name, other, frozenset(parents)), tol)
            if not decision.independent:
                violations.append(decision)
    return violations


def check_faithfulness(
    network: Network,
    joint: JointTable,
    tol: float = EXACT_CI_TOL,
    max_queries: int = FAITHFULNESS_QUERY_CAP,
) -> list[CiDecision]:
    """Independencies in the joint that d-separation does not entail.

    Enumerates every (x, y, s) triple over the variable set (s ranges over
    all subsets of the remaining variables, by size then index order) and
    reports each where ``exact_ci`` finds independence but the graph does
    not.  Raises TooLargeError when the triple count exceeds ``max_queries``.
    """
    _require_same_variables(network, joint)
    names = network.names
    n = len(names)
    if n >= 2:
        total = (n * (n - 1) // 2) * (1 << (n - 2))
        if total > max_queries:
            raise TooLargeError(
                f"{total} conditional-independence triples exceed cap {max_queries}"
            )
    violations: list[CiDecision] = []
    for xi, yi in combinations(range(n), 2):
        rest = [names[k] for k in range(n) if k not in (xi, yi)]
        for size in range(len(rest) + 1):
            for s in combinations(rest, size):
                decision = exact_ci(
                    joint, CiQuery(names[xi], names[yi], frozenset(s)), tol
                )
                if decision.independent and not d_separated(
                    network.dag, names[xi], names[yi], s
                ):
                    violations.append(decision)
    return violations
