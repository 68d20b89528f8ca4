"""Exact posterior queries by sum-product variable elimination.

The engine works for any network (multiply connected included).  Evidence
is absorbed by slicing factor axes before elimination, so the final
normalizing constant is exactly the probability of the evidence; evidence
mass below ZERO_EVIDENCE raises ImpossibleEvidenceError instead of
producing a 0/0 posterior.

The elimination order is the min-degree heuristic over the evolving
interaction graph, with ties broken by variable index, which makes query
results bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    ImpossibleEvidenceError,
    UnknownVariableError,
    ZeroEvidenceProbabilityError,
)
from .network import Network, ZERO_EVIDENCE

__all__ = [
    "Posterior",
    "DiscountingReport",
    "eliminate",
    "discounting_report",
    "normative_discounting",
]

Evidence = Mapping[str, int]


@dataclass(frozen=True)
class Posterior:
    """Distribution over one variable's states, normalized."""

    variable: str
    states: tuple[str, ...]
    probs: tuple[float, ...]

    def __getitem__(self, state_index: int) -> float:
        return self.probs[state_index]

    def to_json_dict(self) -> dict:
        return {
            "variable": self.variable,
            "states": list(self.states),
            "probs": list(self.probs),
        }


@dataclass(frozen=True)
class DiscountingReport:
    """How belief in one cause shifts as an effect and a rival cause appear."""

    cause: str
    alt_cause: str
    effect: str
    p_prior: float
    p_given_effect: float
    p_given_effect_and_alt: float

    def to_json_dict(self) -> dict:
        return {
            "cause": self.cause,
            "alt_cause": self.alt_cause,
            "effect": self.effect,
            "p_prior": self.p_prior,
            "p_given_effect": self.p_given_effect,
            "p_given_effect_and_alt": self.p_given_effect_and_alt,
        }


class _Factor:
    """A nonnegative table over a tuple of named variables."""

    __slots__ = ("vars", "table")

    def __init__(self, vars: tuple[str, ...], table: np.ndarray):
        self.vars = vars
        self.table = table

    def observe(self, name: str, state: int) -> "_Factor":
        axis = self.vars.index(name)
        return _Factor(
            self.vars[:axis] + self.vars[axis + 1 :],
            np.take(self.table, state, axis=axis),
        )

    def multiply(self, other: "_Factor") -> "_Factor":
        out_vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        left = self.table.reshape(self.table.shape + (1,) * (len(out_vars) - len(self.vars)))
        perm = sorted(range(len(other.vars)), key=lambda k: out_vars.index(other.vars[k]))
        moved = other.table.transpose(perm)
        shape = tuple(
            moved.shape[perm.index(other.vars.index(v))] if v in other.vars else 1
            for v in out_vars
        )
        return _Factor(out_vars, left * moved.reshape(shape))

    def sum_out(self, name: str) -> "_Factor":
        axis = self.vars.index(name)
        return _Factor(
            self.vars[:axis] + self.vars[axis + 1 :], self.table.sum(axis=axis)
        )


def _cpt_factor(network: Network, index: int) -> _Factor:
    cpt = network.cpts[index]
    scope = tuple(cpt.parents) + (network.names[index],)
    shape = tuple(network.variable(v).arity for v in scope)
    return _Factor(scope, cpt.rows.reshape(shape))


def _check_evidence(network: Network, evidence: Evidence) -> None:
    for name, state in evidence.items():
        var = network.variable(name)
        if not 0 <= state < var.arity:
            raise UnknownVariableError(
                f"state index {state} out of range for {name!r}"
            )


def _min_degree_order(
    scopes: list[frozenset[str]], hidden: set[str], index_of: Mapping[str, int]
) -> list[str]:
    scopes = [s for s in scopes if s]
    order: list[str] = []
    remaining = set(hidden)
    while remaining:
        neighbors = {v: set() for v in remaining}
        for scope in scopes:
            for v in scope:
                if v in neighbors:
                    neighbors[v].update(scope - {v})
        chosen = min(remaining, key=lambda v: (len(neighbors[v]), index_of[v]))
        order.append(chosen)
        remaining.discard(chosen)
        merged = frozenset().union(*[s for s in scopes if chosen in s]) - {chosen}
        scopes = [s for s in scopes if chosen not in s]
        if merged:
            scopes.append(merged)
    return order


def eliminate(network: Network, query: str, evidence: Evidence | None = None) -> Posterior:
    """Exact P(query | evidence) by variable elimination."""
    evidence = dict(evidence or {})
    target = network.variable(query)
    _check_evidence(network, evidence)
    if query in evidence:
        raise ValueError(f"query variable {query!r} is part of the evidence")

    factors = [_cpt_factor(network, i) for i in range(len(network.names))]
    for name, state in evidence.items():
        factors = [
            f.observe(name, state) if name in f.vars else f for f in factors
        ]

    hidden = set(network.names) - set(evidence) - {query}
    index_of = {name: i for i, name in enumerate(network.names)}
    order = _min_degree_order([frozenset(f.vars) for f in factors], hidden, index_of)
    for name in order:
        related = [f for f in factors if name in f.vars]
        factors = [f for f in factors if name not in f.vars]
        product = related[0]
        for f in related[1:]:
            product = product.multiply(f)
        factors.append(product.sum_out(name))

    result = _Factor((), np.ones(()))
    for f in factors:
        result = result.multiply(f)
    table = result.table.reshape(target.arity)
    z = float(table.sum())
    if z < ZERO_EVIDENCE:
        raise ImpossibleEvidenceError(
            f"evidence {evidence!r} has probability {z!r}"
        )
    probs = np.asarray(table, dtype=float) / z
    return Posterior(query, target.states, tuple(float(p) for p in probs))


def discounting_report(
    network: Network,
    cause: str,
    alt_cause: str,
    effect: str,
    cause_state: int = 1,
    alt_state: int = 1,
    effect_state: int = 1,
) -> DiscountingReport:
    """Belief in ``cause`` before evidence, given the effect, and given the
    effect plus the rival cause.

    State indices select the "present" state of each variable; index 1
    (the second state) is the conventional default.
    """
    if len({cause, alt_cause, effect}) != 3:
        raise ValueError("cause, alt_cause and effect must be three distinct variables")
    p_prior = eliminate(network, cause, {})[cause_state]
    p_given_effect = eliminate(network, cause, {effect: effect_state})[cause_state]
    p_given_both = eliminate(
        network, cause, {effect: effect_state, alt_cause: alt_state}
    )[cause_state]
    return DiscountingReport(
        cause=cause,
        alt_cause=alt_cause,
        effect=effect,
        p_prior=p_prior,
        p_given_effect=p_given_effect,
        p_given_effect_and_alt=p_given_both,
    )


def normative_discounting(
    p_c1: float, p_c2: float, effect_table: Sequence[float]
) -> tuple[float, float]:
    """Closed-form two-cause discounting by Bayes' rule.

    Model: two marginally independent binary causes feeding one binary
    effect.  ``effect_table`` gives P(effect present | c1, c2) in the order
    (c1 and c2, c1 only, c2 only, neither).  Returns (P(c1 | effect),
    P(c1 | effect and c2)), the yardstick a judged probability pair is
    compared against.
    """
    t11, t10, t01, t00 = (float(t) for t in effect_table)
    for value in (p_c1, p_c2, t11, t10, t01, t00):
        if not 0.0 <= value <= 1.0:
            raise ValueError("probabilities must lie in [0, 1]")
    q1 = 1.0 - p_c1
    q2 = 1.0 - p_c2
    p_effect = p_c1 * (p_c2 * t11 + q2 * t10) + q1 * (p_c2 * t01 + q2 * t00)
    if p_effect < ZERO_EVIDENCE:
        raise ZeroEvidenceProbabilityError(
            f"effect has probability {p_effect!r} under these inputs"
        )
    p_c1_given_e = p_c1 * (p_c2 * t11 + q2 * t10) / p_effect
    p_effect_and_c2 = p_c2 * (p_c1 * t11 + q1 * t01)
    if p_effect_and_c2 < ZERO_EVIDENCE:
        raise ZeroEvidenceProbabilityError(
            f"effect together with the second cause has probability "
            f"{p_effect_and_c2!r} under these inputs"
        )
    p_c1_given_e_c2 = p_c1 * t11 / (p_c1 * t11 + q1 * t01)
    return p_c1_given_e, p_c1_given_e_c2
