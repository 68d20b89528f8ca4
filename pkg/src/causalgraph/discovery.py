"""Learning causal-influence links from a time ordering and a CI oracle.

For every ordered pair (X, Y) with X earlier than Y, the learner hunts for
a witness: a variable Z and a conditioning set S, all strictly earlier
than X, such that Z and Y are dependent given S but become independent
once X joins the conditioning set.  Such a witness licenses the link
X -> Y, read as "X has a causal influence on Y" -- a directed path in any
graph whose independence structure generated the oracle's answers, not
necessarily a single edge.

The search is deterministic: Z ascends by time position and S is explored
by size then lexicographic position order; the first witness found is
recorded and the pair's search stops.  Variables with no earlier neighbor
(in particular the temporally first one) can never anchor a link, so
missing links are expected; found links are what the soundness check
guards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .dag import Dag, descendants
from .errors import UnknownVariableError, VariableMismatchError
from .independence import CiOracle, CiQuery

__all__ = ["CausalLink", "DiscoveryResult", "algorithm_i", "soundness_check"]

DEFAULT_MAX_COND_SIZE = 2


@dataclass(frozen=True)
class CausalLink:
    """A learned influence link plus the witness that licensed it."""

    source: str
    target: str
    witness_z: str
    witness_s: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "witness_s", frozenset(self.witness_s))

    def to_json_dict(self) -> dict:
        return {
            "from": self.source,
            "to": self.target,
            "witness_z": self.witness_z,
            "witness_s": sorted(self.witness_s),
        }


@dataclass(frozen=True)
class DiscoveryResult:
    """All links found for one (oracle, order, budget) run."""

    links: tuple[CausalLink, ...]
    queries_issued: int
    max_cond_size_used: int

    def to_json_dict(self) -> dict:
        return {
            "links": [link.to_json_dict() for link in self.links],
            "queries_issued": self.queries_issued,
            "max_cond_size_used": self.max_cond_size_used,
        }


def algorithm_i(
    oracle: CiOracle,
    order: Sequence[str],
    max_cond_size: int = DEFAULT_MAX_COND_SIZE,
) -> DiscoveryResult:
    """Learn influence links over a time ordering, one oracle query at a time.

    ``order`` lists the oracle's variables earliest first and must be a
    permutation of them.  ``max_cond_size`` caps |S| in the witness search.
    """
    if max_cond_size < 0:
        raise ValueError("max_cond_size must be >= 0")
    order = list(order)
    if len(set(order)) != len(order) or set(order) != set(oracle.variables):
        raise VariableMismatchError(
            f"order {order!r} is not a permutation of the oracle variables "
            f"{sorted(oracle.variables)!r}"
        )

    links: list[CausalLink] = []
    queries = 0
    for xi, x in enumerate(order):
        earlier = order[:xi]
        for y in order[xi + 1 :]:
            witness = None
            for z in earlier:
                rest = [v for v in earlier if v != z]
                for size in range(min(max_cond_size, len(rest)) + 1):
                    for s in combinations(rest, size):
                        dependent = oracle.query(CiQuery(z, y, frozenset(s)))
                        queries += 1
                        if dependent.independent:
                            continue
                        screened = oracle.query(CiQuery(z, y, frozenset(s) | {x}))
                        queries += 1
                        if screened.independent:
                            witness = (z, frozenset(s))
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                links.append(CausalLink(x, y, witness[0], witness[1]))
    return DiscoveryResult(tuple(links), queries, max_cond_size)


def soundness_check(result: DiscoveryResult, truth: Dag) -> list[CausalLink]:
    """Links in ``result`` with no directed path in the true graph.

    An empty list certifies the run: every learned link corresponds to a
    directed path source -> ... -> target in ``truth``.
    """
    for link in result.links:
        for name in (link.source, link.target):
            if name not in truth:
                raise UnknownVariableError(f"unknown variable {name!r}")
    return [
        link
        for link in result.links
        if link.target not in descendants(truth, link.source)
    ]
