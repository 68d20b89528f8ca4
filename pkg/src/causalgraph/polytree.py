"""Belief propagation on polytrees: pi/lambda messages along the edges.

Each node fuses a causal (pi) contribution arriving from its parents with
a diagnostic (lambda) contribution arriving from its children; evidence
enters as an indicator on the observed node.  On a polytree one inward
sweep to a root and one outward sweep back suffice: every edge carries one
message in each direction, after which each node's fused belief is its
exact posterior.

Messages are kept unnormalized so the belief mass at a component's root is
the probability of that component's evidence; the product over components
feeds the same impossible-evidence threshold the elimination engine uses.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .dag import is_polytree
from .errors import ImpossibleEvidenceError, NotAPolytreeError
from .inference import Evidence, Posterior, _check_evidence
from .network import Network, ZERO_EVIDENCE

__all__ = ["propagate_polytree"]


class _State:
    """Per-call working storage for one propagation."""

    def __init__(self, network: Network, evidence: Evidence):
        dag = network.dag
        n = len(dag)
        self.network = network
        self.parents = [list(dag.parent_indices(i)) for i in range(n)]
        self.children = [list(dag.child_indices(i)) for i in range(n)]
        self.cpt_nd = []
        for i in range(n):
            cpt = network.cpts[i]
            shape = tuple(network.variable(p).arity for p in cpt.parents) + (
                network.variables[i].arity,
            )
            parent_idx = [dag.index_of(p) for p in cpt.parents]
            nd = cpt.rows.reshape(shape)
            # realign CPT axes to dag-index parent order used below
            order = sorted(range(len(parent_idx)), key=lambda k: parent_idx[k])
            self.cpt_nd.append(nd.transpose(tuple(order) + (len(parent_idx),)))
        self.indicator = []
        for i, var in enumerate(network.variables):
            vec = np.ones(var.arity)
            if var.name in evidence:
                vec = np.zeros(var.arity)
                vec[evidence[var.name]] = 1.0
            self.indicator.append(vec)
        # msg[(i, j)] is the message i sends its skeleton neighbor j; on the
        # edge between a parent p and child c it is a vector over p's states
        # in both directions.
        self.msg: dict[tuple[int, int], np.ndarray] = {}

    def causal_support(self, i: int) -> np.ndarray:
        """CPT of node i contracted with the messages from all its parents."""
        arr = self.cpt_nd[i]
        for axis in range(len(self.parents[i]) - 1, -1, -1):
            arr = np.tensordot(self.msg[(self.parents[i][axis], i)], arr, axes=(0, axis))
        return arr

    def diagnostic_support(self, i: int) -> np.ndarray:
        """Evidence indicator of node i times the messages from all its children."""
        vec = self.indicator[i].copy()
        for child in self.children[i]:
            vec *= self.msg[(child, i)]
        return vec

    def send(self, i: int, j: int) -> None:
        if j in self.children[i]:
            # message to a child: fused belief of i with j's report left out
            vec = self.indicator[i] * self.causal_support(i)
            for child in self.children[i]:
                if child != j:
                    vec = vec * self.msg[(child, i)]
            self.msg[(i, j)] = vec
        else:
            # message to the parent j: contract i's CPT with the other
            # parents' messages and i's own diagnostic support
            arr = self.cpt_nd[i] * self.diagnostic_support(i)
            arr = arr.sum(axis=-1)
            for axis in range(len(self.parents[i]) - 1, -1, -1):
                parent = self.parents[i][axis]
                if parent == j:
                    continue
                arr = np.tensordot(self.msg[(parent, i)], arr, axes=(0, axis))
            self.msg[(i, j)] = arr

    def belief(self, i: int) -> np.ndarray:
        return self.diagnostic_support(i) * self.causal_support(i)


def propagate_polytree(network: Network, evidence: Evidence | None = None) -> list[Posterior]:
    """Exact posteriors for every variable of a polytree network.

    Returns one Posterior per variable in network order.  Raises
    NotAPolytreeError when the skeleton has an undirected cycle and
    ImpossibleEvidenceError when the evidence probability falls below the
    shared zero threshold.
    """
    if not is_polytree(network.dag):
        raise NotAPolytreeError("the network skeleton has an undirected cycle")
    evidence = dict(evidence or {})
    _check_evidence(network, evidence)
    state = _State(network, evidence)

    n = len(network.dag)
    neighbors = [
        sorted(set(state.parents[i]) | set(state.children[i])) for i in range(n)
    ]
    seen = [False] * n
    evidence_mass = 1.0
    for root in range(n):
        if seen[root]:
            continue
        # BFS spanning order of this skeleton component
        order = [root]
        tree_parent: dict[int, int] = {root: -1}
        seen[root] = True
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for nb in neighbors[node]:
                if not seen[nb]:
                    seen[nb] = True
                    tree_parent[nb] = node
                    order.append(nb)
                    queue.append(nb)
        for node in reversed(order):
            if tree_parent[node] != -1:
                state.send(node, tree_parent[node])
        for node in order:
            for nb in neighbors[node]:
                if nb != tree_parent[node]:
                    state.send(node, nb)
        evidence_mass *= float(state.belief(root).sum())
    if evidence_mass < ZERO_EVIDENCE:
        raise ImpossibleEvidenceError(
            f"evidence {evidence!r} has probability {evidence_mass!r}"
        )

    posteriors: list[Posterior] = []
    for i, var in enumerate(network.variables):
        belief = state.belief(i)
        posteriors.append(
            Posterior(var.name, var.states, tuple(float(p) for p in belief / belief.sum()))
        )
    return posteriors
