"""Directed acyclic graphs over named variables, plus d-separation.

A Dag is immutable after construction: acyclicity is checked once by
``build_dag`` and every later query may rely on it.  Variables are addressed
by name; each name also carries a dense index (its position in insertion
order) which is the tie-breaker wherever a deterministic linearization is
needed.

``d_separated`` uses the linear-time reachability formulation (a walk over
(node, travel-direction) states) rather than path enumeration; the
enumerate-all-paths version lives in the test suite as an oracle.
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Sequence

from .errors import (
    CycleError,
    DuplicateNameError,
    OverlappingSetsError,
    UnknownEndpointError,
    UnknownVariableError,
)

__all__ = [
    "Dag",
    "build_dag",
    "topological_order",
    "descendants",
    "d_separated",
    "is_polytree",
]


class Dag:
    """Immutable directed acyclic graph over named variables.

    Do not call directly unless the edge list is already known to be
    acyclic; ``build_dag`` is the validating constructor.
    """

    __slots__ = ("names", "edges", "_index", "_parents", "_children")

    def __init__(self, names: Sequence[str], edges: Iterable[tuple[int, int]]):
        self.names: tuple[str, ...] = tuple(names)
        self._index: dict[str, int] = {name: i for i, name in enumerate(self.names)}
        self.edges: frozenset[tuple[int, int]] = frozenset(edges)
        parents: list[list[int]] = [[] for _ in self.names]
        children: list[list[int]] = [[] for _ in self.names]
        for parent, child in self.edges:
            parents[child].append(parent)
            children[parent].append(child)
        self._parents = tuple(tuple(sorted(p)) for p in parents)
        self._children = tuple(tuple(sorted(c)) for c in children)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        edges = ", ".join(
            f"{self.names[p]}->{self.names[c]}" for p, c in sorted(self.edges)
        )
        return f"Dag({list(self.names)!r}, [{edges}])"

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def parent_indices(self, index: int) -> tuple[int, ...]:
        return self._parents[index]

    def child_indices(self, index: int) -> tuple[int, ...]:
        return self._children[index]

    def parents_of(self, name: str) -> tuple[str, ...]:
        return tuple(self.names[i] for i in self._parents[self.index_of(name)])

    def children_of(self, name: str) -> tuple[str, ...]:
        return tuple(self.names[i] for i in self._children[self.index_of(name)])


def build_dag(
    variable_names: Sequence[str], edges: Iterable[tuple[str, str]]
) -> Dag:
    """Validate names and edges and construct a Dag.

    Raises DuplicateNameError for repeated or empty names,
    UnknownEndpointError for an edge endpoint that was never declared, and
    CycleError (naming one offending cycle) if the edges are not acyclic.
    Self-edges count as cycles; duplicate edges collapse silently.
    """
    names = tuple(variable_names)
    seen: set[str] = set()
    for name in names:
        if not name:
            raise DuplicateNameError("variable names must be non-empty")
        if name in seen:
            raise DuplicateNameError(f"duplicate variable name {name!r}")
        seen.add(name)
    index = {name: i for i, name in enumerate(names)}
    edge_indices: set[tuple[int, int]] = set()
    for parent, child in edges:
        if parent not in index:
            raise UnknownEndpointError(f"unknown edge endpoint {parent!r}")
        if child not in index:
            raise UnknownEndpointError(f"unknown edge endpoint {child!r}")
        edge_indices.add((index[parent], index[child]))
    dag = Dag(names, edge_indices)
    cycle = _find_cycle(dag)
    if cycle is not None:
        raise CycleError("cycle detected: " + " -> ".join(dag.names[i] for i in cycle))
    return dag


def _find_cycle(dag: Dag) -> list[int] | None:
    """Return one directed cycle as a closed index path, or None."""
    in_deg = [len(dag.parent_indices(i)) for i in range(len(dag))]
    queue = deque(i for i in range(len(dag)) if in_deg[i] == 0)
    removed = 0
    while queue:
        node = queue.popleft()
        removed += 1
        for child in dag.child_indices(node):
            in_deg[child] -= 1
            if in_deg[child] == 0:
                queue.append(child)
    if removed == len(dag):
        return None
    # Walk parent links inside the remaining subgraph until a node repeats.
    remaining = {i for i in range(len(dag)) if in_deg[i] > 0}
    start = min(remaining)
    trail: list[int] = []
    position: dict[int, int] = {}
    current = start
    while current not in position:
        position[current] = len(trail)
        trail.append(current)
        current = next(p for p in dag.parent_indices(current) if p in remaining)
    loop = trail[position[current] :]
    return list(reversed(loop)) + [loop[-1]]


def topological_order(dag: Dag) -> list[str]:
    """Order variables so every edge goes forward; ties by variable index."""
    in_deg = [len(dag.parent_indices(i)) for i in range(len(dag))]
    ready = [i for i in range(len(dag)) if in_deg[i] == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        node = heapq.heappop(ready)
        order.append(dag.names[node])
        for child in dag.child_indices(node):
            in_deg[child] -= 1
            if in_deg[child] == 0:
                heapq.heappush(ready, child)
    return order


def descendants(dag: Dag, x: str) -> set[str]:
    """All variables reachable from ``x`` by a directed path, excluding ``x``."""
    start = dag.index_of(x)
    found: set[int] = set()
    stack = list(dag.child_indices(start))
    while stack:
        node = stack.pop()
        if node in found:
            continue
        found.add(node)
        stack.extend(dag.child_indices(node))
    return {dag.names[i] for i in found}


_UP, _DOWN = 0, 1


def d_separated(dag: Dag, x: str, y: str, s: Iterable[str] = ()) -> bool:
    """Decide whether ``x`` and ``y`` are d-separated given the set ``s``.

    True iff every undirected path between x and y is blocked: a
    non-collider node blocks when it is in s, a collider node blocks unless
    it or one of its descendants is in s.  Implemented as reachability over
    (node, direction) states, linear in the graph size.
    """
    xi = dag.index_of(x)
    yi = dag.index_of(y)
    si = frozenset(dag.index_of(name) for name in s)
    if xi == yi or xi in si or yi in si:
        raise OverlappingSetsError(
            "x and y must be distinct and disjoint from the conditioning set"
        )

    # Ancestors of s (inclusive): colliders open iff they are in this set.
    anc = set(si)
    stack = list(si)
    while stack:
        node = stack.pop()
        for parent in dag.parent_indices(node):
            if parent not in anc:
                anc.add(parent)
                stack.append(parent)

    visited: set[tuple[int, int]] = set()
    queue: deque[tuple[int, int]] = deque([(xi, _UP)])
    while queue:
        node, direction = queue.popleft()
        if (node, direction) in visited:
            continue
        visited.add((node, direction))
        if node == yi:
            return False
        if direction == _UP:
            if node not in si:
                for parent in dag.parent_indices(node):
                    queue.append((parent, _UP))
                for child in dag.child_indices(node):
                    queue.append((child, _DOWN))
        else:
            if node not in si:
                for child in dag.child_indices(node):
                    queue.append((child, _DOWN))
            if node in anc:
                for parent in dag.parent_indices(node):
                    queue.append((parent, _UP))
    return True


def is_polytree(dag: Dag) -> bool:
    """True iff the undirected skeleton is acyclic (forests count)."""
    parent = list(range(len(dag)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in dag.edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True
