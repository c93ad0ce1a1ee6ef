"""Weighted management network and minimum-cost path queries.

The network is an undirected graph of managed nodes. Each link carries a
dimensionless cost coefficient; the cost of moving management traffic
between two nodes is the smallest sum of coefficients over any connecting
path. Measured pair costs can be pinned directly with an override table,
which takes precedence over path search.
"""

from __future__ import annotations

import heapq
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (
    DuplicateLink,
    DuplicateNode,
    NegativeCoeff,
    SelfLink,
    Unreachable,
    UnknownNode,
)

__all__ = ["NodeId", "NumberLike", "Network"]

NodeId = int

# Anything fractions.Fraction accepts. Strings and Decimals keep decimal
# literals exact; floats are taken at their binary value.
NumberLike = Union[int, float, str, Decimal, Fraction]

LinkSpec = tuple[NodeId, NodeId, NumberLike]
OverrideSpec = Union[
    Mapping[tuple[NodeId, NodeId], NumberLike],
    Iterable[tuple[NodeId, NodeId, NumberLike]],
]


def _pair(a: NodeId, b: NodeId) -> tuple[NodeId, NodeId]:
    return (a, b) if a <= b else (b, a)


def _coeff(value: NumberLike, context: str) -> Fraction:
    try:
        coeff = Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise TypeError(f"{context}: not a number: {value!r}") from exc
    if coeff < 0:
        raise NegativeCoeff(f"{context}: {value!r} is negative")
    return coeff


def _check_node_id(node: object) -> NodeId:
    if isinstance(node, bool) or not isinstance(node, int):
        raise TypeError(f"node id must be an int, got {node!r}")
    if node < 1:
        raise ValueError(f"node id must be positive, got {node}")
    return node


class Network:
    """Immutable managed network.

    ``add_node`` and ``add_link`` return a new ``Network`` so that
    simulation snapshots can hold onto earlier states cheaply. Pair-cost
    overrides may mention nodes that have not joined yet; they only take
    effect once both endpoints exist.
    """

    __slots__ = ("_nodes", "_links", "_override", "_adjacency")

    def __init__(
        self,
        nodes: Iterable[NodeId] = (),
        links: Iterable[LinkSpec] = (),
        k_override: OverrideSpec | None = None,
    ) -> None:
        node_set: set[NodeId] = set()
        for node in nodes:
            _check_node_id(node)
            if node in node_set:
                raise DuplicateNode(f"node {node} listed twice")
            node_set.add(node)

        link_map: dict[tuple[NodeId, NodeId], Fraction] = {}
        for a, b, value in links:
            _check_node_id(a)
            _check_node_id(b)
            if a not in node_set:
                raise UnknownNode(f"link endpoint {a} is not a node")
            if b not in node_set:
                raise UnknownNode(f"link endpoint {b} is not a node")
            if a == b:
                raise SelfLink(f"link {a}-{b} joins a node to itself")
            key = _pair(a, b)
            if key in link_map:
                raise DuplicateLink(f"link {key[0]}-{key[1]} listed twice")
            link_map[key] = _coeff(value, f"link {a}-{b}")

        override_map: dict[tuple[NodeId, NodeId], Fraction] = {}
        if k_override is not None:
            items: Iterable[tuple[NodeId, NodeId, NumberLike]]
            if isinstance(k_override, Mapping):
                items = ((a, b, v) for (a, b), v in k_override.items())
            else:
                items = k_override
            for a, b, value in items:
                _check_node_id(a)
                _check_node_id(b)
                key = _pair(a, b)
                cost = _coeff(value, f"k_override {a}-{b}")
                if a == b and cost != 0:
                    raise ValueError(
                        f"k_override {a}-{b}: self pair must cost 0"
                    )
                if key in override_map and override_map[key] != cost:
                    raise ValueError(
                        f"k_override {key[0]}-{key[1]}: conflicting values"
                    )
                override_map[key] = cost

        self._nodes = frozenset(node_set)
        self._links = link_map
        self._override = override_map
        adjacency: dict[NodeId, list[tuple[NodeId, Fraction]]] = {
            n: [] for n in node_set
        }
        for (a, b), cost in link_map.items():
            adjacency[a].append((b, cost))
            adjacency[b].append((a, cost))
        self._adjacency = adjacency

    @property
    def nodes(self) -> frozenset[NodeId]:
        return self._nodes

    @property
    def links(self) -> tuple[tuple[NodeId, NodeId, Fraction], ...]:
        return tuple(
            (a, b, cost) for (a, b), cost in sorted(self._links.items())
        )

    @property
    def k_override(self) -> dict[tuple[NodeId, NodeId], Fraction]:
        return dict(self._override)

    def __repr__(self) -> str:
        return (
            f"Network(nodes={len(self._nodes)}, links={len(self._links)}, "
            f"overrides={len(self._override)})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and self._links == other._links
            and self._override == other._override
        )

    def __hash__(self) -> int:
        return hash(
            (
                self._nodes,
                tuple(sorted(self._links.items())),
                tuple(sorted(self._override.items())),
            )
        )

    def add_node(self, node: NodeId) -> "Network":
        """Return a copy of this network with ``node`` added."""
        _check_node_id(node)
        if node in self._nodes:
            raise DuplicateNode(f"node {node} already present")
        clone = Network.__new__(Network)
        clone._nodes = self._nodes | {node}
        clone._links = self._links
        clone._override = self._override
        adjacency = dict(self._adjacency)
        adjacency[node] = []
        clone._adjacency = adjacency
        return clone

    def add_link(self, a: NodeId, b: NodeId, coeff: NumberLike) -> "Network":
        """Return a copy of this network with an ``a``-``b`` link added."""
        _check_node_id(a)
        _check_node_id(b)
        if a not in self._nodes:
            raise UnknownNode(f"link endpoint {a} is not a node")
        if b not in self._nodes:
            raise UnknownNode(f"link endpoint {b} is not a node")
        if a == b:
            raise SelfLink(f"link {a}-{b} joins a node to itself")
        key = _pair(a, b)
        if key in self._links:
            raise DuplicateLink(f"link {key[0]}-{key[1]} already present")
        cost = _coeff(coeff, f"link {a}-{b}")
        clone = Network.__new__(Network)
        clone._nodes = self._nodes
        clone._links = dict(self._links)
        clone._links[key] = cost
        clone._override = self._override
        adjacency = {n: list(edges) for n, edges in self._adjacency.items()}
        adjacency[a].append((b, cost))
        adjacency[b].append((a, cost))
        clone._adjacency = adjacency
        return clone

    def path_cost(self, i: NodeId, j: NodeId) -> Fraction:
        """Cost of the cheapest path between ``i`` and ``j``.

        An override entry for the pair wins over path search. The cost of
        a node to itself is zero. Raises ``UnknownNode`` for ids outside
        the network and ``Unreachable`` when no path exists.
        """
        if i not in self._nodes:
            raise UnknownNode(f"node {i} is not part of the network")
        if j not in self._nodes:
            raise UnknownNode(f"node {j} is not part of the network")
        override = self._override.get(_pair(i, j))
        if override is not None:
            return override
        if i == j:
            return Fraction(0)
        best: dict[NodeId, Fraction] = {i: Fraction(0)}
        frontier: list[tuple[Fraction, NodeId]] = [(Fraction(0), i)]
        visited: set[NodeId] = set()
        while frontier:
            dist, node = heapq.heappop(frontier)
            if node in visited:
                continue
            if node == j:
                return dist
            visited.add(node)
            for neighbor, cost in self._adjacency[node]:
                if neighbor in visited:
                    continue
                candidate = dist + cost
                known = best.get(neighbor)
                if known is None or candidate < known:
                    best[neighbor] = candidate
                    heapq.heappush(frontier, (candidate, neighbor))
        raise Unreachable(f"no path between {i} and {j}")

    def inter_domain_cost(self, mother_host: NodeId, child_host: NodeId) -> Fraction:
        """Traffic coefficient between a mother manager and a child manager.

        This is simply ``path_cost`` between the two hosting nodes; the
        name records what the quantity is used for.
        """
        return self.path_cost(mother_host, child_host)
