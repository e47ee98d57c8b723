"""Dual-graph models of totally reducible nodal spectral curves.

A spectral curve over a point of the nodal Cartan (or Levi) locus is a union
of smooth components ``X_1, ..., X_s`` meeting in simple nodes.  Component
``i`` is itself a spectral curve of rank ``r_i`` over the base curve of genus
``g``, so its genus is ``1 + r_i**2 (g - 1)``, and two components ``i < j``
meet in exactly ``2 r_i r_j (g - 1)`` nodes.

Components are indexed from 1.  Node ids are ``"d{i}{j}#{k}"`` with
``i < j`` and ``k`` counting from 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

import networkx as nx

from .errors import ConfigError, IdentityViolation


def component_genus(rank: int, g: int) -> int:
    """Genus of a smooth rank-``rank`` spectral curve over a genus ``g`` base."""
    return 1 + rank * rank * (g - 1)


def node_label(i: int, j: int, k: int) -> str:
    i, j = min(i, j), max(i, j)
    return f"d{i}{j}#{k}"


@dataclass(frozen=True)
class Component:
    index: int
    rank: int
    genus: int

    def __post_init__(self):
        if self.rank < 1:
            raise ConfigError(f"component {self.index}: rank must be >= 1, got {self.rank}")


@dataclass(frozen=True)
class Node:
    id: str
    endpoints: tuple[int, int]

    def __post_init__(self):
        a, b = self.endpoints
        if a == b:
            raise ConfigError(f"node {self.id}: self-node on component {a}")
        if a > b:
            object.__setattr__(self, "endpoints", (b, a))


@dataclass(frozen=True)
class SpectralConfig:
    """Decorated dual graph of a reducible nodal spectral curve.

    Validated on construction: distinct node endpoints, the per-pair node
    count ``2 r_i r_j (g - 1)``, connectedness and ``n >= 2``.
    """

    base_genus: int
    components: tuple[Component, ...]
    nodes: tuple[Node, ...]

    def __post_init__(self):
        g = self.base_genus
        if g < 2:
            raise ConfigError(f"base genus must be >= 2, got {g}")
        if not self.components:
            raise ConfigError("no components")
        for pos, comp in enumerate(self.components, start=1):
            if comp.index != pos:
                raise ConfigError(f"components must be indexed 1..s in order, got {comp.index} at {pos}")
            if comp.genus != component_genus(comp.rank, g):
                raise ConfigError(
                    f"component {comp.index}: genus {comp.genus} inconsistent with rank {comp.rank}"
                )
        if self.n < 2:
            raise ConfigError(f"total rank n must be >= 2, got {self.n}")
        s = len(self.components)
        seen = set()
        for node in self.nodes:
            if node.id in seen:
                raise ConfigError(f"duplicate node id {node.id}")
            seen.add(node.id)
            for e in node.endpoints:
                if not 1 <= e <= s:
                    raise ConfigError(f"node {node.id}: unknown component {e}")
        for i, j in combinations(range(1, s + 1), 2):
            want = 2 * self.rank(i) * self.rank(j) * (g - 1)
            got = len(self.nodes_between(i, j))
            if got != want:
                raise ConfigError(f"components {i},{j}: expected {want} nodes, got {got}")
        if not nx.is_connected(self.dual_graph()):
            raise ConfigError("dual graph is not connected")

    @property
    def s(self) -> int:
        return len(self.components)

    @property
    def n(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(c.rank for c in self.components)

    @property
    def is_cartan(self) -> bool:
        return all(c.rank == 1 for c in self.components)

    def rank(self, i: int) -> int:
        return self.components[i - 1].rank

    @cached_property
    def node_ids(self) -> frozenset[str]:
        return frozenset(node.id for node in self.nodes)

    @cached_property
    def node_map(self) -> dict[str, Node]:
        return {node.id: node for node in self.nodes}

    @cached_property
    def _pairs(self) -> dict[tuple[int, int], tuple[str, ...]]:
        pairs: dict[tuple[int, int], list[str]] = {}
        for node in self.nodes:
            pairs.setdefault(node.endpoints, []).append(node.id)
        return {k: tuple(sorted(v)) for k, v in pairs.items()}

    def nodes_between(self, i: int, j: int) -> tuple[str, ...]:
        """Sorted ids of the nodes in ``D_ij``."""
        return self._pairs.get((min(i, j), max(i, j)), ())

    def incident(self, node_id: str, i: int) -> bool:
        return i in self.node_map[node_id].endpoints

    def dual_graph(self, removed: Iterable[str] = ()) -> nx.Graph:
        """Simple graph on component indices with an edge wherever a node survives.

        Connectivity of the multigraph with edge set ``D - removed`` only
        depends on which pairs keep at least one node.
        """
        removed = set(removed)
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.s + 1))
        for node in self.nodes:
            if node.id not in removed:
                graph.add_edge(*node.endpoints)
        return graph

    def check_nodes(self, node_ids: Iterable[str]) -> frozenset[str]:
        ids = frozenset(node_ids)
        unknown = ids - self.node_ids
        if unknown:
            raise ConfigError(f"unknown node ids: {sorted(unknown)}")
        return ids

    def to_dict(self) -> dict:
        return {
            "genus": self.base_genus,
            "ranks": list(self.ranks),
            "component_genera": [c.genus for c in self.components],
            "nodes": [{"id": nd.id, "endpoints": list(nd.endpoints)} for nd in sorted(self.nodes, key=lambda x: x.id)],
        }


def _default_nodes(ranks: tuple[int, ...], g: int) -> list[Node]:
    nodes = []
    for i, j in combinations(range(1, len(ranks) + 1), 2):
        for k in range(1, 2 * ranks[i - 1] * ranks[j - 1] * (g - 1) + 1):
            nodes.append(Node(node_label(i, j, k), (i, j)))
    return nodes


def _assemble(ranks, g, nodes=None) -> SpectralConfig:
    if g < 2:
        raise ConfigError(f"base genus must be >= 2, got {g}")
    ranks = tuple(int(r) for r in ranks)
    comps = tuple(Component(i, r, component_genus(r, g)) for i, r in enumerate(ranks, start=1))
    if nodes is None:
        nodes = _default_nodes(ranks, g)
    return SpectralConfig(g, comps, tuple(nodes))


def build_cartan_config(n: int, g: int) -> SpectralConfig:
    if n < 2:
        raise ConfigError(f"n must be >= 2, got {n}")
    return _assemble((1,) * n, g)


def build_parabolic_config(ranks, g: int, nodes=None) -> SpectralConfig:
    ranks = tuple(ranks)
    if not ranks:
        raise ConfigError("empty partition")
    if len(ranks) < 2:
        raise ConfigError(f"partition must have length >= 2, got {ranks}")
    if any(r < 1 for r in ranks):
        raise ConfigError(f"ranks must be >= 1, got {ranks}")
    if list(ranks) != sorted(ranks):
        raise ConfigError(f"ranks must be nondecreasing, got {ranks}")
    return _assemble(ranks, g, nodes)


def config_from_mapping(data: Mapping) -> SpectralConfig:
    """Build a config from ``{"genus": g, "ranks": [...], "nodes": [...]}``.

    ``nodes`` is optional; entries are ``{"id": str, "endpoints": [i, j]}``
    or bare ``[i, j]`` pairs (labels are then generated per pair).
    """
    try:
        g = int(data["genus"])
        ranks = [int(r) for r in data["ranks"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"config needs integer 'genus' and list 'ranks': {exc}") from None
    raw = data.get("nodes")
    nodes = None
    if raw is not None:
        nodes = []
        counters: dict[tuple[int, int], int] = {}
        for entry in raw:
            if isinstance(entry, Mapping):
                ends = tuple(int(e) for e in entry["endpoints"])
                label = str(entry["id"]) if "id" in entry else None
            else:
                ends = tuple(int(e) for e in entry)
                label = None
            if len(ends) != 2:
                raise ConfigError(f"node must have exactly two endpoints, got {ends}")
            key = (min(ends), max(ends))
            counters[key] = counters.get(key, 0) + 1
            nodes.append(Node(label or node_label(*key, counters[key]), ends))
    if all(r == 1 for r in ranks) and len(ranks) >= 2 and nodes is None:
        return build_cartan_config(len(ranks), g)
    return build_parabolic_config(ranks, g, nodes)


def arithmetic_genus(cfg: SpectralConfig) -> int:
    """Genus from the dual graph, checked against ``1 + n**2 (g - 1)``."""
    graph_genus = sum(c.genus for c in cfg.components) + len(cfg.nodes) - cfg.s + 1
    closed = 1 + cfg.n ** 2 * (cfg.base_genus - 1)
    if graph_genus != closed:
        raise IdentityViolation("arithmetic_genus", graph_genus, closed, {"ranks": cfg.ranks})
    return graph_genus


def delta(cfg: SpectralConfig) -> int:
    return cfg.n * (cfg.n - 1) * (cfg.base_genus - 1)


def moduli_dimensions(cfg: SpectralConfig) -> dict:
    g = cfg.base_genus
    base = sum(r * r * (g - 1) + 1 for r in cfg.ranks)
    return {
        "dim_Mn": 2 * cfg.n ** 2 * (g - 1) + 2,
        "dim_base": base,
        "base_kind": "V" if cfg.is_cartan else "H_r",
    }


def info(cfg: SpectralConfig) -> dict:
    dims = moduli_dimensions(cfg)
    return {
        "config": cfg.to_dict(),
        "n": cfg.n,
        "s": cfg.s,
        "arithmetic_genus": arithmetic_genus(cfg),
        "delta": delta(cfg),
        "node_count": len(cfg.nodes),
        "dim_Mn": dims["dim_Mn"],
        "dim_base": dims["dim_base"],
        "base_kind": dims["base_kind"],
    }
