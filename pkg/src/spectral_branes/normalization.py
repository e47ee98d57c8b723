"""Partial normalizations of a nodal spectral curve along a node subset R.

Separating the branches at every node of ``R`` leaves a curve whose connected
components ``C_1, ..., C_{n_R}`` are the connected components of the dual
graph with edge set ``D - R``.  Nodes of ``R`` then split into ``R_s`` (joining
different ``C_i``) and ``R_i`` (internal to ``C_i``); ``D_i`` collects the
nodes internal to ``C_i`` that were not normalized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable

import networkx as nx

from .curve_model import SpectralConfig, arithmetic_genus
from .errors import ConfigError, IdentityViolation

DEFAULT_CAP = 20


@dataclass(frozen=True)
class PartialNormalization:
    cfg: SpectralConfig
    R: frozenset[str]
    components: tuple[tuple[int, ...], ...]
    R_s: frozenset[str]
    R_internal: tuple[frozenset[str], ...]
    D_internal: tuple[frozenset[str], ...]

    @property
    def n_R(self) -> int:
        return len(self.components)

    def component_genus(self, k: int) -> int:
        """Arithmetic genus of the connected component ``C_{k+1}`` (``k`` 0-based)."""
        comps = self.components[k]
        return sum(self.cfg.components[i - 1].genus for i in comps) + len(self.D_internal[k]) - len(comps) + 1

    @cached_property
    def genus(self) -> int:
        """Sum of the arithmetic genera of the connected components."""
        return sum(self.component_genus(k) for k in range(self.n_R))

    def to_dict(self) -> dict:
        return {
            "R": sorted(self.R),
            "n_R": self.n_R,
            "components": [list(c) for c in self.components],
            "R_s": sorted(self.R_s),
            "R_i": [sorted(r) for r in self.R_internal],
            "D_i": [sorted(d) for d in self.D_internal],
        }


def normalize(cfg: SpectralConfig, R: Iterable[str]) -> PartialNormalization:
    R = cfg.check_nodes(R)
    graph = cfg.dual_graph(removed=R)
    comps = sorted(tuple(sorted(c)) for c in nx.connected_components(graph))
    where = {i: k for k, comp in enumerate(comps) for i in comp}
    R_s = set()
    R_int = [set() for _ in comps]
    D_int = [set() for _ in comps]
    for node in cfg.nodes:
        a, b = node.endpoints
        if where[a] != where[b]:
            # only nodes of R can join different components
            R_s.add(node.id)
        elif node.id in R:
            R_int[where[a]].add(node.id)
        else:
            D_int[where[a]].add(node.id)
    pn = PartialNormalization(
        cfg, R, tuple(comps), frozenset(R_s),
        tuple(frozenset(x) for x in R_int), tuple(frozenset(x) for x in D_int),
    )
    _check_partition(pn)
    return pn


def _check_partition(pn: PartialNormalization) -> None:
    cfg = pn.cfg
    total = sum(len(d) + len(r) for d, r in zip(pn.D_internal, pn.R_internal)) + len(pn.R_s)
    if total != len(cfg.nodes):
        raise IdentityViolation("node_partition", total, len(cfg.nodes), {"R": sorted(pn.R)})
    lhs = pn.genus
    rhs = pn.n_R - 1 + arithmetic_genus(cfg) - len(pn.R)
    if lhs != rhs:
        raise IdentityViolation("normalization_genus", lhs, rhs, {"R": sorted(pn.R)})


def admissible_multidegrees(cfg: SpectralConfig, pn: PartialNormalization) -> dict:
    """Degree sums ``eta_i`` each connected component must carry so that the
    pushforward has degree ``delta`` and a semistable image.

    Only the component sums are constrained; the split of ``eta_i`` among the
    irreducible pieces of ``C_i`` is left open.
    """
    g = cfg.base_genus
    if cfg.is_cartan:
        eta = tuple(len(d) for d in pn.D_internal)
    elif pn.R == cfg.node_ids:
        eta = tuple((r * r - r) * (g - 1) for r in cfg.ranks)
    else:
        raise ConfigError(
            "admissible multidegrees on non-Cartan curves are only determined for full normalization R = D"
        )
    forced = None
    if all(len(c) == 1 for c in pn.components):
        forced = [0] * cfg.s
        for (i,), e in zip(pn.components, eta):
            forced[i - 1] = e
        forced = tuple(forced)
    return {
        "R": sorted(pn.R),
        "components": [list(c) for c in pn.components],
        "eta": list(eta),
        "strict_semistability_forced": bool(pn.R_s),
        "unique_multidegree": list(forced) if forced is not None else None,
    }


def pairs(cfg: SpectralConfig) -> list[tuple[int, int]]:
    return list(combinations(range(1, cfg.s + 1), 2))


def profile_representative(cfg: SpectralConfig, profile: Iterable[int]) -> frozenset[str]:
    """Node set taking the first ``c_ij`` nodes (by id) of each ``D_ij``."""
    chosen = []
    for (i, j), c in zip(pairs(cfg), profile):
        between = cfg.nodes_between(i, j)
        if not 0 <= c <= len(between):
            raise ConfigError(f"profile entry {c} out of range for pair {i},{j}")
        chosen.extend(between[:c])
    return frozenset(chosen)


def iter_profiles(cfg: SpectralConfig):
    ranges = [range(len(cfg.nodes_between(i, j)) + 1) for i, j in pairs(cfg)]
    yield from product(*ranges)


def enumerate_strata(cfg: SpectralConfig, mode: str = "by_profile", cap: int = DEFAULT_CAP):
    """All partial normalizations, one per node-count profile or one per subset.

    ``by_profile`` orders results lexicographically on the profile vector
    (pairs in lexicographic order); ``explicit`` orders subsets by bitmask over
    the sorted node ids.
    """
    if mode == "by_profile":
        return [normalize(cfg, profile_representative(cfg, p)) for p in iter_profiles(cfg)]
    if mode == "explicit":
        ids = sorted(cfg.node_ids)
        if len(ids) > cap:
            raise ConfigError(f"explicit enumeration needs |D| <= {cap}, got {len(ids)}")
        out = []
        for mask in range(1 << len(ids)):
            out.append(normalize(cfg, [nid for b, nid in enumerate(ids) if mask >> b & 1]))
        return out
    raise ConfigError(f"unknown enumeration mode {mode!r}")


def strata_report(cfg: SpectralConfig, mode: str = "by_profile", cap: int = DEFAULT_CAP) -> list[dict]:
    rows = []
    for pn in enumerate_strata(cfg, mode, cap):
        row = pn.to_dict()
        row["genus"] = pn.genus
        try:
            row["admissible"] = admissible_multidegrees(cfg, pn)
        except ConfigError as exc:
            row["admissible"] = {"error": str(exc)}
        rows.append(row)
    return rows

