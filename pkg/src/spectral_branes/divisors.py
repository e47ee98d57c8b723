"""Exact degree bookkeeping for line bundles on reducible curves.

Multidegrees are plain tuples of ints indexed by component (position 0 is
component 1).  Symbolic line bundles carry a base (trivial, the twisted
bundle ``Lhat`` or a free label), a power of the canonical bundle pulled
back to each component and signed node twists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .curve_model import SpectralConfig, delta
from .errors import ConfigError

MultiDegree = tuple[int, ...]

TRIVIAL = "Trivial"
LHAT = "Lhat"


def as_multidegree(cfg: SpectralConfig, md: Iterable[int]) -> MultiDegree:
    md = tuple(int(d) for d in md)
    if len(md) != cfg.s:
        raise ConfigError(f"multidegree has {len(md)} entries, config has {cfg.s} components")
    return md


def lhat_degree(cfg: SpectralConfig) -> int:
    """Degree of ``Lhat`` on each component of a Cartan curve: ``delta / n``."""
    return (cfg.n - 1) * (cfg.base_genus - 1)


def total_degree(cfg: SpectralConfig, md: Sequence[int]) -> int:
    return sum(as_multidegree(cfg, md))


def pushforward_degree(cfg: SpectralConfig, R: Iterable[str], F_degree: int) -> int:
    """Degree of the pushforward of a degree ``F_degree`` line bundle from the
    partial normalization along ``R``."""
    R = cfg.check_nodes(R)
    return F_degree + len(R)


def jacobian_fiber_dimension(cfg: SpectralConfig, R: Iterable[str]) -> int:
    """Dimension ``|R| - n_R + 1`` of the torus fibre of pullback to the
    partial normalization along ``R``."""
    R = cfg.check_nodes(R)
    n_R = nx.number_connected_components(cfg.dual_graph(removed=R))
    return len(R) - n_R + 1


@dataclass(frozen=True)
class LineBundleSymbol:
    """Symbolic line bundle on the normalization, one entry per component.

    ``base_degrees`` is required for a free base and for ``Lhat`` on
    non-Cartan curves (where ``deg Lhat_i = d_i`` is supplied).
    """

    base: str = TRIVIAL
    k_power: tuple[int, ...] = ()
    node_twists: tuple[tuple[tuple[str, int], ...], ...] = ()
    base_degrees: tuple[int, ...] | None = None
    label: str | None = None

    @classmethod
    def make(cls, cfg: SpectralConfig, base=TRIVIAL, k_power=None, node_twists=None,
             base_degrees=None, label=None) -> "LineBundleSymbol":
        s = cfg.s
        k = tuple(k_power) if k_power is not None else (0,) * s
        tw = tuple(tuple(t) for t in node_twists) if node_twists is not None else ((),) * s
        bd = tuple(base_degrees) if base_degrees is not None else None
        if len(k) != s or len(tw) != s or (bd is not None and len(bd) != s):
            raise ConfigError("symbol entries must match the number of components")
        return cls(base, k, tw, bd, label)

    def tensor(self, other: "LineBundleSymbol") -> "LineBundleSymbol":
        if self.base != TRIVIAL and other.base != TRIVIAL:
            raise ValueError(f"cannot tensor two non-trivial bases {self.base}, {other.base}")
        carrier = other if self.base == TRIVIAL else self
        return LineBundleSymbol(
            carrier.base,
            tuple(a + b for a, b in zip(self.k_power, other.k_power)),
            tuple(a + b for a, b in zip(self.node_twists, other.node_twists)),
            carrier.base_degrees,
            carrier.label,
        )

    def render(self, i: int) -> str:
        """Human-readable form of the entry on component ``i`` (1-based)."""
        base = {TRIVIAL: "O", LHAT: "Lhat"}.get(self.base, self.label or self.base)
        parts = [base]
        k = self.k_power[i - 1]
        if k:
            parts.append(f"K^{k}")
        twists = self.node_twists[i - 1]
        if twists:
            tw = "".join(f"{'+' if sign > 0 else '-'}{nid}" for nid, sign in sorted(twists))
            parts.append(f"O({tw.lstrip('+')})")
        return "*".join(parts) + f"|X{i}"

    def to_dict(self) -> dict:
        return {
            "base": self.base if self.label is None else f"{self.base}({self.label})",
            "k_power": list(self.k_power),
            "node_twists": [[[nid, sign] for nid, sign in sorted(t)] for t in self.node_twists],
        }


def symbol_degree(cfg: SpectralConfig, sym: LineBundleSymbol) -> MultiDegree:
    g = cfg.base_genus
    if sym.base == TRIVIAL:
        base = (0,) * cfg.s
    elif sym.base == LHAT and sym.base_degrees is None:
        if not cfg.is_cartan:
            raise ConfigError("Lhat on a non-Cartan curve needs explicit base degrees")
        base = (lhat_degree(cfg),) * cfg.s
    elif sym.base_degrees is None:
        raise ConfigError(f"base {sym.base!r} needs explicit base degrees")
    else:
        base = sym.base_degrees
    out = []
    for i in range(1, cfg.s + 1):
        twist = 0
        for nid, sign in sym.node_twists[i - 1]:
            if nid not in cfg.node_map:
                raise ConfigError(f"unknown node id {nid}")
            if not cfg.incident(nid, i):
                raise ConfigError(f"node {nid} is not on component {i}")
            twist += sign
        out.append(base[i - 1] + sym.k_power[i - 1] * cfg.rank(i) * (2 * g - 2) + twist)
    return tuple(out)


def uni_multidegree(cfg: SpectralConfig) -> MultiDegree:
    return (lhat_degree(cfg),) * cfg.s


def zero_multidegree(cfg: SpectralConfig) -> MultiDegree:
    return (0,) * cfg.s


def is_degree_delta(cfg: SpectralConfig, md: Sequence[int]) -> bool:
    return total_degree(cfg, md) == delta(cfg)
