"""Fibre descriptors of the Cartan and Uni branes over the nodal Cartan locus.

Both branes are described fibrewise over ``v`` in the nodal Cartan locus as
loci inside the compactified Jacobian of the spectral curve:

* Cartan brane: pushforwards from the full normalization ``R = D`` of line
  bundles of multidegree zero, a copy of ``Jac^0(X)^n``.
* Uni brane: line bundles ``L`` (``R`` empty) with ``nu^* L = (Lhat, ..., Lhat)``,
  a torus of dimension ``delta - n + 1``.

Descriptors are compared through :meth:`StratumDescriptor.canonical`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .curve_model import SpectralConfig, delta, moduli_dimensions
from .divisors import (
    LHAT,
    LineBundleSymbol,
    as_multidegree,
    jacobian_fiber_dimension,
    lhat_degree,
    symbol_degree,
    uni_multidegree,
    zero_multidegree,
)
from .errors import ConfigError, IdentityViolation
from .normalization import admissible_multidegrees, normalize

FIXED = "fixed_multidegree"
PULLBACK = "pullback_equals"
UNION = "union_over_orderings"


@dataclass(frozen=True)
class OrderingMember:
    """One ordering's contribution to a union-over-orderings descriptor."""

    ordering: tuple[int, ...]
    degrees: tuple[int, ...]
    symbols: tuple[str, ...]
    feasible: bool
    literal_degrees: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        out = {
            "ordering": list(self.ordering),
            "degrees": list(self.degrees),
            "symbols": list(self.symbols),
            "feasible": self.feasible,
        }
        if self.literal_degrees is not None:
            out["literal_symbol_degrees"] = list(self.literal_degrees)
        return out


@dataclass(frozen=True)
class StratumDescriptor:
    R: frozenset[str]
    kind: str
    dimension: int
    degrees: tuple[int, ...] | None = None
    symbols: tuple[str, ...] = ()
    members: tuple[OrderingMember, ...] = ()
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def canonical(self) -> dict:
        """Presentation-independent form: node ids sorted, a union whose
        feasible members share one degree vector collapses to a pullback
        condition, infeasible members (empty strata) are dropped."""
        kind, degrees = self.kind, self.degrees
        out = {"R": sorted(self.R), "dimension": self.dimension}
        if kind == UNION:
            vectors = sorted({m.degrees for m in self.members if m.feasible})
            if len(vectors) == 1:
                kind, degrees = PULLBACK, vectors[0]
            else:
                out["kind"] = UNION
                out["degrees"] = [list(v) for v in vectors]
                return out
        out["kind"] = kind
        out["degrees"] = list(degrees)
        return out

    def canonical_json(self) -> str:
        return json.dumps(self.canonical(), sort_keys=True)

    def to_dict(self) -> dict:
        out = {
            "R": sorted(self.R),
            "kind": self.kind,
            "dimension": self.dimension,
            "canonical": self.canonical(),
        }
        if self.degrees is not None:
            out["degrees"] = list(self.degrees)
        if self.symbols:
            out["symbols"] = list(self.symbols)
        if self.members:
            out["members"] = [m.to_dict() for m in self.members]
        if self.metadata:
            out["metadata"] = dict(self.metadata)
        return out


@dataclass(frozen=True)
class Filtration:
    ordering: tuple[int, ...]
    steps: tuple[LineBundleSymbol, ...]
    quotient_degrees: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "ordering": list(self.ordering),
            "table": [
                {"step": i, "component": j, "symbol": sym.render(j), "degree": d}
                for i, (j, sym, d) in enumerate(zip(self.ordering, self.steps, self.quotient_degrees), start=1)
            ],
            "quotient_degrees": list(self.quotient_degrees),
            "sum": sum(self.quotient_degrees),
        }


def check_ordering(s: int, J: Iterable[int]) -> tuple[int, ...]:
    J = tuple(int(j) for j in J)
    if sorted(J) != list(range(1, s + 1)):
        raise ConfigError(f"ordering {J} is not a permutation of 1..{s}")
    return J


def orderings(s: int):
    return permutations(range(1, s + 1))


def _require_cartan(cfg: SpectralConfig, what: str) -> None:
    if not cfg.is_cartan:
        raise ConfigError(f"{what} requires a Cartan configuration (all ranks 1), got ranks {cfg.ranks}")


def forward_nodes(cfg: SpectralConfig, J: Sequence[int], i: int) -> tuple[str, ...]:
    """Nodes joining ``X_{j_i}`` to the later components ``X_{j_k}``, ``k > i`` (``i`` 1-based)."""
    j = J[i - 1]
    out = []
    for k in J[i:]:
        out.extend(cfg.nodes_between(j, k))
    return tuple(sorted(out))


def fixed_fiber(cfg: SpectralConfig, degrees, dimension: int, metadata=None) -> StratumDescriptor:
    """Descriptor for pushforwards from the full normalization with fixed multidegree."""
    pn = normalize(cfg, cfg.node_ids)
    adm = admissible_multidegrees(cfg, pn)
    if tuple(adm["unique_multidegree"]) != tuple(degrees):
        raise IdentityViolation("fixed_multidegree_unique", adm["unique_multidegree"], list(degrees))
    return StratumDescriptor(cfg.node_ids, FIXED, dimension, tuple(degrees), metadata=metadata or {})


def cartan_fiber(cfg: SpectralConfig) -> StratumDescriptor:
    _require_cartan(cfg, "cartan_fiber")
    return fixed_fiber(cfg, zero_multidegree(cfg), moduli_dimensions(cfg)["dim_base"])


def uni_fiber(cfg: SpectralConfig) -> StratumDescriptor:
    _require_cartan(cfg, "uni_fiber")
    dim = jacobian_fiber_dimension(cfg, cfg.node_ids)
    expected = delta(cfg) - cfg.n + 1
    if dim != expected:
        raise IdentityViolation("uni_fiber_dimension", dim, expected)
    sym = LineBundleSymbol.make(cfg, base=LHAT)
    return StratumDescriptor(
        frozenset(), PULLBACK, dim, uni_multidegree(cfg),
        symbols=tuple(sym.render(i) for i in range(1, cfg.s + 1)),
    )


def build_filtration(cfg: SpectralConfig, md, J) -> Filtration:
    """Quotients ``L|_{X_{j_i}}(-sum_{r>i} D_{j_i j_r})`` at degree level."""
    md = as_multidegree(cfg, md)
    J = check_ordering(cfg.s, J)
    steps, degrees = [], []
    for i, j in enumerate(J, start=1):
        twists = [()] * cfg.s
        twists[j - 1] = tuple((nid, -1) for nid in forward_nodes(cfg, J, i))
        sym = LineBundleSymbol.make(cfg, base="Free", node_twists=twists, base_degrees=md, label="L")
        steps.append(sym)
        degrees.append(symbol_degree(cfg, sym)[j - 1])
    total = sum(degrees)
    if total != sum(md) - len(cfg.nodes):
        raise IdentityViolation("filtration_telescoping", total, sum(md) - len(cfg.nodes), {"J": J})
    return Filtration(J, tuple(steps), tuple(degrees))


def filtration(cfg: SpectralConfig, md, J) -> Filtration:
    _require_cartan(cfg, "filtration")
    filt = build_filtration(cfg, md, J)
    if tuple(md) == uni_multidegree(cfg):
        n, g = cfg.n, cfg.base_genus
        for i, d in enumerate(filt.quotient_degrees, start=1):
            want = lhat_degree(cfg) + (i - n) * (2 * g - 2)
            if d != want:
                raise IdentityViolation("uni_quotient_law", d, want, {"J": filt.ordering, "step": i})
    return filt


def b_divisors(cfg: SpectralConfig, R: Iterable[str], J) -> list[tuple[frozenset[str], frozenset[str]]]:
    """Per step ``i``: forward nodes of ``X_{j_i}`` outside ``R`` and inside ``R``."""
    _require_cartan(cfg, "b_divisors")
    R = cfg.check_nodes(R)
    J = check_ordering(cfg.s, J)
    g, n = cfg.base_genus, cfg.n
    out = []
    for i in range(1, cfg.s + 1):
        fwd = frozenset(forward_nodes(cfg, J, i))
        lower, upper = fwd - R, fwd & R
        if len(lower) + len(upper) != (n - i) * (2 * g - 2):
            raise IdentityViolation("b_divisor_partition", len(lower) + len(upper), (n - i) * (2 * g - 2))
        out.append((lower, upper))
    return out


def b_divisors_report(cfg: SpectralConfig, R, J) -> list[dict]:
    J = check_ordering(cfg.s, J)
    return [
        {"step": i, "component": J[i - 1], "B_lower": sorted(lo), "B_upper": sorted(up),
         "size_sum": len(lo) + len(up)}
        for i, (lo, up) in enumerate(b_divisors(cfg, R, J), start=1)
    ]


def uni_stratum_candidates(cfg: SpectralConfig, R: Iterable[str]) -> list[dict]:
    """Restriction symbols ``Lhat (x) O(B^{J,i})`` on ``X_{j_i}`` for every ordering.

    These describe a locus that contains the Uni brane's intersection with the
    stratum; the reverse inclusion is not claimed.
    """
    _require_cartan(cfg, "uni_stratum_candidates")
    R = cfg.check_nodes(R)
    out = []
    for J in orderings(cfg.s):
        twists = [()] * cfg.s
        for i, (_, upper) in enumerate(b_divisors(cfg, R, J), start=1):
            twists[J[i - 1] - 1] = tuple((nid, 1) for nid in sorted(upper))
        sym = LineBundleSymbol.make(cfg, base=LHAT, node_twists=twists)
        degrees = symbol_degree(cfg, sym)
        out.append({
            "ordering": list(J),
            "symbols": [sym.render(i) for i in range(1, cfg.s + 1)],
            "degrees": list(degrees),
            "step_degrees": [degrees[j - 1] for j in J],
            "total_degree": sum(degrees),
            "expected_total": delta(cfg) - len(R),
            "containment_only": True,
        })
    return out


def brane_dimension_record(base_dimension: int, fiber_dimension: int, dim_Mn: int, closed_form: int) -> dict:
    total = base_dimension + fiber_dimension
    record = {
        "base_dimension": base_dimension,
        "fiber_dimension": fiber_dimension,
        "brane_dimension": total,
        "closed_form": closed_form,
        "half_dim_Mn": dim_Mn // 2,
        "lagrangian_by_count": total == closed_form == dim_Mn // 2 and dim_Mn % 2 == 0,
    }
    if not record["lagrangian_by_count"]:
        raise IdentityViolation("brane_dimension", total, dim_Mn // 2, record)
    return record


def dimension_audit(cfg: SpectralConfig) -> dict:
    _require_cartan(cfg, "dimension_audit")
    n, g = cfg.n, cfg.base_genus
    return brane_dimension_record(
        n * g,
        delta(cfg) - n + 1,
        moduli_dimensions(cfg)["dim_Mn"],
        n * n * (g - 1) + 1,
    )


def fm_image(cfg: SpectralConfig) -> StratumDescriptor:
    """Support of the transform of the Cartan fibre's line bundle.

    The fibre is ``Jac^0(X)^n`` sitting over the full normalization; the
    transform of the topologically trivial bundle on it is a skyscraper at the
    point ``(Lhat, ..., Lhat)`` (degree shifted by ``delta / n`` through the base
    point twist), and its preimage under pullback to the normalization is the
    support.
    """
    source = cartan_fiber(cfg)
    shift = lhat_degree(cfg)
    point = tuple(d + shift for d in source.degrees)
    dim = jacobian_fiber_dimension(cfg, source.R)
    return StratumDescriptor(
        frozenset(), PULLBACK, dim, point,
        symbols=tuple(f"Lhat|X{i}" for i in range(1, cfg.s + 1)),
        metadata={"cohomological_degree": cfg.base_genus},
    )


def fm_support_match(cfg: SpectralConfig) -> dict:
    _require_cartan(cfg, "fm_support_match")
    image = fm_image(cfg)
    target = uni_fiber(cfg)
    return {
        "match": image.canonical_json() == target.canonical_json(),
        "fm_image": image.to_dict(),
        "uni_fiber": target.to_dict(),
        "cartan_fiber": cartan_fiber(cfg).to_dict(),
    }
