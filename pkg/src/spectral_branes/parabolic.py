"""Levi/parabolic generalization for a partition ``r = (r_1 <= ... <= r_s)`` of n.

Degree conventions, for bundles ``E_i`` of rank ``r_i`` and degree ``e_i``:

* ``d_i = e_i + (r_i**2 - r_i)(g - 1)`` is the degree of the line bundle on
  component ``i`` pushing forward to ``E_i``;
* for an ordering ``J = (j_1, ..., j_s)`` the entry at position ``i`` is
  ``d^J_i = d_{j_i} + 2 R^J_i (g - 1)`` with ``R^J_i = r_{j_i} * sum_{k>i} r_{j_k}``.

Feasibility of ``(e, J)`` asks ``sum_{i in I} d^J_i > (r_I**2 - r_I)(g - 1)`` for
every nonempty proper set of positions ``I`` (``r_I`` summing ``r_{j_i}``) and
``sum_i d^J_i = (n**2 - n)(g - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .branes import (
    LHAT,
    OrderingMember,
    StratumDescriptor,
    UNION,
    brane_dimension_record,
    build_filtration,
    check_ordering,
    fixed_fiber,
    orderings,
)
from .curve_model import SpectralConfig, build_parabolic_config, delta, moduli_dimensions
from .divisors import LineBundleSymbol, as_multidegree, jacobian_fiber_dimension, symbol_degree
from .errors import ConfigError, IdentityViolation
from .stability import StabilityVerdict, subset_threshold, verdict_from_ledger

MAX_S = 8
MAX_CANDIDATES = 50_000_000

ORDERING_EXPONENT_NOTE = (
    "Lhat^J twists component j_i by pi^*K^{R^J_i}; pulled back along a degree r_{j_i} cover this "
    "has degree r_{j_i} R^J_i (2g-2), which differs from the ledger value 2 R^J_i (g-1) when r_{j_i} > 1. "
    "Reported degrees follow the ledger; literal_symbol_degrees evaluate the printed exponent."
)


@dataclass(frozen=True)
class PartitionSpec:
    ranks: tuple[int, ...]
    genus: int
    degrees: tuple[int, ...] | None = None

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if len(ranks) < 2:
            raise ConfigError(f"partition must have length >= 2, got {ranks}")
        if any(r < 1 for r in ranks) or list(ranks) != sorted(ranks):
            raise ConfigError(f"ranks must be positive and nondecreasing, got {ranks}")
        if self.genus < 2:
            raise ConfigError(f"genus must be >= 2, got {self.genus}")
        if self.degrees is not None:
            degrees = tuple(int(e) for e in self.degrees)
            if len(degrees) != len(ranks):
                raise ConfigError(f"need {len(ranks)} degrees, got {len(degrees)}")
            object.__setattr__(self, "degrees", degrees)

    @property
    def s(self) -> int:
        return len(self.ranks)

    @property
    def n(self) -> int:
        return sum(self.ranks)

    def with_degrees(self, degrees) -> "PartitionSpec":
        return PartitionSpec(self.ranks, self.genus, tuple(degrees))

    def config(self) -> SpectralConfig:
        return build_parabolic_config(self.ranks, self.genus)

    def levi_degrees(self) -> tuple[int, ...]:
        """``delta_i = (r_i**2 - r_i)(g - 1)``."""
        return tuple((r * r - r) * (self.genus - 1) for r in self.ranks)

    def line_degrees(self) -> tuple[int, ...]:
        if self.degrees is None:
            raise ConfigError("partition spec has no bundle degrees e_i")
        return tuple(e + dl for e, dl in zip(self.degrees, self.levi_degrees()))

    def delta_r(self) -> int:
        g = self.genus
        return sum(2 * a * b * (g - 1) for a, b in combinations(self.ranks, 2))


def r_J(ranks: Sequence[int], J: Sequence[int]) -> tuple[int, ...]:
    """``R^J_i`` for each position ``i``."""
    rs = [ranks[j - 1] for j in J]
    return tuple(rs[i] * sum(rs[i + 1:]) for i in range(len(rs)))


def _twist_offsets(ranks, g, J) -> np.ndarray:
    return np.array([2 * R * (g - 1) for R in r_J(ranks, J)], dtype=np.int64)


@dataclass(frozen=True)
class FeasibilityReport:
    ordering: tuple[int, ...]
    d_J: tuple[int, ...]
    ledger: tuple[tuple[tuple[int, ...], int, int, int], ...]
    total: int
    expected_total: int

    @property
    def total_ok(self) -> bool:
        return self.total == self.expected_total

    @property
    def passed(self) -> bool:
        return self.total_ok and all(lhs > thr for _, _, lhs, thr in self.ledger)

    def component_degrees(self) -> tuple[int, ...]:
        out = [0] * len(self.ordering)
        for pos, j in enumerate(self.ordering):
            out[j - 1] = self.d_J[pos]
        return tuple(out)

    def as_verdict(self) -> StabilityVerdict:
        """The subset ledger re-indexed by component, as a stability verdict."""
        rows = [
            (tuple(sorted(self.ordering[p - 1] for p in I)), lhs, thr)
            for I, _, lhs, thr in self.ledger
        ]
        return verdict_from_ledger(rows, self.total, self.expected_total)

    def to_dict(self) -> dict:
        return {
            "ordering": list(self.ordering),
            "d_J": list(self.d_J),
            "component_degrees": list(self.component_degrees()),
            "ledger": [
                {"I": list(I), "r_I": r_I, "lhs": lhs, "threshold": thr, "pass": lhs > thr}
                for I, r_I, lhs, thr in self.ledger
            ],
            "total": self.total,
            "expected_total": self.expected_total,
            "total_ok": self.total_ok,
            "pass": self.passed,
        }


def assumption_check(spec: PartitionSpec, J) -> FeasibilityReport:
    J = check_ordering(spec.s, J)
    g = spec.genus
    d = spec.line_degrees()
    d_J = tuple(d[j - 1] + 2 * R * (g - 1) for j, R in zip(J, r_J(spec.ranks, J)))
    ledger = []
    for size in range(1, spec.s):
        for I in combinations(range(1, spec.s + 1), size):
            r_I = sum(spec.ranks[J[p - 1] - 1] for p in I)
            ledger.append((I, r_I, sum(d_J[p - 1] for p in I), subset_threshold(r_I, g)))
    n = spec.n
    return FeasibilityReport(J, d_J, tuple(ledger), sum(d_J), (n * n - n) * (g - 1))


def feasible_orderings(spec: PartitionSpec) -> list[FeasibilityReport]:
    return [rep for rep in (assumption_check(spec, J) for J in orderings(spec.s)) if rep.passed]


def _box_axes(box, s: int) -> list[range]:
    if box is None:
        raise ConfigError("empty search box")
    box = list(box)
    if len(box) == 2 and all(isinstance(b, (int, np.integer)) for b in box):
        box = [tuple(box)] * s
    if len(box) != s:
        raise ConfigError(f"search box needs {s} intervals, got {len(box)}")
    axes = []
    for lo, hi in box:
        if hi < lo:
            raise ConfigError(f"empty search interval [{lo}, {hi}]")
        axes.append(range(int(lo), int(hi) + 1))
    return axes


def find_feasible(spec: PartitionSpec, box) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every ``(e, J)`` in the box passing the feasibility check, sorted by ``(e, J)``.

    ``box`` is one ``(lo, hi)`` pair applied to every ``e_i`` or one pair per
    ``e_i``.  Inequalities are evaluated in batches by the subset kernel.
    """
    if spec.s > MAX_S:
        raise ConfigError(f"at most {MAX_S} blocks supported, got {spec.s}")
    axes = _box_axes(box, spec.s)
    size = int(np.prod([len(a) for a in axes], dtype=object))
    n_orders = int(np.prod(range(1, spec.s + 1)))
    if size * n_orders > MAX_CANDIDATES:
        raise ConfigError(f"search space {size} x {n_orders} orderings exceeds {MAX_CANDIDATES}")
    grid = np.array(list(product(*axes)), dtype=np.int64).reshape(-1, spec.s)
    g = spec.genus
    base = grid + np.array(spec.levi_degrees(), dtype=np.int64)
    n = spec.n
    target = (n * n - n) * (g - 1)
    ranks = np.array(spec.ranks, dtype=np.int64)
    found = []
    for J in orderings(spec.s):
        idx = np.array(J, dtype=np.int64) - 1
        d_J = base[:, idx] + _twist_offsets(spec.ranks, g, J)
        keep = np.flatnonzero(d_J.sum(axis=1) == target)
        if keep.size == 0:
            continue
        status = _kernels.classify(d_J[keep], ranks[idx], g)
        for row in keep[status == _kernels.STABLE]:
            found.append((tuple(int(x) for x in grid[row]), tuple(J)))
    found.sort()
    return found


def mi_construction(ranks: Sequence[int], g: int) -> dict:
    """Equal-rank witness ``m_i = (n - 1)(g - 1)`` and the bundle degrees it induces."""
    ranks = tuple(int(r) for r in ranks)
    if len(set(ranks)) != 1:
        raise ConfigError(f"m_i construction needs equal ranks, got {ranks}")
    s, r = len(ranks), ranks[0]
    n = s * r
    m = (n - 1) * (g - 1)
    ms = (m,) * s
    ledger = []
    for size in range(1, s):
        for I in combinations(range(1, s + 1), size):
            r_I = r * len(I)
            ledger.append({"I": list(I), "lhs": r * m * len(I), "threshold": subset_threshold(r_I, g)})
    total = r * m * s
    expected = (n * n - n) * (g - 1)
    mis_ok = all(row["lhs"] > row["threshold"] for row in ledger) and total == expected
    if not mis_ok:
        raise IdentityViolation("mi_inequalities", total, expected, {"ranks": ranks, "g": g})
    J = tuple(range(1, s + 1))
    levi = (r * r - r) * (g - 1)
    e = tuple(r * m - 2 * R * (g - 1) - levi for R in r_J(ranks, J))
    spec = PartitionSpec(ranks, g, e)
    report = assumption_check(spec, J)
    if report.d_J != tuple(r * mi for mi in ms):
        raise IdentityViolation("mi_degrees", list(report.d_J), [r * mi for mi in ms])
    if not report.passed:
        raise IdentityViolation("mi_feasible", report.passed, True, {"ranks": ranks, "g": g})
    return {
        "ranks": list(ranks),
        "genus": g,
        "m": list(ms),
        "e": list(e),
        "mis_ledger": ledger,
        "total": total,
        "expected_total": expected,
        "d_J": list(report.d_J),
        "check": report.to_dict(),
    }


def levi_fiber(cfg: SpectralConfig) -> StratumDescriptor:
    spec = PartitionSpec(cfg.ranks, cfg.base_genus)
    return fixed_fiber(cfg, spec.levi_degrees(), moduli_dimensions(cfg)["dim_base"])


def parabolic_filtration(cfg: SpectralConfig, md, J):
    md = as_multidegree(cfg, md)
    if sum(md) != delta(cfg):
        raise ConfigError(f"multidegree must sum to delta = {delta(cfg)}, got {sum(md)}")
    return build_filtration(cfg, md, J)


def parabolic_uni_fiber(spec: PartitionSpec, cfg: SpectralConfig | None = None) -> StratumDescriptor:
    cfg = cfg or spec.config()
    if cfg.ranks != spec.ranks or cfg.base_genus != spec.genus:
        raise ConfigError("partition spec and configuration disagree")
    d = spec.line_degrees()
    g = spec.genus
    members = []
    for J in orderings(spec.s):
        rep = assumption_check(spec, J)
        k = [0] * spec.s
        for j, R in zip(J, r_J(spec.ranks, J)):
            k[j - 1] = R
        sym = LineBundleSymbol.make(cfg, base=LHAT, k_power=k, base_degrees=d)
        members.append(OrderingMember(
            tuple(J), rep.component_degrees(),
            tuple(sym.render(i) for i in range(1, spec.s + 1)),
            rep.passed, symbol_degree(cfg, sym),
        ))
    if not any(m.feasible for m in members):
        raise ConfigError(f"no ordering satisfies the feasibility inequalities for e = {spec.degrees}")
    dim = jacobian_fiber_dimension(cfg, cfg.node_ids)
    if dim != spec.delta_r() - spec.s + 1:
        raise IdentityViolation("parabolic_fiber_dimension", dim, spec.delta_r() - spec.s + 1)
    meta = {} if cfg.is_cartan else {"note": ORDERING_EXPONENT_NOTE}
    return StratumDescriptor(frozenset(), UNION, dim, members=tuple(members), metadata=meta)


def parabolic_dimension_audit(spec: PartitionSpec) -> dict:
    g = spec.genus
    base = sum(r * r * (g - 1) + 1 for r in spec.ranks)
    n = spec.n
    return brane_dimension_record(
        base,
        spec.delta_r() - spec.s + 1,
        2 * n * n * (g - 1) + 2,
        n * n * (g - 1) + 1,
    )


def partitions(n: int, min_part: int = 1) -> Iterable[tuple[int, ...]]:
    """Nondecreasing partitions of ``n`` (including the trivial one)."""
    if n == 0:
        yield ()
        return
    for first in range(min_part, n + 1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def proper_partitions(n: int) -> list[tuple[int, ...]]:
    return [p for p in partitions(n) if len(p) >= 2]
