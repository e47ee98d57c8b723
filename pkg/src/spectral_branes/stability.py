"""Subcurve stability of line-bundle spectral data.

Every pure one-dimensional subcurve of a totally reducible spectral curve is
a union ``Z_I`` of components.  For a line bundle the only rank-one quotient
of ``L|_{Z_I}`` is the restriction itself, so (semi)stability reduces to

    sum_{i in I} md_i  >  (n_I**2 - n_I)(g - 1)     (resp. >=)

over nonempty proper ``I``, where ``n_I = sum_{i in I} r_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from . import _kernels
from .curve_model import SpectralConfig, delta
from .divisors import as_multidegree, uni_multidegree
from .errors import ConfigError, IdentityViolation

STABLE = "stable"
SEMISTABLE = "strictly_semistable"
UNSTABLE = "unstable"

_CODES = {_kernels.STABLE: STABLE, _kernels.SEMISTABLE: SEMISTABLE, _kernels.UNSTABLE: UNSTABLE}


@dataclass(frozen=True)
class Witness:
    subset: tuple[int, ...]
    lhs: int
    threshold: int

    @property
    def kind(self) -> str:
        return "failed" if self.lhs < self.threshold else "tight"

    def to_dict(self) -> dict:
        return {"I": list(self.subset), "lhs": self.lhs, "threshold": self.threshold, "kind": self.kind}


@dataclass(frozen=True)
class StabilityVerdict:
    status: str
    witnesses: tuple[Witness, ...]
    total: int
    expected_total: int

    @property
    def total_ok(self) -> bool:
        return self.total == self.expected_total

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "total": self.total,
            "expected_total": self.expected_total,
            "total_ok": self.total_ok,
        }


def subset_threshold(weight: int, g: int) -> int:
    return (weight * weight - weight) * (g - 1)


def verdict_from_ledger(rows, total: int, expected_total: int) -> StabilityVerdict:
    """Classify ``(subset, lhs, threshold)`` rows; witnesses sorted by (size, subset)."""
    witnesses = sorted(
        (Witness(tuple(I), lhs, thr) for I, lhs, thr in rows if lhs <= thr),
        key=lambda w: (len(w.subset), w.subset),
    )
    if any(w.kind == "failed" for w in witnesses):
        status = UNSTABLE
    elif witnesses:
        status = SEMISTABLE
    else:
        status = STABLE
    return StabilityVerdict(status, tuple(witnesses), total, expected_total)


def schaub_check(cfg: SpectralConfig, md: Sequence[int]) -> StabilityVerdict:
    md = as_multidegree(cfg, md)
    g = cfg.base_genus
    rows = []
    for size in range(1, cfg.s):
        for I in combinations(range(1, cfg.s + 1), size):
            lhs = sum(md[i - 1] for i in I)
            weight = sum(cfg.rank(i) for i in I)
            rows.append((I, lhs, subset_threshold(weight, g)))
    return verdict_from_ledger(rows, sum(md), delta(cfg))


def classify_batch(cfg: SpectralConfig, mds) -> list[str]:
    """Status for each row of ``mds`` via the compiled subset kernel."""
    mds = np.atleast_2d(np.asarray(mds, dtype=np.int64))
    if mds.size and mds.shape[1] != cfg.s:
        raise ConfigError(f"multidegrees have {mds.shape[1]} entries, config has {cfg.s} components")
    codes = _kernels.classify(mds, np.asarray(cfg.ranks, dtype=np.int64), cfg.base_genus)
    return [_CODES[int(c)] for c in codes]


def uni_fiber_stability_sweep(cfg: SpectralConfig) -> StabilityVerdict:
    if not cfg.is_cartan:
        raise ConfigError("uni fibre stability is defined for Cartan configurations")
    verdict = schaub_check(cfg, uni_multidegree(cfg))
    if verdict.status != STABLE:
        raise IdentityViolation("uni_fiber_stable", verdict.status, STABLE, {"n": cfg.n, "g": cfg.base_genus})
    return verdict


def generalized_threshold(cfg: SpectralConfig, I: Sequence[int], s: int, d: int) -> int:
    """Threshold for the degree-``s*d`` moduli space, evaluated as printed."""
    I = _proper_subset(cfg, I)
    n = cfg.n
    n_I = sum(cfg.rank(i) for i in I)
    return s * d * n_I - (n * n * n_I - n_I * n_I * n) * (cfg.base_genus - 1)


def generalized_threshold_report(cfg: SpectralConfig, I: Sequence[int], s: int, d: int) -> dict:
    """Printed degree-``s*d`` threshold next to the degree-0 subcurve threshold.

    At ``d = 0`` the two disagree; both are reported rather than reconciled.
    """
    I = _proper_subset(cfg, I)
    n_I = sum(cfg.rank(i) for i in I)
    value = generalized_threshold(cfg, I, s, d)
    base = subset_threshold(n_I, cfg.base_genus)
    return {
        "I": list(I),
        "s": s,
        "d": d,
        "threshold": value,
        "degree0_threshold": base,
        "agrees_at_degree0": d != 0 or value == base,
    }


def _proper_subset(cfg: SpectralConfig, I) -> tuple[int, ...]:
    I = tuple(sorted(set(int(i) for i in I)))
    if not I or len(I) >= cfg.s or I[0] < 1 or I[-1] > cfg.s:
        raise ConfigError(f"subset {I} is not a nonempty proper subset of 1..{cfg.s}")
    return I
