"""Grid sweeps re-checking every exact identity the engine relies on."""

from __future__ import annotations

from itertools import permutations

from .branes import cartan_fiber, dimension_audit, filtration, fm_support_match
from .curve_model import arithmetic_genus, build_cartan_config, delta
from .divisors import uni_multidegree
from .errors import IdentityViolation
from .normalization import admissible_multidegrees, normalize
from .parabolic import PartitionSpec, mi_construction, parabolic_dimension_audit, proper_partitions
from .stability import uni_fiber_stability_sweep


def _run(check, name, context, failures, counter):
    counter[name] = counter.get(name, 0) + 1
    try:
        ok = check()
    except IdentityViolation as exc:
        failures.append({"check": name, **context, "lhs": repr(exc.lhs), "rhs": repr(exc.rhs)})
        return
    if ok is False:
        failures.append({"check": name, **context})


def audit_grid(max_n: int = 6, max_g: int = 5, max_partition_n: int = 8) -> dict:
    """Sweep Cartan configurations ``2 <= n <= max_n, 2 <= g <= max_g`` and all
    partitions of ``n <= max_partition_n``; collect every failed identity."""
    failures: list[dict] = []
    counts: dict[str, int] = {}
    for n in range(2, max_n + 1):
        for g in range(2, max_g + 1):
            cfg = build_cartan_config(n, g)
            ctx = {"n": n, "g": g}
            _run(lambda: arithmetic_genus(cfg) == 1 + n * n * (g - 1), "genus", ctx, failures, counts)
            _run(lambda: len(cfg.nodes) == delta(cfg), "node_count", ctx, failures, counts)
            _run(lambda: uni_fiber_stability_sweep(cfg).status == "stable", "uni_stability", ctx, failures, counts)
            _run(
                lambda: admissible_multidegrees(cfg, normalize(cfg, cfg.node_ids))["unique_multidegree"] == [0] * n,
                "cartan_uniqueness", ctx, failures, counts,
            )
            _run(lambda: cartan_fiber(cfg).degrees == (0,) * n, "cartan_fiber", ctx, failures, counts)
            _run(lambda: dimension_audit(cfg)["lagrangian_by_count"], "dimension", ctx, failures, counts)
            _run(lambda: fm_support_match(cfg)["match"], "fm_support", ctx, failures, counts)
            md = uni_multidegree(cfg)
            _run(
                lambda: all(sum(filtration(cfg, md, J).quotient_degrees) == 0
                            for J in permutations(range(1, n + 1))),
                "uni_filtration", ctx, failures, counts,
            )
    for n in range(2, max_partition_n + 1):
        for ranks in proper_partitions(n):
            for g in range(2, max_g + 1):
                spec = PartitionSpec(ranks, g)
                ctx = {"ranks": list(ranks), "g": g}
                _run(
                    lambda: spec.delta_r() + sum(r * r * (g - 1) for r in ranks) == n * n * (g - 1),
                    "partition_identity", ctx, failures, counts,
                )
                _run(lambda: parabolic_dimension_audit(spec)["lagrangian_by_count"],
                     "parabolic_dimension", ctx, failures, counts)
                if len(set(ranks)) == 1:
                    _run(lambda: mi_construction(ranks, g)["check"]["pass"], "mi_construction", ctx, failures, counts)
    return {
        "bounds": {"max_n": max_n, "max_g": max_g, "max_partition_n": max_partition_n},
        "checks": dict(sorted(counts.items())),
        "failures": failures,
        "ok": not failures,
    }
