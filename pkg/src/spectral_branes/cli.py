"""Command-line front end.

    spectral-branes <command> [--config PATH] [--format json|text] [...]

Commands: info, stability, strata, brane, parabolic, fm-check, audit-grid.
Exit codes: 0 success, 2 invalid input, 3 a checked identity failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from itertools import combinations

from . import branes, curve_model, normalization, parabolic, stability
from .audit import audit_grid
from .divisors import as_multidegree, uni_multidegree
from .errors import ConfigError, IdentityViolation

FORMAT_ENV = "SPECTRAL_BRANES_FORMAT"
COMMANDS = ("info", "stability", "strata", "brane", "parabolic", "fm-check", "audit-grid")

EXIT_OK, EXIT_INVALID, EXIT_IDENTITY = 0, 2, 3


@dataclass
class RunConfig:
    genus: int | None = None
    ranks: tuple[int, ...] | None = None
    nodes: list | None = None
    degrees: tuple[int, ...] | None = None
    ordering: tuple[int, ...] | None = None
    multidegree: tuple[int, ...] | None = None
    R: tuple[str, ...] | None = None
    degree_parameter: int | None = None
    fmt: str = "json"

    @classmethod
    def from_mapping(cls, data: dict, fmt: str = "json") -> "RunConfig":
        def ints(key):
            val = data.get(key)
            if val is None:
                return None
            try:
                return tuple(int(x) for x in val)
            except (TypeError, ValueError):
                raise ConfigError(f"{key!r} must be a list of integers") from None

        known = {"genus", "ranks", "nodes", "degrees", "ordering", "multidegree", "R", "d"}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        R = data.get("R")
        return cls(
            genus=int(data["genus"]) if "genus" in data else None,
            ranks=ints("ranks"),
            nodes=data.get("nodes"),
            degrees=ints("degrees"),
            ordering=ints("ordering"),
            multidegree=ints("multidegree"),
            R=tuple(str(x) for x in R) if R is not None else None,
            degree_parameter=int(data["d"]) if "d" in data else None,
            fmt=fmt,
        )

    def spectral_config(self) -> curve_model.SpectralConfig:
        if self.genus is None or self.ranks is None:
            raise ConfigError("config needs 'genus' and 'ranks'")
        data = {"genus": self.genus, "ranks": list(self.ranks)}
        if self.nodes is not None:
            data["nodes"] = self.nodes
        return curve_model.config_from_mapping(data)


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _parse_box(text: str) -> tuple[int, int]:
    vals = _parse_ints(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"--box expects lo,hi; got {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spectral-branes", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON config file ('-' for stdin)")
    parser.add_argument("--format", choices=("json", "text"), default=None,
                        help=f"output format (default from ${FORMAT_ENV}, else json)")
    parser.add_argument("--cap", type=int, default=normalization.DEFAULT_CAP,
                        help="node-count cap for explicit strata enumeration")
    parser.add_argument("--box", type=_parse_box, default=None, help="feasibility search box lo,hi")
    parser.add_argument("--mode", choices=("by_profile", "explicit"), default="by_profile",
                        help="strata enumeration mode")
    parser.add_argument("--genus", type=int, help="override config genus")
    parser.add_argument("--ranks", type=_parse_ints, help="override config ranks, e.g. 1,1,1")
    parser.add_argument("--multidegree", type=_parse_ints, help="override config multidegree")
    parser.add_argument("--degrees", type=_parse_ints, help="override config bundle degrees e_i")
    parser.add_argument("--ordering", type=_parse_ints, help="override config ordering J")
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--max-g", type=int, default=5)
    parser.add_argument("--max-partition-n", type=int, default=8)
    return parser


def load_run_config(args) -> RunConfig:
    fmt = args.format or os.environ.get(FORMAT_ENV, "json")
    if fmt not in ("json", "text"):
        raise ConfigError(f"unknown format {fmt!r}")
    data = {}
    if args.config:
        try:
            if args.config == "-":
                data = json.load(sys.stdin)
            else:
                with open(args.config) as fh:
                    data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    rc = RunConfig.from_mapping(data, fmt)
    for name in ("genus", "ranks", "multidegree", "degrees", "ordering"):
        val = getattr(args, name)
        if val is not None:
            setattr(rc, name, val)
    return rc


def cmd_info(rc, args) -> dict:
    return curve_model.info(rc.spectral_config())


def cmd_stability(rc, args) -> dict:
    cfg = rc.spectral_config()
    if rc.multidegree is None:
        raise ConfigError("stability needs a 'multidegree'")
    out = {"multidegree": list(rc.multidegree), "verdict": stability.schaub_check(cfg, rc.multidegree).to_dict()}
    if rc.degree_parameter is not None:
        out["generalized_thresholds"] = [
            stability.generalized_threshold_report(cfg, I, cfg.s, rc.degree_parameter)
            for size in range(1, cfg.s) for I in combinations(range(1, cfg.s + 1), size)
        ]
    return out


def cmd_strata(rc, args) -> dict:
    cfg = rc.spectral_config()
    rows = normalization.strata_report(cfg, args.mode, args.cap)
    return {"mode": args.mode, "count": len(rows), "strata": rows}


def cmd_brane(rc, args) -> dict:
    cfg = rc.spectral_config()
    if not cfg.is_cartan:
        raise ConfigError("brane expects a Cartan configuration; use 'parabolic' for other partitions")
    md = rc.multidegree if rc.multidegree is not None else uni_multidegree(cfg)
    J = rc.ordering if rc.ordering is not None else tuple(range(1, cfg.s + 1))
    R = rc.R if rc.R is not None else ()
    return {
        "cartan_fiber": branes.cartan_fiber(cfg).to_dict(),
        "uni_fiber": branes.uni_fiber(cfg).to_dict(),
        "filtration": branes.filtration(cfg, as_multidegree(cfg, md), J).to_dict(),
        "b_divisors": branes.b_divisors_report(cfg, R, J),
        "uni_stratum_candidates": branes.uni_stratum_candidates(cfg, R) if R else [],
        "dimension_audit": branes.dimension_audit(cfg),
    }


def cmd_parabolic(rc, args) -> dict:
    cfg = rc.spectral_config()
    spec = parabolic.PartitionSpec(cfg.ranks, cfg.base_genus, rc.degrees)
    out = {
        "ranks": list(spec.ranks),
        "genus": spec.genus,
        "levi_fiber": parabolic.levi_fiber(cfg).to_dict(),
        "dimension_audit": parabolic.parabolic_dimension_audit(spec),
    }
    if len(set(spec.ranks)) == 1:
        out["mi_construction"] = parabolic.mi_construction(spec.ranks, spec.genus)
    if rc.degrees is not None:
        orders = [rc.ordering] if rc.ordering is not None else list(branes.orderings(spec.s))
        out["feasibility"] = [parabolic.assumption_check(spec, J).to_dict() for J in orders]
        if any(row["pass"] for row in out["feasibility"]) or rc.ordering is None:
            try:
                out["uni_fiber"] = parabolic.parabolic_uni_fiber(spec, cfg).to_dict()
            except ConfigError as exc:
                out["uni_fiber"] = {"error": str(exc)}
    if args.box is not None:
        found = parabolic.find_feasible(spec, args.box)
        out["find_feasible"] = {"box": list(args.box), "count": len(found),
                                "witnesses": [{"e": list(e), "ordering": list(J)} for e, J in found]}
    if rc.multidegree is not None:
        J = rc.ordering if rc.ordering is not None else tuple(range(1, cfg.s + 1))
        out["filtration"] = parabolic.parabolic_filtration(cfg, rc.multidegree, J).to_dict()
    return out


def cmd_fm_check(rc, args) -> dict:
    cfg = rc.spectral_config()
    return branes.fm_support_match(cfg)


def cmd_audit_grid(rc, args) -> dict:
    return audit_grid(args.max_n, args.max_g, args.max_partition_n)


HANDLERS = {
    "info": cmd_info,
    "stability": cmd_stability,
    "strata": cmd_strata,
    "brane": cmd_brane,
    "parabolic": cmd_parabolic,
    "fm-check": cmd_fm_check,
    "audit-grid": cmd_audit_grid,
}


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _flat(val) -> bool:
    return isinstance(val, list) and all(not isinstance(x, (dict, list)) for x in val)


def _scalar(val) -> str:
    if isinstance(val, list):
        return "(" + ", ".join(_scalar(v) for v in val) + ")"
    if isinstance(val, bool):
        return "true" if val else "false"
    if val is None:
        return "-"
    return str(val)


def emit(report: dict, fmt: str) -> str:
    if fmt == "text":
        return render_text(report)
    return json.dumps(report, indent=2, sort_keys=True)


def run(command: str, rc: RunConfig, args=None) -> tuple[dict, int]:
    """Dispatch ``command``; returns the report and the exit code."""
    if command not in HANDLERS:
        return {"error": f"unknown command {command!r}"}, EXIT_INVALID
    args = args or build_parser().parse_args([command])
    try:
        report = HANDLERS[command](rc, args)
    except IdentityViolation as exc:
        return {"error": "identity violation", "identity": exc.name,
                "lhs": repr(exc.lhs), "rhs": repr(exc.rhs)}, EXIT_IDENTITY
    except ConfigError as exc:
        return {"error": str(exc)}, EXIT_INVALID
    report = {"command": command, **report}
    if command == "audit-grid" and not report["ok"]:
        return report, EXIT_IDENTITY
    return report, EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rc = load_run_config(args)
    except ConfigError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INVALID
    report, code = run(args.command, rc, args)
    stream = sys.stdout if code == EXIT_OK or "error" not in report else sys.stderr
    print(emit(report, rc.fmt), file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
