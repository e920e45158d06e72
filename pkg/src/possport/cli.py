"""Command-line front end: ``possport {moments,allocate,sweep} --config run.json``.

The configuration is a JSON document; see ``configs/minimal.json`` and the
README for the schema.  Exit codes: 0 success, 2 configuration error,
3 solver or domain error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import allocation as alloc
from .errors import (BoundarySolutionError, ConfigError, ConvergenceError, DomainError,
                     PossportError, SingularError)
from .fuzzy import (Crisp, FuzzyNumber, Trapezoidal, Triangular, WeightingFunction, central_moment,
                    expected_value, power, triangular_closed_moments)
from .quadrature import DEFAULT_ORDER, MAX_ORDER, gauss_legendre_01
from .randvar import DiscreteRandomVariable
from .utility import UtilityFunction, cara, crra, hara

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3

CSV_HEADER = ("k", "ef_b", "var_b", "m3_b", "mz", "alpha_exact", "alpha_approx",
              "term1", "term2", "abs_err", "rel_err", "status")
MOMENTS_HEADER = ("quantity", "quadrature", "closed_form", "abs_diff")


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    wealth0: float
    risk_free_rate: float
    risky_return: FuzzyNumber
    utility: UtilityFunction
    weighting: WeightingFunction = dataclasses.field(default_factory=power)
    background_risk: Optional[DiscreteRandomVariable] = None
    quadrature_order: int = DEFAULT_ORDER
    solver_tol: float = alloc.SOLVER_TOL
    k_values: Optional[Tuple[float, ...]] = None

    @property
    def w(self) -> float:
        """Future wealth of the riskless strategy, w0 (1 + r)."""
        return self.wealth0 * (1.0 + self.risk_free_rate)

    @property
    def excess_return(self) -> FuzzyNumber:
        return self.risky_return.shift(-self.risk_free_rate)

    @property
    def rule(self):
        return gauss_legendre_01(self.quadrature_order)

    def model(self):
        if self.background_risk is None:
            return alloc.StandardModel(self.w, self.excess_return, self.weighting, self.utility, self.rule)
        return alloc.MixedModel(self.w, self.excess_return, self.weighting, self.utility,
                                self.background_risk, self.rule)


_MISSING = object()


def _obj(value, path):
    if not isinstance(value, dict):
        raise ConfigError(path, f"expected an object, got {type(value).__name__}")
    return value


def _no_extra(d, allowed, path):
    extra = sorted(set(d) - set(allowed))
    if extra:
        raise ConfigError(f"{path}.{extra[0]}" if path else extra[0], "unknown field")


def _num(d, key, path, default=_MISSING):
    where = f"{path}.{key}" if path else key
    if key not in d:
        if default is _MISSING:
            raise ConfigError(where, "missing required field")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(where, f"expected a finite number, got {v!r}")
    return float(v)


def _num_list(d, key, path):
    where = f"{path}.{key}"
    if key not in d:
        raise ConfigError(where, "missing required field")
    v = d[key]
    if not isinstance(v, list) or not v:
        raise ConfigError(where, "expected a non-empty list of numbers")
    out = []
    for i, x in enumerate(v):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise ConfigError(f"{where}[{i}]", f"expected a finite number, got {x!r}")
        out.append(float(x))
    return tuple(out)


def _build(path, factory, *args):
    try:
        return factory(*args)
    except (TypeError, ValueError) as exc:
        raise ConfigError(path, str(exc)) from None


def _spreads(spec, path):
    out = []
    for key in ("left_spread", "right_spread"):
        v = _num(spec, key, path)
        if v < 0.0:
            raise ConfigError(f"{path}.{key}", f"must be >= 0, got {v!r}")
        out.append(v)
    return out


def _parse_fuzzy(spec, path):
    spec = _obj(spec, path)
    shape = spec.get("shape")
    if shape == "triangular":
        _no_extra(spec, ("shape", "peak", "left_spread", "right_spread"), path)
        return _build(path, Triangular, _num(spec, "peak", path), *_spreads(spec, path))
    if shape == "trapezoidal":
        _no_extra(spec, ("shape", "core", "left_spread", "right_spread"), path)
        core = _num_list(spec, "core", path)
        if len(core) != 2 or core[0] > core[1]:
            raise ConfigError(f"{path}.core", "expected [low, high] with low <= high")
        return _build(path, Trapezoidal, core[0], core[1], *_spreads(spec, path))
    if shape == "crisp":
        _no_extra(spec, ("shape", "value"), path)
        return _build(path, Crisp, _num(spec, "value", path))
    raise ConfigError(f"{path}.shape", f"expected triangular, trapezoidal or crisp, got {shape!r}")


def _parse_weighting(spec, path):
    spec = _obj(spec, path)
    _no_extra(spec, ("kind", "exponent"), path)
    if spec.get("kind", "power") != "power":
        raise ConfigError(f"{path}.kind", f"only 'power' is supported, got {spec.get('kind')!r}")
    return _build(f"{path}.exponent", power, _num(spec, "exponent", path, 2.0))


def _positive(spec, key, path):
    v = _num(spec, key, path)
    if not v > 0.0:
        raise ConfigError(f"{path}.{key}", f"must be > 0, got {v!r}")
    return v


def _parse_utility(spec, path):
    spec = _obj(spec, path)
    family = spec.get("family")
    if family == "hara":
        _no_extra(spec, ("family", "zeta", "eta", "gamma"), path)
        zeta, eta, gamma = (_num(spec, key, path) for key in ("zeta", "eta", "gamma"))
        if gamma == 0.0:
            raise ConfigError(f"{path}.gamma", "must be != 0")
        if (zeta if gamma == 1.0 else zeta * (1.0 - gamma) / gamma) <= 0.0:
            raise ConfigError(f"{path}.zeta", "sign must make u increasing: zeta*(1-gamma)/gamma > 0 "
                              "(zeta > 0 when gamma = 1)")
        return _build(path, hara, zeta, eta, gamma)
    if family == "crra":
        _no_extra(spec, ("family", "gamma"), path)
        return _build(path, crra, _positive(spec, "gamma", path))
    if family == "cara":
        _no_extra(spec, ("family", "a"), path)
        return _build(path, cara, _positive(spec, "a", path))
    raise ConfigError(f"{path}.family", f"expected hara, crra or cara, got {family!r}")


def _parse_distribution(spec, path):
    spec = _obj(spec, path)
    _no_extra(spec, ("outcomes", "probabilities"), path)
    z = _num_list(spec, "outcomes", path)
    p = _num_list(spec, "probabilities", path)
    if len(z) != len(p):
        raise ConfigError(f"{path}.probabilities", "must have the same length as outcomes")
    if any(x < 0.0 for x in p):
        raise ConfigError(f"{path}.probabilities", "probabilities must be >= 0")
    if abs(math.fsum(p) - 1.0) > 1e-12:
        raise ConfigError(f"{path}.probabilities", f"probabilities must sum to 1, got {math.fsum(p)!r}")
    return _build(path, DiscreteRandomVariable, z, p)


TOP_LEVEL = ("wealth0", "risk_free_rate", "risky_return", "weighting", "utility", "background_risk",
             "quadrature_order", "solver_tol", "sweep")


def config_from_dict(doc) -> RunConfig:
    doc = _obj(doc, "<root>")
    _no_extra(doc, TOP_LEVEL, "")
    for key in ("risky_return", "utility"):
        if key not in doc:
            raise ConfigError(key, "missing required field")
    order = _num(doc, "quadrature_order", "", float(DEFAULT_ORDER))
    if order != int(order) or not 1 <= order <= MAX_ORDER:
        raise ConfigError("quadrature_order", f"expected an integer in [1, {MAX_ORDER}], got {order!r}")
    tol = _num(doc, "solver_tol", "", alloc.SOLVER_TOL)
    if tol <= 0.0:
        raise ConfigError("solver_tol", "must be > 0")
    k_values = None
    if "sweep" in doc:
        sweep = _obj(doc["sweep"], "sweep")
        _no_extra(sweep, ("k_values",), "sweep")
        k_values = _num_list(sweep, "k_values", "sweep")
        for i, k in enumerate(k_values):
            if k <= 0.0:
                raise ConfigError(f"sweep.k_values[{i}]", f"k must be > 0, got {k!r}")
    wealth0 = _num(doc, "wealth0", "")
    rate = _num(doc, "risk_free_rate", "", 0.0)
    if rate <= -1.0:
        raise ConfigError("risk_free_rate", "must be > -1")
    background = doc.get("background_risk")
    cfg = RunConfig(
        wealth0=wealth0,
        risk_free_rate=rate,
        risky_return=_parse_fuzzy(doc["risky_return"], "risky_return"),
        weighting=_parse_weighting(doc.get("weighting", {}), "weighting"),
        utility=_parse_utility(doc["utility"], "utility"),
        background_risk=None if background is None else _parse_distribution(background, "background_risk"),
        quadrature_order=int(order),
        solver_tol=tol,
        k_values=k_values,
    )
    _check_model(cfg)
    return cfg


def _check_model(cfg):
    try:
        cfg.model()
    except DomainError as exc:
        raise ConfigError("wealth0", str(exc)) from None
    except ValueError as exc:
        raise ConfigError("risky_return", str(exc)) from None


def parse_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<document>", f"invalid JSON: {exc}") from None
    return config_from_dict(doc)


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("--config", str(exc)) from None
    return parse_config(text)


def _fuzzy_to_dict(A):
    if isinstance(A, Triangular):
        return {"shape": "triangular", "peak": A.peak, "left_spread": A.left, "right_spread": A.right}
    if isinstance(A, Trapezoidal):
        return {"shape": "trapezoidal", "core": [A.core_low, A.core_high],
                "left_spread": A.left, "right_spread": A.right}
    if isinstance(A, Crisp):
        return {"shape": "crisp", "value": A.value}
    raise TypeError(f"cannot serialize {A!r}")


def config_to_dict(cfg: RunConfig) -> dict:
    u = cfg.utility
    if u.family == "hara":
        uspec = dict(zip(("zeta", "eta", "gamma"), u.params))
    elif u.family == "crra":
        uspec = {"gamma": u.params[0]}
    elif u.family == "cara":
        uspec = {"a": u.params[0]}
    else:
        raise TypeError(f"cannot serialize utility family {u.family!r}")
    if cfg.weighting.kind != "power":
        raise TypeError("cannot serialize a custom weighting density")
    doc = {
        "wealth0": cfg.wealth0,
        "risk_free_rate": cfg.risk_free_rate,
        "risky_return": _fuzzy_to_dict(cfg.risky_return),
        "weighting": {"kind": "power", "exponent": cfg.weighting.exponent},
        "utility": {"family": u.family, **uspec},
        "quadrature_order": cfg.quadrature_order,
        "solver_tol": cfg.solver_tol,
    }
    if cfg.background_risk is not None:
        doc["background_risk"] = {"outcomes": list(cfg.background_risk.outcomes),
                                  "probabilities": list(cfg.background_risk.probabilities)}
    if cfg.k_values is not None:
        doc["sweep"] = {"k_values": list(cfg.k_values)}
    return doc


def dump_config(cfg: RunConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# jobs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResultRow:
    k: float
    ef_b: Optional[float] = None
    var_b: Optional[float] = None
    m3_b: Optional[float] = None
    mz: Optional[float] = None
    alpha_exact: Optional[float] = None
    alpha_approx: Optional[float] = None
    term1: Optional[float] = None
    term2: Optional[float] = None
    abs_err: Optional[float] = None
    rel_err: Optional[float] = None
    status: str = "ok"

    def values(self):
        return tuple(getattr(self, name) for name in CSV_HEADER)


def row_from_report(k, rep: alloc.AllocationReport) -> ResultRow:
    return ResultRow(k, rep.ef_b, rep.var_b, rep.m3_b, rep.mz, rep.alpha_exact, rep.alpha_approx,
                     rep.first_order_term, rep.second_order_term, rep.abs_error, rep.rel_error)


@dataclass(frozen=True)
class MomentsTable:
    rows: Tuple[Tuple[str, float, Optional[float], Optional[float]], ...]


def run_moments(cfg: RunConfig) -> MomentsTable:
    B, f, rule = cfg.excess_return, cfg.weighting, cfg.rule
    quad = (expected_value(B, f, rule), central_moment(B, f, 2, rule), central_moment(B, f, 3, rule))
    closed = (None, None, None)
    if isinstance(B, Triangular) and f == power(2):
        closed = triangular_closed_moments(B.peak, B.left, B.right)
    elif isinstance(B, Crisp):
        closed = (B.value, 0.0, 0.0)
    names = ("mean", "variance", "third_central")
    rows = tuple(
        (name, q, c, None if c is None else abs(q - c)) for name, q, c in zip(names, quad, closed)
    )
    return MomentsTable(rows)


def run_allocate(cfg: RunConfig) -> alloc.AllocationReport:
    return alloc.allocate(cfg.model(), cfg.solver_tol)


_STATUS = (
    ((DomainError, BoundarySolutionError), "infeasible"),
    ((SingularError,), "singular"),
    ((ConvergenceError,), "no_convergence"),
)


def _status_for(exc):
    for types, tag in _STATUS:
        if isinstance(exc, types):
            return tag
    return "error"


def _sweep_row(base, k, tol):
    try:
        m = base.with_premium(k)
    except (PossportError, ValueError) as exc:
        return ResultRow(k, status=_status_for(exc))
    try:
        return row_from_report(k, alloc.allocate(m, tol))
    except PossportError as exc:
        status = _status_for(exc)
    mz = getattr(m, "mz", None)
    try:
        approx = alloc.approx_mixed(m) if mz is not None else alloc.approx_standard(m)
    except PossportError:
        return ResultRow(k, m.ef_b, m.var_b, m.m3_b, mz, status=status)
    return ResultRow(k, m.ef_b, m.var_b, m.m3_b, mz, None, approx.value, approx.first_term,
                     approx.second_term, status=status)


def run_sweep(cfg: RunConfig) -> List[ResultRow]:
    """One row per premium k, with ``B_k = k + A`` for the centered part ``A``.

    Per-k failures are tagged in the status column and do not stop the run.
    """
    if not cfg.k_values:
        raise ConfigError("sweep.k_values", "sweep requires a non-empty list of k values")
    base = cfg.model()
    return [_sweep_row(base, k, cfg.solver_tol) for k in sorted(cfg.k_values)]


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def fmt_real(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(float(x), ".12g")


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_real(v) for v in row])
    return buf.getvalue()


def _table(header, rows):
    cells = [list(header)] + [[fmt_real(v) if v is not None else "n/a" for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(wd) for c, wd in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * wd for wd in widths))
    return "\n".join(lines) + "\n"


def emit_report(obj, fmt: str = "table") -> str:
    """Render an AllocationReport, a list of ResultRow, or a MomentsTable."""
    if fmt not in ("table", "csv"):
        raise ValueError(f"format must be 'table' or 'csv', got {fmt!r}")
    if isinstance(obj, MomentsTable):
        header, rows = MOMENTS_HEADER, obj.rows
        if fmt == "csv":
            rows = [(n, q, "n/a" if c is None else c, "n/a" if d is None else d) for n, q, c, d in rows]
    else:
        if isinstance(obj, alloc.AllocationReport):
            obj = [row_from_report(obj.ef_b, obj)]
        header, rows = CSV_HEADER, [r.values() for r in obj]
    return _csv(header, rows) if fmt == "csv" else _table(header, rows)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="possport",
                                     description="Possibilistic portfolio choice: moments and optimal allocation.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("moments", "possibilistic moments of the excess return"),
                        ("allocate", "exact and approximate optimal allocation"),
                        ("sweep", "allocation over a grid of risk premia k")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, metavar="PATH", help="JSON run configuration")
        p.add_argument("--format", choices=("table", "csv"), default="table")
        p.add_argument("--out", metavar="PATH", help="output file (default: standard output)")
        p.add_argument("--quadrature-order", type=int, metavar="N", help="override quadrature_order")
        p.add_argument("--tol", type=float, metavar="X", help="override solver_tol")
    return parser


def _apply_overrides(cfg, args):
    changes = {}
    if args.quadrature_order is not None:
        if not 1 <= args.quadrature_order <= MAX_ORDER:
            raise ConfigError("--quadrature-order", f"expected an integer in [1, {MAX_ORDER}]")
        changes["quadrature_order"] = args.quadrature_order
    if args.tol is not None:
        if not (math.isfinite(args.tol) and args.tol > 0.0):
            raise ConfigError("--tol", "must be a positive number")
        changes["solver_tol"] = args.tol
    return dataclasses.replace(cfg, **changes) if changes else cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _apply_overrides(load_config(args.config), args)
        if args.command == "moments":
            text = emit_report(run_moments(cfg), args.format)
        elif args.command == "allocate":
            text = emit_report(run_allocate(cfg), args.format)
        else:
            text = emit_report(run_sweep(cfg), args.format)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PossportError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
