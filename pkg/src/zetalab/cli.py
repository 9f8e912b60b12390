"""Command-line front end: ``zetalab <command> [options]``.

Every command builds a RunConfig, validates it completely, then runs.
Output goes to stdout (or --output) as json, csv or text; figures are
written only when --figure is given. Errors print one line to stderr and
exit with status 2 (bad configuration) or 1 (failure during computation).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .arithmetic import (
    MAX_SIEVE_LIMIT,
    a3_accelerated,
    a3_direct,
    correlation_sum,
    sieve_divisor_tables,
)
from .dirichlet import (
    CROSS_NUMERATOR,
    DIAGONAL_NUMERATOR,
    FACTORIAL_9,
    SIXTH_MOMENT_NUMERATOR,
    MainTermSpec,
    WeightPolynomial,
    afe_residual,
    conjecture_constants,
    j_main_term,
    k_main_term,
)
from .moments import (
    CSV_COLUMNS,
    KINDS,
    MomentEstimate,
    integrate_chi3,
    integrate_cross,
    integrate_I1,
    integrate_I2,
    integrate_jara,
    integrate_JN,
    integrate_KN,
    integrate_moment,
    local_slope_power_log,
    trend_report,
)
from .zeta_engine import TWO_PI, T_MIN, max_grid_step, sample_uniform_grid

COMMANDS = ("constants", "moment", "identity-check", "ktheorem", "jtheorem", "cross", "chi3",
            "jara", "afe-survey", "correlate", "zeta-grid", "trend")
FORMATS = ("json", "csv", "text")
FIGURE_COMMANDS = ("afe-survey", "correlate", "zeta-grid", "trend")
SCHEMA_ID = "zetalab-report/1"

DEFAULT_T = 1e4
DEFAULT_THETA = 0.25
DEFAULT_SIEVE_LIMIT = 2_000_000


class ConfigError(ValueError):
    """Invalid run configuration (exit status 2)."""


@dataclass
class RunConfig:
    command: str
    T: float = DEFAULT_T
    theta: float = DEFAULT_THETA
    k: int = 3
    poly: tuple = (1.0,)
    sieve_limit: int = DEFAULT_SIEVE_LIMIT
    cache_path: str | None = None
    output_format: str = "json"
    # command-specific
    t0: float = 10.0
    t1: float = 5000.0
    dt: float | None = None
    samples: int = 500
    x: int = 10_000
    h_max: int = 10
    prime_limit: int = 10_000_000
    series_depth: int = 16
    kind: str = "M1"
    T_list: tuple = (1e3, 1e4, 1e5)
    figure: str | None = None
    output: str | None = None

    def public(self) -> dict:
        """Fields that determine the numbers (no output destinations)."""
        out = asdict(self)
        for key in ("output", "figure"):
            out.pop(key)
        out["poly"] = list(self.poly)
        out["T_list"] = list(self.T_list)
        return out


def _finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite, got {value}")


def table_size_needed(cfg: RunConfig) -> int:
    """Largest n whose d(n) or d3(n) the command reads (0 if none)."""
    c = cfg.command
    if c in ("identity-check", "cross", "chi3"):
        return int(cfg.T // TWO_PI)
    if c in ("ktheorem", "jtheorem"):
        return int(math.floor(cfg.T**cfg.theta))
    if c == "afe-survey":
        return int(cfg.t1 // TWO_PI)
    if c == "correlate":
        return cfg.x + cfg.h_max
    if c == "trend":
        top = max(cfg.T_list)
        if cfg.kind in ("I1", "I2", "diag", "cross", "chi3"):
            return int(top // TWO_PI)
        if cfg.kind in ("KN", "JN"):
            return int(math.floor(top**cfg.theta))
    return 0


def validate(cfg: RunConfig) -> None:
    """Raise ConfigError on the first invalid field; nothing is computed here."""
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}")
    if cfg.output_format not in FORMATS:
        raise ConfigError(f"output format must be one of {FORMATS}, got {cfg.output_format!r}")
    for name in ("T", "theta", "t0", "t1"):
        _finite(name, getattr(cfg, name))
    if not 1 <= cfg.sieve_limit < MAX_SIEVE_LIMIT:
        raise ConfigError(f"sieve_limit must lie in [1, {MAX_SIEVE_LIMIT}), got {cfg.sieve_limit}")
    if not cfg.poly or not all(math.isfinite(c) for c in cfg.poly):
        raise ConfigError(f"poly must be a non-empty list of finite coefficients, got {list(cfg.poly)}")
    c = cfg.command
    if c in ("moment", "identity-check", "ktheorem", "jtheorem", "cross", "chi3", "jara") and not cfg.T > T_MIN:
        raise ConfigError(f"T must exceed {T_MIN}, got {cfg.T}")
    if c == "moment" and cfg.k not in (1, 2, 3):
        raise ConfigError(f"k must be 1, 2 or 3, got {cfg.k}")
    if c in ("ktheorem", "jtheorem") and not 0.0 < cfg.theta <= 1.0:
        raise ConfigError(f"theta must lie in (0, 1], got {cfg.theta}")
    if c == "jara" and not 0.0 <= cfg.theta <= 1.0:
        raise ConfigError(f"theta must lie in [0, 1], got {cfg.theta}")
    if c == "afe-survey":
        if not 0.0 < cfg.t0 < cfg.t1:
            raise ConfigError(f"need 0 < t0 < t1, got t0={cfg.t0}, t1={cfg.t1}")
        if cfg.samples < 2:
            raise ConfigError(f"samples must be >= 2, got {cfg.samples}")
    if c == "correlate":
        if cfg.x < 1 or cfg.h_max < 1:
            raise ConfigError(f"x and h_max must be >= 1, got x={cfg.x}, h_max={cfg.h_max}")
    if c == "zeta-grid":
        if not T_MIN <= cfg.t0 < cfg.t1:
            raise ConfigError(f"need {T_MIN} <= t0 < t1, got t0={cfg.t0}, t1={cfg.t1}")
        if cfg.dt is None or not cfg.dt > 0.0:
            raise ConfigError(f"dt must be positive, got {cfg.dt}")
        if cfg.dt > max_grid_step(cfg.t1):
            raise ConfigError(f"dt={cfg.dt} exceeds the resolving step {max_grid_step(cfg.t1):.6g} at t1={cfg.t1}")
        if cfg.cache_path is None:
            raise ConfigError("zeta-grid needs --cache PATH")
    if c == "constants":
        if not 2 <= cfg.prime_limit <= MAX_SIEVE_LIMIT:
            raise ConfigError(f"prime_limit must lie in [2, {MAX_SIEVE_LIMIT}], got {cfg.prime_limit}")
        if cfg.series_depth < 2:
            raise ConfigError(f"series_depth must be >= 2, got {cfg.series_depth}")
    if c == "trend":
        if cfg.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}, got {cfg.kind!r}")
        T_list = list(cfg.T_list)
        if len(T_list) < 2 or any(b <= a for a, b in zip(T_list, T_list[1:])):
            raise ConfigError(f"T_list must be strictly increasing with >= 2 entries, got {T_list}")
        if T_list[0] <= T_MIN:
            raise ConfigError(f"every T must exceed {T_MIN}, got {T_list[0]}")
        if cfg.kind in ("KN", "JN") and not 0.0 < cfg.theta <= 1.0:
            raise ConfigError(f"theta must lie in (0, 1], got {cfg.theta}")
        if cfg.kind == "jara" and not 0.0 <= cfg.theta <= 1.0:
            raise ConfigError(f"theta must lie in [0, 1], got {cfg.theta}")
    if cfg.figure and c not in FIGURE_COMMANDS:
        raise ConfigError(f"--figure is supported only for {', '.join(FIGURE_COMMANDS)}")
    need = table_size_needed(cfg)
    if need > cfg.sieve_limit:
        raise ConfigError(f"sieve_limit={cfg.sieve_limit} too small: this run reads divisor values up to {need}")


# --- commands -----------------------------------------------------------------
#
# Each returns a Report: a JSON-ready payload, csv rows with a fixed header,
# text lines, and optionally a figure callback.


@dataclass
class Report:
    payload: dict
    csv_header: list
    csv_rows: list
    text: list
    figure: object = None
    extra_files: list = field(default_factory=list)


def _table(cfg: RunConfig):
    # entries beyond what the run reads never influence a result
    return sieve_divisor_tables(max(1, table_size_needed(cfg)))


def _weight(cfg: RunConfig) -> WeightPolynomial:
    return WeightPolynomial(tuple(float(c) for c in cfg.poly))


def _estimates_report(estimates: list[MomentEstimate], extra: dict | None = None) -> Report:
    payload = {"estimates": [e.to_dict() for e in estimates]}
    payload.update(extra or {})
    text = []
    for e in estimates:
        line = f"{e.kind:6s} T={e.T:.6g}"
        if e.theta is not None:
            line += f" theta={e.theta:.6g}"
        line += f"  value={e.value.real:.12g}"
        if e.value.imag:
            line += f"{e.value.imag:+.12g}i"
        if e.main_term is not None:
            line += f"  main={e.main_term:.12g}"
        if e.ratio is not None:
            line += f"  ratio={e.ratio:.6f}"
        line += f"  quad_error={e.quad_error:.3g}"
        text.append(line)
    for key, value in (extra or {}).items():
        text.append(f"{key} = {value}")
    return Report(payload, CSV_COLUMNS, [e.csv_row() for e in estimates], text)


def cmd_constants(cfg: RunConfig) -> Report:
    direct = a3_direct(cfg.prime_limit)
    accel = a3_accelerated(cfg.series_depth)
    consts = conjecture_constants(accel)
    diff = abs(direct.value - accel.value)
    # bounds are on log a3; convert to a3 to first order
    combined = (direct.tail_bound + accel.tail_bound) * max(direct.value, accel.value)
    one = WeightPolynomial.constant(1.0)
    T_ref = 1e6
    log9 = T_ref * math.log(T_ref) ** 9
    k_bridge = 2.0 * k_main_term(MainTermSpec("K-theorem", 1.0, accel, one), T_ref) / (accel.value * log9)
    j_bridge = 2.0 * j_main_term(MainTermSpec("J-theorem", 1.0, accel, one), T_ref) / (accel.value * log9)
    fractions = {
        "sixth": Fraction(SIXTH_MOMENT_NUMERATOR, FACTORIAL_9),
        "diagonal": Fraction(DIAGONAL_NUMERATOR, FACTORIAL_9),
        "cross": Fraction(CROSS_NUMERATOR, FACTORIAL_9),
    }
    payload = {
        "a3": {
            m.method: {"value": m.value, "prime_limit": m.prime_limit, "tail_bound": m.tail_bound}
            for m in (direct, accel)
        },
        "ratios": {
            name: {"numerator": SIXTH_MOMENT_NUMERATOR if name == "sixth" else
                   DIAGONAL_NUMERATOR if name == "diagonal" else CROSS_NUMERATOR,
                   "over_9_factorial": f"{frac.numerator}/{frac.denominator}",
                   "decimal": float(frac)}
            for name, frac in fractions.items()
        },
        "c_sixth": consts.c_sixth,
        "c_diagonal": consts.c_diagonal,
        "c_cross": consts.c_cross,
        "checks": {
            "a3_difference": diff,
            "a3_combined_bound": combined,
            "a3_methods_agree": bool(diff <= combined),
            "diagonal_plus_cross_equals_sixth": fractions["diagonal"] + fractions["cross"] == fractions["sixth"],
            "k_bridge_theta1": k_bridge,
            "j_bridge_theta1": j_bridge,
            "k_bridge_target": float(fractions["sixth"]),
            "j_bridge_target": float(fractions["diagonal"]),
        },
    }
    rows = [
        ["a3_direct", direct.value, direct.tail_bound],
        ["a3_accelerated", accel.value, accel.tail_bound],
        ["42/9!", float(fractions["sixth"]), 0.0],
        ["28/9!", float(fractions["diagonal"]), 0.0],
        ["14/9!", float(fractions["cross"]), 0.0],
        ["c_sixth", consts.c_sixth, consts.c_sixth * accel.tail_bound],
        ["k_bridge_theta1", k_bridge, 0.0],
        ["j_bridge_theta1", j_bridge, 0.0],
    ]
    text = [
        f"a3 (direct, p <= {direct.prime_limit}) = {direct.value:.17g}  tail bound (log) {direct.tail_bound:.3g}",
        f"a3 (accelerated, depth {cfg.series_depth})   = {accel.value:.17g}  tail bound (log) {accel.tail_bound:.3g}",
        f"|difference| = {diff:.3g}  combined bound = {combined:.3g}  agree: {diff <= combined}",
        f"42/9! = {fractions['sixth']} = {float(fractions['sixth']):.17g}",
        f"28/9! = {fractions['diagonal']} = {float(fractions['diagonal']):.17g}",
        f"14/9! = {fractions['cross']} = {float(fractions['cross']):.17g}",
        f"28/9! + 14/9! == 42/9!: {payload['checks']['diagonal_plus_cross_equals_sixth']}",
        f"c_sixth = 42 a3 / 9! = {consts.c_sixth:.17g}",
        f"theta=1 bridge: 2K/(a3 T log^9 T) = {k_bridge:.17g}, 2J/(a3 T log^9 T) = {j_bridge:.17g}",
    ]
    return Report(payload, ["quantity", "value", "bound"], rows, text)


def cmd_moment(cfg: RunConfig) -> Report:
    return _estimates_report([integrate_moment(cfg.k, cfg.T)])


def cmd_identity_check(cfg: RunConfig) -> Report:
    table = _table(cfg)
    i1 = integrate_I1(cfg.T, table)
    i2 = integrate_I2(cfg.T, table)
    defect = abs(i2.value - i1.value.conjugate()) / abs(i1.value)
    return _estimates_report([i1, i2], {"conjugate_defect": defect})


def cmd_ktheorem(cfg: RunConfig) -> Report:
    return _estimates_report([integrate_KN(cfg.T, cfg.theta, _weight(cfg), _table(cfg))])


def cmd_jtheorem(cfg: RunConfig) -> Report:
    return _estimates_report([integrate_JN(cfg.T, cfg.theta, _weight(cfg), _table(cfg))])


def cmd_cross(cfg: RunConfig) -> Report:
    return _estimates_report([integrate_cross(cfg.T, _table(cfg))])


def cmd_chi3(cfg: RunConfig) -> Report:
    return _estimates_report([integrate_chi3(cfg.T, _table(cfg))])


def cmd_jara(cfg: RunConfig) -> Report:
    return _estimates_report([integrate_jara(cfg.T, cfg.theta)])


def cmd_afe_survey(cfg: RunConfig) -> Report:
    from . import plotting

    table = _table(cfg)
    t = np.geomspace(cfg.t0, cfg.t1, cfg.samples)
    r = np.asarray(afe_residual(t, table))
    i = int(np.argmax(r))
    payload = {
        "t0": cfg.t0, "t1": cfg.t1, "samples": cfg.samples,
        "max_residual": float(r[i]), "argmax_t": float(t[i]),
        "rows": [{"t": float(a), "residual": float(b)} for a, b in zip(t, r)],
    }
    text = [f"max |E|/log(2+t) over {cfg.samples} log-spaced t in [{cfg.t0:g}, {cfg.t1:g}]: "
            f"{r[i]:.12g} at t={t[i]:.12g}"]
    rows = [[float(a), float(b)] for a, b in zip(t, r)]
    return Report(payload, ["t", "residual"], rows, text,
                  figure=lambda path: plotting.plot_afe_survey(t, r, path))


def cmd_correlate(cfg: RunConfig) -> Report:
    from . import plotting

    table = _table(cfg)
    hs = list(range(1, cfg.h_max + 1))
    sums = [correlation_sum(table, cfg.x, h) for h in hs]
    payload = {"x": cfg.x, "rows": [{"h": h, "sum": s} for h, s in zip(hs, sums)]}
    text = [f"sum_(n<={cfg.x}) d3(n) d3(n+{h}) = {s}" for h, s in zip(hs, sums)]
    return Report(payload, ["x", "h", "sum"], [[cfg.x, h, s] for h, s in zip(hs, sums)], text,
                  figure=lambda path: plotting.plot_correlations(hs, sums, path))


def cmd_zeta_grid(cfg: RunConfig) -> Report:
    from . import plotting
    from .cache import write_cache

    grid = sample_uniform_grid(cfg.t0, cfg.t1, cfg.dt)
    write_cache(cfg.cache_path, grid)
    z = grid.z
    payload = {
        "cache_path": str(cfg.cache_path), "t_start": grid.t_start, "dt": grid.dt,
        "count": len(grid), "max_abs_z": float(np.max(np.abs(z))),
        "sign_changes": int(np.count_nonzero(np.signbit(z[1:]) != np.signbit(z[:-1]))),
    }
    text = [f"wrote {len(grid)} samples of Z on [{grid.t_start:g}, {grid.t[-1]:.12g}] step {grid.dt:g} "
            f"to {cfg.cache_path}",
            f"sign changes: {payload['sign_changes']}, max |Z| = {payload['max_abs_z']:.12g}"]
    rows = [[payload[k] for k in ("t_start", "dt", "count", "max_abs_z", "sign_changes")]]
    return Report(payload, ["t_start", "dt", "count", "max_abs_z", "sign_changes"], rows, text,
                  figure=lambda path: plotting.plot_zeta_grid(grid, path))


_LOG_POWER = {"M1": 1, "M2": 4, "M3": 9, "I1": 9, "I2": 9, "KN": 9, "JN": 9, "diag": 9,
              "cross": 9, "chi3": 9, "jara": 9}


def cmd_trend(cfg: RunConfig) -> Report:
    from . import plotting

    params = {}
    if cfg.kind in ("KN", "JN", "jara"):
        params["theta"] = cfg.theta
    if cfg.kind in ("KN", "JN"):
        params["weight"] = list(cfg.poly)
    need = table_size_needed(cfg)
    table = sieve_divisor_tables(need) if need else None
    report = trend_report(cfg.kind, cfg.T_list, params, table)
    power = _LOG_POWER[cfg.kind]
    T_list = [r.T for r in report.rows]
    # reference slope at the geometric centre of the T range
    reference = local_slope_power_log(math.exp(np.mean(np.log(T_list))), power)
    payload = report.to_dict()
    payload["reference_slope"] = reference
    payload["reference_power"] = power
    rows = [[report.kind, r.T, cfg.theta if cfg.kind in ("KN", "JN", "jara") else None,
             r.value, 0.0, r.main_term, r.ratio, r.quad_error] for r in report.rows]
    text = [f"{report.kind} T={r.T:.6g} value={r.value:.12g} main={r.main_term} ratio={r.ratio}"
            for r in report.rows]
    text.append(f"log-log slope {report.slope:.6f}; reference 1 + {power}/log T = {reference:.6f}")
    return Report(payload, CSV_COLUMNS, rows, text,
                  figure=lambda path: plotting.plot_trend(report, path))


HANDLERS = {
    "constants": cmd_constants,
    "moment": cmd_moment,
    "identity-check": cmd_identity_check,
    "ktheorem": cmd_ktheorem,
    "jtheorem": cmd_jtheorem,
    "cross": cmd_cross,
    "chi3": cmd_chi3,
    "jara": cmd_jara,
    "afe-survey": cmd_afe_survey,
    "correlate": cmd_correlate,
    "zeta-grid": cmd_zeta_grid,
    "trend": cmd_trend,
}


# --- rendering ----------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def render(cfg: RunConfig, report: Report) -> str:
    if cfg.output_format == "json":
        doc = {"schema": SCHEMA_ID, "command": cfg.command, "config": cfg.public(),
               "result": report.payload}
        return json.dumps(_jsonable(doc), indent=2, sort_keys=True, allow_nan=False) + "\n"
    if cfg.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.csv_header)
        for row in report.csv_rows:
            writer.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in row])
        return buf.getvalue()
    return "\n".join(report.text) + "\n"


# --- argument parsing ---------------------------------------------------------


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_like(text: str) -> int:
    """Accept 2000000 as well as 2e6."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(value)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="json")
    common.add_argument("--sieve-limit", type=_int_like, default=DEFAULT_SIEVE_LIMIT,
                        help="largest n for divisor tables (default 2e6)")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--figure", help="also render a PNG figure to this path")

    parser = _Parser(prog="zetalab", description="Numerical experiments on moments of zeta on the critical line.")
    parser.add_argument("--version", action="version", version=f"zetalab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_T(p):
        p.add_argument("--T", type=float, default=DEFAULT_T, help="upper limit of integration (default 1e4)")
        return p

    def with_theta(p, default=DEFAULT_THETA):
        p.add_argument("--theta", type=float, default=default, help="N = T^theta (default 0.25)")
        return p

    def with_poly(p):
        p.add_argument("--poly", type=_float_list, default=(1.0,),
                       help="weight P coefficients, constant term first, comma separated")
        return p

    p = sub.add_parser("constants", parents=[common], help="a3, 42/9! and consistency checks")
    p.add_argument("--prime-limit", type=_int_like, default=10_000_000)
    p.add_argument("--series-depth", type=int, default=16)

    p = with_T(sub.add_parser("moment", parents=[common], help="int |zeta|^(2k)"))
    p.add_argument("--k", type=int, default=3)

    with_T(sub.add_parser("identity-check", parents=[common], help="I1, I2 and |I2 - conj(I1)|/|I1|"))
    with_poly(with_theta(with_T(sub.add_parser("ktheorem", parents=[common], help="K_N(T) vs main term"))))
    with_poly(with_theta(with_T(sub.add_parser("jtheorem", parents=[common], help="J_N(T) vs main term"))))
    with_T(sub.add_parser("cross", parents=[common], help="cross-term integral vs 14 a3/9!"))
    with_T(sub.add_parser("chi3", parents=[common], help="chi^3 diagnostic integral"))
    with_theta(with_T(sub.add_parser("jara", parents=[common], help="int |zeta|^4 |sum n^it|^2")))

    p = sub.add_parser("afe-survey", parents=[common], help="AFE residual at log-spaced heights")
    p.add_argument("--t0", type=float, default=10.0)
    p.add_argument("--t1", type=float, default=5000.0)
    p.add_argument("--samples", type=int, default=500)

    p = sub.add_parser("correlate", parents=[common], help="sum d3(n) d3(n+h) for h = 1..h_max")
    p.add_argument("--x", type=_int_like, default=10_000)
    p.add_argument("--h-max", type=int, default=10)

    p = sub.add_parser("zeta-grid", parents=[common], help="sample Z on a uniform grid into a cache file")
    p.add_argument("--t0", type=float, default=10.0)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--cache", dest="cache_path", required=True)

    p = with_poly(with_theta(sub.add_parser("trend", parents=[common], help="integrals over increasing T")))
    p.add_argument("--kind", default="M1", help=f"one of {', '.join(KINDS)}")
    p.add_argument("--T-list", dest="T_list", type=_float_list, default=(1e3, 1e4, 1e5))
    return parser


def config_from_args(argv: list[str] | None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    return RunConfig(**{k: v for k, v in ns.items() if v is not None or k in ("output", "figure")})


def run(cfg: RunConfig) -> Report:
    validate(cfg)
    return HANDLERS[cfg.command](cfg)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        validate(cfg)
    except ConfigError as exc:
        print(f"zetalab: error: {exc}", file=sys.stderr)
        return 2
    try:
        report = HANDLERS[cfg.command](cfg)
        text = render(cfg, report)
        if cfg.output:
            Path(cfg.output).write_text(text)
        else:
            sys.stdout.write(text)
        if cfg.figure:
            report.figure(cfg.figure)
    except Exception as exc:  # every delegate failure becomes one line
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"zetalab: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
