"""Empirical integrals on the critical line and their predicted main terms.

Notation on the line s = 1/2 + it, with Z = Z(t) and theta = theta(t):

    zeta(s)   = exp(-i theta) Z
    chi(1-s)  = exp(2i theta)        (|chi| = 1)
    D(s)      = truncated divisor sum, D(1-s) = conj(D(s))

Kinds:

    M1, M2, M3  int |zeta|^(2k)
    I1          int chi(1-s) zeta^4 D(1-s)
    I2          int chi(1-s)^3 zeta^4 D(s)
    KN          int |zeta|^2 zeta^2 D_N(1-s, P)
    JN          int |zeta|^2 |D_N(s, P)|^2
    diag        2 int |zeta|^2 |D(s)|^2
    cross       2 Re int chi(1-s) D(1-s) D(s)^2
    chi3        2 Re int chi(1-s)^3 D(s)^3
    jara        int |zeta|^4 |sum_{n <= N} n^(it)|^2

All integrals run over [lower, T] in t with lower = 1 by default.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .arithmetic import DivisorTable, EulerProductValue, a3_accelerated
from .dirichlet import (
    MainTermSpec,
    WeightPolynomial,
    _masked_power_sum,
    conjecture_constants,
    cutoff_index,
    d_n_weights,
    d_truncated,
    j_main_term,
    k_main_term,
)
from .quadrature import QuadratureConfig, adaptive_integrate
from .zeta_engine import T_MIN, TWO_PI, critical_values

KINDS = ("M1", "M2", "M3", "I1", "I2", "KN", "JN", "diag", "cross", "chi3", "jara")
REAL_NONNEGATIVE = ("M1", "M2", "M3", "JN", "diag", "jara")
CUTOFF_KINDS = ("I1", "I2", "diag", "cross", "chi3")
DEFAULT_LOWER = 1.0


@lru_cache(maxsize=1)
def default_a3() -> EulerProductValue:
    return a3_accelerated()


@dataclass
class MomentEstimate:
    kind: str
    T: float
    theta: float | None
    value: complex
    main_term: float | None
    ratio: float | None
    quad_error: float
    lower: float = DEFAULT_LOWER
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["value"] = [self.value.real, self.value.imag]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "MomentEstimate":
        data = dict(data)
        re, im = data.pop("value")
        return cls(value=complex(re, im), **data)

    def csv_row(self) -> list:
        return [self.kind, self.T, self.theta, self.value.real, self.value.imag,
                self.main_term, self.ratio, self.quad_error]


CSV_COLUMNS = ["kind", "T", "theta", "value_re", "value_im", "main_term", "ratio", "quad_error"]


# --- integrands -------------------------------------------------------------


def _zeta_parts(t: np.ndarray):
    z, th = critical_values(t)
    return z, th


def make_integrand(kind: str, table: DivisorTable | None = None, theta: float | None = None,
                   weight: WeightPolynomial | None = None, T: float | None = None) -> Callable:
    """Vectorized integrand t -> value for one kind.

    KN, JN and jara need theta and T (N = T^theta); KN and JN also a weight.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown integral kind {kind!r}; expected one of {KINDS}")
    if kind in ("M1", "M2", "M3"):
        power = 2 * int(kind[1])

        def f(t):
            z, _ = _zeta_parts(t)
            return z**power

        return f

    if kind in CUTOFF_KINDS:
        if table is None:
            raise ValueError(f"kind {kind} needs a divisor table")

        def dsum(t):
            return d_truncated(t, table)

        if kind == "I1":
            def f(t):
                z, th = _zeta_parts(t)
                zeta = np.exp(-1j * th) * z
                return np.exp(2j * th) * zeta**4 * np.conj(dsum(t))
        elif kind == "I2":
            def f(t):
                z, th = _zeta_parts(t)
                zeta = np.exp(-1j * th) * z
                return np.exp(2j * th) ** 3 * zeta**4 * dsum(t)
        elif kind == "diag":
            def f(t):
                z, _ = _zeta_parts(t)
                return 2.0 * z * z * np.abs(dsum(t)) ** 2
        elif kind == "cross":
            def f(t):
                _, th = _zeta_parts(t)
                d = dsum(t)
                return 2.0 * np.real(np.exp(2j * th) * np.conj(d) * d * d)
        else:  # chi3
            def f(t):
                _, th = _zeta_parts(t)
                return 2.0 * np.real(np.exp(2j * th) ** 3 * dsum(t) ** 3)
        return f

    if theta is None or T is None:
        raise ValueError(f"kind {kind} needs theta and T")
    N = T**theta
    if kind == "jara":
        m = int(math.floor(N + 1e-9))
        ones = np.ones(max(m, 1))

        def f(t):
            z, _ = _zeta_parts(t)
            # |sum n^{it}| = |sum n^{-it}|
            s = _masked_power_sum(t, np.full(t.shape, ones.size, dtype=np.int64), ones)
            return z**4 * np.abs(s) ** 2

        return f

    if table is None:
        raise ValueError(f"kind {kind} needs a divisor table")
    w = d_n_weights(N, weight if weight is not None else WeightPolynomial(), table)
    lengths = None

    def dn(t):
        nonlocal lengths
        if lengths is None or lengths.shape != t.shape:
            lengths = np.full(t.shape, w.size, dtype=np.int64)
        return _masked_power_sum(t, lengths, w)

    if kind == "KN":
        def f(t):
            z, th = _zeta_parts(t)
            zeta = np.exp(-1j * th) * z
            return z * z * zeta**2 * np.conj(dn(t))
    else:  # JN
        def f(t):
            z, _ = _zeta_parts(t)
            return z * z * np.abs(dn(t)) ** 2
    return f


def breakpoints_for(kind: str, a: float, b: float) -> list[float]:
    """Evaluator switch height plus cutoff jumps 2 pi m when D(s) is involved."""
    pts = [T_MIN]
    if kind in CUTOFF_KINDS:
        m = np.arange(max(1, int(math.ceil(a / TWO_PI))), int(math.floor(b / TWO_PI)) + 1)
        pts.extend((TWO_PI * m).tolist())
    return sorted(p for p in set(pts) if a < p < b)


def main_term_for(kind: str, T: float, theta: float | None = None,
                  weight: WeightPolynomial | None = None,
                  a3: EulerProductValue | None = None) -> float | None:
    a3 = a3 or default_a3()
    log_t = math.log(T)
    consts = conjecture_constants(a3)
    if kind == "M1":
        return T * log_t
    if kind == "M2":
        return T * log_t**4 / (2.0 * math.pi**2)
    if kind == "M3":
        return consts.c_sixth * T * log_t**9
    if kind in ("I1", "I2"):
        # 2 Re I1 is the sixth moment
        return 0.5 * consts.c_sixth * T * log_t**9
    if kind == "diag":
        return consts.c_diagonal * T * log_t**9
    if kind == "cross":
        return consts.c_cross * T * log_t**9
    if kind == "KN":
        spec = MainTermSpec("K-theorem", theta, a3, weight or WeightPolynomial())
        return k_main_term(spec, T)
    if kind == "JN":
        spec = MainTermSpec("J-theorem", theta, a3, weight or WeightPolynomial())
        return j_main_term(spec, T)
    return None


def integrate_kind(kind: str, T: float, table: DivisorTable | None = None,
                   cfg: QuadratureConfig | None = None, theta: float | None = None,
                   weight: WeightPolynomial | None = None, lower: float = DEFAULT_LOWER,
                   a3: EulerProductValue | None = None) -> MomentEstimate:
    """Adaptive quadrature of one kind over [lower, T], with main term and ratio."""
    if not T > lower:
        raise ValueError(f"need T > lower, got T={T}, lower={lower}")
    if kind in CUTOFF_KINDS and table is not None and int(T // TWO_PI) > table.limit:
        raise ValueError(f"divisor table too small: need limit >= {int(T // TWO_PI)}")
    if weight is not None and weight.is_zero() and kind in ("KN", "JN"):
        return MomentEstimate(kind, T, theta, 0j, 0.0, None, 0.0, lower,
                              {"proven": theta < 0.5})
    f = make_integrand(kind, table, theta, weight, T)
    result = adaptive_integrate(f, lower, T, breakpoints_for(kind, lower, T), cfg)
    value = result.value
    if kind in REAL_NONNEGATIVE + ("cross", "chi3"):
        value = complex(value.real, 0.0)
    main = main_term_for(kind, T, theta, weight, a3) if T > math.e else None
    ratio = value.real / main if main else None
    extras = {"evaluations": result.evaluations, "panels": int(result.panels.shape[0])}
    if kind in ("KN", "JN"):
        extras["proven"] = bool(theta < 0.5)
        extras["N"] = T**theta
    if kind not in ("KN", "JN", "jara"):
        theta = None
    if kind == "chi3":
        extras["normalized"] = abs(value) / (T * math.log(T) ** 9)
    return MomentEstimate(kind, T, theta, value, main, ratio, result.error, lower, extras)


def _require_above_t_min(T: float) -> None:
    if T <= T_MIN:
        raise ValueError(f"T must exceed t_min = {T_MIN}, got {T}")


def integrate_moment(k: int, T: float, cfg: QuadratureConfig | None = None,
                     lower: float = DEFAULT_LOWER) -> MomentEstimate:
    """int_lower^T |zeta(1/2+it)|^(2k) dt for k in {1, 2, 3}."""
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    _require_above_t_min(T)
    return integrate_kind(f"M{k}", T, cfg=cfg, lower=lower)


def integrate_I1(T: float, table: DivisorTable, cfg: QuadratureConfig | None = None,
                 lower: float = DEFAULT_LOWER) -> MomentEstimate:
    return integrate_kind("I1", T, table, cfg, lower=lower)


def integrate_I2(T: float, table: DivisorTable, cfg: QuadratureConfig | None = None,
                 lower: float = DEFAULT_LOWER) -> MomentEstimate:
    return integrate_kind("I2", T, table, cfg, lower=lower)


def _check_theta(theta: float) -> None:
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")


def integrate_KN(T: float, theta: float, P: WeightPolynomial, table: DivisorTable,
                 cfg: QuadratureConfig | None = None, lower: float = DEFAULT_LOWER) -> MomentEstimate:
    _check_theta(theta)
    return integrate_kind("KN", T, table, cfg, theta, P, lower)


def integrate_JN(T: float, theta: float, P: WeightPolynomial, table: DivisorTable,
                 cfg: QuadratureConfig | None = None, lower: float = DEFAULT_LOWER) -> MomentEstimate:
    _check_theta(theta)
    return integrate_kind("JN", T, table, cfg, theta, P, lower)


def integrate_diagonal(T: float, table: DivisorTable, cfg: QuadratureConfig | None = None,
                       lower: float = DEFAULT_LOWER) -> MomentEstimate:
    return integrate_kind("diag", T, table, cfg, lower=lower)


def integrate_cross(T: float, table: DivisorTable, cfg: QuadratureConfig | None = None,
                    lower: float = DEFAULT_LOWER) -> MomentEstimate:
    return integrate_kind("cross", T, table, cfg, lower=lower)


def integrate_chi3(T: float, table: DivisorTable, cfg: QuadratureConfig | None = None,
                   lower: float = DEFAULT_LOWER) -> MomentEstimate:
    return integrate_kind("chi3", T, table, cfg, lower=lower)


def integrate_jara(T: float, theta: float, cfg: QuadratureConfig | None = None,
                   lower: float = DEFAULT_LOWER, sixth_moment: MomentEstimate | None = None) -> MomentEstimate:
    """int |zeta|^4 |sum_{n <= T^theta} n^(it)|^2 dt; theta = 0 gives N = 1.

    When sixth_moment is supplied its value is used for the diagnostic
    ratio; otherwise the sixth moment is integrated on the same range.
    """
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    est = integrate_kind("jara", T, cfg=cfg, theta=theta, lower=lower)
    m3 = sixth_moment or integrate_kind("M3", T, cfg=cfg, lower=lower)
    est.extras["N"] = T**theta
    est.extras["ratio_to_M3"] = est.value.real / m3.value.real
    return est


@dataclass
class DecompositionReport:
    T: float
    sixth: MomentEstimate
    diagonal: MomentEstimate
    cross: MomentEstimate
    chi3: MomentEstimate
    i1: MomentEstimate
    i2: MomentEstimate

    @property
    def second_method_residual(self) -> float:
        """(M3 - diag - cross - chi3) / M3; the E term is the only source."""
        parts = self.diagonal.value.real + self.cross.value.real + self.chi3.value.real
        return (self.sixth.value.real - parts) / self.sixth.value.real

    @property
    def first_method_residual(self) -> float:
        """(M3 - 2 Re I1) / M3."""
        return (self.sixth.value.real - 2.0 * self.i1.value.real) / self.sixth.value.real

    @property
    def conjugate_defect(self) -> float:
        """|I2 - conj(I1)| / |I1|."""
        return abs(self.i2.value - self.i1.value.conjugate()) / abs(self.i1.value)


def decomposition(T: float, table: DivisorTable, cfg: QuadratureConfig | None = None) -> DecompositionReport:
    return DecompositionReport(
        T=T,
        sixth=integrate_kind("M3", T, cfg=cfg),
        diagonal=integrate_diagonal(T, table, cfg),
        cross=integrate_cross(T, table, cfg),
        chi3=integrate_chi3(T, table, cfg),
        i1=integrate_I1(T, table, cfg),
        i2=integrate_I2(T, table, cfg),
    )


# --- trend reports ----------------------------------------------------------


@dataclass
class TrendRow:
    T: float
    value: float
    main_term: float | None
    ratio: float | None
    quad_error: float
    extras: dict = field(default_factory=dict)


@dataclass
class TrendReport:
    kind: str
    rows: list[TrendRow]
    slope: float
    main_slope: float | None
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def loglog_slope(x, y) -> float:
    """Least-squares slope of log|y| against log x."""
    lx = np.log(np.asarray(x, dtype=np.float64))
    ly = np.log(np.abs(np.asarray(y, dtype=np.float64)))
    return float(np.polyfit(lx, ly, 1)[0])


def local_slope_power_log(T: float, power: int) -> float:
    """d log(T log^power T) / d log T = 1 + power / log T."""
    return 1.0 + power / math.log(T)


def trend_report(kind, T_list, params: dict | None = None, table: DivisorTable | None = None,
                 cfg: QuadratureConfig | None = None) -> TrendReport:
    """Integrals at increasing T with ratios and fitted log-log slopes.

    kind may be a kind name or a vectorized integrand callable; for a
    callable no main term is attached.
    """
    T_list = [float(T) for T in T_list]
    if len(T_list) < 2:
        raise ValueError("trend_report needs at least two T values")
    if any(b <= a for a, b in zip(T_list, T_list[1:])):
        raise ValueError("T_list must be strictly increasing")
    params = dict(params or {})
    rows = []
    if callable(kind):
        name = getattr(kind, "__name__", "custom")
        lower = params.get("lower", DEFAULT_LOWER)
        for T in T_list:
            res = adaptive_integrate(kind, lower, T, (), cfg)
            rows.append(TrendRow(T, res.value.real, None, None, res.error))
    else:
        name = kind
        theta = params.get("theta")
        weight = params.get("weight")
        if isinstance(weight, (list, tuple)):
            weight = WeightPolynomial(tuple(weight))
        for T in T_list:
            if kind == "jara":
                est = integrate_jara(T, theta, cfg)
            else:
                est = integrate_kind(kind, T, table, cfg, theta, weight)
            rows.append(TrendRow(T, est.value.real, est.main_term, est.ratio, est.quad_error,
                                 dict(est.extras)))
    slope = loglog_slope([r.T for r in rows], [r.value for r in rows])
    mains = [r.main_term for r in rows]
    main_slope = loglog_slope(T_list, mains) if all(mains) else None
    serial = {k: (list(v.coefficients) if isinstance(v, WeightPolynomial) else v) for k, v in params.items()}
    return TrendReport(name, rows, slope, main_slope, serial)
