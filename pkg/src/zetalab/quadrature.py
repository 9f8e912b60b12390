"""Adaptive panel quadrature for oscillatory integrands on the critical line.

Panels are Gauss-Kronrod (2n+1 nodes with the n-point Gauss rule embedded)
and are refined by bisection until the Kronrod/Gauss disagreement falls
below a relative tolerance. Breakpoints supplied by the caller (cutoff
jumps, evaluator switch-over heights) are always panel boundaries.
"""

from __future__ import annotations

import math
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial import legendre

WORKERS_ENV = "ZETALAB_WORKERS"

Integrand = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=None)
def gauss_kronrod(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes and weights of the (2n+1)-point Kronrod extension of Gauss-Legendre.

    The n + 1 new nodes are the zeros of the Stieltjes polynomial E, the
    monic degree-(n+1) polynomial orthogonal to every lower-degree
    polynomial with respect to the sign-changing weight P_n(x). Weights
    follow from exactness on Legendre polynomials up to degree 3n + 1.

    Returns (nodes, kronrod_weights, gauss_weights) on [-1, 1], with
    gauss_weights zero at the Kronrod-only nodes.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    xg, wg = legendre.leggauss(n)
    # exact inner products via a Gauss rule of ample degree
    xq, wq = legendre.leggauss(3 * n + 4)
    pn = legendre.legval(xq, [0] * n + [1])
    # E = P_{n+1} + sum_{j<=n} e_j P_j with <P_n E, P_k> = 0 for k = 0..n
    basis = np.array([legendre.legval(xq, [0] * j + [1]) for j in range(n + 2)])
    gram = np.array([[np.sum(wq * pn * basis[k] * basis[j]) for j in range(n + 1)] for k in range(n + 1)])
    rhs = -np.array([np.sum(wq * pn * basis[k] * basis[n + 1]) for k in range(n + 1)])
    e, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
    coeffs = np.concatenate([e, [1.0]])
    xk = np.sort(np.real(legendre.legroots(coeffs)))
    nodes = np.sort(np.concatenate([xg, xk]))
    # exactness: sum_i w_i P_j(x_i) = 2 delta_{j0} for j <= 3n + 1
    deg = 3 * n + 1
    V = legendre.legvander(nodes, deg).T
    target = np.zeros(deg + 1)
    target[0] = 2.0
    wk, *_ = np.linalg.lstsq(V, target, rcond=None)
    gauss_w = np.zeros_like(nodes)
    for x, w in zip(xg, wg):
        gauss_w[np.argmin(np.abs(nodes - x))] = w
    return nodes, wk, gauss_w


@dataclass(frozen=True)
class QuadratureConfig:
    """Panel quadrature settings.

    panel_rule is the Kronrod node count (odd, 2n+1). Initial panel width
    at height t is at most width_constant / log(t/2pi) (clamped below at
    log = 1).
    """

    panel_rule: int = 15
    refinement_tolerance: float = 1e-8
    max_depth: int = 12
    width_constant: float = 2.0 * math.pi

    def __post_init__(self):
        if self.panel_rule < 3 or self.panel_rule % 2 == 0:
            raise ValueError(f"panel_rule must be an odd Kronrod node count >= 3, got {self.panel_rule}")
        if self.refinement_tolerance <= 0:
            raise ValueError("refinement_tolerance must be positive")
        if self.width_constant <= 0:
            raise ValueError("width_constant must be positive")

    def refined(self) -> "QuadratureConfig":
        """Same settings with initial panels half as wide."""
        return QuadratureConfig(self.panel_rule, self.refinement_tolerance, self.max_depth,
                                self.width_constant / 2.0)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    panels: np.ndarray  # (n, 2) accepted panel endpoints, sorted
    evaluations: int


def initial_panels(a: float, b: float, breakpoints, width_constant: float) -> np.ndarray:
    """Split [a, b] at the breakpoints, then into panels no wider than
    width_constant / max(1, log(t/2pi)) at each sub-interval's right end."""
    pts = [a] + sorted(p for p in set(float(x) for x in breakpoints) if a < p < b) + [b]
    edges = np.asarray(pts)
    lo, hi = edges[:-1], edges[1:]
    rate = np.maximum(1.0, np.log(np.maximum(hi, 1e-300) / (2.0 * math.pi)))
    counts = np.maximum(1, np.ceil((hi - lo) * rate / width_constant)).astype(np.int64)
    starts = np.repeat(lo, counts)
    widths = np.repeat((hi - lo) / counts, counts)
    offsets = np.concatenate([np.arange(c) for c in counts])
    left = starts + offsets * widths
    # each right edge is the next left edge, so panels tile [a, b] exactly
    right = np.append(left[1:], b)
    return np.column_stack([left, right])


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


_ACTIVE: Integrand | None = None


def _call_active(t: np.ndarray) -> np.ndarray:
    return _ACTIVE(t)


def _evaluate(f: Integrand, t: np.ndarray, workers: int) -> np.ndarray:
    if workers <= 1 or t.size < 20000:
        return np.asarray(f(t))
    global _ACTIVE
    _ACTIVE = f
    chunks = np.array_split(t, workers * 4)
    # fork shares the integrand (and its tables) without pickling
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        parts = list(pool.map(_call_active, chunks))
    _ACTIVE = None
    return np.concatenate(parts)


def adaptive_integrate(f: Integrand, a: float, b: float, breakpoints=(),
                       cfg: QuadratureConfig | None = None, workers: int | None = None) -> QuadratureResult:
    """Integrate a vectorized f over [a, b] with bisection on disagreement.

    A panel is accepted when |K - G| <= tol * K(|f|) or max_depth is hit.
    Panel values are combined with math.fsum in left-endpoint order, so
    the result does not depend on evaluation batching or worker count.
    """
    cfg = cfg or QuadratureConfig()
    workers = worker_count() if workers is None else workers
    if not b > a:
        raise ValueError(f"need b > a, got [{a}, {b}]")
    x, wk, wg = gauss_kronrod((cfg.panel_rule - 1) // 2)
    panels = initial_panels(a, b, breakpoints, cfg.width_constant)
    done_panels, done_vals, done_errs = [], [], []
    evaluations = 0
    for depth in range(cfg.max_depth + 1):
        mid = 0.5 * (panels[:, 0] + panels[:, 1])
        half = 0.5 * (panels[:, 1] - panels[:, 0])
        nodes = mid[:, None] + half[:, None] * x[None, :]
        vals = _evaluate(f, nodes.ravel(), workers).reshape(nodes.shape)
        evaluations += nodes.size
        k = half * (vals @ wk)
        g = half * (vals @ wg)
        resabs = half * (np.abs(vals) @ np.abs(wk))
        err = np.abs(k - g)
        ok = (err <= cfg.refinement_tolerance * resabs) | (depth == cfg.max_depth)
        done_panels.append(panels[ok])
        done_vals.append(k[ok])
        done_errs.append(err[ok])
        bad = panels[~ok]
        if bad.size == 0:
            break
        m = 0.5 * (bad[:, 0] + bad[:, 1])
        panels = np.concatenate([np.column_stack([bad[:, 0], m]), np.column_stack([m, bad[:, 1]])])
    all_panels = np.concatenate(done_panels)
    all_vals = np.concatenate(done_vals).astype(np.complex128)
    all_errs = np.concatenate(done_errs)
    order = np.argsort(all_panels[:, 0], kind="stable")
    all_panels, all_vals, all_errs = all_panels[order], all_vals[order], all_errs[order]
    value = complex(math.fsum(all_vals.real), math.fsum(all_vals.imag))
    return QuadratureResult(value=value, error=math.fsum(all_errs), panels=all_panels,
                            evaluations=evaluations)


def uniform_riemann_sum(f: Integrand, a: float, b: float, dt: float, chunk: int = 200_000) -> complex:
    """Midpoint Riemann sum of f on [a, b] with step close to dt.

    The step is adjusted so that an integer number of cells fits exactly.
    """
    n = max(1, int(round((b - a) / dt)))
    h = (b - a) / n
    parts_re, parts_im = [], []
    for lo in range(0, n, chunk):
        t = a + h * (np.arange(lo, min(n, lo + chunk)) + 0.5)
        v = np.asarray(f(t))
        parts_re.append(math.fsum(np.real(v)))
        parts_im.append(math.fsum(np.imag(v)) if np.iscomplexobj(v) else 0.0)
    return complex(math.fsum(parts_re), math.fsum(parts_im)) * h
