# src/planarcp/quadrature.py
"""Deterministic adaptive quadrature for the layered-media q-integral.

The semi-infinite integral is evaluated in two pieces after the standard
variable changes that remove the 1/beta endpoint singularity:

  propagating  q in [0, omega/c):  beta = sqrt(omega^2/c^2 - q^2),
               q dq = -beta dbeta  ->  plain dbeta integral on (0, omega/c]
  evanescent   q > omega/c:        beta = i kappa,
               q dq = kappa dkappa ->  dkappa integral with decay
               exp(-2 kappa z)

Each panel is estimated with an embedded Gauss(7)/Kronrod(15) pair; the
panel with the largest error is bisected until the global estimate meets
the tolerance. Everything is deterministic: identical inputs give
bit-identical results.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .core import NonDecaying, NotConverged

# Gauss-Kronrod 7/15 nodes on [-1, 1] and weights. Gauss weights are zero
# at the Kronrod-only nodes.
_GK_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_GK_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_GK_WG = np.array([
    0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0,
    0.381830050505119, 0.0, 0.417959183673469, 0.0,
    0.381830050505119, 0.0, 0.279705391489277, 0.0,
    0.129484966168870, 0.0,
])


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for the adaptive engine."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-30
    max_subdivisions: int = 2000
    tail_cutoff: float = 1e-16

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if not 0.0 < self.tail_cutoff < 1.0:
            raise ValueError("tail_cutoff must be in (0, 1)")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool


def _gk_panel(f, a: float, b: float):
    """One Gauss-Kronrod 7/15 estimate of int_a^b f; f is vectorized."""
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _GK_NODES
    y = np.asarray(f(x), dtype=complex)
    i15 = half * np.sum(_GK_WK * y)
    i7 = half * np.sum(_GK_WG * y)
    return complex(i15), abs(i15 - i7)


def _adaptive(f, edges, spec: QuadratureSpec):
    """Refine the panels given by consecutive edges until tolerance is met.

    Returns (value, error, evaluations, converged).
    """
    heap = []
    seq = 0
    evals = 0
    for a, b in zip(edges[:-1], edges[1:]):
        val, err = _gk_panel(f, a, b)
        evals += 15
        heapq.heappush(heap, (-err, seq, a, b, val))
        seq += 1

    splits = 0
    while True:
        total = sum(item[4] for item in heap)
        err_total = sum(-item[0] for item in heap)
        if err_total <= max(spec.rel_tol * abs(total), spec.abs_tol):
            return total, err_total, evals, True
        if splits >= spec.max_subdivisions:
            return total, err_total, evals, False
        _, _, a, b, _ = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        for lo, hi in ((a, mid), (mid, b)):
            val, err = _gk_panel(f, lo, hi)
            evals += 15
            heapq.heappush(heap, (-err, seq, lo, hi, val))
            seq += 1
        splits += 1


def _initial_edges(a: float, b: float, max_width: float | None) -> np.ndarray:
    n = 1
    if max_width is not None and max_width > 0.0:
        n = max(1, math.ceil((b - a) / max_width))
    n = min(n, 4096)
    return np.linspace(a, b, n + 1)


def integrate_propagating(integrand, beta_max: float,
                          spec: QuadratureSpec = DEFAULT_SPEC,
                          max_panel_width: float | None = None) -> IntegralResult:
    """Integrate a vectorized integrand over beta in (0, beta_max].

    max_panel_width bounds the initial panel width so oscillations like
    exp(2i beta z_A) are resolved from the start (a quarter period is a
    good choice).
    """
    if beta_max <= 0.0:
        raise ValueError(f"beta_max must be positive, got {beta_max}")
    edges = _initial_edges(0.0, beta_max, max_panel_width)
    value, err, evals, ok = _adaptive(integrand, edges, spec)
    result = IntegralResult(value, err, evals, ok)
    if not ok:
        raise NotConverged(
            f"propagating integral: error {err:.3e} above tolerance after "
            f"{spec.max_subdivisions} subdivisions", result)
    return result


def integrate_evanescent(integrand, z_decay: float,
                         spec: QuadratureSpec = DEFAULT_SPEC,
                         max_panel_width: float | None = None,
                         breakpoints=()) -> IntegralResult:
    """Integrate integrand(kappa) * exp(-2 kappa z_decay) over kappa > 0.

    The decay factor is applied here; the caller supplies only the
    bounded prefactor. Truncation starts at the point where the bare
    exponential reaches tail_cutoff and is pushed outward until the last
    appended panel is a negligible fraction of the running total (this
    covers integrands whose own growth delays the decay, e.g. amplified
    evanescent waves of a weakly absorbing left-handed slab).

    breakpoints are extra panel edges, used to pin near-singular features
    (surface-plasmon or guided-mode resonances of weakly lossy media)
    that uniform panels would step over without noticing.
    """
    if z_decay <= 0.0:
        raise NonDecaying(f"need z_decay > 0 for convergence, got {z_decay}")

    def f(kappa):
        return np.asarray(integrand(kappa), dtype=complex) * np.exp(-2.0 * kappa * z_decay)

    kappa0 = -math.log(spec.tail_cutoff) / (2.0 * z_decay)
    width = 1.0 / (2.0 * z_decay)
    if max_panel_width is not None:
        width = min(width, max_panel_width)
    edges = list(_initial_edges(0.0, kappa0, width))
    inner = sorted(b for b in breakpoints if 0.0 < b < kappa0)
    if inner:
        edges = sorted(set(edges) | set(inner))

    # Tail extension: single-panel probes past kappa0 until negligible.
    probe_vals = []
    evals = 0
    running = None
    kappa_hi = edges[-1]
    step = max(kappa0 / 4.0, width)
    extensions = 0
    while True:
        if running is None:
            running = sum(_gk_panel(f, a, b)[0]
                          for a, b in zip(edges[:-1], edges[1:]))
            evals += 15 * (len(edges) - 1)
        val, _ = _gk_panel(f, kappa_hi, kappa_hi + step)
        evals += 15
        probe_vals.append(val)
        running += val
        edges.append(kappa_hi + step)
        kappa_hi += step
        if abs(val) <= spec.tail_cutoff * max(abs(running), spec.abs_tol):
            break
        extensions += 1
        if extensions > spec.max_subdivisions:
            raise NotConverged(
                "evanescent tail still contributing after "
                f"{extensions} extensions (kappa ~ {kappa_hi:.3e})",
                IntegralResult(running, float("inf"), evals, False))

    value, err, more_evals, ok = _adaptive(f, np.asarray(edges), spec)
    result = IntegralResult(value, err, evals + more_evals, ok)
    if not ok:
        raise NotConverged(
            f"evanescent integral: error {err:.3e} above tolerance after "
            f"{spec.max_subdivisions} subdivisions", result)
    return result
