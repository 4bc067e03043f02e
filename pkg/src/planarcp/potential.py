# src/planarcp/potential.py
"""Resonant Casimir-Polder potential of an excited atom.

U(z_A) = -mu_0 sum_k omega_k^2 [Re G_xx |d_par|^2 + Re G_zz |d_perp|^2]

summed over downward transitions, with G_xx, G_zz from the green module
or replaced by the closed-form short-distance, long-distance and
perfect-lens limits.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from .core import (Atom, DegenerateDenominator, DomainError, Geometry,
                   HalfSpace, MaterialResponse, NORMALIZED, PerfectLens,
                   SlabWithMirror, UnitSystem)
from .green import green_components
from .quadrature import DEFAULT_SPEC, QuadratureSpec

# Auto-dispatch thresholds in z_A * omega / c; "much less/greater than 1"
# made concrete and validated by the asymptotic-agreement tests.
NONRETARDED_THRESHOLD = 1e-2
RETARDED_THRESHOLD = 1e3

# Below this distance from eps = 1 the short-distance formula is between
# its 1/z^3 and 1/z scaling regimes and neither closed form dominates.
NEAR_MAGNETIC_EPS = 1e-6


class PotentialMethod(enum.Enum):
    NUMERIC = "numeric"
    NONRETARDED = "nonretarded"
    RETARDED = "retarded"
    PERFECT_LENS = "closed-form"
    AUTO = "auto"


@dataclass(frozen=True)
class PotentialSample:
    """One evaluated point of the potential curve."""

    z_A: float
    value: float
    method: PotentialMethod
    error_estimate: float
    per_transition: tuple[float, ...]
    flags: tuple[str, ...] = ()


def _sample(z_A, contributions, method, error, flags=()):
    return PotentialSample(z_A=float(z_A), value=float(sum(contributions)),
                           method=method, error_estimate=float(error),
                           per_transition=tuple(float(u) for u in contributions),
                           flags=tuple(flags))


def potential_numeric(atom: Atom, geometry: Geometry, z_A: float,
                      spec: QuadratureSpec = DEFAULT_SPEC,
                      units: UnitSystem = NORMALIZED) -> PotentialSample:
    """Potential by direct quadrature of the Green-tensor integral."""
    mu0 = units.mu0
    contributions = []
    error = 0.0
    for t in atom.transitions:
        g = green_components(z_A, t.omega, geometry, spec, units)
        contributions.append(
            -mu0 * t.omega**2 * (g.g_xx.real * t.d_par_sq
                                 + g.g_zz.real * t.d_perp_sq))
        error += mu0 * t.omega**2 * (g.error_xx * t.d_par_sq
                                     + g.error_zz * t.d_perp_sq)
    return _sample(z_A, contributions, PotentialMethod.NUMERIC, error)


def potential_nonretarded(atom: Atom, material: MaterialResponse, z_A: float,
                          units: UnitSystem = NORMALIZED) -> PotentialSample:
    """Short-distance (z_A omega / c << 1) closed form.

    Electric or magneto-electric media give the 1/z^3 image formula with
    the (|eps|^2 - 1)/|eps + 1|^2 factor; a purely magnetic half space
    (eps = 1 exactly) instead gives the weaker 1/z law built from mu.
    """
    if z_A <= 0.0:
        raise DomainError(f"z_A must be positive, got {z_A}")
    eps, mu = material.epsilon, material.mu
    flags = []
    contributions = []
    rel_trunc = 0.0
    if eps == 1.0:
        factor = (abs(mu)**2 - 1.0) / abs(mu + 1.0)**2
        for t in atom.transitions:
            contributions.append(
                -units.mu0 * t.omega**2 * t.d_par_sq * factor
                / (16.0 * math.pi * z_A))
            rel_trunc = max(rel_trunc, z_A * t.omega / units.c)
    else:
        if abs(eps - 1.0) < NEAR_MAGNETIC_EPS:
            flags.append("near-magnetic-crossover")
        factor = (abs(eps)**2 - 1.0) / abs(eps + 1.0)**2
        for t in atom.transitions:
            contributions.append(
                -(t.d_par_sq + 2.0 * t.d_perp_sq) * factor
                / (32.0 * math.pi * units.eps0 * z_A**3))
            rel_trunc = max(rel_trunc, z_A * t.omega / units.c)
    error = rel_trunc * abs(sum(contributions))
    return _sample(z_A, contributions, PotentialMethod.NONRETARDED, error, flags)


def potential_retarded(atom: Atom, material: MaterialResponse, z_A: float,
                       units: UnitSystem = NORMALIZED) -> PotentialSample:
    """Long-distance (z_A omega / c >> 1) oscillating closed form.

    Only the parallel dipole component contributes at leading order in
    c/(z_A omega).
    """
    if z_A <= 0.0:
        raise DomainError(f"z_A must be positive, got {z_A}")
    sqrt_eps = _passive_scalar_sqrt(material.epsilon)
    sqrt_mu = _passive_scalar_sqrt(material.mu)
    den = sqrt_eps + sqrt_mu
    if abs(den) < 1e-12:
        raise DegenerateDenominator(
            f"sqrt(eps) + sqrt(mu) = {den} too close to zero")
    contrast = (sqrt_eps - sqrt_mu) / den
    contributions = []
    rel_trunc = 0.0
    for t in atom.transitions:
        phase = cmath.exp(2j * z_A * t.omega / units.c)
        contributions.append(
            units.mu0 * t.omega**2 * t.d_par_sq
            / (8.0 * math.pi * z_A) * (phase * contrast).real)
        rel_trunc = max(rel_trunc, units.c / (z_A * t.omega))
    error = rel_trunc * abs(sum(contributions))
    return _sample(z_A, contributions, PotentialMethod.RETARDED, error)


def _passive_scalar_sqrt(w: complex) -> complex:
    """Square root on the Im >= 0 branch, consistent with the i0+ rule."""
    r = cmath.sqrt(w)
    if r.imag < 0.0:
        r = -r
    return r


def potential_perfect_lens(atom: Atom, thickness: float, z_A: float,
                           units: UnitSystem = NORMALIZED) -> PotentialSample:
    """Closed-form potential of the ideal mirror-backed superlens.

    Valid for z_A > thickness; diverges toward the focal plane at
    z_A = thickness, where the atom coincides with its image.
    """
    if z_A <= thickness:
        raise DomainError(
            f"closed form requires z_A > thickness (z_A = {z_A}, "
            f"thickness = {thickness})")
    contributions = []
    for t in atom.transitions:
        zt = 2.0 * t.omega * (z_A - thickness) / units.c
        cos_zt, sin_zt = math.cos(zt), math.sin(zt)
        par = cos_zt + zt * sin_zt - zt * zt * cos_zt
        perp = 2.0 * (cos_zt + zt * sin_zt)
        contributions.append(
            -units.mu0 * t.omega**3 / (4.0 * math.pi * units.c * zt**3)
            * (par * t.d_par_sq + perp * t.d_perp_sq))
    return _sample(z_A, contributions, PotentialMethod.PERFECT_LENS, 0.0)


def potential_auto(atom: Atom, geometry: Geometry, z_A: float,
                   spec: QuadratureSpec = DEFAULT_SPEC,
                   units: UnitSystem = NORMALIZED) -> PotentialSample:
    """Dispatch to the cheapest adequate method and record the choice."""
    if isinstance(geometry, PerfectLens):
        return potential_perfect_lens(atom, geometry.thickness, z_A, units)
    k = 1.0 / units.c
    if isinstance(geometry, HalfSpace):
        if z_A * atom.omega_max * k < NONRETARDED_THRESHOLD:
            closed = potential_nonretarded(atom, geometry.material, z_A, units)
            # One numeric point keeps the closed form honest.
            numeric = potential_numeric(atom, geometry, z_A, spec, units)
            error = max(closed.error_estimate, abs(numeric.value - closed.value))
            return PotentialSample(z_A=closed.z_A, value=closed.value,
                                   method=closed.method, error_estimate=error,
                                   per_transition=closed.per_transition,
                                   flags=closed.flags)
        if z_A * atom.omega_min * k > RETARDED_THRESHOLD:
            return potential_retarded(atom, geometry.material, z_A, units)
    return potential_numeric(atom, geometry, z_A, spec, units)
