# tests/test_acceptance.py
"""Acceptance gate: ten numbered criteria, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -s` to see the lines as they
are produced. Every criterion is asserted at its stated tolerance; known
shortfalls are documented in the failure messages rather than weakened.
"""

import math
import time

import numpy as np
import pytest

from planarcp import (Atom, HalfSpace, PerfectLens, SlabWithMirror,
                      Transition, VACUUM, potential_nonretarded,
                      potential_numeric, potential_perfect_lens,
                      potential_retarded, validate_material)
from planarcp.cli import main

PAR = Atom([Transition(1.0, 1.0, 0.0)])
PERP = Atom([Transition(1.0, 0.0, 1.0)])
MIXED = Atom([Transition(1.0, 0.5, 0.5)])

U0 = 1.0 / (8.0 * math.pi)  # potential scale for unit dipole and frequency


def report(number, description, ok):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {description}")
    assert ok, f"criterion {number}: {description}"


def numeric(atom, geometry, z):
    return potential_numeric(atom, geometry, z).value


def rel_dev(value, reference):
    return abs(value - reference) / abs(reference)


def sign_change_positions(z, u):
    """Linear-interpolated zero crossings of samples u(z)."""
    out = []
    for i in range(len(u) - 1):
        if u[i] == 0.0 or u[i] * u[i + 1] >= 0.0:
            continue
        frac = u[i] / (u[i] - u[i + 1])
        out.append(z[i] + frac * (z[i + 1] - z[i]))
    return out


def test_criterion_01_vacuum_nullity():
    start = time.monotonic()
    geo = HalfSpace(VACUUM)
    worst = max(abs(numeric(MIXED, geo, float(z)))
                for z in np.geomspace(1e-3, 1e3, 20))
    elapsed = time.monotonic() - start
    report(1, f"vacuum potential <= 1e-12 U0 over 20 decades-spanning "
              f"distances in {elapsed:.2f} s (< 5 s)",
           worst <= 1e-12 * U0 and elapsed < 5.0)


def test_criterion_02_nonretarded_electric_agreement():
    geo = HalfSpace(validate_material(2 + 1e-3j, 1))
    devs = [rel_dev(numeric(MIXED, geo, z),
                    potential_nonretarded(MIXED, geo.material, z).value)
            for z in (1e-2, 3e-3, 1e-3)]
    ok = devs[-1] < 0.01 and devs[0] > devs[1] > devs[2]
    report(2, f"short-distance electric closed form: deviation "
              f"{devs[-1]:.2e} at z=1e-3 (< 1%), monotone {devs}",
           ok)


def test_criterion_03_nonretarded_magnetic_scaling():
    geo = HalfSpace(validate_material(1, 2 + 1e-3j))
    z_lo, z_hi = 1e-3, 1e-2
    u_lo, u_hi = numeric(PAR, geo, z_lo), numeric(PAR, geo, z_hi)
    slope = math.log(abs(u_hi) / abs(u_lo)) / math.log(z_hi / z_lo)
    dev = rel_dev(u_lo, potential_nonretarded(PAR, geo.material, z_lo).value)
    ok = dev < 0.02 and abs(slope + 1.0) < 0.05
    report(3, f"purely magnetic short distance: closed-form deviation "
              f"{dev:.2%} (required < 2%), log-log slope {slope:.3f} "
              f"(required -1 +- 0.05)", ok)


def test_criterion_04_retarded_agreement():
    m = validate_material(2 + 1e-3j, 1)
    geo = HalfSpace(m)
    dev = rel_dev(numeric(PAR, geo, 50.0),
                  potential_retarded(PAR, m, 50.0).value)

    z = np.arange(48.5, 51.5001, 0.05)
    u_num = np.array([numeric(PAR, geo, float(zz)) for zz in z])
    u_ret = np.array([potential_retarded(PAR, m, float(zz)).value for zz in z])
    num_zeros = sign_change_positions(z, u_num)
    ret_zeros = sign_change_positions(z, u_ret)
    zeros_ok = len(num_zeros) == len(ret_zeros) > 0 and all(
        abs(a - b) <= 0.05 for a, b in zip(num_zeros, ret_zeros))

    flips = []
    for zz in (45.5, 47.1, 48.7):  # |cos(2z)| near 1 at these points
        ue = numeric(PAR, HalfSpace(validate_material(9, 1)), zz)
        um = numeric(PAR, HalfSpace(validate_material(1, 9)), zz)
        flips.append(ue * um < 0.0)

    ok = dev < 0.05 and zeros_ok and all(flips)
    report(4, f"long-distance closed form: deviation {dev:.2%} at z=50 "
              f"(< 5%), {len(num_zeros)} zero crossings matched to 0.05, "
              f"electric/magnetic sign flip at 3 distances", ok)


def test_criterion_05_perfect_lens_closed_form():
    start = time.monotonic()
    d = 5.0
    slab = SlabWithMirror(validate_material(-1 + 1e-6j, -1 + 1e-6j), d)
    u = {zt: numeric(PERP, slab, d + zt / 2.0) for zt in (1.0, 2.0, 3.0)}
    closed = potential_perfect_lens(PERP, d, d + 0.5).value
    dev = rel_dev(u[1.0], closed)
    monotone = u[3.0] > u[2.0] > u[1.0]
    elapsed = time.monotonic() - start
    ok = dev < 0.05 and monotone and elapsed < 60.0
    report(5, f"weakly absorbing lens vs ideal closed form: deviation "
              f"{dev:.2%} at zt=1 (required < 5%; absorption saturates the "
              f"evanescent amplification, see decisions ledger), attraction "
              f"monotone {monotone}, {elapsed:.1f} s (< 60 s)", ok)


def test_criterion_06_barrier_phenomenology():
    geo = HalfSpace(validate_material(-3 + 1e-3j, 1))
    z = np.arange(0.1, 15.0001, 0.1)
    u = np.array([numeric(PAR, geo, float(zz)) for zz in z])
    maxima = [i for i in range(1, len(u) - 1)
              if u[i] > u[i - 1] and u[i] > u[i + 1] and u[i] > 0.0]
    barrier_below_1 = any(z[i] < 1.0 for i in maxima)
    first_max = z[maxima[0]] if maxima else math.inf
    tail = u[z > first_max]
    oscillating = len(sign_change_positions(z[z > first_max], tail)) >= 4

    u_half = numeric(PAR, HalfSpace(validate_material(0.5 + 1e-3j, 1)), 1e-2)
    repulsive = u_half > 0.0

    ok = barrier_below_1 and maxima and oscillating and repulsive
    report(6, f"barrier phenomenology: positive local maximum below z=1 "
              f"(first found at z={first_max:.2f}; required < 1, see "
              f"decisions ledger), oscillations {oscillating}, "
              f"eps=0.5 repulsive {repulsive}", ok)


def test_criterion_07_oscillation_phase_opposition():
    z = np.arange(5.0, 20.0001, 0.5)
    def sweep(eps, mu):
        geo = HalfSpace(validate_material(eps, mu))
        return np.array([numeric(PAR, geo, float(zz)) for zz in z])

    u_em = sweep(-3 + 1e-3j, 2 + 1e-3j) * z   # scaled to remove 1/z decay
    u_me = sweep(2 + 1e-3j, -3 + 1e-3j) * z
    u_lh = sweep(-3 + 1e-3j, -3 + 1e-3j) * z
    opposite = np.mean(u_em * u_me < 0.0)
    amp_ok = np.max(np.abs(u_em)) > np.max(np.abs(u_lh))
    ok = opposite >= 0.80 and amp_ok
    report(7, f"opposite oscillation phase for swapped (eps, mu): "
              f"{opposite:.0%} of samples (>= 80%), left-handed amplitude "
              f"weaker: {amp_ok}", ok)


def test_criterion_08_thick_slab_reduction():
    m = validate_material(-1 + 0.1j, 1 + 0.1j)
    slab = SlabWithMirror(m, 50.0)
    half = HalfSpace(m)
    devs = [rel_dev(numeric(MIXED, slab, z), numeric(MIXED, half, z))
            for z in (0.5, 1.0, 5.0)]
    ok = max(devs) <= 1e-6
    report(8, f"thick slab indistinguishable from half space: worst "
              f"relative deviation {max(devs):.2e} (<= 1e-6)", ok)


def test_criterion_09_oracle_equivalence(oracle_suite):
    start = time.monotonic()
    tol_factor = 10.0 * 1e-8
    worst = 0.0
    for eps, mu, z_A, engine, ref_xx, ref_zz, _, _ in oracle_suite.cases:
        for got, ref in ((engine.g_xx, ref_xx), (engine.g_zz, ref_zz)):
            worst = max(worst,
                        abs(got - ref) / max(tol_factor * abs(ref), 1e-30))
    elapsed = oracle_suite.seconds + time.monotonic() - start
    ok = worst <= 1.0 and elapsed < 600.0
    report(9, f"50-case randomized agreement with the dense-grid reference: "
              f"worst deviation at {worst:.2f} of tolerance, suite took "
              f"{elapsed:.0f} s (< 600 s)", ok)


def test_criterion_10_cli_determinism(tmp_path):
    args = ["sweep", "--geometry", "halfspace", "--eps-re", "-3",
            "--eps-im", "1e-3", "--zmin", "0.05", "--zmax", "50",
            "--points", "30", "--dipole", "par", "--workers", "2",
            "--reproducible"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    code_a = main(args + ["--output", str(a)])
    code_b = main(args + ["--output", str(b)])
    ok = code_a == code_b == 0 and a.read_bytes() == b.read_bytes()
    report(10, "two reproducible CLI sweeps are byte-identical", ok)
