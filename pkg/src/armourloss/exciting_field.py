"""Auxiliary magnetic field of three twisted filamentary conductors.

The three cores of the cable are modelled as filamentary helices of radius
``a_p`` and pitch ``p_c`` carrying balanced three-phase r.m.s. currents.
Outside the helices the axial component of the auxiliary field H has the
harmonic expansion

    H_z(rho, phi, z) = sum_m  E_m K_m(eta_m rho) exp(j m (phi - 2 pi z / p_c))

with eta_m = 2 pi |m| / |p_c|.  Only one residue class of m mod 3 survives
the balanced three-phase superposition.

Conventions (fixed here and verified against the Biot-Savart oracle below):

* time dependence exp(+j omega t);
* conductor i sits at angular position 2 pi i / 3 in the z = 0 plane and the
  helices are right-handed for p_c > 0 (azimuth advances with +z);
* "positive" sequence drives conductor i with current I_c exp(+j 2 pi i / 3)
  flowing towards +z, which makes the m = 1 (mod 3) harmonics survive;
  "negative" swaps two phases and mirrors the class to m = 2 (mod 3);
* eta_m and the coefficient magnitude use |p_c|; only the axial phase factor
  uses the signed pitch (mirror symmetry z -> -z maps p_c -> -p_c and leaves
  the coefficients unchanged).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NumericalError, ValidationError
from .specialfn import bessel_i_prime, bessel_k

MU0 = 4e-7 * math.pi  # vacuum permeability [H/m]

# Residue of m mod 3 whose harmonics survive, per phase sequence.
_SEQUENCE_RESIDUE = {"positive": 1, "negative": 2}

# Overall sign of the series coefficient for the conventions stated above,
# pinned by the Biot-Savart oracle (the two differ by the reference current
# direction).
_EM_SIGN = -1.0


@dataclass(frozen=True)
class CoreLayout:
    """Geometry and excitation of the three filamentary cores.

    a_p:   helix radius of the cores [m]
    p_c:   core pitch [m], signed by lay direction
    I_c:   r.m.s. core current [A]
    omega: angular frequency [rad/s]
    """

    a_p: float
    p_c: float
    I_c: float
    omega: float
    sequence: str = "positive"

    def __post_init__(self) -> None:
        if not self.a_p > 0:
            raise ValidationError(f"core helix radius must be positive, got {self.a_p}")
        if self.p_c == 0:
            raise ValidationError("core pitch must be non-zero")
        if self.I_c < 0:
            raise ValidationError(f"core current must be non-negative, got {self.I_c}")
        if not self.omega > 0:
            raise ValidationError(f"angular frequency must be positive, got {self.omega}")
        if self.sequence not in _SEQUENCE_RESIDUE:
            raise ValidationError(f"unknown phase sequence {self.sequence!r}")


@dataclass(frozen=True)
class HarmonicFieldCoefficient:
    """Per-order data of the exciting-field expansion.

    ``E_m`` is real for a real reference current; the phase of the harmonic
    lives entirely in the exponential factor.
    """

    m: int
    eta_m: float  # 2 pi |m| / |p_c|  [1/m]
    E_m: complex  # series coefficient [A/m]

    def h_z_at(self, rho: float) -> complex:
        """Coefficient of exp(j m (phi - 2 pi z / p_c)) at radius rho."""
        if self.E_m == 0:
            return 0j
        return self.E_m * bessel_k(abs(self.m), self.eta_m * rho)


class FieldSum(NamedTuple):
    value: complex
    tail_bound: float


class BiotSavartResult(NamedTuple):
    value: complex
    rel_diff: float  # two-resolution (Richardson) relative difference


def phase_selector(m: int, sequence: str = "positive") -> int:
    """Three-phase superposition factor: 3 for the surviving residue class, else 0.

    Balanced currents cancel every harmonic except one residue class of
    m mod 3; which class survives depends on the phase sequence.
    """
    if sequence not in _SEQUENCE_RESIDUE:
        raise ValidationError(f"unknown phase sequence {sequence!r}")
    return 3 if m % 3 == _SEQUENCE_RESIDUE[sequence] else 0


def harmonic_coefficient(layout: CoreLayout, m: int) -> HarmonicFieldCoefficient:
    """Series coefficient E_m for harmonic order m (zero outside the selector class)."""
    eta = 2.0 * math.pi * abs(m) / abs(layout.p_c)
    selector = phase_selector(m, layout.sequence)
    if m == 0 or selector == 0 or layout.I_c == 0:
        return HarmonicFieldCoefficient(m=m, eta_m=eta, E_m=0j)
    # eta a I_{m+1}(eta a) + m I_m(eta a) == eta a I_m'(eta a); the bracket is
    # even in m, so |m| may be used throughout.  The prefactor keeps the
    # signed pitch: a mirrored lay with the current still flowing towards +z
    # negates the coefficients (checked against the Biot-Savart oracle).
    x = eta * layout.a_p
    bracket = x * bessel_i_prime(abs(m), x)
    e_m = _EM_SIGN * layout.I_c / layout.p_c * bracket * selector
    return HarmonicFieldCoefficient(m=m, eta_m=eta, E_m=complex(e_m))


def selected_orders(m_max: int, sequence: str = "positive") -> list[int]:
    """Signed harmonic orders with |m| <= m_max that survive the selector."""
    return [m for m in range(-m_max, m_max + 1)
            if m != 0 and phase_selector(m, sequence) != 0]


def _tail_estimate(magnitudes: list[float]) -> float:
    """Geometric tail bound from the last two non-zero term magnitudes.

    Conservative by a fixed safety factor; returns 0 for identically zero
    series and inf when the terms are not decaying.
    """
    mags = [v for v in magnitudes if v > 0]
    if len(mags) < 2:
        return 0.0
    prev, last = mags[-2], mags[-1]
    if last >= prev:
        return float("inf")
    q = last / prev
    return 3.0 * last * q / (1.0 - q)


def field_hz(layout: CoreLayout, rho: float, phi: float, z: float,
             m_max: int = 30) -> FieldSum:
    """Partial harmonic sum of H_z at (rho, phi, z), with a truncation tail bound.

    Valid outside the conductor helix (rho > a_p), where the expansion
    converges.
    """
    if rho <= layout.a_p:
        raise DomainError(f"field series requires rho > a_p, got rho = {rho}")
    if m_max < 1:
        raise ValidationError(f"m_max must be >= 1, got {m_max}")
    total = 0j
    term_mags: list[float] = []
    # fixed summation order (ascending |m|) keeps results bit-reproducible
    for m in sorted(selected_orders(m_max, layout.sequence), key=lambda v: (abs(v), v)):
        coeff = harmonic_coefficient(layout, m)
        term = coeff.h_z_at(rho) * cmath.exp(1j * m * (phi - 2.0 * math.pi * z / layout.p_c))
        total += term
        term_mags.append(abs(term))
    return FieldSum(value=complex(total), tail_bound=_tail_estimate(term_mags))


def _hz_quadrature(layout: CoreLayout, points: np.ndarray, pitch_lengths: int,
                   segments_per_pitch: int) -> np.ndarray:
    """Midpoint-rule Biot-Savart H_z of the three filaments at Cartesian points."""
    half = 0.5 * pitch_lengths * abs(layout.p_c)
    n_seg = pitch_lengths * segments_per_pitch
    edges = np.linspace(-half, half, n_seg + 1)
    zm = 0.5 * (edges[1:] + edges[:-1])
    dz = edges[1] - edges[0]
    k = 2.0 * math.pi / layout.p_c
    residue = _SEQUENCE_RESIDUE[layout.sequence]
    out = np.zeros(len(points), dtype=complex)
    for i_cond in range(3):
        phi0 = 2.0 * math.pi * i_cond / 3.0
        # positive sequence: current phase advances with angular position
        phase = phi0 if residue == 1 else -phi0
        current = layout.I_c * np.exp(1j * phase)
        ang = phi0 + k * zm
        xs = layout.a_p * np.cos(ang)
        ys = layout.a_p * np.sin(ang)
        dlx = -layout.a_p * k * np.sin(ang) * dz
        dly = layout.a_p * k * np.cos(ang) * dz
        for ip, (px, py, pz) in enumerate(points):
            rx, ry, rz = px - xs, py - ys, pz - zm
            r3 = (rx * rx + ry * ry + rz * rz) ** 1.5
            out[ip] += current * np.sum((dlx * ry - dly * rx) / r3) / (4.0 * math.pi)
    return out


def biot_savart_hz(layout: CoreLayout, rho: float, phi: float, z: float,
                   segments_per_pitch: int = 2000, pitch_lengths: int = 40,
                   rtol: float = 1e-3) -> BiotSavartResult:
    """Brute-force H_z by line integration over the three helical filaments.

    Independent of the harmonic expansion: integrates the Biot-Savart kernel
    over ``pitch_lengths`` pitches of each filament.  The result is Richardson
    extrapolated from two segment resolutions; raises if the two resolutions
    disagree by more than ``rtol``.
    """
    if segments_per_pitch < 1000:
        raise ValidationError("segments_per_pitch must be >= 1000 for the oracle")
    if pitch_lengths < 40:
        raise ValidationError("integration must cover at least 40 pitch lengths")
    point = np.array([[rho * math.cos(phi), rho * math.sin(phi), z]])
    coarse = _hz_quadrature(layout, point, pitch_lengths, segments_per_pitch // 2)[0]
    fine = _hz_quadrature(layout, point, pitch_lengths, segments_per_pitch)[0]
    # noise floor: balanced currents may cancel the field almost exactly, so
    # convergence is judged against the single-filament field scale as well
    floor = 1e-6 * layout.I_c / (2.0 * math.pi * rho)
    scale = max(abs(fine), abs(coarse), floor)
    rel_diff = abs(fine - coarse) / scale if scale > 0 else 0.0
    if rel_diff > rtol:
        raise NumericalError(
            f"Biot-Savart quadrature not converged: two-resolution difference "
            f"{rel_diff:.2e} exceeds {rtol:.2e}")
    # midpoint rule is O(h^2): Richardson-extrapolate the halved step
    return BiotSavartResult(value=(4.0 * fine - coarse) / 3.0, rel_diff=rel_diff)
