"""Thin-shell field solution and armour loss of the equivalent tube.

The anisotropic tube of mean radius R and thickness t encloses the three
twisted cores.  Because t << R the tube is treated as a surface with jump
matching conditions; each exciting-field harmonic is attenuated by the
shielding factor 1 / (1 + eta_m^2 mu_e t / xi_m) and the apparent complex
power follows from the volume integral of B.He* - H*.Be over the shell.

The effective permeability mu_e mixes the tensor entries with the core-pitch
geometry.  Tensor entries are stored in absolute units [H/m]; inside the
shielding denominator and the loss numerator mu_e enters in relative units
(divided by mu0), which is fixed by matching the shell solution to vacuum
fields on both sides.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from .errors import DomainError, ValidationError
from .exciting_field import MU0, CoreLayout, HarmonicFieldCoefficient, _tail_estimate
from .specialfn import bessel_i, bessel_i_prime, bessel_k, bessel_k_prime
from .tube_transform import ComplexPermeabilityTensor, TubeEquivalent


class ValidityWarning(UserWarning):
    """An approximation is used outside its comfortable regime."""


# Operationalisation of the ">>" in the loss-factor validity condition:
# warn when |mu_e|/mu0 is within this factor of (p_c / 2 pi R)^2 + 1.
LAMBDA2_VALIDITY_FACTOR = 10.0

# Thin-shell matching assumes t/R small; warn beyond this ratio.
THIN_SHELL_RATIO = 0.1


@dataclass(frozen=True)
class HarmonicShellTerm:
    """Per-harmonic interior solution at the tube radius."""

    m: int
    eta_m: float          # 2 pi |m| / |p_c| [1/m]
    h_e: complex          # exciting-field coefficient at rho = R [A/m]
    xi_m: complex         # radial logarithmic-derivative jump factor [1/m]
    shielding: complex    # interior/exciting field ratio, |.| <= 1 for passive media
    h_z2_at_R: complex    # interior axial field at rho = R [A/m]


@dataclass(frozen=True)
class ShellSolution:
    mu_e: complex  # effective permeability, absolute [H/m]
    terms: tuple[HarmonicShellTerm, ...]


@dataclass(frozen=True)
class LossResult:
    """Apparent armour loss and its per-harmonic breakdown."""

    delta_S: complex               # apparent complex power [VA/m]
    armour_loss_w_per_m: float     # Re(delta_S) [W/m]
    lambda2: float | None          # IEC 60287 armour loss factor, if R_AC known
    per_harmonic: tuple[tuple[int, complex], ...]
    m_used: int
    tail_bound: float              # bound on the neglected |m| > m_used terms [VA/m]
    delta_S_mu_only: complex       # same series with mu_e alone in the numerator
    mu_e: complex                  # effective permeability, absolute [H/m]
    pitch_factor: float            # p_c / (2 pi R)


def xi_m(m: int, eta_m: float, R: float, form: str = "wronskian") -> complex:
    """Jump factor xi_m of the shell matching condition [1/m].

    Two algebraically equal routes: the log-derivative difference of the
    radial solutions, and its Wronskian closed form 1/(R I_m K_m).
    """
    x = eta_m * R
    if form == "wronskian":
        return 1.0 / (R * bessel_i(m, x) * bessel_k(m, x))
    if form == "derivative":
        return eta_m * (bessel_i_prime(m, x) / bessel_i(m, x)
                        - bessel_k_prime(m, x) / bessel_k(m, x))
    raise ValidationError(f"unknown xi form {form!r}")


def mu_effective(tensor: ComplexPermeabilityTensor, p_c: float, R: float) -> complex:
    """Effective shell permeability combining tensor entries with the core pitch.

    mu_e = mu_phiphi (p_c / 2 pi R)^2 - 2 (p_c / 2 pi R) mu_zphi + mu_zz,
    in the same (absolute) units as the tensor entries.  The cross term is odd
    in the lay angle, so equal and contrary lay give different losses.
    """
    pf = p_c / (2.0 * math.pi * R)
    return tensor.mu_phi_phi * pf * pf - 2.0 * pf * tensor.mu_z_phi + tensor.mu_z_z


def shell_solution(coeffs: list[HarmonicFieldCoefficient], tube: TubeEquivalent,
                   layout: CoreLayout) -> ShellSolution:
    """Interior field and shielding factor for each exciting harmonic."""
    if tube.t / tube.R > THIN_SHELL_RATIO:
        warnings.warn(
            f"t/R = {tube.t / tube.R:.3f} strains the thin-shell matching",
            ValidityWarning, stacklevel=2)
    mu_e = mu_effective(tube.tensor, layout.p_c, tube.R)
    mu_e_rel = mu_e / MU0
    terms = []
    for coeff in sorted(coeffs, key=lambda c: (abs(c.m), c.m)):
        if coeff.m == 0:
            continue
        h_e = coeff.h_z_at(tube.R)
        xi = xi_m(abs(coeff.m), coeff.eta_m, tube.R)
        shielding = 1.0 / (1.0 + coeff.eta_m ** 2 * mu_e_rel * tube.t / xi)
        terms.append(HarmonicShellTerm(
            m=coeff.m, eta_m=coeff.eta_m, h_e=h_e, xi_m=xi,
            shielding=shielding, h_z2_at_R=h_e * shielding))
    return ShellSolution(mu_e=mu_e, terms=tuple(terms))


def apparent_loss(solution: ShellSolution, tube: TubeEquivalent,
                  layout: CoreLayout) -> LossResult:
    """Apparent complex power dissipated by the tube [VA/m].

    delta_S = j omega 2 pi R t mu0 sum_m
        (mu_e/mu0 - (p_c/2 pi R)^2 - 1) / (1 + eta_m^2 (mu_e/mu0) t / xi_m)
        |H_{e,z,m}(R)|^2

    summed over the selector-surviving harmonics in fixed ascending-|m|
    order (bit-reproducible regardless of evaluation parallelism).
    """
    pf = layout.p_c / (2.0 * math.pi * tube.R)
    prefactor = 1j * layout.omega * 2.0 * math.pi * tube.R * tube.t * MU0
    mu_e_rel = solution.mu_e / MU0
    numerator = mu_e_rel - pf * pf - 1.0
    per_harmonic: list[tuple[int, complex]] = []
    delta_s = 0j
    delta_s_mu = 0j
    m_used = 0
    for term in solution.terms:
        h_sq = abs(term.h_e) ** 2
        contrib = prefactor * numerator * term.shielding * h_sq
        per_harmonic.append((term.m, contrib))
        delta_s += contrib
        delta_s_mu += prefactor * mu_e_rel * term.shielding * h_sq
        m_used = max(m_used, abs(term.m))
    mags = [abs(c) for _, c in sorted(per_harmonic, key=lambda p: (abs(p[0]), p[0]))]
    return LossResult(
        delta_S=delta_s,
        armour_loss_w_per_m=delta_s.real,
        lambda2=None,
        per_harmonic=tuple(per_harmonic),
        m_used=m_used,
        tail_bound=_tail_estimate(mags),
        delta_S_mu_only=delta_s_mu,
        mu_e=solution.mu_e,
        pitch_factor=pf,
    )


def lambda2(loss: LossResult, r_ac_ohm_per_m: float, layout: CoreLayout,
            validity_factor: float = LAMBDA2_VALIDITY_FACTOR) -> float:
    """IEC 60287 armour loss factor: armour loss over total conductor loss.

    lambda_2 = Re(delta_S with mu_e alone in the numerator) / (3 R_AC I_c^2).
    Warns when |mu_e|/mu0 is not much larger than (p_c/2 pi R)^2 + 1, where
    dropping the vacuum terms from the numerator stops being accurate.
    """
    if r_ac_ohm_per_m <= 0:
        raise DomainError(f"AC resistance must be positive, got {r_ac_ohm_per_m}")
    if layout.I_c == 0:
        return 0.0
    threshold = validity_factor * (loss.pitch_factor ** 2 + 1.0)
    if abs(loss.mu_e) / MU0 <= threshold:
        warnings.warn(
            f"|mu_e|/mu0 = {abs(loss.mu_e) / MU0:.1f} is not >> "
            f"(p_c/2piR)^2 + 1 = {loss.pitch_factor ** 2 + 1.0:.2f}; the loss "
            f"factor shortcut may deviate noticeably from the full expression",
            ValidityWarning, stacklevel=2)
    return loss.delta_S_mu_only.real / (3.0 * r_ac_ohm_per_m * layout.I_c ** 2)


def with_lambda2(loss: LossResult, r_ac_ohm_per_m: float, layout: CoreLayout) -> LossResult:
    """Copy of ``loss`` with the lambda2 field populated."""
    return replace(loss, lambda2=lambda2(loss, r_ac_ohm_per_m, layout))
