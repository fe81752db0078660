"""Independent brute-force and high-precision reference implementations.

Everything here exists to check the main computation path and is kept free
of it wherever the check is meaningful: special functions are re-evaluated
with mpmath at elevated precision, the exciting field is integrated with
the Biot-Savart kernel, lattice sums are summed geometrically wire by wire,
and the wire-string loss is obtained both from the closed form and from a
numerically integrated power integral.

The suite is shipped with the library so that a clean checkout can
reproduce every frozen reference value; ``run_oracle_suite`` emits one
structured report line per checked quantity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy.integrate import quad

from . import exciting_field, tube_transform
from .armour_loss import xi_m
from .errors import NumericalError, ValidationError
from .exciting_field import MU0, CoreLayout, biot_savart_hz as biot_savart_oracle
from .tube_transform import ArmourSpec, coupling_scaled, d_a_local

__all__ = [
    "OracleReport", "rel_error", "biot_savart_oracle",
    "hp_bessel_i", "hp_bessel_k", "zeta_direct",
    "hp_mu_longitudinal", "hp_pq", "hp_mu_transverse_m1", "hp_harmonic_e",
    "hp_xi", "wire_string_loss", "tube_equivalence_loss",
    "appendix_line_integral_loss", "exact_isotropic_shell_interior",
    "carson_reexpansion_check", "pair_tail_integral", "run_oracle_suite",
]

_REL_ERROR_FLOOR = 1e-300


@dataclass(frozen=True)
class OracleReport:
    name: str
    main_value: complex
    oracle_value: complex
    rel_error: float
    converged: bool

    def to_line(self) -> str:
        return json.dumps({
            "name": self.name,
            "main_re": self.main_value.real, "main_im": self.main_value.imag,
            "oracle_re": self.oracle_value.real, "oracle_im": self.oracle_value.imag,
            "rel_error": self.rel_error, "converged": self.converged,
        }, sort_keys=True)


def rel_error(main: complex, oracle: complex) -> float:
    return abs(main - oracle) / max(abs(oracle), _REL_ERROR_FLOOR)


# ---------------------------------------------------------------------------
# high-precision closed-form mirrors (mpmath)

def hp_bessel_i(order: int, z: complex, dps: int = 50) -> complex:
    with mp.workdps(dps):
        return complex(mp.besseli(order, mp.mpmathify(z)))


def hp_bessel_k(order: int, z: complex, dps: int = 50) -> complex:
    with mp.workdps(dps):
        return complex(mp.besselk(order, mp.mpmathify(z)))


def zeta_direct(s: int, terms: int = 10 ** 6) -> float:
    """zeta(s) by direct summation plus an Euler-Maclaurin integral tail."""
    if s < 2:
        raise ValidationError(f"requires s >= 2, got {s}")
    k = np.arange(1, terms + 1, dtype=float)
    partial = float(np.sum(k ** (-float(s))))
    t = float(terms)
    # sum_{k>T} k^-s = T^(1-s)/(s-1) - T^-s/2 + s T^(-s-1)/12 + O(T^(-s-3))
    tail = t ** (1 - s) / (s - 1) - 0.5 * t ** (-s) + s / 12.0 * t ** (-s - 1)
    return partial + tail


def _hp_kappa_r(spec: ArmourSpec, dps: int):
    mu_r = mp.mpc(spec.mu_r.real, spec.mu_r.imag)
    mu0 = 4 * mp.pi * mp.mpf("1e-7")
    return mp.sqrt(1j * spec.omega * mu0 * mu_r * spec.sigma) * spec.r, mu_r, mu0


def hp_mu_longitudinal(spec: ArmourSpec, dps: int = 40) -> complex:
    with mp.workdps(dps):
        x, mu_r, mu0 = _hp_kappa_r(spec, dps)
        return complex(2 * mu0 * mu_r * mp.besseli(1, x) / (x * mp.besseli(0, x)))


def hp_pq(spec: ArmourSpec, m: int, dps: int = 40) -> tuple[complex, complex]:
    with mp.workdps(dps):
        x, mu_r, _ = _hp_kappa_r(spec, dps)
        i_m = mp.besseli(m, x)
        b = x / (2 * mu_r * m) * (mp.besseli(m - 1, x) + mp.besseli(m + 1, x))
        return complex((i_m + b) / 2), complex((i_m - b) / 2)


def hp_mu_transverse_m1(spec: ArmourSpec, dps: int = 40) -> complex:
    with mp.workdps(dps):
        p1, q1 = [mp.mpmathify(v) for v in hp_pq(spec, 1, dps)]
        d_a = d_a_local(spec)
        f11 = 2 * mp.zeta(2) / mp.mpf(d_a) ** 2  # along-field string orientation
        mu0 = 4 * mp.pi * mp.mpf("1e-7")
        return complex(mu0 * (1 + 2 * q1 / (p1 - q1 * spec.r ** 2 * f11)))


def hp_harmonic_e(layout: CoreLayout, m: int, dps: int = 40) -> complex:
    """Series coefficient E_m evaluated in mpmath arithmetic."""
    selector = exciting_field.phase_selector(m, layout.sequence)
    if m == 0 or selector == 0 or layout.I_c == 0:
        return 0j
    with mp.workdps(dps):
        eta = 2 * mp.pi * abs(m) / abs(layout.p_c)
        x = eta * layout.a_p
        bracket = x * mp.besseli(abs(m) + 1, x) + abs(m) * mp.besseli(abs(m), x)
        return complex(-(layout.I_c / abs(layout.p_c)) * bracket * selector)


def hp_xi(m: int, eta_m: float, R: float, dps: int = 40) -> complex:
    with mp.workdps(dps):
        x = mp.mpf(eta_m) * R
        return complex(1 / (R * mp.besseli(m, x) * mp.besselk(m, x)))


# ---------------------------------------------------------------------------
# wire-string loss (power integral)

def wire_string_loss(spec: ArmourSpec, H_e: float, M: int = 1) -> complex:
    """Complex power of N wires in a uniform transverse field, closed form.

    Poynting-theorem reduction of the power integral: j omega 2 pi N D_1 He*,
    with D_1 from the M-harmonic response system.
    """
    if spec.N == 0 or H_e == 0:
        return 0j
    if M == 1:
        _, d1 = tube_transform.transverse_response_truncated(spec, H_e)
    else:
        _, d1 = tube_transform.transverse_response_full(spec, H_e, M)[0]
    return 1j * spec.omega * 2.0 * math.pi * spec.N * d1 * H_e


def tube_equivalence_loss(spec: ArmourSpec, H_e: float, M: int = 1) -> complex:
    """The same power from the equivalent-tube side: j w (mu_phi' - mu0) |He|^2 V.

    V is the wire volume per metre run, N pi r^2; equality with
    ``wire_string_loss`` is the definition of mu_phi'.
    """
    mu_phi = tube_transform.mu_transverse(spec, M)
    volume = spec.N * math.pi * spec.r ** 2
    return 1j * spec.omega * (mu_phi - MU0) * H_e ** 2 * volume


def appendix_line_integral_loss(spec: ArmourSpec, H_e: float, M: int = 1,
                                x0: float | None = None) -> complex:
    """Wire-string loss with the power integral evaluated by quadrature.

    The response potential of the central wire, D_1 cos(phi)/rho, is
    integrated along the source-sheet line x = x0; the N-wire loss is
    j omega 2 He* N times that integral.
    """
    if spec.N == 0 or H_e == 0:
        return 0j
    if M == 1:
        _, d1 = tube_transform.transverse_response_truncated(spec, H_e)
    else:
        _, d1 = tube_transform.transverse_response_full(spec, H_e, M)[0]
    if x0 is None:
        x0 = 25.0 * spec.r  # anywhere outside the string; the integral is x0-independent
    kernel, err = quad(lambda y: x0 / (x0 * x0 + y * y), -np.inf, np.inf)
    if err > 1e-8 * abs(kernel):
        raise NumericalError(f"line-integral quadrature error {err:.2e} too large")
    return 1j * spec.omega * 2.0 * H_e * spec.N * d1 * kernel


# ---------------------------------------------------------------------------
# exact shell solution (isotropic degenerate case)

def exact_isotropic_shell_interior(m: int, eta_m: float, R: float, t: float,
                                   mu_rel: complex, h_e_coeff: complex = 1.0,
                                   dps: int = 40) -> complex:
    """Interior axial field at rho = R for an isotropic magnetic annulus.

    Independent reference for the thin-shell shielding factor: when the
    tube is isotropic in (phi, z) with relative permeability ``mu_rel``
    (and vacuum in rho), the radial equation reduces to modified Bessel
    functions of order m sqrt(mu_rel), solvable exactly across the annulus
    R - t/2 < rho < R + t/2 for an interior source harmonic
    h_e_coeff * K_m(eta_m rho).  The thin-shell result must converge to
    this as t/R -> 0 with mu_e = mu_rel ((p_c / 2 pi R)^2 + 1).
    """
    with mp.workdps(dps):
        r1, r2 = mp.mpf(R) - mp.mpf(t) / 2, mp.mpf(R) + mp.mpf(t) / 2
        eta = mp.mpf(eta_m)
        s = mp.sqrt(mp.mpmathify(mu_rel))
        nu = m * s

        def km(r):
            return mp.besselk(m, eta * r)

        def kmp(r):
            return -eta * (mp.besselk(m - 1, eta * r) + mp.besselk(m + 1, eta * r)) / 2

        def im(r):
            return mp.besseli(m, eta * r)

        def imp(r):
            return eta * (mp.besseli(m - 1, eta * r) + mp.besseli(m + 1, eta * r)) / 2

        def inu(r):
            return mp.besseli(nu, s * eta * r)

        def inup(r):
            return s * eta * (mp.besseli(nu - 1, s * eta * r)
                              + mp.besseli(nu + 1, s * eta * r)) / 2

        def knu(r):
            return mp.besselk(nu, s * eta * r)

        def knup(r):
            return -s * eta * (mp.besselk(nu - 1, s * eta * r)
                               + mp.besselk(nu + 1, s * eta * r)) / 2

        # unknowns: response I_m inside, (I_nu, K_nu) in the shell, K_m outside;
        # H_z and dH_z/drho (B_rho with mu_rho = mu0 everywhere) continuous.
        e = mp.mpmathify(h_e_coeff)
        mat = mp.matrix([
            [im(r1), -inu(r1), -knu(r1), 0],
            [imp(r1), -inup(r1), -knup(r1), 0],
            [0, inu(r2), knu(r2), -km(r2)],
            [0, inup(r2), knup(r2), -kmp(r2)],
        ])
        rhs = mp.matrix([-e * km(r1), -e * kmp(r1), 0, 0])
        sol = mp.lu_solve(mat, rhs)
        return complex(sol[1] * inu(mp.mpf(R)) + sol[2] * knu(mp.mpf(R)))


# ---------------------------------------------------------------------------
# lattice-sum re-expansion check

def _pair_sum_term(k: float, m: int, d_a: float, rho: float, phi: float) -> float:
    """cos(m phi_k)/rho_k^m summed over the wire pair at +-k d_a along the field axis."""
    x = rho * math.cos(phi)
    y = rho * math.sin(phi)
    total = 0.0
    for s in (1.0, -1.0):
        xk, yk = x, y - s * k * d_a
        rk = math.hypot(xk, yk)
        total += math.cos(m * math.atan2(yk, xk)) / rk ** m
    return total


def pair_tail_integral(func, start: float) -> float:
    """Integral of a smoothly decaying lattice term from ``start`` to infinity.

    Maps k -> 1/u so quad works on a finite interval.
    """
    value, err = quad(lambda u: func(1.0 / u) / (u * u), 1e-12, 1.0 / start,
                      limit=200)
    if err > 1e-9 * max(abs(value), 1e-12):
        raise NumericalError(f"lattice tail integral error {err:.2e} too large")
    return value


def carson_reexpansion_check(m: int, n_max: int, d_a: float, rho: float,
                             phi: float, k_max: int = 10 ** 4) -> float:
    """Relative error between the direct lattice sum and its re-expansion.

    Direct route: sum cos(m phi_k)/rho_k^m geometrically over k_max wire
    pairs plus an integral tail.  Closed route: the zeta-function
    re-expansion sum_n f_mn rho^n cos(n phi) truncated at n_max.
    """
    if k_max < 10 ** 4:
        raise ValidationError(f"k_max must be >= 1e4, got {k_max}")
    if not 0 <= rho < d_a:
        raise ValidationError("re-expansion requires 0 <= rho < d_a")
    direct = sum(_pair_sum_term(float(k), m, d_a, rho, phi)
                 for k in range(1, k_max + 1))
    direct += pair_tail_integral(
        lambda k: _pair_sum_term(k, m, d_a, rho, phi), k_max + 0.5)
    closed = 0.0
    last = math.inf
    for n in range(0, n_max + 1):
        f = coupling_scaled(m, n)
        if f:
            # f_mn rho^n grouped as (rho/d)^n / d^m to stay in double range
            term = f * (rho / d_a) ** n / d_a ** m * math.cos(n * phi)
            closed += term
            last = abs(term)
    if rho > 0 and last > 1e-12 * max(abs(closed), 1e-30) and n_max < 200:
        raise NumericalError(
            f"re-expansion not converged at n_max = {n_max} (last term {last:.2e})")
    return rel_error(closed, direct)


# ---------------------------------------------------------------------------
# suite

def run_oracle_suite(layout: CoreLayout, spec: ArmourSpec,
                     m_max: int = 30) -> list[OracleReport]:
    """Cross-check the main path against every independent route.

    Tolerances are the ones the acceptance criteria pin; ``converged`` means
    the check passed at its tolerance.
    """
    from . import specialfn

    reports: list[OracleReport] = []

    def add(name, main, oracle, tol):
        err = rel_error(complex(main), complex(oracle))
        reports.append(OracleReport(
            name=name, main_value=complex(main), oracle_value=complex(oracle),
            rel_error=err, converged=bool(err <= tol)))

    x = tube_transform.kappa(spec) * spec.r
    add("bessel_i0_kappa_r", specialfn.bessel_i(0, x), hp_bessel_i(0, x), 1e-10)
    add("bessel_i1_kappa_r", specialfn.bessel_i(1, x), hp_bessel_i(1, x), 1e-10)
    eta1 = 2.0 * math.pi / abs(layout.p_c)
    add("bessel_k1_eta1_R", specialfn.bessel_k(1, eta1 * spec.R),
        hp_bessel_k(1, eta1 * spec.R), 1e-10)
    add("riemann_zeta_7", specialfn.riemann_zeta(7), zeta_direct(7), 1e-12)

    add("mu_longitudinal", tube_transform.mu_longitudinal(spec),
        hp_mu_longitudinal(spec), 1e-10)
    if spec.N > 0:
        add("mu_transverse_m1", tube_transform.mu_transverse(spec, 1),
            hp_mu_transverse_m1(spec), 1e-10)
        carson_err = carson_reexpansion_check(1, 60, d_a_local(spec),
                                              0.4 * d_a_local(spec), 0.7)
        reports.append(OracleReport(
            name="carson_reexpansion_m1", main_value=0j, oracle_value=0j,
            rel_error=carson_err, converged=bool(carson_err <= 1e-9)))

        ws = wire_string_loss(spec, 1000.0)
        add("wire_string_vs_tube", ws, tube_equivalence_loss(spec, 1000.0), 1e-12)
        add("wire_string_vs_line_integral", ws,
            appendix_line_integral_loss(spec, 1000.0), 1e-5)

    add("xi_dual_form_m1", xi_m(1, eta1, spec.R, "wronskian"),
        xi_m(1, eta1, spec.R, "derivative"), 1e-9)
    add("harmonic_e1", exciting_field.harmonic_coefficient(layout, 1).E_m,
        hp_harmonic_e(layout, 1), 1e-12)

    bs = exciting_field.biot_savart_hz(layout, spec.R, 0.3, 0.0)
    add("field_hz_vs_biot_savart",
        exciting_field.field_hz(layout, spec.R, 0.3, 0.0, m_max).value,
        bs.value, 1e-3)
    return reports
