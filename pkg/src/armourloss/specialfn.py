"""Complex-argument special functions used throughout the solver.

Modified Bessel functions of the first and second kind for non-negative
integer order and complex argument, their derivatives, and the Riemann
zeta function at integer arguments.  Evaluation is delegated to scipy's
AMOS-backed ufuncs, which handle complex arguments; this module adds the
domain guards the rest of the package relies on and raises instead of
returning non-finite values.
"""

from __future__ import annotations

import scipy.special as _sp

from .errors import DomainError

# AMOS overflows around |z| ~ 700 for exponentially growing I_m; orders are
# capped just above the largest the solver can request (derivative recurrences
# at the highest configurable harmonic reach order 65).
MAX_ORDER = 65
MAX_ABS_Z = 700.0


def _check_order(order: int) -> None:
    if order < 0:
        raise DomainError(f"negative order {order}; use the symmetry I_-m = I_m")
    if order > MAX_ORDER:
        raise DomainError(f"order {order} exceeds supported maximum {MAX_ORDER}")


def _as_finite(value, name: str, order: int, z: complex) -> complex:
    value = complex(value)
    if value != value or abs(value) == float("inf"):  # NaN or Inf
        raise DomainError(f"{name}({order}, {z}) is not finite")
    return value


def bessel_i(order: int, z: complex) -> complex:
    """Modified Bessel function of the first kind, I_order(z)."""
    _check_order(order)
    z = complex(z)
    if abs(z) >= MAX_ABS_Z:
        raise DomainError(f"|z| = {abs(z):.3g} exceeds overflow guard {MAX_ABS_Z}")
    return _as_finite(_sp.iv(order, z), "I", order, z)


def bessel_k(order: int, z: complex) -> complex:
    """Modified Bessel function of the second kind, K_order(z)."""
    _check_order(order)
    z = complex(z)
    if z == 0:
        raise DomainError("K_m(z) is singular at z = 0")
    return _as_finite(_sp.kv(order, z), "K", order, z)


def bessel_i_prime(order: int, z: complex) -> complex:
    """dI_order/dz via the recurrence I_m' = (I_{m-1} + I_{m+1}) / 2."""
    if order == 0:
        return bessel_i(1, z)
    return 0.5 * (bessel_i(order - 1, z) + bessel_i(order + 1, z))


def bessel_k_prime(order: int, z: complex) -> complex:
    """dK_order/dz via the recurrence K_m' = -(K_{m-1} + K_{m+1}) / 2."""
    if order == 0:
        return -bessel_k(1, z)
    return -0.5 * (bessel_k(order - 1, z) + bessel_k(order + 1, z))


def riemann_zeta(s: int) -> float:
    """Riemann zeta function at integer s >= 2."""
    if s < 2:
        raise DomainError(f"zeta({s}) outside supported domain s >= 2")
    return float(_sp.zeta(float(s)))
