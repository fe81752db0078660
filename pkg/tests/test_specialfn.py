import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from armourloss import DomainError
from armourloss.specialfn import (
    MAX_ABS_Z,
    MAX_ORDER,
    bessel_i,
    bessel_i_prime,
    bessel_k,
    bessel_k_prime,
    riemann_zeta,
)

# frozen 50-digit mpmath references
I0_1P1J = 0.9376084768060292766 + 0.49652994760912213217j
K0_1 = 0.42102443824070833334
K1P_1 = -1.0229316684379429081
ZETA7 = 1.0083492773819228268


def test_bessel_i_at_zero():
    assert bessel_i(0, 0) == 1
    assert bessel_i(1, 0) == 0
    assert bessel_i(5, 0) == 0


def test_bessel_i_complex_reference():
    assert abs(bessel_i(0, 1 + 1j) - I0_1P1J) <= 1e-10 * abs(I0_1P1J)


def test_bessel_k_reference():
    assert abs(bessel_k(0, 1) - K0_1) <= 1e-10 * K0_1


def test_bessel_k_large_argument_asymptotic():
    # K_0(z) ~ sqrt(pi/2z) e^-z sum_k prod_j (4*0 - (2j-1)^2) / (k! (8z)^k)
    z = 30.0
    series = 1.0
    term = 1.0
    for k in range(1, 12):
        term *= (-(2 * k - 1) ** 2) / (k * 8.0 * z)
        series += term
    asymptotic = math.sqrt(math.pi / (2 * z)) * math.exp(-z) * series
    assert abs(bessel_k(0, z) - asymptotic) <= 1e-10 * asymptotic


def test_bessel_k_recurrence():
    k0, k1, k2 = bessel_k(0, 1), bessel_k(1, 1), bessel_k(2, 1)
    assert abs(k2 - (k0 + 2 * k1 / 1.0)) <= 1e-12 * abs(k2)


def test_bessel_i_prime_identity():
    z = 0.5 + 0j
    assert bessel_i_prime(0, z) == bessel_i(1, z)


def test_bessel_k_prime_reference():
    # finite difference of the high-precision K_1 with step 1e-6
    with mp.workdps(40):
        h = mp.mpf("1e-6")
        fd = complex((mp.besselk(1, 1 + h) - mp.besselk(1, 1 - h)) / (2 * h))
    assert abs(bessel_k_prime(1, 1) - fd) <= 1e-8 * abs(fd)
    assert abs(bessel_k_prime(1, 1) - K1P_1) <= 1e-10 * abs(K1P_1)


def test_wronskian_spot_check():
    z = 2 + 0j
    lhs = (bessel_i_prime(1, z) / bessel_i(1, z)
           - bessel_k_prime(1, z) / bessel_k(1, z))
    rhs = 1.0 / (z * bessel_i(1, z) * bessel_k(1, z))
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_zeta_values():
    assert abs(riemann_zeta(2) - math.pi ** 2 / 6) <= 1e-12
    assert abs(riemann_zeta(4) - math.pi ** 4 / 90) <= 1e-12
    assert abs(riemann_zeta(7) - ZETA7) <= 1e-12


@pytest.mark.parametrize("order", [-1, MAX_ORDER + 1])
def test_order_guards(order):
    with pytest.raises(DomainError):
        bessel_i(order, 1.0)
    with pytest.raises(DomainError):
        bessel_k(order, 1.0)


def test_overflow_and_domain_guards():
    with pytest.raises(DomainError):
        bessel_i(0, MAX_ABS_Z + 1)
    with pytest.raises(DomainError):
        bessel_k(0, 0)
    with pytest.raises(DomainError):
        bessel_k(64, 1e-8)  # overflows double range
    with pytest.raises(DomainError):
        riemann_zeta(1)


def test_wronskian_property():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        z = rng.uniform(0.1, 20.0)
        m = int(rng.integers(0, 11))
        lhs = (bessel_i_prime(m, z) / bessel_i(m, z)
               - bessel_k_prime(m, z) / bessel_k(m, z))
        rhs = 1.0 / (z * bessel_i(m, z) * bessel_k(m, z))
        assert abs(lhs - rhs) <= 1e-9 * abs(rhs)


def test_recurrence_property():
    rng = np.random.default_rng(7)
    for _ in range(300):
        z = rng.uniform(0.1, 20.0)
        m = int(rng.integers(1, 11))
        lhs = bessel_i(m - 1, z) - bessel_i(m + 1, z)
        rhs = 2 * m / z * bessel_i(m, z)
        assert abs(lhs - rhs) <= 1e-9 * abs(rhs)


def test_conjugate_symmetry():
    rng = np.random.default_rng(3)
    for _ in range(100):
        z = complex(rng.uniform(0.1, 10), rng.uniform(-5, 5))
        m = int(rng.integers(0, 8))
        a = bessel_i(m, z.conjugate())
        b = bessel_i(m, z).conjugate()
        assert cmath.isclose(a, b, rel_tol=1e-13)


@pytest.mark.parametrize("m", [0, 1, 3, 10, 30])
def test_accuracy_vs_mpmath(m):
    # argument ranges induced by the example designs: eta_m rho up to ~60 real,
    # kappa r complex with |z| of a few
    rng = np.random.default_rng(m)
    samples = [complex(v, 0) for v in np.geomspace(0.02, 60.0, 12)]
    samples += [complex(rng.uniform(0.5, 3), rng.uniform(0.2, 2)) for _ in range(4)]
    for z in samples:
        with mp.workdps(40):
            ref_i = complex(mp.besseli(m, mp.mpmathify(z)))
            ref_k = complex(mp.besselk(m, mp.mpmathify(z)))
        if abs(ref_i) > 1e-280:
            assert abs(bessel_i(m, z) - ref_i) <= 1e-10 * abs(ref_i)
        if abs(ref_k) > 1e-280:
            assert abs(bessel_k(m, z) - ref_k) <= 1e-10 * abs(ref_k)
