import pytest

from armourloss import ArmourSpec, CableDesign, CoreLayout

OMEGA = 314.16
# example design: 52.25 mm core helix, 115.6 mm armour radius, 2.5 mm wires,
# 5.3763 MS/m steel, 1000 A
TABLE1 = dict(a_p=0.05225, R=0.1156, r=0.0025, sigma=5.3763e6, I_c=1000.0)

# the three (core pitch, armour pitch) pairings used by the reference sweeps
PITCH_PAIRS = ((1.2, -100.0), (2.4, -2.4), (4.0, -4.0))
MU_R_VALUES = (150 - 50j, 600 - 350j)


def make_layout(p_c=1.2, I_c=TABLE1["I_c"], sequence="positive"):
    return CoreLayout(a_p=TABLE1["a_p"], p_c=p_c, I_c=I_c, omega=OMEGA,
                      sequence=sequence)


def make_armour(N=135, p_a=-100.0, mu_r=150 - 50j, r=TABLE1["r"],
                sigma=TABLE1["sigma"], R=TABLE1["R"]):
    return ArmourSpec(N=N, r=r, R=R, p_a=p_a, sigma=sigma, mu_r=mu_r,
                      omega=OMEGA)


def make_design(p_c=1.2, p_a=-100.0, mu_r=150 - 50j, N=135, r_ac=None, **kw):
    return CableDesign(layout=make_layout(p_c=p_c),
                       armour=make_armour(N=N, p_a=p_a, mu_r=mu_r),
                       r_ac_ohm_per_m=r_ac, **kw)


@pytest.fixture
def table1_layout():
    return make_layout()


@pytest.fixture
def table1_armour():
    return make_armour()


@pytest.fixture
def table1_design():
    return make_design()
