"""Armour losses of three-core power cables.

Analytical armour-loss model: harmonic expansion of the exciting field of
the twisted cores, homogenization of the wire armour into an equivalent
anisotropic tube, thin-shell field solution, apparent complex power and the
IEC 60287 armour loss factor.  Brute-force oracles for every non-trivial
step ship with the library.
"""

__version__ = "0.1.0"

from .armour_loss import (
    LossResult,
    ShellSolution,
    ValidityWarning,
    apparent_loss,
    lambda2,
    mu_effective,
    shell_solution,
    xi_m,
)
from .config import (
    CableDesign,
    SolverSettings,
    SweepSpec,
    apply_sweep_value,
    parse_design,
    serialize_design,
)
from .errors import ArmourLossError, DomainError, NumericalError, ValidationError
from .exciting_field import (
    MU0,
    CoreLayout,
    HarmonicFieldCoefficient,
    biot_savart_hz,
    field_hz,
    harmonic_coefficient,
    phase_selector,
    selected_orders,
)
from .runner import SingleResult, SweepRow, run_single, run_sweep
from .tube_transform import (
    ArmourSpec,
    ComplexPermeabilityTensor,
    TubeEquivalent,
    coupling_coefficient,
    geometry,
    mu_longitudinal,
    mu_transverse,
    pq_coefficients,
    transverse_response_full,
    transverse_response_truncated,
)

__all__ = [
    "__version__",
    "MU0",
    "ArmourLossError", "ValidationError", "NumericalError", "DomainError",
    "CoreLayout", "HarmonicFieldCoefficient", "phase_selector",
    "harmonic_coefficient", "field_hz", "biot_savart_hz", "selected_orders",
    "ArmourSpec", "TubeEquivalent", "ComplexPermeabilityTensor",
    "mu_longitudinal", "mu_transverse", "coupling_coefficient",
    "pq_coefficients", "transverse_response_truncated", "transverse_response_full",
    "geometry",
    "ShellSolution", "LossResult", "ValidityWarning",
    "mu_effective", "shell_solution", "apparent_loss", "lambda2", "xi_m",
    "CableDesign", "SolverSettings", "SweepSpec",
    "parse_design", "serialize_design", "apply_sweep_value",
    "SingleResult", "SweepRow", "run_single", "run_sweep",
]
