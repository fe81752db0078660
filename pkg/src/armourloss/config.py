"""Cable design files: flat key-value text with units in the key names.

Example::

    # three-core cable, contrary-lay armour
    core.helix_radius_m = 0.05225
    core.pitch_m = 1.2
    core.current_a = 1000
    core.frequency_rad_s = 314.16
    armour.wire_count = 135
    armour.wire_radius_m = 0.0025
    armour.mean_radius_m = 0.1156
    armour.pitch_m = -100
    armour.conductivity_s_per_m = 5.3763e6
    armour.relative_permeability = 150,-50
    conductor.ac_resistance_ohm_per_m = 4e-5
    solver.m_max = 30
    solver.transverse_order = 1

Complex values are written as a ``re,im`` pair.  Lines starting with ``#``
and blank lines are ignored.  Parsing a serialized design yields the same
design back (round-trip modulo formatting).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ValidationError
from .exciting_field import CoreLayout
from .tube_transform import ArmourSpec

SWEEPABLE_PARAMETERS = ("N", "p_a", "p_c", "mu_r", "I_c")

# field-order also defines the canonical serialization order
_REQUIRED_KEYS = (
    "core.helix_radius_m", "core.pitch_m", "core.current_a", "core.frequency_rad_s",
    "armour.wire_count", "armour.wire_radius_m", "armour.mean_radius_m",
    "armour.pitch_m", "armour.conductivity_s_per_m", "armour.relative_permeability",
)
_OPTIONAL_KEYS = (
    "core.sequence", "conductor.ac_resistance_ohm_per_m",
    "solver.m_max", "solver.transverse_order", "solver.tail_tol",
)


@dataclass(frozen=True)
class SolverSettings:
    m_max: int = 30
    transverse_order: int = 1
    tail_tol: float = 1e-9  # relative truncation-tail budget of the loss series

    def __post_init__(self) -> None:
        if not 1 <= self.m_max <= 63:
            raise ValidationError(f"m_max must be in 1..63, got {self.m_max}")
        if not 1 <= self.transverse_order <= 64:
            raise ValidationError(
                f"transverse_order must be in 1..64, got {self.transverse_order}")
        if not self.tail_tol > 0:
            raise ValidationError(f"tail_tol must be positive, got {self.tail_tol}")


@dataclass(frozen=True)
class CableDesign:
    layout: CoreLayout
    armour: ArmourSpec
    r_ac_ohm_per_m: float | None = None
    solver: SolverSettings = field(default_factory=SolverSettings)

    def __post_init__(self) -> None:
        if self.layout.omega != self.armour.omega:
            raise ValidationError("core and armour must share one frequency")
        if self.r_ac_ohm_per_m is not None and self.r_ac_ohm_per_m <= 0:
            raise ValidationError(
                f"AC resistance must be positive, got {self.r_ac_ohm_per_m}")


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter and its ordered values."""

    parameter: str
    values: tuple

    def __post_init__(self) -> None:
        if self.parameter not in SWEEPABLE_PARAMETERS:
            raise ValidationError(
                f"unknown sweep parameter {self.parameter!r}; "
                f"expected one of {SWEEPABLE_PARAMETERS}")
        if not self.values:
            raise ValidationError("sweep needs at least one value")
        object.__setattr__(self, "values", tuple(self.values))


def apply_sweep_value(design: CableDesign, parameter: str, value) -> CableDesign:
    """New design with one parameter substituted (validates the result)."""
    if parameter == "N":
        return replace(design, armour=replace(design.armour, N=int(value)))
    if parameter == "p_a":
        return replace(design, armour=replace(design.armour, p_a=float(value)))
    if parameter == "mu_r":
        return replace(design, armour=replace(design.armour, mu_r=complex(value)))
    if parameter == "p_c":
        return replace(design, layout=replace(design.layout, p_c=float(value)))
    if parameter == "I_c":
        return replace(design, layout=replace(design.layout, I_c=float(value)))
    raise ValidationError(f"unknown sweep parameter {parameter!r}")


def parse_complex(text: str) -> complex:
    """Parse the ``re,im`` pair convention used in design files."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        parts.append("0")
    if len(parts) != 2:
        raise ValidationError(f"expected 're,im' pair, got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ValidationError(f"bad complex value {text!r}") from exc


def format_complex(z: complex) -> str:
    return f"{z.real!r},{z.imag!r}"


def _parse_pairs(text: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in pairs:
            raise ValidationError(f"line {lineno}: duplicate key {key!r}")
        pairs[key] = value
    return pairs


def parse_design(text: str) -> CableDesign:
    """Parse a design file; raises ValidationError with key context."""
    pairs = _parse_pairs(text)
    unknown = set(pairs) - set(_REQUIRED_KEYS) - set(_OPTIONAL_KEYS)
    if unknown:
        raise ValidationError(f"unknown keys: {', '.join(sorted(unknown))}")
    missing = [k for k in _REQUIRED_KEYS if k not in pairs]
    if missing:
        raise ValidationError(f"missing keys: {', '.join(missing)}")

    def num(key: str, cast=float):
        try:
            return cast(pairs[key])
        except ValueError as exc:
            raise ValidationError(f"bad value for {key}: {pairs[key]!r}") from exc

    omega = num("core.frequency_rad_s")
    layout = CoreLayout(
        a_p=num("core.helix_radius_m"),
        p_c=num("core.pitch_m"),
        I_c=num("core.current_a"),
        omega=omega,
        sequence=pairs.get("core.sequence", "positive"),
    )
    armour = ArmourSpec(
        N=num("armour.wire_count", int),
        r=num("armour.wire_radius_m"),
        R=num("armour.mean_radius_m"),
        p_a=num("armour.pitch_m"),
        sigma=num("armour.conductivity_s_per_m"),
        mu_r=parse_complex(pairs["armour.relative_permeability"]),
        omega=omega,
    )
    solver = SolverSettings(
        m_max=num("solver.m_max", int) if "solver.m_max" in pairs else 30,
        transverse_order=(num("solver.transverse_order", int)
                          if "solver.transverse_order" in pairs else 1),
        tail_tol=num("solver.tail_tol") if "solver.tail_tol" in pairs else 1e-9,
    )
    r_ac = (num("conductor.ac_resistance_ohm_per_m")
            if "conductor.ac_resistance_ohm_per_m" in pairs else None)
    return CableDesign(layout=layout, armour=armour, r_ac_ohm_per_m=r_ac, solver=solver)


def serialize_design(design: CableDesign) -> str:
    """Canonical text form; parse_design(serialize_design(d)) == d."""
    lines = [
        f"core.helix_radius_m = {design.layout.a_p!r}",
        f"core.pitch_m = {design.layout.p_c!r}",
        f"core.current_a = {design.layout.I_c!r}",
        f"core.frequency_rad_s = {design.layout.omega!r}",
        f"core.sequence = {design.layout.sequence}",
        f"armour.wire_count = {design.armour.N}",
        f"armour.wire_radius_m = {design.armour.r!r}",
        f"armour.mean_radius_m = {design.armour.R!r}",
        f"armour.pitch_m = {design.armour.p_a!r}",
        f"armour.conductivity_s_per_m = {design.armour.sigma!r}",
        f"armour.relative_permeability = {format_complex(design.armour.mu_r)}",
    ]
    if design.r_ac_ohm_per_m is not None:
        lines.append(f"conductor.ac_resistance_ohm_per_m = {design.r_ac_ohm_per_m!r}")
    lines += [
        f"solver.m_max = {design.solver.m_max}",
        f"solver.transverse_order = {design.solver.transverse_order}",
        f"solver.tail_tol = {design.solver.tail_tol!r}",
    ]
    return "\n".join(lines) + "\n"
