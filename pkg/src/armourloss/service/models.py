"""Pydantic request/response models of the HTTP service.

Complex quantities travel as ``{"re": ..., "im": ...}`` objects; tube
permeabilities are reported relative to mu0.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..config import CableDesign, SolverSettings
from ..exciting_field import MU0, CoreLayout
from ..oracle import OracleReport
from ..runner import SingleResult, SweepRow
from ..tube_transform import ArmourSpec


class ComplexValue(BaseModel):
    re: float
    im: float = 0.0

    @classmethod
    def wrap(cls, z: complex) -> "ComplexValue":
        return cls(re=z.real, im=z.imag)

    def unwrap(self) -> complex:
        return complex(self.re, self.im)


class CoreModel(BaseModel):
    helix_radius_m: float
    pitch_m: float
    current_a: float
    frequency_rad_s: float
    sequence: str = "positive"


class ArmourModel(BaseModel):
    wire_count: int
    wire_radius_m: float
    mean_radius_m: float
    pitch_m: float
    conductivity_s_per_m: float
    relative_permeability: ComplexValue


class SolverModel(BaseModel):
    m_max: int = 30
    transverse_order: int = 1
    tail_tol: float = 1e-9


class DesignModel(BaseModel):
    core: CoreModel
    armour: ArmourModel
    ac_resistance_ohm_per_m: float | None = None
    solver: SolverModel = Field(default_factory=SolverModel)

    @classmethod
    def from_design(cls, design: CableDesign) -> "DesignModel":
        return cls(
            core=CoreModel(
                helix_radius_m=design.layout.a_p,
                pitch_m=design.layout.p_c,
                current_a=design.layout.I_c,
                frequency_rad_s=design.layout.omega,
                sequence=design.layout.sequence,
            ),
            armour=ArmourModel(
                wire_count=design.armour.N,
                wire_radius_m=design.armour.r,
                mean_radius_m=design.armour.R,
                pitch_m=design.armour.p_a,
                conductivity_s_per_m=design.armour.sigma,
                relative_permeability=ComplexValue.wrap(design.armour.mu_r),
            ),
            ac_resistance_ohm_per_m=design.r_ac_ohm_per_m,
            solver=SolverModel(
                m_max=design.solver.m_max,
                transverse_order=design.solver.transverse_order,
                tail_tol=design.solver.tail_tol,
            ),
        )

    def to_design(self) -> CableDesign:
        layout = CoreLayout(
            a_p=self.core.helix_radius_m,
            p_c=self.core.pitch_m,
            I_c=self.core.current_a,
            omega=self.core.frequency_rad_s,
            sequence=self.core.sequence,
        )
        armour = ArmourSpec(
            N=self.armour.wire_count,
            r=self.armour.wire_radius_m,
            R=self.armour.mean_radius_m,
            p_a=self.armour.pitch_m,
            sigma=self.armour.conductivity_s_per_m,
            mu_r=self.armour.relative_permeability.unwrap(),
            omega=self.core.frequency_rad_s,
        )
        solver = SolverSettings(
            m_max=self.solver.m_max,
            transverse_order=self.solver.transverse_order,
            tail_tol=self.solver.tail_tol,
        )
        return CableDesign(layout=layout, armour=armour,
                           r_ac_ohm_per_m=self.ac_resistance_ohm_per_m,
                           solver=solver)


class HarmonicTermModel(BaseModel):
    m: int
    va_per_m: ComplexValue


class TubeModel(BaseModel):
    mu_z_prime_rel: ComplexValue
    mu_phi_prime_rel: ComplexValue
    theta_a_rad: float
    d_a_local_m: float
    thickness_m: float
    mean_radius_m: float


class LossModel(BaseModel):
    loss_w_per_m: float
    delta_s_va_per_m: ComplexValue
    lambda2: float | None
    mu_e_rel: ComplexValue
    m_used: int
    tail_bound_va_per_m: float
    per_harmonic: list[HarmonicTermModel]


class EvalResponse(BaseModel):
    loss: LossModel
    tube: TubeModel

    @classmethod
    def from_result(cls, result: SingleResult) -> "EvalResponse":
        loss, tube = result.loss, result.tube
        return cls(
            loss=LossModel(
                loss_w_per_m=loss.armour_loss_w_per_m,
                delta_s_va_per_m=ComplexValue.wrap(loss.delta_S),
                lambda2=loss.lambda2,
                mu_e_rel=ComplexValue.wrap(loss.mu_e / MU0),
                m_used=loss.m_used,
                tail_bound_va_per_m=loss.tail_bound,
                per_harmonic=[HarmonicTermModel(m=m, va_per_m=ComplexValue.wrap(c))
                              for m, c in loss.per_harmonic],
            ),
            tube=TubeModel(
                mu_z_prime_rel=ComplexValue.wrap(tube.mu_z_prime / MU0),
                mu_phi_prime_rel=ComplexValue.wrap(tube.mu_phi_prime / MU0),
                theta_a_rad=tube.theta_a,
                d_a_local_m=tube.d_a_local,
                thickness_m=tube.t,
                mean_radius_m=tube.R,
            ),
        )


class SweepRequest(BaseModel):
    design: DesignModel
    parameter: str
    values: list[float] | list[ComplexValue]
    both_truncations: bool = False


class SweepRowModel(BaseModel):
    value: float | ComplexValue
    results: dict[str, EvalResponse]  # keyed by transverse order
    error: str | None = None

    @classmethod
    def from_row(cls, row: SweepRow) -> "SweepRowModel":
        value = (ComplexValue.wrap(row.value) if isinstance(row.value, complex)
                 else float(row.value))
        return cls(
            value=value,
            results={str(m): EvalResponse.from_result(res)
                     for m, res in sorted(row.results.items())},
            error=row.error,
        )


class SweepResponse(BaseModel):
    parameter: str
    rows: list[SweepRowModel]


class OracleReportModel(BaseModel):
    name: str
    main: ComplexValue
    oracle: ComplexValue
    rel_error: float
    converged: bool

    @classmethod
    def from_report(cls, report: OracleReport) -> "OracleReportModel":
        return cls(
            name=report.name,
            main=ComplexValue.wrap(report.main_value),
            oracle=ComplexValue.wrap(report.oracle_value),
            rel_error=report.rel_error,
            converged=report.converged,
        )


class ValidateResponse(BaseModel):
    reports: list[OracleReportModel]
    all_converged: bool


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str
