"""Service-layer operations shared by the HTTP endpoints and the CLI.

These functions speak the pydantic request/response models; the CLI calls
them in-process by default and over HTTP when pointed at a server.
"""

from __future__ import annotations

from ..config import SweepSpec
from ..oracle import run_oracle_suite
from ..runner import FULL_TRANSVERSE_ORDER, run_single, run_sweep
from .models import (
    ComplexValue,
    DesignModel,
    EvalResponse,
    SweepRequest,
    SweepResponse,
    SweepRowModel,
    ValidateResponse,
    OracleReportModel,
)


def evaluate(design_model: DesignModel) -> EvalResponse:
    design = design_model.to_design()
    return EvalResponse.from_result(run_single(design))


def sweep(request: SweepRequest) -> SweepResponse:
    design = request.design.to_design()
    values = [v.unwrap() if isinstance(v, ComplexValue) else v
              for v in request.values]
    spec = SweepSpec(parameter=request.parameter, values=tuple(values))
    rows = run_sweep(design, spec, both_truncations=request.both_truncations)
    return SweepResponse(parameter=request.parameter,
                         rows=[SweepRowModel.from_row(r) for r in rows])


def validate(design_model: DesignModel) -> ValidateResponse:
    design = design_model.to_design()
    reports = run_oracle_suite(design.layout, design.armour,
                               m_max=design.solver.m_max)
    return ValidateResponse(
        reports=[OracleReportModel.from_report(r) for r in reports],
        all_converged=all(r.converged for r in reports),
    )


def sweep_orders(request: SweepRequest) -> list[int]:
    """Transverse orders a sweep will evaluate (for table headers)."""
    if request.both_truncations:
        return [1, FULL_TRANSVERSE_ORDER]
    return [request.design.solver.transverse_order]
