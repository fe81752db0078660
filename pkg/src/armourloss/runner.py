"""Composition of the solver chain and sweep execution.

``run_single`` wires the exciting-field expansion, the tube transformation
and the shell loss together for one design; ``run_sweep`` substitutes one
parameter over an ordered value list, optionally computing the truncated
(M = 1) and extended (M = 17) transverse solutions side by side.  Sweep
rows may run in parallel (``ARMOUR_LOSS_THREADS`` caps the pool) but are
emitted in input order, and a failing row is reported in place without
aborting the sweep.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .armour_loss import LossResult, apparent_loss, shell_solution, with_lambda2
from .config import CableDesign, SweepSpec, apply_sweep_value
from .errors import ArmourLossError, NumericalError
from .exciting_field import harmonic_coefficient, selected_orders
from .tube_transform import TubeEquivalent, geometry

FULL_TRANSVERSE_ORDER = 17  # extended truncation shown alongside M = 1


@dataclass(frozen=True)
class SingleResult:
    loss: LossResult
    tube: TubeEquivalent


@dataclass(frozen=True)
class SweepRow:
    value: object                          # the substituted parameter value
    results: dict[int, SingleResult]       # keyed by transverse order M
    error: str | None = None


def run_single(design: CableDesign, transverse_order: int | None = None) -> SingleResult:
    """Full loss evaluation of one design."""
    order = design.solver.transverse_order if transverse_order is None else transverse_order
    layout = design.layout
    coeffs = [harmonic_coefficient(layout, m)
              for m in selected_orders(design.solver.m_max, layout.sequence)]
    tube = geometry(design.armour, order)
    solution = shell_solution(coeffs, tube, layout)
    loss = apparent_loss(solution, tube, layout)
    if abs(loss.delta_S) > 0 and loss.tail_bound > design.solver.tail_tol * abs(loss.delta_S):
        raise NumericalError(
            f"harmonic series tail {loss.tail_bound:.2e} VA/m exceeds the "
            f"relative budget {design.solver.tail_tol:.1e}; increase solver.m_max")
    if design.r_ac_ohm_per_m is not None:
        loss = with_lambda2(loss, design.r_ac_ohm_per_m, layout)
    return SingleResult(loss=loss, tube=tube)


def _max_workers() -> int:
    env = os.environ.get("ARMOUR_LOSS_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ArmourLossError(f"ARMOUR_LOSS_THREADS must be an integer, got {env!r}")
        if n < 1:
            raise ArmourLossError(f"ARMOUR_LOSS_THREADS must be positive, got {n}")
        return n
    return min(4, os.cpu_count() or 1)


def run_sweep(design: CableDesign, sweep: SweepSpec,
              both_truncations: bool = False) -> list[SweepRow]:
    """One row per sweep value, in input order; per-row errors do not abort."""
    orders = ([1, FULL_TRANSVERSE_ORDER] if both_truncations
              else [design.solver.transverse_order])

    def one(value) -> SweepRow:
        try:
            varied = apply_sweep_value(design, sweep.parameter, value)
            results = {m: run_single(varied, transverse_order=m) for m in orders}
            return SweepRow(value=value, results=results)
        except ArmourLossError as exc:
            return SweepRow(value=value, results={}, error=str(exc))

    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        return list(pool.map(one, sweep.values))
