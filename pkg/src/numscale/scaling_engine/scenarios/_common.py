"""Helpers shared by the grid scenarios."""

import math
from collections.abc import Callable

import numpy as np

from ..config import ScenarioConfig
from ..exceptions import InputPreparationError
from ..grid import Grid1D, convergence_ratio
from ..scaling_field import FieldSpec

# 0.3 gaussian + 0.2i sine on the default 20-unit interval; the sine is
# periodic on it and the gaussian is negligible at the wrap
SMOOTH_FIELD: dict = {
    "field": {
        "kind": "closed_form",
        "alpha": {"kind": "gaussian", "amplitude": 0.3, "center": 0.0, "width": 1.5},
        "beta": {"kind": "sine", "amplitude": 0.2, "wavenumber": 2 * math.pi / 10},
    }
}

CONVERGENCE_TOLERANCE = 0.2


def require_closed_form(cfg: ScenarioConfig, scenario_name: str) -> None:
    """Grid refinement needs inputs that can be re-sampled"""
    sampled = [
        name
        for name, kind in (("field", cfg.field.kind), ("packet", cfg.packet.kind))
        if kind == "samples"
    ]
    if sampled:
        raise InputPreparationError(
            f"{', '.join(sampled)} must be closed-form for convergence checks",
            scenario_name=scenario_name,
        )


def pure_phase(f: FieldSpec, grid: Grid1D) -> FieldSpec:
    """Same field with alpha set to zero"""
    if f.is_sampled:
        return FieldSpec.sampled(grid, np.zeros(grid.n), f.beta_samples)
    return FieldSpec.closed_form(None, f.beta)


def max_abs_difference(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def relative_max_difference(a: np.ndarray, b: np.ndarray) -> float:
    scale = float(np.max(np.abs(b)))
    difference = max_abs_difference(a, b)
    return difference / scale if scale else difference


def convergence(
    residual_on: Callable[[Grid1D], float],
    grid: Grid1D,
    order: int = 2,
) -> tuple[float, str]:
    """
    Halving test: |r(h)/r(h/2) - 2^order| / 2^order.

    Returns the residual and a detail line with both measurements.
    """
    coarse = residual_on(grid)
    fine = residual_on(grid.refined())
    expected = 2.0**order
    ratio = convergence_ratio(coarse, fine)
    detail = f"r(h)={coarse:.6e} r(h/2)={fine:.6e} ratio={ratio:.4f}"
    return abs(ratio - expected) / expected, detail


def mismatches(pairs: list[tuple[object, object]]) -> tuple[float, str | None]:
    """Count unequal (got, expected) pairs; detail lists the first few"""
    failed = [f"{got!s} != {expected!s}" for got, expected in pairs if got != expected]
    return float(len(failed)), ("; ".join(failed[:3]) or None)
