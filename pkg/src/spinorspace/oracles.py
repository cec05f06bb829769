"""Finite-difference references for the closed-form derivatives.

All derivatives are central differences with step ``h = 1e-6 (1 + |x|)``.
The half-angle is unwrapped between samples: every sample is evaluated with
the lifted angle nearest to the one at the centre point, so stencils that
straddle the cut half-plane see a continuous field.
"""

from __future__ import annotations

import math

import numpy as np

from .calculus import CRResidual, Model, field_value
from .charts import ChartPoint, to_cartesian, xi_in_chart, eta_in_chart
from .pseudo_model import DEFAULT_CONTEXT, BranchContext, as_vector, branch_gamma

__all__ = [
    "REL_STEP",
    "step_for",
    "lifted_field",
    "fd_dir_deriv",
    "fd_gradient",
    "fd_residual",
    "fd_chart_dir_deriv",
    "fd_jacobian",
    "relative_error",
    "scaled_error",
]

REL_STEP = 1e-6


def step_for(x) -> float:
    return REL_STEP * (1.0 + float(np.linalg.norm(np.asarray(x, dtype=float))))


def lifted_field(model, v, ctx: BranchContext = DEFAULT_CONTEXT, *, sheet: int = 1, gamma=None):
    """Field as a function of position, continuous through the centre ``v``."""
    model = Model(model)
    v = as_vector(v)
    g0 = branch_gamma(v.a1, v.a2, ctx, sheet=sheet, gamma=gamma)
    base = math.atan2(v.a2, v.a1)

    def f(x) -> np.ndarray:
        g = g0 + math.remainder(math.atan2(x[1], x[0]) - base, 2 * math.pi)
        return field_value(model, x, ctx, gamma=g).as_array()

    return f


def _central(f, x: np.ndarray, d: np.ndarray, h: float) -> np.ndarray:
    return (f(x + h * d) - f(x - h * d)) / (2.0 * h)


def fd_dir_deriv(model, v, n, ctx: BranchContext = DEFAULT_CONTEXT, *, h=None, **branch) -> np.ndarray:
    x = np.asarray(tuple(as_vector(v)), dtype=float)
    d = np.array([float(n[0]), float(n[1]), 0.0])
    return _central(lifted_field(model, v, ctx, **branch), x, d, h or step_for(x))


def fd_gradient(model, v, ctx: BranchContext = DEFAULT_CONTEXT, *, h=None, **branch) -> np.ndarray:
    """Rows = components, columns = d/dx1, d/dx2."""
    cols = [fd_dir_deriv(model, v, e, ctx, h=h, **branch) for e in ((1.0, 0.0), (0.0, 1.0))]
    return np.column_stack(cols)


def fd_residual(model, v, ctx: BranchContext = DEFAULT_CONTEXT, *, h=None, **branch) -> CRResidual:
    """Cauchy-Riemann defects from differenced real and imaginary parts."""
    g = fd_gradient(model, v, ctx, h=h, **branch)
    d1, d2 = g[:, 0], g[:, 1]
    out = []
    for k in (0, 1):
        out.append(d1[k].real - d2[k].imag)
        out.append(d2[k].real + d1[k].imag)
    return CRResidual(*out)


def fd_chart_dir_deriv(p: ChartPoint, model, nu, ctx: BranchContext = DEFAULT_CONTEXT, *, h=None) -> np.ndarray:
    """Difference along ``nu`` in the first two chart coordinates.

    The chart fields are continuous in the extended domain, so no unwrapping
    is needed as long as the stencil stays inside it.
    """
    evaluate = xi_in_chart if Model(model) is Model.XI else eta_in_chart
    y = np.array(p.coords())
    h = h or step_for(y)
    d = np.array([float(nu[0]), float(nu[1]), 0.0])

    def f(yy):
        return evaluate(ChartPoint(p.chart, *yy, p.variant), ctx).as_array()

    return _central(f, y, d, h)


def fd_jacobian(p: ChartPoint, *, h=None) -> np.ndarray:
    y = np.array(p.coords())
    h = h or step_for(y)
    cols = []
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        hi = to_cartesian(ChartPoint(p.chart, *(y + e), variant=p.variant))
        lo = to_cartesian(ChartPoint(p.chart, *(y - e), variant=p.variant))
        cols.append((hi - lo) / (2.0 * h))
    return np.column_stack(cols)


def relative_error(got, want) -> float:
    got, want = np.asarray(got), np.asarray(want)
    scale = float(np.linalg.norm(want))
    diff = float(np.linalg.norm(got - want))
    return diff / scale if scale > 0 else diff


def scaled_error(got, want, scale: float) -> float:
    """Difference relative to ``max(|want|, scale)``.

    Residuals are differences of derivatives and can be far smaller than
    the derivatives themselves; ``scale`` should then be the gradient size.
    """
    got, want = np.asarray(got), np.asarray(want)
    return float(np.linalg.norm(got - want)) / max(float(np.linalg.norm(want)), scale)
