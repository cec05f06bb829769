"""Proper-vector model: spinor eta and the orthogonal pair (c, b).

The symmetric square of ``eta = (x, y)`` is the complex null vector::

    c + i b = ( i (y^2 - x^2) / 2,  (y^2 + x^2) / 2,  i x y )

which is the component form of the polar expressions in ``(N, M, n, m)``.
Space is parameterized by ``b``; the inverse map picks the half-space sign
``sigma = sign(b3)`` (``+1`` on the plane)::

    eta = ( sigma sqrt(b - rho) exp(-i gamma/2),  sqrt(b + rho) exp(+i gamma/2) )
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Spinor
from .pseudo_model import (
    DEFAULT_CONTEXT,
    BranchContext,
    as_vector,
    branch_gamma,
)
from .errors import ValidationError

__all__ = [
    "ProperPairState",
    "FrameVectors",
    "half_space_sign",
    "pair_from_eta",
    "frame_from_params",
    "eta_from_proper",
]


@dataclass(frozen=True)
class ProperPairState:
    cvec: np.ndarray
    bvec: np.ndarray

    @property
    def b(self) -> float:
        return float(np.linalg.norm(self.bvec))

    @property
    def rho_b(self) -> float:
        return math.hypot(self.bvec[0], self.bvec[1])


@dataclass(frozen=True)
class FrameVectors:
    fvec: np.ndarray
    efvec: np.ndarray


def half_space_sign(b3: float) -> int:
    return -1 if b3 < 0 else 1


def pair_from_eta(s: Spinor) -> ProperPairState:
    x, y = s.c1, s.c2
    x2, y2, xy = x * x, y * y, x * y
    w = (0.5j * (y2 - x2), 0.5 * (y2 + x2), 1j * xy)
    return ProperPairState(
        np.array([z.real for z in w]), np.array([z.imag for z in w])
    )


def frame_from_params(N: float, M: float, gamma: float, kappa: float):
    """Frame ``(f, e_f)`` and the pair ``(c, b)`` rotated by ``kappa`` inside it.

    Returns ``(FrameVectors, ProperPairState)``.
    """
    if N < 0 or M < 0:
        raise ValidationError("moduli N and M must be non-negative")
    half_diff = 0.5 * (M * M - N * N)
    length = 0.5 * (M * M + N * N)
    cg, sg = math.cos(gamma), math.sin(gamma)
    f = np.array([half_diff * cg, half_diff * sg, M * N])
    ef = np.array([-length * sg, length * cg, 0.0])
    ck, sk = math.cos(kappa), math.sin(kappa)
    c = ef * ck - f * sk
    b = ef * sk + f * ck
    return FrameVectors(f, ef), ProperPairState(c, b)


def eta_from_proper(
    bvec,
    ctx: BranchContext = DEFAULT_CONTEXT,
    *,
    sheet: int = 1,
    gamma: float | None = None,
) -> Spinor:
    """Spinor eta of a proper vector ``b`` (sigma form).

    Branch arguments behave as in :func:`spinorspace.pseudo_model.xi_from_pseudo`.
    On the x3 axis the mute angle gives ``sqrt(|b3|) (sigma e^{-iG/2}, e^{iG/2})``.
    """
    v = as_vector(bvec)
    b, rho = v.a, v.rho
    tol = ctx.axis_tolerance * (1.0 + b)
    on_axis = rho < tol
    if on_axis and abs(v.a3) < tol:
        return Spinor(0.0, 0.0)
    g = branch_gamma(v.a1, v.a2, ctx, sheet=sheet, gamma=gamma, on_axis=on_axis)
    if on_axis:
        rho = 0.0
    plus = b + rho
    minus = v.a3 * v.a3 / plus
    sigma = half_space_sign(v.a3)
    half = complex(math.cos(g / 2), math.sin(g / 2))
    return Spinor(sigma * math.sqrt(minus) * half.conjugate(), math.sqrt(plus) * half)
