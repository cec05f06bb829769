"""Pseudo-vector model: the spinor xi built from a real 3-vector and back.

For a vector ``a = (a1, a2, a3)`` with modulus ``a`` and planar radius
``rho``::

    xi = ( sqrt(a + a3) exp(-i gamma/2),  sqrt(a - a3) exp(+i gamma/2) )
    exp(i gamma) = (a1 + i a2) / rho

The half-angle makes ``xi`` two-valued; which value is returned is fixed by
a :class:`BranchContext`.  In the vector convention ``gamma`` lies in
``[0, 2pi)`` and the field jumps sign across the half-plane
``{a1 > 0, a2 = 0}``.  In the extended convention ``gamma`` lies in
``[0, 4pi)``: ``sheet=2`` selects the second copy of 3-space.  A caller may
also pass an explicit real ``gamma`` (a lift), which is what path
transport does.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .algebra import Spinor
from .errors import ValidationError

__all__ = [
    "TWO_PI",
    "GammaMode",
    "BranchContext",
    "DEFAULT_CONTEXT",
    "RegionTag",
    "PseudoVectorState",
    "PolarSpinorParams",
    "as_vector",
    "branch_gamma",
    "classify_region",
    "xi_from_pseudo",
    "pseudo_from_xi",
    "xi_from_polar",
    "polar_from_xi",
]

TWO_PI = 2.0 * math.pi
# tolerance used when checking a caller-supplied gamma against the point's angle
GAMMA_MATCH_TOL = 1e-6


class GammaMode(enum.Enum):
    PRINCIPAL_VECTOR = "vector"
    PRINCIPAL_EXTENDED = "extended"
    REAL_LIFT = "lift"


@dataclass(frozen=True)
class BranchContext:
    """Branch conventions for the half-angle factor.

    mute_angle
        Value used for gamma on the x3 axis, where the planar angle is
        undefined.
    gamma_mode
        Range convention for gamma, see :class:`GammaMode`.
    axis_tolerance
        Relative tube radius: a point is on the axis when
        ``rho < axis_tolerance * (1 + |a|)``.
    """

    mute_angle: float = 0.0
    gamma_mode: GammaMode = GammaMode.PRINCIPAL_VECTOR
    axis_tolerance: float = 1e-12

    def __post_init__(self):
        if not math.isfinite(self.mute_angle):
            raise ValidationError("mute_angle must be finite")
        if not self.axis_tolerance > 0:
            raise ValidationError("axis_tolerance must be positive")
        object.__setattr__(self, "gamma_mode", GammaMode(self.gamma_mode))


DEFAULT_CONTEXT = BranchContext()


class RegionTag(enum.Enum):
    INTERIOR_PLUS = "InteriorPlus"
    INTERIOR_MINUS = "InteriorMinus"
    PLANE = "Plane"
    AXIS_PLUS = "AxisPlus"
    AXIS_MINUS = "AxisMinus"
    ORIGIN = "Origin"
    CUT = "Cut"


class PseudoVectorState(NamedTuple):
    a1: float
    a2: float
    a3: float

    @property
    def a(self) -> float:
        return math.sqrt(self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3)

    @property
    def rho(self) -> float:
        return math.hypot(self.a1, self.a2)


def as_vector(v) -> PseudoVectorState:
    if isinstance(v, PseudoVectorState):
        return v
    try:
        x1, x2, x3 = (float(c) for c in v)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"expected three real components, got {v!r}") from exc
    if not all(math.isfinite(c) for c in (x1, x2, x3)):
        raise ValidationError(f"non-finite vector component in {v!r}")
    return PseudoVectorState(x1, x2, x3)


def _check_sheet(sheet: int) -> None:
    if sheet not in (1, 2):
        raise ValidationError(f"sheet must be 1 or 2, got {sheet!r}")


def principal_angle(x1: float, x2: float) -> float:
    """Planar angle in ``[0, 2pi)``; the positive x1 half-line maps to 0."""
    g = math.atan2(x2, x1)
    if g < 0.0:
        g += TWO_PI
        if g >= TWO_PI:  # -tiny rounds up to 2pi
            g = 0.0
    return g


def branch_gamma(
    x1: float,
    x2: float,
    ctx: BranchContext = DEFAULT_CONTEXT,
    *,
    sheet: int = 1,
    gamma: float | None = None,
    on_axis: bool = False,
) -> float:
    """Resolve the real gamma used in the half-angle factor.

    An explicit ``gamma`` wins; off the axis it must agree with the angle of
    ``(x1, x2)`` modulo 2pi.  Otherwise the principal angle (or the mute
    angle on the axis) is shifted by 2pi on sheet 2 unless the context uses
    the vector convention, which has a single sheet.
    """
    _check_sheet(sheet)
    if gamma is not None:
        gamma = float(gamma)
        if not math.isfinite(gamma):
            raise ValidationError("gamma must be finite")
        if not on_axis:
            rho = math.hypot(x1, x2)
            mismatch = math.hypot(math.cos(gamma) - x1 / rho, math.sin(gamma) - x2 / rho)
            if mismatch > GAMMA_MATCH_TOL:
                raise ValidationError(
                    f"gamma={gamma!r} does not match the planar angle of ({x1!r}, {x2!r})"
                )
        return gamma
    base = ctx.mute_angle if on_axis else principal_angle(x1, x2)
    if ctx.gamma_mode is not GammaMode.PRINCIPAL_VECTOR and sheet == 2:
        base += TWO_PI
    return base


def _on_axis(rho: float, a: float, ctx: BranchContext) -> bool:
    return rho < ctx.axis_tolerance * (1.0 + a)


def classify_region(v, ctx: BranchContext = DEFAULT_CONTEXT) -> RegionTag:
    """Assign one :class:`RegionTag`; Cut takes precedence over Plane."""
    v = as_vector(v)
    a, rho = v.a, v.rho
    tol = ctx.axis_tolerance * (1.0 + a)
    if rho < tol:
        if abs(v.a3) < tol:
            return RegionTag.ORIGIN
        return RegionTag.AXIS_PLUS if v.a3 > 0 else RegionTag.AXIS_MINUS
    if abs(v.a2) < tol and v.a1 > 0:
        return RegionTag.CUT
    if abs(v.a3) < tol:
        return RegionTag.PLANE
    return RegionTag.INTERIOR_PLUS if v.a3 > 0 else RegionTag.INTERIOR_MINUS


def split_moduli(a: float, a3: float, rho: float) -> tuple[float, float]:
    """Return ``(a + a3, a - a3)`` without cancellation near the axis."""
    if a3 >= 0.0:
        plus = a + a3
        minus = rho * rho / plus if plus > 0.0 else 0.0
    else:
        minus = a - a3
        plus = rho * rho / minus
    return plus, minus


def xi_from_pseudo(
    v,
    ctx: BranchContext = DEFAULT_CONTEXT,
    *,
    sheet: int = 1,
    gamma: float | None = None,
) -> Spinor:
    """Spinor xi of a pseudo vector.

    Parameters
    ----------
    v : sequence of 3 floats
        The vector ``(a1, a2, a3)``.
    ctx : BranchContext
        Branch conventions; the mute angle is used on the x3 axis.
    sheet : {1, 2}
        Copy of 3-space, meaningful for the extended and lift conventions.
    gamma : float, optional
        Explicit lifted planar angle; overrides ``ctx`` and ``sheet``.

    Returns
    -------
    Spinor
        The zero spinor at the origin.
    """
    v = as_vector(v)
    a, rho = v.a, v.rho
    on_axis = _on_axis(rho, a, ctx)
    if on_axis and abs(v.a3) < ctx.axis_tolerance * (1.0 + a):
        return Spinor(0.0, 0.0)
    g = branch_gamma(v.a1, v.a2, ctx, sheet=sheet, gamma=gamma, on_axis=on_axis)
    if on_axis:
        rho = 0.0
    plus, minus = split_moduli(a, v.a3, rho)
    half = complex(math.cos(g / 2), math.sin(g / 2))
    return Spinor(math.sqrt(plus) * half.conjugate(), math.sqrt(minus) * half)


def pseudo_from_xi(s: Spinor) -> tuple[float, PseudoVectorState]:
    """Hermitian square of ``s``: the scalar ``a`` and the vector ``(a1, a2, a3)``."""
    x, y = s.c1, s.c2
    w = y * x.conjugate()  # a1 + i a2
    nx, ny = abs(x) ** 2, abs(y) ** 2
    return 0.5 * (nx + ny), PseudoVectorState(w.real, w.imag, 0.5 * (nx - ny))


@dataclass(frozen=True)
class PolarSpinorParams:
    """Moduli and phases ``xi = (N e^{in}, M e^{im})``.

    ``kappa = m + n`` is the overall phase, ``gamma = m - n`` the relative
    one.  ``n_mute`` / ``m_mute`` flag phases that carry no information
    because the matching modulus vanishes.
    """

    N: float
    M: float
    n: float = 0.0
    m: float = 0.0
    n_mute: bool = False
    m_mute: bool = False

    def __post_init__(self):
        if self.N < 0 or self.M < 0:
            raise ValidationError("moduli N and M must be non-negative")
        for phase in (self.n, self.m):
            if not -math.pi - 1e-12 <= phase <= math.pi + 1e-12:
                raise ValidationError(f"phase {phase!r} outside [-pi, pi]")

    @classmethod
    def from_gamma_kappa(cls, N: float, M: float, gamma: float, kappa: float = 0.0):
        return cls(N, M, 0.5 * (kappa - gamma), 0.5 * (kappa + gamma))

    @property
    def kappa(self) -> float:
        return self.m + self.n

    @property
    def gamma(self) -> float:
        return self.m - self.n


def xi_from_polar(p: PolarSpinorParams, include_kappa_phase: bool = False) -> Spinor:
    """Rebuild ``e^{i kappa/2} (N e^{-i gamma/2}, M e^{+i gamma/2})``.

    The overall phase is dropped unless ``include_kappa_phase`` is set; it
    does not affect the vector.
    """
    half = complex(math.cos(p.gamma / 2), math.sin(p.gamma / 2))
    s = Spinor(p.N * half.conjugate(), p.M * half)
    if include_kappa_phase:
        s = s * complex(math.cos(p.kappa / 2), math.sin(p.kappa / 2))
    return s


def polar_from_xi(s: Spinor) -> PolarSpinorParams:
    N, M = abs(s.c1), abs(s.c2)
    n_mute, m_mute = N == 0.0, M == 0.0
    n = 0.0 if n_mute else math.atan2(s.c1.imag, s.c1.real)
    m = 0.0 if m_mute else math.atan2(s.c2.imag, s.c2.real)
    return PolarSpinorParams(N, M, n, m, n_mute, m_mute)
