"""Curvilinear charts on the doubled space and the spinor fields in them.

Three charts are supported:

* cylindrical parabolic ``(y1, y2, y3)``::

      x = ((y1^2 - y2^2) / 2, y1 y2, y3)

  Squaring ``y1 + i y2`` covers the plane twice, so the whole ``(y1, y2)``
  plane is the extended domain and the half-angle is ``arg(y1 + i y2)``.

* parabolic ``(y1, y2, y3)`` with ``y1, y2 >= 0``::

      x = (y1 y2 cos y3, y1 y2 sin y3, (y1^2 - y2^2) / 2)

  Here ``xi = (y1 e^{-i y3/2}, y2 e^{i y3/2})``: the coordinates are the
  polar spinor parameters.  The extended domain takes ``y3`` in ``[0, 4pi)``.

* spherical ``(r, theta, phi)``, extended by ``phi`` in ``[-2pi, 2pi)`` or,
  alternatively, by allowing negative ``r`` (the G' and G'' domains).

Negative-radius points are treated as aliases of their representative in
the ``phi``-doubled domain, which fixes the spinor value there.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Spinor
from .errors import ValidationError
from .proper_model import half_space_sign
from .pseudo_model import DEFAULT_CONTEXT, TWO_PI, BranchContext, split_moduli

__all__ = [
    "ChartId",
    "DomainVariant",
    "ChartPoint",
    "Multiplicity",
    "DirectionMultiplicity",
    "to_cartesian",
    "metric",
    "jacobian",
    "xi_in_chart",
    "eta_in_chart",
    "sheet_of",
    "antipode",
    "convert_spherical_domain",
    "direction_multiplicity",
]

FOUR_PI = 2.0 * TWO_PI
PI = math.pi


class ChartId(enum.Enum):
    CYLPAR = "CylindricalParabolic"
    PARABOLIC = "Parabolic"
    SPHERICAL = "Spherical"


class DomainVariant(enum.Enum):
    VECTOR = "VectorG"
    EXTENDED = "ExtendedG"
    GPRIME = "SphericalGPrime"
    GDOUBLEPRIME = "SphericalGDoublePrime"


_SPHERICAL_ONLY = (DomainVariant.GPRIME, DomainVariant.GDOUBLEPRIME)


def _in(lo: float, x: float, hi: float) -> bool:
    return lo <= x < hi


@dataclass(frozen=True)
class ChartPoint:
    """Coordinates in a chart, checked against the variant's parameter ranges.

    Spherical coordinates are stored as ``y1 = r``, ``y2 = theta``,
    ``y3 = phi``.
    """

    chart: ChartId
    y1: float
    y2: float
    y3: float
    variant: DomainVariant = DomainVariant.EXTENDED

    def __post_init__(self):
        object.__setattr__(self, "chart", ChartId(self.chart))
        object.__setattr__(self, "variant", DomainVariant(self.variant))
        for name in ("y1", "y2", "y3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        self._check_ranges()

    def _check_ranges(self) -> None:
        chart, var = self.chart, self.variant
        y1, y2, y3 = self.y1, self.y2, self.y3
        if var in _SPHERICAL_ONLY and chart is not ChartId.SPHERICAL:
            raise ValidationError(f"{var.value} applies to the spherical chart only")
        if chart is ChartId.CYLPAR:
            if var is DomainVariant.VECTOR and not (y2 > 0 or (y2 == 0 and y1 >= 0)):
                raise ValidationError("vector cylindrical parabolic domain needs y2 > 0 or y2 = 0, y1 >= 0")
            return
        if chart is ChartId.PARABOLIC:
            if y1 < 0 or y2 < 0:
                raise ValidationError("parabolic y1, y2 must be non-negative")
            upper = TWO_PI if var is DomainVariant.VECTOR else FOUR_PI
            if not _in(0.0, y3, upper):
                raise ValidationError(f"parabolic y3 must lie in [0, {upper:g})")
            return
        if not 0.0 <= y2 <= PI:
            raise ValidationError("theta must lie in [0, pi]")
        lo, hi = {
            DomainVariant.VECTOR: (0.0, TWO_PI),
            DomainVariant.EXTENDED: (-TWO_PI, TWO_PI),
            DomainVariant.GPRIME: (-PI, PI),
            DomainVariant.GDOUBLEPRIME: (0.0, TWO_PI),
        }[var]
        if not _in(lo, y3, hi):
            raise ValidationError(f"phi must lie in [{lo:g}, {hi:g}) for {var.value}")
        if var in (DomainVariant.VECTOR, DomainVariant.EXTENDED) and y1 < 0:
            raise ValidationError("r must be non-negative outside the G' / G'' domains")

    def coords(self) -> tuple[float, float, float]:
        return (self.y1, self.y2, self.y3)

    def replace(self, y1=None, y2=None, y3=None, variant=None) -> "ChartPoint":
        return ChartPoint(
            self.chart,
            self.y1 if y1 is None else y1,
            self.y2 if y2 is None else y2,
            self.y3 if y3 is None else y3,
            self.variant if variant is None else variant,
        )


class Multiplicity(enum.Enum):
    TWO_PI = "TwoPi"
    FOUR_PI = "FourPi"


@dataclass(frozen=True)
class DirectionMultiplicity:
    multiplicity: Multiplicity
    delta_shift: float


# -- geometry -------------------------------------------------------------


def _to_phi_doubled(p: ChartPoint) -> ChartPoint:
    """Representative of a G' / G'' point in the ``phi``-doubled domain."""
    if p.chart is not ChartId.SPHERICAL or p.variant not in _SPHERICAL_ONLY:
        return p
    r, theta, phi = p.coords()
    if r >= 0:
        return ChartPoint(p.chart, r, theta, phi, DomainVariant.EXTENDED)
    if p.variant is DomainVariant.GPRIME:
        phi = phi + PI if phi >= 0 else phi - PI
    else:
        phi = phi - PI if phi < PI else phi - 3 * PI
    return ChartPoint(p.chart, -r, theta, phi, DomainVariant.EXTENDED)


def to_cartesian(p: ChartPoint) -> np.ndarray:
    y1, y2, y3 = p.coords()
    if p.chart is ChartId.CYLPAR:
        return np.array([0.5 * (y1 * y1 - y2 * y2), y1 * y2, y3])
    if p.chart is ChartId.PARABOLIC:
        s = y1 * y2
        return np.array([s * math.cos(y3), s * math.sin(y3), 0.5 * (y1 * y1 - y2 * y2)])
    r, theta, phi = y1, y2, y3
    # a negative radius reflects the planar part only, matching its doubled-domain alias
    st = math.sin(theta)
    return np.array([r * st * math.cos(phi), r * st * math.sin(phi), abs(r) * math.cos(theta)])


def jacobian(p: ChartPoint) -> np.ndarray:
    """Analytic ``dx / dy``; row = Cartesian component, column = chart coordinate."""
    y1, y2, y3 = p.coords()
    if p.chart is ChartId.CYLPAR:
        return np.array([[y1, -y2, 0.0], [y2, y1, 0.0], [0.0, 0.0, 1.0]])
    if p.chart is ChartId.PARABOLIC:
        c, s = math.cos(y3), math.sin(y3)
        return np.array(
            [
                [y2 * c, y1 * c, -y1 * y2 * s],
                [y2 * s, y1 * s, y1 * y2 * c],
                [y1, -y2, 0.0],
            ]
        )
    r, theta, phi = y1, y2, y3
    st, ct = math.sin(theta), math.cos(theta)
    cp, sp = math.cos(phi), math.sin(phi)
    sgn = 1.0 if r >= 0 else -1.0
    return np.array(
        [
            [st * cp, r * ct * cp, -r * st * sp],
            [st * sp, r * ct * sp, r * st * cp],
            [sgn * ct, -abs(r) * st, 0.0],
        ]
    )


def metric(p: ChartPoint) -> np.ndarray:
    y1, y2, y3 = p.coords()
    if p.chart is ChartId.CYLPAR:
        s = y1 * y1 + y2 * y2
        return np.diag([s, s, 1.0])
    if p.chart is ChartId.PARABOLIC:
        s = y1 * y1 + y2 * y2
        return np.diag([s, s, (y1 * y2) ** 2])
    J = jacobian(p)
    return J.T @ J


# -- sheets ---------------------------------------------------------------


def sheet_of(p: ChartPoint) -> int:
    """Index of the copy of 3-space containing ``p``.

    Sheet 1 is the part of the chart where the half-angle lies in
    ``[0, pi)``, i.e. where the chart field agrees with the vector-convention
    Cartesian field.
    """
    if p.chart is ChartId.CYLPAR:
        return 1 if p.y2 > 0 or (p.y2 == 0 and p.y1 >= 0) else 2
    if p.chart is ChartId.PARABOLIC:
        return 1 if p.y3 < TWO_PI else 2
    q = _to_phi_doubled(p)
    return 1 if q.y3 >= 0 else 2


def antipode(p: ChartPoint) -> ChartPoint:
    """The other preimage of the same Cartesian point."""
    if p.variant is DomainVariant.VECTOR:
        raise ValidationError("the vector domain has a single sheet")
    if p.chart is ChartId.CYLPAR:
        return p.replace(y1=-p.y1, y2=-p.y2)
    if p.chart is ChartId.PARABOLIC:
        y3 = p.y3 + TWO_PI
        return p.replace(y3=y3 - FOUR_PI if y3 >= FOUR_PI else y3)
    q = _to_phi_doubled(p)
    phi = q.y3 + TWO_PI
    q = q.replace(y3=phi - FOUR_PI if phi >= TWO_PI else phi)
    return convert_spherical_domain(q, p.variant)


def convert_spherical_domain(p: ChartPoint, target) -> ChartPoint:
    """Re-express a spherical point in another extended domain, keeping its spinor."""
    target = DomainVariant(target)
    if p.chart is not ChartId.SPHERICAL:
        raise ValidationError("domain conversion applies to the spherical chart only")
    if target is p.variant:
        return p
    q = _to_phi_doubled(p)
    r, theta, phi = q.coords()
    if target is DomainVariant.EXTENDED:
        return q
    if target is DomainVariant.VECTOR:
        if not _in(0.0, phi, TWO_PI):
            raise ValidationError("point lies on the second sheet; no vector-domain representative")
        return q.replace(variant=target)
    if target is DomainVariant.GPRIME:
        if phi >= PI:
            r, phi = -r, phi - PI
        elif phi < -PI:
            r, phi = -r, phi + PI
    else:
        if -PI <= phi < 0:
            r, phi = -r, phi + PI
        elif phi < -PI:
            r, phi = -r, phi + 3 * PI
    return ChartPoint(ChartId.SPHERICAL, r, theta, phi, target)


def direction_multiplicity(p: ChartPoint) -> DirectionMultiplicity:
    """4pi neighbourhoods of directions on the x3 axis, 2pi elsewhere."""
    if p.chart is ChartId.CYLPAR:
        if p.y1 == 0.0 and p.y2 == 0.0:
            return DirectionMultiplicity(Multiplicity.FOUR_PI, 0.0)
        return DirectionMultiplicity(Multiplicity.TWO_PI, math.atan2(p.y2, p.y1))
    x = to_cartesian(p)
    if x[0] == 0.0 and x[1] == 0.0:
        return DirectionMultiplicity(Multiplicity.FOUR_PI, 0.0)
    return DirectionMultiplicity(Multiplicity.TWO_PI, 0.0)


# -- fields ---------------------------------------------------------------


def _half_angle(p: ChartPoint, ctx: BranchContext) -> complex | None:
    """``exp(i gamma / 2)`` continuous over the chart; ``None`` at the origin."""
    x = to_cartesian(p)
    rho = math.hypot(x[0], x[1])
    size = float(np.linalg.norm(x))
    if rho < ctx.axis_tolerance * (1.0 + size):
        if abs(x[2]) < ctx.axis_tolerance * (1.0 + size):
            return None
        g = ctx.mute_angle
        sign = 1.0 if sheet_of(p) == 1 else -1.0
        return sign * complex(math.cos(g / 2), math.sin(g / 2))
    if p.chart is ChartId.CYLPAR:
        m = math.hypot(p.y1, p.y2)
        return complex(p.y1 / m, p.y2 / m)
    phi = _to_phi_doubled(p).y3
    return complex(math.cos(phi / 2), math.sin(phi / 2))


def xi_in_chart(p: ChartPoint, ctx: BranchContext = DEFAULT_CONTEXT) -> Spinor:
    """Pseudo-vector spinor at a chart point.

    On the x3 axis the mute angle of ``ctx`` replaces the planar angle and
    the result carries the sign of the point's sheet.
    """
    h = _half_angle(p, ctx)
    if h is None:
        return Spinor(0.0, 0.0)
    if p.chart is ChartId.PARABOLIC:
        return Spinor(p.y1 * h.conjugate(), p.y2 * h)
    if p.chart is ChartId.SPHERICAL:
        q = _to_phi_doubled(p)
        r, ct = q.y1, math.cos(q.y2)
        return Spinor(math.sqrt(r * (1 + ct)) * h.conjugate(), math.sqrt(r * (1 - ct)) * h)
    x = to_cartesian(p)
    rho = 0.5 * (p.y1 * p.y1 + p.y2 * p.y2)
    plus, minus = split_moduli(math.hypot(rho, x[2]), x[2], rho)
    return Spinor(math.sqrt(plus) * h.conjugate(), math.sqrt(minus) * h)


def eta_in_chart(p: ChartPoint, ctx: BranchContext = DEFAULT_CONTEXT) -> Spinor:
    """Proper-vector spinor at a chart point; ``sigma`` is the sign of ``x3``."""
    h = _half_angle(p, ctx)
    if h is None:
        return Spinor(0.0, 0.0)
    if p.chart is ChartId.PARABOLIC:
        k = 1.0 / math.sqrt(2.0)
        return Spinor(k * (p.y1 - p.y2) * h.conjugate(), k * (p.y1 + p.y2) * h)
    x = to_cartesian(p)
    sigma = half_space_sign(x[2])
    if p.chart is ChartId.SPHERICAL:
        q = _to_phi_doubled(p)
        r, st = q.y1, math.sin(q.y2)
        return Spinor(
            sigma * math.sqrt(r * (1 - st)) * h.conjugate(), math.sqrt(r * (1 + st)) * h
        )
    rho = 0.5 * (p.y1 * p.y1 + p.y2 * p.y2)
    b = math.hypot(rho, x[2])
    plus = b + rho
    minus = x[2] * x[2] / plus
    return Spinor(sigma * math.sqrt(minus) * h.conjugate(), math.sqrt(plus) * h)
