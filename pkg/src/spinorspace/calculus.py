"""Derivatives of the spinor fields in the (x1, x2) plane at fixed x3.

Every field component is a modulus times a half-angle phase, so its
derivatives are the component times a logarithmic derivative.  For xi at
``a`` in direction ``n`` (with ``n.a = n1 a1 + n2 a2`` and
``n x a = n1 a2 - n2 a1``)::

    d_n xi1 = 1/2 [ (n.a) / (a (a + a3)) + i (n x a) / rho^2 ] xi1
    d_n xi2 = 1/2 [ (n.a) / (a (a - a3)) - i (n x a) / rho^2 ] xi2

and for eta at ``b``::

    d_n eta1 = eta1 / (2 rho) [ -(n.b) / b + i (n x b) / rho ]
    d_n eta2 = eta2 / (2 rho) [ +(n.b) / b - i (n x b) / rho ]

The logarithmic coefficients are single-valued off the axis, even on the
cut half-plane; only the spinor factor there depends on the branch.

Cauchy-Riemann residuals use ``D1 + i D2 = (d1 + i d2) f`` for each
component ``f = U + i V``, so ``D1 = dU/dx1 - dV/dx2`` and
``D2 = dU/dx2 + dV/dx1``.

Near the singular sets the directional derivative is expanded as::

    grad_n(anchor + eps m) ~ eps**p (k_{-1} / eps + k_0 + k_1 eps)

with ``p = 0`` at axis and cut anchors and ``p = 1/2`` at the plane origin
and the infinite boundary (where ``eps = 1 / radius``).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Spinor
from .errors import SingularPointError, ValidationError
from .pseudo_model import (
    DEFAULT_CONTEXT,
    TWO_PI,
    BranchContext,
    GammaMode,
    PseudoVectorState,
    RegionTag,
    as_vector,
    branch_gamma,
    classify_region,
    principal_angle,
    split_moduli,
    xi_from_pseudo,
)
from .proper_model import eta_from_proper, half_space_sign

__all__ = [
    "Model",
    "SingularSet",
    "Direction2",
    "ApproachDirection",
    "DirectionalDerivative",
    "CRResidual",
    "AsymptoticDerivative",
    "grad_xi",
    "dir_deriv_xi",
    "dir_deriv_parts",
    "connection_matrix",
    "grad_eta",
    "dir_deriv_eta",
    "cr_residual_xi",
    "cr_residual_eta",
    "singular_dir_deriv",
    "chart_dir_deriv",
]

UNIT_TOL = 1e-12
# |m2| below this counts as approaching along the cut direction
CUT_DIRECTION_TOL = 1e-12


class Model(enum.Enum):
    XI = "xi"
    ETA = "eta"

    @classmethod
    def _missing_(cls, value):
        aliases = {"pseudo": cls.XI, "proper": cls.ETA}
        if isinstance(value, str) and value.lower() in aliases:
            return aliases[value.lower()]
        return None


class SingularSet(enum.Enum):
    AXIS_PLUS = "AxisPlus"
    AXIS_MINUS = "AxisMinus"
    ORIGIN = "Origin"
    CUT = "Cut"
    INFINITY = "Infinity"


def _unit_pair(obj, name: str) -> tuple[float, float]:
    u1, u2 = float(obj[0]), float(obj[1])
    if abs(u1 * u1 + u2 * u2 - 1.0) > UNIT_TOL:
        raise ValidationError(f"{name} must be a unit 2-vector, got ({u1}, {u2})")
    return u1, u2


@dataclass(frozen=True)
class Direction2:
    """Unit direction in the (x1, x2) plane."""

    n1: float
    n2: float

    def __post_init__(self):
        _unit_pair((self.n1, self.n2), "Direction2")

    @classmethod
    def of(cls, n1: float, n2: float) -> "Direction2":
        r = math.hypot(n1, n2)
        if r == 0.0:
            raise ValidationError("direction must be non-zero")
        return cls(n1 / r, n2 / r)

    def __iter__(self):
        yield self.n1
        yield self.n2

    def __getitem__(self, i):
        return (self.n1, self.n2)[i]


@dataclass(frozen=True)
class ApproachDirection:
    """Unit vector ``m`` along which a singular point is approached."""

    m1: float
    m2: float

    def __post_init__(self):
        _unit_pair((self.m1, self.m2), "ApproachDirection")

    @classmethod
    def of(cls, m1: float, m2: float) -> "ApproachDirection":
        r = math.hypot(m1, m2)
        if r == 0.0:
            raise ValidationError("approach direction must be non-zero")
        return cls(m1 / r, m2 / r)

    @classmethod
    def at_angle(cls, mu: float) -> "ApproachDirection":
        return cls(math.cos(mu), math.sin(mu))

    @property
    def mu(self) -> float:
        return math.atan2(self.m2, self.m1)


@dataclass(frozen=True)
class DirectionalDerivative:
    d1: complex
    d2: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.d1, self.d2], dtype=complex)

    def __add__(self, other: "DirectionalDerivative") -> "DirectionalDerivative":
        return DirectionalDerivative(self.d1 + other.d1, self.d2 + other.d2)


@dataclass(frozen=True)
class CRResidual:
    """Cauchy-Riemann defects of the two spinor components."""

    D1: float
    D2: float
    D3: float
    D4: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.D1, self.D2, self.D3, self.D4)

    def max_abs(self) -> float:
        return max(abs(d) for d in self.as_tuple())


@dataclass(frozen=True)
class AsymptoticDerivative:
    """Laurent coefficients of a directional derivative near a singular set.

    Each coefficient is a pair (component 1, component 2).  The represented
    quantity is ``eps**exponent * (kminus / eps + kzero + kplus * eps)``.
    """

    kminus: tuple[complex, complex]
    kzero: tuple[complex, complex]
    kplus: tuple[complex, complex]
    exponent: float = 0.0

    def evaluate(self, eps: float) -> np.ndarray:
        km, k0, kp = (np.asarray(k, dtype=complex) for k in (self.kminus, self.kzero, self.kplus))
        return eps**self.exponent * (km / eps + k0 + kp * eps)

    def leading(self, eps: float) -> np.ndarray:
        """The ``k_{-1} / eps + k_0`` truncation (times the prefactor)."""
        km, k0 = (np.asarray(k, dtype=complex) for k in (self.kminus, self.kzero))
        return eps**self.exponent * (km / eps + k0)


def _pair(n) -> tuple[float, float]:
    return float(n[0]), float(n[1])


def _dot_cross(n, x1: float, x2: float) -> tuple[float, float]:
    n1, n2 = _pair(n)
    return n1 * x1 + n2 * x2, n1 * x2 - n2 * x1


_SINGULAR_REGIONS = (RegionTag.AXIS_PLUS, RegionTag.AXIS_MINUS, RegionTag.ORIGIN)


def _require_regular(v: PseudoVectorState, ctx: BranchContext) -> None:
    region = classify_region(v, ctx)
    if region in _SINGULAR_REGIONS:
        raise SingularPointError(
            f"derivative undefined at {tuple(v)} ({region.value}); "
            "use singular_dir_deriv for directional limits"
        )


# -- pseudo-vector field ---------------------------------------------------


def _xi_log_coeffs(v: PseudoVectorState, n) -> tuple[complex, complex]:
    a, rho = v.a, v.rho
    plus, minus = split_moduli(a, v.a3, rho)
    dot, cross = _dot_cross(n, v.a1, v.a2)
    rho2 = rho * rho
    return (
        0.5 * complex(dot / (a * plus), cross / rho2),
        0.5 * complex(dot / (a * minus), -cross / rho2),
    )


def _xi_log_coeffs_slope(v: PseudoVectorState, n, m) -> tuple[complex, complex]:
    """Derivative of the xi logarithmic coefficients along in-plane ``m``."""
    a, rho = v.a, v.rho
    plus, minus = split_moduli(a, v.a3, rho)
    dot, cross = _dot_cross(n, v.a1, v.a2)
    nm, nx = _dot_cross(n, *_pair(m))
    ma = _pair(m)[0] * v.a1 + _pair(m)[1] * v.a2
    da = ma / a
    rho2 = rho * rho
    d_cross = nx / rho2 - cross * 2.0 * ma / rho2**2
    d1 = nm / (a * plus) - dot * da * (plus + a) / (a * plus) ** 2
    d2 = nm / (a * minus) - dot * da * (minus + a) / (a * minus) ** 2
    return 0.5 * complex(d1, d_cross), 0.5 * complex(d2, -d_cross)


def grad_xi(
    v, ctx: BranchContext = DEFAULT_CONTEXT, *, sheet: int = 1, gamma: float | None = None
) -> np.ndarray:
    """2-gradient of xi; row = component, column = d/da1, d/da2.

    Raises :class:`SingularPointError` on the axis and at the origin.  On
    the cut the value for the branch selected by ``ctx`` is returned.
    """
    v = as_vector(v)
    _require_regular(v, ctx)
    xi = xi_from_pseudo(v, ctx, sheet=sheet, gamma=gamma)
    out = np.empty((2, 2), dtype=complex)
    for col, n in enumerate(((1.0, 0.0), (0.0, 1.0))):
        l1, l2 = _xi_log_coeffs(v, n)
        out[0, col] = l1 * xi.c1
        out[1, col] = l2 * xi.c2
    return out


def dir_deriv_xi(
    v, n, ctx: BranchContext = DEFAULT_CONTEXT, *, sheet: int = 1, gamma: float | None = None
) -> DirectionalDerivative:
    """Directional derivative of xi along the in-plane vector ``n``.

    ``n`` is normally a :class:`Direction2`; a plain pair is used as given
    (the result is linear in it).
    """
    v = as_vector(v)
    _require_regular(v, ctx)
    xi = xi_from_pseudo(v, ctx, sheet=sheet, gamma=gamma)
    l1, l2 = _xi_log_coeffs(v, n)
    return DirectionalDerivative(l1 * xi.c1, l2 * xi.c2)


def dir_deriv_parts(
    v, n, model: Model | str = Model.XI, ctx: BranchContext = DEFAULT_CONTEXT, **branch
) -> tuple[DirectionalDerivative, DirectionalDerivative]:
    """Split a directional derivative into parts along and across the point.

    ``n`` is decomposed into ``n_par`` (with ``n_par x a = 0``) and ``n_perp``
    (with ``n_perp . a = 0``); the parallel part is purely radial and the
    perpendicular part purely a phase rotation.
    """
    v = as_vector(v)
    n1, n2 = _pair(n)
    rho = v.rho
    if rho == 0.0:
        raise SingularPointError("no planar direction at the axis")
    u1, u2 = v.a1 / rho, v.a2 / rho
    along = n1 * u1 + n2 * u2
    n_par = (along * u1, along * u2)
    n_perp = (n1 - n_par[0], n2 - n_par[1])
    fn = dir_deriv_xi if Model(model) is Model.XI else dir_deriv_eta
    return fn(v, n_par, ctx, **branch), fn(v, n_perp, ctx, **branch)


def connection_matrix(v, n, ctx: BranchContext = DEFAULT_CONTEXT) -> np.ndarray:
    """Diagonal ``A`` with ``d_n xi = A xi``; independent of the branch."""
    v = as_vector(v)
    _require_regular(v, ctx)
    l1, l2 = _xi_log_coeffs(v, n)
    return np.diag([l1, l2])


def cr_residual_xi(
    v, ctx: BranchContext = DEFAULT_CONTEXT, *, sheet: int = 1, gamma: float | None = None
) -> CRResidual:
    """Modified Cauchy-Riemann relations for both xi components.

    With ``c = cos(gamma/2)``, ``s = sin(gamma/2)``::

        D1 = (a1 c + a2 s) K1      D3 = (a1 c - a2 s) K2
        D2 = (a2 c - a1 s) K1      D4 = (a2 c + a1 s) K2

        K1 = 1/2 [ 1/(a sqrt(a+a3)) + sqrt(a+a3)/rho^2 ] = (2a - a3) sqrt(a+a3) / (2 a rho^2)
        K2 = 1/2 [ 1/(a sqrt(a-a3)) - sqrt(a-a3)/rho^2 ] = a3 sqrt(a-a3) / (2 a rho^2)

    The right-hand forms avoid cancellation; ``K2`` vanishes on ``a3 = 0``.
    """
    v = as_vector(v)
    _require_regular(v, ctx)
    a, rho = v.a, v.rho
    g = branch_gamma(v.a1, v.a2, ctx, sheet=sheet, gamma=gamma)
    plus, minus = split_moduli(a, v.a3, rho)
    denom = 2.0 * a * rho * rho
    k1 = (2.0 * a - v.a3) * math.sqrt(plus) / denom
    k2 = v.a3 * math.sqrt(minus) / denom
    c, s = math.cos(g / 2), math.sin(g / 2)
    a1, a2 = v.a1, v.a2
    return CRResidual(
        (a1 * c + a2 * s) * k1,
        (a2 * c - a1 * s) * k1,
        (a1 * c - a2 * s) * k2,
        (a2 * c + a1 * s) * k2,
    )


# -- proper-vector field ---------------------------------------------------


def _eta_log_coeffs(v: PseudoVectorState, n) -> tuple[complex, complex]:
    b, rho = v.a, v.rho
    dot, cross = _dot_cross(n, v.a1, v.a2)
    re = dot / (2.0 * rho * b)
    im = cross / (2.0 * rho * rho)
    return complex(-re, im), complex(re, -im)


def _eta_log_coeffs_slope(v: PseudoVectorState, n, m) -> tuple[complex, complex]:
    b, rho = v.a, v.rho
    dot, cross = _dot_cross(n, v.a1, v.a2)
    nm, nx = _dot_cross(n, *_pair(m))
    mb = _pair(m)[0] * v.a1 + _pair(m)[1] * v.a2
    d_rhob = (mb / rho) * b + rho * (mb / b)
    d_re = nm / (2.0 * rho * b) - dot * d_rhob / (2.0 * (rho * b) ** 2)
    d_im = nx / (2.0 * rho * rho) - cross * mb / rho**4
    return complex(-d_re, d_im), complex(d_re, -d_im)


def grad_eta(
    v, ctx: BranchContext = DEFAULT_CONTEXT, *, sheet: int = 1, gamma: float | None = None
) -> np.ndarray:
    """2-gradient of eta; row = component, column = d/db1, d/db2."""
    v = as_vector(v)
    _require_regular(v, ctx)
    eta = eta_from_proper(v, ctx, sheet=sheet, gamma=gamma)
    out = np.empty((2, 2), dtype=complex)
    for col, n in enumerate(((1.0, 0.0), (0.0, 1.0))):
        l1, l2 = _eta_log_coeffs(v, n)
        out[0, col] = l1 * eta.c1
        out[1, col] = l2 * eta.c2
    return out


def dir_deriv_eta(
    v, n, ctx: BranchContext = DEFAULT_CONTEXT, *, sheet: int = 1, gamma: float | None = None
) -> DirectionalDerivative:
    """Directional derivative of eta; on ``b3 = 0`` the first component is 0."""
    v = as_vector(v)
    _require_regular(v, ctx)
    eta = eta_from_proper(v, ctx, sheet=sheet, gamma=gamma)
    l1, l2 = _eta_log_coeffs(v, n)
    return DirectionalDerivative(l1 * eta.c1, l2 * eta.c2)


def cr_residual_eta(
    v,
    sigma: int | None = None,
    ctx: BranchContext = DEFAULT_CONTEXT,
    *,
    sheet: int = 1,
    gamma: float | None = None,
) -> CRResidual:
    """Modified Cauchy-Riemann relations for eta.

    ::

        D1 + i D2 = +sigma sqrt(b - rho) / 2 (1/rho - 1/b) exp(+i gamma/2)
        D3 + i D4 = -sqrt(b + rho) / 2 (1/rho - 1/b) exp(+3i gamma/2)

    Everything vanishes on ``b3 = 0``.  ``sigma`` defaults to ``sign(b3)``.
    """
    v = as_vector(v)
    _require_regular(v, ctx)
    if sigma is None:
        sigma = half_space_sign(v.a3)
    if sigma not in (1, -1):
        raise ValidationError(f"sigma must be +1 or -1, got {sigma!r}")
    b, rho = v.a, v.rho
    g = branch_gamma(v.a1, v.a2, ctx, sheet=sheet, gamma=gamma)
    plus = b + rho
    minus = v.a3 * v.a3 / plus
    gap = minus / (b * rho)  # 1/rho - 1/b
    first = sigma * 0.5 * math.sqrt(minus) * gap * cmath.exp(0.5j * g)
    second = -0.5 * math.sqrt(plus) * gap * cmath.exp(1.5j * g)
    return CRResidual(first.real, first.imag, second.real, second.imag)


# -- singular sets ---------------------------------------------------------


def _as_singular_set(region) -> SingularSet:
    if isinstance(region, SingularSet):
        return region
    if isinstance(region, RegionTag):
        try:
            return SingularSet(region.value)
        except ValueError:
            raise ValidationError(f"{region.value} is not a singular set") from None
    try:
        return SingularSet(region)
    except ValueError:
        raise ValidationError(f"unknown singular set {region!r}") from None


def _approach(m) -> tuple[float, float]:
    if isinstance(m, ApproachDirection):
        return m.m1, m.m2
    m1, m2 = _pair(m)
    r = math.hypot(m1, m2)
    if r == 0.0:
        raise ValidationError("approach direction must be non-zero")
    return m1 / r, m2 / r


def _check_anchor(kind: SingularSet, v: PseudoVectorState, ctx: BranchContext) -> None:
    if kind is SingularSet.INFINITY:
        return
    region = classify_region(v, ctx)
    expected = {
        SingularSet.AXIS_PLUS: (RegionTag.AXIS_PLUS,),
        SingularSet.AXIS_MINUS: (RegionTag.AXIS_MINUS,),
        SingularSet.ORIGIN: (RegionTag.ORIGIN,),
        SingularSet.CUT: (RegionTag.CUT,),
    }[kind]
    if region not in expected:
        raise ValidationError(f"anchor {tuple(v)} lies in {region.value}, not {kind.value}")


def singular_dir_deriv(
    region,
    anchor,
    model: Model | str,
    n,
    m,
    ctx: BranchContext = DEFAULT_CONTEXT,
    *,
    sheet: int = 1,
) -> AsymptoticDerivative:
    """Directional derivative approaching a singular point along ``m``.

    Parameters
    ----------
    region : SingularSet or RegionTag
        Axis half, plane origin, cut half-plane or the infinite boundary.
    anchor : sequence of 3 floats
        The singular point; for the infinite boundary only its third
        component (the plane height) is used.
    model : Model or {"xi", "eta", "pseudo", "proper"}
    n : pair
        Differentiation direction.
    m : ApproachDirection or pair
        Approach direction; plain pairs are normalized.
    ctx, sheet
        Branch used for the half-angle of ``m``.  In the vector convention
        approaching along ``+x1`` is forbidden at axis, origin and infinity
        anchors and along ``+-x1`` at cut anchors, since the path then runs
        inside the cut.

    Returns
    -------
    AsymptoticDerivative
    """
    kind = _as_singular_set(region)
    model = Model(model)
    v = as_vector(anchor)
    _check_anchor(kind, v, ctx)
    m1, m2 = _approach(m)
    vector_mode = ctx.gamma_mode is GammaMode.PRINCIPAL_VECTOR
    if vector_mode:
        on_cut_line = abs(m2) < CUT_DIRECTION_TOL
        if kind is SingularSet.CUT and on_cut_line:
            raise ValidationError("approach direction must leave the cut (m2 != 0)")
        if kind is not SingularSet.CUT and on_cut_line and m1 > 0:
            raise ValidationError("approach direction (1, 0) runs along the cut")

    if kind is SingularSet.CUT:
        return _cut_limit(v, model, n, (m1, m2), ctx, sheet, vector_mode)

    mu = principal_angle(m1, m2)
    if not vector_mode and sheet == 2:
        mu += TWO_PI
    hm = cmath.exp(-0.5j * mu)
    hp = cmath.exp(0.5j * mu)
    nm, nx = _dot_cross(n, m1, m2)
    zero = 0j
    if model is Model.XI:
        return _xi_asymptotics(kind, v.a3, hm, hp, nm, nx, zero)
    return _eta_asymptotics(kind, v.a3, hm, hp, nm, nx, zero)


def _xi_asymptotics(kind, a3, hm, hp, nm, nx, zero) -> AsymptoticDerivative:
    if kind is SingularSet.AXIS_PLUS:
        s = a3
        r = math.sqrt(2.0 * s)
        return AsymptoticDerivative(
            (0.5j * r * hm * nx, zero),
            (zero, hp / r * complex(nm, -0.5 * nx)),
            (0.5 * r * hm * complex(nm / (2 * s * s), nx / (8 * s * s)), zero),
        )
    if kind is SingularSet.AXIS_MINUS:
        s = -a3
        r = math.sqrt(2.0 * s)
        return AsymptoticDerivative(
            (zero, -0.5j * r * hp * nx),
            (hm / r * complex(nm, 0.5 * nx), zero),
            (zero, 0.5 * r * hp * complex(nm / (2 * s * s), -nx / (8 * s * s))),
        )
    if kind is SingularSet.ORIGIN:
        return AsymptoticDerivative(
            (0.5 * hm * complex(nm, nx), 0.5 * hp * complex(nm, -nx)),
            (zero, zero),
            (zero, zero),
            exponent=0.5,
        )
    # infinite boundary, eps = 1 / radius
    t = a3
    return AsymptoticDerivative(
        (zero, zero),
        (0.5 * hm * complex(nm, nx), 0.5 * hp * complex(nm, -nx)),
        (0.25 * t * hm * complex(-nm, nx), 0.25 * t * hp * complex(nm, nx)),
        exponent=0.5,
    )


def _eta_asymptotics(kind, b3, hm, hp, nm, nx, zero) -> AsymptoticDerivative:
    if kind in (SingularSet.AXIS_PLUS, SingularSet.AXIS_MINUS):
        s = abs(b3)
        sigma = 1.0 if kind is SingularSet.AXIS_PLUS else -1.0
        r = math.sqrt(s)
        return AsymptoticDerivative(
            (sigma * 0.5j * r * hm * nx, -0.5j * r * hp * nx),
            (
                sigma * r * hm * complex(-nm / (2 * s), -nx / (4 * s)),
                r * hp * complex(nm / (2 * s), -nx / (4 * s)),
            ),
            (
                sigma * r * hm * complex(nm / (4 * s * s), nx / (16 * s * s)),
                r * hp * complex(nm / (4 * s * s), -nx / (16 * s * s)),
            ),
        )
    if kind is SingularSet.ORIGIN:
        return AsymptoticDerivative(
            (zero, hp / math.sqrt(2.0) * complex(nm, -nx)),
            (zero, zero),
            (zero, zero),
            exponent=0.5,
        )
    t = b3
    return AsymptoticDerivative(
        (zero, zero),
        (zero, hp / math.sqrt(2.0) * complex(nm, -nx)),
        (t / (2.0 * math.sqrt(2.0)) * hm * complex(-nm, nx), zero),
        exponent=0.5,
    )


def _cut_limit(v, model, n, m, ctx, sheet, vector_mode) -> AsymptoticDerivative:
    """One-sided value and slope at a point of the cut half-plane.

    In the vector convention the limit carries ``sgn(m2)``; in the extended
    conventions the field is continuous across the cut and the sign is that
    of the anchor's sheet.
    """
    if vector_mode:
        sign = 1.0 if m[1] > 0 else -1.0
    else:
        sign = 1.0 if sheet == 1 else -1.0
    if model is Model.XI:
        base = xi_from_pseudo(v, ctx, gamma=0.0)
        coeffs = _xi_log_coeffs(v, n)
        along = _xi_log_coeffs(v, m)
        slope = _xi_log_coeffs_slope(v, n, m)
    else:
        base = eta_from_proper(v, ctx, gamma=0.0)
        coeffs = _eta_log_coeffs(v, n)
        along = _eta_log_coeffs(v, m)
        slope = _eta_log_coeffs_slope(v, n, m)
    limit = (sign * base.c1, sign * base.c2)
    k0 = tuple(c * f for c, f in zip(coeffs, limit))
    k1 = tuple((d + c * a) * f for d, c, a, f in zip(slope, coeffs, along, limit))
    return AsymptoticDerivative((0j, 0j), k0, k1)


# -- cylindrical parabolic chart -------------------------------------------


def chart_dir_deriv(p, model: Model | str, nu, ctx: BranchContext = DEFAULT_CONTEXT) -> DirectionalDerivative:
    """Derivative along ``nu`` in the (y1, y2) plane of the cylindrical parabolic chart.

    With ``rho = (y1^2 + y2^2) / 2``, ``nu.y`` and ``nu x y = nu1 y2 - nu2 y1``::

        xi:  1/2 [ rho (nu.y) / (a (a +- a3)) +- i (nu x y) / rho ]
        eta: 1/2 [ -+ (nu.y) / b            +- i (nu x y) / rho ]

    times the respective component.
    """
    from .charts import ChartId, eta_in_chart, xi_in_chart

    model = Model(model)
    if p.chart is not ChartId.CYLPAR:
        raise ValidationError("chart_dir_deriv requires a cylindrical parabolic point")
    y1, y2, y3 = p.y1, p.y2, p.y3
    if y1 == 0.0 and y2 == 0.0:
        raise SingularPointError("chart derivative undefined at y1 = y2 = 0")
    rho = 0.5 * (y1 * y1 + y2 * y2)
    a = math.hypot(y3, rho)
    dot, cross = _dot_cross(nu, y1, y2)
    if model is Model.XI:
        plus, minus = split_moduli(a, y3, rho)
        field = xi_in_chart(p, ctx)
        l1 = 0.5 * complex(rho * dot / (a * plus), cross / rho)
        l2 = 0.5 * complex(rho * dot / (a * minus), -cross / rho)
    else:
        field = eta_in_chart(p, ctx)
        l1 = 0.5 * complex(-dot / a, cross / rho)
        l2 = 0.5 * complex(dot / a, -cross / rho)
    return DirectionalDerivative(l1 * field.c1, l2 * field.c2)


def field_value(model: Model | str, v, ctx: BranchContext = DEFAULT_CONTEXT, **branch) -> Spinor:
    """Evaluate xi or eta at a Cartesian point."""
    if Model(model) is Model.XI:
        return xi_from_pseudo(v, ctx, **branch)
    return eta_from_proper(v, ctx, **branch)
