"""Randomized invariant checks, grouped by module, as run by ``spinorspace check``.

Each check returns the largest error it observed.  A check passes when
that error does not exceed its nominal bound scaled by
``tolerance / DEFAULT_TOL``, so tightening ``--tol`` tightens every bound
proportionally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra, calculus, charts, model_map, oracles, transport
from .pseudo_model import (
    TWO_PI,
    BranchContext,
    GammaMode,
    PseudoVectorState,
    pseudo_from_xi,
    xi_from_pseudo,
)
from .proper_model import eta_from_proper, pair_from_eta

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_SEED",
    "SUITES",
    "CheckResult",
    "run_suite",
    "random_safe_point",
    "random_spinor",
]

DEFAULT_TOL = 1e-9
DEFAULT_SEED = 20240611
SAMPLES = 200

LIFT = BranchContext(gamma_mode=GammaMode.REAL_LIFT)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    max_error: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.threshold

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}.{self.name} max_error={self.max_error:.3e} threshold={self.threshold:.3e}"


# -- samplers -------------------------------------------------------------


def random_safe_point(rng: np.random.Generator, rho=(0.2, 5.0), height=5.0) -> PseudoVectorState:
    """Point well away from the axis, at a uniformly random planar angle."""
    r = rng.uniform(*rho)
    t = rng.uniform(0.0, TWO_PI)
    return PseudoVectorState(r * math.cos(t), r * math.sin(t), rng.uniform(-height, height))


def random_spinor(rng: np.random.Generator, scale: float = 2.0) -> algebra.Spinor:
    z = rng.normal(scale=scale, size=4)
    return algebra.Spinor(complex(z[0], z[1]), complex(z[2], z[3]))


def random_direction(rng: np.random.Generator) -> tuple[float, float]:
    t = rng.uniform(0.0, TWO_PI)
    return math.cos(t), math.sin(t)


def _max(values) -> float:
    return max(values, default=0.0)


# -- algebra ----------------------------------------------------------------


def _herm(s):
    return np.array(tuple(pseudo_from_xi(s)[1]))


def _sym(s):
    pair = pair_from_eta(s)
    return np.concatenate([pair.cvec, pair.bvec])


def check_hermitian_covariance(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        g = algebra.GroupElement.random(rng, parity=rng.choice([1, -1]))
        s = random_spinor(rng)
        O = algebra.so3_matrix(g)
        errs.append(np.abs(_herm(algebra.act_on_spinor(g, s)) - O @ _herm(s)).max() / (1 + s.norm2()))
    return _max(errs)


def check_symmetric_covariance(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        parity = int(rng.choice([1, -1]))
        g = algebra.GroupElement.random(rng, parity=parity)
        s = random_spinor(rng)
        O = algebra.so3_matrix(g)
        want = parity * np.concatenate([O @ _sym(s)[:3], O @ _sym(s)[3:]])
        errs.append(np.abs(_sym(algebra.act_on_spinor(g, s)) - want).max() / (1 + s.norm2()))
    return _max(errs)


def check_double_cover_sign(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        g = algebra.GroupElement.random(rng)
        errs.append(float(np.abs(algebra.so3_matrix(-g) - algebra.so3_matrix(g)).max()))
    return _max(errs)


def check_composition(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        g, h = algebra.GroupElement.random(rng), algebra.GroupElement.random(rng)
        gh = algebra.compose(g, h)
        errs.append(np.abs(algebra.su2_matrix(gh) - algebra.su2_matrix(g) @ algebra.su2_matrix(h)).max())
    return _max(errs)


# -- models ----------------------------------------------------------------


def _round_trip_xi(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        v = random_safe_point(rng, rho=(1e-6, 10.0), height=10.0)
        back = pseudo_from_xi(xi_from_pseudo(v))[1]
        errs.append(np.linalg.norm(np.subtract(back, v)) / np.linalg.norm(v))
    return _max(errs)


def _round_trip_eta(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        b = random_safe_point(rng, rho=(1e-6, 10.0), height=10.0)
        back = pair_from_eta(eta_from_proper(b)).bvec
        errs.append(np.linalg.norm(back - np.array(b)) / np.linalg.norm(b))
    return _max(errs)


def _periodicity(field) -> Callable:
    def check(rng) -> float:
        errs = []
        for _ in range(SAMPLES):
            v = random_safe_point(rng)
            g = math.atan2(v.a2, v.a1) + TWO_PI * rng.integers(-3, 4)
            base = field(v, LIFT, gamma=g)
            half = field(v, LIFT, gamma=g + TWO_PI)
            full = field(v, LIFT, gamma=g + 2 * TWO_PI)
            scale = max(base.norm(), 1.0)
            errs.append(max(half.distance(-base), full.distance(base)) / scale)
        return _max(errs)

    return check


def _mutual_inverse(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        s = random_spinor(rng)
        errs.append(max(
            model_map.eta_to_xi(model_map.xi_to_eta(s)).distance(s),
            model_map.xi_to_eta(model_map.eta_to_xi(s)).distance(s),
        ) / max(s.norm(), 1.0))
    return _max(errs)


def _cross_model(rng) -> float:
    errs = []
    ctx = BranchContext(gamma_mode=GammaMode.PRINCIPAL_EXTENDED)
    for _ in range(SAMPLES):
        v = random_safe_point(rng)
        sheet = int(rng.integers(1, 3))
        got = model_map.xi_to_eta(xi_from_pseudo(v, ctx, sheet=sheet))
        want = eta_from_proper(v, ctx, sheet=sheet)
        errs.append(got.distance(want) / max(want.norm(), 1.0))
    return _max(errs)


# -- calculus -------------------------------------------------------------


def _deriv_oracle(model) -> Callable:
    exact = calculus.dir_deriv_xi if model == "xi" else calculus.dir_deriv_eta

    def check(rng) -> float:
        errs = []
        for _ in range(SAMPLES):
            v, n = random_safe_point(rng), random_direction(rng)
            errs.append(oracles.relative_error(oracles.fd_dir_deriv(model, v, n), exact(v, n).as_array()))
        return _max(errs)

    return check


def _chart_oracle(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        y1, y2 = rng.uniform(-3, 3, size=2)
        if math.hypot(y1, y2) < 0.3:
            continue
        p = charts.ChartPoint(charts.ChartId.CYLPAR, y1, y2, rng.uniform(-5, 5))
        nu = random_direction(rng)
        for model in ("xi", "eta"):
            want = calculus.chart_dir_deriv(p, model, nu).as_array()
            errs.append(oracles.relative_error(oracles.fd_chart_dir_deriv(p, model, nu), want))
    return _max(errs)


def _residual_oracle(model) -> Callable:
    exact = calculus.cr_residual_xi if model == "xi" else calculus.cr_residual_eta

    def check(rng) -> float:
        errs = []
        for _ in range(SAMPLES):
            v = random_safe_point(rng)
            scale = float(np.linalg.norm(oracles.fd_gradient(model, v)))
            errs.append(oracles.scaled_error(
                oracles.fd_residual(model, v).as_tuple(), exact(v).as_tuple(), scale
            ))
        return _max(errs)

    return check


def _plane_residuals(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        v = random_safe_point(rng, height=0.0)
        v = PseudoVectorState(v.a1, v.a2, 0.0)
        errs.append(calculus.cr_residual_eta(v).max_abs())
        r = calculus.cr_residual_xi(v)
        errs.append(max(abs(r.D3), abs(r.D4)))
    return _max(errs)


def _connection(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        v, n = random_safe_point(rng), random_direction(rng)
        A = calculus.connection_matrix(v, n)
        got = A @ xi_from_pseudo(v).as_array()
        errs.append(oracles.relative_error(got, calculus.dir_deriv_xi(v, n).as_array()))
    return _max(errs)


def _decomposition(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        v, n = random_safe_point(rng), random_direction(rng)
        for model, fn in (("xi", calculus.dir_deriv_xi), ("eta", calculus.dir_deriv_eta)):
            par, perp = calculus.dir_deriv_parts(v, n, model)
            errs.append(oracles.relative_error((par + perp).as_array(), fn(v, n).as_array()))
    return _max(errs)


def asymptotic_cases(rng, count: int):
    """Random (region, anchor, model, n, m) tuples covering every singular set."""
    S = calculus.SingularSet
    for _ in range(count):
        s = rng.uniform(0.3, 3.0)
        n = random_direction(rng)
        # stay clear of the cut direction in the vector convention
        t = rng.uniform(0.2, TWO_PI - 0.2)
        m = (math.cos(t), math.sin(t))
        for model in ("xi", "eta"):
            yield S.AXIS_PLUS, (0.0, 0.0, s), model, n, m
            yield S.AXIS_MINUS, (0.0, 0.0, -s), model, n, m
            yield S.ORIGIN, (0.0, 0.0, 0.0), model, n, m
            yield S.INFINITY, (0.0, 0.0, rng.uniform(-2, 2)), model, n, m
            yield S.CUT, (s, 0.0, rng.uniform(-2, 2)), model, n, m


def asymptotic_error(region, anchor, model, n, m, eps: float) -> float:
    """Relative error of the ``k_{-1}/eps + k_0`` model against the exact derivative."""
    asym = calculus.singular_dir_deriv(region, anchor, model, n, m)
    if region is calculus.SingularSet.INFINITY:
        point = (m[0] / eps, m[1] / eps, anchor[2])
    else:
        point = (anchor[0] + eps * m[0], anchor[1] + eps * m[1], anchor[2])
    exact = (calculus.dir_deriv_xi if model == "xi" else calculus.dir_deriv_eta)(point, n)
    return oracles.relative_error(asym.leading(eps), exact.as_array())


def _asymptotics(rng) -> float:
    errs = []
    for case in asymptotic_cases(rng, 20):
        for eps in (1e-4, 1e-5):
            errs.append(asymptotic_error(*case, eps))
    return _max(errs)


def _cut_antisymmetry(rng) -> float:
    errs = []
    for _ in range(SAMPLES // 4):
        anchor = (rng.uniform(0.2, 3), 0.0, rng.uniform(-2, 2))
        n = random_direction(rng)
        t = rng.uniform(0.1, math.pi - 0.1)
        for model in ("xi", "eta"):
            up = calculus.singular_dir_deriv("Cut", anchor, model, n, (math.cos(t), math.sin(t)))
            down = calculus.singular_dir_deriv("Cut", anchor, model, n, (math.cos(t), -math.sin(t)))
            errs.append(float(np.abs(np.add(up.kzero, down.kzero)).max()))
    return _max(errs)


# -- charts -----------------------------------------------------------------


def random_chart_point(rng, chart: charts.ChartId, variant=charts.DomainVariant.EXTENDED) -> charts.ChartPoint:
    """Random point strictly inside the variant's range."""
    C, V = charts.ChartId, charts.DomainVariant
    if chart is C.CYLPAR:
        return charts.ChartPoint(chart, *rng.uniform(-3, 3, size=2), rng.uniform(-3, 3), variant)
    if chart is C.PARABOLIC:
        upper = TWO_PI if variant is V.VECTOR else 2 * TWO_PI
        y1, y2 = rng.uniform(0.05, 3, size=2)
        return charts.ChartPoint(chart, y1, y2, rng.uniform(0, upper), variant)
    theta = rng.uniform(0.05, math.pi - 0.05)
    lo, hi = {
        V.VECTOR: (0.0, TWO_PI),
        V.EXTENDED: (-TWO_PI, TWO_PI),
        V.GPRIME: (-math.pi, math.pi),
        V.GDOUBLEPRIME: (0.0, TWO_PI),
    }[variant]
    r = rng.uniform(0.1, 4)
    if variant in (V.GPRIME, V.GDOUBLEPRIME) and rng.random() < 0.5:
        r = -r
    return charts.ChartPoint(chart, r, theta, rng.uniform(lo, hi), variant)


def _metric_jacobian(rng) -> float:
    errs = []
    for chart in charts.ChartId:
        for _ in range(SAMPLES // 2):
            p = random_chart_point(rng, chart)
            J = oracles.fd_jacobian(p)
            g = charts.metric(p)
            errs.append(np.abs(g - J.T @ J).max() / max(1.0, np.abs(g).max()))
    return _max(errs)


def _antipode_flip(rng) -> float:
    errs = []
    for chart in charts.ChartId:
        for _ in range(SAMPLES):
            p = random_chart_point(rng, chart)
            q = charts.antipode(p)
            scale = max(1.0, charts.xi_in_chart(p).norm())
            errs.append(max(
                np.abs(charts.to_cartesian(q) - charts.to_cartesian(p)).max(),
                charts.xi_in_chart(q).distance(-charts.xi_in_chart(p)) / scale,
                charts.eta_in_chart(q).distance(-charts.eta_in_chart(p)) / scale,
            ))
    return _max(errs)


def _chart_cartesian(rng) -> float:
    errs = []
    for chart in charts.ChartId:
        for _ in range(SAMPLES // 2):
            p = random_chart_point(rng, chart)
            sign = 1.0 if charts.sheet_of(p) == 1 else -1.0
            x = charts.to_cartesian(p)
            scale = max(1.0, charts.xi_in_chart(p).norm())
            errs.append(max(
                charts.xi_in_chart(p).distance(sign * xi_from_pseudo(x)) / scale,
                charts.eta_in_chart(p).distance(sign * eta_from_proper(x)) / scale,
            ))
    return _max(errs)


def _parabolic_polar(rng) -> float:
    errs = []
    for _ in range(SAMPLES):
        p = random_chart_point(rng, charts.ChartId.PARABOLIC)
        s = charts.xi_in_chart(p)
        N, M = abs(s.c1), abs(s.c2)
        gamma = math.atan2(s.c2.imag, s.c2.real) - math.atan2(s.c1.imag, s.c1.real)
        # gamma is recovered mod 4pi from the two half-angle phases
        dg = math.remainder(gamma - p.y3, 2 * TWO_PI)
        errs.append(max(abs(N - p.y1), abs(M - p.y2), abs(dg)))
    return _max(errs)


def _domain_conversion(rng) -> float:
    V = charts.DomainVariant
    errs = []
    for _ in range(SAMPLES):
        p = random_chart_point(rng, charts.ChartId.SPHERICAL, V(rng.choice([V.EXTENDED, V.GPRIME, V.GDOUBLEPRIME])))
        xi = charts.xi_in_chart(p)
        for target in (V.EXTENDED, V.GPRIME, V.GDOUBLEPRIME):
            q = charts.convert_spherical_domain(p, target)
            errs.append(charts.xi_in_chart(q).distance(xi) / max(1.0, xi.norm()))
    return _max(errs)


# -- transport --------------------------------------------------------------


def _random_loop(rng, turns: int) -> transport.Path:
    radius = rng.uniform(0.5, 3)
    if turns == 0:
        center = (radius + rng.uniform(0.5, 2), 0.0)
        return transport.circle_path(radius, 1, 100, center, rng.uniform(-2, 2), rng.uniform(0, TWO_PI))
    return transport.circle_path(radius, turns, 100, (0.0, 0.0), rng.uniform(-2, 2), rng.uniform(0, TWO_PI))


def _loop_law(rng) -> float:
    errs = []
    for _ in range(SAMPLES // 10):
        for w in (-2, -1, 0, 1, 2):
            path = _random_loop(rng, w)
            for model in ("xi", "eta"):
                res = transport.transport_spinor(path, model)
                want = res.initial * (-1) ** w
                errs.append(res.final.distance(want) / max(1.0, want.norm()) + abs(res.winding - w))
    return _max(errs)


def _refinement(rng) -> float:
    errs = []
    for _ in range(SAMPLES // 10):
        w = int(rng.integers(-2, 3))
        path = _random_loop(rng, w)
        for model in ("xi", "eta"):
            a = transport.transport_spinor(path, model).final
            b = transport.transport_spinor(path.refined(), model).final
            errs.append(a.distance(b) / max(1.0, a.norm()))
    return _max(errs)


def _winding_agreement(rng) -> float:
    errs = []
    for _ in range(SAMPLES // 10):
        for w in (-2, -1, 0, 1, 2):
            path = _random_loop(rng, w)
            errs.append(abs(transport.winding(path) - transport.transport_spinor(path).winding))
    return float(_max(errs))


Check = tuple[str, float, Callable[[np.random.Generator], float]]

SUITES: dict[str, list[Check]] = {
    "algebra": [
        ("hermitian_covariance", 1e-12, check_hermitian_covariance),
        ("symmetric_covariance", 1e-12, check_symmetric_covariance),
        ("double_cover_sign", 0.0, check_double_cover_sign),
        ("composition", 1e-12, check_composition),
    ],
    "pseudo": [
        ("round_trip", 1e-10, _round_trip_xi),
        ("lift_periodicity", 1e-12, _periodicity(xi_from_pseudo)),
    ],
    "proper": [
        ("round_trip", 1e-10, _round_trip_eta),
        ("lift_periodicity", 1e-12, _periodicity(eta_from_proper)),
    ],
    "map": [
        ("mutual_inverse", 1e-14, _mutual_inverse),
        ("cross_model_identity", 1e-12, _cross_model),
    ],
    "calculus": [
        ("xi_derivative_oracle", 1e-6, _deriv_oracle("xi")),
        ("eta_derivative_oracle", 1e-6, _deriv_oracle("eta")),
        ("chart_derivative_oracle", 1e-6, _chart_oracle),
        ("xi_residual_oracle", 1e-6, _residual_oracle("xi")),
        ("eta_residual_oracle", 1e-6, _residual_oracle("eta")),
        ("plane_residuals", 1e-10, _plane_residuals),
        ("connection_matrix", 1e-12, _connection),
        ("parallel_perpendicular_split", 1e-12, _decomposition),
        ("asymptotics", 1e-3, _asymptotics),
        ("cut_antisymmetry", 0.0, _cut_antisymmetry),
    ],
    "charts": [
        ("metric_jacobian", 1e-8, _metric_jacobian),
        ("antipode_sign_flip", 1e-12, _antipode_flip),
        ("chart_cartesian_consistency", 1e-12, _chart_cartesian),
        ("parabolic_polar_parameters", 1e-12, _parabolic_polar),
        ("spherical_domain_conversion", 1e-12, _domain_conversion),
    ],
    "transport": [
        ("loop_law", 1e-9, _loop_law),
        ("refinement_stability", 1e-9, _refinement),
        ("winding_agreement", 0.0, _winding_agreement),
    ],
}


def run_suite(suite: str, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run one suite (or ``"all"``) and return a result per check."""
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
    factor = tol / DEFAULT_TOL
    results = []
    for name in names:
        for check_name, nominal, fn in SUITES[name]:
            rng = np.random.default_rng([seed, len(results)])
            results.append(CheckResult(name, check_name, float(fn(rng)), nominal * factor))
    return results
