import cmath
import math

import numpy as np
import pytest

from spinorspace.algebra import Spinor
from spinorspace.charts import (
    ChartId,
    ChartPoint,
    DomainVariant,
    Multiplicity,
    antipode,
    convert_spherical_domain,
    direction_multiplicity,
    eta_in_chart,
    jacobian,
    metric,
    sheet_of,
    to_cartesian,
    xi_in_chart,
)
from spinorspace.checks import random_chart_point
from spinorspace.errors import ValidationError
from spinorspace.oracles import fd_jacobian
from spinorspace.proper_model import eta_from_proper
from spinorspace.pseudo_model import BranchContext, xi_from_pseudo

TOL = 1e-12
METRIC_TOL = 1e-8
PI = math.pi
C, V = ChartId, DomainVariant


def cyl(*y, variant=V.EXTENDED):
    return ChartPoint(C.CYLPAR, *y, variant)


def par(*y, variant=V.EXTENDED):
    return ChartPoint(C.PARABOLIC, *y, variant)


def sph(*y, variant=V.EXTENDED):
    return ChartPoint(C.SPHERICAL, *y, variant)


class TestToCartesian:
    @pytest.mark.parametrize(
        "p, x",
        [
            (cyl(1, 1, 5), (0, 1, 5)),
            (par(1, 1, 0), (1, 0, 0)),
            (sph(1, PI / 2, 0), (1, 0, 0)),
            (sph(2, PI / 2, PI / 2, variant=V.VECTOR), (0, 2, 0)),
        ],
    )
    def test_examples(self, p, x):
        assert np.allclose(to_cartesian(p), x, atol=TOL)

    def test_negative_radius_matches_doubled_representative(self):
        p = sph(-1.5, 0.4, 0.3, variant=V.GPRIME)
        q = convert_spherical_domain(p, V.EXTENDED)
        assert np.allclose(to_cartesian(p), to_cartesian(q), atol=TOL)


class TestRanges:
    def test_vector_cylpar(self):
        with pytest.raises(ValidationError):
            cyl(1, -1, 0, variant=V.VECTOR)
        with pytest.raises(ValidationError):
            cyl(-1, 0, 0, variant=V.VECTOR)
        cyl(1, 0, 0, variant=V.VECTOR)

    def test_parabolic(self):
        with pytest.raises(ValidationError):
            par(-1, 1, 0)
        with pytest.raises(ValidationError):
            par(1, 1, 3 * PI, variant=V.VECTOR)
        with pytest.raises(ValidationError):
            par(1, 1, 4 * PI)

    def test_spherical(self):
        with pytest.raises(ValidationError):
            sph(1, -0.1, 0)
        with pytest.raises(ValidationError):
            sph(-1, 1, 0)
        with pytest.raises(ValidationError):
            sph(1, 1, 2 * PI)
        with pytest.raises(ValidationError):
            sph(1, 1, PI, variant=V.GPRIME)

    def test_spherical_variants_need_spherical_chart(self):
        with pytest.raises(ValidationError):
            ChartPoint(C.PARABOLIC, 1, 1, 0, V.GPRIME)


class TestMetric:
    def test_examples(self):
        assert np.array_equal(metric(cyl(1, 1, 5)), np.diag([2.0, 2.0, 1.0]))
        assert np.array_equal(metric(par(1, 1, 2.0)), np.diag([2.0, 2.0, 1.0]))
        assert np.allclose(metric(sph(2, PI / 2, 1.0)), np.diag([1.0, 4.0, 4.0]), atol=TOL)

    def test_cylpar_formula_exact(self, rng):
        for _ in range(100):
            y1, y2, y3 = rng.normal(size=3)
            s = y1 * y1 + y2 * y2
            assert np.array_equal(metric(cyl(y1, y2, y3)), np.diag([s, s, 1.0]))

    @pytest.mark.parametrize("chart", list(ChartId))
    def test_matches_jacobian(self, chart, rng):
        for _ in range(100):
            p = random_chart_point(rng, chart)
            J = fd_jacobian(p)
            assert np.abs(jacobian(p) - J).max() < METRIC_TOL * (1 + np.abs(J).max())
            assert np.abs(metric(p) - J.T @ J).max() < METRIC_TOL * max(1.0, np.abs(metric(p)).max())

    def test_negative_radius_metric(self, rng):
        for _ in range(50):
            p = random_chart_point(rng, C.SPHERICAL, V.GDOUBLEPRIME)
            J = fd_jacobian(p)
            assert np.abs(metric(p) - J.T @ J).max() < METRIC_TOL * max(1.0, np.abs(metric(p)).max())

    def test_symmetric_positive_semidefinite(self, rng):
        for chart in ChartId:
            g = metric(random_chart_point(rng, chart))
            assert np.array_equal(g, g.T) and np.linalg.eigvalsh(g).min() >= -TOL


class TestXiInChart:
    def test_examples(self):
        assert xi_in_chart(par(2, 1, PI)).distance(Spinor(-2j, 1j)) < TOL
        assert xi_in_chart(sph(1, PI / 2, 0)).distance(Spinor(1, 1)) < TOL
        want = Spinor(cmath.exp(-0.25j * PI), cmath.exp(0.25j * PI))
        assert xi_in_chart(cyl(1, 1, 0)).distance(want) < TOL

    def test_axis_uses_mute_angle(self):
        ctx = BranchContext(mute_angle=1.0)
        want = Spinor(math.sqrt(4) * cmath.exp(-0.5j), 0)
        assert xi_in_chart(sph(2, 0, 0.3), ctx).distance(want) < TOL
        assert xi_in_chart(sph(2, 0, -0.3), ctx).distance(-want) < TOL

    def test_origin(self):
        assert xi_in_chart(cyl(0, 0, 0)) == Spinor(0, 0)

    @pytest.mark.parametrize("chart", list(ChartId))
    def test_consistent_with_cartesian(self, chart, rng):
        for _ in range(200):
            p = random_chart_point(rng, chart)
            x = to_cartesian(p)
            sign = 1 if sheet_of(p) == 1 else -1
            xi, eta = xi_in_chart(p), eta_in_chart(p)
            scale = max(1.0, xi.norm())
            assert xi.distance(sign * xi_from_pseudo(x)) < TOL * scale
            assert eta.distance(sign * eta_from_proper(x)) < TOL * scale

    def test_parabolic_coordinates_are_polar_parameters(self, rng):
        for _ in range(200):
            p = random_chart_point(rng, C.PARABOLIC)
            s = xi_in_chart(p)
            gamma = cmath.phase(s.c2) - cmath.phase(s.c1)
            assert abs(abs(s.c1) - p.y1) < TOL and abs(abs(s.c2) - p.y2) < TOL
            assert abs(math.remainder(gamma - p.y3, 4 * PI)) < TOL


class TestEtaInChart:
    def test_examples(self):
        assert eta_in_chart(par(1, 1, 0)).distance(Spinor(0, math.sqrt(2))) < TOL
        assert eta_in_chart(sph(1, PI / 2, 0)).distance(Spinor(0, math.sqrt(2))) < TOL
        assert eta_in_chart(sph(1, 0, 0)).distance(Spinor(1, 1)) < TOL

    def test_lower_half_space_sign(self):
        assert eta_in_chart(sph(1, PI, 0)).distance(Spinor(-1, 1)) < TOL


class TestSheets:
    def test_parabolic(self):
        assert sheet_of(par(1, 1, PI)) == 1 and sheet_of(par(1, 1, 3 * PI)) == 2

    def test_cylpar(self):
        assert sheet_of(cyl(1, 0, 0)) == 1 and sheet_of(cyl(-1, 0, 0)) == 2
        assert sheet_of(cyl(-1, 0.1, 0)) == 1 and sheet_of(cyl(1, -0.1, 0)) == 2

    def test_spherical(self):
        assert sheet_of(sph(1, 1, 0)) == 1 and sheet_of(sph(1, 1, -0.1)) == 2
        assert sheet_of(sph(-1, 1, 0.5, variant=V.GPRIME)) == 1


class TestAntipode:
    def test_cylpar_example(self):
        assert antipode(cyl(1, 1, 5)).coords() == (-1, -1, 5)

    def test_vector_domain_rejected(self):
        with pytest.raises(ValidationError):
            antipode(cyl(1, 1, 5, variant=V.VECTOR))

    @pytest.mark.parametrize(
        "chart, variant",
        [(C.CYLPAR, V.EXTENDED), (C.PARABOLIC, V.EXTENDED), (C.SPHERICAL, V.EXTENDED),
         (C.SPHERICAL, V.GPRIME), (C.SPHERICAL, V.GDOUBLEPRIME)],
    )
    def test_double_cover_and_sign_flip(self, chart, variant, rng):
        for _ in range(1000):
            p = random_chart_point(rng, chart, variant)
            q = antipode(p)
            assert q.variant is p.variant
            assert np.allclose(antipode(q).coords(), p.coords(), atol=TOL, rtol=0)
            assert np.abs(to_cartesian(q) - to_cartesian(p)).max() < TOL * (1 + np.abs(to_cartesian(p)).max())
            assert sheet_of(q) != sheet_of(p)
            scale = max(1.0, xi_in_chart(p).norm())
            assert xi_in_chart(q).distance(-xi_in_chart(p)) < TOL * scale
            assert eta_in_chart(q).distance(-eta_in_chart(p)) < TOL * scale

    def test_cylpar_double_cover_is_exact(self, rng):
        for _ in range(100):
            p = random_chart_point(rng, C.CYLPAR)
            assert np.array_equal(to_cartesian(antipode(p)), to_cartesian(p))


class TestDomainConversion:
    def test_examples(self):
        q = convert_spherical_domain(sph(1, PI / 2, 3 * PI / 2), V.GPRIME)
        assert q.variant is V.GPRIME and np.allclose(q.coords(), (-1, PI / 2, PI / 2), atol=TOL)
        q = convert_spherical_domain(sph(1, PI / 2, -PI / 2), V.GDOUBLEPRIME)
        assert q.variant is V.GDOUBLEPRIME and np.allclose(q.coords(), (-1, PI / 2, PI / 2), atol=TOL)

    def test_unchanged_when_in_range(self):
        p = sph(1, 1, 0.5)
        assert convert_spherical_domain(p, V.GPRIME).coords() == p.coords()
        assert convert_spherical_domain(p, V.EXTENDED) is p

    def test_shift_relations(self):
        r, theta, phi = 1.3, 0.7, 0.4
        assert xi_in_chart(sph(r, theta, phi + PI)).distance(xi_in_chart(sph(-r, theta, phi, variant=V.GPRIME))) < TOL

    def test_errors(self):
        with pytest.raises(ValidationError):
            convert_spherical_domain(par(1, 1, 0), V.GPRIME)
        with pytest.raises(ValidationError):
            convert_spherical_domain(sph(1, 1, -1), V.VECTOR)

    @pytest.mark.parametrize("source", [V.EXTENDED, V.GPRIME, V.GDOUBLEPRIME])
    def test_preserves_spinor_and_point(self, source, rng):
        for _ in range(300):
            p = random_chart_point(rng, C.SPHERICAL, source)
            for target in (V.EXTENDED, V.GPRIME, V.GDOUBLEPRIME):
                q = convert_spherical_domain(p, target)
                assert q.variant is target
                assert xi_in_chart(q).distance(xi_in_chart(p)) < TOL * max(1.0, xi_in_chart(p).norm())
                assert eta_in_chart(q).distance(eta_in_chart(p)) < TOL * max(1.0, eta_in_chart(p).norm())
                assert np.allclose(to_cartesian(q), to_cartesian(p), atol=TOL * 10)
                back = convert_spherical_domain(q, source)
                assert np.allclose(back.coords(), p.coords(), atol=TOL * 10)


class TestDirectionMultiplicity:
    def test_examples(self):
        assert direction_multiplicity(cyl(0, 0, 5)).multiplicity is Multiplicity.FOUR_PI
        d = direction_multiplicity(cyl(1, 1, 0))
        assert d.multiplicity is Multiplicity.TWO_PI and abs(d.delta_shift - PI / 4) < TOL
        assert direction_multiplicity(cyl(0, 0, 0)).multiplicity is Multiplicity.FOUR_PI

    def test_other_charts(self):
        assert direction_multiplicity(sph(1, 0, 0)).multiplicity is Multiplicity.FOUR_PI
        assert direction_multiplicity(par(1, 1, 0)).multiplicity is Multiplicity.TWO_PI
