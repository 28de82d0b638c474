"""从属关系：目标圆盘几何、圆盘不等式边距与边界包含检查。"""

from __future__ import annotations

import numpy as np
import pytest

from gftv.core.errors import ExtraZeros, ParamOutOfRange
from gftv.services.subordination import (
    MobiusTarget,
    containment_subordination_check,
    disk_inequality_margin,
    starlike_quotient,
)
from tests.conftest import fast_grid, make_poly


class TestMobiusTarget:
    @pytest.mark.parametrize("lam", np.linspace(1.05, 10.0, 12))
    def test_center_equals_radius(self, lam):
        target = MobiusTarget(lambda_=lam)
        assert target.center == target.radius
        assert 0 < target.radius < 1

    def test_boundary_images(self):
        target = MobiusTarget(lambda_=2.0)
        assert target.value(1.0) == pytest.approx(0.0)
        assert target.value(-1.0) == pytest.approx(4 / 3)

    def test_image_of_circle_is_target_circle(self):
        target = MobiusTarget(lambda_=1.5)
        w = target.value(np.exp(1j * np.linspace(0.1, 6.0, 50)))
        np.testing.assert_allclose(np.abs(w - target.center), target.radius)

    def test_contains(self):
        target = MobiusTarget(lambda_=2.0)
        assert target.contains(1.0)
        assert not target.contains(-0.1)
        assert not target.contains(4 / 3 + 1e-6)

    def test_rejects_lambda_at_most_one(self):
        with pytest.raises(ParamOutOfRange):
            MobiusTarget(lambda_=1.0)

    def test_alias(self):
        assert MobiusTarget(**{"lambda": 3.0}).lambda_ == 3.0


class TestDiskInequalityMargin:
    def test_identity(self):
        assert disk_inequality_margin(make_poly(), 2.0, fast_grid()) == pytest.approx(1 / 3)

    def test_small_perturbation_positive(self):
        assert disk_inequality_margin(make_poly(1, 1, {2: 0.1}), 1.5, fast_grid()) > 0

    def test_large_perturbation_negative(self):
        assert disk_inequality_margin(make_poly(1, 1, {2: 0.45}), 1.05, fast_grid()) < 0

    def test_extra_zeros(self):
        # z + 2z² 在 -0.5 处另有零点
        with pytest.raises(ExtraZeros):
            disk_inequality_margin(make_poly(1, 1, {2: 2.0}), 2.0, fast_grid())


class TestContainment:
    def test_identity(self):
        assert containment_subordination_check(make_poly(), 2.0, fast_grid())

    def test_large_perturbation(self):
        assert not containment_subordination_check(make_poly(1, 1, {2: 0.45}), 1.05, fast_grid())

    def test_agrees_with_margin(self):
        grid = fast_grid()
        for c in (0.05, 0.1, 0.2, 0.3, 0.45):
            f = make_poly(1, 1, {2: c})
            for lam in (1.2, 1.5, 2.0, 2.5):
                margin = disk_inequality_margin(f, lam, grid)
                if abs(margin) > 1e-4:
                    assert containment_subordination_check(f, lam, grid) == (margin > 0)


class TestStarlikeQuotient:
    def test_value_at_zero(self):
        assert starlike_quotient(make_poly(2, 1, {3: 0.4}), 0.0) == pytest.approx(1.0)

    def test_closed_form(self):
        # f = z + 0.1z²：zf'/f = (1 + 0.2z)/(1 + 0.1z)
        z = 0.7j
        assert starlike_quotient(make_poly(1, 1, {2: 0.1}), z) == pytest.approx((1 + 0.2 * z) / (1 + 0.1 * z))
