import math

import numpy as np
import pytest

from errors import PreconditionError
from hyperfun.rules import beta_rule, jacobi_rule
from neumann.quadrature import AxisFeature, QuadratureSpec, Transform, axis_rule


def test_spec_coerces_transform():
    assert QuadratureSpec(transform="tangent").transform is Transform.TANGENT


@pytest.mark.parametrize("kwargs", [
    {"base_order": 3},
    {"refinement_levels": 0},
    {"target_rel_tol": 0.0},
    {"tail_panels": 0},
])
def test_spec_validation(kwargs):
    with pytest.raises(PreconditionError):
        QuadratureSpec(**kwargs)


def test_spec_rejects_unknown_transform():
    with pytest.raises(ValueError):
        QuadratureSpec(transform="cubic")


def test_jacobi_rule_weighted_moment():
    # ∫_0^2 x^0.5 dx
    nodes, weights = jacobi_rule(0.0, 2.0, 6, left=0.5)
    assert weights.sum() == pytest.approx(2.0**1.5 / 1.5, rel=1e-13)
    assert np.all((nodes > 0.0) & (nodes < 2.0))


def test_beta_rule_is_normalized():
    for scale in (0.5, 40.0):
        _, weights = beta_rule(0.25, 0.5, scale, 16)
        assert weights.sum() == pytest.approx(1.0, rel=1e-11)


@pytest.mark.parametrize("transform", ["rational", "tangent"])
def test_half_line_with_endpoint_weight(transform):
    # ∫_0^∞ x^0.5 e^-x dx = Γ(3/2)
    quad = QuadratureSpec(transform=transform)
    nodes, weights = axis_rule([AxisFeature(1.0, 1.0)], quad, level=1, lower=0.0, weight_exponent=0.5)
    assert weights @ np.exp(-nodes) == pytest.approx(math.gamma(1.5), rel=1e-6)


@pytest.mark.parametrize("transform", ["rational", "tangent"])
def test_full_line_algebraic_decay(transform):
    quad = QuadratureSpec(transform=transform)
    nodes, weights = axis_rule([AxisFeature(0.0, 1.0)], quad, level=1)
    assert weights @ (1.0 / (1.0 + nodes**2)) == pytest.approx(math.pi, rel=1e-6)


def test_narrow_feature_is_resolved():
    quad = QuadratureSpec()
    width = 1e-2
    nodes, weights = axis_rule([AxisFeature(3.0, width), AxisFeature(0.0, 1.0)], quad, level=1)
    peak = np.exp(-0.5 * ((nodes - 3.0) / width) ** 2)
    assert weights @ peak == pytest.approx(width * math.sqrt(2.0 * math.pi), rel=1e-6)
