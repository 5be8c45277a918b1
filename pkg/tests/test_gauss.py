import math

import pytest

from errors import NonConvergence, OutsideDomain, ParameterPole
from hyperfun.gauss import gauss_2f1
from hyperfun.params import EvalOptions, FAMethod


def test_zero_argument():
    assert gauss_2f1(0.3, 1.7, 2.2, 0.0).value == 1.0


def test_log_closed_form():
    # 2F1(1, 1; 2; x) = -ln(1-x)/x
    result = gauss_2f1(1.0, 1.0, 2.0, 0.5)
    assert result.value == pytest.approx(1.3862943611198906, rel=1e-12)
    assert result.converged
    assert result.method is FAMethod.SERIES


def test_symmetric_in_a_and_b():
    assert gauss_2f1(0.3, 1.7, 2.2, 0.4).value == pytest.approx(
        gauss_2f1(1.7, 0.3, 2.2, 0.4).value, rel=1e-14)


def test_large_negative_argument_uses_euler_integral():
    # 2F1(1, 1/2; 3/2; -z²) = arctan(z)/z
    z = math.sqrt(2.0)
    result = gauss_2f1(1.0, 0.5, 1.5, -2.0)
    assert result.method is FAMethod.INTEGRAL
    assert result.value == pytest.approx(math.atan(z) / z, rel=1e-8)


def test_argument_at_one_is_outside():
    with pytest.raises(OutsideDomain):
        gauss_2f1(0.5, 0.5, 1.5, 1.0)


def test_pole_in_c():
    with pytest.raises(ParameterPole):
        gauss_2f1(0.5, 0.5, -1.0, 0.2)


def test_non_convergence_is_reported():
    with pytest.raises(NonConvergence):
        gauss_2f1(0.5, 0.5, 1.5, 0.9, EvalOptions(max_total_degree=3))
