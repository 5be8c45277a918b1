import math

import pytest

from errors import PreconditionError
from hyperfun.lemmas import angular_beta_integral, lemma1_closed_form, lemma2_closed_form, radial_integral
from hyperfun.params import Lemma2Params


def test_lemma1_one_variable():
    assert lemma1_closed_form(2.0, [0.5], [1.0], [1.0]) == pytest.approx(0.5, rel=1e-14)


def test_lemma1_zero_b_collapses_to_one():
    assert lemma1_closed_form(1.3, [0.0, 0.0], [0.7, 1.9], [2.0, 0.5]) == pytest.approx(1.0, rel=1e-15)


def test_lemma1_two_variables():
    expected = math.gamma(1.0) / math.gamma(1.5) * (math.gamma(0.5) / math.gamma(0.25)) ** 2
    assert lemma1_closed_form(1.5, [0.25, 0.25], [0.5, 0.5], [1.0, 1.0]) == pytest.approx(expected, rel=1e-13)


def test_lemma1_scales_with_z0():
    base = lemma1_closed_form(2.0, [0.5], [1.0], [1.0])
    assert lemma1_closed_form(2.0, [0.5], [1.0], [4.0]) == pytest.approx(base / 2.0, rel=1e-14)


@pytest.mark.parametrize("a, b, c, z0", [
    (0.5, [0.5], [1.0], [1.0]),     # a <= Σb
    (2.0, [0.5], [0.5], [1.0]),     # c <= b
    (2.0, [0.5], [1.0], [0.0]),     # z0 = 0
    (2.0, [0.5], [1.0], [-1.0]),    # complex power
])
def test_lemma1_preconditions(a, b, c, z0):
    with pytest.raises(PreconditionError):
        lemma1_closed_form(a, b, c, z0)


@pytest.mark.parametrize("p, q, r, s, expected", [
    ((1.0,), (1.0,), (1.0,), 2.0, 1.0),
    ((1.0,), (2.0,), (1.0,), 1.0, math.pi / 2.0),
    ((1.0, 1.0), (2.0, 2.0), (1.0, 1.0), 2.0, math.pi / 4.0),
    ((1.0,), (2.0,), (2.0,), 1.0, math.pi / 4.0),
])
def test_lemma2_closed_forms(p, q, r, s, expected):
    assert lemma2_closed_form(Lemma2Params(p, q, r, s, 0.0)) == pytest.approx(expected, rel=1e-13)


def test_lemma2_params_window():
    with pytest.raises(PreconditionError):
        Lemma2Params((1.0,), (2.0,), (1.0,), s=0.4, t=0.0)
    with pytest.raises(PreconditionError):
        Lemma2Params((1.0,), (2.0,), (1.0,), s=1.0, t=0.6)


def test_radial_integral_arctan():
    assert radial_integral(1.0, 0.0, 1.0, 2.0) == pytest.approx(math.pi / 2.0, rel=1e-14)


def test_angular_beta_integral():
    assert angular_beta_integral(0.5, 0.5) == pytest.approx(math.pi / 2.0, rel=1e-14)
    assert angular_beta_integral(1.0, 1.0) == pytest.approx(0.5, rel=1e-14)
