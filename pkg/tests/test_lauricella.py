import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import assume, given

from errors import OutsideDomain, ParameterPole, PreconditionError
from hyperfun.gauss import gauss_2f1
from hyperfun.lauricella import (fa_adjacent_residual, fa_partial, fa_reflection, lauricella_fa,
                                 lauricella_fa_batch)
from hyperfun.params import FAMethod, FAParams
from verify.oracles import central_difference


def test_zero_argument_is_one():
    params = FAParams(0.9, (0.25, 0.5, 0.1), (0.5, 1.5, 0.7))
    assert lauricella_fa(params, [0.0, 0.0, 0.0]).value == 1.0


def test_one_variable_matches_gauss():
    params = FAParams(0.75, (0.25,), (0.5,))
    assert lauricella_fa(params, [0.3]).value == pytest.approx(
        gauss_2f1(0.75, 0.25, 0.5, 0.3).value, rel=1e-13)


def test_series_and_integral_agree_in_overlap():
    params = FAParams(0.9, (0.25, 0.25), (0.5, 0.5))
    x = [-0.3, -0.2]
    series = lauricella_fa(params, x, method=FAMethod.SERIES)
    integral = lauricella_fa(params, x, method=FAMethod.INTEGRAL)
    assert series.method is FAMethod.SERIES
    assert integral.method is FAMethod.INTEGRAL
    assert series.value == pytest.approx(integral.value, rel=1e-8)


def test_auto_path_selection():
    params = FAParams(0.9, (0.25, 0.25), (0.5, 0.5))
    assert lauricella_fa(params, [-0.1, -0.2]).method is FAMethod.SERIES
    assert lauricella_fa(params, [-3.0, -5.0]).method is FAMethod.INTEGRAL


def test_outside_both_domains():
    params = FAParams(0.9, (0.25, 0.25), (0.5, 0.5))
    with pytest.raises(OutsideDomain):
        lauricella_fa(params, [0.6, 0.6])


def test_integral_path_needs_b_below_c():
    params = FAParams(0.9, (0.75,), (0.5,))
    with pytest.raises(OutsideDomain):
        lauricella_fa(params, [-2.0])


def test_wrong_argument_count():
    params = FAParams(0.9, (0.25, 0.25), (0.5, 0.5))
    with pytest.raises(PreconditionError):
        lauricella_fa(params, [0.1])


def test_pole_in_c_rejected():
    with pytest.raises(ParameterPole):
        FAParams(0.5, (0.25,), (-2.0,))


def test_zero_slot_drops_variable():
    full = FAParams(1.2, (0.2, 0.3, 0.1), (0.4, 0.6, 0.2))
    reduced = FAParams(1.2, (0.2, 0.1), (0.4, 0.2))
    assert lauricella_fa(full, [0.1, 0.0, 0.2]).value == pytest.approx(
        lauricella_fa(reduced, [0.1, 0.2]).value, rel=1e-14)


def test_reflection_matches_integral_far_out():
    params = FAParams(0.9, (0.25, 0.25), (0.5, 0.5))
    x = [-2.0, -3.0]
    assert fa_reflection(params, x).value == pytest.approx(lauricella_fa(params, x).value, rel=1e-6)


def test_batch_drops_zero_columns():
    params = FAParams(1.5, (0.25, 0.25), (0.5, 0.5))
    X = np.array([[-1.0, 0.0], [-4.0, 0.0]])
    one = FAParams(1.5, (0.25,), (0.5,))
    expected = [lauricella_fa(one, [-1.0]).value, lauricella_fa(one, [-4.0]).value]
    assert lauricella_fa_batch(params, X) == pytest.approx(expected, rel=1e-9)


def test_batch_rejects_positive_arguments():
    params = FAParams(1.5, (0.25,), (0.5,))
    with pytest.raises(OutsideDomain):
        lauricella_fa_batch(params, np.array([[0.1]]))


# ── Differentiation and the contiguous relation ────────────────


def test_partial_at_origin():
    params = FAParams(0.9, (0.25, 0.4), (0.5, 1.1))
    assert fa_partial(params, [0.0, 0.0], 1) == pytest.approx(0.9 * 0.4 / 1.1, rel=1e-15)


def test_partial_matches_finite_difference_one_variable():
    params = FAParams(0.75, (0.25,), (0.5,))
    fd = central_difference(lambda x: lauricella_fa(params, x).value, [-0.2], 0, 1e-5)
    assert fa_partial(params, [-0.2], 0) == pytest.approx(fd, rel=1e-6)


@pytest.mark.parametrize("k", [0, 1])
def test_partial_matches_finite_difference_two_variables(k):
    params = FAParams(0.9, (0.25, 0.25), (0.5, 0.5))
    x = [-0.1, -0.15]
    fd = central_difference(lambda y: lauricella_fa(params, y).value, x, k, 1e-5)
    assert fa_partial(params, x, k) == pytest.approx(fd, rel=1e-6)


def test_adjacent_residual_vanishes_at_origin():
    params = FAParams(0.6, (0.3,), (0.6,))
    assert fa_adjacent_residual(params, [0.0]) == 0.0


@pytest.mark.parametrize("params, x", [
    (FAParams(0.6, (0.3,), (0.6,)), [0.25]),
    (FAParams(1.2, (0.2, 0.3, 0.1), (0.4, 0.6, 0.2)), [0.1, 0.1, 0.1]),
])
def test_adjacent_residual_small(params, x):
    assert fa_adjacent_residual(params, x) <= 1e-10


@given(
    a=st.floats(min_value=0.1, max_value=2.0),
    b=st.tuples(st.floats(min_value=0.05, max_value=1.0), st.floats(min_value=0.05, max_value=1.0)),
    c=st.tuples(st.floats(min_value=0.3, max_value=2.0), st.floats(min_value=0.3, max_value=2.0)),
    x=st.tuples(st.floats(min_value=-0.4, max_value=0.4), st.floats(min_value=-0.4, max_value=0.4)),
)
def test_symmetric_under_slot_permutation(a, b, c, x):
    assume(abs(x[0]) + abs(x[1]) < 0.8)
    forward = lauricella_fa(FAParams(a, b, c), list(x)).value
    swapped = lauricella_fa(FAParams(a, b[::-1], c[::-1]), list(x[::-1])).value
    assert forward == pytest.approx(swapped, rel=1e-12)
