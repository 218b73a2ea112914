from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arbor.coefficients import MPoly
from arbor.lincomb import LinComb, Tensor, extend_bilinear, extend_linear, parse_lincomb, tensor
from arbor.trees import Forest, enumerate_forests, parse_key

KEYS = [f for m in range(4) for f in enumerate_forests("unordered", 2, m)]


def K(text):
    return parse_key(text, "unordered", 2)


def pk(text):
    return parse_key(text, "unordered", 2)


lincombs = st.dictionaries(
    st.sampled_from(KEYS),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=6,
).map(LinComb)
scalars = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(lincombs, lincombs, lincombs, scalars, scalars)
def test_module_axioms(x, y, z, a, b):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x + LinComb.zero() == x
    assert x - x == LinComb.zero()
    assert (x + y).scale(a) == x.scale(a) + y.scale(a)
    assert x.scale(a + b) == x.scale(a) + x.scale(b)
    assert x.scale(a).scale(b) == x.scale(a * b)
    assert x.scale(1) == x


def test_zero_coefficients_are_dropped():
    x = LinComb({K("[]"): 2}) + LinComb({K("[]"): -2})
    assert not x and len(x) == 0 and str(x) == "0"
    assert LinComb({K("[]"): 0}).terms == {}
    assert LinComb.basis(K("[]"), 0) == LinComb.zero()


def test_mixing_bases_is_a_type_error():
    a = LinComb.basis(K("[]"))
    b = LinComb.basis(Tensor((K("[]"), K("[]"))))
    with pytest.raises(TypeError):
        a + b


def test_tensor_is_bilinear_and_flat():
    x = LinComb({K("[]"): 2, K("[1:[]]"): 1})
    y = LinComb({K("1"): 3})
    t = tensor(x, y)
    assert t.coefficient_of(Tensor((K("[]"), K("1")))) == 6
    assert t.coefficient_of(Tensor((K("[1:[]]"), K("1")))) == 3
    tt = tensor(t, y)
    assert all(len(k) == 3 for k in tt.keys())
    assert tensor(x, LinComb.zero()) == LinComb.zero()


def test_extend_linear_and_bilinear():
    x = LinComb({K("[]"): 2, K("[1:[]]"): -1})

    def double(k):
        return LinComb.basis(k, 2)

    assert extend_linear(double, x) == x.scale(2)

    def pair(a, b):
        return LinComb.basis(Tensor((b, a)))

    y = extend_bilinear(pair, x, LinComb.basis(K("1")))
    assert y == LinComb({Tensor((K("1"), K("[]"))): 2, Tensor((K("1"), K("[1:[]]"))): -1})
    with pytest.raises(TypeError):
        extend_bilinear(pair, x)


def test_graded_part_and_degrees():
    x = LinComb({K("1"): 1, K("[]"): 2, K("[]*[]"): 3, K("[1:[]]"): 4})
    assert x.degrees() == {0, 1, 2}
    assert x.graded_part(2) == LinComb({K("[]*[]"): 3, K("[1:[]]"): 4})
    assert x.graded_part(5) == LinComb.zero()


def test_printing_order_is_by_degree_then_text():
    x = LinComb({K("[1:[]]"): 1, K("1"): 1, K("[]"): Fraction(1, 2)})
    assert str(x) == "1 + 1/2 [] + [1:[]]"


def test_printing_signs_and_polynomials():
    q = MPoly.var(1, 1, 2)
    x = LinComb({K("[]"): -1, K("[1:[]]"): -3, K("[2:[]]"): q + 1})
    assert str(x) == "-[] + -3 [1:[]] + (q1_1 + 1) [2:[]]"


@settings(max_examples=60, deadline=None)
@given(lincombs)
def test_parse_round_trip_rational(x):
    assert parse_lincomb(str(x), pk) == x


def test_parse_round_trip_tensors_and_polynomials():
    q1, q2 = MPoly.var(1, 1, 2), MPoly.var(2, 2, 2)
    x = LinComb(
        {
            Tensor((K("[]"), K("[1:[]]"))): q1 * q2 - 1,
            Tensor((K("1"), K("[]*[]"))): Fraction(-2, 3),
            Tensor((K("[1:[] 2:[]]"), K("1"))): q1,
        }
    )
    assert parse_lincomb(str(x), pk, 4) == x


def test_parse_rejects_bad_keys():
    from arbor.trees import ParseError

    with pytest.raises(ParseError):
        parse_lincomb("[] + [3:[]]", pk)
