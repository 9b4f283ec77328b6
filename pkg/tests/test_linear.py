from __future__ import annotations

from hypothesis import given, strategies as st

from gammaconf.linear import LinComb, lin_sum, split_terms
from gammaconf.scalar import ONE, Q, ZERO, const, q_pow

keys = st.sampled_from(["x", "y", "z", "w"])
coefs = st.integers(-3, 3).map(const) | st.integers(-2, 2).map(q_pow)
lincombs = st.lists(st.tuples(keys, coefs), max_size=5).map(LinComb)


def test_zero_coefficients_are_dropped():
    x = LinComb([("x", ONE), ("x", -ONE), ("y", Q)])
    assert dict(x.items()) == {"y": Q}
    assert x["x"] == ZERO
    assert not LinComb.basis("x", 0)


def test_render_is_sorted_and_signed():
    x = LinComb([("b", const(-1)), ("a", Q - 1)])
    assert x.render() == "(q - 1)*a - b"


def test_split_terms():
    assert [(s, t.strip()) for s, t in split_terms("2*x - (q - 1)*y + z")] == [
        (1, "2*x"), (-1, "(q - 1)*y"), (1, "z")]


@given(lincombs, lincombs, lincombs)
def test_vector_space_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a - a == LinComb()
    assert (a + b).scale(Q) == a.scale(Q) + b.scale(Q)
    assert lin_sum([(a, ONE), (b, ONE), (c, Q)]) == a + b + c.scale(Q)


@given(lincombs)
def test_map_keys_merges(a):
    collapsed = a.map_keys(lambda k: "k")
    total = ZERO
    for _, c in a.items():
        total = total + c
    assert collapsed["k"] == total
