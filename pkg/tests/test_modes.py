from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from gammaconf.catalog import build_algebra, default_character
from gammaconf.conformal import GenId, LinComb, SamplePlan, gen
from gammaconf.group import character_make, parse_group
from gammaconf.modes import (
    LiteralDomainError,
    abelian_mode_algebra,
    check_lie,
    derived_mode_algebra,
    literal_mode_algebra,
    mode_bracket,
    mode_canonicalize,
    parse_mode_elem,
    parse_mode_key,
    render_mode_elem,
    render_mode_key,
)
from gammaconf.scalar import ONE, Q, ZERO, const, q_pow

Z = parse_group("Z")


def Am(m, k, c=ONE):
    return LinComb.basis((GenId("A", (m,)), k), c)


@pytest.fixture(scope="module")
def sin_modes():
    R = build_algebra("sin")
    return derived_mode_algebra(R, default_character(R))


def test_canonicalize():
    chi = character_make(Z, [Q])
    x = gen(GenId("A", (2,)), Z.elem((-1,)))
    assert mode_canonicalize(chi, x, 1) == Am(2, 1, Q)
    assert mode_canonicalize(chi, gen(GenId("A", (3,)), Z.identity()), 5) == Am(3, 5)
    y = x - gen(GenId("A", (2,)), Z.identity())
    assert not mode_canonicalize(character_make(Z, [ONE]), y, 3)
    assert not mode_canonicalize(chi, y, 0)


def test_sin_bracket_instance(sin_modes):
    assert sin_modes.bracket(Am(1, 0), Am(1, 1)) == Am(2, 1, Q - 1)
    assert not sin_modes.bracket(Am(3, 2), Am(3, 2))


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_sin_bracket_closed_form(m, k, n, l):
    R = build_algebra("sin")
    got = mode_bracket(R, default_character(R), Am(m, k), Am(n, l))
    assert got == Am(m + n, k + l, q_pow(m * l) - q_pow(k * n))


def test_twisted_affine_brackets():
    R = build_algebra("twisted_affine_sl2")
    A = derived_mode_algebra(R, default_character(R))
    h, v, u = GenId("h"), GenId("v"), GenId("u")
    one = lambda g, n: LinComb.basis((g, n))  # noqa: E731
    assert A.bracket(one(h, 1), one(v, 1)) == LinComb.basis((u, 2), const(4))
    for n in range(-3, 4):
        assert not A.bracket(one(h, 0), one(v, n))
    # even modes of h and v, odd modes of u vanish
    keys = A.basis(SamplePlan(1, 3))
    assert all((g == u) == (n % 2 == 0) for g, n in keys)


def test_check_lie(sin_modes):
    assert check_lie(sin_modes, SamplePlan(2, 2)).ok
    assert check_lie(abelian_mode_algebra(), SamplePlan(1, 1)).ok


def test_literal_vector_sin():
    A = literal_mode_algebra("vector_sin", (2, 3))
    x = LinComb.basis((GenId("a", (1, 0)), 1))
    y = LinComb.basis((GenId("a", (0, 1)), 2))
    assert A.bracket(x, y) == LinComb.basis((GenId("a", (1, 1)), 3), const(2 ** 2 - 3))


def test_literal_diagonals_vanish():
    t = literal_mode_algebra("ex33_tilde")
    key = (GenId("Bt", (2,)), 1)
    assert not t.bracket_basis(key, key)
    a = literal_mode_algebra("ex52a")
    key = (GenId("A", (1,)), 0)
    # at m = n = 1, k = l = 0 both literal coefficients are q^0 - q^0
    assert not a.bracket_basis(key, key)


def test_literal_domain():
    d = literal_mode_algebra("ex33_display")
    key = (GenId("B", (1,)), 0)
    with pytest.raises(LiteralDomainError):
        d.bracket_basis(key, key)
    rep = check_lie(d, SamplePlan(1, 1))
    assert any("outside" in n for n in rep.notes)


def test_literal_ex52a_is_report_only():
    rep = check_lie(literal_mode_algebra("ex52a"), SamplePlan(2, 2))
    assert rep.evaluated > 0  # recorded either way


def test_flipped_reading_is_a_lie_algebra():
    assert check_lie(literal_mode_algebra("ex33_display_flipped"), SamplePlan(2, 2)).ok


def test_unknown_table():
    with pytest.raises(ValueError, match="unknown literal table"):
        literal_mode_algebra("nope")
    with pytest.raises(ValueError):
        literal_mode_algebra("vector_sin", (0, 2))


def test_mode_key_syntax():
    assert parse_mode_key("A[2;5]") == (GenId("A", (2,)), 5)
    assert parse_mode_key("h[;1]") == (GenId("h"), 1)
    assert parse_mode_key("h[1]") == (GenId("h"), 1)
    assert parse_mode_key("a[1,-1;0]") == (GenId("a", (1, -1)), 0)
    for key in [(GenId("A", (2,)), 5), (GenId("a", (1, -1)), 0)]:
        assert parse_mode_key(render_mode_key(key)) == key
    x = parse_mode_elem("(q - 1)*A[2;1] - 3*A[0;0]")
    assert parse_mode_elem(render_mode_elem(x)) == x
    with pytest.raises(ValueError):
        parse_mode_key("A[2;")


def test_character_mismatch():
    R = build_algebra("sin")
    with pytest.raises(ValueError):
        derived_mode_algebra(R, character_make(parse_group("Z/4"), [-ONE]))


def test_zero_mode_is_zero():
    assert ZERO == Q - Q
