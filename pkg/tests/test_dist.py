from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from gammaconf.catalog import build_algebra, default_character
from gammaconf.conformal import GenId, LinComb, alpha_product, gen
from gammaconf.dist import (
    UNIT,
    PoleSet,
    TruncDist,
    WindowError,
    binomial_mul,
    check_locality,
    decompose,
    delta_dist,
    field_bracket,
    general_delta,
    lagrange_coeffs,
    mul_z_field,
    poly_eval,
    reconstruct,
    residue_z,
    shifted_inverse_power,
)
from gammaconf.modes import abelian_mode_algebra, derived_mode_algebra, mode_canonicalize
from gammaconf.scalar import ONE, Q, ZERO, const, q_pow

W = 8


def scalar_dist(d: TruncDist):
    return {k: v[UNIT] for k, v in d.valid_items()}


def test_delta_coefficients():
    d = delta_dist(Q, W)
    assert d[(3, -4)] == LinComb.basis(UNIT, q_pow(3))
    assert not d[(3, -3)]
    with pytest.raises(ValueError):
        delta_dist(0, W)


def test_rescaled_delta_identity():
    al, be = Q + 1, const(3)
    lhs = delta_dist(al / be, W).scale(be.inv())
    rhs = general_delta(al, be, W)
    assert lhs.restrict_equal(rhs)


def test_delta_times_binomial():
    assert binomial_mul(delta_dist(ONE, W), [ONE]).is_zero_on_valid()[0]
    d = binomial_mul(delta_dist(ONE, W), [Q])
    assert not d.is_zero_on_valid()[0]
    # (z - q w) delta(z - w) = (1 - q) w delta(z - w): coefficient (1 - q) on n = -m - 2
    for (m, n), v in d.valid_items():
        assert n == -m - 2 and v[UNIT] == 1 - Q


def test_residue_reproduces_field():
    a = {-2: const(5), 0: Q, 3: const(-1)}
    res = residue_z(mul_z_field(a, delta_dist(ONE, W)))
    for n, v in res.items():
        assert v[UNIT] == a.get(n, ZERO)
    assert set(res) <= set(a)


def test_lagrange_is_indicator():
    S = PoleSet([Q, -Q, const(2)])
    for alpha in S:
        p = lagrange_coeffs(S, alpha)
        for b in S:
            assert poly_eval(p, b) == (ONE if b == alpha else ZERO)
    with pytest.raises(ValueError):
        lagrange_coeffs(S, const(7))


def test_decompose_pure_delta():
    c = {-1: LinComb.basis(UNIT, const(2)), 2: LinComb.basis(UNIT, Q)}
    d = reconstruct({Q: c}, 2 * W)
    dec = decompose(d, [Q, const(3)])
    assert {k: v for k, v in dec.parts[Q].items() if v} == {k: v for k, v in c.items() if abs(k) <= dec.parts_radius}
    assert not any(dec.parts[const(3)].values())
    assert dec.remainder.is_zero_on_valid()[0]


def test_decompose_wrong_pole_leaves_remainder():
    dec = decompose(delta_dist(ONE, W), [Q])
    assert not dec.remainder.is_zero_on_valid()[0]


@pytest.fixture(scope="module")
def sin_modes():
    R = build_algebra("sin")
    chi = default_character(R)
    return R, chi, derived_mode_algebra(R, chi)


def test_sin_field_locality(sin_modes):
    R, chi, A = sin_modes
    A1 = GenId("A", (1,))
    d = field_bracket(A, A1, A1, W)
    assert check_locality(d, [q_pow(-1), Q]) == (True, None)
    ok, witness = check_locality(d, [Q])
    assert not ok and witness is not None
    assert check_locality(TruncDist(W, {}, 0), [Q])[0]


def test_sin_field_decomposition_matches_products(sin_modes):
    R, chi, A = sin_modes
    Z = R.spec
    A1 = GenId("A", (1,))
    dec = decompose(field_bracket(A, A1, A1, W), [q_pow(-1), Q])
    for r in (-1, 1):
        p = alpha_product(R, gen(A1, Z.identity()), Z.elem((r,)), gen(A1, Z.identity()))
        scale = chi(Z.elem((r,)))
        for N, v in dec.parts[scale].items():
            assert v == mode_canonicalize(chi, p, N)
    assert dec.remainder.is_zero_on_valid()[0]


def test_abelian_bracket_is_zero():
    d = field_bracket(abelian_mode_algebra(), GenId("A", (0,)), GenId("A", (1,)), 4)
    assert d.is_zero_on_valid()[0]


def test_twisted_affine_locality():
    R = build_algebra("twisted_affine_sl2")
    chi = default_character(R)
    A = derived_mode_algebra(R, chi)
    d = field_bracket(A, GenId("h"), GenId("v"), W)
    assert check_locality(d, [ONE, -ONE])[0]
    dec = decompose(d, [ONE, -ONE])
    assert dec.remainder.is_zero_on_valid()[0]


def test_window_exhaustion():
    with pytest.raises(WindowError, match="window too small"):
        binomial_mul(delta_dist(ONE, 1), [ONE, Q])
    with pytest.raises(WindowError):
        shifted_inverse_power(1, 5, 3)


def test_shifted_inverse_power_at_zero():
    assert shifted_inverse_power(0, 2, 6) == {-3: ONE}


@given(st.fractions(min_value=-3, max_value=3, max_denominator=4), st.integers(0, 3))
def test_shifted_inverse_power_inverts(c, l):
    # (z + c)^{l+1} times the expansion is 1 up to the truncation order
    Wn = 8
    ser = shifted_inverse_power(c, l, Wn)
    poly = {j: const(comb(l + 1, j) * Fraction(c) ** (l + 1 - j)) for j in range(l + 2)}
    prod = {}
    for e1, v1 in ser.items():
        for e2, v2 in poly.items():
            prod[e1 + e2] = prod.get(e1 + e2, ZERO) + v1 * v2
    lowest = min(ser) + 1
    for e, v in prod.items():
        if e >= lowest + l:
            assert v == (ONE if e == 0 else ZERO), (e, v)
