from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from gammaconf.catalog import build_algebra
from gammaconf.conformal import (
    AXIOMS,
    GenId,
    LinComb,
    SamplePlan,
    adjoint_module,
    alpha_product,
    alpha_product_c1prime_first,
    check_conformal_axiom,
    check_module_axiom,
    corrupted,
    gc1,
    gc1_action,
    gc1_module,
    gen,
    parse_mod_elem,
    product_support,
    render_mod_elem,
    translate,
)
from gammaconf.group import parse_group
from gammaconf.scalar import ONE

Z = parse_group("Z")


def A(m, at=0, G=Z):
    return gen(GenId("A", (m,)), G.elem((at,)))


def a(r, at=0, G=Z):
    return gen(GenId("a", (r,)), G.elem((at,)))


@pytest.fixture(scope="module")
def sin():
    return build_algebra("sin")


def test_translate():
    x = A(3)
    assert translate(Z, Z.elem((2,)), x) == A(3, 2)
    assert translate(Z, Z.identity(), x) == x
    G = parse_group("Z2xZ")
    y = gen(GenId("B", (1,)), G.elem((2,)))
    assert translate(G, G.eps(), translate(G, G.eps(), y)) == y


def test_sin_products(sin):
    assert alpha_product(sin, A(2), Z.elem((-2,)), A(3)) == A(5, -2)
    assert not alpha_product(sin, A(2), Z.elem((1,)), A(3))
    assert product_support(sin, A(1), A(1)) == {Z.elem((-1,)), Z.elem((1,))}
    assert product_support(sin, A(1), LinComb()) == frozenset()


def sin_closed_form(m, r, n):
    # delta_{r,-m} T^-m A^{m+n} - delta_{r,n} A^{m+n}
    out = LinComb()
    if r == -m:
        out = out + A(m + n, -m)
    if r == n:
        out = out - A(m + n)
    return out


@given(st.integers(-5, 5), st.integers(-6, 6), st.integers(-5, 5))
def test_sin_matches_closed_form(m, r, n):
    R = build_algebra("sin")
    assert alpha_product(R, A(m), Z.elem((r,)), A(n)) == sin_closed_form(m, r, n)


def test_gc1_products():
    R = gc1(Z)
    assert alpha_product(R, a(1), Z.elem((-1,)), a(-1)) == a(0, -1) - a(0)
    assert alpha_product(R, a(2), Z.elem((-2,)), a(3)) == a(5, -2)
    assert alpha_product(R, a(2), Z.elem((3,)), a(3)) == -a(5)
    assert product_support(R, a(2), a(3)) == {Z.elem((-2,)), Z.elem((3,))}
    C2 = parse_group("Z/2")
    R2 = gc1(C2)
    one = C2.elem((1,))
    assert alpha_product(R2, a(1, G=C2), one, a(1, G=C2)) == a(0, 1, G=C2) - a(0, G=C2)


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-2, 2), st.integers(-2, 2))
def test_two_reduction_orders_agree(m, n, al, g, d):
    R = build_algebra("sin")
    x, y = A(m, g), A(n, d)
    alpha = Z.elem((al,))
    assert alpha_product(R, x, alpha, y) == alpha_product_c1prime_first(R, x, alpha, y)


def test_mod_elem_parsing_round_trip(sin):
    x = parse_mod_elem("2*(T^-1)A[2] - A[5]", Z)
    assert x == A(2, -1).scale(2 * ONE) - A(5)
    assert parse_mod_elem(render_mod_elem(x), Z) == x


@pytest.mark.parametrize("axiom", AXIOMS)
def test_sin_axioms_small_box(sin, axiom):
    rep = check_conformal_axiom(sin, axiom, SamplePlan(2, 2))
    assert rep.ok, rep.violations[:3]
    assert rep.evaluated > 0 and rep.covered >= rep.evaluated


def test_sin_c2_box_four(sin):
    assert check_conformal_axiom(sin, "C2", SamplePlan(4, 4)).ok


def test_gc1_c3_box_three():
    assert check_conformal_axiom(gc1(Z), "C3", SamplePlan(3, 3)).ok


def test_corrupted_table_is_caught(sin):
    bad = corrupted(sin, GenId("A", (1,)), Z.elem((-1,)), GenId("A", (1,)))
    reports = [check_conformal_axiom(bad, ax, SamplePlan(2, 2)) for ax in ("C2", "C3")]
    assert sum(len(r.violations) for r in reports) >= 1


def test_gc1_action_examples():
    v0 = LinComb.basis(Z.identity())
    s = Z.elem((3,))
    assert gc1_action(Z, s, Z.elem((-3,)), v0) == LinComb.basis(Z.elem((-3,)))
    assert not gc1_action(Z, s, Z.elem((2,)), v0)
    for g in range(-3, 4):
        for b in range(-4, 5):
            gam, beta = Z.elem((g,)), Z.elem((b,))
            lhs = gc1_action(Z, s, beta, LinComb.basis(gam))
            inner = gc1_action(Z, s, Z.mul(Z.inv(gam), beta), v0)
            rhs = LinComb([(Z.mul(gam, k), c) for k, c in inner.items()])
            assert lhs == rhs


@pytest.mark.parametrize("axiom", ["M0", "M1", "M2"])
def test_gc1_module_axioms(axiom):
    M = gc1_module(gc1(Z))
    assert check_module_axiom(M, axiom, SamplePlan(3, 3)).ok


def test_adjoint_module_m1(sin):
    assert check_module_axiom(adjoint_module(sin), "M1", SamplePlan(2, 2)).ok


def test_dropped_translation_breaks_m2():
    M = gc1_module(gc1(Z), drop_translation=True)
    assert not check_module_axiom(M, "M2", SamplePlan(2, 2)).ok


@pytest.mark.parametrize("name,group", [("ex32b", None), ("ex33", None), ("twisted_affine_sl2", None),
                                        ("gc1", "Dinf"), ("gc1", "Z/4")])
def test_catalog_axioms_small_box(name, group):
    R = build_algebra(name, group=group)
    for ax in AXIOMS:
        rep = check_conformal_axiom(R, ax, SamplePlan(2, 2))
        assert rep.ok, (ax, rep.violations[:2])
