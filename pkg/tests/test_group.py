from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from gammaconf.group import (
    CharacterError,
    GroupError,
    character_eval,
    character_make,
    group_inv,
    group_mul,
    parse_group,
)
from gammaconf.scalar import ONE, Q, q_pow

GROUPS = ["Z", "Z^2", "Z/4", "Z/2", "Z2xZ", "Dinf"]


def test_abelian_and_torsion_multiplication():
    Z2 = parse_group("Z^2")
    assert group_mul(Z2, Z2.elem((1, 0)), Z2.elem((0, 2))) == Z2.elem((1, 2))
    C2 = parse_group("Z/2")
    assert group_mul(C2, C2.elem((1,)), C2.elem((1,))) == C2.identity()


def test_dihedral_flip_relation():
    D = parse_group("Dinf")
    e, T3 = D.eps(), D.elem((3,))
    assert D.mul(D.mul(e, T3), e) == D.elem((-3,))


def test_inverses():
    Z = parse_group("Z")
    assert group_inv(Z, Z.elem((5,))) == Z.elem((-5,))
    C4 = parse_group("Z/4")
    assert group_inv(C4, C4.elem((3,))) == C4.elem((1,))
    D = parse_group("Dinf")
    g = D.elem((2,), 1)
    h = group_inv(D, g)
    assert D.mul(h, g) == D.identity()
    assert h == g  # reflections are involutions


def test_characters():
    Z = parse_group("Z")
    chi = character_make(Z, [Q])
    assert character_eval(chi, Z.elem((3,))) == q_pow(3)
    G = parse_group("Z2xZ")
    chi = character_make(G, [-ONE, Q])
    assert character_eval(chi, G.elem((2,), 1)) == -q_pow(2)
    assert character_eval(chi, G.identity()) == ONE
    with pytest.raises(CharacterError, match="inverting"):
        character_make(parse_group("Dinf"), [-ONE, Q])
    assert character_make(parse_group("Dinf"), [-ONE, -ONE])
    with pytest.raises(CharacterError):
        character_make(parse_group("Z/4"), [Q])
    assert character_make(parse_group("Z/4"), [-ONE])


def test_parse_errors():
    with pytest.raises(GroupError):
        parse_group("Q")
    with pytest.raises(GroupError):
        parse_group("Z").parse_elem("T2^3")


def test_parse_elem():
    D = parse_group("Dinf")
    assert D.parse_elem("e*T^-2") == D.mul(D.eps(), D.elem((-2,)))
    assert D.parse_elem("1") == D.identity()
    Z2 = parse_group("Z^2")
    assert Z2.parse_elem("T2^3") == Z2.elem((0, 3))
    assert Z2.parse_elem("(1,-1)") == Z2.elem((1, -1))


@st.composite
def triples(draw):
    G = parse_group(draw(st.sampled_from(GROUPS)))
    els = G.elements(3)
    pick = st.sampled_from(els)
    return G, draw(pick), draw(pick), draw(pick)


@given(triples())
def test_group_axioms(t):
    G, a, b, c = t
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, G.identity()) == a == G.mul(G.identity(), a)
    assert G.mul(a, G.inv(a)) == G.identity()
    assert G.from_index(G.as_index(a)) == a
    assert G.parse_elem(a.render()) == a


@given(triples())
def test_characters_are_multiplicative(t):
    G, a, b, _ = t
    vals = {"Z": [Q], "Z^2": [Q, q_pow(2) + 1], "Z/4": [-ONE], "Z/2": [-ONE],
            "Z2xZ": [-ONE, Q], "Dinf": [-ONE, -ONE]}[G.name]
    chi = character_make(G, vals)
    assert chi(G.mul(a, b)) == chi(a) * chi(b)
    assert chi(G.inv(a)) * chi(a) == ONE
