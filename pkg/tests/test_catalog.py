from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gammaconf.catalog import (
    ALGEBRAS,
    GLINF_ACTIONS,
    PDiffScopeError,
    build_algebra,
    discrepancy_reports,
    glinf_action,
    glinf_bracket,
    oracle_diff,
    pdiff_commutator,
    pdiff_commutator_formula,
    pdiff_mul,
    pdiff_translation_modes,
    qtorus_commutator,
    qtorus_mul,
    series_basis,
)
from gammaconf.conformal import LinComb, SamplePlan
from gammaconf.scalar import ONE, Q, const, q_pow


def E(i, j, c=1):
    return LinComb.basis((i, j), const(c))


def test_glinf_bracket_examples():
    assert glinf_bracket(E(0, 1), E(1, 0)) == E(0, 0) - E(1, 1)
    assert not glinf_bracket(E(0, 1), E(2, 3))
    x = E(0, 1) + E(2, -1, 3)
    assert not glinf_bracket(x, x)


units = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(-3, 3)), max_size=5)


def dense(terms):
    M = np.zeros((5, 5), dtype=np.int64)
    for i, j, c in terms:
        M[i, j] += c
    return M


@given(units, units)
def test_glinf_bracket_matches_matrix_commutator(xs, ys):
    x = LinComb([((i, j), const(c)) for i, j, c in xs])
    y = LinComb([((i, j), const(c)) for i, j, c in ys])
    X, Y = dense(xs), dense(ys)
    want = X @ Y - Y @ X
    got = glinf_bracket(x, y)
    got_dense = np.zeros((5, 5), dtype=np.int64)
    for (i, j), c in got.items():
        got_dense[i, j] = int(c.constant_value())
    assert (got_dense == want).all()


def test_glinf_actions():
    assert glinf_action("shiftT", E(0, 3)) == E(1, 4)
    assert glinf_action("eps32b", E(0, 3)) == E(3, 0, -1)
    for i, j in [(0, 3), (-2, 5), (1, 1)]:
        x = glinf_action("eps52_phi1", glinf_action("shiftT", glinf_action("eps52_phi1", E(i, j))))
        assert x == E(i - 1, j - 1)
    assert set(GLINF_ACTIONS) == {"shiftT", "eps32b", "epsTilde32b", "eps52_phi1", "eps52_phi2"}


@given(units, units)
def test_actions_are_automorphisms(xs, ys):
    x = LinComb([((i, j), const(c)) for i, j, c in xs])
    y = LinComb([((i, j), const(c)) for i, j, c in ys])
    for name in GLINF_ACTIONS:
        f = lambda v: glinf_action(name, v)  # noqa: E731
        assert f(glinf_bracket(x, y)) == glinf_bracket(f(x), f(y))


def test_qtorus():
    U, V = LinComb.basis((1, 0)), LinComb.basis((0, 1))
    assert qtorus_mul(V, U) == LinComb.basis((1, 1), Q)
    x, y = LinComb.basis((1, 1)), LinComb.basis((0, 1))
    assert qtorus_commutator(x, y) == LinComb.basis((1, 2), 1 - Q)
    assert not qtorus_commutator(x, x)


def test_pdiff_examples():
    xD, x2D = LinComb.basis((1, 1)), LinComb.basis((2, 1))
    assert pdiff_commutator(xD, x2D) == LinComb.basis((3, 1))
    D = LinComb.basis((0, 1))
    for n in range(-3, 4):
        assert pdiff_commutator(D, LinComb.basis((n, 0))) == LinComb.basis((n, 0), const(n))
        assert not pdiff_commutator(LinComb.basis((2, 0)), LinComb.basis((n, 0)))
    with pytest.raises(PDiffScopeError):
        pdiff_mul(LinComb.basis((0, -1)), D)


def apply_op(op: LinComb, j: int):
    # x^m D^k sends x^j to j^k x^{m+j}, with D = x d/dx
    out = {}
    for (m, k), c in op.items():
        out[m + j] = out.get(m + j, 0) + c.constant_value() * j ** k
    return {e: v for e, v in out.items() if v}


small_ops = st.tuples(st.integers(-3, 3), st.integers(0, 3))


@given(small_ops, small_ops, st.integers(-4, 4))
def test_pdiff_mul_matches_operator_action(a, b, j):
    x, y = LinComb.basis(a), LinComb.basis(b)
    inner = apply_op(y, j)
    want = {}
    for e, v in inner.items():
        for e2, v2 in apply_op(x, e).items():
            want[e2] = want.get(e2, 0) + v * v2
    want = {e: v for e, v in want.items() if v}
    assert apply_op(pdiff_mul(x, y), j) == want
    assert pdiff_commutator(x, y) == pdiff_commutator_formula(a[0], a[1], b[0], b[1])


def test_series_closure():
    ms = [m for m in range(-3, 4) if m]
    assert series_basis("C", ms, range(0, 4)).certified
    assert series_basis("B", ms, range(0, 4)).certified
    shown = series_basis("C", ms, range(0, 4), involution="C_display")
    assert not shown.certified and shown.failures


def test_oracles_agree():
    assert oracle_diff(build_algebra("sin"), "qtorus", rng=3).empty
    assert oracle_diff(build_algebra("ex32b"), "glinf_trunc(12)", plan=SamplePlan(2, 2)).empty
    assert oracle_diff(pdiff_translation_modes("plus"), "pdiff", rng=2).empty
    assert not oracle_diff(pdiff_translation_modes("minus"), "pdiff", rng=2).empty


def test_build_algebra_registry():
    assert ALGEBRAS == ("sin", "ex32b", "ex33", "twisted_affine_sl2", "gc1", "vector_sin")
    assert build_algebra("vector_sin", N=3).spec.rank == 3
    assert build_algebra("gc1", group="Dinf").spec.name == "Dinf"
    with pytest.raises(ValueError, match="unknown algebra"):
        build_algebra("nosuch")
    with pytest.raises(ValueError):
        build_algebra("vector_sin", N=0)


def test_ex32b_stable_generators():
    R = build_algebra("ex32b")
    fams = {g.family for g in R.generators(2)}
    assert fams == {"A", "B"}
    assert all(g.index[0] >= (1 if g.family == "B" else 0) for g in R.generators(2))


def test_discrepancy_reports_content():
    reps = {r.name: r for r in discrepancy_reports(2)}
    assert {"ex33_eps_sector_sign", "translation_delta_shift_sign"} <= set(reps)
    for name in ("ex33_eps_sector_sign", "translation_delta_shift_sign"):
        r = reps[name]
        assert not r.empty and r.compared > 0
        rec = r.records[0]
        assert rec["lhs"] != rec["rhs"]
        d = r.to_dict()
        assert d["name"] == name and d["lhs_source"] and d["rhs_source"]


def test_unit_coefficient_helpers():
    assert q_pow(0) == ONE
