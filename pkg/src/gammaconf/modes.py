"""Mode Lie algebras attached to a Gamma-conformal algebra and a character.

A mode element is a :class:`LinComb` over keys ``(GenId, n)``.  The quotient
relation ``(T_g a)_n = chi(g)^-n a_n`` is applied eagerly, so a translated
generator never appears in a mode element.  For a generator with stabilizer
``T_s g = lam g`` the same relation forces ``g_n = 0`` whenever
``chi(s)^-n != lam``; such modes are dropped.
"""

from __future__ import annotations

import itertools
import re
from typing import Callable

from .conformal import GammaConformalAlgebra, GenId, Report, SamplePlan
from .group import Character
from .linear import LinComb, split_terms
from .scalar import ONE, Scalar, ZERO, const, parse_scalar, q_pow, to_root

__all__ = [
    "ModeAlgebra",
    "LiteralDomainError",
    "mode_canonicalize",
    "mode_bracket",
    "derived_mode_algebra",
    "literal_mode_algebra",
    "abelian_mode_algebra",
    "rescaled",
    "check_lie",
    "parse_mode_key",
    "parse_mode_elem",
    "render_mode_key",
    "render_mode_elem",
    "LITERAL_TABLES",
]


class LiteralDomainError(ValueError):
    """A literal formula was asked for a mode pair outside its stated domain."""


def render_mode_key(key) -> str:
    g, n = key
    return f"{g.family}[{','.join(str(i) for i in g.index)};{n}]"


def render_mode_elem(x: LinComb, var="q") -> str:
    return x.render(render_mode_key, var)


_KEY_RE = re.compile(r"\s*([A-Za-z][\w]*)\[([^\];]*)(?:;\s*(-?\d+))?\]\s*")


def parse_mode_key(text: str):
    """``"A[2;5]"`` is ``A^2`` in mode 5; ``"h[;1]"`` or ``"h[1]"`` for unindexed families."""
    m = _KEY_RE.fullmatch(text)
    if not m:
        raise ValueError(f"malformed mode {text!r}")
    fam, idx, mode = m.groups()
    if mode is None:
        if not idx.strip():
            raise ValueError(f"malformed mode {text!r}: missing mode number")
        return (GenId(fam, ()), int(idx))
    index = tuple(int(x) for x in idx.split(",")) if idx.strip() else ()
    return (GenId(fam, index), int(mode))


def parse_mode_elem(text: str, var="q") -> LinComb:
    out = LinComb()
    for sign, term in split_terms(text):
        m = re.fullmatch(r"(?:(.+)\*)?\s*([A-Za-z][\w]*\[[^\]]*\])", term.strip())
        if not m:
            raise ValueError(f"malformed mode element term {term!r}")
        coef = parse_scalar(m.group(1), var) if m.group(1) else ONE
        out = out + LinComb.basis(parse_mode_key(m.group(2)), coef * sign)
    return out


# -- derived algebras -------------------------------------------------------


def mode_is_zero(R: GammaConformalAlgebra | None, chi: Character, g: GenId, n: int) -> bool:
    if R is None:
        return False
    st = R.stabilizer(g)
    if st is None:
        return False
    s, lam = st
    return chi(s) ** (-n) != lam


def mode_canonicalize(chi: Character, x: LinComb, n: int, R: GammaConformalAlgebra | None = None) -> LinComb:
    """Image of the module element ``x`` in mode ``n``."""
    out = {}
    for (gam, g), c in x.items():
        if mode_is_zero(R, chi, g, n):
            continue
        v = c * chi(gam) ** (-n) if any(gam.vec) or gam.sign else c
        key = (g, n)
        s = out.get(key)
        s = v if s is None else s + v
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return LinComb._raw(out)


class ModeAlgebra:
    """A Lie algebra on mode keys ``(GenId, n)`` given by its basis brackets.

    ``basis(plan)`` lists the sampled basis keys; ``var`` names the formal
    parameter used when rendering coefficients (``"p"`` when ``q = p^2``).
    """

    def __init__(self, name: str, provenance: str, bracket_basis: Callable, basis: Callable, var: str = "q"):
        self.name = name
        self.provenance = provenance
        self._bracket_basis = bracket_basis
        self._basis = basis
        self.var = var
        self._cache = {}

    def __repr__(self):
        return f"<ModeAlgebra {self.name} ({self.provenance})>"

    @property
    def derived(self):
        return self.provenance.startswith("derived")

    def basis(self, plan: SamplePlan = SamplePlan()):
        return self._basis(plan)

    def bracket_basis(self, x, y) -> LinComb:
        key = (x, y)
        try:
            return self._cache[key]
        except KeyError:
            out = self._bracket_basis(x, y)
            self._cache[key] = out
            return out

    def bracket(self, u: LinComb, v: LinComb) -> LinComb:
        out = {}
        for x, cx in u.items():
            for y, cy in v.items():
                b = self.bracket_basis(x, y)
                if not b:
                    continue
                c = cx * cy
                for k, ck in b.items():
                    val = ck * c
                    s = out.get(k)
                    s = val if s is None else s + val
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return LinComb._raw(out)


def mode_bracket(R: GammaConformalAlgebra, chi: Character, u: LinComb, v: LinComb) -> LinComb:
    """``[a_m, b_n] = sum_g chi(g)^m (a_(g) b)_{m+n}``, extended bilinearly."""
    return derived_mode_algebra(R, chi).bracket(u, v)


_DERIVED = {}


def derived_mode_algebra(R: GammaConformalAlgebra, chi: Character) -> ModeAlgebra:
    if chi.spec != R.spec:
        raise ValueError(f"character on {chi.spec.name} does not match {R.spec.name}")
    key = (id(R), chi)
    hit = _DERIVED.get(key)
    if hit is not None and hit[0] is R:
        return hit[1]

    def bracket_basis(x, y):
        (gi, m), (gj, n) = x, y
        if mode_is_zero(R, chi, gi, m) or mode_is_zero(R, chi, gj, n):
            return LinComb()
        out = LinComb()
        for gam in R.gen_support(gi, gj):
            p = R.product(gi, gam, gj)
            if p:
                out = out + mode_canonicalize(chi, p, m + n, R).scale(chi(gam) ** m)
        return out

    def basis(plan):
        keys = []
        for g in R.generators(plan.gen_bound):
            for n in range(-plan.group_bound, plan.group_bound + 1):
                if not mode_is_zero(R, chi, g, n):
                    keys.append((g, n))
        return keys

    A = ModeAlgebra(f"s({R.name}; {chi.render()})", "derived", bracket_basis, basis)
    A.algebra = R
    A.character = chi
    _DERIVED[key] = (R, A)
    return A


def abelian_mode_algebra(families=("A",)) -> ModeAlgebra:
    def basis(plan):
        return [(GenId(f, (i,)), n) for f in families
                for i in range(-plan.gen_bound, plan.gen_bound + 1)
                for n in range(-plan.group_bound, plan.group_bound + 1)]

    return ModeAlgebra("abelian", "literal:abelian", lambda x, y: LinComb(), basis)


def rescaled(A: ModeAlgebra, weight: Callable, root: bool = False) -> ModeAlgebra:
    """Bracket in the basis ``x~ = q^{weight(x)} x``.

    With ``root=True`` the weights count powers of ``p = q^(1/2)`` and all
    coefficients are rewritten in ``p``.
    """

    def lift(c):
        return to_root(c) if root else c

    def bracket_basis(x, y):
        b = A.bracket_basis(x, y)
        w = weight(x) + weight(y)
        return LinComb._raw({z: lift(c) * q_pow(w - weight(z)) for z, c in b.items()})

    return ModeAlgebra(A.name + "~", A.provenance + "+rescaled", bracket_basis, A._basis,
                       "p" if root else A.var)


# -- Lie axiom checks -------------------------------------------------------


def check_lie(A: ModeAlgebra, sample: SamplePlan = SamplePlan(3, 3), basis=None) -> Report:
    """Antisymmetry on all pairs and Jacobi on all triples of sampled basis modes.

    Pairs outside a literal formula's domain are counted in the notes and
    skipped; they are neither passes nor violations.
    """
    keys = list(basis) if basis is not None else A.basis(sample)
    rep = Report(A.name, "lie")
    undefined = 0
    fmt = lambda x: render_mode_elem(x, A.var)  # noqa: E731

    def br(x, y):
        return A.bracket_basis(x, y)

    for x, y in itertools.combinations_with_replacement(keys, 2):
        rep.covered += 1
        try:
            s = br(x, y) + br(y, x)
        except LiteralDomainError:
            undefined += 1
            continue
        rep.evaluated += 1
        if s:
            rep.add(("antisym", render_mode_key(x), render_mode_key(y)), fmt(s), "0")

    one = {k: LinComb.basis(k) for k in keys}
    for x, y, z in itertools.combinations(keys, 3):
        rep.covered += 1
        try:
            lhs = A.bracket(one[x], br(y, z))
            rhs = A.bracket(br(x, y), one[z]) + A.bracket(one[y], br(x, z))
        except LiteralDomainError:
            undefined += 1
            continue
        rep.evaluated += 1
        if lhs != rhs:
            rep.add(("jacobi", render_mode_key(x), render_mode_key(y), render_mode_key(z)), fmt(lhs), fmt(rhs))
    if undefined:
        rep.notes.append(f"{undefined} instances outside the formula's domain")
    return rep


# -- literal tables ---------------------------------------------------------


def _key(fam, idx, n):
    return (GenId(fam, (idx,) if isinstance(idx, int) else tuple(idx)), n)


def _lin(*terms):
    return LinComb([(k, c) for c, k in terms])


def _sign(k):
    return ONE if k % 2 == 0 else -ONE


def _ex33_display(x, y):
    """Literal bracket on ``B^m_k`` for the Z2 x Z example (``m >= 0``)."""
    (g, k), (h, l) = x, y
    m, n = g.index[0], h.index[0]
    first = (q_pow(m * l) - q_pow(n * k), _key("B", m + n, k + l))
    if n > m:
        c = _sign(k) * (q_pow(k * (n - m)) - q_pow(-m * (k + l)))
        second = (-c, _key("B", n - m, k + l))
    elif n < m:
        e = k + l
        c = _sign(k) * ((-Q) ** (-n * e) - _sign(n * e) * (-Q) ** (m * e))
        second = (-c, _key("B", m - n, k + l))
    else:
        raise LiteralDomainError("literal formula covers n - m > 0 and n - m < 0 only")
    return _lin(first, second)


Q = q_pow(1)


def _ex33_flipped(x, y):
    """The ``n - m > 0`` branch with the reflected sign reversed, extended to
    ``n = m`` by the same formula and to ``n < m`` by antisymmetry."""
    (g, k), (h, l) = x, y
    m, n = g.index[0], h.index[0]
    if n < m:
        return -_ex33_flipped(y, x)
    c = _sign(k) * (q_pow(k * (n - m)) - q_pow(-m * (k + l)))
    if n == m and (k + l) % 2 == 0:
        c = ZERO  # even modes of B^0 vanish
    return _lin((q_pow(m * l) - q_pow(n * k), _key("B", m + n, k + l)), (c, _key("B", n - m, k + l)))


def _fold_bt(key):
    """B-series identification ``Bt^{-r}_j = -(-1)^j Bt^r_j`` onto ``r >= 0``.

    Returns ``(sign, key)``, or ``None`` for the vanishing modes ``Bt^0_j``
    with ``j`` even.
    """
    g, j = key
    r = g.index[0]
    if r > 0:
        return ONE, key
    if r == 0:
        return (ONE, key) if j % 2 else None
    return -_sign(j), _key("Bt", -r, j)


def _ex33_tilde(x, y):
    """Renormalized literal bracket, written in ``p`` with ``q = p^2``, on the
    B-series basis ``Bt^m_k`` with ``m >= 0`` (see :func:`_fold_bt`)."""
    fx, fy = _fold_bt(x), _fold_bt(y)
    if fx is None or fy is None:
        return LinComb()
    (sx, (g, k)), (sy, (h, l)) = fx, fy
    m, n = g.index[0], h.index[0]
    a = m * l - n * k
    b = k * n + m * l
    out = {}
    for c, key in ((q_pow(a) - q_pow(-a), _key("Bt", n + m, k + l)),
                   (-_sign(k) * (q_pow(b) - q_pow(-b)), _key("Bt", n - m, k + l))):
        f = _fold_bt(key)
        if f is None or not c:
            continue
        out[f[1]] = out.get(f[1], ZERO) + f[0] * c
    return LinComb([(k2, c * sx * sy) for k2, c in out.items()])


def _ex52a(x, y):
    (g, k), (h, l) = x, y
    m, n = g.index[0], h.index[0]
    return _lin(
        (q_pow(-m * l) - q_pow(-n * k), _key("A", m + n, k + l)),
        (-_sign(k) * q_pow(m * k) * (q_pow(-n * l) - q_pow(n * k)), _key("A", m + n, l - k)),
    )


def _ex52b(x, y):
    (g, k), (h, l) = x, y
    m, n = g.index[0], h.index[0]
    if n < m:
        return -_ex52b(y, x)
    return _lin(
        (q_pow(-m * l) - q_pow(-k * l), _key("A", m + n, k + l)),
        (-_sign(k) * (q_pow(m * l) - q_pow(n * k)), _key("A", n - m, l - k)),
    )


def _vector_sin(qbar):
    qbar = tuple(const(v) if not isinstance(v, Scalar) else v for v in qbar)

    def power(vec, n):
        out = ONE
        for qi, a in zip(qbar, vec):
            if a * n:
                out = out * qi ** (a * n)
        return out

    def bracket(x, y):
        (g, m), (h, n) = x, y
        al, be = g.index, h.index
        return _lin((power(al, n) - power(be, m), (GenId("a", tuple(a + b for a, b in zip(al, be))), m + n)))

    return bracket


def _nonneg_basis(fam):
    def basis(plan):
        return [_key(fam, m, k) for m in range(0, plan.gen_bound + 1)
                for k in range(-plan.group_bound, plan.group_bound + 1)]

    return basis


def _odd_zero_basis(fam):
    def basis(plan):
        return [_key(fam, m, k) for m in range(0, plan.gen_bound + 1)
                for k in range(-plan.group_bound, plan.group_bound + 1) if m or k % 2]

    return basis


def _int_basis(fam, rank=1):
    def basis(plan):
        idx = itertools.product(range(-plan.gen_bound, plan.gen_bound + 1), repeat=rank)
        return [(GenId(fam, i), k) for i in idx for k in range(-plan.group_bound, plan.group_bound + 1)]

    return basis


LITERAL_TABLES = ("ex33_display", "ex33_tilde", "ex52a", "ex52b", "ex52c_display", "ex52d_display", "vector_sin")


def literal_mode_algebra(table: str, qbar=None) -> ModeAlgebra:
    """Structure constants transcribed from literal formulas.

    ``ex52c_display`` and ``ex52d_display`` are the operator realizations
    of the reflected generating series inside the polynomial differential
    operators (see :func:`gammaconf.catalog.pdiff_series_algebra`).
    """
    if table == "ex33_display":
        return ModeAlgebra("ex33_display", "literal:ex33_display", _ex33_display, _nonneg_basis("B"))
    if table == "ex33_display_flipped":
        return ModeAlgebra("ex33_display_flipped", "literal:ex33_display_flipped", _ex33_flipped,
                           _nonneg_basis("B"))
    if table == "ex33_tilde":
        return ModeAlgebra("ex33_tilde", "literal:ex33_tilde", _ex33_tilde, _odd_zero_basis("Bt"), var="p")
    if table == "ex52a":
        return ModeAlgebra("ex52a", "literal:ex52a", _ex52a, _nonneg_basis("A"))
    if table == "ex52b":
        return ModeAlgebra("ex52b", "literal:ex52b", _ex52b, _nonneg_basis("A"))
    if table in ("ex52c_display", "ex52d_display"):
        from .catalog import pdiff_series_algebra

        return pdiff_series_algebra("C" if table == "ex52c_display" else "B")
    if table == "vector_sin":
        if qbar is None:
            raise ValueError("vector_sin needs the parameters q̄")
        qbar = tuple(parse_scalar(v) if isinstance(v, str) else v for v in qbar)
        if any(not v for v in qbar):
            raise ValueError("vector_sin parameters must be nonzero")
        return ModeAlgebra(f"vector_sin({','.join(str(v) for v in qbar)})", "literal:vector_sin",
                           _vector_sin(qbar), _int_basis("a", len(qbar)))
    raise ValueError(f"unknown literal table {table!r}; known: {', '.join(LITERAL_TABLES)}")
