"""Gamma-conformal algebras on group-ring modules.

An algebra is described by its products on module generators,
``gen_product(i, alpha, j) = g_i (alpha) g_j``, together with a finite
superset of the ``alpha`` where that product can be non-zero.  Products of
arbitrary module elements are obtained from the translation rules

    (T_g a)_(b) c = a_(b g) c        a_(b) (T_g c) = T_g (a_(g^-1 b) c)

Generators may carry an order-two stabilizer ``T_s g = lam * g`` (the
diagonal of gl_inf under the Z2 x Z action, the eigenvectors of a twisted
current algebra); terms are then reduced to a coset representative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .group import GroupElem, GroupSpec
from .linear import LinComb, split_terms
from .scalar import ONE, parse_scalar

__all__ = [
    "GenId",
    "ModElem",
    "GammaConformalAlgebra",
    "AdmissiblePair",
    "SamplePlan",
    "Report",
    "RepModule",
    "gen",
    "translate",
    "alpha_product",
    "product_support",
    "from_admissible_pair",
    "gc1",
    "gc1_action",
    "gc1_module",
    "adjoint_module",
    "check_conformal_axiom",
    "check_module_axiom",
    "corrupted",
    "parse_mod_elem",
    "AXIOMS",
]

ModElem = LinComb


class GenId(NamedTuple):
    family: str
    index: tuple = ()

    def render(self):
        if not self.index:
            return self.family
        return f"{self.family}[{','.join(str(i) for i in self.index)}]"

    def __str__(self):
        return self.render()


def gen(g: GenId, at: GroupElem, coeff=ONE) -> ModElem:
    """The module element ``coeff * T_at g``."""
    return LinComb.basis((at, g), coeff)


def translate(G: GroupSpec, gamma: GroupElem, a: ModElem) -> ModElem:
    """Left multiplication by ``T_gamma`` on the free module."""
    mul = G.mul
    return LinComb._raw({(mul(gamma, d), g): c for (d, g), c in a.items()})


def render_mod_elem(a: ModElem, var="q") -> str:
    def key(k):
        d, g = k
        return g.render() if not any(d.vec) and not d.sign else f"({d.render()}){g.render()}"

    return a.render(key, var)


class GammaConformalAlgebra:
    """Structure functions of a Gamma-conformal algebra.

    ``generators(bound)`` enumerates the generator labels used for sampling;
    ``stabilizer(g)`` returns ``(s, lam)`` with ``T_s g = lam g`` and ``s`` of
    order two, or ``None`` when ``g`` generates a free summand.
    """

    def __init__(
        self,
        name: str,
        spec: GroupSpec,
        gen_product: Callable,
        gen_support: Callable,
        generators: Callable,
        is_generator: Callable = lambda g: True,
        stabilizer: Callable = lambda g: None,
        realize: Callable | None = None,
    ):
        self.name = name
        self.spec = spec
        self._gen_product = gen_product
        self._gen_support = gen_support
        self.generators = generators
        self.is_generator = is_generator
        self.stabilizer = stabilizer
        self.realize = realize
        self._pcache = {}
        self._scache = {}
        self._rcache = {}

    def __repr__(self):
        return f"<GammaConformalAlgebra {self.name} over {self.spec.name}>"

    def gen_support(self, i: GenId, j: GenId) -> frozenset:
        key = (i, j)
        try:
            return self._scache[key]
        except KeyError:
            s = frozenset(self._gen_support(i, j))
            self._scache[key] = s
            return s

    def product(self, i: GenId, alpha: GroupElem, j: GenId) -> ModElem:
        """Cached, canonical ``gen_product``."""
        key = (i, alpha, j)
        try:
            return self._pcache[key]
        except KeyError:
            pass
        for g in (i, j):
            if not self.is_generator(g):
                raise ValueError(f"{g.render()} is not a generator of {self.name}")
        p = self.canon(self._gen_product(i, alpha, j))
        self._pcache[key] = p
        return p

    def reduce_key(self, d: GroupElem, g: GenId):
        """Coset representative for ``T_d g``: returns ``(factor, key)``."""
        key = (d, g)
        try:
            return self._rcache[key]
        except KeyError:
            pass
        st = self.stabilizer(g)
        out = (None, key)
        if st is not None:
            s, lam = st
            ds = self.spec.mul(d, s)
            if ds < d:
                out = (lam, (ds, g))
        self._rcache[key] = out
        return out

    def canon(self, a: ModElem) -> ModElem:
        out = {}
        for (d, g), c in a.items():
            lam, key = self.reduce_key(d, g)
            if lam is not None:
                c = c * lam
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return LinComb._raw(out)

    def translate(self, gamma: GroupElem, a: ModElem) -> ModElem:
        return self.canon(translate(self.spec, gamma, a))


def alpha_product(R: GammaConformalAlgebra, a: ModElem, alpha: GroupElem, b: ModElem) -> ModElem:
    """``a_(alpha) b``: reduce the left factor by (C1), then the right by (C1')."""
    G = R.spec
    mul, inv = G.mul, G.inv
    out = {}
    for (gam, gi), ca in a.items():
        ag = mul(alpha, gam)
        for (dl, gj), cb in b.items():
            p = R.product(gi, mul(inv(dl), ag), gj)
            if not p:
                continue
            c = ca * cb
            for (e, gk), cp in p.items():
                lam, key = R.reduce_key(mul(dl, e), gk)
                v = cp * c
                if lam is not None:
                    v = v * lam
                s = out.get(key)
                if s is None:
                    out[key] = v
                else:
                    s = s + v
                    if s:
                        out[key] = s
                    else:
                        del out[key]
    return LinComb._raw(out)


def alpha_product_c1prime_first(R: GammaConformalAlgebra, a: ModElem, alpha: GroupElem, b: ModElem) -> ModElem:
    """Same product, peeling the right translation before the left one."""
    G = R.spec
    out = LinComb()
    for (dl, gj), cb in b.items():
        inner_alpha = G.mul(G.inv(dl), alpha)
        partial = LinComb()
        for (gam, gi), ca in a.items():
            p = R.product(gi, G.mul(inner_alpha, gam), gj)
            partial = partial + p.scale(ca * cb)
        out = out + R.translate(dl, partial)
    return out


def product_support(R: GammaConformalAlgebra, a: ModElem, b: ModElem) -> frozenset:
    """Finite superset of ``{alpha : a_(alpha) b != 0}``."""
    G = R.spec
    out = set()
    for gam, gi in a.keys():
        ginv = G.inv(gam)
        for dl, gj in b.keys():
            for s in R.gen_support(gi, gj):
                out.add(G.mul(G.mul(dl, s), ginv))
    return frozenset(out)


# -- constructors -----------------------------------------------------------


@dataclass
class AdmissiblePair:
    """A Lie algebra with a group action, presented on a basis.

    ``bracket(x, y)`` and ``action(g, x)`` act on basis keys and return
    :class:`LinComb` values.  ``embed`` sends a module generator to the Lie
    algebra and ``decompose`` writes a basis key as a module element.
    ``bound(i, j)`` is a finite set containing every ``alpha`` with
    ``[T_alpha g_i, g_j] != 0``.
    """

    name: str
    spec: GroupSpec
    bracket: Callable
    action: Callable
    embed: Callable
    decompose: Callable
    bound: Callable
    generators: Callable
    is_generator: Callable = lambda g: True
    stabilizer: Callable = lambda g: None

    def lie_bracket(self, x: LinComb, y: LinComb) -> LinComb:
        out = LinComb()
        for kx, cx in x.items():
            for ky, cy in y.items():
                out = out + self.bracket(kx, ky).scale(cx * cy)
        return out

    def act(self, g: GroupElem, x: LinComb) -> LinComb:
        out = LinComb()
        for k, c in x.items():
            out = out + self.action(g, k).scale(c)
        return out

    def to_module(self, x: LinComb) -> ModElem:
        out = LinComb()
        for k, c in x.items():
            out = out + self.decompose(k).scale(c)
        return out

    def to_lie(self, a: ModElem) -> LinComb:
        out = LinComb()
        for (d, g), c in a.items():
            out = out + self.act(d, self.embed(g)).scale(c)
        return out


def from_admissible_pair(P: AdmissiblePair) -> GammaConformalAlgebra:
    """The algebra with products ``a_(alpha) b = [T_alpha a, b]``."""

    def gen_product(i, alpha, j):
        return P.to_module(P.lie_bracket(P.act(alpha, P.embed(i)), P.embed(j)))

    R = GammaConformalAlgebra(
        P.name,
        P.spec,
        gen_product,
        P.bound,
        P.generators,
        is_generator=P.is_generator,
        stabilizer=P.stabilizer,
        realize=P.to_lie,
    )
    R.pair = P
    return R


def gc1(G: GroupSpec, name: str | None = None) -> GammaConformalAlgebra:
    """The general algebra on generators ``a^r`` (``r`` in the group):

        a^r_(alpha) a^s = [alpha = r^-1] T_{r^-1} a^{rs} - [alpha = s] a^{sr}
    """
    e = G.identity()
    minus = -ONE

    def label(r):
        return GenId("a", G.as_index(r))

    def gen_product(i, alpha, j):
        r, s = G.from_index(i.index), G.from_index(j.index)
        rinv = G.inv(r)
        terms = []
        if alpha == rinv:
            terms.append(((rinv, label(G.mul(r, s))), ONE))
        if alpha == s:
            terms.append(((e, label(G.mul(s, r))), minus))
        return LinComb(terms)

    def gen_support(i, j):
        return {G.inv(G.from_index(i.index)), G.from_index(j.index)}

    def generators(bound):
        return [label(r) for r in G.elements(bound)]

    def is_generator(g):
        if g.family != "a":
            return False
        try:
            G.from_index(g.index)
        except ValueError:
            return False
        return True

    return GammaConformalAlgebra(
        name or f"gc1({G.name})", G, gen_product, gen_support, generators, is_generator
    )


def corrupted(R: GammaConformalAlgebra, i: GenId, alpha: GroupElem, j: GenId) -> GammaConformalAlgebra:
    """Copy of ``R`` with the sign of one generator product flipped."""

    def gen_product(a, al, b):
        p = R._gen_product(a, al, b)
        return -p if (a, al, b) == (i, alpha, j) else p

    bad = GammaConformalAlgebra(
        R.name + "[corrupted]", R.spec, gen_product, R._gen_support, R.generators,
        R.is_generator, R.stabilizer, R.realize,
    )
    return bad


# -- axiom checking ---------------------------------------------------------

AXIOMS = ("C0", "C1", "C1'", "C2", "C3", "Tconj")


@dataclass(frozen=True)
class SamplePlan:
    gen_bound: int = 4
    group_bound: int = 4


@dataclass
class Report:
    """Outcome of a bounded check; empty ``violations`` means pass."""

    subject: str
    check: str
    evaluated: int = 0
    covered: int = 0
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, instance, lhs, rhs):
        self.violations.append({"instance": instance, "lhs": lhs, "rhs": rhs})

    def summary(self):
        status = "pass" if self.ok else f"FAIL ({len(self.violations)} violations)"
        return (f"{self.subject} {self.check}: {status}; "
                f"{self.evaluated} evaluated, {self.covered} covered")

    def to_dict(self):
        return {
            "subject": self.subject,
            "check": self.check,
            "evaluated": self.evaluated,
            "covered": self.covered,
            "ok": self.ok,
            "violations": self.violations[:50],
            "violation_count": len(self.violations),
            "notes": self.notes,
        }


def _fmt(a):
    return render_mod_elem(a)


def check_conformal_axiom(
    R: GammaConformalAlgebra,
    axiom: str,
    sample: SamplePlan = SamplePlan(),
    c3_form: str = "def",
) -> Report:
    """Verify one axiom on every sampled instance.

    The sample is every generator with index in ``[-gen_bound, gen_bound]``
    and every group element with coordinates in ``[-group_bound,
    group_bound]``.  Instances where all terms vanish by ``product_support``
    are counted in ``covered`` without being evaluated; (C0) certifies that
    pruning on the same box.

    ``c3_form="prop"`` swaps the Jacobi-type axiom to the variant with
    ``a_(alpha beta^-1) b`` on the right.
    """
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {AXIOMS}")
    G = R.spec
    mul, inv = G.mul, G.inv
    gens = R.generators(sample.gen_bound)
    box = G.elements(sample.group_bound)
    boxset = set(box)
    e = G.identity()
    rep = Report(R.name, axiom if axiom != "C3" or c3_form == "def" else "C3[prop]")
    one = {g: R.canon(gen(g, e)) for g in gens}

    if axiom == "C0":
        for i in gens:
            for j in gens:
                supp = R.gen_support(i, j)
                if len(supp) > 10_000:
                    rep.add((str(i), "", str(j)), "support", "unbounded")
                for a in box:
                    rep.evaluated += 1
                    p = R.product(i, a, j)
                    if p and a not in supp:
                        rep.add((str(i), a.render(), str(j)), _fmt(p), "0 (outside declared support)")
        rep.covered = rep.evaluated
        return rep

    if axiom == "C1":
        for i in gens:
            for j in gens:
                b = one[j]
                for g in box:
                    a = R.translate(g, one[i])
                    if not a:
                        rep.covered += len(box)
                        continue
                    cand = product_support(R, a, b) | {mul(s, inv(g)) for s in R.gen_support(i, j)}
                    rep.covered += len(box)
                    for beta in cand & boxset:
                        rep.evaluated += 1
                        lhs = alpha_product(R, a, beta, b)
                        rhs = alpha_product(R, one[i], mul(beta, g), b)
                        if lhs != rhs:
                            rep.add((str(i), g.render(), beta.render(), str(j)), _fmt(lhs), _fmt(rhs))
        return rep

    if axiom == "C1'":
        for i in gens:
            for j in gens:
                a = one[i]
                for g in box:
                    b = R.translate(g, one[j])
                    rep.covered += len(box)
                    if not b:
                        continue
                    cand = product_support(R, a, b) | {mul(g, s) for s in R.gen_support(i, j)}
                    for beta in cand & boxset:
                        rep.evaluated += 1
                        lhs = alpha_product(R, a, beta, b)
                        rhs = R.translate(g, alpha_product(R, a, mul(inv(g), beta), one[j]))
                        if lhs != rhs:
                            rep.add((str(i), beta.render(), g.render(), str(j)), _fmt(lhs), _fmt(rhs))
        return rep

    if axiom == "C2":
        for i in gens:
            for j in gens:
                a, b = one[i], one[j]
                rep.covered += len(box)
                cand = R.gen_support(i, j) | {inv(s) for s in R.gen_support(j, i)}
                for al in cand & boxset:
                    rep.evaluated += 1
                    lhs = alpha_product(R, a, al, b)
                    rhs = -R.translate(al, alpha_product(R, b, inv(al), a))
                    if lhs != rhs:
                        rep.add((str(i), al.render(), str(j)), _fmt(lhs), _fmt(rhs))
        return rep

    if axiom == "Tconj":
        for i in gens:
            for j in gens:
                for al in box:
                    a = R.translate(al, one[i])
                    b = R.translate(al, one[j])
                    rep.covered += len(box)
                    cand = {mul(mul(al, s), inv(al)) for s in R.gen_support(i, j)}
                    if a and b:
                        cand |= product_support(R, a, b)
                    for beta in cand & boxset:
                        rep.evaluated += 1
                        lhs = alpha_product(R, a, beta, b)
                        rhs = R.translate(al, alpha_product(R, one[i], mul(mul(inv(al), beta), al), one[j]))
                        if lhs != rhs:
                            rep.add((str(i), al.render(), beta.render(), str(j)), _fmt(lhs), _fmt(rhs))
        return rep

    # C3: a_(al)(b_(be) c) = (a_(x) b)_(be) c + b_(be)(a_(al) c),  x = be^-1 al (or al be^-1)
    prop = c3_form == "prop"
    if c3_form not in ("def", "prop"):
        raise ValueError("c3_form must be 'def' or 'prop'")

    def shift(al, be):
        return mul(al, inv(be)) if prop else mul(inv(be), al)

    def unshift(x, be):
        return mul(x, be) if prop else mul(be, x)

    nbox = len(box)
    pair = {(i, j): {x: alpha_product(R, one[i], x, one[j]) for x in R.gen_support(i, j)}
            for i in gens for j in gens}
    for i in gens:
        a = one[i]
        for j in gens:
            b = one[j]
            ab = pair[(i, j)]
            for k in gens:
                c = one[k]
                rep.covered += nbox * nbox
                bc = pair[(j, k)]
                ac = pair[(i, k)]
                cand = set()
                for be, x in bc.items():
                    if x:
                        for al in product_support(R, a, x):
                            cand.add((al, be))
                for x, y in ab.items():
                    if y:
                        for be in product_support(R, y, c):
                            cand.add((unshift(x, be), be))
                for al, z in ac.items():
                    if z:
                        for be in product_support(R, b, z):
                            cand.add((al, be))
                for al, be in cand:
                    if al not in boxset or be not in boxset:
                        continue
                    rep.evaluated += 1
                    x = bc.get(be)
                    lhs = alpha_product(R, a, al, x) if x else LinComb()
                    y = ab.get(shift(al, be))
                    r1 = alpha_product(R, y, be, c) if y else LinComb()
                    z = ac.get(al)
                    r2 = alpha_product(R, b, be, z) if z else LinComb()
                    rhs = r1 + r2
                    if lhs != rhs:
                        rep.add((str(i), al.render(), str(j), be.render(), str(k)), _fmt(lhs), _fmt(rhs))
    return rep


# -- representations --------------------------------------------------------


class RepModule:
    """A module over a Gamma-conformal algebra.

    ``act(g, alpha, v)`` gives ``g_(alpha) v`` for a generator ``g`` and a
    carrier basis key ``v``; ``vtranslate(gamma, v)`` is ``T_gamma`` on
    carrier basis keys; ``support(g, v)`` bounds the ``alpha`` with a
    non-zero action.
    """

    def __init__(self, name, algebra, act, vtranslate, support, vectors):
        self.name = name
        self.algebra = algebra
        self.spec = algebra.spec
        self._act = act
        self._vtranslate = vtranslate
        self._support = support
        self.vectors = vectors
        self._cache = {}

    def act_basis(self, g, alpha, v):
        key = (g, alpha, v)
        try:
            return self._cache[key]
        except KeyError:
            out = self._act(g, alpha, v)
            self._cache[key] = out
            return out

    def act(self, a: ModElem, alpha: GroupElem, v: LinComb) -> LinComb:
        """``a_(alpha) v`` extended by (M1) in ``a`` and linearly in ``v``."""
        mul = self.spec.mul
        out = LinComb()
        for (gam, g), ca in a.items():
            ag = mul(alpha, gam)
            for k, cv in v.items():
                out = out + self.act_basis(g, ag, k).scale(ca * cv)
        return out

    def translate(self, gamma: GroupElem, v: LinComb) -> LinComb:
        out = LinComb()
        for k, c in v.items():
            out = out + self._vtranslate(gamma, k).scale(c)
        return out

    def support(self, a: ModElem, v: LinComb) -> frozenset:
        mul, inv = self.spec.mul, self.spec.inv
        out = set()
        for gam, g in a.keys():
            for k in v.keys():
                out |= {mul(s, inv(gam)) for s in self._support(g, k)}
        return frozenset(out)


def gc1_action(G: GroupSpec, s: GroupElem, alpha: GroupElem, v: LinComb) -> LinComb:
    """``(a^s)_(alpha) v`` on ``V = C[G] v0``; carrier keys are group elements.

    On ``v0`` this is ``[alpha = s^-1] T_alpha v0``; on ``T_g v0`` it is
    ``T_g (a^s)_(g^-1 alpha) v0``, which is again ``[g^-1 alpha = s^-1] T_alpha v0``.
    """
    sinv = G.inv(s)
    out = LinComb()
    for g, c in v.items():
        if G.mul(G.inv(g), alpha) == sinv:
            out = out + LinComb.basis(alpha, c)
    return out


def gc1_module(R: GammaConformalAlgebra, drop_translation: bool = False) -> RepModule:
    """``C[G] v0`` as a module over ``gc1(G)``.

    ``drop_translation`` replaces ``T_alpha v`` by ``v`` in the defining
    action; it exists only as a negative control.
    """
    G = R.spec

    def act(g, alpha, v):
        s = G.from_index(g.index)
        out = gc1_action(G, s, alpha, LinComb.basis(v))
        if drop_translation and out:
            return LinComb.basis(v, out[alpha])
        return out

    def vtranslate(gamma, v):
        return LinComb.basis(G.mul(gamma, v))

    def support(g, v):
        return {G.mul(v, G.inv(G.from_index(g.index)))}

    def vectors(bound):
        return G.elements(bound)

    return RepModule(f"C[{G.name}]v0", R, act, vtranslate, support, vectors)


def adjoint_module(R: GammaConformalAlgebra) -> RepModule:
    """``R`` acting on itself by its products."""
    G = R.spec

    def act(g, alpha, v):
        return alpha_product(R, gen(g, G.identity()), alpha, LinComb.basis(v))

    def vtranslate(gamma, v):
        return R.translate(gamma, LinComb.basis(v))

    def support(g, v):
        return product_support(R, gen(g, G.identity()), LinComb.basis(v))

    def vectors(bound):
        out = []
        for g in R.generators(bound):
            for d in G.elements(min(bound, 1)):
                out.extend(R.canon(gen(g, d)).keys())
        return sorted(set(out))

    return RepModule(f"adjoint({R.name})", R, act, vtranslate, support, vectors)


MODULE_AXIOMS = ("M0", "M1", "M2")


def check_module_axiom(M: RepModule, axiom: str, sample: SamplePlan = SamplePlan()) -> Report:
    """Verify (M0), (M1) or (M2) on generators, carrier basis vectors and the box."""
    if axiom not in MODULE_AXIOMS:
        raise ValueError(f"unknown module axiom {axiom!r}")
    R = M.algebra
    G = R.spec
    mul, inv = G.mul, G.inv
    gens = R.generators(sample.gen_bound)
    box = G.elements(sample.group_bound)
    boxset = set(box)
    vecs = [LinComb.basis(v) for v in M.vectors(sample.group_bound)]
    e = G.identity()
    one = {g: gen(g, e) for g in gens}
    rep = Report(M.name, axiom)
    fmt = lambda x: x.render()  # noqa: E731

    if axiom == "M0":
        for g in gens:
            for v in vecs:
                supp = M.support(one[g], v)
                for al in box:
                    rep.evaluated += 1
                    w = M.act(one[g], al, v)
                    if w and al not in supp:
                        rep.add((str(g), al.render(), fmt(v)), fmt(w), "0 (outside support)")
        rep.covered = rep.evaluated
        return rep

    if axiom == "M1":
        for g in gens:
            for v in vecs:
                for gam in box:
                    rep.covered += 2 * len(box)
                    ta = R.translate(gam, one[g])
                    cand = M.support(ta, v) | {mul(s, inv(gam)) for s in M.support(one[g], v)}
                    for beta in cand & boxset:
                        rep.evaluated += 1
                        lhs = M.act(ta, beta, v)
                        rhs = M.act(one[g], mul(beta, gam), v)
                        if lhs != rhs:
                            rep.add(("T", str(g), gam.render(), beta.render(), fmt(v)), fmt(lhs), fmt(rhs))
                    tv = M.translate(gam, v)
                    cand = M.support(one[g], tv) | {mul(gam, s) for s in M.support(one[g], v)}
                    for beta in cand & boxset:
                        rep.evaluated += 1
                        lhs = M.act(one[g], beta, tv)
                        rhs = M.translate(gam, M.act(one[g], mul(inv(gam), beta), v))
                        if lhs != rhs:
                            rep.add(("V", str(g), beta.render(), gam.render(), fmt(v)), fmt(lhs), fmt(rhs))
        return rep

    # M2: a_(al)(b_(be) v) - b_(be)(a_(al) v) = (a_(be^-1 al) b)_(be) v
    nbox = len(box)
    for i in gens:
        a = one[i]
        for j in gens:
            b = one[j]
            ab = {x: alpha_product(R, a, x, b) for x in R.gen_support(i, j)}
            for v in vecs:
                rep.covered += nbox * nbox
                bv = {be: M.act(b, be, v) for be in M.support(b, v)}
                av = {al: M.act(a, al, v) for al in M.support(a, v)}
                cand = set()
                for be, w in bv.items():
                    if w:
                        cand |= {(al, be) for al in M.support(a, w)}
                for al, w in av.items():
                    if w:
                        cand |= {(al, be) for be in M.support(b, w)}
                for x, y in ab.items():
                    if y:
                        cand |= {(mul(be, x), be) for be in M.support(y, v)}
                for al, be in cand:
                    if al not in boxset or be not in boxset:
                        continue
                    rep.evaluated += 1
                    w1 = bv.get(be)
                    t1 = M.act(a, al, w1) if w1 else LinComb()
                    w2 = av.get(al)
                    t2 = M.act(b, be, w2) if w2 else LinComb()
                    y = ab.get(mul(inv(be), al))
                    rhs = M.act(y, be, v) if y else LinComb()
                    lhs = t1 - t2
                    if lhs != rhs:
                        rep.add((str(i), al.render(), str(j), be.render(), fmt(v)), fmt(lhs), fmt(rhs))
    return rep


# -- parsing ----------------------------------------------------------------

_GEN_RE = re.compile(r"([A-Za-z][A-Za-z0-9_+\-]*?)(?:\[([^\]]*)\])?$")


def parse_gen(text: str) -> GenId:
    m = _GEN_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"malformed generator {text!r}")
    fam, idx = m.group(1), m.group(2)
    index = tuple(int(x) for x in idx.split(",")) if idx and idx.strip() else ()
    return GenId(fam, index)


def parse_mod_elem(text: str, G: GroupSpec) -> ModElem:
    """Parse ``"2*(T^-1)A[5] - A[5]"``."""
    out = LinComb()
    for sign, term in split_terms(text):
        m = re.fullmatch(r"(?:(.+?)\*)?(?:\((.*)\))?\s*([A-Za-z][\w]*(?:\[[^\]]*\])?)", term.strip())
        if not m:
            raise ValueError(f"malformed module element term {term!r}")
        coef = parse_scalar(m.group(1)) if m.group(1) else ONE
        at = G.parse_elem(m.group(2)) if m.group(2) else G.identity()
        out = out + gen(parse_gen(m.group(3)), at, coef * sign)
    return out
