"""Formal distributions in ``z`` and ``w`` cut to a finite window of modes.

``d[m, n]`` is the coefficient of ``z^{-m-1} w^{-n-1}``.  A distribution
records a ``margin``: coefficients with ``|m|, |n| <= W - margin`` are exact,
the outer ring may carry truncation artifacts.  Every operation that reaches
outside its input grows the margin, and raises once the exact region would
become empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .conformal import GenId
from .linear import LinComb
from .modes import ModeAlgebra, render_mode_elem
from .scalar import ONE, Scalar, ZERO, const

__all__ = [
    "TruncDist",
    "PoleSet",
    "WindowError",
    "UNIT",
    "delta_dist",
    "general_delta",
    "binomial_mul",
    "lagrange_coeffs",
    "poly_eval",
    "decompose",
    "reconstruct",
    "check_locality",
    "field_bracket",
    "mul_z_field",
    "residue_z",
    "shifted_inverse_power",
    "binomial_power",
    "Dist3",
    "dist3_delta",
    "dist3_mul",
]

UNIT = (GenId("1"), 0)


class WindowError(ValueError):
    pass


def _scalar(x):
    return x if isinstance(x, Scalar) else const(x)


def _sv(c) -> LinComb:
    """Scalar embedded as a multiple of the unit coefficient."""
    return LinComb.basis(UNIT, _scalar(c))


@dataclass
class TruncDist:
    W: int
    coeffs: dict = field(default_factory=dict)
    margin: int = 0

    def __post_init__(self):
        if self.W < 1:
            raise WindowError("window must be positive")
        if not 0 <= self.margin <= self.W:
            raise WindowError("window too small")
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    @property
    def radius(self):
        """Half-width of the exact region."""
        return self.W - self.margin

    def __getitem__(self, key) -> LinComb:
        return self.coeffs.get(key, _ZERO_LC)

    def in_window(self, m, n):
        return -self.W <= m <= self.W and -self.W <= n <= self.W

    def valid(self, m, n):
        r = self.radius
        return -r <= m <= r and -r <= n <= r

    def valid_items(self):
        return sorted((k, v) for k, v in self.coeffs.items() if self.valid(*k))

    def restrict_equal(self, other: "TruncDist", radius: int | None = None):
        """First index in the common exact region where the two differ, or ``None``."""
        r = min(self.radius, other.radius) if radius is None else radius
        keys = {k for k in self.coeffs if max(abs(k[0]), abs(k[1])) <= r}
        keys |= {k for k in other.coeffs if max(abs(k[0]), abs(k[1])) <= r}
        for k in sorted(keys):
            if self[k] != other[k]:
                return k
        return None

    def __add__(self, other: "TruncDist") -> "TruncDist":
        W = min(self.W, other.W)
        margin = max(self.margin - (self.W - W), other.margin - (other.W - W), 0)
        out = {}
        for src in (self.coeffs, other.coeffs):
            for k, v in src.items():
                if max(abs(k[0]), abs(k[1])) <= W:
                    out[k] = out.get(k, _ZERO_LC) + v
        return TruncDist(W, out, margin)

    def __neg__(self):
        return TruncDist(self.W, {k: -v for k, v in self.coeffs.items()}, self.margin)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncDist":
        return TruncDist(self.W, {k: v.scale(c) for k, v in self.coeffs.items()}, self.margin)

    def is_zero_on_valid(self):
        for k, v in self.valid_items():
            if v:
                return False, k
        return True, None

    def dump(self, var="q") -> str:
        """Rows ``(m, n) -> elem`` over the exact region, sorted."""
        lines = [f"# window {self.W}, margin {self.margin}, exact for |m|,|n| <= {self.radius}"]
        for (m, n), v in self.valid_items():
            lines.append(f"({m}, {n}) -> {_render_coeff(v, var)}")
        return "\n".join(lines)


_ZERO_LC = LinComb()


def _render_coeff(v: LinComb, var="q"):
    if set(v.keys()) == {UNIT}:
        return v[UNIT].render(var)
    return render_mode_elem(v, var)


class PoleSet(tuple):
    """Distinct nonzero scalars ``{alpha_1, ..., alpha_N}``."""

    def __new__(cls, values):
        vals = tuple(_scalar(v) for v in values)
        if any(not v for v in vals):
            raise ValueError("poles must be nonzero")
        if len(set(vals)) != len(vals):
            raise ValueError("poles must be pairwise distinct")
        return super().__new__(cls, vals)


def delta_dist(alpha, W: int) -> TruncDist:
    """``delta(z - alpha w) = sum_m alpha^m z^{-m-1} w^m``."""
    alpha = _scalar(alpha)
    if not alpha:
        raise ValueError("delta_dist needs a nonzero alpha")
    out = {}
    for m in range(-W, W + 1):
        n = -m - 1
        if -W <= n <= W:
            out[(m, n)] = _sv(alpha ** m)
    return TruncDist(W, out, 0)


def general_delta(alpha, beta, W: int) -> TruncDist:
    """``delta(alpha z - beta w) = sum_n (alpha z)^{n-1} (beta w)^{-n}``, expanded term by term."""
    alpha, beta = _scalar(alpha), _scalar(beta)
    if not alpha or not beta:
        raise ValueError("general_delta needs nonzero alpha and beta")
    out = {}
    for n in range(-2 * W - 2, 2 * W + 3):
        # z^{n-1} = z^{-m-1} with m = -n; w^{-n} = w^{-k-1} with k = n - 1
        m, k = -n, n - 1
        if -W <= m <= W and -W <= k <= W:
            out[(m, k)] = _sv(alpha ** (n - 1) * beta ** (-n))
    return TruncDist(W, out, 0)


def binomial_mul(d: TruncDist, S) -> TruncDist:
    """Multiply by ``prod_{alpha in S} (z - alpha w)``; the margin grows by ``|S|``."""
    S = PoleSet(S)
    for alpha in S:
        if d.margin + 1 > d.W:
            raise WindowError("window too small")
        W = d.W
        out = {}
        for m in range(-W, W + 1):
            for n in range(-W, W + 1):
                v = d[(m + 1, n)] - d[(m, n + 1)].scale(alpha)
                if v:
                    out[(m, n)] = v
        d = TruncDist(W, out, d.margin + 1)
    return d


def lagrange_coeffs(S, alpha) -> list:
    """Coefficients (constant term first) of ``prod_{b != alpha} (u - b)/(alpha - b)``."""
    S = PoleSet(S)
    alpha = _scalar(alpha)
    if alpha not in S:
        raise ValueError("alpha is not one of the poles")
    poly = [ONE]
    for b in S:
        if b == alpha:
            continue
        inv = (alpha - b).inv()
        nxt = [ZERO] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c * inv
            nxt[i] = nxt[i] - c * b * inv
        poly = nxt
    return poly


def poly_eval(poly, u) -> Scalar:
    out = ZERO
    for c in reversed(poly):
        out = out * u + c
    return out


@dataclass
class Decomposition:
    parts: dict
    parts_radius: int
    remainder: TruncDist


def decompose(d: TruncDist, S) -> Decomposition:
    """Split ``d = sum_alpha c_alpha(w) delta(z - alpha w) + remainder``.

    ``c_alpha[N] = sum_j p_j d[j, N - j]`` with ``p`` the Lagrange polynomial
    of ``alpha``; each ``c_alpha`` is exact for ``|N| <= radius - (|S| - 1)``
    and the remainder is exact on the box of half that radius.
    """
    S = PoleSet(S)
    R = d.radius - (len(S) - 1)
    if R < 0:
        raise WindowError("window too small")
    parts = {}
    for alpha in S:
        p = lagrange_coeffs(S, alpha)
        c = {}
        for N in range(-R, R + 1):
            acc = LinComb()
            for j, pj in enumerate(p):
                if pj:
                    acc = acc + d[(j, N - j)].scale(pj)
            if acc:
                c[N] = acc
        parts[alpha] = c
    rem_r = R // 2
    out = {}
    for m in range(-rem_r, rem_r + 1):
        for n in range(-rem_r, rem_r + 1):
            v = d[(m, n)]
            for alpha, c in parts.items():
                cv = c.get(m + n)
                if cv:
                    v = v - cv.scale(alpha ** m)
            if v:
                out[(m, n)] = v
    W = max(rem_r, 1)
    return Decomposition(parts, R, TruncDist(W, out, W - rem_r))


def reconstruct(parts: dict, radius: int) -> TruncDist:
    """``sum_alpha c_alpha(w) delta(z - alpha w)`` on the box ``|m|, |n| <= radius // 2``."""
    r = radius // 2
    W = max(r, 1)
    out = {}
    for m in range(-r, r + 1):
        for n in range(-r, r + 1):
            v = LinComb()
            for alpha, c in parts.items():
                cv = c.get(m + n)
                if cv:
                    v = v + cv.scale(alpha ** m)
            if v:
                out[(m, n)] = v
    return TruncDist(W, out, W - r)


def check_locality(d: TruncDist, S):
    """``(True, None)`` if ``prod (z - alpha w) d`` vanishes on its exact region,
    else ``(False, (index, coefficient))``."""
    prod = binomial_mul(d, S)
    ok, key = prod.is_zero_on_valid()
    return (True, None) if ok else (False, (key, prod[key]))


def field_bracket(A: ModeAlgebra, a: GenId, b: GenId, W: int) -> TruncDist:
    """``[a(z), b(w)]`` with coefficient ``[a_m, b_n]`` at ``(m, n)``."""
    out = {}
    for m in range(-W, W + 1):
        for n in range(-W, W + 1):
            v = A.bracket_basis((a, m), (b, n))
            if v:
                out[(m, n)] = v
    return TruncDist(W, out, 0)


def mul_z_field(a: dict, d: TruncDist) -> TruncDist:
    """Multiply by a one-variable field ``a(z) = sum_k a_k z^{-k-1}`` with finite support."""
    a = {k: _scalar(v) for k, v in a.items() if v}
    if not a:
        return TruncDist(d.W, {}, d.margin)
    reach = max(abs(k + 1) for k in a)
    margin = d.margin + reach
    if margin > d.W:
        raise WindowError("window too small")
    out = {}
    W = d.W
    for m in range(-W, W + 1):
        for n in range(-W, W + 1):
            v = LinComb()
            for k, ak in a.items():
                # z^{-k-1} z^{-m'-1} = z^{-m-1}  with  m' = m - k - 1
                v = v + d[(m - k - 1, n)].scale(ak)
            if v:
                out[(m, n)] = v
    return TruncDist(W, out, margin)


def residue_z(d: TruncDist) -> dict:
    """``Res_z``: the ``z^-1`` row, as a one-variable field in ``w`` (exact part only)."""
    r = d.radius
    if r < 0:
        raise WindowError("window too small")
    return {n: d[(0, n)] for n in range(-r, r + 1) if d[(0, n)]}


def shifted_inverse_power(c, l: int, W: int) -> dict:
    """``(z + c)^{-l-1} = sum_{k>=0} C(k+l, k) (-c)^k z^{-l-k-1}``, exponents ``>= -W-1``.

    Returns a map exponent -> coefficient.
    """
    if l < 0:
        raise ValueError("l must be non-negative")
    if W < l:
        raise WindowError("window too small")
    c = _scalar(c)
    out = {}
    for k in range(0, W - l + 1):
        v = (-c) ** k * comb(k + l, k)
        if v:
            out[-l - k - 1] = v
    return out


def binomial_power(c, k: int) -> dict:
    """``(w + c)^k`` for ``k >= 0`` as exponent -> coefficient."""
    c = _scalar(c)
    out = {j: c ** (k - j) * comb(k, j) for j in range(k + 1)}
    return {j: v for j, v in out.items() if v}


# -- three variables --------------------------------------------------------


@dataclass
class Dist3:
    """Three-variable coefficients: key ``(a, b, c)`` for ``z1^{-a-1} z2^{-b-1} z3^{-c-1}``."""

    W: int
    coeffs: dict

    def __getitem__(self, key):
        return self.coeffs.get(key, ZERO)


def dist3_delta(alpha, W: int, pair: tuple) -> Dist3:
    """``delta(z_i - alpha z_j)`` for ``pair = (i, j)``.

    The variable not in ``pair`` carries the constant ``1``, i.e. index ``-1``.
    """
    alpha = _scalar(alpha)
    i, j = pair
    out = {}
    for m in range(-W, W + 1):
        n = -m - 1
        if -W <= n <= W:
            key = [-1, -1, -1]
            key[i] = m
            key[j] = n
            out[tuple(key)] = alpha ** m
    return Dist3(W, out)


def dist3_mul(f: Dist3, g: Dist3, W: int) -> Dist3:
    """Product of two three-variable series, convolving every shared variable.

    For a variable where the exponents add, ``x^{-a-1} x^{-b-1} = x^{-(a+b+1)-1}``.
    Only terms present in both windows contribute; callers compare on a
    region where every contributing term lies inside.
    """
    out = {}
    for ka, va in f.coeffs.items():
        for kb, vb in g.coeffs.items():
            key = tuple(x + y + 1 for x, y in zip(ka, kb))
            if all(-W <= t <= W for t in key):
                out[key] = out.get(key, ZERO) + va * vb
    return Dist3(W, {k: v for k, v in out.items() if v})
