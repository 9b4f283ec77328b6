"""Exact rational functions in one formal parameter ``q``.

A :class:`Scalar` is a reduced fraction ``num/den`` of Laurent polynomials
with rational coefficients.  The denominator is kept as an ordinary
polynomial with non-zero constant term and leading coefficient 1, so two
scalars are equal exactly when their stored forms are equal.

Half-integer powers of ``q`` are handled by passing to the parameter ``p``
with ``q = p**2`` (see :func:`to_root` and :func:`root_pow`).  The class
itself does not record which parameter it is written in.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "LaurentPoly",
    "Scalar",
    "ScalarError",
    "ZERO",
    "ONE",
    "Q",
    "q_pow",
    "const",
    "scalar_normalize",
    "scalar_arith",
    "scalar_eval",
    "parse_scalar",
    "to_root",
    "root_pow",
]


class ScalarError(ArithmeticError):
    pass


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Finitely supported map ``exponent -> rational`` (zeros never stored)."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = _norm_coeff(v)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff, exp=0):
        if not coeff:
            return cls._raw({})
        return cls._raw({exp: _norm_coeff(coeff)})

    def items(self):
        return self._c.items()

    def coeff(self, exp):
        return self._c.get(exp, 0)

    def is_zero(self):
        return not self._c

    def is_monomial(self):
        return len(self._c) == 1

    def min_exp(self):
        return min(self._c)

    def max_exp(self):
        return max(self._c)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = _norm_coeff(s)
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self._c, other._c
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) == 1 and len(b) == 1:
            (e1, v1), = a.items()
            (e2, v2), = b.items()
            return LaurentPoly._raw({e1 + e2: _norm_coeff(v1 * v2)})
        c = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: _norm_coeff(v) for e, v in c.items() if v})

    def scale(self, k):
        if not k:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({e: _norm_coeff(v * k) for e, v in self._c.items()})

    def shift(self, s):
        if not s:
            return self
        return LaurentPoly._raw({e + s: v for e, v in self._c.items()})

    def leading(self):
        return self._c[max(self._c)]

    def evaluate(self, x):
        total = Fraction(0)
        for e, v in self._c.items():
            total += v * Fraction(x) ** e
        return total

    def to_dense(self):
        """Coefficient list, lowest exponent first; requires ``min_exp >= 0``."""
        n = self.max_exp()
        out = [Fraction(0)] * (n + 1)
        for e, v in self._c.items():
            out[e] = Fraction(v)
        return out

    @classmethod
    def from_dense(cls, coeffs, shift=0):
        return cls({i + shift: v for i, v in enumerate(coeffs) if v})

    def render(self, var="q"):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            neg = v < 0
            mag = -v if neg else v
            if e == 0:
                body = str(mag)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((neg, body))
        first_neg, first = parts[0]
        out = ("-" if first_neg else "") + first
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"LaurentPoly({self.render()})"


# dense polynomial helpers over Q, lowest degree first


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ScalarError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, bv in enumerate(b):
            a[i + shift] -= f * bv
        a.pop()
    return _trim(q), a


def _poly_gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [v / lead for v in a]


class Scalar:
    """Element of Q(q) in canonical reduced form.

    Build with :func:`const`, :func:`q_pow`, :func:`parse_scalar` or
    :func:`scalar_normalize`; the bare constructor trusts its input.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        self.num = num
        self.den = den
        self._hash = None

    # -- predicates -----------------------------------------------------
    def is_zero(self):
        return not self.num._c

    def __bool__(self):
        return bool(self.num._c)

    def is_poly(self):
        return self.den._c == _ONE_DICT

    def is_constant(self):
        c = self.num._c
        return self.den._c == _ONE_DICT and (not c or (len(c) == 1 and 0 in c))

    def constant_value(self):
        if not self.is_constant():
            raise ScalarError("scalar is not a constant")
        return Fraction(self.num.coeff(0))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if not other.num._c:
            return self
        if not self.num._c:
            return other
        if self.den._c == _ONE_DICT and other.den._c == _ONE_DICT:
            return Scalar(self.num + other.num, _ONE_LP)
        if self.den == other.den:
            return scalar_normalize(self.num + other.num, self.den)
        return scalar_normalize(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if not self.num._c or not other.num._c:
            return ZERO
        if self.den._c == _ONE_DICT and other.den._c == _ONE_DICT:
            if self.num._c == _ONE_DICT:
                return other
            if other.num._c == _ONE_DICT:
                return self
            return Scalar(self.num * other.num, _ONE_LP)
        return scalar_normalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self):
        if not self.num._c:
            raise ZeroDivisionError("inverse of zero")
        if self.num.is_monomial() and self.den._c == _ONE_DICT:
            (e, v), = self.num.items()
            return Scalar(LaurentPoly._raw({-e: _norm_coeff(Fraction(1) / v)}), _ONE_LP)
        return scalar_normalize(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        if self.num.is_monomial() and self.den._c == _ONE_DICT:
            (e, v), = self.num.items()
            return Scalar(LaurentPoly._raw({e * k: _norm_coeff(Fraction(v) ** k)}), _ONE_LP)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self.num._c == other.num._c and self.den._c == other.den._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- rendering ------------------------------------------------------
    def render(self, var="q"):
        if self.den._c == _ONE_DICT:
            return self.num.render(var)
        return f"({self.num.render(var)})/({self.den.render(var)})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Scalar({self.render()})"


_ONE_DICT = {0: 1}
_ONE_LP = LaurentPoly._raw({0: 1})
ZERO = Scalar(LaurentPoly._raw({}), _ONE_LP)
ONE = Scalar(_ONE_LP, _ONE_LP)
Q = Scalar(LaurentPoly._raw({1: 1}), _ONE_LP)


def const(c) -> Scalar:
    """Constant scalar from an int, Fraction or decimal string."""
    c = Fraction(c)
    if not c:
        return ZERO
    return Scalar(LaurentPoly._raw({0: _norm_coeff(c)}), _ONE_LP)


def q_pow(k: int, coeff=1) -> Scalar:
    if not coeff:
        return ZERO
    return Scalar(LaurentPoly._raw({k: _norm_coeff(Fraction(coeff))}), _ONE_LP)


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, _RationalABC)):
        return const(x)
    return None


def scalar_normalize(num: LaurentPoly, den: LaurentPoly) -> Scalar:
    """Canonical representative of ``num/den``."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero scalar")
    if num.is_zero():
        return ZERO
    s = den.min_exp()
    den = den.shift(-s)
    num = num.shift(-s)
    if den.is_monomial():
        return Scalar(num.scale(Fraction(1) / Fraction(den.coeff(0))), _ONE_LP)
    t = num.min_exp()
    n_dense = num.shift(-t).to_dense()
    d_dense = den.to_dense()
    g = _poly_gcd(n_dense, d_dense)
    if len(g) > 1:
        n_dense, _ = _poly_divmod(n_dense, g)
        d_dense, _ = _poly_divmod(d_dense, g)
    lead = d_dense[-1]
    n_poly = LaurentPoly.from_dense([v / lead for v in n_dense], shift=t)
    d_poly = LaurentPoly.from_dense([v / lead for v in d_dense])
    if d_poly._c == _ONE_DICT:
        d_poly = _ONE_LP
    return Scalar(n_poly, d_poly)


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None, k: int | None = None) -> Scalar:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** k
    raise ValueError(f"unknown scalar operation {op!r}")


def scalar_eval(a: Scalar, q0) -> Fraction:
    """Substitute the rational number ``q0`` for ``q``."""
    q0 = Fraction(q0)
    if q0 == 0:
        if a.num._c and a.num.min_exp() < 0:
            raise ScalarError("evaluation at q = 0 of a negative power")
    d = a.den.evaluate(q0) if q0 else Fraction(a.den.coeff(0))
    if d == 0:
        raise ScalarError("evaluation pole")
    n = a.num.evaluate(q0) if q0 else Fraction(a.num.coeff(0))
    return n / d


def to_root(a: Scalar) -> Scalar:
    """Rewrite ``a(q)`` in the parameter ``p`` with ``q = p**2``."""

    def dbl(lp):
        return LaurentPoly._raw({2 * e: v for e, v in lp.items()})

    den = dbl(a.den)
    return Scalar(dbl(a.num), _ONE_LP if den._c == _ONE_DICT else den)


def root_pow(k: int) -> Scalar:
    """``q**(k/2)``, i.e. ``p**k`` in the parameter of :func:`to_root`."""
    return q_pow(k)


# -- parsing ------------------------------------------------------------


class _Parser:
    def __init__(self, text, var):
        self.toks = self._lex(text, var)
        self.i = 0
        self.var = var

    @staticmethod
    def _lex(text, var):
        toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("int", int(text[i:j])))
                i = j
            elif text.startswith(var, i):
                toks.append(("var", var))
                i += len(var)
            elif ch in "+-*/^()":
                toks.append((ch, ch))
                i += 1
            else:
                raise ValueError(f"malformed scalar {text!r}: unexpected {ch!r}")
        return toks

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise ValueError("malformed scalar: unexpected end of input")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ValueError(f"malformed scalar: expected {kind!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() in ("-", "+"):
                sign = -1 if self.take()[0] == "-" else 1
            if self.peek() == "(":
                self.take()
                sign2 = 1
                if self.peek() == "-":
                    self.take()
                    sign2 = -1
                k = self.take("int")[1] * sign2
                self.take(")")
            else:
                k = self.take("int")[1]
            return base ** (sign * k)
        return base

    def atom(self):
        kind = self.peek()
        if kind == "int":
            return const(self.take()[1])
        if kind == "var":
            self.take()
            return Q
        if kind == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        raise ValueError("malformed scalar: expected a number, variable or '('")


def parse_scalar(text: str, var: str = "q") -> Scalar:
    """Parse the grammar produced by :meth:`Scalar.render`."""
    p = _Parser(text, var)
    if not p.toks:
        raise ValueError("malformed scalar: empty input")
    val = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"malformed scalar {text!r}: trailing input")
    return val
