"""Finite formal linear combinations with :class:`Scalar` coefficients."""

from __future__ import annotations

from .scalar import ONE, Scalar, ZERO, const

__all__ = ["LinComb", "lin_sum", "split_terms"]


class LinComb:
    """Immutable finite sum ``sum c_k * k`` over hashable basis keys.

    Zero coefficients are never stored, so equality of two combinations is
    equality of their term dictionaries.
    """

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for k, c in items:
                if not isinstance(c, Scalar):
                    c = const(c)
                c = t.get(k, ZERO) + c
                if c:
                    t[k] = c
                else:
                    t.pop(k, None)
        self._t = t

    @classmethod
    def _raw(cls, t):
        obj = cls.__new__(cls)
        obj._t = t
        return obj

    @classmethod
    def basis(cls, key, coeff=ONE):
        if not isinstance(coeff, Scalar):
            coeff = const(coeff)
        return cls._raw({key: coeff} if coeff else {})

    # -- mapping-like access ---------------------------------------------
    def items(self):
        return self._t.items()

    def keys(self):
        return self._t.keys()

    def __getitem__(self, key):
        return self._t.get(key, ZERO)

    def __contains__(self, key):
        return key in self._t

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __iter__(self):
        return iter(self._t)

    def sorted_items(self):
        return sorted(self._t.items(), key=lambda kv: kv[0])

    # -- vector space operations ----------------------------------------
    def __add__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            s = t.get(k)
            if s is None:
                t[k] = c
            else:
                s = s + c
                if s:
                    t[k] = s
                else:
                    del t[k]
        return LinComb._raw(t)

    def __neg__(self):
        return LinComb._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        if not isinstance(c, Scalar):
            c = const(c)
        if not c:
            return LinComb._raw({})
        if c == ONE:
            return self
        return LinComb._raw({k: v * c for k, v in self._t.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def map_keys(self, f):
        """Apply ``f(key) -> key`` and merge coefficients."""
        out = {}
        for k, c in self._t.items():
            k2 = f(k)
            s = out.get(k2)
            if s is None:
                out[k2] = c
            else:
                s = s + c
                if s:
                    out[k2] = s
                else:
                    del out[k2]
        return LinComb._raw(out)

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._t == other._t
        if other == 0:
            return not self._t
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def render(self, fmt_key=str, var="q"):
        if not self._t:
            return "0"
        out = []
        for k, c in self.sorted_items():
            key = fmt_key(k)
            if c == ONE:
                term = key
            elif c == -ONE:
                term = "-" + key
            elif c.is_constant() or (c.is_poly() and len(c.num) == 1):
                term = f"{c.render(var)}*{key}"
            else:
                term = f"({c.render(var)})*{key}"
            out.append(term)
        s = out[0]
        for term in out[1:]:
            s += " - " + term[1:] if term.startswith("-") else " + " + term
        return s

    def __repr__(self):
        return f"LinComb({self.render()})"


def lin_sum(items) -> LinComb:
    """Sum an iterable of ``(LinComb, coefficient)`` pairs."""
    out = {}
    for vec, c in items:
        for k, v in vec.items():
            v = v * c
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
    return LinComb._raw({k: v for k, v in out.items() if v})


def split_terms(text: str):
    """Split ``"2*(T^-1)A[5] - A[5]"`` into signed top-level terms."""
    terms, cur, depth = [], "", 0
    prev = ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and prev not in "^*/(":
            terms.append(cur.strip())
            cur = ch
        else:
            cur += ch
        if not ch.isspace():
            prev = ch
    if cur.strip():
        terms.append(cur.strip())
    out = []
    for t in terms:
        sign = 1
        while t[:1] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:].strip()
        out.append((sign, t))
    return out
