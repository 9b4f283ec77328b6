"""The groups used as translation groups, and their scalar characters.

Supported shapes: ``Z^N``, ``Z/M``, ``Z2 x Z^N`` (a central involution) and
the infinite dihedral group ``Dinf``.  An element is stored as ``(vec, sign)``
and stands for ``T^vec * e^sign``, where ``e`` is the involution.  The group
law is ``(v, s)(w, t) = (v + flip^s(w), s xor t)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .scalar import ONE, Scalar, parse_scalar

__all__ = [
    "GroupSpec",
    "GroupElem",
    "Character",
    "GroupError",
    "CharacterError",
    "group_mul",
    "group_inv",
    "character_make",
    "character_eval",
    "parse_group",
]

FLIPS = ("none", "trivial", "inverting")


class GroupError(ValueError):
    pass


class CharacterError(ValueError):
    pass


class GroupElem(NamedTuple):
    vec: tuple
    sign: int = 0

    def __str__(self):
        return self.render()

    def render(self):
        # normal form T^vec * e^sign
        parts = []
        if any(self.vec):
            if len(self.vec) == 1:
                parts.append(f"T^{self.vec[0]}")
            else:
                parts.append("(" + ",".join(str(v) for v in self.vec) + ")")
        if self.sign:
            parts.append("e")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class GroupSpec:
    free_rank: int = 1
    torsion: int | None = None
    flip: str = "none"
    _identity: GroupElem = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.flip not in FLIPS:
            raise GroupError(f"unknown flip {self.flip!r}")
        if self.free_rank < 0:
            raise GroupError("free rank must be non-negative")
        if self.torsion is not None:
            if self.torsion < 1 or self.free_rank != 0 or self.flip != "none":
                raise GroupError("torsion is only supported as the group Z/M")
        if self.flip == "inverting" and self.free_rank != 1:
            raise GroupError("inverting involution requires free rank 1 (Dinf)")
        rank = 1 if self.torsion is not None else self.free_rank
        object.__setattr__(self, "_identity", GroupElem((0,) * rank, 0))
        # specialized group laws for the hot paths of the axiom checkers
        if self.torsion is None and self.flip != "inverting":
            if rank == 1:
                object.__setattr__(self, "mul", _mul_z1)
                object.__setattr__(self, "inv", _inv_z1)
            elif rank == 2:
                object.__setattr__(self, "mul", _mul_z2)
                object.__setattr__(self, "inv", _inv_z2)
            else:
                object.__setattr__(self, "mul", _mul_zn)
                object.__setattr__(self, "inv", _inv_zn)

    # -- naming ---------------------------------------------------------
    @property
    def name(self):
        if self.torsion is not None:
            return f"Z/{self.torsion}"
        if self.flip == "inverting":
            return "Dinf"
        base = "Z" if self.free_rank == 1 else f"Z^{self.free_rank}"
        if self.flip == "trivial":
            return "Z2" if self.free_rank == 0 else f"Z2x{base}"
        return "1" if self.free_rank == 0 else base

    def __str__(self):
        return self.name

    @property
    def rank(self):
        return len(self._identity.vec)

    @property
    def has_flip(self):
        return self.flip != "none"

    @property
    def abelian(self):
        return self.flip != "inverting"

    # -- elements -------------------------------------------------------
    def identity(self) -> GroupElem:
        return self._identity

    def elem(self, vec=(), sign=0) -> GroupElem:
        if isinstance(vec, int):
            vec = (vec,)
        vec = tuple(int(v) for v in vec)
        if len(vec) != self.rank:
            raise GroupError(f"{self.name}: expected {self.rank} coordinates, got {len(vec)}")
        if sign and not self.has_flip:
            raise GroupError(f"{self.name} has no involution")
        if self.torsion is not None:
            vec = (vec[0] % self.torsion,)
        return GroupElem(vec, 1 if sign else 0)

    def generator(self, i=0) -> GroupElem:
        v = [0] * self.rank
        v[i] = 1
        return self.elem(v)

    def eps(self) -> GroupElem:
        return self.elem((0,) * self.rank, 1)

    def validate(self, g):
        if not isinstance(g, GroupElem) or len(g.vec) != self.rank:
            raise GroupError(f"{g!r} is not an element of {self.name}")
        if g.sign not in (0, 1) or (g.sign and not self.has_flip):
            raise GroupError(f"{g!r} is not an element of {self.name}")
        if self.torsion is not None and not 0 <= g.vec[0] < self.torsion:
            raise GroupError(f"{g!r} has an unreduced residue for {self.name}")
        return g

    def mul(self, g: GroupElem, h: GroupElem) -> GroupElem:
        v, s = g
        w, t = h
        if s and self.flip == "inverting":
            vec = tuple(a - b for a, b in zip(v, w))
        else:
            vec = tuple(a + b for a, b in zip(v, w))
        if self.torsion is not None:
            vec = (vec[0] % self.torsion,)
        return GroupElem(vec, s ^ t)

    def inv(self, g: GroupElem) -> GroupElem:
        v, s = g
        if s and self.flip == "inverting":
            return g
        if self.torsion is not None:
            return GroupElem(((-v[0]) % self.torsion,), s)
        return GroupElem(tuple(-a for a in v), s)

    def pow(self, g: GroupElem, k: int) -> GroupElem:
        if k < 0:
            g, k = self.inv(g), -k
        out = self.identity()
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def elements(self, bound: int):
        """All elements whose free coordinates lie in ``[-bound, bound]``."""
        if self.torsion is not None:
            coords = [(r,) for r in range(self.torsion)]
        else:
            coords = list(itertools.product(range(-bound, bound + 1), repeat=self.rank))
        signs = (0, 1) if self.has_flip else (0,)
        return [GroupElem(c, s) for s in signs for c in coords]

    def in_box(self, g: GroupElem, bound: int) -> bool:
        if self.torsion is not None:
            return True
        return all(-bound <= v <= bound for v in g.vec)

    # -- generator labels for gc1 --------------------------------------
    def as_index(self, g: GroupElem) -> tuple:
        return g.vec + (g.sign,) if self.has_flip else g.vec

    def from_index(self, t: tuple) -> GroupElem:
        if self.has_flip:
            return self.elem(t[:-1], t[-1])
        return self.elem(t)

    # -- parsing --------------------------------------------------------
    def parse_elem(self, text: str) -> GroupElem:
        """Parse ``"T^3"``, ``"e*T^-2"``, ``"(1,0,2)"``, ``"e"`` or ``"1"``."""
        text = text.strip()
        out = self.identity()
        if text in ("", "1", "id"):
            return out
        for factor in text.split("*"):
            factor = factor.strip()
            if factor == "e":
                g = self.eps()
            elif factor == "1":
                continue
            elif factor.startswith("("):
                inner = factor.strip("()")
                g = self.elem(tuple(int(x) for x in inner.split(",")))
            else:
                m = re.fullmatch(r"T(\d*)(?:\^(-?\d+))?", factor)
                if not m:
                    raise GroupError(f"malformed group element {text!r}")
                idx = int(m.group(1)) - 1 if m.group(1) else 0
                if not 0 <= idx < self.rank:
                    raise GroupError(f"{self.name} has no generator T{m.group(1)}")
                g = self.pow(self.generator(idx), int(m.group(2) or 1))
            out = self.mul(out, g)
        return out


_new = tuple.__new__


def _mul_z1(g, h):
    return _new(GroupElem, ((g[0][0] + h[0][0],), g[1] ^ h[1]))


def _inv_z1(g):
    return _new(GroupElem, ((-g[0][0],), g[1]))


def _mul_z2(g, h):
    a, b = g[0], h[0]
    return _new(GroupElem, ((a[0] + b[0], a[1] + b[1]), g[1] ^ h[1]))


def _inv_z2(g):
    a = g[0]
    return _new(GroupElem, ((-a[0], -a[1]), g[1]))


def _mul_zn(g, h):
    return _new(GroupElem, (tuple([a + b for a, b in zip(g[0], h[0])]), g[1] ^ h[1]))


def _inv_zn(g):
    return _new(GroupElem, (tuple([-a for a in g[0]]), g[1]))


def parse_group(text: str) -> GroupSpec:
    """``"Z"``, ``"Z^2"``, ``"Z/4"``, ``"Z2xZ"``, ``"Z2xZ^2"`` or ``"Dinf"``."""
    t = text.replace(" ", "").replace("×", "x")
    if t == "Dinf":
        return GroupSpec(1, None, "inverting")
    m = re.fullmatch(r"Z/(\d+)", t)
    if m:
        return GroupSpec(0, int(m.group(1)))
    m = re.fullmatch(r"(Z2x)?Z(?:\^(\d+))?", t)
    if m:
        rank = int(m.group(2) or 1)
        return GroupSpec(rank, None, "trivial" if m.group(1) else "none")
    raise GroupError(f"unknown group {text!r}; expected Z, Z^N, Z/M, Z2xZ^N or Dinf")


def group_mul(G: GroupSpec, g: GroupElem, h: GroupElem) -> GroupElem:
    return G.mul(G.validate(g), G.validate(h))


def group_inv(G: GroupSpec, g: GroupElem) -> GroupElem:
    return G.inv(G.validate(g))


class Character:
    """A homomorphism from a :class:`GroupSpec` into ``Q(q)^x``.

    ``values`` lists the value on the involution first (when the group has
    one), then one value per free generator, or a single value on the
    generator of ``Z/M``.
    """

    __slots__ = ("spec", "values", "_cache")

    def __init__(self, spec: GroupSpec, values: tuple):
        self.spec = spec
        self.values = tuple(values)
        self._cache = {}

    @property
    def eps_value(self):
        return self.values[0] if self.spec.has_flip else ONE

    @property
    def free_values(self):
        return self.values[1:] if self.spec.has_flip else self.values

    def __call__(self, g: GroupElem) -> Scalar:
        try:
            return self._cache[g]
        except KeyError:
            pass
        out = ONE
        for val, k in zip(self.free_values, g.vec):
            if k:
                out = out * val ** k
        if g.sign:
            out = out * self.eps_value
        self._cache[g] = out
        return out

    def __eq__(self, other):
        return isinstance(other, Character) and (self.spec, self.values) == (other.spec, other.values)

    def __hash__(self):
        return hash((self.spec, self.values))

    def render(self):
        return ",".join(v.render() for v in self.values)

    def __repr__(self):
        return f"Character({self.spec.name}; {self.render()})"


def character_make(G: GroupSpec, values) -> Character:
    vals = tuple(parse_scalar(v) if isinstance(v, str) else (v if isinstance(v, Scalar) else ONE * v)
                 for v in values)
    expected = G.rank + (1 if G.has_flip else 0)
    if len(vals) != expected:
        raise CharacterError(f"{G.name} needs {expected} character values, got {len(vals)}")
    if any(v.is_zero() for v in vals):
        raise CharacterError("character values must be nonzero")
    chi = Character(G, vals)
    if G.has_flip and chi.eps_value ** 2 != ONE:
        raise CharacterError("χ(ε)² ≠ 1")
    if G.torsion is not None and vals[0] ** G.torsion != ONE:
        raise CharacterError(f"χ(T)^{G.torsion} ≠ 1 on Z/{G.torsion}")
    if G.flip == "inverting" and chi.free_values[0] ** 2 != ONE:
        raise CharacterError("χ(T)² ≠ 1 under inverting involution")
    return chi


def character_eval(chi: Character, g: GroupElem) -> Scalar:
    return chi(chi.spec.validate(g))
