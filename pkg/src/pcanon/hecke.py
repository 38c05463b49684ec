"""Hecke algebra of a type A Coxeter system over Z[v, v^-1].

Normalization: ``T_s^2 = 1 + (v^-1 - v) T_s`` and ``b_s = T_s + v``, so that
``b_w = T_w + sum_{x<w} h_{x,w} T_x`` with ``h_{x,w}`` in ``v Z[v]``.
"""
from __future__ import annotations

from typing import Dict, Iterable, Mapping

from .coxeter import CoxeterElement, CoxeterSystem


class LaurentPoly:
    """Finitely supported map ``exponent -> integer``."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.c = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def const(cls, a: int) -> "LaurentPoly":
        return cls({0: a})

    @classmethod
    def mono(cls, k: int, a: int = 1) -> "LaurentPoly":
        return cls({k: a})

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "LaurentPoly":
        """Inverse of ``pairs``: ``[[coeff, exponent], ...]``."""
        out: Dict[int, int] = {}
        for a, k in pairs:
            out[k] = out.get(k, 0) + a
        return cls(out)

    def pairs(self) -> list:
        return [[self.c[k], k] for k in sorted(self.c)]

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self.c)
        for k, a in other.c.items():
            out[k] = out.get(k, 0) + a
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -a for k, a in self.c.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPoly) else LaurentPoly.const(-other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({k: a * other for k, a in self.c.items()})
        out: Dict[int, int] = {}
        for k1, a1 in self.c.items():
            for k2, a2 in other.c.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + a1 * a2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def bar(self) -> "LaurentPoly":
        return LaurentPoly({-k: a for k, a in self.c.items()})

    def at_one(self) -> int:
        return sum(self.c.values())

    def coeff(self, k: int) -> int:
        return self.c.get(k, 0)

    def is_nonnegative(self) -> bool:
        return all(a > 0 for a in self.c.values())

    def min_degree(self):
        return min(self.c) if self.c else None

    def max_degree(self):
        return max(self.c) if self.c else None

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for k in sorted(self.c):
            a = self.c[k]
            if k == 0:
                terms.append(str(a))
            else:
                mon = "v" if k == 1 else f"v^{k}"
                terms.append(mon if a == 1 else (f"-{mon}" if a == -1 else f"{a}{mon}"))
        return " + ".join(terms).replace("+ -", "- ")


V = LaurentPoly.mono(1)
VINV = LaurentPoly.mono(-1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


class HeckeElement:
    """Finitely supported ``sum c_x T_x`` over one Coxeter system."""

    __slots__ = ("W", "terms")

    def __init__(self, W: CoxeterSystem, terms: Mapping[CoxeterElement, LaurentPoly] | None = None):
        self.W = W
        self.terms = {x: c for x, c in (terms or {}).items() if c}

    @classmethod
    def T(cls, W: CoxeterSystem, x: CoxeterElement) -> "HeckeElement":
        return cls(W, {x: ONE})

    def coeff(self, x: CoxeterElement) -> LaurentPoly:
        return self.terms.get(x, ZERO)

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for x, c in other.terms.items():
            out[x] = out.get(x, ZERO) + c
        return HeckeElement(self.W, out)

    def __neg__(self):
        return HeckeElement(self.W, {x: -c for x, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> "HeckeElement":
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        return HeckeElement(self.W, {x: a * c for x, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return mul_standard(self, other)

    def times_Ts(self, s: int) -> "HeckeElement":
        """Right multiplication by ``T_s``."""
        W = self.W
        out: Dict[CoxeterElement, LaurentPoly] = {}
        q = VINV - V
        for x, c in self.terms.items():
            xs = W.right_mult(x, s)
            out[xs] = out.get(xs, ZERO) + c
            if W.is_right_descent(x, s):
                out[x] = out.get(x, ZERO) + c * q
        return HeckeElement(W, out)

    def times_bs(self, s: int) -> "HeckeElement":
        return self.times_Ts(s) + self.scale(V)

    def bar(self) -> "HeckeElement":
        return bar(self)

    def __repr__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: kv[0])
        return " + ".join(f"({c})T{x!r}" for x, c in items)


def mul_standard(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    out = HeckeElement(a.W)
    for y, c in b.terms.items():
        acc = a
        for s in y.word:
            acc = acc.times_Ts(s)
        out = out + acc.scale(c)
    return out


def bar(a: HeckeElement) -> HeckeElement:
    """``v -> v^-1`` and ``T_x -> T_{x^-1}^{-1}``."""
    W = a.W
    out = HeckeElement(W)
    shift = V - VINV
    for x, c in a.terms.items():
        acc = HeckeElement.T(W, W.identity())
        for s in x.word:
            acc = acc.times_Ts(s) + acc.scale(shift)
        out = out + acc.scale(c.bar())
    return out


def bs_character(W: CoxeterSystem, word) -> HeckeElement:
    """Class of the Bott-Samelson object: ``b_{s1} ... b_{sk}``."""
    acc = HeckeElement.T(W, W.identity())
    for s in word:
        acc = acc.times_bs(s)
    return acc


_KL_CACHE: Dict = {}


def kl_basis(W: CoxeterSystem, w: CoxeterElement) -> HeckeElement:
    """Kazhdan-Lusztig element ``b_w`` (memoized per system)."""
    key = (W.kind, W.n, w.window)
    got = _KL_CACHE.get(key)
    if got is not None:
        return got
    if w.length == 0:
        res = HeckeElement.T(W, W.identity())
    else:
        s = w.word[-1]
        u = W.right_mult(w, s)
        res = kl_basis(W, u).times_bs(s)
        # subtract mu(z,u) b_z for z < u with zs < z
        for z, h in kl_basis(W, u).terms.items():
            mu = h.coeff(1)
            if mu and z != u and W.is_right_descent(z, s):
                res = res - kl_basis(W, z).scale(mu)
    _KL_CACHE[key] = res
    return res


def kl_expand(a: HeckeElement) -> Dict[CoxeterElement, LaurentPoly]:
    """Coefficients ``c_x`` with ``a = sum c_x b_x``."""
    W = a.W
    rest = a
    out: Dict[CoxeterElement, LaurentPoly] = {}
    while rest.terms:
        x = max(rest.terms, key=lambda y: (y.length, y.word))
        c = rest.terms[x]
        out[x] = c
        rest = rest - kl_basis(W, x).scale(c)
    return out


def standard_pairing(a: HeckeElement, b: HeckeElement) -> LaurentPoly:
    """Bilinear form with the ``T_x`` orthonormal.

    On Bott-Samelson characters this is the graded count of double leaves.
    """
    out = ZERO
    for x, c in a.terms.items():
        d = b.terms.get(x)
        if d is not None:
            out = out + c * d
    return out


def is_bar_invariant(a: HeckeElement) -> bool:
    return bar(a) == a
