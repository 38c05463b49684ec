"""Finite and affine type A Coxeter groups.

Elements are stored as (affine) permutations in window notation, i.e. the
tuple ``(w(1), ..., w(n))`` with the convention ``w(i + n) = w(i) + n``.
For the finite kind the window is an honest permutation of ``1..n``.

Generators are indexed by integers: ``1..n-1`` for ``S_n`` and ``0..n-1``
for the affine group, where ``s_0`` swaps the positions ``0`` and ``1``
(periodically).  The canonical word of an element is its shortlex-minimal
reduced word.

Bruhat order here is always the *standard* one (identity is the minimum);
``inverse_bruhat_leq`` is the adapter for formulas stated with the
identity as maximum.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

FINITE = "finite"
AFFINE = "affine"


@dataclass(frozen=True)
class CoxeterElement:
    """An element of a type A Coxeter group, keyed by its window."""

    window: tuple
    system: "CoxeterSystem" = field(compare=False, repr=False, hash=False)

    def __mul__(self, other: "CoxeterElement") -> "CoxeterElement":
        return self.system.multiply(self, other)

    def __lt__(self, other):  # used only for deterministic sorting
        return (self.length, self.word) < (other.length, other.word)

    @property
    def length(self) -> int:
        return self.system.length(self)

    @property
    def word(self) -> tuple:
        return self.system.canonical_word(self)

    def inverse(self) -> "CoxeterElement":
        return self.system.inverse(self)

    def __repr__(self):
        w = "".join(str(i) for i in self.word) if self.word else "e"
        return f"<{w}>"


class CoxeterSystem:
    """Type A Coxeter system; ``kind`` is ``"finite"`` (S_n) or ``"affine"``."""

    def __init__(self, kind: str, n: int):
        if kind not in (FINITE, AFFINE):
            raise ValueError(f"unknown kind {kind!r}")
        if kind == FINITE and n < 1:
            raise ValueError("finite rank must be >= 1")
        if kind == AFFINE and n < 2:
            raise ValueError("affine rank must be >= 2")
        self.kind = kind
        self.n = n
        self.generators = tuple(range(1, n)) if kind == FINITE else tuple(range(n))
        self._len_cache: dict = {}
        self._word_cache: dict = {}
        self._leq_cache: dict = {}

    # -- basic data -----------------------------------------------------
    def __repr__(self):
        return f"CoxeterSystem({self.kind!r}, {self.n})"

    def __eq__(self, other):
        return isinstance(other, CoxeterSystem) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    @property
    def is_affine(self) -> bool:
        return self.kind == AFFINE

    def coxeter_m(self, s: int, t: int) -> int:
        """Coxeter matrix entry; ``0`` encodes infinity."""
        if s == t:
            return 1
        if self.kind == AFFINE and self.n == 2:
            return 0
        d = abs(s - t)
        if self.kind == AFFINE:
            d = min(d, self.n - d)
        return 3 if d == 1 else 2

    def identity(self) -> CoxeterElement:
        return CoxeterElement(tuple(range(1, self.n + 1)), self)

    def gen(self, s: int) -> CoxeterElement:
        if s not in self.generators:
            raise ValueError(f"s_{s} is not a generator of {self}")
        w = list(range(1, self.n + 1))
        if s == 0:
            w[0], w[-1] = 0, self.n + 1
        else:
            w[s - 1], w[s] = w[s], w[s - 1]
        return CoxeterElement(tuple(w), self)

    def element(self, word: Iterable[int]) -> CoxeterElement:
        """Product ``s_{i1} s_{i2} ... s_{ik}`` of a word."""
        w = self.identity()
        for s in word:
            w = self.right_mult(w, s)
        return w

    # -- permutation arithmetic ----------------------------------------
    def _val(self, win, i):
        n = self.n
        q, r = divmod(i - 1, n)
        return win[r] + q * n

    def multiply(self, a: CoxeterElement, b: CoxeterElement) -> CoxeterElement:
        return CoxeterElement(tuple(self._val(a.window, b.window[i]) for i in range(self.n)), self)

    def inverse(self, a: CoxeterElement) -> CoxeterElement:
        n = self.n
        inv = [0] * n
        for i, v in enumerate(a.window, start=1):
            q, r = divmod(v - 1, n)
            inv[r] = i - q * n
        return CoxeterElement(tuple(inv), self)

    def right_mult(self, w: CoxeterElement, s: int) -> CoxeterElement:
        """``w s``: swap the values at positions ``s`` and ``s + 1``."""
        win = list(w.window)
        if s == 0:
            a, b = win[0], win[-1]
            win[0], win[-1] = b - self.n, a + self.n
        else:
            win[s - 1], win[s] = win[s], win[s - 1]
        return CoxeterElement(tuple(win), self)

    def left_mult(self, s: int, w: CoxeterElement) -> CoxeterElement:
        return self.multiply(self.gen(s), w)

    # -- length and descents -------------------------------------------
    def length(self, w: CoxeterElement) -> int:
        win = w.window
        got = self._len_cache.get(win)
        if got is not None:
            return got
        n = self.n
        if self.kind == FINITE:
            ell = sum(1 for i, j in combinations(range(n), 2) if win[i] > win[j])
        else:
            # Shi's inversion formula for affine permutations
            ell = sum(abs((win[j] - win[i]) // n) for i, j in combinations(range(n), 2))
        self._len_cache[win] = ell
        return ell

    def is_right_descent(self, w: CoxeterElement, s: int) -> bool:
        win = w.window
        if s == 0:
            return win[-1] - self.n > win[0]
        return win[s - 1] > win[s]

    def is_left_descent(self, s: int, w: CoxeterElement) -> bool:
        return self.is_right_descent(self.inverse(w), s)

    def right_descents(self, w) -> tuple:
        return tuple(s for s in self.generators if self.is_right_descent(w, s))

    def left_descents(self, w) -> tuple:
        wi = self.inverse(w)
        return tuple(s for s in self.generators if self.is_right_descent(wi, s))

    # -- words ------------------------------------------------------------
    def canonical_word(self, w: CoxeterElement) -> tuple:
        """Shortlex-minimal reduced word.

        Peeling off the smallest left descent at each step gives the
        lexicographically smallest reduced word.
        """
        win = w.window
        got = self._word_cache.get(win)
        if got is not None:
            return got
        word = []
        cur = w
        while self.length(cur) > 0:
            s = self.left_descents(cur)[0]
            word.append(s)
            cur = self.left_mult(s, cur)
        word = tuple(word)
        self._word_cache[win] = word
        return word

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.length(self.element(word)) == len(word)

    def reduced_words(self, w: CoxeterElement) -> list:
        """All reduced words of ``w`` (sorted)."""
        out = []

        def rec(cur, suffix):
            if self.length(cur) == 0:
                out.append(tuple(suffix))
                return
            for s in self.right_descents(cur):
                rec(self.right_mult(cur, s), [s] + suffix)

        rec(w, [])
        return sorted(set(out))

    # -- enumeration ------------------------------------------------------
    def enumerate_up_to_length(self, L: int) -> Iterator[CoxeterElement]:
        """Each element of length <= L exactly once, by increasing length."""
        layer = [self.identity()]
        seen = {layer[0].window}
        for k in range(L + 1):
            yield from sorted(layer, key=lambda x: x.word)
            if k == L:
                break
            nxt = []
            for w in layer:
                for s in self.generators:
                    if not self.is_right_descent(w, s):
                        ws = self.right_mult(w, s)
                        if ws.window not in seen:
                            seen.add(ws.window)
                            nxt.append(ws)
            if not nxt:
                break
            layer = nxt

    def elements(self) -> list:
        if self.kind == AFFINE:
            raise ValueError("affine group is infinite")
        return list(self.enumerate_up_to_length(self.n * (self.n - 1) // 2))

    # -- Bruhat order -----------------------------------------------------
    def bruhat_leq(self, a: CoxeterElement, b: CoxeterElement) -> bool:
        """Standard Bruhat order via the descent recursion (lifting property)."""
        key = (a.window, b.window)
        got = self._leq_cache.get(key)
        if got is not None:
            return got
        la, lb = self.length(a), self.length(b)
        if la > lb:
            res = False
        elif lb == 0:
            res = la == 0
        elif la == lb:
            res = a.window == b.window
        else:
            s = self.right_descents(b)[0]
            bs = self.right_mult(b, s)
            if self.is_right_descent(a, s):
                res = self.bruhat_leq(self.right_mult(a, s), bs)
            else:
                res = self.bruhat_leq(a, bs)
        self._leq_cache[key] = res
        return res

    def inverse_bruhat_leq(self, a, b) -> bool:
        """Order with the identity as the maximal element."""
        return self.bruhat_leq(b, a)

    def lower_interval(self, w: CoxeterElement) -> list:
        """All ``x <= w``, from subwords of a reduced word."""
        cur = {self.identity().window: self.identity()}
        for s in w.word:
            for x in list(cur.values()):
                xs = self.right_mult(x, s)
                cur.setdefault(xs.window, xs)
        return sorted(cur.values())

    def interval(self, u, w) -> list:
        return [x for x in self.lower_interval(w) if self.bruhat_leq(u, x)]

    # -- parabolics -------------------------------------------------------
    def is_finitary(self, I: Iterable[int]) -> bool:
        I = frozenset(I)
        return self.kind == FINITE or len(I) < self.n

    def parabolic_elements(self, I: Iterable[int]) -> list:
        I = tuple(sorted(set(I)))
        if not self.is_finitary(I):
            raise ValueError(f"parabolic {I} is not finitary")
        out = {self.identity().window: self.identity()}
        frontier = list(out.values())
        while frontier:
            nxt = []
            for w in frontier:
                for s in I:
                    ws = self.right_mult(w, s)
                    if ws.window not in out:
                        out[ws.window] = ws
                        nxt.append(ws)
            frontier = nxt
        return sorted(out.values())

    def longest_element(self, I: Iterable[int]) -> CoxeterElement:
        """``w_I``; raises for non-finitary ``I``."""
        I = tuple(sorted(set(I)))
        if not self.is_finitary(I):
            raise ValueError(f"parabolic {I} is not finitary")
        w = self.identity()
        while True:
            for s in I:
                if not self.is_right_descent(w, s):
                    w = self.right_mult(w, s)
                    break
            else:
                return w

    def relative_longest(self, I, J) -> CoxeterElement:
        """``w_I^J = w_I w_J^{-1}``; lengths add."""
        I, J = set(I), set(J)
        if not J <= I:
            raise ValueError("J must be a subset of I")
        return self.multiply(self.longest_element(I), self.inverse(self.longest_element(J)))

    def coset_minimal(self, w: CoxeterElement, I, side: str = "left", J=()) -> "Coset":
        """Minimal representative of ``W_I w`` (left), ``w W_I`` (right) or ``W_I w W_J``."""
        I = frozenset(I)
        J = frozenset(J)
        if not self.is_finitary(I) or not self.is_finitary(J):
            raise ValueError("parabolic subsets must be finitary")
        cur = w
        changed = True
        while changed:
            changed = False
            if side in ("left", "double"):
                for s in I:
                    if self.is_left_descent(s, cur):
                        cur = self.left_mult(s, cur)
                        changed = True
            if side == "right":
                for s in I:
                    if self.is_right_descent(cur, s):
                        cur = self.right_mult(cur, s)
                        changed = True
            if side == "double":
                for s in J:
                    if self.is_right_descent(cur, s):
                        cur = self.right_mult(cur, s)
                        changed = True
        parab = (I,) if side != "double" else (I, J)
        return Coset(side, parab, cur)

    def coset_maximal(self, w, I, side: str = "left") -> CoxeterElement:
        """Longest element of ``W_I w`` (left) or ``w W_I`` (right)."""
        I = frozenset(I)
        cur = w
        changed = True
        while changed:
            changed = False
            for s in I:
                if side == "left" and not self.is_left_descent(s, cur):
                    cur = self.left_mult(s, cur)
                    changed = True
                elif side == "right" and not self.is_right_descent(cur, s):
                    cur = self.right_mult(cur, s)
                    changed = True
        return cur

    def coset_elements(self, w, I, side: str = "left") -> list:
        WI = self.parabolic_elements(I)
        if side == "left":
            return sorted({self.multiply(u, w).window: self.multiply(u, w) for u in WI}.values())
        return sorted({self.multiply(w, u).window: self.multiply(w, u) for u in WI}.values())

    # -- action on Z^n ---------------------------------------------------------
    def act_on_weight(self, w: CoxeterElement, lam: Sequence[int], e: int = 0) -> tuple:
        """Left action on ``Z^n``: ``(w.lam)_{w(i)} = lam_i`` with ``lam_{i+n} = lam_i + e``.

        For ``s_0`` this reads ``(lam_n - e, lam_2, ..., lam_{n-1}, lam_1 + e)``.
        """
        n = self.n
        if len(lam) != n:
            raise ValueError("weight has wrong length")
        out = [None] * n
        for i in range(1, n + 1):
            q, r = divmod(w.window[i - 1] - 1, n)
            out[r] = lam[i - 1] - q * e
        return tuple(out)


@dataclass(frozen=True)
class Coset:
    side: str
    parabolics: tuple
    representative: CoxeterElement


@lru_cache(maxsize=None)
def system(kind: str, n: int) -> CoxeterSystem:
    """Shared system instance (keeps memo tables warm)."""
    return CoxeterSystem(kind, n)
