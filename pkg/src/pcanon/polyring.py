"""Polynomial ring of the gl_n and affine gl_n realizations.

Variables are ``x_1..x_n`` and, in the affine case, an extra ``y`` stored in
the last exponent slot.  Every variable has degree 2.  Coefficients are
Python integers, or residues mod ``p`` when ``p`` is given.

Affine permutations act by ``w.x_i = x_{w(i)}`` with ``x_{i+n} = x_i - y``;
this gives ``s_0(x_1) = x_n + y`` and ``s_0(x_n) = x_1 - y`` and
``alpha_0 = x_n - x_1 + y``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coxeter import AFFINE, FINITE, CoxeterElement, CoxeterSystem, system


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


class MultiPoly:
    """Sparse polynomial: ``{exponent tuple: coefficient}``."""

    __slots__ = ("nvars", "terms", "p", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None, p: Optional[int] = None):
        self.nvars = nvars
        self.p = p
        if p is None:
            self.terms = {k: v for k, v in (terms or {}).items() if v}
        else:
            self.terms = {k: v % p for k, v in (terms or {}).items() if v % p}
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, nvars, p=None):
        return cls(nvars, {}, p)

    @classmethod
    def const(cls, nvars, a, p=None):
        return cls(nvars, {(0,) * nvars: a}, p)

    @classmethod
    def var(cls, nvars, i, p=None):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, p)

    @classmethod
    def linear(cls, coeffs: Sequence[int], p=None):
        n = len(coeffs)
        t = {}
        for i, a in enumerate(coeffs):
            if a:
                e = [0] * n
                e[i] = 1
                t[tuple(e)] = a
        return cls(n, t, p)

    def _like(self, terms):
        return MultiPoly(self.nvars, terms, self.p)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(self.nvars, other, self.p)

    # arithmetic -------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, int):
                other = self._coerce(other)
            else:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({k: v * other for k, v in self.terms.items()})
        out: Dict[tuple, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(self.nvars, 1, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # inspection ---------------------------------------------------------------
    def degree(self) -> int:
        """Degree in the grading ``deg x_i = 2``; ``-1`` for zero."""
        if not self.terms:
            return -1
        return 2 * max(sum(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def is_constant(self) -> bool:
        return all(sum(k) == 0 for k in self.terms)

    def variables_used(self) -> set:
        return {i for k in self.terms for i, a in enumerate(k) if a}

    def reduce_mod_p(self, p: int) -> "MultiPoly":
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return MultiPoly(self.nvars, self.terms, p)

    def lift(self) -> "MultiPoly":
        return MultiPoly(self.nvars, self.terms, None)

    # substitution ---------------------------------------------------------------
    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Ring map sending variable ``i`` to ``images[i]``."""
        out = MultiPoly.zero(images[0].nvars if images else self.nvars, self.p)
        powcache: Dict[Tuple[int, int], MultiPoly] = {}
        acc: Dict[tuple, int] = {}
        for k, c in self.terms.items():
            term = MultiPoly.const(out.nvars, c, self.p)
            for i, a in enumerate(k):
                if a:
                    key = (i, a)
                    pw = powcache.get(key)
                    if pw is None:
                        pw = images[i] ** a
                        powcache[key] = pw
                    term = term * pw
            for kk, vv in term.terms.items():
                acc[kk] = acc.get(kk, 0) + vv
        return MultiPoly(out.nvars, acc, self.p)

    def divide_linear(self, lin: "MultiPoly") -> Optional["MultiPoly"]:
        """Exact quotient by a linear form with a unit coefficient, or None."""
        if not self.terms:
            return self
        piv = None
        for k, c in lin.terms.items():
            if c in (1, -1) or (self.p is not None and c % self.p):
                piv = k.index(1)
                break
        if piv is None:
            raise ValueError("linear form has no unit coefficient")
        a = lin.terms[tuple(1 if j == piv else 0 for j in range(self.nvars))]
        # lin = a*(x_piv - c)  with  c = -(lin - a x_piv)/a
        if self.p is None:
            if a not in (1, -1):
                raise ValueError("pivot coefficient must be +-1 over Z")
            ainv = a
        else:
            ainv = pow(a, -1, self.p)
        rest = self._like({k: v for k, v in lin.terms.items() if k[piv] == 0})
        cpoly = rest * (-ainv)
        # group by power of x_piv
        by_pow: Dict[int, Dict[tuple, int]] = {}
        for k, v in self.terms.items():
            d = k[piv]
            kk = k[:piv] + (0,) + k[piv + 1:]
            by_pow.setdefault(d, {})[kk] = v
        top = max(by_pow)
        coeffs = [self._like(by_pow.get(d, {})) for d in range(top + 1)]
        if top == 0:
            return None
        # synthetic division by (x_piv - c)
        q = [None] * top
        q[top - 1] = coeffs[top]
        for d in range(top - 1, 0, -1):
            q[d - 1] = coeffs[d] + cpoly * q[d]
        rem = coeffs[0] + cpoly * q[0]
        if rem.terms:
            return None
        out: Dict[tuple, int] = {}
        for d, qd in enumerate(q):
            for k, v in qd.terms.items():
                kk = k[:piv] + (d,) + k[piv + 1:]
                out[kk] = out.get(kk, 0) + v
        res = self._like(out)
        return res * ainv

    def __repr__(self):
        return poly_str(self)


def poly_str(f: MultiPoly, names: Sequence[str] | None = None) -> str:
    if not f.terms:
        return "0"
    if names is None:
        names = [f"x{i + 1}" for i in range(f.nvars)]
    parts = []
    for k in sorted(f.terms, reverse=True):
        c = f.terms[k]
        mon = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, k) if a)
        if not mon:
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{c}*{mon}")
    return " + ".join(parts).replace("+ -", "- ")


# --------------------------------------------------------------------------
# realizations


class Realization:
    """gl_n (finite) or affine gl_n realization of a type A Coxeter system."""

    def __init__(self, kind: str, n: int, p: Optional[int] = None):
        self.kind = kind
        self.n = n
        self.p = p
        self.W: CoxeterSystem = system(kind, n)
        self.nvars = n + 1 if kind == AFFINE else n
        self._act_cache: Dict = {}
        self._var_images: Dict = {}

    def __repr__(self):
        return f"Realization({self.kind!r}, {self.n})"

    @property
    def names(self) -> list:
        out = [f"x{i}" for i in range(1, self.n + 1)]
        if self.kind == AFFINE:
            out.append("y")
        return out

    def x(self, i: int) -> MultiPoly:
        """``x_i`` for any integer ``i`` (affine: ``x_{i+n} = x_i - y``)."""
        if self.kind == FINITE:
            if not 1 <= i <= self.n:
                raise ValueError("index out of range")
            return MultiPoly.var(self.nvars, i - 1, self.p)
        q, r = divmod(i - 1, self.n)
        coeffs = [0] * self.nvars
        coeffs[r] = 1
        coeffs[-1] = -q
        return MultiPoly.linear(coeffs, self.p)

    @property
    def y(self) -> MultiPoly:
        if self.kind != AFFINE:
            raise ValueError("finite realization has no y")
        return MultiPoly.var(self.nvars, self.n, self.p)

    def const(self, a: int) -> MultiPoly:
        return MultiPoly.const(self.nvars, a, self.p)

    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.nvars, self.p)

    def simple_root(self, s: int) -> MultiPoly:
        if s == 0:
            return self.x(self.n) - self.x(1) + self.y
        return self.x(s) - self.x(s + 1)

    def delta(self, s: int) -> MultiPoly:
        """Element with ``d_s(delta) = 1``: ``x_s`` (finite ``s``) or ``x_n`` (``s_0``)."""
        return self.x(self.n) if s == 0 else self.x(s)

    def coroot_pairing(self, j: int, s: int) -> int:
        """``<x_j, alpha_s^vee>`` as the integer ``d_s(x_j)``."""
        return self.demazure(s, self.x(j)).constant_term()

    # -- action -----------------------------------------------------------
    def var_images(self, w: CoxeterElement) -> list:
        key = w.window
        got = self._var_images.get(key)
        if got is None:
            got = [self.x(v) for v in w.window]
            if self.kind == AFFINE:
                got.append(self.y)
            self._var_images[key] = got
        return got

    def act(self, w: CoxeterElement, f: MultiPoly) -> MultiPoly:
        if not f.terms:
            return f
        if self.kind == FINITE:
            # pure permutation of exponents
            perm = w.window
            out = {}
            for k, c in f.terms.items():
                kk = [0] * self.n
                for i, a in enumerate(k):
                    kk[perm[i] - 1] = a
                out[tuple(kk)] = c
            return MultiPoly(self.nvars, out, f.p)
        return f.substitute(self.var_images(w))

    def act_gen(self, s: int, f: MultiPoly) -> MultiPoly:
        return self.act(self.W.gen(s), f)

    def act_linear_coeffs(self, w: CoxeterElement, coeffs: tuple) -> tuple:
        """Action on a linear form given by its coefficient vector."""
        out = [0] * self.nvars
        for i in range(self.n):
            a = coeffs[i]
            if a:
                q, r = divmod(w.window[i] - 1, self.n)
                out[r] += a
                if q:
                    out[-1] -= q * a
        if self.kind == AFFINE:
            out[-1] += coeffs[-1]
        return tuple(out)

    # -- Demazure operators ----------------------------------------------------
    def demazure(self, s: int, f: MultiPoly) -> MultiPoly:
        """``d_s f = (f - s f) / alpha_s``."""
        num = f - self.act_gen(s, f)
        q = num.divide_linear(self.simple_root(s))
        if q is None:
            raise ArithmeticError("Demazure division failed")
        return q

    def demazure_word(self, word: Sequence[int], f: MultiPoly, check_reduced: bool = True) -> MultiPoly:
        """``d_{s1} ... d_{sk} f`` (rightmost applied first)."""
        if check_reduced and not self.W.is_reduced(word):
            raise ValueError(f"word {tuple(word)} is not reduced")
        for s in reversed(tuple(word)):
            f = self.demazure(s, f)
        return f

    def demazure_element(self, w: CoxeterElement, f: MultiPoly) -> MultiPoly:
        return self.demazure_word(w.word, f, check_reduced=False)

    def frobenius_trace(self, I, J, f: MultiPoly) -> MultiPoly:
        """``d_I^J = d_{w_I^J}``, from ``R^J`` to ``R^I``."""
        I, J = frozenset(I), frozenset(J)
        if not J <= I:
            raise ValueError("need J <= I")
        for s in J:
            if self.act_gen(s, f) != f:
                raise ValueError(f"input is not s_{s}-invariant")
        return self.demazure_element(self.W.relative_longest(I, J), f)

    def is_invariant(self, I, f: MultiPoly) -> bool:
        return all(self.act_gen(s, f) == f for s in I)

    # -- roots ------------------------------------------------------------------
    def positive_roots(self, I) -> List[MultiPoly]:
        """Positive roots of the finite parabolic ``W_I``."""
        I = sorted(set(I))
        roots = []
        seen = set()
        for w in self.W.parabolic_elements(I):
            for s in I:
                if not self.W.is_right_descent(w, s):
                    r = self.act(w, self.simple_root(s))
                    if r not in seen:
                        seen.add(r)
                        roots.append(r)
        return roots

    def mu_invariant(self, I, J=()) -> MultiPoly:
        """Product of the positive roots of ``I`` that are not roots of ``J``."""
        J = set(J)
        if not J <= set(I):
            raise ValueError("need J <= I")
        rj = set(self.positive_roots(J)) if J else set()
        out = self.const(1)
        for r in self.positive_roots(I):
            if r not in rj:
                out = out * r
        return out

    def dual_bases(self, s: int):
        """Dual bases of R over R^s with respect to ``d_s``."""
        d = self.delta(s)
        one = self.const(1)
        return (d, one), (one, -self.act_gen(s, d))

    def coproduct(self, s: int):
        """``Delta_s = sum_i b_i (x) b_i^*`` as a list of tensor pairs."""
        b, bd = self.dual_bases(s)
        return list(zip(b, bd))

    def dual_bases_parabolic(self, I):
        """Dual bases of R over R^I for a finitary ``I`` (solved, see notes)."""
        return _dual_bases_parabolic(self, frozenset(I))

    # -- misc ----------------------------------------------------------------
    def variables_of(self, I) -> list:
        used = set()
        for s in I:
            used |= self.simple_root(s).variables_used()
        return sorted(used)

    def fmt(self, f: MultiPoly) -> str:
        return poly_str(f, self.names)


def _monomials(vars_: Sequence[int], nvars: int, degree: int) -> list:
    out = []
    for combo in combinations_with_replacement(vars_, degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _dual_bases_parabolic(R: Realization, I: frozenset):
    """Basis ``{d_u(rho)}`` of R over R^I and its dual basis under ``d_{w_I}``.

    ``rho`` is a monomial with ``d_{w_I}(rho) = +-1``; the dual basis is solved
    for over Q inside the span of monomials in the variables touched by ``I``
    and checked to be integral.
    """
    W = R.W
    wI = W.longest_element(I)
    L = wI.length
    if L == 0:
        one = R.const(1)
        return [one], [one]
    vars_ = R.variables_of(I)
    rho = None
    for e in _monomials(vars_, R.nvars, L):
        m = MultiPoly(R.nvars, {e: 1}, R.p)
        c = R.demazure_element(wI, m)
        if c.is_constant() and c.constant_term() in (1, -1):
            rho = m * c.constant_term()
            break
    if rho is None:
        raise ArithmeticError("no top class found")
    elems = W.parabolic_elements(I)
    basis = [R.demazure_element(u, rho) for u in elems]
    cand = []
    for d in range(L + 1):
        cand.extend(_monomials(vars_, R.nvars, d))
    mons = [MultiPoly(R.nvars, {e: 1}, R.p) for e in cand]
    # G[i][j] = d_{w_I}(b_i * m_j); solve for coefficients giving delta_ij
    G = [[R.demazure_element(wI, b * m) for m in mons] for b in basis]
    # each entry must be a constant once restricted appropriately; we
    # solve the linear system coefficientwise
    keys = sorted({k for row in G for g in row for k in g.terms})
    dual = []
    for i in range(len(basis)):
        rows, rhs = [], []
        for bi in range(len(basis)):
            for k in keys:
                rows.append([Fraction(G[bi][j].terms.get(k, 0)) for j in range(len(mons))])
                target = 1 if (bi == i and sum(k) == 0) else 0
                rhs.append(Fraction(target))
        sol = solve_linear(rows, rhs)
        if sol is None:
            raise ArithmeticError("dual basis system has no solution")
        if any(c.denominator != 1 for c in sol):
            raise ArithmeticError("dual basis is not integral")
        poly = R.zero()
        for c, m in zip(sol, mons):
            if c:
                poly = poly + m * int(c)
        dual.append(poly)
    return basis, dual


# --------------------------------------------------------------------------
# small exact linear algebra


def solve_linear(rows: List[List[Fraction]], rhs: List[Fraction]):
    """One solution of ``rows x = rhs`` over Q (free variables set to 0)."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, m) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        pv = A[r][c]
        A[r] = [a / pv for a in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if A[i][-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        x[c] = A[i][-1]
    return x


def nullspace(rows, ncols: int) -> List[List[Fraction]]:
    """Basis of the right kernel over Q.

    ``rows`` may be dense lists or sparse ``{column: value}`` dicts; the
    elimination is sparse (reduced echelon form kept incrementally).
    """
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for r in rows:
        if isinstance(r, dict):
            row = {c: Fraction(a) for c, a in r.items() if a}
        else:
            row = {c: Fraction(a) for c, a in enumerate(r) if a}
        for c in sorted(c for c in row if c in pivots):
            f = row.get(c)
            if f:
                for k, a in pivots[c].items():
                    nv = row.get(k, 0) - f * a
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        pc = min(row)
        pv = row[pc]
        row = {k: a / pv for k, a in row.items()}
        for prow in pivots.values():
            f = prow.get(pc)
            if f:
                for k, a in row.items():
                    nv = prow.get(k, 0) - f * a
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[pc] = row
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for pc, prow in pivots.items():
            a = prow.get(fc)
            if a:
                v[pc] = -a
        basis.append(v)
    return basis


def rank_mod(rows: List[List[int]], p: Optional[int]) -> int:
    """Rank over GF(p), or over Q when ``p`` is None."""
    if not rows:
        return 0
    if p is None:
        A = [[Fraction(a) for a in r] for r in rows]
    else:
        A = [[a % p for a in r] for r in rows]
    m, ncols = len(A), len(A[0])
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, m) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        if p is None:
            inv = 1 / A[r][c]
        else:
            inv = pow(A[r][c], -1, p)
        for i in range(r + 1, m):
            if A[i][c] != 0:
                f = A[i][c] * inv
                if p is None:
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
                else:
                    A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


# --------------------------------------------------------------------------
# symmetric functions


def symmetric(kind: str, degree: int, polys: Sequence[MultiPoly], nvars: int | None = None, p=None) -> MultiPoly:
    """Complete (``"h"``) or elementary (``"e"``) symmetric function of ``polys``."""
    if nvars is None:
        nvars = polys[0].nvars
    one = MultiPoly.const(nvars, 1, p)
    if degree < 0:
        return MultiPoly.zero(nvars, p)
    if degree == 0:
        return one
    out = MultiPoly.zero(nvars, p)
    if kind == "e":
        for combo in combinations(range(len(polys)), degree):
            t = one
            for i in combo:
                t = t * polys[i]
            out = out + t
        return out
    if kind == "h":
        for combo in combinations_with_replacement(range(len(polys)), degree):
            t = one
            for i in combo:
                t = t * polys[i]
            out = out + t
        return out
    raise ValueError("kind must be 'h' or 'e'")


# --------------------------------------------------------------------------
# localization at roots


def canonical_linear(coeffs: tuple) -> Tuple[tuple, int]:
    """Sign-normalize a linear form: first nonzero coefficient positive."""
    for a in coeffs:
        if a:
            if a > 0:
                return coeffs, 1
            return tuple(-b for b in coeffs), -1
    raise ZeroDivisionError("zero linear form")


def linear_coeffs(f: MultiPoly) -> tuple:
    out = [0] * f.nvars
    for k, c in f.terms.items():
        if sum(k) != 1:
            raise ValueError("not a linear form")
        out[k.index(1)] = c
    return tuple(out)


class RootFraction:
    """Element of R localized at linear forms: ``num / prod(roots)``.

    ``den`` is a Counter over sign-normalized coefficient tuples.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: Counter | None = None):
        self.num = num
        self.den = Counter(den or {})
        if not num.terms:
            self.den = Counter()

    @classmethod
    def poly(cls, f: MultiPoly) -> "RootFraction":
        return cls(f, Counter())

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def _root_poly(self, key) -> MultiPoly:
        return MultiPoly.linear(key, self.num.p)

    def simplify(self) -> "RootFraction":
        num = self.num
        den = Counter()
        for key, mult in self.den.items():
            lin = self._root_poly(key)
            k = mult
            while k:
                q = num.divide_linear(lin)
                if q is None:
                    break
                num = q
                k -= 1
            if k:
                den[key] = k
        return RootFraction(num, den)

    def __add__(self, other: "RootFraction") -> "RootFraction":
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return RootFraction(self.num + other.num, self.den)
        common = self.den | other.den
        a = self.num
        for key, m in (common - self.den).items():
            a = a * (self._root_poly(key) ** m)
        b = other.num
        for key, m in (common - other.den).items():
            b = b * (self._root_poly(key) ** m)
        return RootFraction(a + b, common)

    def __neg__(self):
        return RootFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return RootFraction(self.num * other, self.den)
        if isinstance(other, int):
            return RootFraction(self.num * other, self.den)
        return RootFraction(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def divide_root(self, f: MultiPoly) -> "RootFraction":
        key, sign = canonical_linear(linear_coeffs(f))
        d = Counter(self.den)
        d[key] += 1
        return RootFraction(self.num * sign, d)

    def act(self, R: Realization, w: CoxeterElement) -> "RootFraction":
        num = R.act(w, self.num)
        den = Counter()
        sign = 1
        for key, m in self.den.items():
            k2, sg = canonical_linear(R.act_linear_coeffs(w, key))
            den[k2] += m
            if sg < 0 and m % 2:
                sign = -sign
        return RootFraction(num * sign if sign < 0 else num, den)

    def to_poly(self) -> Optional[MultiPoly]:
        s = self.simplify()
        return s.num if not s.den else None

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        def ev(f):
            tot = Fraction(0)
            for k, c in f.terms.items():
                t = Fraction(c)
                for x, a in zip(point, k):
                    if a:
                        t *= x ** a
                tot += t
            return tot

        out = ev(self.num)
        for key, m in self.den.items():
            out /= ev(MultiPoly.linear(key)) ** m
        return out

    def __repr__(self):
        if not self.den:
            return f"({self.num})"
        return f"({self.num})/{dict(self.den)}"
