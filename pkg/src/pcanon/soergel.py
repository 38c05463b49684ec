"""Light leaves, intersection forms and the p-canonical basis.

Everything is computed after localization: a Bott-Samelson object
``BS(w)`` becomes a direct sum of standard objects indexed by the
subexpressions ``e`` of ``w``, with coordinate

    p_e(f_0 (x) f_1 (x) ... (x) f_k) = f_0 * x_1(f_1) * ... * x_k(f_k),

where ``x_j`` is the running product of the chosen letters.  A morphism is
then a matrix ``M[g, e]`` over the fraction field which vanishes unless the
two subexpressions end at the same element.  Tensoring with an identity on
the left twists entries by the element of the left subexpression.

Light-leaf degrees: U0 -> +1, D0 -> -1, U1/D1 -> 0.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .coxeter import CoxeterElement, CoxeterSystem
from .hecke import HeckeElement, LaurentPoly, bs_character, kl_basis, ZERO
from .polyring import (MultiPoly, Realization, RootFraction, nullspace, rank_mod)


# --------------------------------------------------------------------------
# subexpressions


@dataclass(frozen=True)
class Subexpression:
    word: tuple
    bits: tuple
    decorations: tuple
    target: CoxeterElement = field(compare=False)
    defect: int = field(compare=False)

    def __repr__(self):
        return f"Subexpression({''.join(map(str, self.bits))}: {' '.join(self.decorations)})"


def decorate(W: CoxeterSystem, word: Sequence[int], bits: Sequence[int]) -> Subexpression:
    x = W.identity()
    decs = []
    defect = 0
    for s, b in zip(word, bits):
        up = not W.is_right_descent(x, s)
        d = ("U" if up else "D") + str(b)
        decs.append(d)
        if d == "U0":
            defect += 1
        elif d == "D0":
            defect -= 1
        if b:
            x = W.right_mult(x, s)
    return Subexpression(tuple(word), tuple(bits), tuple(decs), x, defect)


def subexpressions(W: CoxeterSystem, word: Sequence[int], x: Optional[CoxeterElement] = None) -> List[Subexpression]:
    """All decorated subexpressions of ``word``, optionally with target ``x``."""
    out = []
    for bits in product((0, 1), repeat=len(word)):
        e = decorate(W, word, bits)
        if x is None or e.target == x:
            out.append(e)
    return out


# --------------------------------------------------------------------------
# local morphisms


@dataclass
class LocalMap:
    """Morphism ``BS(src) -> BS(tgt)`` as a sparse localized matrix."""

    name: str
    src: tuple
    tgt: tuple
    entries: Dict[Tuple[tuple, tuple], RootFraction]
    degree: int
    flip_key: tuple = ()


class SoergelContext:
    """Localized calculus for one realization (and coefficient field)."""

    def __init__(self, R: Realization):
        self.R = R
        self.W = R.W
        self._elem_cache: Dict[tuple, CoxeterElement] = {}
        self._local: Dict[tuple, LocalMap] = {}
        self._paths: Dict[tuple, list] = {}
        self._leaf_cache: Dict[tuple, list] = {}

    # ---- basic data -------------------------------------------------------
    def elem_of(self, word: tuple, bits: tuple) -> CoxeterElement:
        key = (word, bits)
        got = self._elem_cache.get(key)
        if got is None:
            got = self.W.element(s for s, b in zip(word, bits) if b)
            self._elem_cache[key] = got
        return got

    def one(self) -> RootFraction:
        return RootFraction.poly(self.R.const(1))

    def rf(self, f: MultiPoly) -> RootFraction:
        return RootFraction.poly(f)

    # ---- generators -------------------------------------------------------------
    def local(self, name: str, *args) -> LocalMap:
        key = (name,) + args
        got = self._local.get(key)
        if got is not None:
            return got
        R = self.R
        one = self.one()
        if name == "enddot":
            (s,) = args
            m = LocalMap(name, (s,), (), {((), (0,)): one}, 1, ("startdot", s))
        elif name == "startdot":
            (s,) = args
            m = LocalMap(name, (), (s,), {((0,), ()): self.rf(R.simple_root(s))}, 1, ("enddot", s))
        elif name == "merge":
            (s,) = args
            a = R.simple_root(s)
            inv = RootFraction(R.const(1)).divide_root(a)
            m = LocalMap(name, (s, s), (s,), {
                ((0,), (0, 0)): inv, ((0,), (1, 1)): -inv,
                ((1,), (0, 1)): inv, ((1,), (1, 0)): -inv}, -1, ("split", s))
        elif name == "split":
            (s,) = args
            m = LocalMap(name, (s,), (s, s), {
                ((0, 0), (0,)): one, ((1, 1), (0,)): one,
                ((0, 1), (1,)): one, ((1, 0), (1,)): one}, -1, ("merge", s))
        elif name == "braid":
            s, t, mst = args
            m = self._solve_braid(s, t, mst)
        else:
            raise ValueError(name)
        self._local[key] = m
        return m

    def flip(self, m: LocalMap) -> LocalMap:
        if m.name == "braid":
            s, t, mst = m.flip_key
            return self.local("braid", s, t, mst)
        return self.local(*m.flip_key)

    # ---- braid morphisms ----------------------------------------------------------
    def _tensor_basis_matrix(self, word: tuple) -> Dict[Tuple[tuple, tuple], MultiPoly]:
        """``U[e, g] = p_e(1 (x) g_1 (x) ... (x) g_k)``, g_j in {1, delta}."""
        R = self.R
        out = {}
        for e in product((0, 1), repeat=len(word)):
            for g in product((0, 1), repeat=len(word)):
                val = R.const(1)
                for j in range(len(word)):
                    if g[j]:
                        xj = self.elem_of(word[: j + 1], e[: j + 1])
                        val = val * R.act(xj, R.delta(word[j]))
                out[(e, g)] = val
        return out

    def _tensor_basis_inverse(self, word: tuple) -> Dict[Tuple[tuple, tuple], RootFraction]:
        """``U^{-1}`` from ``U_{ws} = P (U_w (x) I_2)``."""
        R = self.R
        inv = {((), ()): self.one()}
        for j in range(len(word)):
            s = word[j]
            prefix = word[:j]
            new = {}
            # P^{-1} blocks: V_e^{-1} with V_e = [[1, e(d)], [1, e(s d)]]
            pinv = {}
            for e in product((0, 1), repeat=j):
                x = self.elem_of(prefix, e)
                d0 = R.act(x, R.delta(s))
                d1 = R.act(x, R.act_gen(s, R.delta(s)))
                det = d1 - d0  # = -x(alpha_s)
                base = RootFraction(R.const(1)).divide_root(det)
                pinv[e] = {(0, 0): base * d1, (0, 1): base * (-d0),
                           (1, 0): -base, (1, 1): base}
            # (U_w^{-1} (x) I_2) * P^{-1}
            for (g, e), val in inv.items():
                for c in (0, 1):
                    for b in (0, 1):
                        ent = pinv[e].get((c, b))
                        if ent is None or ent.is_zero():
                            continue
                        key = (g + (c,), e + (b,))
                        prod_ = val * ent
                        if key in new:
                            new[key] = new[key] + prod_
                        else:
                            new[key] = prod_
            inv = {k: v.simplify() for k, v in new.items() if not v.is_zero()}
        return inv

    def _solve_braid(self, s: int, t: int, mst: int) -> LocalMap:
        """Degree-zero morphism ``BS(s,t,..) -> BS(t,s,..)`` with top entry 1."""
        R = self.R
        if mst not in (2, 3):
            raise ValueError("only m in {2,3} occurs in type A")
        src = tuple((s, t)[i % 2] for i in range(mst))
        tgt = tuple((t, s)[i % 2] for i in range(mst))
        k = mst
        Usrc_inv = self._tensor_basis_inverse(src)
        Utgt = self._tensor_basis_matrix(tgt)
        vars_ = sorted(R.variables_of([s, t]))
        bits = list(product((0, 1), repeat=k))
        # clear denominators column by column of U_src^{-1}
        adj: Dict[tuple, Dict[tuple, MultiPoly]] = {}
        for e in bits:
            col = {g: Usrc_inv[(g, e)] for g in bits if (g, e) in Usrc_inv}
            den = Counter()
            for v in col.values():
                den = den | v.den
            adj[e] = {}
            for g, v in col.items():
                num = v.num
                for key, mlt in (den - v.den).items():
                    num = num * (MultiPoly.linear(key, R.p) ** mlt)
                adj[e][g] = num
        # unknowns: coefficients of monomials in T[h, g]
        unknowns = []
        for h in bits:
            for g in bits:
                d = sum(g) - sum(h)
                if d < 0:
                    continue
                for mono in _monomials(vars_, R.nvars, d):
                    unknowns.append((h, g, mono))
        elem_src = {e: self.elem_of(src, e) for e in bits}
        elem_tgt = {e: self.elem_of(tgt, e) for e in bits}
        # equations: off-block entries of U_tgt T adj vanish
        eqs: Dict[tuple, Dict[int, Fraction]] = {}
        for ui, (h, g, mono) in enumerate(unknowns):
            mpoly = MultiPoly(R.nvars, {mono: 1}, R.p)
            for e in bits:
                a = adj[e].get(g)
                if a is None or a.is_zero():
                    continue
                ma = mpoly * a
                for ep in bits:
                    if elem_tgt[ep] == elem_src[e]:
                        continue
                    u = Utgt[(ep, h)]
                    if u.is_zero():
                        continue
                    val = u * ma
                    for mon, c in val.terms.items():
                        row = eqs.setdefault((ep, e, mon), {})
                        row[ui] = row.get(ui, 0) + c
        rows = [r for r in eqs.values() if any(r.values())]
        ker = nullspace(rows, len(unknowns))
        if len(ker) != 1:
            raise ArithmeticError(f"braid solve for ({s},{t}) has {len(ker)}-dimensional solution space")
        sol = ker[0]
        # T as polynomials
        T: Dict[tuple, MultiPoly] = {}
        for c, (h, g, mono) in zip(sol, unknowns):
            if c:
                if c.denominator != 1:
                    # rescale later; keep rational by clearing the lcm
                    pass
        lcm = 1
        for c in sol:
            lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
        for c, (h, g, mono) in zip(sol, unknowns):
            if c:
                T[(h, g)] = T.get((h, g), R.zero()) + MultiPoly(R.nvars, {mono: int(c * lcm)}, R.p)
        # M = U_tgt T U_src^{-1}
        UT: Dict[tuple, MultiPoly] = {}
        for ep in bits:
            for g in bits:
                acc = R.zero()
                for h in bits:
                    tv = T.get((h, g))
                    if tv is not None:
                        acc = acc + Utgt[(ep, h)] * tv
                if not acc.is_zero():
                    UT[(ep, g)] = acc
        M: Dict[tuple, RootFraction] = {}
        for (ep, g), a in UT.items():
            for e in bits:
                v = Usrc_inv.get((g, e))
                if v is None:
                    continue
                term = v * a
                M[(ep, e)] = M[(ep, e)] + term if (ep, e) in M else term
        M = {k: v.simplify() for k, v in M.items() if not v.simplify().is_zero()}
        for (ep, e) in M:
            if elem_tgt[ep] != elem_src[e]:
                raise ArithmeticError("braid solution is not block diagonal")
        top = tuple([1] * k)
        tv = M[(top, top)]
        if not tv.den and tv.num.is_constant():
            scale = Fraction(tv.num.constant_term())
        else:
            raise ArithmeticError("top entry of braid morphism is not a constant")
        out = {}
        for key, v in M.items():
            num = v.num
            # divide by the scalar exactly
            new_terms = {}
            for mon, c in num.terms.items():
                q = Fraction(c) / scale
                if q.denominator != 1:
                    raise ArithmeticError("braid normalization is not integral")
                new_terms[mon] = int(q)
            out[key] = RootFraction(MultiPoly(R.nvars, new_terms, R.p), v.den)
        return LocalMap("braid", src, tgt, out, 0, (t, s, mst))

    # ---- rex moves ------------------------------------------------------------------
    def braid_neighbors(self, word: tuple):
        W = self.W
        for i in range(len(word) - 1):
            s, t = word[i], word[i + 1]
            if s == t:
                continue
            m = W.coxeter_m(s, t)
            if m == 2:
                yield i, (s, t, 2), word[:i] + (t, s) + word[i + 2:]
            elif m == 3 and i + 2 < len(word) and word[i + 2] == s:
                yield i, (s, t, 3), word[:i] + (t, s, t) + word[i + 3:]

    def rex_path(self, a: tuple, goal) -> list:
        """Shortest braid-move path from ``a`` to a word satisfying ``goal``.

        ``goal`` is either a target word or a predicate.  Returns the list of
        ``(position, (s, t, m))`` moves.
        """
        pred = goal if callable(goal) else (lambda w, g=tuple(goal): w == g)
        key = (a, goal if not callable(goal) else None)
        if key[1] is not None and key in self._paths:
            return self._paths[key]
        prev = {a: None}
        dq = deque([a])
        found = None
        while dq:
            w = dq.popleft()
            if pred(w):
                found = w
                break
            for i, mv, w2 in self.braid_neighbors(w):
                if w2 not in prev:
                    prev[w2] = (w, i, mv)
                    dq.append(w2)
        if found is None:
            raise ArithmeticError(f"no rex move from {a}")
        path = []
        w = found
        while prev[w] is not None:
            w0, i, mv = prev[w]
            path.append((i, mv, w0, w))
            w = w0
        path.reverse()
        if key[1] is not None:
            self._paths[key] = path
        return path

    def rex_steps(self, a: tuple, goal) -> Tuple[list, tuple]:
        steps = []
        path = self.rex_path(a, goal)
        end = a
        for i, (s, t, m), w0, w1 in path:
            steps.append((self.local("braid", s, t, m), i))
            end = w1
        return steps, end

    # ---- light leaves -------------------------------------------------------------
    def light_leaf_steps(self, e: Subexpression) -> list:
        """Sequence of ``(LocalMap, position)`` realizing ``LL_e``.

        Applied in order to ``BS(word)``; ends at the canonical word of the target.
        """
        W = self.W
        word = e.word
        steps = []
        y = W.identity()
        for j, (s, b, dec) in enumerate(zip(word, e.bits, e.decorations)):
            ry = y.word
            if dec == "U1":
                ys = W.right_mult(y, s)
                st, _ = self.rex_steps(ry + (s,), ys.word)
                steps += st
                y = ys
            elif dec == "U0":
                steps.append((self.local("enddot", s), len(ry)))
            else:
                st, yw = self.rex_steps(ry, lambda w, s=s: w[-1] == s)
                steps += st
                z = yw[:-1]
                steps.append((self.local("merge", s), len(z)))
                if dec == "D1":
                    steps.append((self.local("enddot", s), len(z)))
                    zel = W.right_mult(y, s)
                    st2, _ = self.rex_steps(z, zel.word)
                    steps += st2
                    y = zel
                else:
                    st2, _ = self.rex_steps(z + (s,), ry)
                    steps += st2
        return steps

    def _prefix_elem(self, word: tuple, bits: tuple) -> CoxeterElement:
        return self.elem_of(word, bits)

    def row_through(self, row: Dict[tuple, RootFraction], m: LocalMap, pos: int, src_word: tuple) -> Dict[tuple, RootFraction]:
        """``row * (id_A (x) m (x) id_B)``; ``row`` is indexed by target bits."""
        R = self.R
        la, ls, lt = pos, len(m.src), len(m.tgt)
        A = src_word[:pos]
        by_g: Dict[tuple, list] = {}
        for (g, e), v in m.entries.items():
            by_g.setdefault(g, []).append((e, v))
        out: Dict[tuple, RootFraction] = {}
        twisted: Dict[tuple, RootFraction] = {}
        for bits, r in row.items():
            a, g, b = bits[:la], bits[la:la + lt], bits[la + lt:]
            lst = by_g.get(g)
            if not lst:
                continue
            x = self._prefix_elem(A, a)
            for e, v in lst:
                tk = (x.window, g, e)
                tv = twisted.get(tk)
                if tv is None:
                    tv = v.act(R, x) if x.length else v
                    twisted[tk] = tv
                key = a + e + b
                val = r * tv
                out[key] = out[key] + val if key in out else val
        return {k: v for k, v in out.items() if not v.is_zero()}

    def col_through(self, col: Dict[tuple, RootFraction], m: LocalMap, pos: int, tgt_word: tuple) -> Dict[tuple, RootFraction]:
        """``(id_A (x) m (x) id_B) * col``; ``col`` is indexed by source bits."""
        R = self.R
        la, ls, lt = pos, len(m.src), len(m.tgt)
        A = tgt_word[:pos]
        by_e: Dict[tuple, list] = {}
        for (g, e), v in m.entries.items():
            by_e.setdefault(e, []).append((g, v))
        out: Dict[tuple, RootFraction] = {}
        twisted: Dict[tuple, RootFraction] = {}
        for bits, c in col.items():
            a, e, b = bits[:la], bits[la:la + ls], bits[la + ls:]
            lst = by_e.get(e)
            if not lst:
                continue
            x = self._prefix_elem(A, a)
            for g, v in lst:
                tk = (x.window, g, e)
                tv = twisted.get(tk)
                if tv is None:
                    tv = v.act(R, x) if x.length else v
                    twisted[tk] = tv
                key = a + g + b
                val = tv * c
                out[key] = out[key] + val if key in out else val
        return {k: v for k, v in out.items() if not v.is_zero()}

    def _words_along(self, word: tuple, steps: list) -> list:
        words = [word]
        for m, pos in steps:
            w = words[-1]
            if w[pos:pos + len(m.src)] != m.src:
                raise AssertionError(f"step {m.name} does not match word {w} at {pos}")
            words.append(w[:pos] + m.tgt + w[pos + len(m.src):])
        return words

    def leaf_row(self, e: Subexpression) -> Dict[tuple, RootFraction]:
        """Top row of ``LL_e``: a covector on ``BS(word)``."""
        steps = self.light_leaf_steps(e)
        words = self._words_along(e.word, steps)
        top = tuple([1] * len(words[-1]))
        row = {top: self.one()}
        for (m, pos), w in zip(reversed(steps), reversed(words[:-1])):
            row = self.row_through(row, m, pos, w)
        return row

    def leaf_col(self, f: Subexpression) -> Dict[tuple, RootFraction]:
        """``flip(LL_f)`` applied to the top basis vector of the target."""
        steps = self.light_leaf_steps(f)
        words = self._words_along(f.word, steps)
        top = tuple([1] * len(words[-1]))
        col = {top: self.one()}
        for (m, pos), w in zip(reversed(steps), reversed(words[:-1])):
            fm = self.flip(m)
            col = self.col_through(col, fm, pos, w)
        return col

    def light_leaf(self, e: Subexpression) -> Dict[Tuple[tuple, tuple], RootFraction]:
        """Full localized matrix of ``LL_e``: ``BS(word) -> BS(rex(target))``."""
        steps = self.light_leaf_steps(e)
        words = self._words_along(e.word, steps)
        out = {}
        for g in product((0, 1), repeat=len(words[-1])):
            row = {g: self.one()}
            for (m, pos), w in zip(reversed(steps), reversed(words[:-1])):
                row = self.row_through(row, m, pos, w)
            for col, v in row.items():
                v = v.simplify()
                if not v.is_zero():
                    out[(g, col)] = v
        return out

    def leaf_degree(self, e: Subexpression) -> int:
        return sum(m.degree for m, _ in self.light_leaf_steps(e))

    # ---- intersection forms ------------------------------------------------------------
    def pair_vectors(self, row, col) -> RootFraction:
        acc = None
        for k, v in row.items():
            c = col.get(k)
            if c is not None:
                t = v * c
                acc = t if acc is None else acc + t
        if acc is None:
            return RootFraction.poly(self.R.zero())
        return acc.simplify()

    def pair_leaves(self, f: Subexpression, e: Subexpression) -> MultiPoly:
        if f.target != e.target or f.word != e.word:
            raise ValueError("leaves must share source word and target")
        val = self.pair_vectors(self.leaf_row(e), self.leaf_col(f))
        poly = val.to_poly()
        if poly is None:
            raise ArithmeticError(f"denominator survives in pairing {f} {e}: {val}")
        return poly


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _monomials(vars_, nvars, degree):
    from itertools import combinations_with_replacement
    out = []
    for combo in combinations_with_replacement(vars_, degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


# --------------------------------------------------------------------------
# Gram forms and multiplicities


@dataclass
class GramForm:
    x: CoxeterElement
    word: tuple
    leaves: List[Subexpression]
    matrix: List[List[Optional[MultiPoly]]]

    @property
    def defects(self) -> list:
        return [e.defect for e in self.leaves]

    def degree_zero_blocks(self) -> Dict[int, List[List[int]]]:
        """Integer blocks ``C_{d,-d}``: rows of defect ``d``, columns of defect ``-d``."""
        out = {}
        ds = self.defects
        for d in sorted(set(ds)):
            rows = [i for i, di in enumerate(ds) if di == d]
            cols = [j for j, dj in enumerate(ds) if dj == -d]
            if not cols:
                continue
            block = []
            for i in rows:
                r = []
                for j in cols:
                    ent = self.matrix[i][j]
                    if ent is None:
                        raise ValueError("entry not computed")
                    if not ent.is_constant():
                        raise ArithmeticError("degree-zero entry is not constant")
                    r.append(ent.constant_term())
                block.append(r)
            out[d] = block
        return out


_CTX: Dict[tuple, SoergelContext] = {}


def context(kind: str, n: int) -> SoergelContext:
    key = (kind, n)
    if key not in _CTX:
        _CTX[key] = SoergelContext(Realization(kind, n))
    return _CTX[key]


def intersection_form(ctx: SoergelContext, x: CoxeterElement, word: Sequence[int], degree_zero_only: bool = False) -> GramForm:
    """Light-leaf Gram matrix for ``x`` in ``BS(word)``."""
    word = tuple(word)
    leaves = subexpressions(ctx.W, word, x)
    leaves.sort(key=lambda e: (e.defect, e.bits))
    rows = {id(e): None for e in leaves}
    need = [[(not degree_zero_only) or (e.defect + f.defect == 0) for f in leaves] for e in leaves]
    row_vec = {}
    col_vec = {}
    for i, e in enumerate(leaves):
        if any(need[i]) or any(need[j][i] for j in range(len(leaves))):
            row_vec[i] = ctx.leaf_row(e)
            col_vec[i] = ctx.leaf_col(e)
    mat = [[None] * len(leaves) for _ in leaves]
    for i, f in enumerate(leaves):
        for j, e in enumerate(leaves):
            if not need[i][j]:
                continue
            val = ctx.pair_vectors(row_vec[j], col_vec[i])
            poly = val.to_poly()
            if poly is None:
                raise ArithmeticError(f"denominator survives in Gram entry ({f}, {e})")
            mat[i][j] = poly
    return GramForm(x, word, leaves, mat)


def graded_gram_multiplicity(G: GramForm, p: Optional[int]) -> LaurentPoly:
    """``sum_d rank_p(C_{d,-d}) v^d``; ``p=None`` is the rational mode.

    The form is homogeneous, so the residue of the graded local ring sees
    exactly the constant blocks pairing defect ``d`` with ``-d``.
    """
    out = {}
    for d, block in G.degree_zero_blocks().items():
        r = rank_mod(block, p)
        if r:
            out[d] = r
    return LaurentPoly(out)


def unit_pivot_certificate(G: GramForm) -> bool:
    """Eliminate every constant block using only +-1 pivots over Z.

    Success certifies that the rank of each block is the same modulo every
    prime (all elementary divisors are 1).
    """
    for block in G.degree_zero_blocks().values():
        A = [list(r) for r in block]
        while A and A[0]:
            piv = None
            for i, r in enumerate(A):
                for j, a in enumerate(r):
                    if a in (1, -1):
                        piv = (i, j)
                        break
                if piv:
                    break
            if piv is None:
                if any(a for r in A for a in r):
                    return False
                break
            i, j = piv
            pr = A[i]
            newA = []
            for k, r in enumerate(A):
                if k == i:
                    continue
                f = r[j] * pr[j]  # pr[j] = +-1 so this divides exactly
                newA.append([a - f * b for a, b in zip(r, pr)])
            A = [r[:j] + r[j + 1:] for r in newA]
    return True


# --------------------------------------------------------------------------
# p-canonical basis


@dataclass
class PCanonicalEntry:
    w: CoxeterElement
    p: Optional[int]
    expansion: Dict[CoxeterElement, LaurentPoly]
    multiplicities: Dict[CoxeterElement, LaurentPoly]

    def element(self, W) -> HeckeElement:
        return HeckeElement(W, dict(self.expansion))


class ConsistencyError(ArithmeticError):
    pass


class PCanonicalEngine:
    """Memoized recursion ``pb_w = ch(BS(rex w)) - sum_{x<w} pm_x pb_x``."""

    def __init__(self, kind: str, n: int, p: Optional[int]):
        self.ctx = context(kind, n)
        self.W = self.ctx.W
        self.p = p
        self.cache: Dict[tuple, PCanonicalEntry] = {}
        self.gram_cache: Dict[tuple, GramForm] = {}
        self.certificates: Dict[tuple, bool] = {}

    def gram(self, x: CoxeterElement, word: tuple) -> GramForm:
        key = (x.window, word)
        g = self.gram_cache.get(key)
        if g is None:
            g = intersection_form(self.ctx, x, word, degree_zero_only=True)
            self.gram_cache[key] = g
        return g

    def multiplicity(self, x: CoxeterElement, w: CoxeterElement) -> LaurentPoly:
        return graded_gram_multiplicity(self.gram(x, w.word), self.p)

    def p_canonical(self, w: CoxeterElement) -> PCanonicalEntry:
        got = self.cache.get(w.window)
        if got is not None:
            return got
        W = self.W
        ch = bs_character(W, w.word)
        mults = {}
        top = self.multiplicity(w, w)
        if top != LaurentPoly.const(1):
            raise ConsistencyError(f"top multiplicity of {w} is {top}")
        res = ch
        for x in sorted(W.lower_interval(w), key=lambda z: (-z.length, z.word)):
            if x == w:
                continue
            m = self.multiplicity(x, w)
            if m:
                mults[x] = m
                res = res - self.p_canonical(x).element(W).scale(m)
        for x, c in res.terms.items():
            if not c.is_nonnegative():
                raise ConsistencyError(f"negative coefficient {c} at {x} in pb_{w}")
        entry = PCanonicalEntry(w, self.p, dict(res.terms), mults)
        self.cache[w.window] = entry
        return entry


_ENGINES: Dict[tuple, PCanonicalEngine] = {}


def engine(kind: str, n: int, p: Optional[int]) -> PCanonicalEngine:
    key = (kind, n, p)
    if key not in _ENGINES:
        _ENGINES[key] = PCanonicalEngine(kind, n, p)
    return _ENGINES[key]


def p_canonical(kind: str, n: int, w: CoxeterElement, p: Optional[int]) -> PCanonicalEntry:
    return engine(kind, n, p).p_canonical(w)


def coset_transport(ctx: SoergelContext, x_min: CoxeterElement, I, word: Sequence[int], y: CoxeterElement):
    """Transport light leaves of a ``W_I``-word by prefixing ``id`` on ``rex(x_min)``.

    Returns ``(G, G_prefixed)`` where ``G`` is the Gram form of ``y`` in
    ``BS(word)`` and ``G_prefixed`` the Gram form of the prefixed leaves
    ``id (x) LL_e`` for ``x_min * y``; the two agree after applying ``x_min``.
    """
    W = ctx.W
    I = frozenset(I)
    if any(s not in I for s in word):
        raise ValueError("word must use letters of I")
    if W.coset_minimal(x_min, I, side="right").representative != x_min:
        raise ValueError("x_min is not minimal in x W_I")
    word = tuple(word)
    G = intersection_form(ctx, y, word)
    xw = x_min.word
    n0 = len(xw)
    rows, cols = [], []
    for e in G.leaves:
        steps = [(m, pos + n0) for m, pos in ctx.light_leaf_steps(e)]
        full = xw + word
        words = ctx._words_along(full, steps)
        top = tuple([1] * len(words[-1]))
        row = {top: ctx.one()}
        for (m, pos), wd in zip(reversed(steps), reversed(words[:-1])):
            row = ctx.row_through(row, m, pos, wd)
        col = {top: ctx.one()}
        for (m, pos), wd in zip(reversed(steps), reversed(words[:-1])):
            col = ctx.col_through(col, ctx.flip(m), pos, wd)
        rows.append(row)
        cols.append(col)
    mat = []
    for i in range(len(G.leaves)):
        r = []
        for j in range(len(G.leaves)):
            val = ctx.pair_vectors(rows[j], cols[i]).to_poly()
            if val is None:
                raise ArithmeticError("denominator survives in transported form")
            r.append(val)
        mat.append(r)
    target = W.multiply(x_min, y)
    Gp = GramForm(target, xw + word, G.leaves, mat)
    return G, Gp


def double_leaf_count(W: CoxeterSystem, u: Sequence[int], w: Sequence[int]) -> LaurentPoly:
    """Graded count of double leaves ``BS(u) -> BS(w)``: ``sum v^{d(e) + d(f)}`` over common targets."""
    left: Dict[tuple, Counter] = {}
    for e in subexpressions(W, u):
        left.setdefault(e.target.window, Counter())[e.defect] += 1
    out: Dict[int, int] = {}
    for f in subexpressions(W, w):
        for d, c in left.get(f.target.window, {}).items():
            out[d + f.defect] = out.get(d + f.defect, 0) + c
    return LaurentPoly(out)
