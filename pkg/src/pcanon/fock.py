"""Multipartitions, Fock space operators and crystals.

Boxes are ``(row, col, comp)`` with 1-based rows and columns and a 0-based
component index.  The charged content of a box is ``col - row + s_comp``;
its residue is the content mod ``e``.  Virtual diagrams (negative level) use
``c(b) = row - col + m_comp`` instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .coxeter import AFFINE, system

Partition = Tuple[int, ...]
Multipartition = Tuple[Partition, ...]
Box = Tuple[int, int, int]

SCHUR = "schur"
NEGATIVE = "negative-level"
NORMAL = "normal"
DUAL = "dual"
CUMULATIVE = "cumulative"
BOXWISE = "boxwise"


# --------------------------------------------------------------------------
# basic data


def partition(parts: Iterable[int]) -> Partition:
    out = tuple(int(a) for a in parts if int(a) != 0)
    if any(a < 0 for a in out) or any(a < b for a, b in zip(out, out[1:])):
        raise ValueError(f"not a partition: {out}")
    return out


def multipartition(*components) -> Multipartition:
    return tuple(partition(c) for c in components)


def parse_multipartition(text: str) -> Multipartition:
    """``"2,2|3,1,1,1"``; an empty or ``0`` component is the empty partition."""
    comps = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        comps.append(partition(int(a) for a in chunk.split(",")) if chunk and chunk != "0" else ())
    return tuple(comps)


def format_multipartition(lam: Multipartition) -> str:
    return "|".join(",".join(map(str, c)) if c else "0" for c in lam)


def size(lam: Multipartition) -> int:
    return sum(sum(c) for c in lam)


def empty(level: int) -> Multipartition:
    return ((),) * level


def boxes(lam: Multipartition) -> List[Box]:
    return [(r + 1, c + 1, i) for i, comp in enumerate(lam) for r, row in enumerate(comp) for c in range(row)]


def addable_boxes(lam: Multipartition) -> List[Box]:
    out = []
    for i, comp in enumerate(lam):
        for r in range(len(comp) + 1):
            c = comp[r] if r < len(comp) else 0
            if r == 0 or comp[r - 1] > c:
                out.append((r + 1, c + 1, i))
    return out


def removable_boxes(lam: Multipartition) -> List[Box]:
    out = []
    for i, comp in enumerate(lam):
        for r, row in enumerate(comp):
            if r == len(comp) - 1 or comp[r + 1] < row:
                out.append((r + 1, row, i))
    return out


def add_box(lam: Multipartition, b: Box) -> Multipartition:
    r, c, i = b
    comp = list(lam[i])
    if r == len(comp) + 1 and c == 1:
        comp.append(1)
    elif r <= len(comp) and comp[r - 1] == c - 1 and (r == 1 or comp[r - 2] >= c):
        comp[r - 1] = c
    else:
        raise ValueError(f"box {b} is not addable")
    return lam[:i] + (tuple(comp),) + lam[i + 1:]


def remove_box(lam: Multipartition, b: Box) -> Multipartition:
    r, c, i = b
    comp = list(lam[i])
    if r > len(comp) or comp[r - 1] != c or (r < len(comp) and comp[r] >= c):
        raise ValueError(f"box {b} is not removable")
    comp[r - 1] -= 1
    return lam[:i] + (partition(comp),) + lam[i + 1:]


def content(b: Box, charges: Sequence[int]) -> int:
    r, c, i = b
    return c - r + charges[i]


def residue(b: Box, charges: Sequence[int], e: int) -> int:
    return content(b, charges) % e


def virtual_content(b: Box, m: Sequence[int]) -> int:
    """``c(b) = row - col + m_comp`` for virtual diagrams."""
    r, c, i = b
    return r - c + m[i]


def partitions_of(n: int, max_part: Optional[int] = None) -> List[Partition]:
    max_part = n if max_part is None else max_part
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, max_part), 0, -1):
        out.extend((k,) + rest for rest in partitions_of(n - k, k))
    return out


@lru_cache(maxsize=None)
def multipartitions_of(n: int, level: int) -> Tuple[Multipartition, ...]:
    if level == 1:
        return tuple((p,) for p in partitions_of(n))
    out = []
    for k in range(n + 1):
        for p in partitions_of(k):
            out.extend((p,) + rest for rest in multipartitions_of(n - k, level - 1))
    return tuple(out)


def transpose(p: Partition) -> Partition:
    return tuple(sum(1 for a in p if a > j) for j in range(p[0])) if p else ()


def lambda_star(lam: Multipartition) -> Multipartition:
    """Reverse the components and transpose each."""
    return tuple(transpose(c) for c in reversed(lam))


# --------------------------------------------------------------------------
# Fock space


def fock_apply(op: str, j: int, lam: Multipartition, charges: Sequence[int], e: int) -> List[Multipartition]:
    """All results of removing (``e``) or adding (``f``) one ``j``-box."""
    j %= e
    if op == "f":
        return [add_box(lam, b) for b in addable_boxes(lam) if residue(b, charges, e) == j]
    if op == "e":
        return [remove_box(lam, b) for b in removable_boxes(lam) if residue(b, charges, e) == j]
    raise ValueError("op must be 'e' or 'f'")


def addable_count(lam, i, charges, e) -> int:
    return sum(1 for b in addable_boxes(lam) if residue(b, charges, e) == i % e)


def removable_count(lam, i, charges, e) -> int:
    return sum(1 for b in removable_boxes(lam) if residue(b, charges, e) == i % e)


def cartan_eigenvalue(lam, i, charges, e) -> int:
    return addable_count(lam, i, charges, e) - removable_count(lam, i, charges, e)


# --------------------------------------------------------------------------
# signatures and crystals


@dataclass(frozen=True)
class Signature:
    boxes: Tuple[Box, ...]        # addable/removable i-boxes, decreasing order
    raw: str
    survivors: Tuple[int, ...]    # positions surviving the cancellation
    pairs: Tuple[Tuple[int, int], ...]  # cancelled (earlier, later) positions

    @property
    def reduced(self) -> str:
        return "".join(self.raw[k] for k in self.survivors)


def _order_key(order: str, charges: Sequence[int]) -> Callable[[Box], tuple]:
    """Sort key listing boxes in decreasing order."""
    if order == SCHUR:
        return lambda b: (b[2], -b[1])
    if order == NEGATIVE:
        return lambda b: (-virtual_content(b, charges), -b[2])
    raise ValueError(f"unknown order {order!r}")


def cancel(raw: str, mode: str = NORMAL) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, int], ...]]:
    """Cancel adjacent ``-+`` (normal) or ``+-`` (dual) pairs until none remain."""
    first, second = ("-", "+") if mode == NORMAL else ("+", "-")
    stack: List[int] = []
    pairs = []
    for k, ch in enumerate(raw):
        if ch == second and stack and raw[stack[-1]] == first:
            pairs.append((stack.pop(), k))
        else:
            stack.append(k)
    return tuple(stack), tuple(sorted(pairs))


def signature(lam: Multipartition, i: int, charges: Sequence[int], e: int,
              order: str = SCHUR, mode: str = NORMAL) -> Signature:
    i %= e
    cand = [(b, "+") for b in addable_boxes(lam) if residue(b, charges, e) == i]
    cand += [(b, "-") for b in removable_boxes(lam) if residue(b, charges, e) == i]
    cand.sort(key=lambda t: _order_key(order, charges)(t[0]))
    raw = "".join(s for _, s in cand)
    surv, pairs = cancel(raw, mode)
    return Signature(tuple(b for b, _ in cand), raw, surv, pairs)


def crystal(op: str, i: int, lam: Optional[Multipartition], charges: Sequence[int], e: int,
            order: str = SCHUR) -> Optional[Multipartition]:
    """``e``, ``f``, ``e*`` or ``f*``; ``None`` is zero."""
    if lam is None:
        return None
    mode = DUAL if op.endswith("*") else NORMAL
    sig = signature(lam, i, charges, e, order, mode)
    red = [(k, sig.raw[k]) for k in sig.survivors]
    # normal: leftmost surviving -, rightmost surviving +; dual mirrors this
    pick = -1 if mode == DUAL else 0
    if op[0] == "e":
        minus = [k for k, ch in red if ch == "-"]
        return remove_box(lam, sig.boxes[minus[pick]]) if minus else None
    if op[0] == "f":
        plus = [k for k, ch in red if ch == "+"]
        return add_box(lam, sig.boxes[plus[-1 - pick]]) if plus else None
    raise ValueError(f"unknown crystal operator {op!r}")


def is_singular(lam, charges, e, order: str = SCHUR) -> bool:
    return all(crystal("e", i, lam, charges, e, order) is None for i in range(e))


def is_cosingular(lam, charges, e, order: str = SCHUR) -> bool:
    return all(crystal("e*", i, lam, charges, e, order) is None for i in range(e))


def crystal_component_of_empty(n: int, charges: Sequence[int], e: int, order: str = SCHUR) -> FrozenSet[Multipartition]:
    """Multipartitions of size ``<= n`` reachable from the empty one by ``f``-operators."""
    layer = {empty(len(charges))}
    seen = set(layer)
    for _ in range(n):
        layer = {mu for lam in layer for i in range(e)
                 for mu in [crystal("f", i, lam, charges, e, order)] if mu is not None}
        seen |= layer
    return frozenset(seen)


# --------------------------------------------------------------------------
# reflections


def sigma(i: int, lam: Multipartition, charges, e, dual: bool = False, order: str = SCHUR) -> Multipartition:
    """``f_i^d lam`` with ``d`` maximal; needs ``e_i lam = 0``."""
    eo, fo = ("e*", "f*") if dual else ("e", "f")
    if crystal(eo, i, lam, charges, e, order) is not None:
        raise ValueError(f"{eo}_{i} does not kill {lam}")
    cur = lam
    while True:
        nxt = crystal(fo, i, cur, charges, e, order)
        if nxt is None:
            return cur
        cur = nxt


def apply_word(word: Sequence[int], lam, charges, e, dual: bool = False, order: str = SCHUR):
    """``w lam`` for ``w = sigma_{word[0]} ... sigma_{word[-1]}`` (rightmost acts first)."""
    cur = lam
    for i in reversed(word):
        cur = sigma(i, cur, charges, e, dual, order)
    return cur


def apply_word_dual(word, mu, charges, e, order: str = SCHUR):
    return apply_word(word, mu, charges, e, True, order)


def c_word(a: int, m: int, e: int) -> Tuple[int, ...]:
    """``C_{a,m} = sigma_{a+1-m} ... sigma_{a-1} sigma_a`` as a tuple of residues."""
    return tuple((a + 1 - m + k) % e for k in range(m))


def is_reduced_word(word: Sequence[int], e: int) -> bool:
    return system(AFFINE, e).is_reduced(tuple(word))


# --------------------------------------------------------------------------
# marked pairs and companions


def marked_pairs(lam, i, charges, e, order: str = SCHUR) -> List[Tuple[Box, Box]]:
    """``(minus box, plus box)`` for each ``-+`` pair cancelled together."""
    sig = signature(lam, i, charges, e, order, NORMAL)
    return [(sig.boxes[a], sig.boxes[b]) for a, b in sig.pairs]


def lambda_bracket(lam, p: Tuple[Box, Box]) -> Multipartition:
    minus, plus = p
    return add_box(remove_box(lam, minus), plus)


def same_family(lam, mu, i, charges, e) -> bool:
    """Whether ``lam`` and ``mu`` differ only in ``i``-boxes."""
    a, b = set(boxes(lam)), set(boxes(mu))
    return all(residue(x, charges, e) == i % e for x in a ^ b)


def order_leq(lam, mu, order: str = CUMULATIVE, charges: Sequence[int] = (), e: int = 2,
              content_fn: Optional[Callable] = None) -> bool:
    """Highest weight orders on multipartitions of equal size.

    ``cumulative`` compares partial sums over components and rows.
    ``boxwise`` asks for a bijection ``b_k <= b'_k`` of boxes, where boxes
    compare only within a residue, by content and then component.
    """
    if order == CUMULATIVE:
        def sums(nu):
            out, acc = [], 0
            rows = max([len(c) for c in lam + mu] + [0])
            for comp in nu:
                for k in range(rows + 1):
                    out.append(acc + sum(comp[:k]))
                acc += sum(comp)
            out.append(acc)
            return out
        return all(a <= b for a, b in zip(sums(lam), sums(mu)))
    if order == BOXWISE:
        if size(lam) != size(mu):
            return False
        cf = content_fn or (lambda b: content(b, charges))
        A, B = boxes(lam), boxes(mu)
        G = nx.Graph()
        G.add_nodes_from((("a", x) for x in A), bipartite=0)
        G.add_nodes_from((("b", y) for y in B), bipartite=1)
        for x in A:
            for y in B:
                cx, cy = cf(x), cf(y)
                if (cx - cy) % e == 0 and (x == y or cx < cy or (cx == cy and x[2] < y[2])):
                    G.add_edge(("a", x), ("b", y))
        M = nx.bipartite.hopcroft_karp_matching(G, top_nodes=[("a", x) for x in A])
        return sum(1 for k in M if k[0] == "a") == len(A)
    raise ValueError(f"unknown order {order!r}")


def _strictly_less(lam, mu, leq) -> bool:
    return lam != mu and leq(lam, mu)


def base_companions(lam, charges, e, leq=None, order: str = SCHUR) -> FrozenSet[Multipartition]:
    """Singular ``mu < lam`` outside every family of ``lam``, and all ``lam[p]``."""
    leq = leq or (lambda a, b: order_leq(a, b, CUMULATIVE))
    out = set()
    for mu in multipartitions_of(size(lam), len(lam)):
        if (_strictly_less(mu, lam, leq) and is_singular(mu, charges, e, order)
                and not any(same_family(mu, lam, i, charges, e) for i in range(e))):
            out.add(mu)
    for i in range(e):
        for p in marked_pairs(lam, i, charges, e, order):
            out.add(lambda_bracket(lam, p))
    return frozenset(out)


def companions(lam, word: Sequence[int], charges, e, leq=None, order: str = SCHUR) -> FrozenSet[Multipartition]:
    """Companions of ``w lam`` built along the given reduced expression."""
    if word and not is_reduced_word(word, e):
        raise ValueError(f"{tuple(word)} is not reduced")
    xi = lam
    comps = base_companions(lam, charges, e, leq, order)
    for i in reversed(word):
        nxt = set()
        for c in comps:
            if crystal("e", i, c, charges, e, order) is None and not same_family(c, xi, i, charges, e):
                nxt.add(sigma(i, c, charges, e, False, order))
        xi = sigma(i, xi, charges, e, False, order)
        for p in marked_pairs(xi, i, charges, e, order):
            nxt.add(lambda_bracket(xi, p))
        comps = frozenset(nxt)
    return comps


# --------------------------------------------------------------------------
# the two separation conditions


def witness_words(e: int, max_m: int) -> List[Tuple[int, ...]]:
    """The identity and every ``C_{a,m}`` with ``m <= max_m``."""
    out = [()]
    for m in range(1, max_m + 1):
        for a in range(e):
            out.append(c_word(a, m, e))
    return out


def default_search_radius(n: int, charges: Sequence[int], e: int) -> int:
    spread = max(charges) - min(charges) if charges else 0
    return e * (n + spread + 2)


def check_C(lam, mu, charges, e, words=None, leq=None, order: str = SCHUR):
    """A word ``w`` with ``w lam`` not below ``w* mu``, or ``None``."""
    leq = leq or (lambda a, b: order_leq(a, b, CUMULATIVE))
    words = words if words is not None else witness_words(e, default_search_radius(size(lam), charges, e))
    for w in words:
        try:
            a = apply_word(w, lam, charges, e, False, order)
            b = apply_word(w, mu, charges, e, True, order)
        except ValueError:
            continue
        if not leq(a, b):
            return tuple(w)
    return None


def check_Ctilde(lam, mu, charges, e, words=None, leq=None, order: str = SCHUR):
    """A word ``w`` such that no companion of ``w lam`` lies below ``w* mu``."""
    leq = leq or (lambda a, b: order_leq(a, b, CUMULATIVE))
    words = words if words is not None else witness_words(e, default_search_radius(size(lam), charges, e))
    for w in words:
        if w and not is_reduced_word(w, e):
            continue
        try:
            b = apply_word(w, mu, charges, e, True, order)
        except ValueError:
            continue
        comps = companions(lam, w, charges, e, leq, order)
        if not any(leq(xi, b) for xi in comps):
            return tuple(w)
    return None


# --------------------------------------------------------------------------
# virtual multipartitions and X(J)


@dataclass(frozen=True)
class VirtualMultipartition:
    rows: Tuple[Tuple[int, ...], ...]
    m: Tuple[int, ...]

    def coordinates(self) -> Tuple[int, ...]:
        """``x_k = row_k - k + m_i`` (``k`` from 0) per component, concatenated."""
        out = []
        for comp, mi in zip(self.rows, self.m):
            out.extend(v - k + mi for k, v in enumerate(comp))
        return tuple(out)

    @classmethod
    def from_coordinates(cls, x: Sequence[int], m: Sequence[int]) -> "VirtualMultipartition":
        rows, pos = [], 0
        for mi in m:
            rows.append(tuple(x[pos + k] + k - mi for k in range(mi)))
            pos += mi
        return cls(tuple(rows), tuple(m))


def to_virtual(lam: Multipartition, m: Sequence[int]) -> VirtualMultipartition:
    if len(m) != len(lam):
        raise ValueError("need one row count per component")
    if any(mi <= size(lam) for mi in m):
        raise ValueError("each m_i must exceed |lambda|")
    return VirtualMultipartition(tuple(tuple(c) + (0,) * (mi - len(c)) for c, mi in zip(lam, m)), tuple(m))


def in_XJ(x: Sequence[int], m: Sequence[int]) -> bool:
    pos = 0
    for mi in m:
        blk = x[pos:pos + mi]
        if any(a <= b for a, b in zip(blk, blk[1:])):
            return False
        pos += mi
    return True


def plus(x: Sequence[int], m: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """``x^+``: the ``X(J)`` point of ``x W_J``, or ``None`` for the formal symbol."""
    out, pos = [], 0
    for mi in m:
        blk = sorted(x[pos:pos + mi], reverse=True)
        if any(a == b for a, b in zip(blk, blk[1:])):
            return None
        out.extend(blk)
        pos += mi
    return tuple(out)


def orbit_representative(x: Sequence[int], e: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """The point of ``x_1 <= ... <= x_n <= x_1 + e`` in the orbit, and a word reaching it.

    Generators act as in :meth:`CoxeterSystem.act_on_weight`; applying the
    returned word left to right carries ``x`` to the representative.
    """
    cur = list(x)
    n = len(cur)
    word: List[int] = []
    while True:
        moved = False
        for i in range(n - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word.append(i + 1)
                moved = True
        if moved:
            continue
        if cur[-1] > cur[0] + e:
            cur[0], cur[-1] = cur[-1] - e, cur[0] + e
            word.append(0)
            continue
        return tuple(cur), tuple(word)


@dataclass(frozen=True)
class Classification:
    orbit: Tuple[int, ...]        # representative in the fundamental region
    stabilizer: FrozenSet[int]    # I(alpha)
    coset_word: Tuple[int, ...]   # minimal element of W_I alpha
    point: Tuple[int, ...]        # the X(J) coordinates


def classify(lam: Multipartition, m: Sequence[int], e: int) -> Classification:
    """Orbit, stabilizer and minimal coset word of ``to_virtual(lam, m)``.

    With ``u`` the product of the reduction word, ``x = u . rep``; the label
    is the coset ``W_I u^{-1}`` for the right action ``rep . w = w^{-1} . rep``.
    """
    x = to_virtual(lam, m).coordinates()
    n = len(x)
    W = system(AFFINE, n)
    rep, word = orbit_representative(x, e)
    I = frozenset(i for i in range(1, n) if rep[i - 1] == rep[i]) | (frozenset({0}) if rep[-1] == rep[0] + e else frozenset())
    u = W.element(word)
    alpha = W.coset_minimal(W.inverse(u), I, "left").representative
    return Classification(rep, I, W.canonical_word(alpha), x)


def x_order_leq(x: Sequence[int], x2: Sequence[int], m: Sequence[int], e: int,
                max_depth: int = 4, max_shift: int = 2) -> bool:
    """Bounded reflection-chain search for the ``X(J)`` order.

    Steps ``x -> (s_alpha x)^+`` for ``alpha = eps_l - eps_k + n delta``
    positive with ``x_k + n e - x_l > 0``; ``|n| <= max_shift``.
    """
    x, x2 = tuple(x), tuple(x2)
    N = len(x)
    frontier, seen = {x}, {x}
    for _ in range(max_depth):
        if x2 in seen:
            return True
        nxt = set()
        for cur in frontier:
            for l in range(N):
                for k in range(N):
                    if k == l:
                        continue
                    for sh in range(0, max_shift + 1):
                        if sh == 0 and not l < k:
                            continue
                        if cur[k] + sh * e - cur[l] <= 0:
                            continue
                        y = list(cur)
                        y[l], y[k] = cur[k] + sh * e, cur[l] - sh * e
                        yp = plus(y, m)
                        if yp is not None and yp not in seen:
                            seen.add(yp)
                            nxt.add(yp)
        frontier = nxt
    return x2 in seen


# --------------------------------------------------------------------------
# wedge space


WedgeVector = Dict[Tuple[int, ...], int]


def wedge_normal(indices: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign and sorted indices of ``v_{i_1} ^ ... ^ v_{i_m}`` (sign 0 on repeats)."""
    idx = list(indices)
    if len(set(idx)) < len(idx):
        return 0, ()
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign, tuple(sorted(idx))


def _wedge_add(acc: WedgeVector, key, c):
    acc[key] = acc.get(key, 0) + c
    if acc[key] == 0:
        del acc[key]


def wedge(op: str, i: int, vec: WedgeVector, e: int) -> WedgeVector:
    """``f_i`` (``v_{k+1} -> v_k``), ``e_i`` (``v_k -> v_{k+1}``), ``k = i mod e``.

    ``e0_trunc`` is ``e_0`` without the monomial that moves the final ``v_0``.
    """
    out: WedgeVector = {}
    for idx, c in vec.items():
        for pos, k in enumerate(idx):
            if op == "f":
                if (k - 1) % e != i % e:
                    continue
                new = k - 1
            elif op in ("e", "e0_trunc"):
                if k % e != i % e:
                    continue
                if op == "e0_trunc" and pos == len(idx) - 1 and k == 0:
                    continue
                new = k + 1
            else:
                raise ValueError(f"unknown wedge operator {op!r}")
            s, key = wedge_normal(idx[:pos] + (new,) + idx[pos + 1:])
            if s:
                _wedge_add(out, key, s * c)
    return out


def fock_to_wedge(lam: Partition, m: int) -> Tuple[int, ...]:
    """``v_{1-m-l_1} ^ v_{2-m-l_2} ^ ... ^ v_{m-m-l_m}``."""
    lam = tuple(lam)
    if len(lam) > m:
        raise ValueError("partition has more than m rows")
    padded = lam + (0,) * (m - len(lam))
    return tuple(j + 1 - m - padded[j] for j in range(m))


def wedge_to_fock(idx: Sequence[int], d: int) -> Partition:
    """``l_j = j + d - i_j``."""
    return partition(j + 1 + d - i for j, i in enumerate(idx))


def wedge_colour(i: int, e: int) -> int:
    """Fock residue matching the wedge colour ``i`` (charge ``m``, content ``col - row``)."""
    return (-i) % e


def embed(vec_fock: Dict[Partition, int], m: int) -> WedgeVector:
    out: WedgeVector = {}
    for lam, c in vec_fock.items():
        _wedge_add(out, fock_to_wedge(lam, m), c)
    return out
