"""Decomposition numbers from p-KL polynomials at ``v = 1``.

Orbits and coset labels come from :func:`pcanon.fock.classify`; cosets are
left cosets ``W_I x`` stored by their minimal element.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from .coxeter import AFFINE, CoxeterElement, CoxeterSystem, system
from .fock import (Multipartition, classify, crystal_component_of_empty, lambda_star, size)
from .hecke import kl_basis
from .soergel import p_canonical


def pkl_at_one(W: CoxeterSystem, y: CoxeterElement, w: CoxeterElement, p: Optional[int] = None) -> int:
    """``P^p_{y,w}(1)``: coefficient of ``T_w`` in the class of ``B_y`` at ``v = 1``.

    ``p = None`` is the rational (characteristic zero) case and uses the KL basis.
    """
    if p is None:
        return kl_basis(W, y).coeff(w).at_one()
    entry = p_canonical(W.kind, W.n, y, p)
    c = entry.expansion.get(w)
    return c.at_one() if c is not None else 0


def parabolic_representatives(W: CoxeterSystem, alpha: CoxeterElement, I, J) -> CoxeterElement:
    """Longest element of ``W_I alpha``; it must be shortest in its right ``W_J`` coset."""
    w = W.coset_maximal(alpha, I, "left")
    bad = [s for s in J if W.is_right_descent(w, s)]
    if bad:
        raise ValueError(f"longest element of W_I{alpha.word} has right descents {bad} in J")
    return w


def parabolic_pkl(W: CoxeterSystem, beta: CoxeterElement, alpha: CoxeterElement, I=(), J=(),
                  p: Optional[int] = None) -> int:
    """``P^{p,J}_{beta,alpha}(1) = sum_{u in W_J} (-1)^{l(u)} P^p_{y,wu}(1)``.

    ``w`` and ``y`` are the longest elements of ``W_I alpha`` and ``W_I beta``.
    """
    I, J = frozenset(I), frozenset(J)
    w = parabolic_representatives(W, alpha, I, J)
    y = W.coset_maximal(beta, I, "left")
    if p is None:
        b = kl_basis(W, y)
        coeff = lambda x: b.coeff(x).at_one()
    else:
        coeff = lambda x: pkl_at_one(W, y, x, p)
    total = 0
    for u in W.parabolic_elements(J):
        total += (-1) ** u.length * coeff(W.multiply(w, u))
    return total


@dataclass
class MultiplicityQuery:
    e: int
    lam: Multipartition
    mu: Multipartition
    m: Tuple[int, ...]
    charges: Tuple[int, ...]          # residues r_0 .. r_{l-1}
    p: Optional[int] = None
    order_regime_confirmed: bool = False

    @property
    def level(self) -> int:
        return len(self.lam)

    @property
    def n(self) -> int:
        return size(self.lam)

    def violations(self, schur: bool = True) -> list:
        out = []
        l = self.level
        if len(self.mu) != l or len(self.m) != l or len(self.charges) != l:
            out.append("level mismatch")
            return out
        if size(self.mu) != self.n:
            out.append("|lambda| != |mu|")
        for i in range(1, l + 1):
            if (self.m[i - 1] + self.charges[l - i]) % self.e:
                out.append(f"m_{i} != -r_{l - i} mod e")
            if self.m[i - 1] <= self.n:
                out.append(f"m_{i} <= n")
        if schur and l > 1 and not self.order_regime_confirmed:
            out.append("order regime on m not confirmed")
        return out


@dataclass
class MultiplicityResult:
    value: Optional[int]              # None: undefined (Hecke gate)
    orbit_match: bool
    conditional: bool                 # depends on the unverified order regime on m
    details: Dict = field(default_factory=dict)


def _system_for(q: MultiplicityQuery) -> Tuple[CoxeterSystem, FrozenSet[int]]:
    M = sum(q.m)
    W = system(AFFINE, M)
    # J: simple reflections inside the blocks of sizes m_1, ..., m_l
    J, pos = set(), 0
    for mi in q.m:
        J.update(range(pos + 1, pos + mi))
        pos += mi
    return W, frozenset(J)


def _pipeline(q: MultiplicityQuery) -> MultiplicityResult:
    W, J = _system_for(q)
    a = classify(lambda_star(q.lam), q.m, q.e)
    b = classify(lambda_star(q.mu), q.m, q.e)
    details = {"orbit_lambda": a.orbit, "orbit_mu": b.orbit, "I": sorted(a.stabilizer)}
    if a.orbit != b.orbit:
        return MultiplicityResult(0, False, False, details)
    # classify puts X(J) points at the long end of their W_J coset; the
    # formula wants the short end, so reverse each block
    wJ = W.longest_element(J)
    alpha = W.multiply(W.element(a.coset_word), wJ)
    beta = W.multiply(W.element(b.coset_word), wJ)
    val = parabolic_pkl(W, beta, alpha, a.stabilizer, J, q.p)
    return MultiplicityResult(val, True, False, details)


def schur_decomposition_number(q: MultiplicityQuery, strict: bool = False) -> MultiplicityResult:
    """``[Delta^S(lam) : L^S(mu)]``.

    Level one needs only the congruence and ``m_1 > n``.  At higher level the
    order regime on ``m`` is unchecked; the result is flagged conditional
    unless the caller confirmed it, and ``strict`` rejects it.
    """
    bad = q.violations(schur=True)
    regime = [v for v in bad if v.startswith("order regime")]
    hard = [v for v in bad if v not in regime]
    if hard or (strict and regime):
        raise ValueError("; ".join(bad))
    res = _pipeline(q)
    res.conditional = bool(regime)
    return res


def hecke_decomposition_number(q: MultiplicityQuery) -> MultiplicityResult:
    """``[pi Delta^S(lam) : pi L^S(mu)]``; ``value is None`` when ``pi L^S(mu) = 0``.

    ``pi L^S(mu) != 0`` is tested as membership of ``mu`` in the crystal
    component of the empty multipartition.
    """
    bad = q.violations(schur=False)
    if bad:
        raise ValueError("; ".join(bad))
    comp = crystal_component_of_empty(q.n, q.charges, q.e)
    if q.mu not in comp:
        return MultiplicityResult(None, False, False, {"reason": "mu outside the crystal of the empty multipartition"})
    return _pipeline(q)


def decomposition_matrix(n: int, e: int, m: Sequence[int], charges: Sequence[int], p: Optional[int] = None,
                         kind: str = "schur", labels: Optional[Iterable[Multipartition]] = None,
                         order_regime_confirmed: bool = False) -> Dict[Tuple[Multipartition, Multipartition], Optional[int]]:
    from .fock import multipartitions_of
    labels = list(labels) if labels is not None else list(multipartitions_of(n, len(m)))
    out = {}
    for lam in labels:
        for mu in labels:
            q = MultiplicityQuery(e, lam, mu, tuple(m), tuple(charges), p, order_regime_confirmed)
            r = schur_decomposition_number(q) if kind == "schur" else hecke_decomposition_number(q)
            out[(lam, mu)] = r.value
    return out
