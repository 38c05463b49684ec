"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (lines are written to the terminal) or directly with
``python3 tests/test_acceptance.py``.
"""
import itertools
import sys
import time

import pytest

from pcanon.coxeter import AFFINE, FINITE, system
from pcanon.fock import (check_Ctilde, crystal, embed, fock_apply, is_cosingular, is_singular, multipartitions_of,
                         partitions_of, wedge, wedge_colour)
from pcanon.hecke import LaurentPoly, bs_character, is_bar_invariant, kl_basis, kl_expand, standard_pairing
from pcanon.mult import MultiplicityQuery, decomposition_matrix, parabolic_pkl, schur_decomposition_number
from pcanon.soergel import double_leaf_count, engine, graded_gram_multiplicity, p_canonical, unit_pivot_certificate
from pcanon.weights import (DotFamily, bubble, bubble_direct, bubble_oracle, bubble_variables, failure_example,
                            littelmann_F, monodromy_shift, stabilizer, verify_dot_properties)


def crit1():
    lam, s = ((2, 2), (3, 1, 1, 1)), (11, 0)
    want = {
        ("f", 1): ((2, 2), (4, 1, 1, 1)),
        ("e", 1): ((2, 2), (3, 1, 1)),
        ("e*", 1): None,
        ("f*", 1): ((2, 2, 1), (3, 1, 1, 1)),
        ("e", 0): None,
        ("f", 0): ((2, 2), (3, 1, 1, 1, 1)),
        ("e*", 0): ((2, 2), (2, 1, 1, 1)),
        ("f*", 0): ((2, 2), (3, 2, 1, 1)),
    }
    bad = [k for k, v in want.items() if crystal(k[0], k[1], lam, s, 2) != v]
    return not bad, f"8 operator values, mismatches {bad}"


def crit2():
    lam = (1, 2, 2, 3, 3)
    ok = (littelmann_F(lam, 2, 1, 4) == (1, 2, 3, 3, 3) and littelmann_F(lam, 2, 2, 4) == (1, 3, 3, 3, 3)
          and littelmann_F(lam, 2, 3, 4) is None)
    chain = [(0, 0, 0, 2, 3, 3)]
    for _ in range(5):
        chain.append(littelmann_F(chain[-1], 0, 1, 3, AFFINE))
    ok &= chain == [(0, 0, 0, 2, 3, 3), (0, 0, 1, 2, 3, 3), (0, 1, 1, 2, 3, 3),
                    (1, 1, 1, 2, 3, 3), (1, 1, 1, 2, 3, 4), (1, 1, 1, 2, 4, 4)]
    stabs = [sorted(stabilizer(l, 3, AFFINE)) for l in chain]
    ok &= stabs == [[0, 1, 2, 5], [0, 1, 5], [0, 2, 5], [1, 2, 5], [0, 1, 2], [0, 1, 2, 5]]
    return ok, "finite F_2 powers and affine F_0 chain with stabilizers"


def crit3():
    bad, checked = 0, 0
    for kind, n, L in [(FINITE, 3, None), (FINITE, 4, None), (AFFINE, 2, 6)]:
        W = system(kind, n)
        eng = engine(kind, n, None)
        els = W.elements() if L is None else list(W.enumerate_up_to_length(L))
        for w in els:
            exp = kl_expand(bs_character(W, w.word))
            for x in W.lower_interval(w):
                checked += 1
                if graded_gram_multiplicity(eng.gram(x, w.word), None) != exp.get(x, LaurentPoly()):
                    bad += 1
            if p_canonical(kind, n, w, None).element(W) != kl_basis(W, w):
                bad += 1
    return bad == 0, f"{checked} Gram multiplicities in S_3, S_4, affine S_2 (len <= 6), {bad} mismatches"


def crit4():
    bad, checked = 0, 0
    for n in (3, 4):
        W = system(FINITE, n)
        eng = engine(FINITE, n, None)
        for w in W.elements():
            for x in W.lower_interval(w):
                checked += 1
                bad += not unit_pivot_certificate(eng.gram(x, w.word))
    return bad == 0, f"{checked} Gram forms in S_3 and S_4 with unit pivots, {bad} without"


def crit5():
    W = system(AFFINE, 2)
    els = list(W.enumerate_up_to_length(8))
    bad, differ = 0, 0
    for p in (2, 3, 5):
        for w in els:
            e = p_canonical(AFFINE, 2, w, p)
            h = e.element(W)
            ok = is_bar_invariant(h) and e.expansion.get(w) == LaurentPoly.const(1)
            ok = ok and all(c.is_nonnegative() for c in e.expansion.values())
            ok = ok and all(x == w or (x.length < w.length and W.bruhat_leq(x, w)) for x in e.expansion)
            bad += not ok
            differ += h != kl_basis(W, w)
    bad += sum(p_canonical(AFFINE, 2, w, None).element(W) != kl_basis(W, w) for w in els)
    return bad == 0, f"{3 * len(els)} elements for p in 2, 3, 5; {differ} differ from KL; {bad} failures"


def crit6():
    bad, checked = 0, 0
    for kind, n in [(FINITE, 3), (AFFINE, 2)]:
        W = system(kind, n)
        gens = tuple(W.generators)
        words = [w for k in range(9) for w in itertools.product(gens, repeat=k)]
        chars = {w: bs_character(W, w) for w in words}
        for u in words:
            for w in words:
                if len(u) + len(w) > 8:
                    continue
                checked += 1
                bad += double_leaf_count(W, u, w) != standard_pairing(chars[u], chars[w])
    return bad == 0, f"{checked} word pairs, {bad} mismatches"


def crit7():
    bad, checked = 0, 0
    for a in range(4):
        for b in range(4):
            for m in range(-3, 6):
                for mode in ("pi", "xi"):
                    checked += 1
                    closed = bubble(m, a, b, mode)
                    ref = bubble_direct(m, a, b, mode) if m >= 0 else bubble_oracle(m, a, b, mode)
                    bad += closed != ref
            R = bubble_variables(a, b)[0]
            bad += bubble(a - b, a, b, "pi") != R.const((-1) ** a)
            bad += bubble(b - a, a, b, "xi") != R.const((-1) ** a)
    return bad == 0, f"{checked} bubble values plus degenerate signs, {bad} mismatches"


def crit8():
    bad = 0
    for kind in (FINITE, AFFINE):
        for n in (2, 3, 4):
            for e in (2, 3):
                bad += not verify_dot_properties(DotFamily.standard(kind, n, e)).passed
    for n, e in [(2, 2), (3, 3), (4, 2)]:
        fam = DotFamily.standard(AFFINE, n, e)
        bad += any(monodromy_shift(fam, m + e) != monodromy_shift(fam, m) + fam.R.y for m in range(-e, e + 1))
    for n, e in [(2, 2), (2, 3), (3, 3)]:
        fx = failure_example(n, e)
        bad += not (fx["standard_passes"] and fx["contradiction"] and fx["corrupted_dual_basis_failures"])
    return bad == 0, f"standard family, monodromy and corrupted-family contradiction, {bad} failures"


def crit9():
    bad, checked = 0, 0
    for e in (2, 3):
        for m in range(1, 7):
            for k in range(0, min(4, m) + 1):
                for p in partitions_of(k):
                    if len(p) > m:
                        continue
                    for i in range(e):
                        r = wedge_colour(i, e)
                        v = embed({p: 1}, m)
                        want_f = embed({mu[0]: 1 for mu in fock_apply("f", r, (p,), (m,), e) if len(mu[0]) <= m}, m)
                        want_e = embed({mu[0]: 1 for mu in fock_apply("e", r, (p,), (m,), e)}, m)
                        got_e = wedge("e0_trunc" if i == 0 else "e", i, v, e)
                        if len(p) < m:
                            checked += 1
                            bad += wedge("f", i, v, e) != want_f
                        checked += 1
                        bad += got_e != want_e
    return bad == 0, f"{checked} operator applications, {bad} mismatches"


def crit10():
    fails, pairs = [], 0
    for e, lo in ((2, 3), (3, 1)):
        for n in range(lo, 7):
            P = multipartitions_of(n, 1)
            S = [l for l in P if is_singular(l, (0,), e)]
            C = [l for l in P if is_cosingular(l, (0,), e)]
            for lam, mu in itertools.product(S, C):
                pairs += 1
                if check_Ctilde(lam, mu, (0,), e) is None:
                    fails.append((e, lam, mu))
    return not fails, f"{pairs} singular/cosingular pairs, missing witnesses {fails}"


def crit11():
    bad, cosets = 0, 0
    for kind, n, L in [(FINITE, 4, None), (AFFINE, 2, 6)]:
        W = system(kind, n)
        els = W.elements() if L is None else list(W.enumerate_up_to_length(L))
        gens = sorted(W.generators)
        subsets = [set(c) for k in range(len(gens) + 1) for c in itertools.combinations(gens, k)]
        for I in subsets:
            try:
                W.longest_element(sorted(I))
            except ValueError:
                continue
            seen = set()
            for w in els:
                lo = W.coset_minimal(w, I, "left").representative
                if lo.window in seen:
                    continue
                seen.add(lo.window)
                hi = W.coset_maximal(w, I, "left")
                coset = {W.multiply(u, lo).window for u in W.parabolic_elements(I)}
                cosets += 1
                bad += coset != {x.window for x in W.interval(lo, hi)}
    return bad == 0, f"{cosets} cosets in S_4 and affine S_2, {bad} not intervals"


def crit12():
    bad = 0
    W = system(FINITE, 3)
    for y in W.elements():
        for w in W.elements():
            bad += parabolic_pkl(W, y, w) != kl_basis(W, y).coeff(w).at_one()
    M = decomposition_matrix(2, 2, (4,), (0,), None, "schur")
    want = {((2,), (2,)): 1, ((2,), (1, 1)): 1, ((1, 1), (2,)): 0, ((1, 1), (1, 1)): 1}
    bad += {(a[0], b[0]): v for (a, b), v in M.items()} != want
    M3 = decomposition_matrix(3, 2, (5,), (1,), None, "schur")
    bad += any(M3[(l, l)] != 1 for l in multipartitions_of(3, 1))
    r = schur_decomposition_number(MultiplicityQuery(2, ((3,),), ((2, 1),), (5,), (1,)))
    bad += not (r.value == 0 and not r.orbit_match)
    return bad == 0, f"J empty reduction, diagonal, orbit gate, n = 2 matrix; {bad} failures"


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10, crit11, crit12]


def run_criterion(k: int):
    t = time.time()
    ok, msg = CRITERIA[k - 1]()
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {msg} ({time.time() - t:.1f}s)"
    return ok, line


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k, capsys):
    ok, line = run_criterion(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in range(1, len(CRITERIA) + 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
