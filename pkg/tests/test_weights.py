import pytest

from pcanon.coxeter import AFFINE, FINITE
from pcanon.weights import (SIGNS, DotFamily, affine_weights, bubble, bubble_direct, bubble_variables, bubble_oracle, crossing_degree,
                            crossing_kind, cup_cap_degree, f_string, failure_example, finite_weights, from_gl_weight,
                            from_k_sequence, gl_weight, grassmannian_product, is_weight, k_sequence, littelmann_E,
                            littelmann_F, monodromy_shift, realization, sideways_crossing_degree, stabilizer,
                            stabilizer_pair, verify_dot_properties, weights)

F0_CHAIN = [(0, 0, 0, 2, 3, 3), (0, 0, 1, 2, 3, 3), (0, 1, 1, 2, 3, 3),
            (1, 1, 1, 2, 3, 3), (1, 1, 1, 2, 3, 4), (1, 1, 1, 2, 4, 4)]
F0_STABS = [{0, 1, 2, 5}, {0, 1, 5}, {0, 2, 5}, {1, 2, 5}, {0, 1, 2}, {0, 1, 2, 5}]


def test_finite_littelmann_examples():
    lam = (1, 2, 2, 3, 3)
    assert littelmann_F(lam, 2, 1, 4) == (1, 2, 3, 3, 3)
    assert littelmann_F(lam, 2, 2, 4) == (1, 3, 3, 3, 3)
    assert littelmann_F(lam, 2, 3, 4) is None
    assert littelmann_F(None, 1, 1, 4) is None
    assert stabilizer((1, 1, 1, 2, 3), 4) == {1, 2}


def test_affine_F0_chain():
    chain = [F0_CHAIN[0]]
    for _ in range(5):
        chain.append(littelmann_F(chain[-1], 0, 1, 3, AFFINE))
    assert chain == F0_CHAIN
    assert [set(stabilizer(l, 3, AFFINE)) for l in chain] == F0_STABS
    assert littelmann_F(chain[-1], 0, 1, 3, AFFINE) is None


@pytest.mark.parametrize("kind,n,e", [(FINITE, 3, 3), (FINITE, 4, 4), (AFFINE, 3, 3), (AFFINE, 2, 2)])
def test_E_inverts_F(kind, n, e):
    colours = range(e) if kind == AFFINE else range(1, e)
    for lam in weights(n, e, kind):
        assert is_weight(lam, e, kind)
        for j in colours:
            mu = littelmann_F(lam, j, 1, e, kind)
            if mu is not None:
                assert is_weight(mu, e, kind)
                assert littelmann_E(mu, j, 1, e, kind) == lam
            s = f_string(lam, j, e, kind)
            assert lam in s and littelmann_E(s[0], j, 1, e, kind) is None


def test_enumeration_and_gl_data():
    assert len(finite_weights(3, 3)) == 10
    assert all(l[0] == 0 for l in affine_weights(2, 2, 0, 0))
    for lam in finite_weights(4, 3):
        r = gl_weight(lam, 3)
        assert sum(r) == 4 and from_gl_weight(r) == lam
        assert from_k_sequence(k_sequence(r)) == r
    assert stabilizer_pair((1, 1, 2), (1, 2, 2), 3) == frozenset()


def test_standard_family_passes():
    for kind, ns in [(FINITE, (2, 3, 4)), (AFFINE, (2, 3, 4))]:
        for n in ns:
            for e in (2, 3):
                rep = verify_dot_properties(DotFamily.standard(kind, n, e))
                assert rep.passed, rep.failures[:3]
                assert sum(rep.checked.values()) > 0


def test_monodromy():
    for n, e in [(2, 2), (3, 3), (4, 2)]:
        fam = DotFamily.standard(AFFINE, n, e)
        y = fam.R.y
        for m in range(-e, e + 1):
            assert monodromy_shift(fam, m + e) == monodromy_shift(fam, m) + y


def test_invariant_shift_and_seed():
    R = realization(FINITE, 4)
    z = R.x(1) + R.x(2) + R.x(3) + R.x(4) + R.const(2)
    assert verify_dot_properties(DotFamily(FINITE, 4, 3, z=z)).passed
    with pytest.raises(ValueError):
        DotFamily(FINITE, 4, 3, z=R.x(1))
    RA = realization(AFFINE, 3)
    seeded = DotFamily.from_seed(AFFINE, 3, 3, (0, 1, 2), 1, RA.x(2) + RA.y * 3)
    assert seeded.z == RA.y * 3
    assert seeded.edge((0, 1, 2), 1) == RA.x(2) + RA.y * 3
    assert verify_dot_properties(seeded).passed


@pytest.mark.parametrize("n,e", [(2, 2), (2, 3), (3, 3)])
def test_failure_example(n, e):
    fe = failure_example(n, e)
    assert fe["standard_passes"] and fe["monodromy"] and fe["contradiction"]
    assert fe["standard_naive_repeat_failures"]
    assert not fe["corrupted_naive_repeat_failures"]
    assert fe["corrupted_dual_basis_failures"]
    assert fe["corrupted_monodromy_failures"]


def test_bubble_closed_forms():
    for a in range(4):
        for b in range(4):
            for m in range(-3, 6):
                for mode in ("pi", "xi"):
                    assert bubble(m, a, b, mode) == bubble_oracle(m, a, b, mode)
                    if m >= 0:
                        assert bubble(m, a, b, mode) == bubble_direct(m, a, b, mode)
    for a in range(4):
        for b in range(4):
            R = bubble_variables(a, b)[0]
            assert bubble(a - b, a, b, "pi") == R.const((-1) ** a)
            assert bubble(b - a, a, b, "xi") == R.const((-1) ** a)


def test_grassmannian_identity():
    for a in range(3):
        for b in range(1, 4):
            assert grassmannian_product(a, b, 0).constant_term() == SIGNS["grassmannian"]
            for t in range(1, 5):
                assert grassmannian_product(a, b, t).is_zero()


def test_degrees():
    assert crossing_kind(1, 1, 3) == "same"
    assert crossing_kind(1, 2, 4) == "adjacent"
    assert crossing_kind(1, 3, 4) == "distant"
    assert crossing_kind(0, 2, 3, AFFINE) == "adjacent"
    assert crossing_kind(0, 1, 2, AFFINE) == "funky"
    assert [crossing_degree(k) for k in ("same", "adjacent", "distant", "funky")] == [-2, 1, 0, 2]
    assert crossing_degree("auto", {"lam": (1, 2, 3), "i": 1, "j": 2, "e": 4}) == 1
    assert crossing_degree("auto", {"lam": (2, 2, 3), "i": 1, "j": 1, "e": 4}) is None
    with pytest.raises(ValueError):
        crossing_degree("same", {"lam": (1, 2, 3), "i": 1, "j": 2, "e": 4})
    assert cup_cap_degree({1}, set(), n=2) == 1
    assert cup_cap_degree({1, 2}, {1}, clockwise=False, n=3) == -2
    assert sideways_crossing_degree({1, 2}, {1}, {2}, set(), n=3) == 1
