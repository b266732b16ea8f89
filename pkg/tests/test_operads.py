import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperoct.algebra import InvolutiveWord, bar_evaluate_monoid, letter
from hyperoct.category import (
    LabelledFiberMap,
    SignedPermutation,
    identity,
    ifas_compose,
    mu,
    nu,
    parse_morphism,
    random_morphism,
    right_action,
)
from hyperoct.operads import (
    EGroupCategory,
    Truncation,
    TruncationExceeded,
    act_H,
    act_on_tuple,
    evaluate_E,
    factorize_E_inverse,
    from_one_line,
    lambda_morphism,
    lambda_object,
    operad_gamma,
    perm_compose,
    perm_identity,
    perm_inverse,
    permutations,
    same_orbit,
    to_one_line,
    tuple_concat,
    tuple_theta,
    verify_evaluation,
    verify_module_axioms,
    verify_operad_axioms,
    verify_tuple_category,
)

x1, x2, x3, x4 = (letter(k) for k in range(1, 5))


def split(xs, sizes):
    out, pos = [], 0
    for k in sizes:
        out.append(tuple(xs[pos:pos + k]))
        pos += k
    return out


def gamma_oracle(s, taus, xs):
    # act inside each block, then move the blocks around
    blocks = split(xs, [len(t) for t in taus])
    return tuple_theta(s, [act_on_tuple(t, b) for t, b in zip(taus, blocks)])


def test_action_is_a_homomorphism():
    xs = ("a", "b", "c", "d")
    for p in permutations(4):
        for q in permutations(4)[::5]:
            assert act_on_tuple(perm_compose(p, q), xs) == act_on_tuple(p, act_on_tuple(q, xs))


def test_gamma_examples():
    s = from_one_line("2 1")
    g = operad_gamma(s, [perm_identity(1), perm_identity(2)])
    assert to_one_line(g) == "3 1 2"
    assert act_on_tuple(g, ("x1", "x2", "x3")) == ("x2", "x3", "x1")
    assert operad_gamma(perm_identity(2), [(1, 0), (0,)]) == (1, 0, 2)
    assert operad_gamma(perm_identity(1), [(2, 0, 1)]) == (2, 0, 1)


def test_gamma_against_tuple_oracle():
    for s in permutations(3):
        for sizes in itertools.product(range(3), repeat=3):
            for taus in itertools.product(*(permutations(k) for k in sizes)):
                xs = tuple(range(sum(sizes)))
                assert act_on_tuple(operad_gamma(s, taus), xs) == gamma_oracle(s, taus, xs)


def test_theta_example():
    assert tuple_theta((1, 0), [(x1,), (x2, x3)]) == (x2, x3, x1)
    assert tuple_theta((), []) == ()


def test_one_line_notation():
    assert from_one_line("1 3 2") == (0, 2, 1)
    assert to_one_line((2, 0, 1)) == "3 1 2"
    with pytest.raises(ValueError):
        from_one_line("1 1")


def test_group_category():
    E = EGroupCategory.symmetric(3)
    for a, b, c in itertools.product(E.elements, repeat=3):
        (u,) = E.hom(a, b)
        (v,) = E.hom(b, c)
        assert E.compose(v, u) == E.hom(a, c)[0]
        assert perm_compose(u, a) == b
    assert all(E.identity(g) == perm_identity(3) for g in E.elements)


def test_operad_verifier_small():
    rep = verify_operad_axioms(max_m=2, max_k=2, max_free=3)
    assert rep.ok, rep.lines()
    assert rep.checked["associativity"] > 0 and rep.checked["equivariance-A"] > 0


def test_tuple_category():
    rep = verify_tuple_category(Truncation(2, 1, 2), samples=100)
    assert rep.ok, rep.lines()


def test_truncation_errors():
    tr = Truncation(alphabet=2, word_length=1, tuple_length=2)
    assert tuple_concat((x1,), (x2,), tr) == (x1, x2)
    with pytest.raises(TruncationExceeded):
        tuple_concat((x1,), (x2, x1), tr)
    with pytest.raises(TruncationExceeded):
        tuple_concat((x1 * x2,), (), tr)
    with pytest.raises(TruncationExceeded):
        tuple_theta((0,), [(x3,)], tr)


def test_lambda_examples():
    rng = random.Random(0)
    for _ in range(50):
        f = random_morphism(rng.randint(0, 3), rng.randint(0, 3), rng)
        assert lambda_object((0,), (f,)) == f
    xs = (x1, x2, x3, x4)
    lam = lambda_object((0, 1), (mu(1), mu(1)))
    assert bar_evaluate_monoid(lam, xs) == (x1 * x2, x3 * x4)
    lam = lambda_object((1, 0), (mu(1), mu(1)))
    assert bar_evaluate_monoid(lam, xs) == (x3 * x4, x1 * x2)
    lam = lambda_object((1, 0), (identity(-1), nu()))
    assert lam.source_rank == 2 and lam.target_rank == 0
    assert bar_evaluate_monoid(lam, (x1, x2, x3)) == (x3 * x2.bar() * x1,)


def test_lambda_of_morphisms():
    rng = random.Random(1)
    for _ in range(200):
        m = rng.randint(1, 3)
        s = tuple(rng.sample(range(m), m))
        t = tuple(rng.sample(range(m), m))
        fs = [random_morphism(rng.randint(-1, 1), rng.randint(0, 2), rng) for _ in range(m)]
        gs = [random_morphism(f.target_rank, rng.randint(0, 2), rng) for f in fs]
        h = lambda_morphism(s, t, fs, gs)
        lhs = ifas_compose(h, lambda_object(s, fs))
        rhs = lambda_object(t, [ifas_compose(g, f) for g, f in zip(gs, fs)])
        assert lhs == rhs


def test_module_verifier_small():
    rep = verify_module_axioms(max_m=2, max_j=1, rank_cap=2, samples=50)
    assert rep.ok, rep.lines()


def test_evaluation_examples():
    assert evaluate_E(mu(1), (x1, x2)) == (x1 * x2,)
    assert evaluate_E(nu(), (x1, x2, x3)) == (x3 * x2.bar() * x1,)
    with pytest.raises(ValueError):
        evaluate_E(mu(1), (x1,))


def test_factorization_examples():
    m, f, ys = factorize_E_inverse((x1.bar(),))
    assert m == 1 and f == parse_morphism("HOM 0 0 : 0^-") and ys == (x1,)
    assert same_orbit((f, ys), (identity(0), (x1.bar(),)))
    assert not same_orbit((f, ys), (identity(0), (x1,)))
    t = (x2 * x1.bar(), InvolutiveWord(()), x3)
    m, f, ys = factorize_E_inverse(t)
    assert m == 3 and evaluate_E(f, ys) == t
    m, f, ys = factorize_E_inverse(())
    assert m == 0 and f == LabelledFiberMap(-1, -1, ()) and ys == ()


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_evaluation_is_orbit_invariant(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 4)
    f = random_morphism(m - 1, rng.randint(0, 2), rng)
    ys = tuple(letter(rng.randint(1, 3)) for _ in range(m))
    h = SignedPermutation(tuple(rng.choice((1, -1)) for _ in range(m)), tuple(rng.sample(range(m), m)))
    assert evaluate_E(right_action(f, h), ys) == evaluate_E(f, act_H(h, ys))
    assert same_orbit((right_action(f, h), ys), (f, act_H(h, ys)))


def test_evaluation_verifier_small():
    rep = verify_evaluation(alphabet=2, word_length=2, tuple_length=2, max_letters=3, samples=50)
    assert rep.ok, rep.lines()


def test_inverse_permutations():
    for p in permutations(4):
        assert perm_compose(p, perm_inverse(p)) == perm_identity(4)
