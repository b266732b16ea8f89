import itertools
import pathlib
import random

import pytest

from hyperoct import corpus
from hyperoct.algebra import (
    AlgebraSyntaxError,
    InvolutionFailure,
    InvolutiveAlgebra,
    NonAssociative,
    UnitFailure,
    bar_evaluate,
    bar_evaluate_monoid,
    bar_matrix,
    basis_tensor,
    cyclic_group_table,
    decode_word,
    elementary_tensor,
    gaussian_numbers,
    group_algebra,
    letter,
    load_algebra,
    make_algebra,
    matrix_algebra,
    parse_algebra,
    scalar_algebra,
    truncated_polynomial,
    InvolutiveWord,
    Tensor,
)
from hyperoct.category import LabelledFiberMap, enumerate_hom, identity, ifas_compose, mu, nu, random_morphism
from hyperoct.linalg import FreeModuleVector
from hyperoct.scalars import GF, QQ

ALGEBRA_DIR = pathlib.Path(__file__).resolve().parent.parent / "algebras"


def test_make_algebra_examples():
    A = group_algebra(cyclic_group_table(2), GF(2))
    assert A.dimension == 2 and A.names == ("e", "g1")
    M = matrix_algebra(scalar_algebra(QQ), 2)
    assert M.dimension == 4
    assert M.bar(M.basis(1)) == M.basis(2)


def test_bad_involution_rejected():
    # the identity map is not an anti-automorphism of M_2(Q)
    M = matrix_algebra(scalar_algebra(QQ), 2)
    products = {(i, j): M.product(i, j) for i in range(4) for j in range(4)}
    with pytest.raises(InvolutionFailure):
        InvolutiveAlgebra(QQ, M.names, products, M.unit, [{i: 1} for i in range(4)])
    # an order-three automorphism of Q[C3] does not square to the identity
    G = group_algebra(cyclic_group_table(3), QQ)
    products = {(i, j): G.product(i, j) for i in range(3) for j in range(3)}
    with pytest.raises(InvolutionFailure):
        InvolutiveAlgebra(QQ, G.names, products, {0: 1}, [{0: 1}, {2: 1}, {0: 1}])


def test_other_validation_errors():
    with pytest.raises(NonAssociative):
        # a*a = b, a*b = a, b*a = 0 violates (a a) a = a (a a)
        InvolutiveAlgebra(QQ, ["one", "a", "b"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}, (1, 1): {2: 1}, (1, 2): {1: 1}}, {0: 1}, [{0: 1}, {1: 1}, {2: 1}])
    with pytest.raises(UnitFailure):
        InvolutiveAlgebra(QQ, ["one", "a"], {(0, 0): {0: 1}, (0, 1): {1: 1}}, {0: 1}, [{0: 1}, {1: 1}])


def test_builders():
    C3 = group_algebra(cyclic_group_table(3), GF(2))
    assert C3.dimension == 3
    assert C3.bar(C3.basis(1)) == C3.basis(2) and C3.bar(C3.basis(2)) == C3.basis(1)
    assert matrix_algebra(scalar_algebra(GF(3)), 2).dimension == 4
    P = truncated_polynomial(GF(5), 3)
    assert P.dimension == 3 and P.has_trivial_involution() and P.is_commutative()
    B = truncated_polynomial(QQ, 2, "y", involution=-1)
    assert matrix_algebra(B, 3).dimension == 9 * 2
    G = gaussian_numbers(QQ)
    i = G.basis(1)
    assert G.mul(i, i) == G.unit.scale(-1)


def random_element(A, rng):
    return FreeModuleVector(A.dimension, {k: A.ring(rng.randint(-2, 2)) for k in range(A.dimension)}, A.ring)


def test_bar_evaluate_examples():
    A = matrix_algebra(scalar_algebra(GF(3)), 2)
    rng = random.Random(0)
    a0, a1, a2 = (random_element(A, rng) for _ in range(3))
    assert bar_evaluate(mu(1), elementary_tensor(A, [a0, a1]), A) == elementary_tensor(A, [A.mul(a0, a1)])
    got = bar_evaluate(nu(), elementary_tensor(A, [a0, a1, a2]), A)
    assert got == elementary_tensor(A, [A.mul(A.mul(a2, A.bar(a1)), a0)])
    inj = LabelledFiberMap(0, 1, (((0, 1),), ()))
    assert bar_evaluate(inj, elementary_tensor(A, [a0]), A) == elementary_tensor(A, [a0, A.unit])


def test_gaussian_nu():
    G = gaussian_numbers(QQ)
    one, i = G.basis(0), G.basis(1)
    out = bar_evaluate(nu(), elementary_tensor(G, [one, i, one]), G)
    assert out == elementary_tensor(G, [i.scale(-1)])


def test_monoid_examples():
    x1, x2, x3 = letter(1), letter(2), letter(3)
    assert bar_evaluate_monoid(identity(0), (x1,)) == (x1,)
    assert bar_evaluate_monoid(nu(), (x1, x2, x3)) == (x3 * x2.bar() * x1,)
    assert bar_evaluate_monoid(mu(1), (x1, x2)) == (x1 * x2,)
    w = x1 * x2.bar()
    assert w.bar().bar() == w and str(w.bar()) == "x2 ~x1"


def test_functoriality_exhaustive_low_ranks():
    A = group_algebra(cyclic_group_table(2), GF(2))
    ranks = range(-1, 2)
    count = 0
    for a, b, c in itertools.product(ranks, repeat=3):
        for f in enumerate_hom(a, b):
            Mf = bar_matrix(f, A)
            for g in enumerate_hom(b, c):
                assert bar_matrix(ifas_compose(g, f), A) == bar_matrix(g, A) @ Mf
                count += 1
    assert count > 500


def random_pair(rng, max_rank=3):
    a = rng.randint(-1, max_rank)
    b = rng.randint(-1 if a == -1 else 0, max_rank)
    c = rng.randint(-1 if b == -1 else 0, max_rank)
    return random_morphism(a, b, rng), random_morphism(b, c, rng)


def random_tensor(A, arity, rng):
    size = A.dimension ** arity
    return Tensor(arity, FreeModuleVector(size, {rng.randrange(size): 1 for _ in range(3)}, A.ring))


def test_functoriality_random():
    A = group_algebra(cyclic_group_table(2), GF(2))
    rng = random.Random(0)
    for _ in range(1000):
        f, g = random_pair(rng)
        x = random_tensor(A, f.source_rank + 1, rng)
        assert bar_evaluate(ifas_compose(g, f), x, A) == bar_evaluate(g, bar_evaluate(f, x, A), A)


def test_identity_on_spanning_set():
    A = matrix_algebra(scalar_algebra(GF(3)), 2)
    for n in range(-1, 3):
        for idx in range(A.dimension ** (n + 1)):
            t = basis_tensor(A, decode_word(idx, A.dimension, n + 1))
            assert bar_evaluate(identity(n), t, A) == t


def symmetric_group_algebra(ring):
    perms = list(itertools.permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return perms, index, group_algebra(table, ring)


def test_monoid_and_algebra_agree():
    # send x_k to a group element of S3 and bars to inverses; both evaluations must agree
    perms, index, A = symmetric_group_algebra(GF(3))
    gens = {1: (1, 0, 2), 2: (1, 2, 0), 3: (0, 2, 1)}

    def inverse(p):
        out = [0] * 3
        for i, x in enumerate(p):
            out[x] = i
        return tuple(out)

    def image(word):
        acc = (0, 1, 2)
        for k, z in word.letters:
            g = gens[k] if z == 1 else inverse(gens[k])
            acc = tuple(acc[g[i]] for i in range(3))
        return A.basis(index[acc])

    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(0, 3)
        f = random_morphism(n, rng.randint(0, 3), rng)
        words = tuple(InvolutiveWord(tuple((rng.randint(1, 3), rng.choice((1, -1))) for _ in range(rng.randint(0, 2)))) for _ in range(n + 1))
        lhs = elementary_tensor(A, [image(w) for w in bar_evaluate_monoid(f, words)])
        rhs = bar_evaluate(f, elementary_tensor(A, [image(w) for w in words]), A)
        assert lhs == rhs


def test_text_format_round_trip():
    for name in corpus.NAMES:
        A = corpus.build(name)
        B = parse_algebra(A.to_text())
        assert B.to_text() == A.to_text()


def test_shipped_files_match_builders():
    for name in corpus.NAMES:
        assert load_algebra(ALGEBRA_DIR / ("%s.alg" % name)).to_text() == corpus.build(name).to_text()


def test_make_algebra_from_text():
    text = "ring F2\nbasis e g\nmul e e = e\nmul e g = g\nmul g e = g\nmul g g = e\nunit = e\ninv e = e\ninv g = g\n"
    A = make_algebra(text)
    assert A.dimension == 2 and str(A.ring) == "F2"


@pytest.mark.parametrize(
    "text",
    [
        "basis a\nring Q\n",
        "ring Q\nbasis one\nunit = one\n",
        "ring Q\nbasis one\nunit = one\ninv one = one\nmul one one = two\n",
        "ring Q\nbasis one\nunit = one\ninv one = one\nfrobnicate\n",
    ],
)
def test_text_format_errors(text):
    with pytest.raises((AlgebraSyntaxError, InvolutionFailure)):
        parse_algebra(text)
