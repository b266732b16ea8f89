import random

import pytest

from hyperoct.algebra import bar_evaluate, elementary_tensor, matrix_algebra, scalar_algebra
from hyperoct.category import LabelledFiberMap, identity, ifas_compose, mu, nu, random_morphism
from hyperoct.scalars import GF, QQ
from hyperoct.simplicial import (
    GZChain,
    UnderChain,
    gz_degeneracy,
    gz_face,
    quotient_q,
    random_tensor,
    under_degeneracy,
    under_face,
    verify_quotient,
    verify_simplicial,
)

A = matrix_algebra(scalar_algebra(GF(3)), 2)


def act(f, x):
    return bar_evaluate(f, x, A)


def sample(rng):
    return [A.basis(rng.randrange(4)) for _ in range(3)]


def test_faces_of_length_one():
    a0, a1, _ = sample(random.Random(0))
    x = elementary_tensor(A, [a0, a1])
    c = GZChain(1, (mu(1),), x)
    assert gz_face(0, c, act) == GZChain(0, (), elementary_tensor(A, [A.mul(a0, a1)]))
    assert gz_face(1, c, act) == GZChain(1, (), x)


def test_inner_face_composes():
    rng = random.Random(1)
    f = random_morphism(1, 2, rng)
    c = GZChain(1, (f, nu()), random_tensor(A, 2, rng))
    d = gz_face(1, c, act)
    assert d.length == 1 and d.maps[0] == ifas_compose(nu(), f)
    assert d.x == c.x


def test_degeneracy_inserts_identity():
    c = GZChain(2, (nu(),), None)
    assert gz_degeneracy(0, c).maps == (identity(2), nu())
    assert gz_degeneracy(1, c).maps == (nu(), identity(0))


def test_index_errors():
    c0 = GZChain(0, (), None)
    with pytest.raises(IndexError):
        gz_face(0, c0, act)
    with pytest.raises(IndexError):
        gz_degeneracy(2, c0)
    with pytest.raises(ValueError):
        GZChain(0, (nu(),), None)


def test_simplicial_identities():
    rep = verify_simplicial(samples=60)
    assert rep.ok, rep.lines()
    rep = verify_simplicial(A=scalar_algebra(QQ), samples=30, seed=3)
    assert rep.ok, rep.lines()


def test_quotient_examples():
    a0, a1, a2 = sample(random.Random(2))
    a = elementary_tensor(A, [a0])
    assert quotient_q(UnderChain(identity(0), (), a), A) == GZChain(0, (), a)
    x = elementary_tensor(A, [a0, a1, a2])
    got = quotient_q(UnderChain(nu(), (), x), A)
    assert got == GZChain(0, (), elementary_tensor(A, [A.mul(A.mul(a2, A.bar(a1)), a0)]))


def test_under_faces():
    x = elementary_tensor(A, [A.unit])
    c = UnderChain(identity(0), (LabelledFiberMap(0, 1, (((0, 1),), ())),), x)
    d0 = under_face(0, c)
    assert d0.length == 0 and d0.base.target_rank == 1
    assert under_degeneracy(0, c).maps[0] == identity(0)
    with pytest.raises(IndexError):
        under_face(0, UnderChain(identity(0), (), x))


def test_quotient_is_simplicial():
    rep = verify_quotient(samples=60)
    assert rep.ok, rep.lines()
