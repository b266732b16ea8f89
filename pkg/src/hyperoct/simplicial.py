"""Gabriel-Zisman chains, their face and degeneracy maps, and the quotient map ``q``.

A chain generator of the Gabriel-Zisman complex ``C_*(C, F)`` is a string of
composable morphisms ``C_0 -> C_1 -> ... -> C_n`` together with an element
``x`` of ``F(C_0)``. Strings are stored in order of application:
``maps[0]`` is ``f_1``.
"""

import random
from dataclasses import dataclass

from .algebra import Tensor, bar_evaluate, matrix_algebra, scalar_algebra
from .category import identity, ifas_compose, random_morphism
from .linalg import FreeModuleVector
from .operads import VerificationReport
from .scalars import GF


@dataclass(frozen=True)
class GZChain:
    """``(f_n, ..., f_1, x)`` with ``maps = (f_1, ..., f_n)`` and ``x`` in ``F(C_0)``."""

    source: int
    maps: tuple
    x: object

    def __post_init__(self):
        obj = self.source
        for f in self.maps:
            if f.source_rank != obj:
                raise ValueError("string is not composable at [%d]" % obj)
            obj = f.target_rank

    @property
    def length(self):
        return len(self.maps)

    def object(self, i):
        """``C_i``."""
        return self.source if i == 0 else self.maps[i - 1].target_rank


def gz_face(i, chain, act, compose=ifas_compose):
    """The face ``d_i``; ``act(f, x)`` is the functor ``F`` on morphisms."""
    n = chain.length
    if n == 0 or not 0 <= i <= n:
        raise IndexError("face d_%d undefined on a chain of length %d" % (i, n))
    fs = chain.maps
    if i == 0:
        return GZChain(fs[0].target_rank, fs[1:], act(fs[0], chain.x))
    if i == n:
        return GZChain(chain.source, fs[:-1], chain.x)
    return GZChain(chain.source, fs[:i - 1] + (compose(fs[i], fs[i - 1]),) + fs[i + 1:], chain.x)


def gz_degeneracy(i, chain, ident=identity):
    """The degeneracy ``s_i``: insert the identity of ``C_i`` after ``f_i``."""
    n = chain.length
    if not 0 <= i <= n:
        raise IndexError("degeneracy s_%d undefined on a chain of length %d" % (i, n))
    fs = chain.maps
    return GZChain(chain.source, fs[:i] + (ident(chain.object(i)),) + fs[i:], chain.x)


def random_string(rng, source, length, max_rank=2):
    maps = []
    obj = source
    for _ in range(length):
        target = rng.randint(-1 if obj == -1 else 0, max_rank)
        maps.append(random_morphism(obj, target, rng))
        obj = target
    return tuple(maps)


def random_tensor(A, arity, rng, terms=3):
    d = A.dimension
    size = d ** arity
    entries = {}
    for _ in range(terms):
        entries[rng.randrange(size)] = A.ring(rng.randint(-3, 3))
    return Tensor(arity, FreeModuleVector(size, entries, A.ring))


def default_test_algebra():
    return matrix_algebra(scalar_algebra(GF(3)), 2)


def verify_simplicial(A=None, samples=100, max_length=3, seed=0):
    """Every simplicial identity on random strings over ``H_A``, for all admissible ``(i, j)``."""
    A = A or default_test_algebra()
    act = lambda f, x: bar_evaluate(f, x, A)  # noqa: E731
    face = lambda i, c: gz_face(i, c, act)  # noqa: E731
    deg = gz_degeneracy
    rng = random.Random(seed)
    rep = VerificationReport("simplicial")
    for _ in range(samples):
        n = rng.randint(0, max_length)
        src = rng.randint(-1, 2)
        c = GZChain(src, random_string(rng, src, n), random_tensor(A, src + 1, rng))
        for j in range(n + 1):
            for i in range(j):
                if n >= 2:
                    rep.check("d_i d_j", face(i, face(j, c)) == face(j - 1, face(i, c)), (i, j, c))
            for i in range(j + 1):
                rep.check("s_i s_j", deg(i, deg(j, c)) == deg(j + 1, deg(i, c)), (i, j, c))
            s = deg(j, c)
            for i in range(n + 2):
                if i < j:
                    rep.check("d_i s_j (i<j)", face(i, s) == deg(j - 1, face(i, c)), (i, j, c))
                elif i in (j, j + 1):
                    rep.check("d_i s_j = id", face(i, s) == c, (i, j, c))
                else:
                    rep.check("d_i s_j (i>j+1)", face(i, s) == deg(j, face(i - 1, c)), (i, j, c))
    return rep


# -- chains of IF<A> and the quotient map ------------------------------------------


@dataclass(frozen=True)
class UnderChain:
    """A generator of ``C_n([m-1] | Delta H_+, H_A o forget)``: ``base: [m-1] -> C_0``, a string, ``a`` of arity ``m``."""

    base: object
    maps: tuple
    a: object

    def __post_init__(self):
        if self.a.arity != self.base.source_rank + 1:
            raise ValueError("tensor of arity %d over a generator from [%d]" % (self.a.arity, self.base.source_rank))
        GZChain(self.base.target_rank, self.maps, None)

    @property
    def length(self):
        return len(self.maps)


def under_face(i, chain):
    """Faces of the nerve of the under-category; ``d_0`` absorbs ``f_1`` into the base object."""
    n = chain.length
    if n == 0 or not 0 <= i <= n:
        raise IndexError("face d_%d undefined on a chain of length %d" % (i, n))
    fs = chain.maps
    if i == 0:
        return UnderChain(ifas_compose(fs[0], chain.base), fs[1:], chain.a)
    if i == n:
        return UnderChain(chain.base, fs[:-1], chain.a)
    return UnderChain(chain.base, fs[:i - 1] + (ifas_compose(fs[i], fs[i - 1]),) + fs[i + 1:], chain.a)


def under_degeneracy(i, chain):
    n = chain.length
    if not 0 <= i <= n:
        raise IndexError("degeneracy s_%d undefined on a chain of length %d" % (i, n))
    obj = chain.base.target_rank if i == 0 else chain.maps[i - 1].target_rank
    fs = chain.maps
    return UnderChain(chain.base, fs[:i] + (identity(obj),) + fs[i:], chain.a)


def quotient_q(chain, A):
    """``((g; f_n, ..., f_1), a) -> (f_n, ..., f_1, H_A(g)(a))``."""
    return GZChain(chain.base.target_rank, chain.maps, bar_evaluate(chain.base, chain.a, A))


def verify_quotient(A=None, samples=100, max_length=3, seed=0):
    """``q`` commutes with every face and degeneracy on sampled generators."""
    A = A or default_test_algebra()
    act = lambda f, x: bar_evaluate(f, x, A)  # noqa: E731
    rng = random.Random(seed)
    rep = VerificationReport("quotient")
    for _ in range(samples):
        m = rng.randint(0, 2)
        c0 = rng.randint(-1 if m == 0 else 0, 2)
        base = random_morphism(m - 1, c0, rng)
        n = rng.randint(1, max_length)
        c = UnderChain(base, random_string(rng, c0, n), random_tensor(A, m, rng))
        qc = quotient_q(c, A)
        for i in range(n + 1):
            rep.check("q d_i = d_i q", quotient_q(under_face(i, c), A) == gz_face(i, qc, act), (i, c))
            rep.check("q s_i = s_i q", quotient_q(under_degeneracy(i, c), A) == gz_degeneracy(i, qc), (i, c))
    return rep
