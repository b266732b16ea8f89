"""Degree-zero hyperoctahedral homology.

``HO_0(A)`` is the cokernel of ``d: A^{(x)3} -> A``,
``d(a0 (x) a1 (x) a2) = a0 a1 a2 - a2 a1-bar a0``, which comes from the
partial resolution ``k <- k[Hom([n],[0])] <- k[Hom([n],[2])]`` given by
``epsilon`` and ``rho``.
"""

import functools
from dataclasses import dataclass, field

from .algebra import UnitFailure, bar_evaluate, elementary_tensor, encode_word, format_linear
from .category import enumerate_hom, ifas_compose, identity, mu, nu
from .linalg import CokernelPresentation, FreeModuleVector, IntegerLattice, SparseMatrix, rank
from .operads import lambda_object
from .scalars import QQ
from .simplicial import UnderChain, quotient_q


class WellDefinednessFailure(ArithmeticError):
    """The induced product on the quotient depends on representatives."""


# -- the partial resolution ----------------------------------------------------------


@dataclass
class PartialResolution:
    n: int
    ring: object
    hom0: list
    hom2: list
    index0: dict
    index2: dict
    epsilon: SparseMatrix
    rho: SparseMatrix

    def column(self, g):
        """``rho(g) = e_{mu_2 g} - e_{nu g}`` as a vector."""
        R = self.ring
        v = FreeModuleVector(len(self.hom0), {}, R)
        v = v.axpy(R.one(), FreeModuleVector.basis(len(self.hom0), self.index0[ifas_compose(mu(2), g)], R))
        return v.axpy(R.neg(R.one()), FreeModuleVector.basis(len(self.hom0), self.index0[ifas_compose(nu(), g)], R))


@functools.lru_cache(maxsize=None)
def partial_resolution(n, ring=QQ, cap=None):
    hom0 = enumerate_hom(n, 0, cap)
    hom2 = enumerate_hom(n, 2, cap)
    index0 = {f: k for k, f in enumerate(hom0)}
    R = ring
    one = R.one()
    eps = SparseMatrix(1, len(hom0), {(0, k): one for k in range(len(hom0))}, R)
    entries = {}
    m2, v = mu(2), nu()
    for c, g in enumerate(hom2):
        for r, x in ((index0[ifas_compose(m2, g)], one), (index0[ifas_compose(v, g)], R.neg(one))):
            y = R.add(entries.get((r, c), 0), x)
            if y == 0:
                entries.pop((r, c), None)
            else:
                entries[r, c] = y
    rho_m = SparseMatrix(len(hom0), len(hom2), entries, R)
    return PartialResolution(n, R, hom0, hom2, index0, {g: c for c, g in enumerate(hom2)}, eps, rho_m)


def epsilon(n, ring=QQ, cap=None):
    return partial_resolution(n, ring, cap).epsilon


def rho(n, ring=QQ, cap=None):
    return partial_resolution(n, ring, cap).rho


@dataclass
class ExactnessReport:
    n: int
    ring: object
    hom_size: int
    composite_zero: bool
    rank_kernel_epsilon: int
    rank_image_rho: int

    @property
    def ok(self):
        return self.composite_zero and self.rank_kernel_epsilon == self.rank_image_rho

    def lines(self):
        return [
            "exactness n=%d over %s: %s" % (self.n, self.ring, "pass" if self.ok else "FAIL"),
            "  |Hom([%d],[0])|            %d" % (self.n, self.hom_size),
            "  epsilon o rho = 0          %s" % self.composite_zero,
            "  rank ker epsilon           %d" % self.rank_kernel_epsilon,
            "  rank im rho                %d" % self.rank_image_rho,
        ]


def verify_exactness(n, ring=QQ, cap=None):
    res = partial_resolution(n, ring, cap)
    composite = res.epsilon @ res.rho
    return ExactnessReport(
        n,
        ring,
        len(res.hom0),
        composite.is_zero(),
        len(res.hom0) - rank(res.epsilon),
        rank(res.rho),
    )


# -- the boundary d and HO_0 -----------------------------------------------------------


def boundary_d(A):
    """Matrix ``d x d^3`` of ``a0 (x) a1 (x) a2 -> a0 a1 a2 - a2 a1-bar a0`` on basis tensors."""
    R = A.ring
    d = A.dimension
    e = [{i: R.one()} for i in range(d)]
    entries = {}
    for a in range(d):
        for b in range(d):
            ab = A._mul_dicts(e[a], e[b])
            for c in range(d):
                col = encode_word((a, b, c), d)
                lhs = A._mul_dicts(ab, e[c])
                rhs = A._mul_dicts(A._mul_dicts(e[c], A._bar[b]), e[a])
                for k in set(lhs) | set(rhs):
                    x = R.sub(lhs.get(k, 0), rhs.get(k, 0))
                    if x != 0:
                        entries[k, col] = x
    return SparseMatrix(d, d ** 3, entries, R)


@dataclass
class IdealReport:
    span_rank: int
    augmented_rank: int
    left_closed: bool
    right_closed: bool
    failure: tuple = None

    @property
    def is_ideal(self):
        return self.left_closed and self.right_closed


def _span_generators(A, D):
    """A basis (fields) or generating set (integers) of the column span of ``D``, as dicts."""
    R = A.ring
    if R.is_field:
        pres = CokernelPresentation(D, R)
        return list(pres._rref.values())
    lat = IntegerLattice(A.dimension)
    for col in D.columns():
        if not col.is_zero():
            lat.add(col.to_list())
    return [{i: x for i, x in enumerate(v) if x != 0} for v in lat.generators()]


def ideal_check(A, D=None):
    """Whether the span of ``d`` is a two-sided ideal, by augmenting it with all basis multiples."""
    R = A.ring
    D = boundary_d(A) if D is None else D
    gens = _span_generators(A, D)
    e = [{i: R.one()} for i in range(A.dimension)]
    products = {"left": [], "right": []}
    for r in gens:
        for k in range(A.dimension):
            products["left"].append((k, r, A._mul_dicts(e[k], r)))
            products["right"].append((k, r, A._mul_dicts(r, e[k])))

    def matrix(vectors):
        return SparseMatrix.from_columns(
            [FreeModuleVector(A.dimension, v, R) for v in vectors], A.dimension, R
        ) if vectors else SparseMatrix.zero(A.dimension, 0, R)

    span_rank = rank(matrix(gens))
    everything = gens + [p for side in products.values() for _, _, p in side]
    aug_rank = rank(matrix(everything))
    if R.is_field:
        pres = CokernelPresentation(matrix(gens), R)
        member = lambda v: pres.in_relations(FreeModuleVector(A.dimension, v, R))  # noqa: E731
    else:
        lat = IntegerLattice(A.dimension)
        for g in gens:
            lat.add([g.get(i, 0) for i in range(A.dimension)])
        member = lambda v: lat.contains([v.get(i, 0) for i in range(A.dimension)])  # noqa: E731
    closed = {}
    failure = None
    for side, items in products.items():
        closed[side] = True
        for k, r, p in items:
            if not member(p):
                closed[side] = False
                failure = failure or (side, A.names[k], r)
                break
    return IdealReport(span_rank, aug_rank, closed["left"], closed["right"], failure)


@dataclass
class HO0Result:
    """``HO_0(A)`` with its induced ring structure (over fields).

    Quotient coordinates refer to ``basis_names``: the basis elements of ``A``
    that are not pivots of the reduced relation span.
    """

    algebra: object
    boundary: SparseMatrix
    presentation: CokernelPresentation
    ideal: IdealReport
    basis_names: list = field(default_factory=list)
    table: dict = field(default_factory=dict)
    unit: object = None

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def dimension(self):
        return self.presentation.quotient_dimension

    @property
    def free_rank(self):
        return self.presentation.free_rank

    @property
    def torsion(self):
        return self.presentation.torsion

    def class_of(self, a):
        return self.presentation.project(a)

    def basis_class(self, k):
        return FreeModuleVector.basis(self.dimension, k, self.ring)

    def multiply(self, u, v):
        """Product of quotient classes through the stored table."""
        R = self.ring
        out = FreeModuleVector.zero(self.dimension, R)
        for k, x in u.items():
            for l, y in v.items():
                out = out.axpy(R.mul(x, y), self.table[k, l])
        return out

    def format_class(self, u):
        return format_linear(u, self.basis_names, self.ring)


def ho0(A):
    """``HO_0(A)`` as an explicit cokernel, with the induced product when the ground ring is a field."""
    D = boundary_d(A)
    pres = CokernelPresentation(D, A.ring)
    ideal = ideal_check(A, D)
    result = HO0Result(A, D, pres, ideal)
    if not A.ring.is_field:
        return result
    if not ideal.is_ideal:
        raise WellDefinednessFailure("relation span is not an ideal: %r" % (ideal.failure,))
    result.basis_names = [A.names[b] for b in pres.quotient_basis]
    q = pres.quotient_dimension
    for k in range(q):
        for l in range(q):
            a = pres.lift(FreeModuleVector.basis(q, k, A.ring))
            b = pres.lift(FreeModuleVector.basis(q, l, A.ring))
            result.table[k, l] = pres.project(A.mul(a, b))
    result.unit = pres.project(A.unit)
    return result


def check_representative_independence(result):
    """Products of representatives differing by a relation-span element land in the same class."""
    A = result.algebra
    pres = result.presentation
    R = A.ring
    q = result.dimension
    gens = [FreeModuleVector(A.dimension, r, R) for r in pres._rref.values()]
    for k in range(q):
        a = pres.lift(FreeModuleVector.basis(q, k, R))
        for r in gens:
            if not pres.project(A.mul(a, r)).is_zero() or not pres.project(A.mul(r, a)).is_zero():
                raise WellDefinednessFailure("product of %s with a relation is nonzero" % A.names[pres.quotient_basis[k]])
    return True


def check_ring_axioms(result):
    """Unit law and associativity of the quotient ring on basis classes."""
    q = result.dimension
    basis = [result.basis_class(k) for k in range(q)]
    for k, u in enumerate(basis):
        if result.multiply(result.unit, u) != u or result.multiply(u, result.unit) != u:
            raise UnitFailure(k, "left/right", result.basis_names)
    for u in basis:
        for v in basis:
            uv = result.multiply(u, v)
            for w in basis:
                if result.multiply(uv, w) != result.multiply(u, result.multiply(v, w)):
                    raise ArithmeticError("quotient product is not associative")
    return True


# -- the Pontryagin product in degree zero -------------------------------------------------


def chain_class(result, rank_, x):
    """Class in ``HO_0`` of a degree-zero generator ``x`` in ``A^{(x)(rank_+1)}``, folded to ``[0]`` by ``mu``."""
    A = result.algebra
    if rank_ == -1:
        a = A.unit.scale(x.value[0])
    else:
        a = bar_evaluate(mu(rank_), x, A).value
    return result.presentation.project(a)


def pontryagin0(result, u, v, check_folds=True):
    """Degree-zero Pontryagin product computed at chain level.

    The generators ``(id_[0], a)`` and ``(id_[0], b)`` are paired by the
    arity-two structure map at the identity vertex of ``E Sigma_2``, which
    concatenates them to ``(id_[1], a (x) b)``. The quotient map ``q`` sends
    that to a degree-zero chain over ``[1]``, whose class is read off after
    folding to ``[0]``. With ``check_folds`` every fold ``[1] -> [0]`` is
    compared, which is the relation defining ``HO_0``.
    """
    A = result.algebra
    if not A.ring.is_field:
        raise ValueError("the ring structure is only computed over a field")
    if len(u) != result.dimension or len(v) != result.dimension:
        raise ValueError("classes do not belong to this HO_0")
    pres = result.presentation
    a, b = pres.lift(u), pres.lift(v)
    base = lambda_object((0, 1), [identity(0), identity(0)])
    chain = UnderChain(base, (), elementary_tensor(A, [a, b]))
    qc = quotient_q(chain, A)
    out = chain_class(result, qc.source, qc.x)
    if check_folds:
        for f in enumerate_hom(qc.source, 0):
            other = pres.project(bar_evaluate(f, qc.x, A).value)
            if other != out:
                raise WellDefinednessFailure("fold %s gives a different class" % f)
    return out
