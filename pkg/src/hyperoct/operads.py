"""The categorical Barratt-Eccles operad, the tuple category and the under-category module.

Permutations are tuples in 0-indexed one-line notation (``p[i]`` is the image
of ``i``) and compose as functions. A permutation acts on tuples by moving
entry ``i`` to position ``p[i]``, so ``gamma(s; t_1, ..., t_m)`` applies
``t_i`` inside block ``i`` and then moves block ``i`` to block position
``s[i]``.
"""

import functools
import itertools
import random
from dataclasses import dataclass, field

from .algebra import EMPTY_WORD, InvolutiveWord, bar_evaluate_monoid
from .category import (
    PLUS,
    LabelledFiberMap,
    SignedPermutation,
    automorphism,
    block_sum,
    enumerate_hom,
    ifas_compose,
    identity,
    random_morphism,
    right_action,
    signed_permutations,
    sp_compose,
    to_deltaH,
)


class TruncationExceeded(ValueError):
    pass


# -- permutations ------------------------------------------------------------


def perm_compose(a, b):
    """``a o b``."""
    if len(a) != len(b):
        raise ValueError("cannot compose permutations of sizes %d and %d" % (len(a), len(b)))
    return tuple(a[x] for x in b)


def perm_inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_identity(m):
    return tuple(range(m))


def permutations(m):
    return list(itertools.permutations(range(m)))


def act_on_tuple(p, xs):
    xs = tuple(xs)
    if len(xs) != len(p):
        raise ValueError("permutation of size %d acting on %d entries" % (len(p), len(xs)))
    out = [None] * len(xs)
    for i, x in enumerate(xs):
        out[p[i]] = x
    return tuple(out)


def to_one_line(p):
    """External 1-indexed one-line notation."""
    return " ".join(str(x + 1) for x in p)


def from_one_line(text):
    p = tuple(int(x) - 1 for x in text.split())
    if sorted(p) != list(range(len(p))):
        raise ValueError("%r is not a permutation" % text)
    return p


def block_permutation(s, sizes):
    """Move block ``i`` (of length ``sizes[i]``) to block position ``s[i]``, keeping its contents in order."""
    if len(s) != len(sizes):
        raise ValueError("%d blocks but a permutation of size %d" % (len(sizes), len(s)))
    inv = perm_inverse(s)
    out_offset = [0] * len(s)
    acc = 0
    for r in range(len(s)):
        out_offset[inv[r]] = acc
        acc += sizes[inv[r]]
    out = []
    for i, k in enumerate(sizes):
        out.extend(out_offset[i] + t for t in range(k))
    return tuple(out)


def direct_sum(*perms):
    out = []
    off = 0
    for p in perms:
        out.extend(off + x for x in p)
        off += len(p)
    return tuple(out)


def operad_gamma(s, taus):
    """Operad composition in ``D_Cat`` on objects: ``tau_i`` within block ``i``, blocks permuted by ``s``."""
    taus = tuple(taus)
    if len(taus) != len(s):
        raise ValueError("operation of arity %d given %d inputs" % (len(s), len(taus)))
    return perm_compose(block_permutation(s, [len(t) for t in taus]), direct_sum(*taus))


class EGroupCategory:
    """The translation category of a finite group: one morphism ``g2 g1^-1`` from ``g1`` to ``g2``."""

    def __init__(self, elements, mul, inverse):
        self.elements = list(elements)
        self.mul = mul
        self.inverse = inverse

    @classmethod
    def symmetric(cls, m):
        return cls(permutations(m), perm_compose, perm_inverse)

    def hom(self, g1, g2):
        return [self.mul(g2, self.inverse(g1))]

    def compose(self, v2, v1):
        return self.mul(v2, v1)

    def identity(self, g):
        return self.mul(g, self.inverse(g))


@dataclass
class VerificationReport:
    """Instance counts per law and the first few violations."""

    name: str
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def check(self, law, condition, instance):
        self.checked[law] = self.checked.get(law, 0) + 1
        if not condition:
            if len(self.failures) < 20:
                self.failures.append((law, instance))

    def merge(self, other):
        for law, n in other.checked.items():
            self.checked[law] = self.checked.get(law, 0) + n
        self.failures.extend(other.failures)
        return self

    def lines(self):
        out = ["%s: %s" % (self.name, "pass" if self.ok else "FAIL")]
        for law in sorted(self.checked):
            out.append("  %-28s %d checked" % (law, self.checked[law]))
        for law, inst in self.failures:
            out.append("  violation %s: %r" % (law, inst))
        return out


def _compositions(total_max, parts, part_max):
    """Tuples of ``parts`` integers in ``[0, part_max]`` with sum ``<= total_max``."""
    for ks in itertools.product(range(part_max + 1), repeat=parts):
        if sum(ks) <= total_max:
            yield ks


def _choices(arities):
    return itertools.product(*[permutations(k) for k in arities])


def verify_operad_axioms(max_m=3, max_k=3, max_total=None, max_free=4):
    """Exhaustive check of the operad laws of ``D_Cat`` on permutations.

    Unit and both equivariance laws run over every ``m <= max_m`` and inner
    arities ``k_i <= max_k``. Associativity also ranges over third-level
    arities ``<= max_k`` but only for middle totals ``sum k_i <= max_total``
    (default ``max_m``). Freeness and contractibility run for ``m <= max_free``.
    """
    max_total = max_m if max_total is None else max_total
    rep = VerificationReport("operad")
    for m in range(max_m + 1):
        for c in permutations(m):
            rep.check("unit-right", operad_gamma(c, [(0,)] * m) == c, c)
    for k in range(max_k + 1):
        for d in permutations(k):
            rep.check("unit-left", operad_gamma((0,), [d]) == d, d)
    for m in range(max_m + 1):
        cs = permutations(m)
        for ks in _compositions(m * max_k, m, max_k):
            for ds in _choices(ks):
                base = {c: operad_gamma(c, ds) for c in cs}
                for s in cs:
                    bp = block_permutation(s, ks)
                    inv = perm_inverse(s)
                    for c in cs:
                        lhs = base[perm_compose(c, s)] if perm_compose(c, s) in base else operad_gamma(perm_compose(c, s), ds)
                        rhs = perm_compose(operad_gamma(c, [ds[inv[r]] for r in range(m)]), bp)
                        rep.check("equivariance-A", lhs == rhs, (c, s, ds))
                for taus in _choices(ks):
                    tsum = direct_sum(*taus)
                    for c in cs:
                        lhs = operad_gamma(c, [perm_compose(d, t) for d, t in zip(ds, taus)])
                        rhs = perm_compose(base[c], tsum)
                        rep.check("equivariance-B", lhs == rhs, (c, ds, taus))
    for m in range(max_m + 1):
        cs = permutations(m)
        for ks in _compositions(max_total, m, max_k):
            k = sum(ks)
            for ls in itertools.product(range(max_k + 1), repeat=k):
                for ds in _choices(ks):
                    for es in _choices(ls):
                        inner = []
                        off = 0
                        for d, ki in zip(ds, ks):
                            inner.append(operad_gamma(d, es[off:off + ki]))
                            off += ki
                        for c in cs:
                            lhs = operad_gamma(operad_gamma(c, ds), es)
                            rhs = operad_gamma(c, inner)
                            rep.check("associativity", lhs == rhs, (c, ds, es))
    for m in range(max_free + 1):
        cat = EGroupCategory.symmetric(m)
        ident = perm_identity(m)
        for g in cat.elements:
            for s in cat.elements:
                rep.check("free-action", perm_compose(g, s) != g or s == ident, (g, s))
        for g1 in cat.elements:
            for g2 in cat.elements:
                homs = cat.hom(g1, g2)
                rep.check("unique-morphism", len(homs) == 1 and perm_compose(homs[0], g1) == g2, (g1, g2))
        for g1, g2, g3 in itertools.product(cat.elements, repeat=3) if m <= 3 else _sample_triples(cat.elements):
            v = cat.compose(cat.hom(g2, g3)[0], cat.hom(g1, g2)[0])
            rep.check("composition", v == cat.hom(g1, g3)[0], (g1, g2, g3))
    # gamma as a functor: a morphism of inputs maps to the unique morphism of outputs,
    # and identities and composites are preserved
    for m in range(min(max_m, 2) + 1):
        for ks in _compositions(max_total, m, max_k):
            cs = permutations(m)
            dss = list(_choices(ks))
            for (c1, c2), (d1, d2) in itertools.product(itertools.product(cs, repeat=2), itertools.product(dss, repeat=2)):
                g1, g2 = operad_gamma(c1, d1), operad_gamma(c2, d2)
                cat = EGroupCategory.symmetric(len(g1))
                rep.check("functor-identity", cat.identity(g1) == perm_identity(len(g1)), (c1, d1))
                v = cat.hom(g1, g2)[0]
                for c3, d3 in ((c1, d1), (c2, d2)):
                    g3 = operad_gamma(c3, d3)
                    rep.check(
                        "functor-composition",
                        cat.compose(cat.hom(g2, g3)[0], v) == cat.hom(g1, g3)[0],
                        (c1, c2, c3),
                    )
    return rep


def _sample_triples(elements, n=2000, seed=0):
    rng = random.Random(seed)
    for _ in range(n):
        yield rng.choice(elements), rng.choice(elements), rng.choice(elements)


# -- the tuple category T(F(X)) ----------------------------------------------------


@dataclass(frozen=True)
class Truncation:
    alphabet: int = 3
    word_length: int = 4
    tuple_length: int = 3

    def admits(self, t):
        return len(t) <= self.tuple_length and all(len(w) <= self.word_length for w in t) and all(
            0 < k <= self.alphabet for w in t for k, _ in w.letters
        )


def _check_truncation(t, truncation):
    if truncation is not None and not truncation.admits(t):
        raise TruncationExceeded("tuple %s exceeds %r" % (format_tuple(t), truncation))
    return t


def tuple_concat(u, v, truncation=None):
    return _check_truncation(tuple(u) + tuple(v), truncation)


def tuple_theta(s, tuples, truncation=None):
    """``theta(s; u_1, ..., u_m)``: block ``u_i`` lands at block position ``s[i]``."""
    tuples = tuple(tuples)
    if len(tuples) != len(s):
        raise ValueError("operation of arity %d given %d tuples" % (len(s), len(tuples)))
    inv = perm_inverse(s)
    out = ()
    for r in range(len(s)):
        out += tuple(tuples[inv[r]])
    return _check_truncation(out, truncation)


def format_tuple(t):
    return "(" + ", ".join(str(w) for w in t) + ")"


def tuple_morphism_target(f, source):
    """Target of the morphism ``(f, source)`` of ``T(F(X))``."""
    return bar_evaluate_monoid(f, source)


def words_up_to(alphabet, length):
    out = [EMPTY_WORD]
    layer = [EMPTY_WORD]
    signed = [InvolutiveWord(((k, z),)) for k in range(1, alphabet + 1) for z in (PLUS, -PLUS)]
    for _ in range(length):
        layer = [w * x for w in layer for x in signed]
        out.extend(layer)
    return out


def tuples_up_to(alphabet, word_length, tuple_length):
    words = words_up_to(alphabet, word_length)
    out = []
    for q in range(tuple_length + 1):
        out.extend(itertools.product(words, repeat=q))
    return out


def verify_tuple_category(truncation=Truncation(3, 1, 2), samples=500, seed=0):
    """Strict monoidal laws of ``T(F(X))``: exhaustive on objects, sampled on morphisms."""
    rep = VerificationReport("tuple-category")
    objs = tuples_up_to(truncation.alphabet, truncation.word_length, truncation.tuple_length)
    for u in objs:
        rep.check("unit", tuple_concat((), u) == u == tuple_concat(u, ()), u)
        for v in objs:
            uv = tuple_concat(u, v)
            for w in objs:
                rep.check("associativity", tuple_concat(uv, w) == tuple_concat(u, tuple_concat(v, w)), (u, v, w))
    rng = random.Random(seed)
    signed = [InvolutiveWord(((k, z),)) for k in range(1, truncation.alphabet + 1) for z in (1, -1)]
    for _ in range(samples):
        # a tensor product of morphisms acts blockwise on the concatenation
        p1, p2 = rng.randint(0, 3), rng.randint(0, 3)
        u = tuple(rng.choice(signed) for _ in range(p1))
        v = tuple(rng.choice(signed) for _ in range(p2))
        f1 = random_morphism(p1 - 1, rng.randint(0 if p1 else -1, 2), rng)
        f2 = random_morphism(p2 - 1, rng.randint(0 if p2 else -1, 2), rng)
        lhs = bar_evaluate_monoid(block_sum(f1, f2), u + v)
        rhs = bar_evaluate_monoid(f1, u) + bar_evaluate_monoid(f2, v)
        rep.check("tensor-of-morphisms", lhs == rhs, (f1, f2, u, v))
        # functoriality of composition in T(M)
        g1 = random_morphism(f1.target_rank, rng.randint(0 if f1.target_rank >= 0 else -1, 2), rng)
        rep.check(
            "composition",
            bar_evaluate_monoid(ifas_compose(g1, f1), u) == bar_evaluate_monoid(g1, bar_evaluate_monoid(f1, u)),
            (g1, f1, u),
        )
        # theta is an operad algebra structure: compatible with gamma
        m = rng.randint(0, 3)
        c = tuple(rng.sample(range(m), m))
        ks = [rng.randint(0, 2) for _ in range(m)]
        ds = [tuple(rng.sample(range(k), k)) for k in ks]
        us = [tuple(rng.choice(signed) for _ in range(rng.randint(0, 2))) for _ in range(sum(ks))]
        inner, off = [], 0
        for d, k in zip(ds, ks):
            inner.append(tuple_theta(d, us[off:off + k]))
            off += k
        rep.check(
            "theta-associativity",
            tuple_theta(operad_gamma(c, ds), us) == tuple_theta(c, inner),
            (c, ds, us),
        )
    return rep


# -- the under-category module --------------------------------------------------


def lambda_object(s, fs):
    """``lambda(s; f_1, ..., f_m)`` in ``IF(j)``.

    ``f_i`` acts on the ``i``-th block of sources (natural order) and its
    target block is placed at block position ``s[i]``.
    """
    return _lambda_object(tuple(s), tuple(fs))


@functools.lru_cache(maxsize=1 << 18)
def _lambda_object(s, fs):
    if len(fs) != len(s):
        raise ValueError("operation of arity %d given %d generators" % (len(s), len(fs)))
    offsets = []
    acc = 0
    for f in fs:
        offsets.append(acc)
        acc += f.source_rank + 1
    inv = perm_inverse(s)
    fibers = []
    target = -1
    for r in range(len(s)):
        i = inv[r]
        for fib in fs[i].fibers:
            fibers.append(tuple((e + offsets[i], z) for e, z in fib))
        target += fs[i].target_rank + 1
    return LabelledFiberMap._trusted(acc - 1, target, tuple(fibers))


def block_automorphism(s, sizes):
    """The unlabelled automorphism of ``[sum(sizes) - 1]`` moving block ``i`` to block position ``s[i]``."""
    p = block_permutation(s, sizes)
    return automorphism(SignedPermutation.from_permutation(p)) if p else identity(-1)


def lambda_morphism(s, t, fs, gs):
    """``lambda`` on a morphism ``(t s^-1; g_1, ..., g_m)`` out of ``(s; f_1, ..., f_m)``.

    Returns the map ``h`` with ``h o lambda(s; f) == lambda(t; g_1 f_1, ..., g_m f_m)``.
    """
    inv = perm_inverse(s)
    arranged = [gs[inv[r]] for r in range(len(s))]
    sizes = [g.target_rank + 1 for g in arranged]
    move = block_automorphism(perm_compose(t, inv), sizes)
    return ifas_compose(move, block_sum(*arranged)) if arranged else identity(-1)


def under_objects(j, rank_cap):
    """Objects of ``IF(j) = [j-1] / Delta H_+`` with target rank ``<= rank_cap``."""
    out = []
    for q in range(-1 if j == 0 else 0, rank_cap + 1):
        out.extend(enumerate_hom(j - 1, q))
    return out


def sp_direct_sum(*hs):
    signs, perm = [], []
    off = 0
    for h in hs:
        signs.extend(h.signs)
        perm.extend(off + x for x in h.perm)
        off += h.size
    return SignedPermutation(tuple(signs), tuple(perm))


def _target_size(fs):
    return sum(f.target_rank + 1 for f in fs)


def verify_module_axioms(max_m=2, max_j=2, rank_cap=3, samples=200, seed=0):
    """Left ``D_Cat``-module laws for ``lambda`` on ``IF(-)``.

    Every law ranges over all tuples of generators with source ranks below
    ``max_j`` whose assembled target rank (and every intermediate one) is at
    most ``rank_cap``. Functoriality on morphisms and the commuting square with
    the tuple category are checked on ``samples`` seeded instances.
    """
    rep = VerificationReport("module")
    objs = {j: under_objects(j, rank_cap) for j in range(max_j + 1)}
    flat = [f for j in range(max_j + 1) for f in objs[j]]

    def tuples(m):
        # all m-tuples of generators whose targets fit under the cap
        def rec(prefix, budget):
            if len(prefix) == m:
                yield tuple(prefix)
                return
            for f in flat:
                size = f.target_rank + 1
                if size <= budget:
                    prefix.append(f)
                    yield from rec(prefix, budget - size)
                    prefix.pop()

        return rec([], rank_cap + 1)

    for f in flat:
        rep.check("unit", lambda_object((0,), [f]) == f, f)
    for m in range(max_m + 1):
        cs = permutations(m)
        for fs in tuples(m):
            js = [f.source_rank + 1 for f in fs]
            base = {c: lambda_object(c, fs) for c in cs}
            for c in cs:
                for s in cs:
                    inv = perm_inverse(s)
                    lhs = base[perm_compose(c, s)]
                    moved = lambda_object(c, [fs[inv[r]] for r in range(m)])
                    rhs = right_action(moved, SignedPermutation.from_permutation(block_permutation(s, js))) if js else moved
                    rep.check("equivariance-A", lhs == rhs, (c, s, fs))
            for hs in itertools.product(*[list(signed_permutations(j)) for j in js]):
                acted = [right_action(f, h) if f.source_rank >= 0 else f for f, h in zip(fs, hs)]
                total = sp_direct_sum(*hs)
                for c in cs:
                    rhs = right_action(base[c], total) if total.size else base[c]
                    rep.check("equivariance-B", lambda_object(c, acted) == rhs, (c, fs, hs))
    for m in range(max_m + 1):
        cs = permutations(m)
        for ks in itertools.product(range(max_m + 1), repeat=m):
            k = sum(ks)
            dss = list(_choices(ks))
            for fs in tuples(k):
                for ds in dss:
                    inner, off = [], 0
                    for d, ki in zip(ds, ks):
                        inner.append(lambda_object(d, fs[off:off + ki]))
                        off += ki
                    for c in cs:
                        lhs = lambda_object(operad_gamma(c, ds), fs)
                        rep.check("associativity", lhs == lambda_object(c, inner), (c, ds, fs))

    rng = random.Random(seed)
    for _ in range(samples):
        m = rng.randint(0, max_m)
        s, t, u = (tuple(rng.sample(range(m), m)) for _ in range(3))
        fs = [random_morphism(rng.randint(-1, max_j - 1), 0, rng) for _ in range(m)]
        fs = [random_morphism(f.source_rank, rng.randint(0 if f.source_rank >= 0 else -1, 1), rng) for f in fs]
        gs = [random_morphism(f.target_rank, rng.randint(0 if f.target_rank >= 0 else -1, 1), rng) for f in fs]
        g2s = [random_morphism(g.target_rank, rng.randint(0 if g.target_rank >= 0 else -1, 1), rng) for g in gs]
        gf = [ifas_compose(g, f) for g, f in zip(gs, fs)]
        h1 = lambda_morphism(s, t, fs, gs)
        rep.check("morphism-target", ifas_compose(h1, lambda_object(s, fs)) == lambda_object(t, gf), (s, t, fs, gs))
        h2 = lambda_morphism(t, u, gf, g2s)
        h12 = lambda_morphism(s, u, fs, [ifas_compose(b, a) for b, a in zip(g2s, gs)])
        rep.check("morphism-composition", ifas_compose(h2, h1) == h12, (s, t, u, fs, gs, g2s))
        ids = [identity(f.target_rank) for f in fs]
        rep.check("morphism-identity", lambda_morphism(s, s, fs, ids) == identity(lambda_object(s, fs).target_rank), (s, fs))
        # the square relating lambda to theta through the evaluation isomorphism
        ys = [tuple(_random_letter(rng, 3) for _ in range(f.source_rank + 1)) for f in fs]
        lhs = evaluate_E(lambda_object(s, fs), sum(ys, ()))
        rhs = tuple_theta(s, [evaluate_E(f, y) for f, y in zip(fs, ys)])
        rep.check("diagram", lhs == rhs, (s, fs, ys))
    return rep


# -- the evaluation isomorphism ----------------------------------------------------


def _random_letter(rng, alphabet):
    return InvolutiveWord(((rng.randint(1, alphabet), rng.choice((1, -1))),))


def evaluate_E(f, ys):
    """``E(f, y_1, ..., y_m) = H_M(f)(y_1, ..., y_m)``."""
    ys = tuple(ys)
    if len(ys) != f.source_rank + 1:
        raise ValueError("generator of IF(%d) evaluated on %d letters" % (f.source_rank + 1, len(ys)))
    return bar_evaluate_monoid(f, ys)


def act_H(h, ys):
    """Left action of ``H_m`` on ``X^m``: letters are barred by the signs and permuted."""
    if h.size == 0:
        return tuple(ys)
    return bar_evaluate_monoid(automorphism(h), ys)


def factorize_E_inverse(t):
    """Canonical preimage of a tuple of words: ``(m, f, y)``.

    ``y`` lists the generators in reading order, unbarred; ``f`` places the
    ``k``-th letter read into the word it came from, carrying its bar as the
    label ``t``.
    """
    fibers = []
    ys = []
    pos = 0
    for w in t:
        fib = []
        for k, z in w.letters:
            fib.append((pos, z))
            ys.append(InvolutiveWord(((k, PLUS),)))
            pos += 1
        fibers.append(tuple(fib))
    return pos, LabelledFiberMap(pos - 1, len(t) - 1, tuple(fibers)), tuple(ys)


def same_orbit(a, b):
    """Whether ``(f, y)`` and ``(f', y')`` agree in ``IF(m) x_{H_m} X^m``."""
    (f, y), (f2, y2) = a, b
    if f.source_rank != f2.source_rank or f.target_rank != f2.target_rank:
        return False
    if f.source_rank == -1:
        return y == y2
    d1, d2 = to_deltaH(f), to_deltaH(f2)
    if d1.phi != d2.phi:
        return False
    # the action on IF(m) is free, so f2 = f . h pins h down
    h = sp_compose(d1.g.inverse(), d2.g)
    return act_H(h, y2) == tuple(y)


def verify_evaluation(alphabet=3, word_length=4, tuple_length=3, max_letters=4, samples=200, seed=0):
    """Orbit invariance of ``E`` and a counting proof that it is bijective within the truncation."""
    rep = VerificationReport("evaluation")
    letters = [InvolutiveWord(((k, z),)) for k in range(1, alphabet + 1) for z in (PLUS, -PLUS)]
    rng = random.Random(seed)
    group_cache = {}
    for m in range(max_letters + 1):
        hs = group_cache.setdefault(m, list(signed_permutations(m)))
        gens = [
            f
            for q in range(-1 if m == 0 else 0, tuple_length)
            for f in enumerate_hom(m - 1, q)
            if all(len(fib) <= word_length for fib in f.fibers)
        ]
        # freeness of the H_m action on generators
        for f in gens if m <= 2 else rng.sample(gens, min(samples, len(gens))):
            ident = SignedPermutation.identity(m)
            rep.check("free-action", all(right_action(f, h) != f for h in hs if h != ident), f)
        if m <= 2:
            pairs = [(f, y) for f in gens for y in itertools.product(letters, repeat=m)]
        else:
            pairs = [(rng.choice(gens), tuple(rng.choice(letters) for _ in range(m))) for _ in range(samples)]
        for f, y in pairs:
            e = evaluate_E(f, y)
            for h in hs if m <= 2 else rng.sample(hs, min(24, len(hs))):
                rep.check("orbit-invariance", evaluate_E(right_action(f, h), y) == evaluate_E(f, act_H(h, y)), (f, h, y))
            m2, f2, y2 = factorize_E_inverse(e)
            rep.check("factorization-in-orbit", m2 == m and same_orbit((f, y), (f2, y2)), (f, y))
        # counting: tuples with m letters in total versus orbits of generators
        for q in range(0, tuple_length + 1):
            tuples = _tuples_with_letters(letters, word_length, q, m)
            ok = all(evaluate_E(*factorize_E_inverse(t)[1:]) == t for t in tuples)
            rep.check("E-after-factorization", ok, (m, q))
            n_gens = sum(1 for f in gens if f.target_rank == q - 1)
            orbits = n_gens * len(letters) ** m // len(hs)
            rep.check("bijective-count", orbits == len(tuples), (m, q, orbits, len(tuples)))
    return rep


def _tuples_with_letters(letters, word_length, q, m):
    out = []
    for sizes in itertools.product(range(min(word_length, m) + 1), repeat=q):
        if sum(sizes) != m:
            continue
        for flat in itertools.product(letters, repeat=m):
            words, pos = [], 0
            for s in sizes:
                w = EMPTY_WORD
                for x in flat[pos:pos + s]:
                    w = w * x
                words.append(w)
                pos += s
            out.append(tuple(words))
    return out
