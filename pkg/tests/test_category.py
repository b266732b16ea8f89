import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperoct.algebra import bar_evaluate_monoid, letter
from hyperoct.category import (
    MINUS,
    PLUS,
    DeltaHMorphism,
    EnumerationCapExceeded,
    LabelledFiberMap,
    MorphismSyntaxError,
    SignedPermutation,
    automorphism,
    compose,
    deltaH_compose,
    enumerate_hom,
    from_deltaH,
    hom_count,
    identity,
    ifas_compose,
    initial,
    mu,
    nu,
    parse_morphism,
    random_morphism,
    random_signed_permutation,
    right_action,
    signed_permutations,
    sp_compose,
    to_deltaH,
    twist,
)

T = MINUS


def sp(signs, perm):
    return SignedPermutation(tuple(signs), tuple(perm))


def test_sp_compose_examples():
    e = sp((1, 1), (0, 1))
    assert sp_compose(e, e) == e
    a = sp((T, 1), (0, 1))
    assert sp_compose(a, a) == e
    # oracle: the action on signed coordinate tuples is faithful
    x, y = sp((1, T), (1, 0)), sp((T, 1), (0, 1))
    v = (10, 20)
    assert sp_compose(x, y).act(v) == x.act(y.act(v))


def test_group_law_matches_action_everywhere():
    for n in range(1, 4):
        v = tuple(range(1, n + 1))
        elems = list(signed_permutations(n))
        for a in elems:
            for b in elems[:: max(1, len(elems) // 12)]:
                assert sp_compose(a, b).act(v) == a.act(b.act(v))
            assert sp_compose(a, a.inverse()) == SignedPermutation.identity(n)


def test_hyperoctahedral_orders():
    for n in range(4):
        elems = set(signed_permutations(n + 1))
        assert len(elems) == 2 ** (n + 1) * math.factorial(n + 1)


def test_twist_examples():
    assert twist(()) == ()
    assert twist(((0, PLUS),)) == ((0, T),)
    assert twist(((2, 1), (1, T), (0, 1))) == ((0, T), (1, 1), (2, T))
    fib = ((3, 1), (0, T), (2, T))
    assert twist(twist(fib)) == fib


def test_composition_examples():
    w = LabelledFiberMap(1, 1, (((1, T),), ((0, T),)))
    assert ifas_compose(mu(1), w).fibers == (((1, T), (0, T)),)
    assert ifas_compose(nu(), identity(2)) == nu()
    # oracle: the free involutive monoid is a faithful test object
    xs = (letter(1), letter(2))
    assert bar_evaluate_monoid(ifas_compose(mu(1), w), xs) == bar_evaluate_monoid(mu(1), bar_evaluate_monoid(w, xs))


def test_deltaH_examples():
    for n in range(4):
        h = to_deltaH(mu(n))
        assert h.phi == (0,) * (n + 1)
        assert h.g == SignedPermutation.identity(n + 1)
        assert to_deltaH(identity(n)) == DeltaHMorphism(tuple(range(n + 1)), SignedPermutation.identity(n + 1), n)
    h = to_deltaH(nu())
    assert h.phi == (0, 0, 0)
    # the transposition (0 2) in one-line notation is 2 1 0
    assert h.g == sp((1, T, 1), (2, 1, 0))


def test_right_action_examples():
    f = to_deltaH(mu(2))
    assert right_action(f, SignedPermutation.identity(3)) == f
    assert right_action(f, sp((1, T, 1), (2, 1, 0))) == to_deltaH(nu())
    assert right_action(mu(2), sp((1, T, 1), (2, 1, 0))) == nu()
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(0, 3)
        f = random_morphism(n, rng.randint(0, 3), rng)
        h1, h2 = random_signed_permutation(n + 1, rng), random_signed_permutation(n + 1, rng)
        assert right_action(right_action(f, h1), h2) == right_action(f, sp_compose(h1, h2))
        assert right_action(f, h1) == ifas_compose(f, automorphism(h1))


def test_enumerate_small():
    h00 = enumerate_hom(0, 0)
    assert [str(f) for f in h00] == ["HOM 0 0 : 0^+", "HOM 0 0 : 0^-"]
    assert len(enumerate_hom(1, 0)) == 8
    for m in range(-1, 3):
        assert enumerate_hom(-1, m) == [initial(m)]
    assert enumerate_hom(0, -1) == []


def test_hom_counts_and_round_trip():
    for n in range(3):
        for m in range(3):
            homs = enumerate_hom(n, m)
            expected = math.comb(n + m + 1, n + 1) * 2 ** (n + 1) * math.factorial(n + 1)
            assert len(homs) == len(set(homs)) == expected == hom_count(n, m)
            for f in homs:
                assert from_deltaH(to_deltaH(f)) == f


def test_enumeration_cap(monkeypatch):
    with pytest.raises(EnumerationCapExceeded):
        enumerate_hom(2, 2, cap=100)
    monkeypatch.setenv("HYPEROCT_ENUM_CAP", "10")
    with pytest.raises(EnumerationCapExceeded):
        enumerate_hom(1, 1)
    assert len(enumerate_hom(1, 0)) == 8


def objects(max_rank):
    return range(-1, max_rank + 1)


def test_associativity_exhaustive_low_ranks():
    homs = {(a, b): enumerate_hom(a, b) for a in objects(1) for b in objects(1)}
    count = 0
    for a, b, c, d in itertools.product(objects(1), repeat=4):
        for f in homs[a, b]:
            for g in homs[b, c]:
                gf = ifas_compose(g, f)
                for h in homs[c, d]:
                    assert ifas_compose(h, gf) == ifas_compose(ifas_compose(h, g), f)
                    count += 1
    assert count > 10000


def test_identities_are_neutral():
    for n in objects(2):
        for m in objects(2):
            for f in enumerate_hom(n, m):
                assert ifas_compose(identity(m), f) == f
                assert ifas_compose(f, identity(n)) == f


def random_chain(rng, length, max_rank=3):
    ranks = [rng.randint(-1, max_rank)]
    for _ in range(length):
        ranks.append(rng.randint(-1 if ranks[-1] == -1 else 0, max_rank))
    return [random_morphism(a, b, rng) for a, b in zip(ranks, ranks[1:])]


def test_associativity_random():
    rng = random.Random(0)
    for _ in range(1000):
        f, g, h = random_chain(rng, 3)
        assert compose(h, g, f) == ifas_compose(ifas_compose(h, g), f)


def test_deltaH_functorial():
    rng = random.Random(1)
    for _ in range(1000):
        f, g = random_chain(rng, 2)
        if f.source_rank < 0:
            continue
        assert to_deltaH(ifas_compose(g, f)) == deltaH_compose(to_deltaH(g), to_deltaH(f))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 1000000))
def test_composition_is_functorial_on_free_monoid(seed):
    rng = random.Random(seed)
    f, g = random_chain(rng, 2, max_rank=4)
    xs = tuple(letter(k + 1) for k in range(f.source_rank + 1))
    assert bar_evaluate_monoid(ifas_compose(g, f), xs) == bar_evaluate_monoid(g, bar_evaluate_monoid(f, xs))


def test_twist_and_composition():
    # composing with the label-flipping automorphism of [0] twists every fiber
    flip = LabelledFiberMap(0, 0, (((0, T),),))
    rng = random.Random(2)
    for _ in range(100):
        f = random_morphism(rng.randint(0, 4), 0, rng)
        assert ifas_compose(flip, f).fibers == (twist(f.fibers[0]),)


def test_text_round_trip():
    assert str(nu()) == "HOM 2 0 : 2^+ 1^- 0^+"
    assert parse_morphism("HOM 2 0 : 2^+ 1^- 0^+") == nu()
    assert parse_morphism("HOM -1 1 :  | ") == initial(1)
    f = parse_morphism("HOM 11 1 : 11^- 0^+ | 10^+ 9^+ 8^+ 7^- 6^+ 5^+ 4^+ 3^+ 2^+ 1^+")
    assert parse_morphism(str(f)) == f
    rng = random.Random(3)
    for _ in range(200):
        f = random_chain(rng, 1)[0]
        assert parse_morphism(str(f)) == f


@pytest.mark.parametrize(
    "text",
    ["HOM 1 0 : 0^+", "HOM 0 0 : 0^x", "HOM 1 : 0^+", "HOM 0 1 : 0^+ | 0^-", "nonsense"],
)
def test_parse_errors(text):
    with pytest.raises(MorphismSyntaxError):
        parse_morphism(text)


def test_invalid_fiber_maps():
    with pytest.raises(ValueError):
        LabelledFiberMap(1, 0, (((0, 1),),))
    with pytest.raises(ValueError):
        LabelledFiberMap(0, 0, (((0, 2),),))
    with pytest.raises(ValueError):
        ifas_compose(mu(1), mu(1))
