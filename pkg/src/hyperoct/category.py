"""The hyperoctahedral category.

Morphisms are handled in two equivalent forms:

* ``LabelledFiberMap`` -- a set map ``[n] -> [m]`` whose preimages are totally
  ordered and whose elements carry a label in ``C2 = {+1, -1}`` (``-1`` is the
  generator ``t``).  This is the form in which composition is implemented.
* ``DeltaHMorphism`` -- a pair ``(phi, g)`` of an order-preserving map and a
  signed permutation ``g = (z_0, ..., z_n; sigma)``.

The object ``[-1]`` (the appended initial object) is encoded by source rank
``-1`` with every fiber empty.

Textual notation: ``i^+`` is ``i`` with label ``1``, ``i^-`` is ``i`` with
label ``t``; ``HOM n m : f0 | f1 | ... | fm`` lists the fibers in order.
"""

import itertools
import math
import os
import re
from dataclasses import dataclass

PLUS = 1
MINUS = -1

DEFAULT_ENUMERATION_CAP = 10 ** 6


class EnumerationCapExceeded(ValueError):
    pass


class MorphismSyntaxError(ValueError):
    pass


def enumeration_cap():
    """Default cap on hom-set sizes, overridable by ``HYPEROCT_ENUM_CAP``."""
    value = os.environ.get("HYPEROCT_ENUM_CAP")
    if value:
        cap = int(value)
        if cap <= 0:
            raise ValueError("HYPEROCT_ENUM_CAP must be positive")
        return cap
    return DEFAULT_ENUMERATION_CAP


# -- signed permutations ------------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """An element ``(z_0, ..., z_n; sigma)`` of ``H_{n+1} = C2^{n+1} x| Sigma_{n+1}``.

    ``perm[i]`` is ``sigma(i)`` and ``signs[i]`` is the label carried by the
    source element ``i``. The element acts on signed basis vectors by
    ``e_i -> signs[i] * e_{perm[i]}``; the group law is composition of that
    action, so ``(z; s) * (w; u) = (i -> z[u(i)] * w[i]; s o u)``.
    """

    signs: tuple
    perm: tuple

    def __post_init__(self):
        if len(self.signs) != len(self.perm):
            raise ValueError("signs and permutation differ in size")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("%r is not a permutation" % (self.perm,))
        if any(z not in (PLUS, MINUS) for z in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def size(self):
        return len(self.perm)

    @classmethod
    def identity(cls, size):
        return cls((PLUS,) * size, tuple(range(size)))

    @classmethod
    def from_permutation(cls, perm):
        return cls((PLUS,) * len(perm), tuple(perm))

    def __mul__(self, other):
        return sp_compose(self, other)

    def inverse(self):
        inv = [0] * self.size
        signs = [PLUS] * self.size
        for i, p in enumerate(self.perm):
            inv[p] = i
            signs[p] = self.signs[i]
        return SignedPermutation(tuple(signs), tuple(inv))

    def act(self, vector):
        """Apply to a signed coordinate tuple: entry ``i`` moves to ``perm[i]``."""
        out = [None] * self.size
        for i, x in enumerate(vector):
            out[self.perm[i]] = self.signs[i] * x
        return tuple(out)

    def __str__(self):
        signs = ",".join("1" if z == PLUS else "t" for z in self.signs)
        return "(%s; %s)" % (signs, " ".join(str(p) for p in self.perm))


def sp_compose(a, b):
    if a.size != b.size:
        raise ValueError("cannot compose signed permutations of sizes %d and %d" % (a.size, b.size))
    return SignedPermutation(
        tuple(a.signs[b.perm[i]] * b.signs[i] for i in range(b.size)),
        tuple(a.perm[b.perm[i]] for i in range(b.size)),
    )


def signed_permutations(size):
    for perm in itertools.permutations(range(size)):
        for signs in itertools.product((PLUS, MINUS), repeat=size):
            yield SignedPermutation(signs, perm)


# -- labelled fiber maps --------------------------------------------------------


def twist(fiber):
    """Reverse the order of a labelled ordered set and flip every label."""
    return tuple((i, -z) for i, z in reversed(fiber))


@dataclass(frozen=True)
class LabelledFiberMap:
    source_rank: int
    target_rank: int
    fibers: tuple

    def __post_init__(self):
        n, m = self.source_rank, self.target_rank
        if n < -1 or m < -1:
            raise ValueError("ranks must be at least -1")
        fibers = tuple(tuple((int(i), int(z)) for i, z in fib) for fib in self.fibers)
        object.__setattr__(self, "fibers", fibers)
        if len(fibers) != m + 1:
            raise ValueError("expected %d fibers, got %d" % (m + 1, len(fibers)))
        seen = sorted(i for fib in fibers for i, _ in fib)
        if seen != list(range(n + 1)):
            raise ValueError("fibers do not partition {0..%d}: %r" % (n, fibers))
        if any(z not in (PLUS, MINUS) for fib in fibers for _, z in fib):
            raise ValueError("labels must be +1 or -1")

    @classmethod
    def _trusted(cls, source_rank, target_rank, fibers):
        """Build without validation; callers guarantee a well-formed tuple of fibers."""
        f = object.__new__(cls)
        object.__setattr__(f, "source_rank", source_rank)
        object.__setattr__(f, "target_rank", target_rank)
        object.__setattr__(f, "fibers", fibers)
        return f

    def __str__(self):
        return format_morphism(self)

    def image_of(self):
        """Map ``source element -> (target, label)``."""
        out = {}
        for j, fib in enumerate(self.fibers):
            for i, z in fib:
                out[i] = (j, z)
        return out


def identity(n):
    return LabelledFiberMap(n, n, tuple(((i, PLUS),) for i in range(n + 1)))


def mu(n):
    """The order-preserving map ``[n] -> [0]``, fiber ``0^1 < 1^1 < ... < n^1``."""
    return LabelledFiberMap(n, 0, (tuple((i, PLUS) for i in range(n + 1)),))


def nu():
    """The map ``[2] -> [0]`` with fiber ``2^1 < 1^t < 0^1``."""
    return LabelledFiberMap(2, 0, (((2, PLUS), (1, MINUS), (0, PLUS)),))


def initial(m):
    """The unique morphism ``[-1] -> [m]``."""
    return LabelledFiberMap(-1, m, ((),) * (m + 1))


def ifas_compose(g, f):
    """``g o f`` for ``f: [n] -> [m]`` and ``g: [m] -> [p]``.

    The fiber of the composite over ``k`` concatenates, in the order of
    ``g^{-1}(k)``, the fiber ``f^{-1}(j)`` when ``j`` is labelled ``1`` and its
    twist when ``j`` is labelled ``t``.
    """
    if f.target_rank != g.source_rank:
        raise ValueError(
            "cannot compose [%d]->[%d] after [%d]->[%d]"
            % (g.source_rank, g.target_rank, f.source_rank, f.target_rank)
        )
    fibers = []
    for gfib in g.fibers:
        out = []
        for j, z in gfib:
            out.extend(f.fibers[j] if z == PLUS else twist(f.fibers[j]))
        fibers.append(tuple(out))
    return LabelledFiberMap._trusted(f.source_rank, g.target_rank, tuple(fibers))


def compose(*maps):
    """Compose right to left: ``compose(h, g, f) == h o g o f``."""
    out = maps[-1]
    for g in reversed(maps[:-1]):
        out = ifas_compose(g, out)
    return out


# -- the Delta H form -------------------------------------------------------------


@dataclass(frozen=True)
class DeltaHMorphism:
    phi: tuple
    g: SignedPermutation
    target_rank: int

    def __post_init__(self):
        if len(self.phi) != self.g.size:
            raise ValueError("phi and g have different sources")
        if any(a > b for a, b in zip(self.phi, self.phi[1:])):
            raise ValueError("phi %r is not order-preserving" % (self.phi,))
        if any(not 0 <= x <= self.target_rank for x in self.phi):
            raise ValueError("phi %r leaves [%d]" % (self.phi, self.target_rank))

    @property
    def source_rank(self):
        return len(self.phi) - 1

    def __str__(self):
        return "(%s, %s)" % (" ".join(str(x) for x in self.phi), self.g)


def to_deltaH(f):
    """Write ``f`` as ``(phi, (z; sigma))``.

    ``sigma(i)`` is the position of ``i`` when the fibers are read in order,
    ``phi`` records which fiber each position lies in and ``z_i`` is the label
    of ``i``.
    """
    n = f.source_rank
    perm = [0] * (n + 1)
    signs = [PLUS] * (n + 1)
    phi = []
    pos = 0
    for j, fib in enumerate(f.fibers):
        for i, z in fib:
            perm[i] = pos
            signs[i] = z
            phi.append(j)
            pos += 1
    return DeltaHMorphism(tuple(phi), SignedPermutation(tuple(signs), tuple(perm)), f.target_rank)


def from_deltaH(h):
    """Inverse of ``to_deltaH``: the fiber over ``j`` is ``(phi o sigma)^{-1}(j)`` ordered by ``sigma``."""
    n = h.source_rank
    inv = [0] * (n + 1)
    for i, p in enumerate(h.g.perm):
        inv[p] = i
    fibers = [[] for _ in range(h.target_rank + 1)]
    for p in range(n + 1):
        i = inv[p]
        fibers[h.phi[p]].append((i, h.g.signs[i]))
    return LabelledFiberMap._trusted(n, h.target_rank, tuple(tuple(fib) for fib in fibers))


def deltaH_compose(b, a):
    """Composition in Delta H, transported from the fiber-map composition."""
    return to_deltaH(ifas_compose(from_deltaH(b), from_deltaH(a)))


def automorphism(h):
    """The automorphism ``(id, h)`` of ``[h.size - 1]`` as a fiber map."""
    n = h.size - 1
    return from_deltaH(DeltaHMorphism(tuple(range(n + 1)), h, n))


def right_action(f, h):
    """``(phi, g) . h = (phi, g o h)``; accepts either morphism form."""
    if isinstance(f, DeltaHMorphism):
        if h.size != f.g.size:
            raise ValueError("signed permutation of size %d acting on [%d]" % (h.size, f.source_rank))
        return DeltaHMorphism(f.phi, sp_compose(f.g, h), f.target_rank)
    if h.size != f.source_rank + 1:
        raise ValueError("signed permutation of size %d acting on [%d]" % (h.size, f.source_rank))
    return from_deltaH(right_action(to_deltaH(f), h))


# -- hom-sets -------------------------------------------------------------------


def hom_count(n, m):
    if n == -1:
        return 1 if m >= -1 else 0
    if m == -1:
        return 0
    return math.comb(n + m + 1, n + 1) * 2 ** (n + 1) * math.factorial(n + 1)


def enumerate_hom(n, m, cap=None):
    """All morphisms ``[n] -> [m]``, ordered by ``(phi, sigma, sign word)``."""
    if n < -1 or m < -1:
        raise ValueError("ranks must be at least -1")
    cap = enumeration_cap() if cap is None else cap
    count = hom_count(n, m)
    if count > cap:
        raise EnumerationCapExceeded("Hom([%d],[%d]) has %d elements, cap is %d" % (n, m, count, cap))
    if n == -1:
        return [initial(m)]
    out = []
    for phi in itertools.combinations_with_replacement(range(m + 1), n + 1):
        for perm in itertools.permutations(range(n + 1)):
            for signs in itertools.product((PLUS, MINUS), repeat=n + 1):
                out.append(from_deltaH(DeltaHMorphism(phi, SignedPermutation(signs, perm), m)))
    return out


def random_morphism(n, m, rng):
    """A random morphism ``[n] -> [m]`` (not uniformly distributed)."""
    if n == -1:
        return initial(m)
    if m == -1:
        raise ValueError("no morphism [%d] -> [-1]" % n)
    fibers = [[] for _ in range(m + 1)]
    for i in range(n + 1):
        fibers[rng.randrange(m + 1)].append((i, rng.choice((PLUS, MINUS))))
    for fib in fibers:
        rng.shuffle(fib)
    return LabelledFiberMap(n, m, tuple(tuple(fib) for fib in fibers))


def random_signed_permutation(size, rng):
    perm = list(range(size))
    rng.shuffle(perm)
    return SignedPermutation(tuple(rng.choice((PLUS, MINUS)) for _ in range(size)), tuple(perm))


def block_sum(*maps):
    """Disjoint union of morphisms: blocks side by side in source and target."""
    fibers = []
    s_off = 0
    n = m = -1
    for f in maps:
        for fib in f.fibers:
            fibers.append(tuple((i + s_off, z) for i, z in fib))
        s_off += f.source_rank + 1
        n += f.source_rank + 1
        m += f.target_rank + 1
    return LabelledFiberMap._trusted(n, m, tuple(fibers))


# -- text form ------------------------------------------------------------------

_HEADER = re.compile(r"^\s*HOM\s+(-?\d+)\s+(-?\d+)\s*:(.*)$")
_TOKEN = re.compile(r"^(\d+)\^([+-])$")


def format_fiber(fiber):
    return " ".join("%d^%s" % (i, "+" if z == PLUS else "-") for i, z in fiber)


def format_morphism(f):
    body = " | ".join(format_fiber(fib) for fib in f.fibers)
    return ("HOM %d %d : %s" % (f.source_rank, f.target_rank, body)).rstrip()


def parse_morphism(text):
    match = _HEADER.match(text)
    if not match:
        raise MorphismSyntaxError("expected 'HOM n m : f0 | ... | fm', got %r" % text)
    n, m = int(match.group(1)), int(match.group(2))
    body = match.group(3)
    pieces = body.split("|") if m >= 0 else []
    if m == -1 and body.strip():
        raise MorphismSyntaxError("a morphism into [-1] has no fibers")
    if len(pieces) != m + 1:
        raise MorphismSyntaxError("expected %d fibers, found %d" % (m + 1, len(pieces)))
    fibers = []
    for piece in pieces:
        fib = []
        for tok in piece.split():
            t = _TOKEN.match(tok)
            if not t:
                raise MorphismSyntaxError("bad fiber element %r" % tok)
            fib.append((int(t.group(1)), PLUS if t.group(2) == "+" else MINUS))
        fibers.append(tuple(fib))
    try:
        return LabelledFiberMap(n, m, tuple(fibers))
    except ValueError as exc:
        raise MorphismSyntaxError(str(exc)) from None
