"""Finite-dimensional involutive algebras and the hyperoctahedral bar construction.

An algebra is given by structure constants on a named basis, a unit vector and
the matrix of its involution. Everything is validated eagerly on construction.

Algebra files are line oriented::

    ring F3                 # Z, Q, F2, F5, ... or "Fp 7"
    basis e0 e1 e2
    mul e1 e1 = e2          # unlisted products are zero
    unit = e0
    inv e0 = e0             # every basis element must be listed
    inv e1 = 2*e1
    inv e2 = e2
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .category import (
    PLUS,
    DeltaHMorphism,
    LabelledFiberMap,
    SignedPermutation,
    to_deltaH,
)
from .linalg import FreeModuleVector, SparseMatrix
from .scalars import parse_ring


class AlgebraError(ValueError):
    pass


class NonAssociative(AlgebraError):
    def __init__(self, triple, names):
        self.triple = triple
        super().__init__("(%s*%s)*%s != %s*(%s*%s)" % tuple(names[i] for i in triple + triple))


class UnitFailure(AlgebraError):
    def __init__(self, index, side, names):
        self.index = index
        self.side = side
        super().__init__("unit is not a %s identity for %s" % (side, names[index]))


class InvolutionFailure(AlgebraError):
    def __init__(self, message, basis=()):
        self.basis = basis
        super().__init__(message)


class AlgebraSyntaxError(AlgebraError):
    pass


class InvolutiveAlgebra:
    """A unital associative algebra with an anti-involution ``a -> a-bar``."""

    def __init__(self, ring, names, products, unit, involution, validate=True):
        self.ring = ring
        self.names = tuple(names)
        d = self.dimension = len(self.names)
        if len(set(self.names)) != d:
            raise AlgebraError("repeated basis names")
        self._table = [[{} for _ in range(d)] for _ in range(d)]
        for (i, j), v in products.items():
            v = _as_vector(v, d, ring)
            self._table[i][j] = dict(v.entries)
        self.unit = _as_vector(unit, d, ring)
        if isinstance(involution, SparseMatrix):
            self.involution = involution.over(ring)
        else:
            self.involution = SparseMatrix.from_columns([_as_vector(involution[i], d, ring) for i in range(d)], d, ring)
        self._bar = [dict(c.entries) for c in self.involution.columns()]
        self._cache = {}
        if validate:
            self.validate()

    def __repr__(self):
        return "InvolutiveAlgebra(%s, %s)" % (self.ring, " ".join(self.names))

    def basis(self, i):
        return FreeModuleVector._raw(self.dimension, {i: self.ring.one()}, self.ring)

    def element(self, coefficients):
        """Vector from a ``{name or index: coefficient}`` mapping."""
        idx = {n: k for k, n in enumerate(self.names)}
        return FreeModuleVector(
            self.dimension, {idx.get(k, k): c for k, c in coefficients.items()}, self.ring
        )

    def product(self, i, j):
        return FreeModuleVector._raw(self.dimension, dict(self._table[i][j]), self.ring)

    def _mul_dicts(self, u, v):
        R = self.ring
        out = {}
        for i, a in u.items():
            row = self._table[i]
            for j, b in v.items():
                ab = R.mul(a, b)
                for k, c in row[j].items():
                    out[k] = R.add(out.get(k, 0), R.mul(ab, c))
        return {k: x for k, x in out.items() if x != 0}

    def mul(self, u, v):
        return FreeModuleVector._raw(self.dimension, self._mul_dicts(u.entries, v.entries), self.ring)

    def _bar_dict(self, u):
        R = self.ring
        out = {}
        for i, a in u.items():
            for k, c in self._bar[i].items():
                out[k] = R.add(out.get(k, 0), R.mul(a, c))
        return {k: x for k, x in out.items() if x != 0}

    def bar(self, u):
        return FreeModuleVector._raw(self.dimension, self._bar_dict(u.entries), self.ring)

    def is_commutative(self):
        d = self.dimension
        return all(self._table[i][j] == self._table[j][i] for i in range(d) for j in range(i + 1, d))

    def has_trivial_involution(self):
        return self.involution == SparseMatrix.identity(self.dimension, self.ring)

    def validate(self):
        d = self.dimension
        e = [{i: self.ring.one()} for i in range(d)]
        for i in range(d):
            for j in range(d):
                ij = self._table[i][j]
                for k in range(d):
                    if self._mul_dicts(ij, e[k]) != self._mul_dicts(e[i], self._table[j][k]):
                        raise NonAssociative((i, j, k), self.names)
        u = self.unit.entries
        for i in range(d):
            if self._mul_dicts(u, e[i]) != e[i]:
                raise UnitFailure(i, "left", self.names)
            if self._mul_dicts(e[i], u) != e[i]:
                raise UnitFailure(i, "right", self.names)
        for i in range(d):
            if self._bar_dict(self._bar[i]) != e[i]:
                raise InvolutionFailure("involution does not square to the identity on %s" % self.names[i], (i,))
        for i in range(d):
            for j in range(d):
                lhs = self._bar_dict(self._table[i][j])
                rhs = self._mul_dicts(self._bar[j], self._bar[i])
                if lhs != rhs:
                    raise InvolutionFailure(
                        "bar(%s*%s) != bar(%s)*bar(%s)" % (self.names[i], self.names[j], self.names[j], self.names[i]),
                        (i, j),
                    )
        return self

    def format_vector(self, v):
        return format_linear(v, self.names, self.ring)

    def to_text(self):
        """Canonical text form, parseable by ``parse_algebra``."""
        lines = ["ring %s" % self.ring, "basis " + " ".join(self.names)]
        for i in range(self.dimension):
            for j in range(self.dimension):
                p = self.product(i, j)
                if not p.is_zero():
                    lines.append("mul %s %s = %s" % (self.names[i], self.names[j], self.format_vector(p)))
        lines.append("unit = %s" % self.format_vector(self.unit))
        for i in range(self.dimension):
            lines.append("inv %s = %s" % (self.names[i], self.format_vector(self.involution.column(i))))
        return "\n".join(lines) + "\n"


def _as_vector(v, d, ring):
    if isinstance(v, FreeModuleVector):
        if v.dimension != d:
            raise AlgebraError("vector of dimension %d in algebra of dimension %d" % (v.dimension, d))
        return FreeModuleVector(d, v.entries, ring)
    return FreeModuleVector(d, dict(v), ring)


# -- text format ---------------------------------------------------------------

_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([A-Za-z_][\w']*)\s*")
_SCALAR = re.compile(r"^\s*([+-]?)\s*(\d+(?:/\d+)?)\s*$")


def format_linear(v, names, ring):
    if v.is_zero():
        return "0"
    parts = []
    for i, x in v.items():
        neg = False
        if ring.kind != "Fp" and x < 0:
            neg, x = True, -x
        term = names[i] if x == 1 else "%s*%s" % (ring.format(x), names[i])
        if not parts:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    return " ".join(parts)


def parse_linear(text, names, ring):
    """Parse ``2*e1 - e0 + 1/2*e3`` (or ``0``) into a vector."""
    idx = {n: k for k, n in enumerate(names)}
    if _SCALAR.match(text) and Fraction(text.replace(" ", "")) == 0:
        return FreeModuleVector.zero(len(names), ring)
    out = {}
    pos = 0
    text = text.strip()
    if not text:
        raise AlgebraSyntaxError("empty linear expression")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise AlgebraSyntaxError("cannot parse %r" % text[pos:])
        sign, coeff, name = m.groups()
        if pos > 0 and not sign:
            raise AlgebraSyntaxError("missing operator before %r" % name)
        if name not in idx:
            raise AlgebraSyntaxError("unknown basis element %r" % name)
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        k = idx[name]
        out[k] = out.get(k, 0) + c
        pos = m.end()
    return FreeModuleVector(len(names), {k: ring(c) for k, c in out.items()}, ring)


def parse_algebra(text, ring_override=None):
    """Parse the text format; ``ring_override`` replaces the file's ``ring`` line."""
    ring = names = unit = None
    products = {}
    inv = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "ring":
                ring = ring_override or parse_ring(rest)
            elif head == "basis":
                names = rest.split()
            elif head in ("mul", "unit", "inv"):
                if ring is None or names is None:
                    raise AlgebraSyntaxError("'ring' and 'basis' must come first")
                lhs, eq, rhs = rest.partition("=")
                if not eq:
                    raise AlgebraSyntaxError("missing '='")
                vec = parse_linear(rhs, names, ring)
                args = lhs.split()
                if head == "mul":
                    if len(args) != 2 or any(a not in names for a in args):
                        raise AlgebraSyntaxError("expected 'mul a b = ...'")
                    key = (names.index(args[0]), names.index(args[1]))
                    if key in products:
                        raise AlgebraSyntaxError("product %s %s given twice" % tuple(args))
                    products[key] = vec
                elif head == "unit":
                    if args:
                        raise AlgebraSyntaxError("expected 'unit = ...'")
                    unit = vec
                else:
                    if len(args) != 1 or args[0] not in names:
                        raise AlgebraSyntaxError("expected 'inv a = ...'")
                    inv[names.index(args[0])] = vec
            else:
                raise AlgebraSyntaxError("unknown directive %r" % head)
        except (AlgebraSyntaxError, ValueError) as exc:
            raise AlgebraSyntaxError("line %d: %s" % (lineno, exc)) from None
    if ring is None or names is None:
        raise AlgebraSyntaxError("missing 'ring' or 'basis' line")
    if unit is None:
        raise AlgebraSyntaxError("missing 'unit' line")
    missing = [names[i] for i in range(len(names)) if i not in inv]
    if missing:
        raise InvolutionFailure("involution not given for %s" % ", ".join(missing))
    return InvolutiveAlgebra(ring, names, products, unit, [inv[i] for i in range(len(names))])


def load_algebra(path, ring_override=None):
    with open(path) as fh:
        return parse_algebra(fh.read(), ring_override)


def make_algebra(source=None, **kwargs):
    """Build a validated algebra from file text or from keyword data."""
    if source is not None:
        return parse_algebra(source)
    return InvolutiveAlgebra(**kwargs)


# -- builders ------------------------------------------------------------------


def scalar_algebra(ring):
    return InvolutiveAlgebra(ring, ["one"], {(0, 0): {0: 1}}, {0: 1}, [{0: 1}])


def cyclic_group_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def group_algebra(table, ring, names=None):
    """The group algebra ``k[G]`` with involution ``g -> g^{-1}``."""
    n = len(table)
    names = names or (["e"] + ["g%d" % i for i in range(1, n)] if n > 1 else ["e"])
    ident = [e for e in range(n) if all(table[e][j] == j for j in range(n))]
    if not ident:
        raise AlgebraError("group table has no identity")
    e = ident[0]
    inverse = {}
    for g in range(n):
        for h in range(n):
            if table[g][h] == e:
                inverse[g] = h
    products = {(g, h): {table[g][h]: 1} for g in range(n) for h in range(n)}
    return InvolutiveAlgebra(ring, names, products, {e: 1}, [{inverse[g]: 1} for g in range(n)])


def matrix_algebra(A, n):
    """``M_n(A)`` with involution ``M -> transpose(entrywise bar of M)``.

    The basis element ``E_ij a`` has index ``(i * n + j) * dim(A) + a``.
    """
    d = A.dimension
    single = d == 1
    names = []
    for i in range(n):
        for j in range(n):
            for a in range(d):
                names.append("E%d%d" % (i + 1, j + 1) if single else "E%d%d_%s" % (i + 1, j + 1, A.names[a]))

    def index(i, j, a):
        return (i * n + j) * d + a

    products = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                for a in range(d):
                    for b in range(d):
                        p = A._table[a][b]
                        if p:
                            products[index(i, j, a), index(j, l, b)] = {index(i, l, c): x for c, x in p.items()}
    unit = {}
    for i in range(n):
        for a, x in A.unit.entries.items():
            unit[index(i, i, a)] = x
    inv = [None] * (n * n * d)
    for i in range(n):
        for j in range(n):
            for a in range(d):
                inv[index(i, j, a)] = {index(j, i, c): x for c, x in A._bar[a].items()}
    return InvolutiveAlgebra(A.ring, names, products, unit, inv)


def commutative_with_involution(ring, names, table, involution=None, unit=None):
    """A commutative algebra from products of basis pairs (either order).

    ``table`` maps ``(name, name)`` to ``{name: coefficient}``; ``involution``
    maps names to ``{name: coefficient}`` and defaults to the identity.
    ``unit`` defaults to the first basis element.
    """
    idx = {n: k for k, n in enumerate(names)}
    products = {}
    for (a, b), v in table.items():
        vec = {idx[k]: c for k, c in v.items()}
        products[idx[a], idx[b]] = vec
        products[idx[b], idx[a]] = vec
    if involution is None:
        inv = [{i: 1} for i in range(len(names))]
    else:
        inv = [{idx[k]: c for k, c in involution.get(n, {n: 1}).items()} for n in names]
    unit = {idx[unit or names[0]]: 1}
    return InvolutiveAlgebra(ring, names, products, unit, inv)


def truncated_polynomial(ring, N, var="x", involution=None):
    """``k[x]/(x^N)``, basis ``one, x, x2, ...``; trivial involution by default.

    ``involution`` may be a scalar ``c`` for ``x -> c x``.
    """
    names = ["one"] + [var if k == 1 else "%s%d" % (var, k) for k in range(1, N)]
    products = {}
    for a in range(N):
        for b in range(N):
            if a + b < N:
                products[a, b] = {a + b: 1}
    c = ring(1 if involution is None else involution)
    inv = []
    ck = ring.one()
    for k in range(N):
        inv.append({k: ck})
        ck = ring.mul(ck, c)
    return InvolutiveAlgebra(ring, names, products, {0: 1}, inv)


def gaussian_numbers(ring):
    """``k[i]/(i^2 + 1)`` with complex conjugation."""
    return commutative_with_involution(
        ring, ["one", "i"], {("one", "one"): {"one": 1}, ("one", "i"): {"i": 1}, ("i", "i"): {"one": -1}},
        involution={"one": {"one": 1}, "i": {"i": -1}},
    )


# -- tensors and the bar construction ------------------------------------------


@dataclass(frozen=True)
class Tensor:
    """An element of ``A^{(x) arity}``; basis word ``(b_0, ..., b_{n})`` has index ``sum b_s d^s``."""

    arity: int
    value: FreeModuleVector

    def __add__(self, other):
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return Tensor(self.arity, self.value + other.value)

    def __sub__(self, other):
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return Tensor(self.arity, self.value - other.value)

    def scale(self, c):
        return Tensor(self.arity, self.value.scale(c))

    def is_zero(self):
        return self.value.is_zero()


def encode_word(word, d):
    idx, mult = 0, 1
    for b in word:
        idx += b * mult
        mult *= d
    return idx


def decode_word(index, d, arity):
    out = []
    for _ in range(arity):
        index, b = divmod(index, d)
        out.append(b)
    return tuple(out)


def tensor_from_dict(A, arity, entries):
    return Tensor(arity, FreeModuleVector(A.dimension ** arity, entries, A.ring))


def basis_tensor(A, word):
    return Tensor(len(word), FreeModuleVector._raw(A.dimension ** len(word), {encode_word(word, A.dimension): A.ring.one()}, A.ring))


def elementary_tensor(A, vectors):
    """``v_0 (x) v_1 (x) ... (x) v_n`` for vectors of ``A``."""
    return Tensor(len(vectors), FreeModuleVector._raw(A.dimension ** len(vectors), _tensor_dicts(A, [v.entries for v in vectors]), A.ring))


def scalar_tensor(A, c=1):
    return Tensor(0, FreeModuleVector(1, {0: c}, A.ring))


def _tensor_dicts(A, factors):
    R = A.ring
    d = A.dimension
    out = {0: R.one()}
    mult = 1
    for vec in factors:
        nxt = {}
        for idx, x in out.items():
            for b, y in vec.items():
                nxt[idx + b * mult] = R.mul(x, y)
        out = nxt
        mult *= d
    return {k: x for k, x in out.items() if x != 0}


def _slot_products(phi, g, target_rank):
    """For each target slot, the ordered list of ``(source index, label)`` multiplied there."""
    n = len(phi) - 1
    inv = [0] * (n + 1)
    for i, p in enumerate(g.perm):
        inv[p] = i
    slots = [[] for _ in range(target_rank + 1)]
    # positions p in increasing order within each fiber of phi
    for p in range(n + 1):
        i = inv[p]
        slots[phi[p]].append((i, g.signs[i]))
    return slots


def _as_deltaH(f):
    if isinstance(f, DeltaHMorphism):
        return f
    if isinstance(f, LabelledFiberMap):
        if f.source_rank == -1:
            return DeltaHMorphism((), SignedPermutation((), ()), f.target_rank)
        return to_deltaH(f)
    raise TypeError("expected a morphism, got %r" % (f,))


def _bar_basis_image(A, h, word):
    """Image under ``H_A(h)`` of the basis tensor ``e_{word[0]} (x) ...``, as a dict."""
    key = (h, word)
    hit = A._cache.get(key)
    if hit is not None:
        return hit
    e = [{b: A.ring.one()} for b in range(A.dimension)]
    factors = []
    for slot in _slot_products(h.phi, h.g, h.target_rank):
        acc = dict(A.unit.entries)
        for i, z in slot:
            x = e[word[i]] if z == PLUS else A._bar[word[i]]
            acc = A._mul_dicts(acc, x)
        factors.append(acc)
    out = _tensor_dicts(A, factors)
    A._cache[key] = out
    return out


def bar_evaluate(f, x, A):
    """Apply ``H_A(f)`` to a tensor.

    Output slot ``j`` is the product, ordered by ``phi``, of ``a_i`` (label 1)
    or ``a_i``-bar (label t) over ``i`` in ``(phi o sigma)^{-1}(j)``; an empty
    product is the unit of ``A``.
    """
    h = _as_deltaH(f)
    if x.arity != h.source_rank + 1:
        raise ValueError("tensor of arity %d fed to a morphism from [%d]" % (x.arity, h.source_rank))
    R = A.ring
    d = A.dimension
    out = {}
    for idx, c in x.value.entries.items():
        word = decode_word(idx, d, x.arity)
        for k, y in _bar_basis_image(A, h, word).items():
            out[k] = R.add(out.get(k, 0), R.mul(c, y))
    return Tensor(h.target_rank + 1, FreeModuleVector(d ** (h.target_rank + 1), out, R))


def bar_matrix(f, A):
    """Matrix of ``H_A(f)`` in the basis-tensor bases."""
    h = _as_deltaH(f)
    d = A.dimension
    n, m = h.source_rank, h.target_rank
    entries = {}
    for idx in range(d ** (n + 1)):
        for k, y in _bar_basis_image(A, h, decode_word(idx, d, n + 1)).items():
            entries[k, idx] = y
    return SparseMatrix(d ** (m + 1), d ** (n + 1), entries, A.ring)


# -- the free involutive monoid ----------------------------------------------------


@dataclass(frozen=True)
class InvolutiveWord:
    """A word in ``F(X)``: letters ``(generator, label)``; ``(k, -1)`` is ``x_k``-bar."""

    letters: tuple = ()

    def __mul__(self, other):
        return InvolutiveWord(self.letters + other.letters)

    def bar(self):
        return InvolutiveWord(tuple((k, -z) for k, z in reversed(self.letters)))

    def power(self, z):
        return self if z == PLUS else self.bar()

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(("x%d" if z == PLUS else "~x%d") % k for k, z in self.letters)


def letter(k, label=PLUS):
    return InvolutiveWord(((k, label),))


EMPTY_WORD = InvolutiveWord()


def bar_evaluate_monoid(f, words):
    """``H_M(f)`` on a tuple of words, by the same slot formula as ``bar_evaluate``."""
    h = _as_deltaH(f)
    words = tuple(words)
    if len(words) != h.source_rank + 1:
        raise ValueError("%d words fed to a morphism from [%d]" % (len(words), h.source_rank))
    out = []
    for slot in _slot_products(h.phi, h.g, h.target_rank):
        acc = EMPTY_WORD
        for i, z in slot:
            acc = acc * words[i].power(z)
        out.append(acc)
    return tuple(out)
