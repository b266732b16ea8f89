"""Reduction of any ``f: [n] -> [0]`` to ``mu_n`` by elementary moves, with checkable certificates.

Every move replaces ``f`` (read as the ordered fiber ``X < Y < Z``) by
``Z < Y^twist < X``. The witness of the move is the map ``g: [n] -> [2]``
with fibers ``X``, ``Y`` and ``Z``, so that ``mu_2 o g`` is the old map and
``nu o g`` the new one.
"""

from dataclasses import dataclass

from .category import (
    PLUS,
    LabelledFiberMap,
    MorphismSyntaxError,
    format_morphism,
    ifas_compose,
    mu,
    nu,
    parse_morphism,
)
from .degree_zero import partial_resolution
from .linalg import FreeModuleVector


@dataclass(frozen=True)
class ReductionStep:
    witness: LabelledFiberMap
    before: LabelledFiberMap
    after: LabelledFiberMap


@dataclass(frozen=True)
class ReductionCertificate:
    start: LabelledFiberMap
    steps: tuple

    def __len__(self):
        return len(self.steps)

    def to_text(self):
        lines = ["START " + format_morphism(self.start)]
        for s in self.steps:
            lines.append("STEP %s ; %s ; %s" % tuple(format_morphism(f) for f in (s.witness, s.before, s.after)))
        return "\n".join(lines) + "\n"


class CertificateSyntaxError(ValueError):
    pass


def parse_certificate(text):
    start = None
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "START":
                if start is not None:
                    raise CertificateSyntaxError("second START line")
                start = parse_morphism(rest)
            elif head == "STEP":
                parts = rest.split(";")
                if len(parts) != 3:
                    raise CertificateSyntaxError("expected 'STEP <witness> ; <before> ; <after>'")
                steps.append(ReductionStep(*(parse_morphism(p) for p in parts)))
            else:
                raise CertificateSyntaxError("unknown line %r" % head)
        except (MorphismSyntaxError, ValueError) as exc:
            raise CertificateSyntaxError("line %d: %s" % (lineno, exc)) from None
    if start is None:
        raise CertificateSyntaxError("missing START line")
    return ReductionCertificate(start, tuple(steps))


class _Reducer:
    def __init__(self, f):
        if f.target_rank != 0:
            raise ValueError("reduction needs a morphism to [0], got target [%d]" % f.target_rank)
        self.n = f.source_rank
        self.cur = list(f.fibers[0])
        self.steps = []

    def move(self, x_len, y_len):
        X = self.cur[:x_len]
        Y = self.cur[x_len:x_len + y_len]
        Z = self.cur[x_len + y_len:]
        n = self.n
        before = LabelledFiberMap(n, 0, (tuple(self.cur),))
        witness = LabelledFiberMap(n, 2, (tuple(X), tuple(Y), tuple(Z)))
        self.cur = Z + [(i, -z) for i, z in reversed(Y)] + X
        self.steps.append(ReductionStep(witness, before, LabelledFiberMap(n, 0, (tuple(self.cur),))))

    def rotate(self):
        # Z is the last singleton, Y is empty: the last element moves to the front
        self.move(self.n, 0)

    def run(self):
        n = self.n
        # clear t-labels, least offending position first
        while True:
            bad = [p for p, (_, z) in enumerate(self.cur) if z != PLUS]
            if not bad:
                break
            self.move(bad[0], 1)
        # rotate until n is last
        while self.cur[n][0] != n:
            self.rotate()
        # fix the suffix: rotate the first j + 1 entries right by one, until k_j = j
        while True:
            wrong = [p for p in range(n + 1) if self.cur[p][0] != p]
            if not wrong:
                break
            j = wrong[-1]
            while self.cur[j][0] != j:
                self.move(j, 1)
                for _ in range(j + 1):
                    self.rotate()
                self.move(0, 1)
                self.rotate()
        return self.steps


def reduce(f):
    """A certificate reducing ``f: [n] -> [0]`` to ``mu_n``."""
    steps = _Reducer(f).run()
    return ReductionCertificate(f, tuple(steps))


@dataclass(frozen=True)
class CertificateVerdict:
    ok: bool
    index: int = None
    condition: str = None

    def line(self):
        if self.ok:
            return "certificate valid"
        return "certificate invalid at step %s: %s" % (self.index, self.condition)


def verify_certificate(cert):
    """Check every step by composing in ``IF(as)``, the chain links and the terminal ``mu_n``.

    Conditions are ``shape``, ``mu2`` (``mu_2 o g == before``), ``nu``
    (``nu o g == after``), ``chain`` and ``terminal``.
    """
    n = cert.start.source_rank
    if cert.start.target_rank != 0:
        return CertificateVerdict(False, None, "shape")
    prev = cert.start
    m2, v = mu(2), nu()
    for k, s in enumerate(cert.steps):
        g = s.witness
        if g.source_rank != n or g.target_rank != 2 or s.before.source_rank != n or s.after.source_rank != n:
            return CertificateVerdict(False, k, "shape")
        if s.before != prev:
            return CertificateVerdict(False, k, "chain")
        if ifas_compose(m2, g) != s.before:
            return CertificateVerdict(False, k, "mu2")
        if ifas_compose(v, g) != s.after:
            return CertificateVerdict(False, k, "nu")
        prev = s.after
    if prev != mu(n):
        return CertificateVerdict(False, len(cert.steps), "terminal")
    return CertificateVerdict(True)


@dataclass
class MembershipWitness:
    f: LabelledFiberMap
    columns: list
    holds: bool


def image_membership(f, resolution=None):
    """Write ``f - mu_n`` as the sum of ``rho(g_i)`` over the witnesses of ``reduce(f)``, checked exactly."""
    n = f.source_rank
    res = resolution or partial_resolution(n)
    cert = reduce(f)
    R = res.ring
    size = len(res.hom0)
    total = FreeModuleVector.zero(size, R)
    cols = []
    for s in cert.steps:
        c = res.index2[s.witness]
        cols.append(c)
        total = total + res.rho.column(c)
    target = FreeModuleVector.basis(size, res.index0[f], R) - FreeModuleVector.basis(size, res.index0[mu(n)], R)
    return MembershipWitness(f, cols, total == target)
