"""Exact scalar rings: the integers, the rationals and prime fields."""

from dataclasses import dataclass
from fractions import Fraction


def is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class ScalarRing:
    """An exact ground ring.

    ``kind`` is one of ``"Z"``, ``"Q"`` or ``"Fp"``; ``p`` is only meaningful
    for prime fields. Elements are plain Python ``int`` (for ``Z`` and ``Fp``,
    the latter reduced to ``0 <= x < p``) or ``Fraction`` (for ``Q``).
    """

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError("unknown ring kind %r" % (self.kind,))
        if self.kind == "Fp":
            if not is_prime(self.p):
                raise ValueError("%d is not prime" % self.p)
            if self.p >= 2 ** 31:
                raise ValueError("prime fields are limited to p < 2^31")
        elif self.p != 0:
            raise ValueError("characteristic given for ring %s" % self.kind)

    @property
    def is_field(self):
        return self.kind != "Z"

    @property
    def characteristic(self):
        return self.p if self.kind == "Fp" else 0

    def __str__(self):
        if self.kind == "Fp":
            return "F%d" % self.p
        return self.kind

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the ring."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if self.kind == "Z":
                if x.denominator != 1:
                    raise ValueError("%s is not an integer" % x)
                return x.numerator
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if self.kind == "Z":
            return int(x)
        return int(x) % self.p

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def add(self, a, b):
        if self.kind == "Fp":
            return (a + b) % self.p
        return a + b

    def sub(self, a, b):
        if self.kind == "Fp":
            return (a - b) % self.p
        return a - b

    def mul(self, a, b):
        if self.kind == "Fp":
            return (a * b) % self.p
        return a * b

    def neg(self, a):
        if self.kind == "Fp":
            return (-a) % self.p
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / Fraction(a)
        if self.kind == "Fp":
            return pow(a, -1, self.p)
        if a in (1, -1):
            return a
        raise ZeroDivisionError("%d is not a unit in Z" % a)

    def format(self, a):
        if isinstance(a, Fraction) and a.denominator == 1:
            return str(a.numerator)
        return str(a)


ZZ = ScalarRing("Z")
QQ = ScalarRing("Q")


def GF(p):
    return ScalarRing("Fp", p)


def parse_ring(text):
    """Parse ``Z``, ``Q``, ``F2``, ``F5`` or ``Fp 5`` into a ring."""
    parts = text.split()
    if not parts:
        raise ValueError("empty ring description")
    head = parts[0]
    if head in ("Z", "ZZ") and len(parts) == 1:
        return ZZ
    if head in ("Q", "QQ") and len(parts) == 1:
        return QQ
    if head == "Fp" and len(parts) == 2:
        return GF(int(parts[1]))
    if head.startswith("F") and head[1:].isdigit() and len(parts) == 1:
        return GF(int(head[1:]))
    raise ValueError("cannot parse ring %r" % text)
