"""Named test algebras, also shipped as text files under ``algebras/``."""

from .algebra import (
    cyclic_group_table,
    gaussian_numbers,
    group_algebra,
    matrix_algebra,
    scalar_algebra,
    truncated_polynomial,
)
from .scalars import GF, QQ, ZZ


def _builders():
    return {
        "f5_x3": lambda: truncated_polynomial(GF(5), 3),
        "f3_x2_neg": lambda: truncated_polynomial(GF(3), 2, involution=-1),
        "gauss_q": lambda: gaussian_numbers(QQ),
        "gauss_z": lambda: gaussian_numbers(ZZ),
        "m2_f3": lambda: matrix_algebra(scalar_algebra(GF(3)), 2),
        "m3_qy2": lambda: matrix_algebra(truncated_polynomial(QQ, 2, "y", involution=-1), 3),
        "f2_c2": lambda: group_algebra(cyclic_group_table(2), GF(2)),
        "f3_c3": lambda: group_algebra(cyclic_group_table(3), GF(3)),
        "q_c3": lambda: group_algebra(cyclic_group_table(3), QQ),
        "q": lambda: scalar_algebra(QQ),
    }


NAMES = tuple(_builders())


def build(name):
    return _builders()[name]()


def field_corpus():
    """Every named algebra over a field, by name."""
    out = {}
    for name in NAMES:
        A = build(name)
        if A.ring.is_field:
            out[name] = A
    return out
