"""Dual real and dual complex scalars.

A dual number is ``a_s + a_d*eps`` with ``eps**2 == 0``. :class:`DualComplex`
carries complex parts and supports ring arithmetic, conjugation, powers and
the modulus. :class:`DualReal` additionally carries the lexicographic total
order, which is deliberately *not* defined for complex parts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from numbers import Number

from .errors import InfinitesimalDivision, NegativeOrInfinitesimalSqrt

__all__ = [
    "DualComplex",
    "DualReal",
    "Ordering",
    "ScalarClass",
    "dc_mul",
    "dc_conj",
    "dc_pow",
    "dc_abs",
    "dc_classify",
    "dr_sqrt",
    "dr_compare",
]


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class ScalarClass(Enum):
    APPRECIABLE = "appreciable"
    INFINITESIMAL = "infinitesimal"


@dataclass(frozen=True)
class DualComplex:
    std: complex = 0j
    dual: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "std", complex(self.std))
        object.__setattr__(self, "dual", complex(self.dual))

    @classmethod
    def coerce(cls, x) -> "DualComplex":
        if isinstance(x, DualComplex):
            return x
        if isinstance(x, DualReal):
            return cls(x.std, x.dual)
        if isinstance(x, Number):
            return cls(complex(x), 0j)
        return NotImplemented

    def __add__(self, other):
        other = DualComplex.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DualComplex(self.std + other.std, self.dual + other.dual)

    __radd__ = __add__

    def __sub__(self, other):
        other = DualComplex.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DualComplex(self.std - other.std, self.dual - other.dual)

    def __rsub__(self, other):
        other = DualComplex.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return DualComplex(-self.std, -self.dual)

    def __mul__(self, other):
        other = DualComplex.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return dc_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = DualComplex.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.std == 0:
            raise InfinitesimalDivision(f"cannot divide by infinitesimal {other}")
        q = self.std / other.std
        return DualComplex(q, (self.dual - q * other.dual) / other.std)

    def __rtruediv__(self, other):
        other = DualComplex.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        return dc_pow(self, n)

    def conj(self) -> "DualComplex":
        return dc_conj(self)

    def is_appreciable(self) -> bool:
        return self.std != 0

    def isclose(self, other, rel_tol=1e-12, abs_tol=0.0) -> bool:
        other = DualComplex.coerce(other)
        return _close(self.std, other.std, rel_tol, abs_tol) and _close(
            self.dual, other.dual, rel_tol, abs_tol
        )

    def __repr__(self):
        return f"DualComplex({self.std!r}, {self.dual!r})"


@dataclass(frozen=True)
class DualReal:
    std: float = 0.0
    dual: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "std", float(self.std))
        object.__setattr__(self, "dual", float(self.dual))

    def _key(self):
        return (self.std, self.dual)

    def __lt__(self, other):
        return dr_compare(self, _as_dual_real(other)) is Ordering.LESS

    def __le__(self, other):
        return dr_compare(self, _as_dual_real(other)) is not Ordering.GREATER

    def __gt__(self, other):
        return dr_compare(self, _as_dual_real(other)) is Ordering.GREATER

    def __ge__(self, other):
        return dr_compare(self, _as_dual_real(other)) is not Ordering.LESS

    def __add__(self, other):
        other = _as_dual_real(other)
        return DualReal(self.std + other.std, self.dual + other.dual)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_dual_real(other)
        return DualReal(self.std - other.std, self.dual - other.dual)

    def __neg__(self):
        return DualReal(-self.std, -self.dual)

    def __mul__(self, other):
        if isinstance(other, DualComplex):
            return dc_mul(DualComplex(self.std, self.dual), other)
        other = _as_dual_real(other)
        return DualReal(self.std * other.std, self.std * other.dual + self.dual * other.std)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_dual_real(other)
        if other.std == 0:
            raise InfinitesimalDivision(f"cannot divide by infinitesimal {other}")
        q = self.std / other.std
        return DualReal(q, (self.dual - q * other.dual) / other.std)

    def __pow__(self, n):
        z = dc_pow(DualComplex(self.std, self.dual), n)
        return DualReal(z.std.real, z.dual.real)

    def sqrt(self) -> "DualReal":
        return dr_sqrt(self)

    def is_appreciable(self) -> bool:
        return self.std != 0

    def isclose(self, other, rel_tol=1e-12, abs_tol=0.0) -> bool:
        other = _as_dual_real(other)
        return _close(self.std, other.std, rel_tol, abs_tol) and _close(
            self.dual, other.dual, rel_tol, abs_tol
        )

    def to_complex(self) -> DualComplex:
        return DualComplex(self.std, self.dual)

    def __repr__(self):
        return f"DualReal({self.std!r}, {self.dual!r})"


def _as_dual_real(x) -> DualReal:
    if isinstance(x, DualReal):
        return x
    if isinstance(x, DualComplex):
        raise TypeError("dual complex numbers are not ordered; use DualReal")
    if isinstance(x, (int, float)):
        return DualReal(x, 0.0)
    raise TypeError(f"cannot interpret {x!r} as a dual real")


def _close(a, b, rel_tol, abs_tol):
    return abs(a - b) <= max(abs_tol, rel_tol * max(abs(a), abs(b)))


def dc_mul(a: DualComplex, b: DualComplex) -> DualComplex:
    return DualComplex(a.std * b.std, a.std * b.dual + a.dual * b.std)


def dc_conj(a: DualComplex) -> DualComplex:
    return DualComplex(a.std.conjugate(), a.dual.conjugate())


def dc_pow(a: DualComplex, n: int) -> DualComplex:
    """Closed-form power ``a_s**n + n*a_s**(n-1)*a_d*eps`` for integer ``n >= 1``."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"exponent must be a positive integer, got {n!r}")
    return DualComplex(a.std**n, n * a.std ** (n - 1) * a.dual)


def dr_sqrt(a: DualReal) -> DualReal:
    """Square root of a positive appreciable dual real, or of exact zero."""
    if a.std == 0 and a.dual == 0:
        return DualReal(0.0, 0.0)
    if a.std <= 0:
        raise NegativeOrInfinitesimalSqrt(f"no dual square root of {a}")
    root = math.sqrt(a.std)
    return DualReal(root, a.dual / (2.0 * root))


def dc_abs(a: DualComplex) -> DualReal:
    """Dual modulus; the dual part is ``Re(a_s * conj(a_d)) / |a_s|`` when appreciable."""
    if a.std != 0:
        mod = abs(a.std)
        cross = a.std * a.dual.conjugate() + a.dual * a.std.conjugate()
        return DualReal(mod, cross.real / (2.0 * mod))
    return DualReal(0.0, abs(a.dual))


def dr_compare(a: DualReal, b: DualReal) -> Ordering:
    if not isinstance(a, DualReal) or not isinstance(b, DualReal):
        raise TypeError("the total order is defined for dual reals only")
    ka, kb = a._key(), b._key()
    if ka < kb:
        return Ordering.LESS
    if ka > kb:
        return Ordering.GREATER
    return Ordering.EQUAL


def dc_classify(a) -> ScalarClass:
    return ScalarClass.APPRECIABLE if a.std != 0 else ScalarClass.INFINITESIMAL
