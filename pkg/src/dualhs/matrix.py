"""Dense dual complex matrices ``S + D*eps``.

The standard and dual parts are stored as two ``complex128`` arrays of the
same shape. Matrix equality is always judged per part (see
:meth:`ToleranceConfig.close`) because the two parts live at unrelated scales.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    DimensionMismatch,
    MatrixFormatError,
    NotSquare,
    SingularStandardPart,
)

__all__ = [
    "DualMatrix",
    "ToleranceConfig",
    "MatrixClass",
    "Magnitude",
    "dm_mul",
    "dm_add",
    "dm_sub",
    "dm_scale",
    "dm_ctranspose",
    "dm_identity",
    "dm_zero",
    "dm_norms",
    "dm_is_class",
    "dm_inverse",
    "dm_block",
    "dm_diag",
    "load_matrix",
    "dump_matrix",
    "matrix_from_json",
    "matrix_to_json",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds for rank decisions and approximate equality."""

    rank_rel_tol: float = 1e-8
    eq_abs_tol: float = 1e-9
    eq_rel_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rank_rel_tol", "eq_abs_tol", "eq_rel_tol"):
            value = getattr(self, name)
            if not (value > 0 and np.isfinite(value)):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    def ratio(self, delta_norm: float, scale: float) -> float:
        """Size of a deviation measured in units of the allowed deviation."""
        return float(delta_norm) / (self.eq_abs_tol + self.eq_rel_tol * float(scale))

    def close(self, a: "DualMatrix", b: "DualMatrix", scale: "Magnitude | None" = None) -> bool:
        return self.residual(a, b, scale) <= 1.0

    def residual(self, a: "DualMatrix", b: "DualMatrix", scale: "Magnitude | None" = None) -> float:
        """Normalised per-part deviation between ``a`` and ``b``; ``<= 1`` means equal.

        Without an explicit ``scale`` the larger Frobenius norm of each part is used.
        """
        _same_shape(a, b)
        ds = np.linalg.norm(a.std - b.std)
        dd = np.linalg.norm(a.dual - b.dual)
        if scale is None:
            scale = Magnitude(
                max(np.linalg.norm(a.std), np.linalg.norm(b.std)),
                max(np.linalg.norm(a.dual), np.linalg.norm(b.dual)),
            )
        return max(self.ratio(ds, scale.std), self.ratio(dd, scale.dual))


@dataclass(frozen=True)
class Magnitude:
    """A pair of nonnegative norms propagated like a dual number.

    Multiplying magnitudes bounds the part norms of a matrix product, which
    makes it the natural yardstick for the rounding error of an identity.
    """

    std: float
    dual: float

    def __mul__(self, other: "Magnitude") -> "Magnitude":
        return Magnitude(self.std * other.std, self.std * other.dual + self.dual * other.std)

    def __add__(self, other: "Magnitude") -> "Magnitude":
        return Magnitude(self.std + other.std, self.dual + other.dual)

    @staticmethod
    def of(*factors: "DualMatrix") -> "Magnitude":
        mag = Magnitude(1.0, 0.0)
        for f in factors:
            mag = mag * f.magnitude()
        return mag


@dataclass(frozen=True, eq=False)
class DualMatrix:
    std: np.ndarray
    dual: np.ndarray = field(default=None)

    def __post_init__(self):
        s = np.array(self.std, dtype=np.complex128, copy=True)
        if s.ndim != 2:
            raise DimensionMismatch(f"standard part must be 2-D, got shape {s.shape}")
        d = np.zeros_like(s) if self.dual is None else np.array(self.dual, dtype=np.complex128, copy=True)
        if d.shape != s.shape:
            raise DimensionMismatch(f"standard part {s.shape} and dual part {d.shape} differ in shape")
        s.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "std", s)
        object.__setattr__(self, "dual", d)

    @property
    def shape(self) -> tuple[int, int]:
        return self.std.shape

    @property
    def rows(self) -> int:
        return self.std.shape[0]

    @property
    def cols(self) -> int:
        return self.std.shape[1]

    @property
    def H(self) -> "DualMatrix":
        return dm_ctranspose(self)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def magnitude(self) -> Magnitude:
        return Magnitude(*dm_norms(self))

    def __matmul__(self, other):
        if not isinstance(other, DualMatrix):
            return NotImplemented
        return dm_mul(self, other)

    def __add__(self, other):
        if not isinstance(other, DualMatrix):
            return NotImplemented
        return dm_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, DualMatrix):
            return NotImplemented
        return dm_sub(self, other)

    def __neg__(self):
        return DualMatrix(-self.std, -self.dual)

    def __mul__(self, c):
        return dm_scale(self, c)

    __rmul__ = __mul__

    def __getitem__(self, key):
        return DualMatrix(np.atleast_2d(self.std[key]), np.atleast_2d(self.dual[key]))

    def __repr__(self):
        return f"DualMatrix(std={self.std!r}, dual={self.dual!r})"


def _same_shape(a: DualMatrix, b: DualMatrix):
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")


def dm_mul(a: DualMatrix, b: DualMatrix) -> DualMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return DualMatrix(a.std @ b.std, a.std @ b.dual + a.dual @ b.std)


def dm_add(a: DualMatrix, b: DualMatrix) -> DualMatrix:
    _same_shape(a, b)
    return DualMatrix(a.std + b.std, a.dual + b.dual)


def dm_sub(a: DualMatrix, b: DualMatrix) -> DualMatrix:
    _same_shape(a, b)
    return DualMatrix(a.std - b.std, a.dual - b.dual)


def dm_scale(a: DualMatrix, c) -> DualMatrix:
    """Multiply by a complex number or by a dual scalar (anything with ``std``/``dual``)."""
    if hasattr(c, "std") and hasattr(c, "dual"):
        cs, cd = complex(c.std), complex(c.dual)
        return DualMatrix(cs * a.std, cs * a.dual + cd * a.std)
    return DualMatrix(c * a.std, c * a.dual)


def dm_ctranspose(a: DualMatrix) -> DualMatrix:
    return DualMatrix(a.std.conj().T, a.dual.conj().T)


def dm_identity(n: int) -> DualMatrix:
    return DualMatrix(np.eye(n, dtype=np.complex128))


def dm_zero(m: int, n: int | None = None) -> DualMatrix:
    return DualMatrix(np.zeros((m, m if n is None else n), dtype=np.complex128))


def dm_norms(a: DualMatrix) -> tuple[float, float]:
    """Frobenius norms of the standard and dual parts."""
    return float(np.linalg.norm(a.std)), float(np.linalg.norm(a.dual))


def dm_diag(values, m: int | None = None, n: int | None = None) -> DualMatrix:
    """Rectangular dual diagonal matrix from a sequence of dual scalars."""
    values = list(values)
    m = len(values) if m is None else m
    n = m if n is None else n
    s = np.zeros((m, n), dtype=np.complex128)
    d = np.zeros((m, n), dtype=np.complex128)
    for i, v in enumerate(values):
        s[i, i] = v.std
        d[i, i] = v.dual
    return DualMatrix(s, d)


def dm_block(blocks) -> DualMatrix:
    """Assemble a matrix from a nested list of :class:`DualMatrix` blocks (empty blocks allowed)."""
    return DualMatrix(
        np.block([[b.std for b in row] for row in blocks]),
        np.block([[b.dual for b in row] for row in blocks]),
    )


class MatrixClass(str, Enum):
    HERMITIAN = "hermitian"
    IDEMPOTENT = "idempotent"
    NORMAL = "normal"
    DUAL_UNITARY = "dual_unitary"


def class_residual(a: DualMatrix, which, tol: ToleranceConfig | None = None) -> float:
    """Normalised residual of the identity defining ``which`` (``<= 1`` means it holds)."""
    tol = tol or ToleranceConfig()
    which = MatrixClass(which)
    if not a.is_square():
        raise NotSquare(f"class {which.value} needs a square matrix, got {a.shape}")
    if which is MatrixClass.HERMITIAN:
        return tol.residual(a.H, a, Magnitude.of(a))
    if which is MatrixClass.IDEMPOTENT:
        return tol.residual(a @ a, a, Magnitude.of(a, a) + Magnitude.of(a))
    if which is MatrixClass.NORMAL:
        return tol.residual(a @ a.H, a.H @ a, Magnitude.of(a, a))
    eye = dm_identity(a.rows)
    return tol.residual(a.H @ a, eye, Magnitude.of(a, a) + Magnitude.of(eye))


def dm_is_class(a: DualMatrix, which, tol: ToleranceConfig | None = None) -> bool:
    return class_residual(a, which, tol) <= 1.0


def dm_inverse(a: DualMatrix, tol: ToleranceConfig | None = None) -> DualMatrix:
    """``A_s^{-1} - A_s^{-1} A_d A_s^{-1} eps``; raises when ``A_s`` is numerically singular."""
    tol = tol or ToleranceConfig()
    if not a.is_square():
        raise NotSquare(f"inverse needs a square matrix, got {a.shape}")
    n = a.rows
    if n == 0:
        return a
    sv = np.linalg.svd(a.std, compute_uv=False)
    if sv[-1] <= tol.rank_rel_tol * n * sv[0] or sv[0] == 0:
        raise SingularStandardPart("standard part is singular; the dual inverse does not exist")
    inv = np.linalg.inv(a.std)
    return DualMatrix(inv, -inv @ a.dual @ inv)


def _encode_part(part: np.ndarray, digits: int | None):
    def num(x):
        x = float(x)
        if digits is not None:
            x = round(x, digits)
        return x + 0.0  # folds -0.0 into 0.0

    return [[[num(z.real), num(z.imag)] for z in row] for row in part]


def matrix_to_json(a: DualMatrix, digits: int | None = None) -> dict:
    return {
        "rows": a.rows,
        "cols": a.cols,
        "standard": _encode_part(a.std, digits),
        "dual": _encode_part(a.dual, digits),
    }


def _decode_part(doc, key, rows, cols) -> np.ndarray:
    if key not in doc:
        raise MatrixFormatError(f"missing field '{key}'")
    data = doc[key]
    if not isinstance(data, list) or len(data) != rows:
        raise MatrixFormatError(f"field '{key}' must be a list of {rows} rows")
    out = np.zeros((rows, cols), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFormatError(f"field '{key}' row {i} must have {cols} entries")
        for j, entry in enumerate(row):
            ok = (
                isinstance(entry, list)
                and len(entry) == 2
                and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            )
            if not ok:
                raise MatrixFormatError(f"field '{key}' entry [{i}][{j}] must be a [re, im] pair of numbers")
            out[i, j] = complex(entry[0], entry[1])
    return out


def matrix_from_json(doc) -> DualMatrix:
    if not isinstance(doc, dict):
        raise MatrixFormatError("matrix document must be a JSON object")
    for key in ("rows", "cols"):
        if key not in doc:
            raise MatrixFormatError(f"missing field '{key}'")
        value = doc[key]
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise MatrixFormatError(f"field '{key}' must be a positive integer")
    rows, cols = doc["rows"], doc["cols"]
    return DualMatrix(_decode_part(doc, "standard", rows, cols), _decode_part(doc, "dual", rows, cols))


def load_matrix(path) -> DualMatrix:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    return matrix_from_json(doc)


def dump_matrix(a: DualMatrix, path, digits: int | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(a, digits), fh)
        fh.write("\n")
