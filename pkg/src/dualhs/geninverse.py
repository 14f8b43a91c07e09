"""Generalized inverses of dual complex matrices.

Always-defined inverses are returned as :class:`DualMatrix` (NDMPI, MPDGI).
Inverses that may fail to exist (DMPGI, DGGI, the group inverse of the
essential part) come back as an :class:`InverseReport`: a closed-form
candidate is built and then checked against the defining equations, so a
failed check certifies nonexistence at the working tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, NotSquare, SingularStandardPart
from .hs import HsDecomposition
from .matrix import DualMatrix, Magnitude, ToleranceConfig, dm_diag, dm_identity, dm_inverse
from .scalar import DualReal
from .svd import complex_svd, dual_svd

__all__ = [
    "InverseKind",
    "InverseReport",
    "complex_mp",
    "complex_group_inverse",
    "ndmpi_svd",
    "ndmpi_hs",
    "group_inverse_essential",
    "mpdgi",
    "dmpgi",
    "dggi",
    "verify_inverse",
]


class InverseKind(str, Enum):
    NDMPI = "ndmpi"
    DMPGI = "dmpgi"
    DGGI = "dggi"
    INVERSE = "inverse"


@dataclass(frozen=True)
class InverseReport:
    """Outcome of an inverse that may not exist.

    ``residuals`` maps each defining equation to its normalised deviation
    (deviation norm over allowed deviation, per part, larger part wins);
    ``exists`` is true iff every residual is at most 1.
    """

    value: DualMatrix | None
    exists: bool
    residuals: dict = field(default_factory=dict)
    reason: str = ""


def _rank(s: np.ndarray, shape, tol: ToleranceConfig) -> int:
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel_tol * max(shape) * s[0]))


def complex_mp(a, tol: ToleranceConfig | None = None) -> np.ndarray:
    """Moore-Penrose inverse of a complex matrix, via :func:`complex_svd` with a numerical rank cut."""
    tol = tol or ToleranceConfig()
    a = np.asarray(a, dtype=np.complex128)
    u, s, v = complex_svd(a)
    r = _rank(s, a.shape, tol)
    return (v[:, :r] / s[:r]) @ u[:, :r].conj().T


def complex_group_inverse(a, tol: ToleranceConfig | None = None) -> np.ndarray | None:
    """Group inverse from the full-rank factorisation ``A = F G``: ``F (G F)^{-2} G``.

    Returns ``None`` when ``G F`` is singular, i.e. ``rank(A^2) < rank(A)``.
    """
    tol = tol or ToleranceConfig()
    a = np.asarray(a, dtype=np.complex128)
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"group inverse needs a square matrix, got {a.shape}")
    u, s, v = complex_svd(a)
    r = _rank(s, a.shape, tol)
    if r == 0:
        return np.zeros_like(a)
    f = u[:, :r] * s[:r]
    g = v[:, :r].conj().T
    core = v[:, :r].conj().T @ u[:, :r]  # G F = core * diag(s)
    cs = complex_svd(core)[1]
    if cs[-1] <= tol.rank_rel_tol * r:
        return None
    gf_inv = np.linalg.inv(g @ f)
    return f @ gf_inv @ gf_inv @ g


def _sigma1_inverse(sigma) -> DualMatrix:
    return dm_diag([DualReal(1.0) / x for x in sigma])


def ndmpi_svd(a: DualMatrix, tol: ToleranceConfig | None = None) -> DualMatrix:
    """NDMPI ``V [[S1^{-1}, 0], [0, 0]] U*`` from the dual SVD; exists for every matrix."""
    svd = dual_svd(a, tol)
    m, n = a.shape
    r = svd.r
    core = dm_diag([DualReal(1.0) / x for x in svd.sigma[:r]], n, m)
    return svd.v @ core @ svd.u.H


def ndmpi_hs(h: HsDecomposition) -> DualMatrix:
    """NDMPI ``U [[K* S1^{-1}, 0], [L* S1^{-1}, 0]] U*`` from an HS decomposition."""
    s1_inv = _sigma1_inverse(h.sigma1)
    return h.conjugate_by_u([[h.k.H @ s1_inv, None], [h.l.H @ s1_inv, None]])


def group_inverse_essential(h: HsDecomposition, tol: ToleranceConfig | None = None) -> InverseReport:
    """Group inverse of the essential part, ``U [[K^{-1} S1^{-1}, K^{-1} S1^{-1} K^{-1} L], [0, 0]] U*``.

    It exists iff ``K`` is invertible, decided on ``K_s`` alone.
    """
    tol = tol or ToleranceConfig()
    from .hs import hs_essential

    ae = hs_essential(h)
    if h.r:
        ks_sv = complex_svd(h.k.std)[1]
        if ks_sv[-1] <= tol.rank_rel_tol * h.r:
            return InverseReport(None, False, {}, "K is singular: the essential part is not group invertible")
        k_inv = dm_inverse(h.k, tol)
    else:
        k_inv = h.k
    top_left = k_inv @ _sigma1_inverse(h.sigma1)
    x = h.conjugate_by_u([[top_left, top_left @ k_inv @ h.l], [None, None]])
    report = verify_inverse(ae, x, InverseKind.DGGI, tol)
    return InverseReport(x, report.exists, report.residuals)


def mpdgi(a: DualMatrix, tol: ToleranceConfig | None = None) -> DualMatrix:
    """``A_s^+ - A_s^+ A_d A_s^+ eps``."""
    xs = complex_mp(a.std, tol)
    return DualMatrix(xs, -xs @ a.dual @ xs)


def dmpgi(a: DualMatrix, tol: ToleranceConfig | None = None) -> InverseReport:
    """Dual Moore-Penrose generalized inverse, when it exists."""
    tol = tol or ToleranceConfig()
    m, n = a.shape
    xs = complex_mp(a.std, tol)
    ad_h = a.dual.conj().T
    xs_h = xs.conj().T
    xd = (
        -xs @ a.dual @ xs
        + xs @ xs_h @ ad_h @ (np.eye(m) - a.std @ xs)
        + (np.eye(n) - xs @ a.std) @ ad_h @ xs_h @ xs
    )
    x = DualMatrix(xs, xd)
    report = verify_inverse(a, x, InverseKind.DMPGI, tol)
    return InverseReport(x if report.exists else None, report.exists, report.residuals,
                         "" if report.exists else "Penrose equations fail for the unique candidate")


def dggi(a: DualMatrix, tol: ToleranceConfig | None = None) -> InverseReport:
    """Dual group generalized inverse, when it exists."""
    tol = tol or ToleranceConfig()
    if not a.is_square():
        raise NotSquare(f"DGGI needs a square matrix, got {a.shape}")
    g = complex_group_inverse(a.std, tol)
    if g is None:
        return InverseReport(None, False, {}, "standard part is not group invertible")
    eye = np.eye(a.rows)
    proj = eye - a.std @ g
    xd = -g @ a.dual @ g + g @ g @ a.dual @ proj + proj @ a.dual @ g @ g
    x = DualMatrix(g, xd)
    report = verify_inverse(a, x, InverseKind.DGGI, tol)
    return InverseReport(x if report.exists else None, report.exists, report.residuals,
                         "" if report.exists else "group equations fail for the unique candidate")


def verify_inverse(
    a: DualMatrix,
    x: DualMatrix,
    kind,
    tol: ToleranceConfig | None = None,
    essential: DualMatrix | None = None,
) -> InverseReport:
    """Evaluate every defining equation of ``kind`` for the pair ``(a, x)``.

    For ``ndmpi`` the essential part is computed from ``a`` unless supplied.
    """
    tol = tol or ToleranceConfig()
    kind = InverseKind(kind)
    if x.shape != (a.cols, a.rows):
        raise DimensionMismatch(f"candidate shape {x.shape} does not fit a {a.shape} matrix")
    ax, xa = a @ x, x @ a
    res = {}
    if kind is InverseKind.INVERSE:
        if not a.is_square():
            raise NotSquare(f"inverse needs a square matrix, got {a.shape}")
        eye = dm_identity(a.rows)
        scale = Magnitude.of(a, x) + Magnitude.of(eye)
        res["AX=I"] = tol.residual(ax, eye, scale)
        res["XA=I"] = tol.residual(xa, eye, scale)
    else:
        if kind is InverseKind.DGGI and not a.is_square():
            raise NotSquare(f"DGGI needs a square matrix, got {a.shape}")
        if kind is InverseKind.NDMPI:
            target = essential if essential is not None else dual_svd(a, tol).essential()
            res["AXA=Ae"] = tol.residual(ax @ a, target, Magnitude.of(a, x, a) + target.magnitude())
        else:
            res["AXA=A"] = tol.residual(ax @ a, a, Magnitude.of(a, x, a) + a.magnitude())
        res["XAX=X"] = tol.residual(xa @ x, x, Magnitude.of(x, a, x) + x.magnitude())
        if kind is InverseKind.DGGI:
            res["AX=XA"] = tol.residual(ax, xa, Magnitude.of(a, x))
        else:
            res["(AX)*=AX"] = tol.residual(ax.H, ax, Magnitude.of(a, x))
            res["(XA)*=XA"] = tol.residual(xa.H, xa, Magnitude.of(x, a))
    exists = all(v <= 1.0 for v in res.values())
    return InverseReport(x, exists, res)


def inverse_report(a: DualMatrix, tol: ToleranceConfig | None = None) -> InverseReport:
    """:func:`dm_inverse` wrapped as a report (nonexistence instead of an exception)."""
    tol = tol or ToleranceConfig()
    try:
        x = dm_inverse(a, tol)
    except SingularStandardPart as exc:
        return InverseReport(None, False, {}, str(exc))
    return verify_inverse(a, x, InverseKind.INVERSE, tol)
