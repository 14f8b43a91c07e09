"""Singular value decompositions of complex and dual complex matrices.

:func:`complex_svd` is a one-sided Jacobi SVD. :func:`dual_svd` builds the
dual decomposition ``A = U Sigma V*`` on top of it: the standard factors come
from the SVD of ``A_s`` and the dual corrections ``U_d = U_s P``,
``V_d = V_s Q`` (``P``, ``Q`` skew-Hermitian) solve the first-order equations

    U_s^* A_d V_s = P Sigma_s + Sigma_d - Sigma_s Q

after rotating every cluster of equal standard singular values so that its
coupling block is diagonal. Singular values of the zero cluster become the
infinitesimal singular values.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DegenerateCoupling
from .kernels import get_kernel
from .matrix import DualMatrix, Magnitude, ToleranceConfig, dm_diag
from .scalar import DualReal

__all__ = [
    "DualSvd",
    "complex_svd",
    "dual_svd",
    "essential_part",
    "nonessential_part",
    "random_unitary",
    "part_errors",
    "unitarity_errors",
]

_EPS = np.finfo(float).eps
MAX_SWEEPS = 60
# self-check bound on reconstruction / unitarity before a result is returned
_SELF_CHECK = 1e-6


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary matrix (QR of a complex Gaussian with phase fix)."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _complete_columns(u: np.ndarray, k: int) -> np.ndarray:
    """Orthonormalise columns ``0..k-1`` of ``u`` in order and fill the rest with a completion."""
    m = u.shape[0]
    out = np.zeros((m, m), dtype=np.complex128)
    for j in range(k):
        x = u[:, j].copy()
        for _ in range(2):
            x -= out[:, :j] @ (out[:, :j].conj().T @ x)
        out[:, j] = x / np.linalg.norm(x)
    for j in range(k, m):
        basis = out[:, :j]
        leftover = 1.0 - np.sum(np.abs(basis) ** 2, axis=1)
        x = np.zeros(m, dtype=np.complex128)
        x[int(np.argmax(leftover))] = 1.0
        for _ in range(2):
            x -= basis @ (basis.conj().T @ x)
        out[:, j] = x / np.linalg.norm(x)
    return out


def complex_svd(a, seed=None, backend=None, max_sweeps=MAX_SWEEPS):
    """Full SVD ``a = U @ diag(s) @ V^H`` of a complex matrix.

    Parameters
    ----------
    a : array_like, shape (m, n)
    seed : int or numpy Generator, optional
        When given, the sweeps start from a random unitary right factor.
    backend : {"cython", "python"}, optional
        Jacobi kernel to use; defaults to the one selected at import.

    Returns
    -------
    U : (m, m) unitary
    s : (min(m, n),) nonnegative, descending
    V : (n, n) unitary

    Raises
    ------
    ConvergenceFailure
        If the sweeps do not converge within ``max_sweeps``.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {a.shape}")
    m, n = a.shape
    if m < n:
        v, s, u = complex_svd(a.conj().T, seed=seed, backend=backend, max_sweeps=max_sweeps)
        return u, s, v
    if n == 0:
        return np.eye(m, dtype=np.complex128), np.zeros(0), np.eye(0, dtype=np.complex128)

    if seed is None:
        v0 = np.eye(n, dtype=np.complex128)
        work = a
    else:
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        v0 = random_unitary(n, rng)
        work = a @ v0
    wt = np.array(work.T, order="C", copy=True)
    vt = np.array(v0.T, order="C", copy=True)
    sweeps = get_kernel(backend)(wt, vt, float(m * _EPS), int(max_sweeps))
    if sweeps < 0:
        raise ConvergenceFailure(f"Jacobi SVD did not converge in {max_sweeps} sweeps")

    norms = np.linalg.norm(wt, axis=1)
    order = np.argsort(-norms, kind="stable")
    s = norms[order]
    v = np.ascontiguousarray(vt[order].T)
    cutoff = m * _EPS * s[0]
    k = int(np.count_nonzero(s > cutoff)) if s[0] > 0 else 0
    u = np.zeros((m, m), dtype=np.complex128)
    u[:, :k] = wt[order[:k]].T / s[:k]
    # the sweeps leave roundoff-driven column phases; make the first entry of
    # each right singular vector within 2x of its largest real positive, so
    # the output does not depend on the kernel (near-ties cannot flip it)
    lead = v[np.argmax(np.abs(v) > 0.5 * np.abs(v).max(axis=0), axis=0), np.arange(n)]
    ph = np.conj(lead) / np.abs(lead)
    v *= ph
    u[:, :k] *= ph[:k]
    return _complete_columns(u, k), s, v


@dataclass(frozen=True)
class DualSvd:
    """``A = U diag(sigma) V*`` with ``r`` appreciable and ``t`` nonzero singular values."""

    u: DualMatrix
    sigma: tuple
    v: DualMatrix
    r: int
    t: int

    @property
    def shape(self):
        return (self.u.rows, self.v.rows)

    def sigma_matrix(self) -> DualMatrix:
        m, n = self.shape
        return dm_diag(self.sigma, m, n)

    def reconstruct(self) -> DualMatrix:
        return self.u @ self.sigma_matrix() @ self.v.H

    def essential(self) -> DualMatrix:
        m, n = self.shape
        return self.u @ dm_diag(self.sigma[: self.r], m, n) @ self.v.H

    def nonessential(self) -> DualMatrix:
        m, n = self.shape
        diag = [DualReal(0.0, 0.0)] * self.r + list(self.sigma[self.r :])
        return self.u @ dm_diag(diag, m, n) @ self.v.H


def part_errors(lhs: DualMatrix, rhs: DualMatrix, mag: Magnitude) -> tuple[float, float]:
    """Relative deviation of each part, measured against the expected magnitude ``mag``.

    A part whose magnitude is negligible next to the other is measured against
    ``1e-6`` of the total instead, so pure rounding noise is not blown up.
    """
    floor = 1e-6 * (mag.std + mag.dual)
    ds = float(np.linalg.norm(lhs.std - rhs.std))
    dd = float(np.linalg.norm(lhs.dual - rhs.dual))

    def rel(delta, scale):
        scale = max(scale, floor)
        if scale == 0.0:
            return 0.0 if delta == 0.0 else np.inf
        return delta / scale

    return rel(ds, mag.std), rel(dd, mag.dual)


def unitarity_errors(u: DualMatrix) -> tuple[float, float]:
    """Deviation of ``U* U`` from ``I``: standard part absolute, dual part relative to ``max(1, |U_d|)``."""
    n = u.cols
    es = float(np.linalg.norm(u.std.conj().T @ u.std - np.eye(n)))
    g = u.std.conj().T @ u.dual
    ed = float(np.linalg.norm(g + g.conj().T)) / max(1.0, float(np.linalg.norm(u.dual)))
    return es, ed


def _clusters(s: np.ndarray, r: int, rel_tol: float) -> list[np.ndarray]:
    groups, start = [], 0
    for i in range(1, r + 1):
        if i == r or s[start] - s[i] > rel_tol * s[start]:
            groups.append(np.arange(start, i))
            start = i
    return groups


def dual_svd(a: DualMatrix, tol: ToleranceConfig | None = None, seed=None, backend=None) -> DualSvd:
    """Dual SVD with ordered singular values; self-checked before returning.

    Raises
    ------
    ConvergenceFailure
        The complex kernel failed, or the standard factors fail the self-check.
    DegenerateCoupling
        The dual corrections fail the self-check.
    """
    tol = tol or ToleranceConfig()
    m, n = a.shape
    k = min(m, n)
    us, s, vs = complex_svd(a.std, seed=seed, backend=backend)
    s = s.copy()
    smax = s[0] if k else 0.0
    r = int(np.count_nonzero(s > tol.rank_rel_tol * max(m, n) * smax)) if smax > 0 else 0
    dropped = float(np.linalg.norm(s[r:]))
    s[r:] = 0.0
    ad = a.dual

    # rotate each cluster of equal appreciable values so its Hermitian coupling is diagonal
    groups = _clusters(s, r, tol.rank_rel_tol)
    b = us.conj().T @ ad @ vs
    for idx in groups:
        if len(idx) == 1:
            continue
        bg = b[np.ix_(idx, idx)]
        try:
            _, rot = np.linalg.eigh((bg + bg.conj().T) / 2)
        except np.linalg.LinAlgError as exc:
            raise DegenerateCoupling(f"cluster symmetrisation failed: {exc}") from exc
        rot = rot[:, ::-1]
        us[:, idx] = us[:, idx] @ rot
        vs[:, idx] = vs[:, idx] @ rot

    # the zero cluster: its coupling block's own SVD supplies the infinitesimal values
    delta = np.zeros(0)
    if r < m or r < n:
        b = us.conj().T @ ad @ vs
        x, delta, y = complex_svd(b[r:, r:], backend=backend)
        us[:, r:] = us[:, r:] @ x
        vs[:, r:] = vs[:, r:] @ y
        if delta.size:
            scale = max(float(np.linalg.norm(ad)), float(delta[0]))
            delta = np.where(delta > tol.rank_rel_tol * max(m, n) * scale, delta, 0.0)
    b = us.conj().T @ ad @ vs

    p = np.zeros((m, m), dtype=np.complex128)
    q = np.zeros((n, n), dtype=np.complex128)
    if r:
        sr = s[:r]
        group_of = np.empty(r, dtype=int)
        for g, idx in enumerate(groups):
            group_of[idx] = g
        same = group_of[:, None] == group_of[None, :]
        bij = b[:r, :r]
        bji_c = bij.conj().T
        si, sj = sr[:, None], sr[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            det = sj**2 - si**2
            p_cross = (sj * bij + si * bji_c) / det
            q_cross = (si * bij + sj * bji_c) / det
        skew = (bij - bji_c) / 2
        mean = (si + sj) / 2
        p[:r, :r] = np.where(same, skew / (2 * mean), p_cross)
        q[:r, :r] = np.where(same, -skew / (2 * mean), q_cross)
        # zero-cluster rows against appreciable columns
        if m > r:
            p[r:, :r] = b[r:, :r] / sr
            p[:r, r:] = -p[r:, :r].conj().T
        if n > r:
            q[r:, :r] = b[:r, r:].conj().T / sr
            q[:r, r:] = -q[r:, :r].conj().T

    dual_parts = np.real(np.diagonal(b)[:r]).copy()
    sigma = [DualReal(s[i], dual_parts[i]) for i in range(r)]
    sigma += [DualReal(0.0, float(d)) for d in delta[: k - r]]
    t = r + int(np.count_nonzero(delta[: k - r] > 0))

    result = DualSvd(DualMatrix(us, us @ p), tuple(sigma), DualMatrix(vs, vs @ q), r, t)
    _self_check(a, result, dropped)
    return result


def _self_check(a: DualMatrix, res: DualSvd, dropped: float = 0.0) -> None:
    """Raise unless the factors reconstruct ``a`` and are dual unitary.

    ``dropped`` is the norm of the standard singular values that the rank
    threshold declared zero; the standard reconstruction may be off by that much.
    """
    es, ed = part_errors(res.reconstruct(), a, a.magnitude())
    std_norm = float(np.linalg.norm(a.std))
    if std_norm > 0:
        es = max(0.0, es - dropped / std_norm)
    us_err, ud_err = unitarity_errors(res.u)
    vs_err, vd_err = unitarity_errors(res.v)
    if max(es, us_err, vs_err) > _SELF_CHECK:
        raise ConvergenceFailure(
            f"dual SVD standard factors failed the self-check (reconstruction {es:.2e}, "
            f"unitarity {max(us_err, vs_err):.2e})"
        )
    if max(ed, ud_err, vd_err) > _SELF_CHECK:
        raise DegenerateCoupling(
            f"dual SVD corrections failed the self-check (reconstruction {ed:.2e}, "
            f"unitarity {max(ud_err, vd_err):.2e})"
        )


def essential_part(a: DualMatrix, tol: ToleranceConfig | None = None) -> DualMatrix:
    return dual_svd(a, tol).essential()


def nonessential_part(a: DualMatrix, tol: ToleranceConfig | None = None) -> DualMatrix:
    return dual_svd(a, tol).nonessential()
