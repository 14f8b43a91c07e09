"""Hartwig-Spindelbock decomposition of square dual complex matrices.

From a dual SVD ``A = U diag(S1, S2) V*`` and ``W = V* U`` partitioned as
``[[K, L], [M, N]]`` (``K`` of order ``r``), the matrix is

    A = U [[S1 K, S1 L], [S2 M, S2 N]] U*

with ``K K* + L L* = I_r`` and ``K M* + L N* = 0``. The blocks are not unique
(unitary freedom inside clusters of equal singular values); only quantities
invariant under that freedom should be compared across runs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotSquare
from .matrix import DualMatrix, ToleranceConfig, dm_block, dm_diag, dm_zero
from .scalar import DualReal
from .svd import DualSvd, dual_svd

__all__ = ["HsDecomposition", "hs_decompose", "hs_essential", "hs_reconstruct", "hs_from_svd"]


@dataclass(frozen=True)
class HsDecomposition:
    u: DualMatrix
    sigma1: tuple
    sigma2: tuple
    k: DualMatrix
    l: DualMatrix  # noqa: E741
    m: DualMatrix
    nblk: DualMatrix
    t: int = 0

    @property
    def n(self) -> int:
        return self.u.rows

    @property
    def r(self) -> int:
        return len(self.sigma1)

    @property
    def s1(self) -> DualMatrix:
        return dm_diag(self.sigma1)

    @property
    def s2(self) -> DualMatrix:
        return dm_diag(self.sigma2)

    def s1_inv(self) -> DualMatrix:
        return dm_diag([DualReal(1.0) / x for x in self.sigma1])

    @property
    def w(self) -> DualMatrix:
        return dm_block([[self.k, self.l], [self.m, self.nblk]])

    def conjugate_by_u(self, blocks) -> DualMatrix:
        """``U X U*`` for ``X`` given as a 2x2 nested list of blocks (``None`` means zero)."""
        r, n = self.r, self.n
        dims = (r, n - r)
        filled = [
            [blk if blk is not None else dm_zero(dims[i], dims[j]) for j, blk in enumerate(row)]
            for i, row in enumerate(blocks)
        ]
        return self.u @ dm_block(filled) @ self.u.H

    # raw blocks of the parts, as used by the structural characterisations
    @property
    def sigma1_std(self) -> np.ndarray:
        return np.array([x.std for x in self.sigma1])

    @property
    def sigma2_dual(self) -> np.ndarray:
        return np.array([x.dual for x in self.sigma2])


def hs_from_svd(svd: DualSvd) -> HsDecomposition:
    m, n = svd.shape
    if m != n:
        raise NotSquare(f"the HS decomposition needs a square matrix, got {svd.shape}")
    r = svd.r
    w = svd.v.H @ svd.u
    return HsDecomposition(
        u=svd.u,
        sigma1=tuple(svd.sigma[:r]),
        sigma2=tuple(svd.sigma[r:]),
        k=DualMatrix(w.std[:r, :r], w.dual[:r, :r]),
        l=DualMatrix(w.std[:r, r:], w.dual[:r, r:]),
        m=DualMatrix(w.std[r:, :r], w.dual[r:, :r]),
        nblk=DualMatrix(w.std[r:, r:], w.dual[r:, r:]),
        t=svd.t,
    )


def hs_decompose(a: DualMatrix, tol: ToleranceConfig | None = None, seed=None) -> HsDecomposition:
    if not a.is_square():
        raise NotSquare(f"the HS decomposition needs a square matrix, got {a.shape}")
    return hs_from_svd(dual_svd(a, tol, seed=seed))


def hs_essential(h: HsDecomposition) -> DualMatrix:
    s1 = h.s1
    return h.conjugate_by_u([[s1 @ h.k, s1 @ h.l], [None, None]])


def hs_reconstruct(h: HsDecomposition) -> DualMatrix:
    s1, s2 = h.s1, h.s2
    return h.conjugate_by_u([[s1 @ h.k, s1 @ h.l], [s2 @ h.m, s2 @ h.nblk]])
