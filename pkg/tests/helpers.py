"""Seeded random inputs shared by the test modules."""
import numpy as np

from dualhs.matrix import DualMatrix
from dualhs.svd import random_unitary


def gauss(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def structured_std(rng, m, n, variant):
    """Standard part of a given flavour: full, rank deficient, repeated singular values, or zero."""
    k = min(m, n)
    if variant == "full":
        return gauss(rng, m, n)
    if variant == "rank":
        rank = int(rng.integers(0, k)) if k > 1 else 0
        return gauss(rng, m, rank) @ gauss(rng, rank, n)
    if variant == "repeated":
        vals = np.sort(rng.uniform(0.5, 3.0, (k + 1) // 2))[::-1]
        vals = np.repeat(vals, 2)[:k]
        if k > 2 and rng.integers(2):
            vals[-1] = 0.0  # repeated values next to a rank drop
        d = np.zeros((m, n))
        d[:k, :k] = np.diag(vals)
        return random_unitary(m, rng) @ d @ random_unitary(n, rng).conj().T
    if variant == "zero":
        return np.zeros((m, n), dtype=complex)
    raise ValueError(variant)


VARIANTS = ("full", "rank", "repeated", "zero")


def random_case(rng, max_size=12, square=False, variant=None):
    m = int(rng.integers(1, max_size + 1))
    n = m if square or rng.integers(2) else int(rng.integers(1, max_size + 1))
    variant = variant or VARIANTS[int(rng.integers(len(VARIANTS)))]
    return DualMatrix(structured_std(rng, m, n, variant), gauss(rng, m, n)), variant


def corpus(count, seed, max_size=12, square=False):
    rng = np.random.default_rng(seed)
    return [random_case(rng, max_size, square)[0] for _ in range(count)]


def max_part_diff(a: DualMatrix, b: DualMatrix) -> float:
    return max(float(np.abs(a.std - b.std).max(initial=0)), float(np.abs(a.dual - b.dual).max(initial=0)))
