"""Pure-Python (numpy) twin of the compiled Jacobi kernel, same contract."""
import math

import numpy as np


def _rotate(a, p, q, c, s, ph):
    xp = a[p].copy()
    xq = a[q]
    a[p] = c * xp - s * ph * xq
    a[q] = s * xp + c * ph * xq


def jacobi_sweeps(wt, vt, tol, max_sweeps):
    """Orthogonalise the rows of ``wt`` in place; returns the sweep count, or -1."""
    n = wt.shape[0]
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                wp, wq = wt[p], wt[q]
                alpha = float(np.vdot(wp, wp).real)
                beta = float(np.vdot(wq, wq).real)
                if alpha == 0.0 or beta == 0.0:
                    continue
                gamma = complex(np.vdot(wp, wq))
                g = abs(gamma)
                if g <= tol * math.sqrt(alpha) * math.sqrt(beta):
                    continue
                rotated = True
                ph = gamma.conjugate() / g
                zeta = (beta - alpha) / (2.0 * g)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                _rotate(wt, p, q, c, s, ph)
                _rotate(vt, p, q, c, s, ph)
        if not rotated:
            return sweep + 1
    return -1
