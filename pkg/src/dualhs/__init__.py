"""Dual complex matrices: dual SVD, HS decomposition, generalized inverses and characterization checks."""
__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .matrix import DualMatrix, ToleranceConfig
from .scalar import DualComplex, DualReal
from .svd import DualSvd, complex_svd, dual_svd, essential_part, nonessential_part
from .hs import HsDecomposition, hs_decompose, hs_essential, hs_reconstruct
from .geninverse import (
    InverseReport,
    dggi,
    dmpgi,
    group_inverse_essential,
    mpdgi,
    ndmpi_hs,
    ndmpi_svd,
    verify_inverse,
)
from .charsuite import PropertyId, TheoremId, definitional_test, equivalence_suite, structural_test
