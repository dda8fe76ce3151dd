"""Numerical laboratory for z-transform calculus on operator-algebra models.

The compiled extension carries the full surface: the spectral kernel
(herm_eig, apply_spectral_function, operator_norm, subspace_residual),
z-transform calculus (Contraction, decompose_domain, gamma_membership,
inclusion_residuals, multiplier_residual, center_condition_residual),
the symbolic crossed elements with their quotient maps, the fiber-family
scans, and the reproducible experiment runners.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # pragma: no cover - in-tree builds put _core on sys.path
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
