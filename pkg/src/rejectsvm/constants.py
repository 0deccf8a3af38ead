"""Numerical tolerances shared across the package."""

FEAS_TOL = 1e-7      # absolute tolerance on constraint residuals
PIVOT_TOL = 1e-9     # entries at or below this never serve as pivots
BLOWUP_LIMIT = 1e12  # tableau magnitudes beyond this abort the solve
SUPPORT_TOL = 1e-8   # |coefficient| above this counts as support
