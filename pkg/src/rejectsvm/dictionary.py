"""Basis-function dictionaries defining f(x) = sum_j lambda_j f_j(x).

Four kinds are supported: raw coordinates ("linear"), a constant column plus
coordinates ("constant_linear"), Gaussian bumps on a box lattice
("rbf_lattice"), and Gaussian bumps at user-supplied centers ("custom_rbf").
Gaussian dictionaries have sup-norm exactly 1; for unbounded dictionaries the
sup-norm bound C_F is flagged as estimated and taken from training data.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

_KINDS = ("linear", "constant_linear", "rbf_lattice", "custom_rbf")


@dataclass(frozen=True)
class Dictionary:
    kind: str
    dim: int
    M: int
    C_F: float
    C_F_estimated: bool
    centers: np.ndarray = None   # rbf kinds only
    beta: float = None           # rbf kinds only
    grid: tuple = None           # rbf_lattice only: counts per axis
    box: np.ndarray = None       # rbf_lattice only: (2, dim) lower/upper corners

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown dictionary kind {self.kind!r}")
        if self.M < 1:
            raise ValueError("dictionary must contain at least one function")


@dataclass(frozen=True)
class DesignMatrix:
    """Evaluated dictionary: phi[i, j] = f_j(x_i), with optional labels."""

    phi: np.ndarray
    y: np.ndarray = None

    def __post_init__(self):
        phi = np.atleast_2d(np.asarray(self.phi, dtype=float))
        if not np.all(np.isfinite(phi)):
            raise ValueError("design matrix contains non-finite entries")
        object.__setattr__(self, "phi", phi)
        if self.y is not None:
            y = np.atleast_1d(np.asarray(self.y, dtype=float))
            if y.shape != (phi.shape[0],):
                raise ValueError("labels must align with rows")
            if not np.all(np.isin(y, (-1.0, 1.0))):
                raise ValueError("labels must be -1 or +1")
            object.__setattr__(self, "y", y)

    @property
    def n(self):
        return self.phi.shape[0]

    @property
    def M(self):
        return self.phi.shape[1]


def build_linear(dim):
    """Coordinate functions f_j(x) = x_j; C_F must be estimated from data."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    return Dictionary("linear", dim, dim, 0.0, True)


def build_constant_linear(dim):
    """A constant function 1 followed by the coordinates."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    return Dictionary("constant_linear", dim, dim + 1, 0.0, True)


def build_rbf_lattice(grid, box_lower, box_upper, beta=2.0):
    """Gaussian bumps exp(-beta ||x - b||^2) centered on a box lattice.

    The lattice is equally spaced along each axis and includes the box
    corners (a single count along an axis keeps only the lower corner).
    """
    grid = tuple(int(g) for g in np.atleast_1d(grid))
    lo = np.atleast_1d(np.asarray(box_lower, dtype=float))
    hi = np.atleast_1d(np.asarray(box_upper, dtype=float))
    dim = len(grid)
    if lo.shape != (dim,) or hi.shape != (dim,):
        raise ValueError("box corners must match the grid dimension")
    if any(g < 1 for g in grid):
        raise ValueError("grid counts must be at least 1")
    if beta <= 0:
        raise ValueError("bandwidth beta must be positive")
    for ax in range(dim):
        if hi[ax] < lo[ax] or (hi[ax] == lo[ax] and grid[ax] > 1):
            raise ValueError(f"degenerate box on axis {ax}")
    axes = [np.linspace(lo[ax], hi[ax], grid[ax]) for ax in range(dim)]
    mesh = np.meshgrid(*axes, indexing="ij")
    centers = np.stack([m.ravel() for m in mesh], axis=1)
    box = np.vstack([lo, hi])
    return Dictionary(
        "rbf_lattice", dim, centers.shape[0], 1.0, False,
        centers=centers, beta=float(beta), grid=grid, box=box,
    )


def build_custom_rbf(centers, beta=2.0):
    """Gaussian bumps at arbitrary centers; sup-norm is exactly 1."""
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    if beta <= 0:
        raise ValueError("bandwidth beta must be positive")
    return Dictionary(
        "custom_rbf", centers.shape[1], centers.shape[0], 1.0, False,
        centers=centers, beta=float(beta),
    )


def evaluate(dic, X, y=None):
    """Evaluate every dictionary function on the rows of X."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != dic.dim:
        raise ValueError(
            f"data has {X.shape[1]} features, dictionary expects {dic.dim}"
        )
    if dic.kind == "linear":
        phi = X.copy()
    elif dic.kind == "constant_linear":
        phi = np.hstack([np.ones((X.shape[0], 1)), X])
    else:
        sq = cdist(X, dic.centers, "sqeuclidean")
        phi = np.exp(-dic.beta * sq)
    return DesignMatrix(phi, y)


def estimated_c_f(dic, design):
    """Sup-norm bound used by the rate formulas.

    Exact (1) for Gaussian dictionaries; otherwise the largest |f_j(x_i)|
    seen in the training design, which the theory treats as C_F.
    """
    if not dic.C_F_estimated:
        return dic.C_F
    value = float(np.abs(design.phi).max())
    if value <= 0.0:
        raise ValueError("cannot estimate a positive sup-norm from this data")
    return value
