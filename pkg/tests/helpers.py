"""Shared fixtures and generators used across the test modules."""

import numpy as np

from rejectsvm.dictionary import DesignMatrix, build_linear
from rejectsvm.losses import CostParams, DiscreteDistribution
from rejectsvm.lp import LinearProgram


def random_lp(rng, max_vars=6, max_cons=8):
    """A random general-form LP small enough for the enumeration oracle.

    Equality rows are capped below the variable count so every instance
    keeps at least one degree of freedom for the vertex search.
    """
    nv = int(rng.integers(1, max_vars + 1))
    mc = int(rng.integers(1, max_cons + 1))
    A = np.round(rng.normal(size=(mc, nv)) * 2, 1)
    b = np.round(rng.normal(size=mc) * 2, 1)
    relations = rng.choice(["<=", ">=", "="], size=mc, p=[0.5, 0.3, 0.2]).tolist()
    if sum(s == "=" for s in relations) >= nv:
        relations = ["<=" if s == "=" else s for s in relations]
    c = np.round(rng.normal(size=nv) * 2, 1)
    lower = np.where(rng.random(nv) < 0.6, 0.0, -np.inf)
    lower = np.where(rng.random(nv) < 0.25, -1.5, lower)
    upper = np.where(rng.random(nv) < 0.5, rng.uniform(0.5, 3.0, nv), np.inf)
    return LinearProgram(objective=c, rows=A, relations=relations, rhs=b,
                         lower=lower, upper=upper)


def random_design(rng, n, M):
    phi = np.round(rng.normal(size=(n, M)), 2)
    y = rng.choice([-1.0, 1.0], size=n)
    return DesignMatrix(phi=phi, y=y)


def random_distribution(rng, k=None, dim=2):
    """Random finite-support distribution with masses summing exactly to 1."""
    if k is None:
        k = int(rng.integers(2, 7))
    x = rng.normal(size=(k, dim))
    w = rng.random(k) + 0.05
    p = w / w.sum()
    p[-1] = 1.0 - p[:-1].sum()  # close the telescoping sum exactly
    eta = rng.random(k)
    return DiscreteDistribution(x=x, p=p, eta=eta)


def plateau_fixture():
    """Three collinear-feature atoms whose population solution is (1, 0).

    The middle atom is pure noise (eta = 1/2) so the optimal rule rejects
    it, and the outer atoms force the first coordinate to 1.  Unique
    minimizer, known Bayes risks, and a wide exact plateau in r.
    """
    dist = DiscreteDistribution(
        x=np.array([[-1.0, 0.0], [0.0, 1.0], [1.0, 0.0]]),
        p=np.array([1.0, 1.0, 1.0]) / 3.0,
        eta=np.array([0.1, 0.5, 0.9]),
    )
    dic = build_linear(2)
    cp = CostParams(d=0.25, tau=0.5)
    return dist, dic, cp
