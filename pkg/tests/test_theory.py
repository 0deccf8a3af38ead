"""Population-level structure: Gram matrix, cone constant, margin exponent,
and the three distribution-level checks."""

import math

import numpy as np
import pytest

from rejectsvm.dictionary import build_linear
from rejectsvm.losses import CostParams, DiscreteDistribution
from rejectsvm.theory import (
    check_excess_domination,
    check_lemma_a1,
    check_prop21,
    complexity_estimate,
    gram_psi,
    kappa_estimate,
    make_context,
    weighted_norm,
)

from helpers import plateau_fixture, random_distribution


def test_gram_matrix_matches_double_loop():
    rng = np.random.default_rng(19)
    dist = random_distribution(rng, k=5, dim=3)
    dic = build_linear(3)
    psi = gram_psi(dist, dic)
    ref = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(5):
                w = dist.p[k] * dist.eta[k] * (1.0 - dist.eta[k])
                ref[i, j] += 4.0 * dist.x[k, i] * dist.x[k, j] * w
    assert np.allclose(psi, ref, atol=1e-12)
    assert np.allclose(psi, psi.T)
    assert np.linalg.eigvalsh(psi).min() >= -1e-12


def test_gram_matrix_on_plateau_fixture():
    dist, dic, _ = plateau_fixture()
    psi = gram_psi(dist, dic)
    # outer atoms carry omega = 0.09, middle one 0.25, each with mass 1/3
    assert np.allclose(psi, np.diag([4 * 2 * 0.09 / 3, 4 * 0.25 / 3]))


def test_weighted_norm_is_a_seminorm():
    rng = np.random.default_rng(29)
    dist = random_distribution(rng, k=6)
    g = rng.normal(size=6)
    h = rng.normal(size=6)
    assert weighted_norm(dist, g + h) <= (weighted_norm(dist, g)
                                          + weighted_norm(dist, h) + 1e-12)
    assert weighted_norm(dist, 3.0 * g) == pytest.approx(
        3.0 * weighted_norm(dist, g))
    # noiseless atoms contribute nothing
    pure = DiscreteDistribution(x=[[0.0], [1.0]], p=[0.5, 0.5],
                                eta=[0.0, 1.0])
    assert weighted_norm(pure, np.array([7.0, -4.0])) == 0.0


def test_context_carries_the_optimal_rule():
    dist, dic, cp = plateau_fixture()
    ctx = make_context(dist, dic, cp)
    assert np.array_equal(ctx.f0_values, [-1.0, 0.0, 1.0])
    assert ctx.phi.shape == (3, 2)


def test_cone_constant_on_diagonal_matrix():
    # diagonal psi, support {0}: off-support mass only raises the ratio,
    # so the infimum is psi[0,0] / 4 regardless of the cone width
    val, cert = kappa_estimate(np.diag([0.24, 1.0 / 3.0]), [1.0, 0.0])
    assert val == pytest.approx(0.06, abs=1e-9)
    assert val == pytest.approx(
        float(cert @ np.diag([0.24, 1.0 / 3.0]) @ cert)
        / (4.0 * cert[0] ** 2))
    full, _ = kappa_estimate(np.diag([0.4, 0.9]), [1.0, 1.0])
    assert full == pytest.approx(0.1, abs=1e-9)  # smallest eigenvalue / 4


def test_cone_constant_with_cross_terms():
    # vertex of the quadratic sits outside the c=1 cone, so the constraint
    # binds and widening the cone strictly lowers the estimate
    psi = np.array([[4.0, -1.5], [-1.5, 1.0]])
    tight, _ = kappa_estimate(psi, [1.0, 0.0], c=1.0)
    wide, _ = kappa_estimate(psi, [1.0, 0.0], c=2.0)
    assert tight == pytest.approx(0.5, abs=1e-7)
    assert wide == pytest.approx(0.4375, abs=1e-7)
    assert wide < tight


def test_cone_constant_validation():
    psi = np.eye(2)
    with pytest.raises(ValueError):
        kappa_estimate(psi, [1.0, 0.0], c=0.5)
    with pytest.raises(ValueError):
        kappa_estimate(psi, [0.0, 0.0])


def test_cone_constant_deterministic_candidates_suffice():
    val, _ = kappa_estimate(np.diag([0.8, 0.1]), [1.0, 0.0], budget=0,
                            refine=False)
    assert val == pytest.approx(0.2, abs=1e-12)


def test_margin_exponent_near_one_for_uniform_eta():
    k = 1000
    eta = (np.arange(k) + 0.5) / k
    dist = DiscreteDistribution(x=np.zeros((k, 1)), p=np.full(k, 1.0 / k),
                                eta=eta)
    est = complexity_estimate(dist, 0.25)
    assert est.alpha == pytest.approx(1.0, abs=0.1)
    assert est.a_const >= 1.0
    # the fitted pair really bounds the step function everywhere
    for t in np.geomspace(5e-4, 1.0, 50):
        mass = max(np.sum(dist.p[np.abs(eta - 0.25) <= t]),
                   np.sum(dist.p[np.abs(eta - 0.75) <= t]))
        assert mass <= est.a_const * t**est.alpha + 1e-12


def test_margin_exponent_sentinel_when_gapped():
    # every width in the grid stays below the 0.2 gap, so no atom binds
    dist = DiscreteDistribution(x=[[0.0], [1.0]], p=[0.5, 0.5],
                                eta=[0.5, 0.45])
    est = complexity_estimate(dist, 0.25,
                              t_grid=np.geomspace(1e-3, 0.1, 10))
    assert math.isinf(est.alpha)
    assert est.a_const == 1.0
    assert est.gap == pytest.approx(0.2)


def test_margin_exponent_atom_on_threshold():
    dist = DiscreteDistribution(x=[[0.0], [1.0]], p=[0.5, 0.5],
                                eta=[0.25, 0.5])
    est = complexity_estimate(dist, 0.25)
    assert (est.alpha, est.a_const, est.gap) == (0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        complexity_estimate(dist, 0.25, t_grid=[0.0, 0.5])
    with pytest.raises(ValueError):
        complexity_estimate(dist, 0.25, t_grid=[1.5])


def test_norm_excess_risk_check_passes_on_fixture():
    dist, dic, cp = plateau_fixture()
    ctx = make_context(dist, dic, cp)
    rep = check_lemma_a1(ctx, n_random=200, seed=0)
    assert rep.status == "pass"
    assert rep.slack >= 0.0
    assert rep.detail["n_checked"] == 200


def test_norm_excess_risk_check_accepts_explicit_candidates():
    dist, dic, cp = plateau_fixture()
    ctx = make_context(dist, dic, cp)
    rep = check_lemma_a1(ctx, lam_set=[[1.0, 0.0], [0.0, 0.0], [-2.0, 1.0]])
    assert rep.status == "pass"
    assert rep.detail["n_checked"] == 3


def test_norm_excess_risk_check_skips_gapped_distributions():
    dist = DiscreteDistribution(x=[[1.0, 0.0], [0.0, 1.0]], p=[0.5, 0.5],
                                eta=[0.5, 0.5])
    ctx = make_context(dist, build_linear(2), CostParams(d=0.25))
    rep = check_lemma_a1(ctx, t_grid=np.geomspace(1e-3, 0.1, 10))
    assert rep.status == "skipped"
    assert math.isinf(rep.slack)


def test_population_path_check_passes_on_fixture():
    dist, dic, cp = plateau_fixture()
    rep = check_prop21(dist, dic, cp, np.linspace(0.03, 0.6, 20))
    assert rep.status == "pass"
    trace = rep.detail["trace"]
    assert len(trace) == 20
    assert rep.detail["l1_at_zero"] == pytest.approx(1.0)
    # the trace's l1 column is non-increasing in r
    l1s = [row[1] for row in trace]
    assert all(a >= b - 1e-7 for a, b in zip(l1s, l1s[1:]))
    with pytest.raises(ValueError):
        check_prop21(dist, dic, cp, [])
    with pytest.raises(ValueError):
        check_prop21(dist, dic, cp, [0.0, 0.1])


def test_domination_check_passes_on_fixture_and_random():
    dist, dic, cp = plateau_fixture()
    ctx = make_context(dist, dic, cp)
    rep = check_excess_domination(ctx, n_random=300, seed=0)
    assert rep.status == "pass"
    assert rep.slack >= -1e-12
    rng = np.random.default_rng(37)
    for _ in range(5):
        rdist = random_distribution(rng, dim=2)
        rcp = CostParams(d=float(rng.uniform(0.05, 0.5)))
        rctx = make_context(rdist, build_linear(2), rcp)
        assert check_excess_domination(rctx, n_random=100,
                                       seed=1).status == "pass"
