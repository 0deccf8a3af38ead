"""Dictionary construction and evaluation fixtures."""

import numpy as np
import pytest

from rejectsvm.dictionary import (
    DesignMatrix,
    Dictionary,
    build_constant_linear,
    build_custom_rbf,
    build_linear,
    build_rbf_lattice,
    estimated_c_f,
    evaluate,
)

# exp(-2), frozen independently: a unit-distance bump at bandwidth 2
EXP_MINUS_TWO = 0.13533528323661269


def test_linear_passes_coordinates_through():
    dic = build_linear(3)
    assert (dic.M, dic.dim) == (3, 3)
    assert dic.C_F_estimated
    x = np.array([[1.0, -2.0, 0.5]])
    design = evaluate(dic, x)
    assert np.array_equal(design.phi, x)


def test_constant_linear_prepends_ones():
    dic = build_constant_linear(2)
    assert dic.M == 3
    design = evaluate(dic, np.array([[3.0, -1.0], [0.0, 2.0]]))
    assert np.array_equal(design.phi[:, 0], [1.0, 1.0])
    assert np.array_equal(design.phi[:, 1:], [[3.0, -1.0], [0.0, 2.0]])


def test_rbf_value_at_unit_distance():
    dic = build_custom_rbf(centers=[[0.0, 0.0]], beta=2.0)
    design = evaluate(dic, np.array([[1.0, 0.0], [0.0, 0.0]]))
    assert design.phi[0, 0] == pytest.approx(EXP_MINUS_TWO, abs=1e-16)
    assert design.phi[1, 0] == 1.0
    assert dic.C_F == 1.0 and not dic.C_F_estimated


def test_lattice_includes_box_corners():
    dic = build_rbf_lattice((3, 2), [0.0, -1.0], [2.0, 1.0], beta=0.5)
    assert dic.M == 6
    corners = {(0.0, -1.0), (0.0, 1.0), (2.0, -1.0), (2.0, 1.0)}
    have = {tuple(c) for c in dic.centers}
    assert corners <= have
    # single-count axis keeps the lower corner only
    thin = build_rbf_lattice((1,), [2.0], [5.0])
    assert np.array_equal(thin.centers, [[2.0]])


def test_lattice_validation():
    with pytest.raises(ValueError):
        build_rbf_lattice((2, 2), [0.0], [1.0, 1.0])  # corner shape mismatch
    with pytest.raises(ValueError):
        build_rbf_lattice((0, 2), [0.0, 0.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        build_rbf_lattice((2,), [1.0], [0.0])  # inverted box
    with pytest.raises(ValueError):
        build_rbf_lattice((2,), [0.0], [1.0], beta=0.0)
    with pytest.raises(ValueError):
        build_linear(0)
    with pytest.raises(ValueError):
        Dictionary("fourier", 1, 1, 1.0, False)


def test_evaluate_checks_feature_count():
    dic = build_linear(2)
    with pytest.raises(ValueError):
        evaluate(dic, np.ones((4, 3)))


def test_design_matrix_label_validation():
    with pytest.raises(ValueError):
        DesignMatrix(phi=np.ones((2, 2)), y=np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        DesignMatrix(phi=np.ones((2, 2)), y=np.array([1.0]))
    with pytest.raises(ValueError):
        DesignMatrix(phi=np.array([[np.inf]]))


def test_sup_norm_estimation():
    dic = build_linear(2)
    design = evaluate(dic, np.array([[0.5, -3.0], [1.0, 2.0]]))
    assert estimated_c_f(dic, design) == 3.0
    rbf = build_custom_rbf(centers=[[0.0, 0.0]])
    rbf_design = evaluate(rbf, np.array([[5.0, 5.0]]))
    assert estimated_c_f(rbf, rbf_design) == 1.0  # exact, not data-dependent
    with pytest.raises(ValueError):
        estimated_c_f(dic, evaluate(dic, np.zeros((2, 2))))
