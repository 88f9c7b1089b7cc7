import numpy as np
import pytest
from numpy.testing import assert_allclose

from qemhj.errors import DomainError, GridMismatchError
from qemhj.oracle import (
    DiscretizedOperator,
    action_variable,
    contour_residue,
    cosine_similarity,
    count_nodes,
    discretize_pdm,
    eta_inner_product,
    richardson,
    solve_lowest,
    symmetrize,
    turning_points,
    zero_residues,
)
from qemhj.profiles import Grid, MassProfile, PotentialSpec, make_ambiguity, veff_function
from qemhj.qhj_core import SampledComplexFunction
from qemhj.residue_spectra import morse_eigenfunction, morse_quantization, pt_eigenfunction
from qemhj.swanson import MetricWeight

ZERO = lambda x: np.zeros_like(np.asarray(x, float))


def _levels(profile, veff, lo, hi, k, grids=(2001, 4001, 8001), form="conservative"):
    vals = np.array([solve_lowest(discretize_pdm(profile, veff, Grid(lo, hi, n), form), k).eigenvalues
                     for n in grids])
    return np.array([richardson(vals[:, j]) for j in range(k)])


def test_box_levels():
    got = _levels(MassProfile.constant(), ZERO, 0, np.pi, 3)
    assert_allclose(got, [1, 4, 9], atol=1e-4)


def test_harmonic_levels():
    got = _levels(MassProfile.constant(), lambda x: x**2, -10, 10, 3)
    assert_allclose(got, [1, 3, 5], atol=1e-4)


def test_single_grid_box_is_second_order():
    e = [solve_lowest(discretize_pdm(MassProfile.constant(), ZERO, Grid(0, np.pi, n)), 1).eigenvalues[0] - 1
         for n in (201, 401)]
    assert e[0] / e[1] == pytest.approx(4.0, rel=1e-2)


def test_raw_and_symmetrised_forms_agree():
    prof = MassProfile.exponential_decay()
    amb = make_ambiguity(0, -1)
    cond = morse_quantization(amb, 3.0, 0)
    veff = veff_function(PotentialSpec.morse(cond.output_parameter, 3.0, 1.0), prof, amb)
    g = Grid(-8, 8, 2001)
    raw = discretize_pdm(prof, veff, g, "raw")
    sym = symmetrize(raw)
    assert sym.symmetric and np.array_equal(sym.lower, sym.upper)
    a = solve_lowest(raw, 3).eigenvalues
    b = solve_lowest(discretize_pdm(prof, veff, g), 3).eigenvalues
    assert_allclose(a, b, atol=5e-3)
    assert np.all(solve_lowest(raw, 3).residual_norms < 1e-8)


def test_morse_levels_match_closed_form():
    amb = make_ambiguity(0, -1)
    prof = MassProfile.exponential_decay()
    for n in range(3):
        cond = morse_quantization(amb, 3.0, n)
        veff = veff_function(PotentialSpec.morse(cond.output_parameter, 3.0, 1.0), prof, amb)
        got = _levels(prof, veff, -12, 12, n + 1)[n]
        assert got == pytest.approx(cond.energy, abs=1e-6)


def test_eigenvector_nodes():
    res = solve_lowest(discretize_pdm(MassProfile.constant(), ZERO, Grid(0, np.pi, 401)), 4)
    assert [count_nodes(res.eigenvectors[:, j]) for j in range(4)] == [0, 1, 2, 3]
    assert np.all(res.residual_norms < 1e-8)
    assert count_nodes(np.sin(3 * np.linspace(0, np.pi, 1001))) == 2


def test_operator_validation():
    g = Grid(0, 1, 6)
    with pytest.raises(ValueError):
        DiscretizedOperator(g, np.zeros(3), np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        DiscretizedOperator(g, np.zeros(4), np.zeros(3), np.ones(3), True)
    with pytest.raises(DomainError):
        discretize_pdm(MassProfile.inverse_sinh(), ZERO, Grid(-1, 1, 11))
    with pytest.raises(ValueError):
        discretize_pdm(MassProfile.constant(), ZERO, g, "other")
    with pytest.raises(ValueError):
        solve_lowest(discretize_pdm(MassProfile.constant(), ZERO, g), 4)


def test_contour_residues():
    assert contour_residue(lambda z: 1 / z, 0, 0.5) == pytest.approx(1.0, abs=1e-14)
    assert abs(contour_residue(lambda z: np.exp(z) * z**2, 0.3, 0.5)) < 1e-13
    assert contour_residue(lambda z: 2 / (z - 1j), 1j, 0.1) == pytest.approx(2.0, abs=1e-13)
    with pytest.raises(ValueError):
        contour_residue(lambda z: z, 0, 0)


def test_zero_residues_are_minus_i():
    st = morse_eigenfunction(3.0, 1.0, 2)
    xk, res = zero_residues(st)
    assert len(xk) == 2
    assert_allclose(res, -1j, atol=1e-10)
    assert_allclose(st(xk.real, normalize=False), 0, atol=1e-10)


def test_action_variable_counts_zeros():
    assert action_variable(morse_eigenfunction(3.0, 1.0, 2))[0] == 2
    amb = make_ambiguity(0, -1)
    assert action_variable(pt_eigenfunction(0.0, amb, 3))[0] == 3
    assert action_variable(pt_eigenfunction(-9.0, make_ambiguity(1, -12), 1), "physical")[0] == 1
    assert action_variable(morse_eigenfunction(3.0, 1.0, 0))[0] == 0
    with pytest.raises(ValueError):
        zero_residues(morse_eigenfunction(3.0, 1.0, 1), "other")


def test_eta_inner_product():
    g = Grid(0, np.pi, 2001)
    u = SampledComplexFunction(g, np.sqrt(2 / np.pi) * np.sin(g.nodes))
    eta = MetricWeight(g, np.ones(g.n_points))
    assert eta_inner_product(u, u, eta) == pytest.approx(1.0, abs=1e-6)
    v = SampledComplexFunction(g, np.sqrt(2 / np.pi) * np.sin(2 * g.nodes))
    assert abs(eta_inner_product(u, v, eta)) < 1e-12
    with pytest.raises(GridMismatchError):
        eta_inner_product(u, SampledComplexFunction(Grid(0, 1, 2001), u.values), eta)


def test_richardson():
    # f(h) = 1 + h^2 + h^4 is exact after two eliminations
    vals = [1 + h**2 + h**4 for h in (0.1, 0.05, 0.025)]
    assert richardson(vals) == pytest.approx(1.0, abs=1e-14)
    assert richardson([2.0]) == 2.0


def test_cosine_similarity_and_turning_points():
    assert cosine_similarity([1, 0], [2, 0]) == 1.0
    assert cosine_similarity([1, 0], [0, 1]) == 0.0
    tp = turning_points(lambda x: x**2, 1.0, Grid(-3, 3, 601))
    assert_allclose(tp, [-1, 1], atol=1e-12)
    tp = turning_points(lambda x: x**2, 1.0, Grid(-3, 3, 600))
    assert_allclose(tp, [-1, 1], atol=1e-4)
