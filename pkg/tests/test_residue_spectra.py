import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from qemhj.errors import BranchError, ConstraintError, PositiveEnergyError, UnboundError
from qemhj.oracle import count_nodes
from qemhj.profiles import MassProfile, PotentialSpec, make_ambiguity, veff_function
from qemhj.residue_spectra import (
    Branch,
    calibrate_morse_scale,
    laurent_coefficients,
    morse_C,
    morse_eigenfunction,
    morse_G,
    morse_infinity_expansion,
    morse_quantization,
    morse_residues,
    pdm_relative_residual,
    pt_AB_params,
    pt_closure,
    pt_eigenfunction,
    pt_G,
    pt_quantization,
    pt_residues,
    pt_select_branch,
    pt_U,
)

X_PT = np.linspace(1e-3, 25, 10000)[1:-1]


def _pt_residual(V1, amb, n, branch=None, variant="corrected", x=X_PT):
    cond = pt_quantization(V1, amb, n, branch=branch, variant=variant)
    st_ = pt_eigenfunction(V1, amb, n, branch=branch, variant=variant)
    prof = MassProfile.inverse_sinh()
    veff = veff_function(PotentialSpec.poschl_teller(V1, 0.0, cond.output_parameter), prof, amb)
    return np.max(pdm_relative_residual(st_, prof, veff, cond.energy, x))


# ---------------------------------------------------------------- residues

def test_branch_parse():
    assert Branch.parse("+") is Branch.PLUS and Branch.parse("minus") is Branch.MINUS
    with pytest.raises(ValueError):
        Branch.parse("x")


def test_pt_residues_symmetric_case(amb0):
    rp, rm = pt_residues(0.0, amb0, "-")
    assert (rp.value, rm.value) == (0.5, 0.5)
    rp, rm = pt_residues(0.0, amb0, "-", variant="printed")
    assert (rp.value, rm.value) == (0.0, 0.0)
    rp, rm = pt_residues(0.0, amb0, "+", variant="printed")
    assert (rp.value, rm.value) == (1.0, 1.0)


def test_pt_residues_three_quarters(amb0):
    rp, rm = pt_residues(0.75, amb0, "-", variant="printed")
    assert rp.value == pytest.approx(0.5 * (1 - np.sqrt(7 / 4)), abs=1e-15)
    assert rm.value == pytest.approx(0.25, abs=1e-15)
    # without the +1 shift the y=-1 radicand -V1 - alpha(alpha+beta+1) is negative
    with pytest.raises(BranchError):
        pt_residues(0.75, amb0, "-")


def test_branch_selection_prefers_normalisable_pair():
    amb = make_ambiguity(1.0, -12.0)
    assert pt_select_branch(-9.0, amb, 0) == (Branch.PLUS, Branch.MINUS)
    # nothing qualifies: fall back to the Minus pair
    assert pt_select_branch(0.0, make_ambiguity(0, -1), 0) == (Branch.MINUS, Branch.MINUS)


# ------------------------------------------------------------ quantization

@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_pt_quantization_symmetric_values(amb0, n):
    assert pt_quantization(0.0, amb0, n).output_parameter == pytest.approx(n * (n + 1), abs=1e-14)


@pytest.mark.parametrize("n", [0, 1])
def test_pt_quantization_printed_values(amb0, n):
    assert pt_quantization(0.0, amb0, n, variant="printed").output_parameter == pytest.approx(-0.25, abs=1e-15)


def test_simple_pole_gate(amb0):
    with pytest.raises(ConstraintError, match="simple-pole constraint V2=epsilon violated"):
        pt_quantization(0.0, amb0, 0, V2=0.1, eps=0.2)
    assert pt_quantization(0.0, amb0, 0, V2=0.1, eps=0.1).energy == 0.1


@settings(max_examples=20, deadline=None)
@given(a=st.floats(0.1, 2.0), sign=st.sampled_from([-1, 1]), Q=st.floats(0.0, 5.0), u=st.floats(-1, 1),
       n=st.integers(0, 4))
def test_pt_closure_identity(a, sign, Q, u, n):
    # admissible means |V1| <= -alpha(alpha+beta+1) = Q; solve for beta
    a *= sign
    amb = make_ambiguity(a, -Q / a - a - 1)
    V1 = u * Q
    assume(V1 - amb.q >= 0 and -V1 - amb.q >= 0)
    cond = pt_quantization(V1, amb, n, branch="-")
    assert abs(pt_closure(cond, amb)) <= 1e-12 * (1 + abs(cond.output_parameter))


def test_pt_AB_params(amb0):
    assert pt_AB_params(0.0, amb0, variant="printed") == (0.5, 0.0)
    A, B = pt_AB_params(0.0, amb0)
    assert (A, B) == (-0.5, 0.0)
    amb = make_ambiguity(1.0, -12.0)
    assert pt_AB_params(-9.0, amb)[1] != 0


def test_pt_U_matches_minus_G_up_to_constant():
    amb = make_ambiguity(1.0, -12.0)
    V1, n = -9.0, 1
    cond = pt_quantization(V1, amb, n)
    A, B = pt_AB_params(V1, amb, n=n)
    G = pt_G(V1, 0.0, cond.output_parameter, amb, 0.0)
    x = np.linspace(0.3, 4, 20)
    d = pt_U(A, B)(x) + G(x)
    assert_allclose(d, d[0], atol=1e-10)
    # at the quantized V3 the constant of -G is (A - n)^2
    assert d[0] == pytest.approx(A**2 - (A - n) ** 2, abs=1e-9)


# -------------------------------------------------------------- PT states

def test_pt_degree_zero_is_pure_prefactor(amb0):
    st0 = pt_eigenfunction(0.0, amb0, 0)
    assert st0.poly_value(np.array([1.3, 4.0])).tolist() == [1.0, 1.0]


def test_phi_is_sqrt_mass_times_psi():
    amb = make_ambiguity(1.0, -12.0)
    x = np.linspace(0.2, 5, 50)
    phi = pt_eigenfunction(-9.0, amb, 1, "phi")(x, normalize=False)
    psi = pt_eigenfunction(-9.0, amb, 1, "psi")(x, normalize=False)
    assert_allclose(phi, np.sqrt(1 / np.sinh(x)) * psi, rtol=1e-10)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_pt_symmetric_states_solve_the_equation(amb0, n):
    assert _pt_residual(0.0, amb0, n) <= 1e-6


def test_pt_printed_states_do_not_solve_the_equation(amb0):
    assert _pt_residual(0.0, amb0, 1, variant="printed") > 1e-2


@pytest.mark.parametrize("n", [0, 1])
def test_pt_bound_states(n):
    amb = make_ambiguity(1.0, -12.0)
    assert _pt_residual(-9.0, amb, n) <= 1e-10
    st_ = pt_eigenfunction(-9.0, amb, n)
    assert count_nodes(st_(X_PT)) == n


def test_pt_laurent_data():
    amb = make_ambiguity(0.3, -0.8)
    V1, V2, V3, eps = 0.2, 0.1, 0.7, 0.4
    G = pt_G(V1, V2, V3, amb, eps)
    c = laurent_coefficients(lambda z: -G(z), 0.0, [-2, -1], radius=0.5)
    k1, k2, k3 = -V1, amb.q + 0.25, eps - V2
    assert c[0] == pytest.approx(-(k1 + k2), abs=1e-12)
    assert c[1] == pytest.approx(-k3, abs=1e-12)


def test_laurent_exact_cases():
    assert laurent_coefficients(lambda z: 1 / z, 0.0, [-1])[0] == pytest.approx(1.0, abs=1e-14)
    c = laurent_coefficients(lambda z: 3 / z**2 + 5, 0.0, [-2, -1, 0])
    assert_allclose(c, [3, 0, 5], atol=1e-12)


# ----------------------------------------------------------- Morse family

def test_morse_residue_examples(amb0):
    C = morse_C(amb0)
    assert C == -1.0
    assert morse_residues(C, amb0, "+").value == 0.5 == morse_residues(C, amb0, "-").value
    assert {morse_residues(C + 1, amb0, s).value for s in "+-"} == {-0.5, 1.5}
    V0 = morse_quantization(amb0, 3.0, 1).output_parameter
    assert V0 == 3.0
    assert morse_residues(V0, amb0, "+").value == 2.5
    assert morse_residues(V0, amb0, "-").value == -1.5


def test_morse_infinity_expansion():
    B0, B1 = morse_infinity_expansion(-1.0, 0.0, 0.0)
    assert (B0, B1) == (-1.0, 0.0)
    B0, B1 = morse_infinity_expansion(-4.0, 1.0, 2.0)
    assert B0 == -2.0 and B1 == pytest.approx(1.5)
    assert abs(morse_infinity_expansion(-2.25, 3.0, 1.5)[0]) == pytest.approx(1.5)
    with pytest.raises(PositiveEnergyError):
        morse_infinity_expansion(0.5, 1.0, 1.0)


def test_morse_quantization(amb0):
    assert morse_quantization(amb0, 3.0, 2).output_parameter == 0.0  # A = n + 1: marginal
    with pytest.raises(UnboundError):
        morse_quantization(amb0, 2.0, 2)
    # V0 depends on A - n only through its square
    a = morse_quantization(amb0, 5.5, 2).output_parameter
    b = morse_quantization(amb0, 4.5, 1).output_parameter
    assert a == b


def test_morse_states(amb0):
    x = np.linspace(-12, 12, 10000)
    assert morse_eigenfunction(3.0, 1.0, 0).poly_value(np.array([0.3])) == 1.0
    best, scores = calibrate_morse_scale(3.0, 1.0, amb0)
    assert best == 2.0 and scores[2.0] < 1e-12 and scores[1.0] > 1e-3
    prof = MassProfile.exponential_decay()
    for n in range(3):
        cond = morse_quantization(amb0, 3.0, n)
        st_ = morse_eigenfunction(3.0, 1.0, n)
        assert count_nodes(st_(x)) == n
        veff = veff_function(PotentialSpec.morse(cond.output_parameter, 3.0, 1.0), prof, amb0)
        assert np.max(pdm_relative_residual(st_, prof, veff, cond.energy, x)) <= 1e-6


def test_morse_G_variants(amb0):
    g_c = morse_G(3.0, 3.0, 1.0, amb0, -1.0)
    g_p = morse_G(3.0, 3.0, 1.0, amb0, -1.0, "printed")
    assert g_p(0.4) - g_c(0.4) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        morse_G(3.0, 3.0, 1.0, amb0, -1.0, "other")
