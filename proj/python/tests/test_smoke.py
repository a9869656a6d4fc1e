import math

import pytest

import cvqa


def test_pauli_roundtrip():
    p = cvqa.PauliString.from_text("+XIZY")
    assert p.to_text() == "+XIZY"
    assert p.num_qubits == 4
    assert p.weight() == 3
    assert p.is_hermitian()


def test_pauli_algebra():
    x = cvqa.PauliString.from_text("+X")
    z = cvqa.PauliString.from_text("+Z")
    assert not x.commutes(z)
    assert (x * z).to_text() == "-iY"


def test_family_sizes():
    nn = cvqa.enumerate_family(cvqa.PauliFamily.weight2_nn, 5)
    assert len(nn) == 36
    full = cvqa.enumerate_family(cvqa.PauliFamily.weight2_all, 5)
    assert len(full) == 90


def test_engines_agree():
    circuit = cvqa.build_brickwork(3, 2)
    assert circuit.num_params == cvqa.brickwork_param_count(3, 2)
    obs = cvqa.Observable.single(cvqa.PauliString.from_text("+ZZI"))

    cp = cvqa.sample_clifford_point(circuit.num_params, 7, 0)
    exact = cvqa.eval_clifford(circuit, obs, cp)
    dense = cvqa.eval_statevector(circuit, obs, cp.to_param_point())
    assert exact == pytest.approx(dense, abs=1e-12)
    assert exact in (-1.0, 0.0, 1.0)

    point = cvqa.sample_uniform_point(circuit.num_params, 7, 0)
    prop = cvqa.eval_pauliprop(circuit, obs, point)
    dense = cvqa.eval_statevector(circuit, obs, point)
    assert prop == pytest.approx(dense, abs=1e-10)


def test_fourier_constant_is_clifford_mean():
    circuit = cvqa.random_circuit(3, 5, 99)
    obs = cvqa.PauliString.from_text("+ZII")
    expansion = cvqa.fourier_expand(circuit, obs)
    mean = cvqa.mean_over_clifford(circuit, cvqa.Observable.single(obs))
    assert expansion.constant_term() == pytest.approx(mean, abs=1e-12)


def test_gradient_matches_finite_difference():
    circuit = cvqa.build_brickwork(3, 1)
    obs = cvqa.Observable.single(cvqa.PauliString.from_text("+IZZ"))
    point = cvqa.sample_uniform_point(circuit.num_params, 3, 1)
    k = 2
    g = cvqa.gradient_shift(circuit, obs, point, k)
    h = 1e-5
    # Property access copies the vector, so build the lists first.
    up = list(point.angles)
    down = list(point.angles)
    up[k] += h
    down[k] -= h
    plus = cvqa.ParamPoint()
    minus = cvqa.ParamPoint()
    plus.angles = up
    minus.angles = down
    fd = (cvqa.eval_statevector(circuit, obs, plus)
          - cvqa.eval_statevector(circuit, obs, minus)) / (2 * h)
    assert g == pytest.approx(fd, abs=1e-6)


def test_greedy_search_and_lm_check():
    circuit = cvqa.build_brickwork(4, 4)
    family = cvqa.enumerate_family(cvqa.PauliFamily.weight2_nn, 4)
    budget = cvqa.SearchBudget()
    budget.points_per_stage = cvqa.SearchBudget.default_points(4, len(family))
    budget.seed = 11
    cp = cvqa.greedy_siloed_search(circuit, family, budget)
    assert len(cp.optimized) >= 1
    assert len(cp.free_indices) + len(cp.fixed_indices) == circuit.num_params
    remainder = cvqa.independent_remainder(family, cp)
    assert len(remainder) < len(family)

    point = cvqa.CliffordPoint()
    point.quarters = list(cp.base_quarters)
    obs = cvqa.Observable.single(cvqa.PauliString.from_text(cp.optimized[0]))
    assert cvqa.eval_clifford(circuit, obs, point) == -1.0


def test_null_directions_sorted():
    circuit = cvqa.build_brickwork(3, 2)
    point = cvqa.sample_clifford_point(circuit.num_params, 5, 0)
    nulls = cvqa.null_directions(circuit, point,
                                 cvqa.PauliString.from_text("+ZZI"))
    assert nulls == sorted(nulls)
    assert all(0 <= k < circuit.num_params for k in nulls)


def test_term_cap_exception():
    circuit = cvqa.build_brickwork(4, 4)
    with pytest.raises(cvqa.TermCapExceeded):
        cvqa.fourier_expand(circuit, cvqa.PauliString.from_text("+IZZI"),
                            term_cap=4)


def test_circuit_text_roundtrip():
    circuit = cvqa.random_circuit(4, 6, 42)
    text = circuit.to_text()
    back = cvqa.ParamCircuit.from_text(text)
    assert back.to_text() == text
