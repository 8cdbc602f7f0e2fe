import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ence.detect import chen_test, ncc_measure, pcc_test, pt_detect
from ence.matcore import partial_transpose, tensor
from ence.states import (
    OnewccSpec,
    bell_state,
    onewcc_state,
    pcc_state,
    random_density,
    random_onewcc_spec,
    random_pcc_spec,
    random_pure,
    random_unitary,
    rho_p,
)

from oracles import jacobi_eigvalsh, partial_transpose_loops

seeds = st.integers(0, 2**63)
small_dims = st.tuples(st.integers(1, 4), st.integers(1, 4))


@given(seeds, small_dims)
@settings(max_examples=40, deadline=None)
def test_pt_detect_silent_on_pcc(seed, dims):
    r = pt_detect(pcc_state(random_pcc_spec(*dims, seed)), dims)
    assert not r.detected
    assert r.deviation <= 1e-9


def test_pt_detect_bell():
    r = pt_detect(bell_state(), (2, 2))
    assert r.detected
    assert np.allclose(r.spectrum_before, [1, 0, 0, 0], atol=1e-12)
    assert np.allclose(r.spectrum_after, [0.5, 0.5, 0.5, -0.5], atol=1e-12)
    assert r.deviation == pytest.approx(0.5, abs=1e-12)
    assert r.method == "PT" and r.side == "B"


@pytest.mark.parametrize("p", [0.01, 0.1, 0.5, 1.0])
def test_pt_detect_rho_p(p):
    # deviation p/2 frozen from Jacobi-oracle spectra and brute-force matching
    r = pt_detect(rho_p(p), (2, 2))
    assert r.detected
    assert r.deviation == pytest.approx(p / 2, abs=1e-12)


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3)]))
@settings(max_examples=30, deadline=None)
def test_pt_deviation_same_on_both_sides(seed, dims):
    rho = random_density(dims[0] * dims[1], seed=seed)
    a = pt_detect(rho, dims, "A").deviation
    b = pt_detect(rho, dims, "B").deviation
    assert abs(a - b) <= 1e-8


def test_pt_detect_report_invariant():
    for rho in (bell_state(), rho_p(0.2), np.eye(4) / 4):
        r = pt_detect(rho, (2, 2), tol=1e-8)
        assert r.detected == (r.deviation > 1e-8)
        assert len(r.spectrum_before) == len(r.spectrum_after) == 4


def test_pt_detect_dimension_mismatch():
    with pytest.raises(ValueError):
        pt_detect(np.eye(6) / 6, (2, 2))


# commutation test ----------------------------------------------------------


def test_chen_diagonal_passes():
    rho = np.diag([0.1, 0.2, 0.3, 0.4])
    assert chen_test(rho, (2, 2), "A").passes
    assert chen_test(rho, (2, 2), "B").passes


def test_chen_noncommuting_onewcc_passes_on_classical_side():
    spec = random_onewcc_spec(3, 3, 12)
    rho = onewcc_state(spec)
    r = chen_test(rho, (3, 3), "B")
    assert r.passes and r.pairs_tested == 9 * 8 // 2
    assert r.cons == "computational"


def test_chen_bell_fails():
    # blocks <0|rho|1> = |0><1|/2 and <1|rho|0> = |1><0|/2; their commutator is diag(1,-1)/4
    r = chen_test(bell_state(), (2, 2), "B")
    assert not r.passes
    assert r.max_commutator_norm == pytest.approx(0.25)
    assert r.max_commutator_norm > 0.1
    assert not chen_test(bell_state(), (2, 2), "A").passes


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 2)]))
@settings(max_examples=30, deadline=None)
def test_chen_verdict_independent_of_cons_on_other_side(seed, dims):
    rng = np.random.default_rng(seed)
    d_a, d_b = dims
    v = np.kron(random_unitary(d_a, rng), np.eye(d_b))
    for rho in (onewcc_state(random_onewcc_spec(d_a, d_b, rng)), random_density(d_a * d_b, seed=rng)):
        before = chen_test(rho, dims, "B", tol=1e-7).passes
        after = chen_test(v @ rho @ v.conj().T, dims, "B", tol=1e-7).passes
        assert before == after


def test_chen_dimension_cap():
    rho = np.eye(18) / 18
    with pytest.raises(ValueError, match="max_dim"):
        chen_test(rho, (9, 2), "B")
    assert chen_test(rho, (9, 2), "B", max_dim=9).passes


def test_pcc_test_examples():
    assert pcc_test(pcc_state(random_pcc_spec(3, 2, 4)), (3, 2))
    plus = np.array([[0.5, 0.5], [0.5, 0.5]])
    rho = onewcc_state(OnewccSpec([0.5 * plus, 0.5 * np.diag([1.0, 0.0])], np.eye(2)))
    assert not pcc_test(rho, (2, 2))
    assert not pcc_test(bell_state(), (2, 2))


@given(seeds, small_dims)
@settings(max_examples=30, deadline=None)
def test_pcc_states_pass_both_sides(seed, dims):
    assert pcc_test(pcc_state(random_pcc_spec(*dims, seed)), dims)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_linear_detection_misses_onewcc(seed):
    rho = onewcc_state(random_onewcc_spec(2, 3, seed))
    assert not pt_detect(rho, (2, 3), "B").detected
    assert not pcc_test(rho, (2, 3))


def test_random_pure_states_fail_chen():
    for seed in range(20):
        psi = random_pure(4, seed)
        assert np.linalg.eigvalsh(partial_transpose(psi, (2, 2)))[0] < -1e-3
        assert not chen_test(psi, (2, 2), "B").passes


# measure --------------------------------------------------------------------


@given(seeds, small_dims)
@settings(max_examples=30, deadline=None)
def test_measure_zero_on_pcc(seed, dims):
    assert ncc_measure(pcc_state(random_pcc_spec(*dims, seed)), dims) <= 1e-9


def test_measure_bell():
    # 1/2 (|1 - 1/2| + |0 - 1/2| + |0 - 1/2| + |0 + 1/2|) from the Jacobi oracle spectra
    before = jacobi_eigvalsh(bell_state())
    after = jacobi_eigvalsh(partial_transpose_loops(bell_state(), 2, 2, "B"))
    assert 0.5 * np.sum(np.abs(before - after)) == pytest.approx(1.0, abs=1e-13)
    assert ncc_measure(bell_state(), (2, 2)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("p", [0.01, 0.1, 0.5, 1.0])
def test_measure_rho_p(p):
    assert ncc_measure(rho_p(p), (2, 2)) == pytest.approx(p, abs=1e-12)


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3)]))
@settings(max_examples=30, deadline=None)
def test_measure_local_unitary_invariance(seed, dims):
    rng = np.random.default_rng(seed)
    rho = random_density(dims[0] * dims[1], seed=rng)
    u = tensor(random_unitary(dims[0], rng), random_unitary(dims[1], rng))
    for side in "AB":
        m0 = ncc_measure(rho, dims, side)
        m1 = ncc_measure(u @ rho @ u.conj().T, dims, side)
        assert abs(m0 - m1) <= 1e-8
        assert m0 >= 0
