import numpy as np
import pytest

from negmono import measures, states
from negmono.errors import DimensionMismatch, NotDensityMatrix

from oracles import (negativity_oracle, pair_rho, triple_oracle,
                     triple_oracle_batch, wootters_oracle)

rng = np.random.default_rng(77)

BELL = np.array([1, 0, 0, 1], complex) / np.sqrt(2)
RHO_BELL = np.outer(BELL, BELL.conj())
W_PAIR = (np.sqrt(5) - 1) / 3


def random_two_qubit_mixed():
    # pure 4-qubit state traced down to the first two qubits
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    t = (m / np.linalg.norm(m))
    return t @ t.conj().T


def test_negativity_bell_and_product():
    assert abs(measures.negativity(RHO_BELL, (2, 2)) - 1.0) < 1e-12
    prod = np.diag([0.3, 0.7]).astype(complex)
    rho = np.kron(prod, np.diag([0.4, 0.6]).astype(complex))
    assert measures.negativity(rho, (2, 2)) == 0.0


def test_negativity_w_marginal():
    w = states.acin_state(states.AcinParams(*([1 / np.sqrt(3)] * 2), 0, 1 / np.sqrt(3), 0))
    r_ac = measures.pair_marginal(w, "AC")
    n = measures.negativity(r_ac, (2, 2))
    assert abs(n - W_PAIR) < 1e-10
    assert abs(n - negativity_oracle(r_ac, 2, 2)) < 1e-12


def test_negativity_rejects_bad_input():
    with pytest.raises(NotDensityMatrix):
        measures.negativity(np.eye(4, dtype=complex), (2, 2))      # trace 4
    with pytest.raises(NotDensityMatrix):
        measures.negativity(np.diag([1.5, -0.5, 0, 0]).astype(complex), (2, 2))
    with pytest.raises(DimensionMismatch):
        measures.negativity(np.eye(4, dtype=complex) / 4, (2, 3))


def test_negativity_bound():
    for d in (2, 3):
        m = rng.standard_normal((d * d, d * d)) + 1j * rng.standard_normal((d * d, d * d))
        rho = m @ m.conj().T
        rho /= np.trace(rho)
        n = measures.negativity(rho, (d, d))
        assert 0.0 <= n <= d - 1 + 1e-12


def test_triple_examples():
    ghz = measures.negativity_triple(states.named_state("GHZ"))
    assert np.max(np.abs(ghz.as_array() - [0, 0, 1])) < 1e-10
    prod = measures.negativity_triple(states.named_state("product"))
    assert np.max(np.abs(prod.as_array())) < 1e-12
    w = states.acin_state(states.AcinParams.normalized(1, 1, 0, 1, 0))
    t = measures.negativity_triple(w)
    assert abs(t.n_ac_sq - W_PAIR**2) < 1e-10
    assert abs(t.n_ab_sq - W_PAIR**2) < 1e-10
    assert abs(t.n_abc_sq - 8 / 9) < 1e-10


def test_triple_matches_oracle_on_haar():
    amps = states.haar_amplitude_batch((2, 2, 2), 50, 3)
    oracle = triple_oracle_batch(amps, 2)
    for i in range(50):
        t = measures.negativity_triple(states.PureState((2, 2, 2), amps[i]))
        assert np.max(np.abs(t.as_array() - oracle[i])) < 1e-10


def test_n_abc_closed_form():
    s2 = 1 / np.sqrt(2)
    assert abs(measures.n_abc_squared_closed_form(states.AcinParams(s2, 0, 0, s2, 0)) - 1) < 1e-12
    assert measures.n_abc_squared_closed_form(states.AcinParams(0.6, 0, 0.8, 0, 0)) == 0.0
    for _ in range(50):
        v = np.abs(rng.standard_normal(4))
        wmag = rng.random() * 0.6
        v = v / np.linalg.norm(v) * np.sqrt(1 - wmag**2)
        p = states.AcinParams(*v, wmag * np.exp(1j * rng.uniform(-np.pi, np.pi)))
        t = measures.negativity_triple(states.acin_state(p))
        assert abs(measures.n_abc_squared_closed_form(p) - t.n_abc_sq) < 1e-10


def test_concurrence_pure_cut():
    assert abs(measures.concurrence_pure_cut(states.named_state("GHZ")) - 1) < 1e-12
    assert measures.concurrence_pure_cut(states.named_state("product")) == 0.0
    amps = states.haar_amplitude_batch((2, 2, 2), 1000, 8)
    trips = triple_oracle_batch(amps, 2)
    worst = 0.0
    for i in range(1000):
        c = measures.concurrence_pure_cut(states.PureState((2, 2, 2), amps[i]))
        worst = max(worst, abs(c - np.sqrt(trips[i, 2])))
    assert worst < 1e-10


def test_concurrence_pure_cut_needs_qubit_a():
    psi = states.haar_random_pure((3, 2, 2), 1)
    with pytest.raises(DimensionMismatch):
        measures.concurrence_pure_cut(psi)


def test_wootters_examples():
    assert abs(measures.wootters_concurrence(RHO_BELL) - 1) < 1e-10
    assert measures.wootters_concurrence(np.eye(4, dtype=complex) / 4) == 0.0
    w_ab = measures.pair_marginal(states.named_state("W"), "AB")
    assert abs(measures.wootters_concurrence(w_ab) - 2 / 3) < 1e-10


def test_wootters_matches_direct_formula():
    worst = 0.0
    for _ in range(200):
        rho = random_two_qubit_mixed()
        worst = max(worst, abs(measures.wootters_concurrence(rho, check=False)
                               - wootters_oracle(rho)))
    assert worst < 1e-9


def test_wootters_dominates_negativity():
    worst = -np.inf
    for _ in range(2000):
        rho = random_two_qubit_mixed()
        worst = max(worst, measures.negativity(rho, (2, 2), check=False)
                    - measures.wootters_concurrence(rho, check=False))
    assert worst < 1e-10


def test_pure_two_qubit_negativity_equals_concurrence():
    worst = 0.0
    for _ in range(500):
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v /= np.linalg.norm(v)
        rho = np.outer(v, v.conj())
        worst = max(worst, abs(measures.negativity(rho, (2, 2), check=False)
                               - measures.wootters_concurrence(rho, check=False)))
    assert worst < 1e-10


def test_concurrence_triple_examples():
    w = measures.concurrence_triple(states.named_state("W"))
    assert np.max(np.abs(w.as_array() - [4 / 9, 4 / 9, 8 / 9])) < 1e-10
    assert abs(measures.monogamy_residual(w)) < 1e-10
    g = measures.concurrence_triple(states.named_state("GHZ"))
    assert np.max(np.abs(g.as_array() - [0, 0, 1])) < 1e-10
    assert abs(measures.monogamy_residual(g) - 1) < 1e-10


def test_monogamy_residual_values():
    assert measures.monogamy_residual(measures.NegativityTriple(0, 0, 1)) == 1.0
    w = states.acin_state(states.AcinParams.normalized(1, 1, 0, 1, 0))
    r = measures.monogamy_residual(measures.negativity_triple(w))
    assert abs(r - 4 * (np.sqrt(5) - 1) / 9) < 1e-10
    assert r > 0.5


def test_marginal_spectra_examples():
    ms = measures.marginal_spectra(states.named_state("GHZ"))
    for lam in (ms.lambda_a, ms.lambda_b, ms.lambda_c):
        assert np.max(np.abs(lam - 0.5)) < 1e-12
    ms = measures.marginal_spectra(states.named_state("product"))
    for lam in (ms.lambda_a, ms.lambda_b, ms.lambda_c):
        assert np.max(np.abs(lam - [0, 1])) < 1e-12


def test_marginal_spectra_qudit_degeneracy():
    q = states.QuditFamilyParams.normalized(4, 0.45, 0.3, 0.0, 0.75)
    ms = measures.marginal_spectra(states.qudit_family_state(q))
    expect_a = np.sort(np.concatenate([np.full(3, q.a**2 + q.b**2), [q.d**2]]))
    expect_b = np.sort(np.concatenate([np.full(3, q.b**2), [3 * q.a**2 + q.d**2]]))
    expect_c = np.sort(np.concatenate([np.full(3, q.a**2), [3 * q.b**2 + q.d**2]]))
    assert np.max(np.abs(ms.lambda_a - expect_a)) < 1e-10
    assert np.max(np.abs(ms.lambda_b - expect_b)) < 1e-10
    assert np.max(np.abs(ms.lambda_c - expect_c)) < 1e-10


def test_monogamy_residuals_on_haar_batch():
    amps = states.haar_amplitude_batch((2, 2, 2), 10_000, 14)
    from negmono.backend import get_kernels
    k = get_kernels()
    neg = k.batch_triples(amps, 2)
    conc = k.batch_concurrence(amps)
    assert (neg[:, 2] - neg[:, 1] - neg[:, 0]).min() >= -1e-10
    assert (conc[:, 2] - conc[:, 1] - conc[:, 0]).min() >= -1e-10


def test_local_unitary_invariance():
    worst = 0.0
    for i in range(30):
        psi = states.haar_random_pure((2, 2, 2), 1000 + i)
        t0 = measures.negativity_triple(psi)
        us = states.haar_local_unitaries((2, 2, 2), rng)
        rot = np.einsum("ax,by,cz,xyz->abc", *us, psi.tensor()).ravel()
        t1 = measures.negativity_triple(states.PureState((2, 2, 2), rot))
        worst = max(worst, np.max(np.abs(t0.as_array() - t1.as_array())))
    assert worst < 1e-10


def test_pair_marginal_against_oracle():
    amps = states.haar_random_pure((3, 3, 3), 4).amplitudes
    psi = states.PureState((3, 3, 3), amps)
    for pair in ("AC", "AB"):
        assert np.max(np.abs(measures.pair_marginal(psi, pair)
                             - pair_rho(amps, 3, pair))) < 1e-14
