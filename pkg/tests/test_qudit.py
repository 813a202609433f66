import numpy as np
import pytest

from negmono import boundary, measures, qudit, states

from oracles import (abc_negativity_oracle, pair_rho, pt_first,
                     random_qudit_params, triple_oracle)

rng = np.random.default_rng(555)


def brute_pt(p, pair):
    amps = states.qudit_family_state(p).amplitudes
    return pt_first(pair_rho(amps, p.D, pair), p.D, p.D)


def test_block_counts_d2():
    p = random_qudit_params(rng, 2)
    dec = qudit.pt_block_decompose(p, "AC")
    assert dec.offdiag_count == 0
    assert dec.triple_count == 1
    assert dec.eigenvalues().size == 4


def test_block_dimension_identity():
    for D in (2, 3, 4, 5, 6):
        p = random_qudit_params(rng, D)
        dec = qudit.pt_block_decompose(p, "AC")
        total = 1 + 2 * dec.offdiag_count + 3 * dec.triple_count
        assert total == D * D


def test_block_spectra_match_brute_force():
    worst = 0.0
    for D in (2, 3, 4, 5):
        for _ in range(20):
            p = random_qudit_params(rng, D)
            for pair in ("AC", "AB"):
                dec = qudit.pt_block_decompose(p, pair)
                full = np.linalg.eigvalsh(brute_pt(p, pair))
                worst = max(worst, np.max(np.abs(dec.eigenvalues() - full)))
    assert worst < 1e-10


def test_block_negativity_c0_matches_closed_root():
    for D in (2, 3, 5):
        p = random_qudit_params(rng, D, c_zero=True)
        dec = qudit.pt_block_decompose(p, "AC")
        expect = (D - 1) * boundary.closed_form_root(p.a, p.b, p.d) \
            + (D - 1) * (D - 2) * p.a**2
        assert abs(dec.negativity() - expect) < 1e-10


def test_qudit_triple_reduces_to_qubit():
    p = random_qudit_params(rng, 2)
    acin = states.AcinParams(p.a, p.b, p.c, p.d, 0.0)
    t2 = measures.negativity_triple(states.acin_state(acin))
    n = qudit.qudit_negativity_triple(p)
    assert np.max(np.abs(np.array(n) ** 2 - t2.as_array())) < 1e-10


def test_qudit_triple_b_c_zero():
    D = 4
    d = 0.6
    a = np.sqrt((1 - d * d) / (D - 1))
    p = states.QuditFamilyParams(D, a, 0.0, 0.0, d)
    n = qudit.qudit_negativity_triple(p)
    assert n[1] == 0.0                       # A and B factorize


def test_qudit_triple_matches_full_oracle():
    for D in (3, 4):
        for _ in range(10):
            p = random_qudit_params(rng, D)
            n = qudit.qudit_negativity_triple(p)
            t = triple_oracle(states.qudit_family_state(p).amplitudes, D)
            assert np.max(np.abs(np.array(n) ** 2 - t)) < 1e-9


def test_n_abc_closed_form():
    p = random_qudit_params(rng, 2)
    s = np.sqrt(p.a**2 + p.b**2 + p.c**2)
    assert abs(qudit.n_abc_closed_form(p) - 2 * p.d * s) < 1e-12
    p0 = states.QuditFamilyParams(3, 0.0, 0.0, 0.0, 1.0)
    assert qudit.n_abc_closed_form(p0) == 0.0
    worst = 0.0
    for _ in range(20):
        p = random_qudit_params(rng, 4)
        amps = states.qudit_family_state(p).amplitudes
        worst = max(worst, abs(qudit.n_abc_closed_form(p)
                               - abc_negativity_oracle(amps, 4)))
    assert worst < 1e-9


def test_determinants_qubit_case():
    p = random_qudit_params(rng, 2)
    det_ac, det_ab = qudit.pt_determinants(p)
    assert abs(det_ac - (-(p.a**2) * p.d**4 * (p.a**2 + p.c**2))) < 1e-14
    assert abs(det_ab - (-(p.b**2) * p.d**4 * (p.b**2 + p.c**2))) < 1e-14


def test_determinants_zero_when_a_vanishes():
    D = 3
    d = 0.7
    bc = np.abs(rng.standard_normal(2))
    bc = bc / np.linalg.norm(bc) * np.sqrt((1 - d * d) / (D - 1))
    p = states.QuditFamilyParams(D, 0.0, bc[0], bc[1], d)
    assert qudit.pt_determinants(p)[0] == 0.0


def test_determinants_match_brute_force_and_blocks():
    worst = 0.0
    for D in (2, 3, 4, 5):
        for _ in range(15):
            p = random_qudit_params(rng, D)
            cf = qudit.pt_determinants(p)
            for idx, pair in enumerate(("AC", "AB")):
                det_full = np.linalg.det(brute_pt(p, pair)).real
                det_blocks = qudit.pt_block_decompose(p, pair).determinant()
                rel = abs(det_full - cf[idx]) / max(abs(det_full), 1e-300)
                worst = max(worst, rel)
                assert abs(det_blocks - cf[idx]) / max(abs(det_full), 1e-300) < 1e-8
    assert worst < 1e-8


def test_higuchi_ghz_and_product():
    res = qudit.higuchi_residual(measures.marginal_spectra(states.named_state("GHZ")))
    assert np.max(np.abs(np.array(res) - 0.5)) < 1e-12
    res = qudit.higuchi_residual(measures.marginal_spectra(states.named_state("product")))
    assert np.max(np.abs(np.array(res))) < 1e-12


def test_higuchi_saturation_split():
    for D in (2, 3, 4, 6):
        for _ in range(10):
            ab = np.abs(rng.standard_normal(2)) + 0.1
            d_hi = rng.uniform(1 / np.sqrt(D) * 1.02, 0.98)
            ab_hi = ab / np.linalg.norm(ab) * np.sqrt((1 - d_hi**2) / (D - 1))
            p_hi = states.QuditFamilyParams(D, *ab_hi, 0.0, d_hi)
            res = qudit.higuchi_residual(
                measures.marginal_spectra(states.qudit_family_state(p_hi)))
            assert abs(res[0]) < 1e-10       # saturated above the threshold
            d_lo = rng.uniform(0.05, 1 / np.sqrt(D) * 0.98)
            ab_lo = ab / np.linalg.norm(ab) * np.sqrt((1 - d_lo**2) / (D - 1))
            p_lo = states.QuditFamilyParams(D, *ab_lo, 0.0, d_lo)
            res_lo = qudit.higuchi_residual(
                measures.marginal_spectra(states.qudit_family_state(p_lo)))
            assert res_lo[0] > 0.0


def test_higuchi_nonnegative_on_haar():
    for D, seeds in ((2, range(40)), (3, range(30)), (4, range(20))):
        for s in seeds:
            psi = states.haar_random_pure((D, D, D), 9000 + s)
            res = qudit.higuchi_residual(measures.marginal_spectra(psi))
            assert min(res) >= -1e-10


def test_asymptotic_scaling():
    r1d = []
    r2d = []
    for D in (8, 16, 32, 64):
        r1, r2 = qudit.asymptotic_check(D, 1.0, 0.7)
        r1d.append(r1 * D)
        r2d.append(r2 * D)
    assert max(r1d) / min(r1d) < 2
    assert max(r2d) / min(r2d) < 2


def test_asymptotic_trivial_cases():
    _, r2 = qudit.asymptotic_check(16, 1.0, 0.0)
    assert r2 < 1e-10                        # bipartite line is exactly linear
    p = qudit.asymptotic_family(16, 0.0, 0.0)
    assert qudit.qudit_negativity_triple(p) == (0.0, 0.0, 0.0)


def test_swap_scan_structure():
    rows = qudit.swap_surface_scan(3, 9)
    assert len(rows) == 81
    for d, theta, t, fold in rows:
        if theta == 0.0:
            assert t.n_ac_sq < 1e-12
        if d == 1.0:
            assert np.max(t.as_array()) < 1e-12
        assert fold == (d < 1 / np.sqrt(3))


def test_swap_scan_matches_state_oracle():
    for d, theta in ((0.5, 0.4), (0.8, 1.2), (0.3, 0.9)):
        p = states.SwapFamilyParams(3, d, theta)
        t_closed = qudit.swap_triple(p).as_array()
        t_oracle = triple_oracle(states.swap_family_state(p).amplitudes, 3)
        assert np.max(np.abs(t_closed - t_oracle)) < 1e-10


def test_swap_fold_dominated():
    # matched N_A|BC: the d < 1/sqrt(D) branch sits strictly inside
    z = 1.6
    for d_test, folded in ((0.75, False), (0.45, True)):
        s2 = (1 - d_test**2) / 2
        a = b = np.sqrt(s2 / 2)
        p = states.QuditFamilyParams(3, a, b, 0.0, d_test)
        n = qudit.qudit_negativity_triple(p)
        ex = boundary.radial_excess([n[0] ** 2], [n[1] ** 2], [n[2] ** 2], D=3)[0]
        if folded:
            assert ex < -1e-6
        else:
            assert abs(ex) < 1e-7


def test_qutrit_haar_never_outside_conjectured_envelope():
    amps = states.haar_amplitude_batch((3, 3, 3), 2000, 77)
    from negmono.backend import get_kernels
    trips = get_kernels().batch_triples(amps, 3)
    cls = boundary.classify_batch(trips[:, 0], trips[:, 1], trips[:, 2], D=3)
    outside = (cls == "outside").sum()
    assert outside == 0
