import numpy as np
import pytest

from negmono import boundary, measures, states
from negmono.errors import NotNormalizable, Unreachable

from oracles import negativity_oracle, pair_rho, random_acin, triple_oracle

rng = np.random.default_rng(4242)

S3 = 1 / np.sqrt(3)
W_PAIR = (np.sqrt(5) - 1) / 3


def oracle_nac(p):
    amps = states.acin_state(p).amplitudes
    return negativity_oracle(pair_rho(amps, 2, "AC"), 2, 2)


def test_quartic_vanishes_at_negativity():
    worst = 0.0
    for _ in range(1000):
        p = random_acin(rng)
        worst = max(worst, abs(boundary.quartic_eval(p, oracle_nac(p))))
    assert worst < 1e-9


def test_quartic_equals_determinant_form():
    worst = 0.0
    for _ in range(300):
        p = random_acin(rng)
        amps = states.acin_state(p).amplitudes
        pt = pair_rho(amps, 2, "AC").reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)
        for _ in range(3):
            x = rng.random()
            det = np.linalg.det(2 * pt + x * np.eye(4)).real
            worst = max(worst, abs(det - boundary.quartic_eval(p, x)))
    assert worst < 1e-9


def test_quartic_trivial_zeros():
    p = states.AcinParams.normalized(0, 0.5, 0.4, 0.6, 0.21)
    assert boundary.quartic_eval(p, 0.0) == 0.0          # a = 0, x = 0
    # real omega: even in the phase
    p_plus = states.AcinParams.normalized(0.4, 0.3, 0.2, 0.6, 0.3 * np.exp(0.7j))
    p_minus = states.AcinParams.normalized(0.4, 0.3, 0.2, 0.6, 0.3 * np.exp(-0.7j))
    for x in (0.1, 0.5, 0.9):
        assert abs(boundary.quartic_eval(p_plus, x)
                   - boundary.quartic_eval(p_minus, x)) < 1e-14


def test_stationarity_trivial_zeros():
    p = states.AcinParams.normalized(0.5, 0.4, 0.3, 0.6, 0.2)
    assert boundary.stationarity_residuals(p, 0.0)[0] == 0.0
    p0 = states.AcinParams.normalized(0.5, 0.4, 0, 0.6, 0)
    r1, r2 = boundary.stationarity_residuals(p0, oracle_nac(p0))
    assert r1 == 0.0 and r2 == 0.0


def test_stationarity_residuals_are_quartic_derivatives():
    # independent oracle: central differences of det(2 rho^TA + x I) built
    # from raw (unnormalized) amplitude vectors
    def det_form(a, b, c, d, w, x):
        v = np.zeros(8, complex)
        v[0], v[4], v[5], v[6], v[7] = d, w, a, b, c
        t = v.reshape(2, 2, 2)
        rho = np.einsum("ijk,ljm->iklm", t, t.conj()).reshape(4, 4)
        pt = rho.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)
        return np.linalg.det(2 * pt + x * np.eye(4)).real

    h = 1e-6
    for _ in range(20):
        p = random_acin(rng, complex_omega=False)
        w0 = p.omega.real
        x = rng.random()
        fd_w = (det_form(p.a, p.b, p.c, p.d, w0 + h, x)
                - det_form(p.a, p.b, p.c, p.d, w0 - h, x)) / (2 * h)
        fd_c = (det_form(p.a, p.b, p.c + h, p.d, w0, x)
                - det_form(p.a, p.b, p.c - h, p.d, w0, x)) / (2 * h)
        r1, r2 = boundary.stationarity_residuals(p, x)
        assert abs(fd_w / (-4) - r1) < 1e-6
        assert abs(fd_c / (-4) - r2) < 1e-6


def test_stationarity_requires_real_omega():
    p = states.AcinParams.normalized(0.5, 0.4, 0.3, 0.6, 0.2j)
    with pytest.raises(ValueError):
        boundary.stationarity_residuals(p, 0.3)


def test_negativity_stationary_in_omega_phase():
    # d(negativity)/d(arg omega) vanishes at real omega
    for _ in range(10):
        v = np.abs(rng.standard_normal(4))
        wmag = rng.random() * 0.5 + 0.1
        v = v / np.linalg.norm(v) * np.sqrt(1 - wmag**2)
        eps = 1e-5

        def nac_at(phase):
            p = states.AcinParams(*v, wmag * np.exp(1j * phase))
            return oracle_nac(p)

        deriv = (nac_at(eps) - nac_at(-eps)) / (2 * eps)
        assert abs(deriv) < 1e-8


def test_closed_form_root_examples():
    s2 = 1 / np.sqrt(2)
    assert abs(boundary.closed_form_root(s2, 0, s2) - 1.0) < 1e-12
    assert boundary.closed_form_root(0, 0.5, 0.6) == 0.0
    assert abs(boundary.closed_form_root(S3, S3, S3) - W_PAIR) < 1e-12


def test_closed_form_root_matches_oracle():
    worst = 0.0
    worst_b0 = 0.0
    for _ in range(1000):
        v = np.abs(rng.standard_normal(3))
        a, b, d = v / np.linalg.norm(v)
        p = states.AcinParams(a, b, 0.0, d, 0.0)
        worst = max(worst, abs(boundary.closed_form_root(a, b, d) - oracle_nac(p)))
        a2, d2 = v[:2] / np.hypot(v[0], v[1])
        p0 = states.AcinParams(a2, 0.0, 0.0, d2, 0.0)
        worst_b0 = max(worst_b0, abs(boundary.closed_form_root(a2, 0.0, d2) - 2 * a2 * d2))
    assert worst < 1e-10
    assert worst_b0 < 1e-12


def test_parametric_triple_examples():
    t = boundary.parametric_boundary_triple(S3, S3)
    assert abs(t.n_ac_sq - W_PAIR**2) < 1e-12
    assert abs(t.n_ab_sq - W_PAIR**2) < 1e-12
    assert abs(t.n_abc_sq - 8 / 9) < 1e-12
    s2 = 1 / np.sqrt(2)
    t = boundary.parametric_boundary_triple(s2, 0.0)
    assert np.max(np.abs(t.as_array() - [1, 0, 1])) < 1e-12
    t = boundary.parametric_boundary_triple(0.0, 0.0)
    assert np.max(np.abs(t.as_array())) == 0.0
    with pytest.raises(NotNormalizable):
        boundary.parametric_boundary_triple(0.9, 0.9)


def test_parametric_matches_eigenvalue_oracle():
    worst = 0.0
    for _ in range(300):
        while True:
            a, b = rng.random(2)
            if a * a + b * b < 1:
                break
        t = boundary.parametric_boundary_triple(a, b)
        d = np.sqrt(1 - a * a - b * b)
        amps = states.acin_state(states.AcinParams(a, b, 0.0, d, 0.0)).amplitudes
        worst = max(worst, np.max(np.abs(t.as_array() - triple_oracle(amps, 2))))
    assert worst < 1e-10


def test_implicit_on_parametric_points():
    worst = 0.0
    for _ in range(500):
        while True:
            a, b = rng.random(2)
            if a * a + b * b <= 1:
                break
        x, y, z = boundary.parametric_boundary_triple(a, b).unsquared()
        worst = max(worst, abs(boundary.implicit_surface_eval(x, y, z)))
    assert worst < 1e-8


def test_implicit_factorizations():
    assert boundary.implicit_surface_eval(0.0, 0.0, 0.0) == 0.0
    for y in (0.2, 0.5, 0.9):
        assert boundary.implicit_surface_eval(0.0, y, y) == 0.0
        # at x = 0 the polynomial collapses to z^2 (z^2 - y^2)^2
        for z in (0.3, 0.8):
            expect = z**2 * (z**2 - y**2) ** 2
            assert abs(boundary.implicit_surface_eval(0.0, y, z) - expect) < 1e-14


def test_boundary_curve_endpoints_and_monogamy():
    for z_sq in (0.1, 0.5, 8 / 9, 0.999):
        bc = boundary.boundary_curve(z_sq, n_points=301)
        for arc in (bc.outer, bc.inner):
            assert abs(arc[0][0]) < 1e-9 and abs(arc[0][1] - z_sq) < 1e-9
            assert abs(arc[-1][0] - z_sq) < 1e-9 and abs(arc[-1][1]) < 1e-9
        assert (bc.points.sum(axis=1) <= z_sq + 1e-10).all()


def test_boundary_curve_degenerate_slices():
    bc0 = boundary.boundary_curve(0.0)
    assert np.max(np.abs(bc0.points)) == 0.0
    bc1 = boundary.boundary_curve(1.0)
    assert np.max(np.abs(bc1.outer - bc1.inner)) < 1e-12   # branches coincide
    with pytest.raises(Unreachable):
        boundary.boundary_curve(1.5)
    with pytest.raises(Unreachable):
        boundary.boundary_curve(-0.1)


def test_boundary_curve_passes_w_point():
    bc = boundary.boundary_curve(8 / 9, n_points=513)
    mid = bc.inner[len(bc.inner) // 2]
    assert abs(mid[0] - W_PAIR**2) < 1e-9
    assert abs(mid[1] - W_PAIR**2) < 1e-9


def test_outer_arc_dominates_inner():
    for z_sq in (0.2, 0.5, 8 / 9):
        bc = boundary.boundary_curve(z_sq, n_points=201)
        ex_in = boundary.radial_excess(bc.inner[1:-1, 0], bc.inner[1:-1, 1],
                                       np.full(199, z_sq))
        assert ex_in.max() < 1e-9


def test_classify_examples():
    ghz = measures.negativity_triple(states.named_state("GHZ"))
    assert boundary.classify_triple(ghz) == "inside"
    w = boundary.parametric_boundary_triple(S3, S3)
    assert boundary.classify_triple(w) == "on_boundary"
    lin = measures.NegativityTriple(4 / 9, 4 / 9, 8 / 9)
    assert boundary.classify_triple(lin) == "outside"
    zero = measures.NegativityTriple(0.0, 0.0, 0.0)
    assert boundary.classify_triple(zero) == "on_boundary"


def test_classify_parametric_points_on_boundary():
    for _ in range(100):
        while True:
            a, b = rng.random(2)
            if 1e-4 < a * a + b * b < 1 - 1e-4:
                break
        t = boundary.parametric_boundary_triple(a, b)
        assert boundary.classify_triple(t) == "on_boundary", (a, b)


def test_haar_samples_never_outside():
    amps = states.haar_amplitude_batch((2, 2, 2), 5000, 21)
    from negmono.backend import get_kernels
    trips = get_kernels().batch_triples(amps, 2)
    cls = boundary.classify_batch(trips[:, 0], trips[:, 1], trips[:, 2])
    assert not (cls == "outside").any()


def test_tightness_over_linear_bound():
    # boundary points exist whose linear monogamy residual is far from zero
    t = boundary.parametric_boundary_triple(S3, S3)
    assert boundary.classify_triple(t) == "on_boundary"
    assert measures.monogamy_residual(t) > 0.5
