"""Pure-numpy fallback kernels.

Same contract as ``_kernels_numba``; batched work uses stacked LAPACK calls
and vectorized bisection instead of compiled loops.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"

_EPS_NEG = 1e-12
_BISECT_ITERS = 80

_SY_SIGN = np.array([-1.0, 1.0, 1.0, -1.0])
_SY_PERM = np.array([3, 2, 1, 0])


def eigvalsh(a):
    """Ascending eigenvalues of a complex Hermitian matrix."""
    return np.linalg.eigvalsh(np.asarray(a, dtype=np.complex128))


def eigh(a):
    """Ascending eigenvalues and eigenvector columns of a Hermitian matrix."""
    w, v = np.linalg.eigh(np.asarray(a, dtype=np.complex128))
    return w, v


def batch_triples(amps, d):
    """Squared negativity triples (N2_AC, N2_AB, N2_ABC) for (m, d**3) states."""
    m = amps.shape[0]
    t = np.ascontiguousarray(amps).reshape(m, d, d, d)
    tc = t.conj()
    pt_ac = np.einsum("najk,nbjl->nbkal", t, tc).reshape(m, d * d, d * d)
    pt_ab = np.einsum("najk,nbck->nbjac", t, tc).reshape(m, d * d, d * d)
    wac = np.linalg.eigvalsh(pt_ac)
    wab = np.linalg.eigvalsh(pt_ab)
    nac = -2.0 * np.where(wac < -_EPS_NEG, wac, 0.0).sum(axis=1)
    nab = -2.0 * np.where(wab < -_EPS_NEG, wab, 0.0).sum(axis=1)
    rho_a = np.einsum("najk,nbjk->nab", t, tc)
    p = np.clip(np.linalg.eigvalsh(rho_a), 0.0, None)
    nabc = np.clip(np.sqrt(p).sum(axis=1) ** 2 - 1.0, 0.0, None)
    return np.stack([nac * nac, nab * nab, nabc * nabc], axis=1)


def _wootters_stack(rho):
    # mu_i are the singular values of sqrt(rho~) sqrt(rho) with
    # sqrt(rho~) = Y sqrt(rho)* Y; singular values avoid the precision loss
    # of taking square roots of near-zero eigenvalues.
    w, v = np.linalg.eigh(rho)
    s = (v * np.sqrt(np.clip(w, 0.0, None))[:, None, :]) @ v.conj().transpose(0, 2, 1)
    sign = _SY_SIGN[:, None] * _SY_SIGN[None, :]
    st = sign * s[:, _SY_PERM][:, :, _SY_PERM].conj()
    mu = np.linalg.svd(st @ s, compute_uv=False)
    return np.clip(2.0 * mu[:, 0] - mu.sum(axis=1), 0.0, None)


def batch_concurrence(amps):
    """Squared concurrence triples (C2_AC, C2_AB, C2_ABC) for (m, 8) qubit states."""
    m = amps.shape[0]
    t = np.ascontiguousarray(amps).reshape(m, 2, 2, 2)
    tc = t.conj()
    r_ac = np.einsum("nijk,nljm->niklm", t, tc).reshape(m, 4, 4)
    r_ab = np.einsum("nijk,nlmk->nijlm", t, tc).reshape(m, 4, 4)
    cac = _wootters_stack(r_ac)
    cab = _wootters_stack(r_ab)
    rho_a = np.einsum("nijk,nljk->nil", t, tc)
    det = np.clip((rho_a[:, 0, 0] * rho_a[:, 1, 1]
                   - rho_a[:, 0, 1] * rho_a[:, 1, 0]).real, 0.0, None)
    return np.stack([cac * cac, cab * cab, 4.0 * det], axis=1)


# ---------------------------------------------------------------------------
# constant-z boundary arcs of the c = 0 family (local dimension D)
# ---------------------------------------------------------------------------

def _zfun(s, D):
    d2 = np.clip(1.0 - (D - 1) * s * s, 0.0, None)
    return 2.0 * (D - 1) * s * np.sqrt(d2) + (D - 1) * (D - 2) * s * s


def _s_peak(D):
    lo, hi = 0.0, 1.0 / np.sqrt(D - 1.0)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        d2 = 1.0 - (D - 1) * mid * mid
        if d2 <= 0.0:
            hi = mid
            continue
        g = (d2 - (D - 1) * mid * mid) / np.sqrt(d2) + (D - 2) * mid
        if g > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _solve_s_vec(z, D, s_lo, s_hi, increasing):
    lo = np.full_like(z, s_lo)
    hi = np.full_like(z, s_hi)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        up = _zfun(mid, D) < z
        if not increasing:
            up = ~up
        lo = np.where(up, mid, lo)
        hi = np.where(up, hi, mid)
    return 0.5 * (lo + hi)


def _arc_xy_vec(u, s, D):
    s2 = s * s
    a2 = u * s2
    b2 = s2 - a2
    d2 = np.clip(1.0 - (D - 1) * s2, 0.0, None)
    x = (D - 1) * (np.sqrt(b2 * b2 + 4.0 * a2 * d2) - b2) + (D - 1) * (D - 2) * a2
    y = (D - 1) * (np.sqrt(a2 * a2 + 4.0 * b2 * d2) - a2) + (D - 1) * (D - 2) * b2
    return x * x, y * y


def _arc_radius_vec(theta, s, D):
    lo = np.zeros_like(theta)
    hi = np.ones_like(theta)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        X, Y = _arc_xy_vec(mid, s, D)
        above = np.arctan2(Y, X) > theta
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    X, Y = _arc_xy_vec(0.5 * (lo + hi), s, D)
    return np.where(s > 1e-300, np.hypot(X, Y), 0.0)


def radial_excess(x2, y2, z2, D):
    """Signed radial distance past the outer arc, and distance to nearest arc.

    See the numba twin for the geometry; this version runs all queries through
    vectorized bisection simultaneously.
    """
    x2 = np.asarray(x2, dtype=np.float64)
    y2 = np.asarray(y2, dtype=np.float64)
    z2 = np.asarray(z2, dtype=np.float64)
    s_pk = _s_peak(D)
    z_pk = _zfun(np.float64(s_pk), D)
    s_mx = 1.0 / np.sqrt(D - 1.0)
    z_mx = _zfun(np.float64(s_mx), D)
    z = np.minimum(np.sqrt(np.clip(z2, 0.0, None)), z_pk)
    rq = np.hypot(x2, y2)
    theta = np.where(rq > 0.0, np.arctan2(y2, x2), np.pi / 4.0)
    s_out = _solve_s_vec(z, D, 0.0, s_pk, True)
    r_out = _arc_radius_vec(theta, s_out, D)
    excess = rq - r_out
    near = np.abs(excess)
    has_inner = z >= z_mx
    if np.any(has_inner):
        s_in = _solve_s_vec(z, D, s_pk, s_mx, False)
        r_in = _arc_radius_vec(theta, s_in, D)
        near = np.where(has_inner, np.minimum(near, np.abs(rq - r_in)), near)
    return excess, near
