"""Numba-compiled kernels: cyclic Jacobi eigensolver, batched negativity and
concurrence triples, and radial solves against the constant-z boundary arcs.

Signatures mirror ``_kernels_numpy``; the backend module picks one of the two.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"

_EPS_NEG = 1e-12          # eigenvalues above this magnitude count as negative
_JACOBI_TOL = 1e-13       # relative off-diagonal Frobenius threshold
_BISECT_ITERS = 80


# ---------------------------------------------------------------------------
# cyclic Jacobi for complex Hermitian matrices
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _jacobi_inplace(M, V, accumulate):
    n = M.shape[0]
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += abs(M[i, j]) ** 2
    scale = np.sqrt(scale)
    if scale < 1e-300:
        return
    for _ in range(100):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(M[p, q]) ** 2
        if np.sqrt(2.0 * off) <= _JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = M[p, q]
                m = abs(apq)
                if m < 1e-300:
                    continue
                phase = apq / m
                pc = np.conj(phase)
                tau = (M[q, q].real - M[p, p].real) / (2.0 * m)
                if tau != 0.0:
                    t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    xp = M[p, k]
                    xq = M[q, k]
                    M[p, k] = c * xp - s * phase * xq
                    M[q, k] = s * xp + c * phase * xq
                for k in range(n):
                    xp = M[k, p]
                    xq = M[k, q]
                    M[k, p] = c * xp - s * pc * xq
                    M[k, q] = s * xp + c * pc * xq
                if accumulate:
                    for k in range(n):
                        vp = V[k, p]
                        vq = V[k, q]
                        V[k, p] = c * vp - s * pc * vq
                        V[k, q] = s * vp + c * pc * vq


@njit(cache=True, nogil=True)
def eigvalsh(a):
    """Ascending eigenvalues of a complex Hermitian matrix."""
    M = a.astype(np.complex128).copy()
    V = np.empty((0, 0), np.complex128)
    _jacobi_inplace(M, V, False)
    n = M.shape[0]
    w = np.empty(n)
    for i in range(n):
        w[i] = M[i, i].real
    return np.sort(w)


@njit(cache=True, nogil=True)
def eigh(a):
    """Ascending eigenvalues and eigenvector columns of a Hermitian matrix."""
    M = a.astype(np.complex128).copy()
    n = M.shape[0]
    V = np.eye(n, dtype=np.complex128)
    _jacobi_inplace(M, V, True)
    w = np.empty(n)
    for i in range(n):
        w[i] = M[i, i].real
    order = np.argsort(w)
    ws = np.empty(n)
    Vs = np.empty((n, n), np.complex128)
    for i in range(n):
        ws[i] = w[order[i]]
        for k in range(n):
            Vs[k, i] = V[k, order[i]]
    return ws, Vs


# ---------------------------------------------------------------------------
# batched triples
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def batch_triples(amps, d):
    """Squared negativity triples (N2_AC, N2_AB, N2_ABC) for (m, d**3) states."""
    m = amps.shape[0]
    dd = d * d
    out = np.empty((m, 3))
    ptAC = np.empty((dd, dd), np.complex128)
    ptAB = np.empty((dd, dd), np.complex128)
    rA = np.empty((d, d), np.complex128)
    for idx in range(m):
        psi = amps[idx]
        for i in range(d):
            for k in range(d):
                for i2 in range(d):
                    for k2 in range(d):
                        vac = 0j
                        for j in range(d):
                            vac += psi[(i2 * d + j) * d + k] * np.conj(psi[(i * d + j) * d + k2])
                        ptAC[i * d + k, i2 * d + k2] = vac
        for i in range(d):
            for j in range(d):
                for i2 in range(d):
                    for j2 in range(d):
                        vab = 0j
                        for k in range(d):
                            vab += psi[(i2 * d + j) * d + k] * np.conj(psi[(i * d + j2) * d + k])
                        ptAB[i * d + j, i2 * d + j2] = vab
        wac = eigvalsh(ptAC)
        wab = eigvalsh(ptAB)
        nac = 0.0
        nab = 0.0
        for t in range(dd):
            if wac[t] < -_EPS_NEG:
                nac -= 2.0 * wac[t]
            if wab[t] < -_EPS_NEG:
                nab -= 2.0 * wab[t]
        for i in range(d):
            for i2 in range(d):
                v = 0j
                for r in range(dd):
                    v += psi[i * dd + r] * np.conj(psi[i2 * dd + r])
                rA[i, i2] = v
        p = eigvalsh(rA)
        root_sum = 0.0
        for i in range(d):
            if p[i] > 0.0:
                root_sum += np.sqrt(p[i])
        nabc = root_sum * root_sum - 1.0
        if nabc < 0.0:
            nabc = 0.0
        out[idx, 0] = nac * nac
        out[idx, 1] = nab * nab
        out[idx, 2] = nabc * nabc
    return out


@njit(cache=True, nogil=True)
def _wootters4(rho):
    # mu_i are the singular values of sqrt(rho~) sqrt(rho) with
    # sqrt(rho~) = Y sqrt(rho)* Y; singular values (via the Hermitian
    # dilation) avoid the precision loss of square-rooting near-zero
    # eigenvalues.
    w, V = eigh(rho)
    n = 4
    S = np.zeros((n, n), np.complex128)
    for i in range(n):
        wi = w[i] if w[i] > 0.0 else 0.0
        r = np.sqrt(wi)
        for a in range(n):
            for b in range(n):
                S[a, b] += r * V[a, i] * np.conj(V[b, i])
    St = np.empty((n, n), np.complex128)
    sgn = (-1.0, 1.0, 1.0, -1.0)
    perm = (3, 2, 1, 0)
    for a in range(n):
        for b in range(n):
            St[a, b] = sgn[a] * sgn[b] * np.conj(S[perm[a], perm[b]])
    K = St @ S
    H = np.zeros((2 * n, 2 * n), np.complex128)
    for a in range(n):
        for b in range(n):
            H[a, n + b] = K[a, b]
            H[n + a, b] = np.conj(K[b, a])
    sig = eigvalsh(H)          # (-sigma, ..., +sigma) symmetric spectrum
    tot = 0.0
    for i in range(n):
        v = sig[n + i]
        if v > 0.0:
            tot += v
    top = sig[2 * n - 1] if sig[2 * n - 1] > 0.0 else 0.0
    c = 2.0 * top - tot
    return c if c > 0.0 else 0.0


@njit(cache=True, nogil=True)
def batch_concurrence(amps):
    """Squared concurrence triples (C2_AC, C2_AB, C2_ABC) for (m, 8) qubit states."""
    m = amps.shape[0]
    out = np.empty((m, 3))
    rAC = np.empty((4, 4), np.complex128)
    rAB = np.empty((4, 4), np.complex128)
    for idx in range(m):
        psi = amps[idx]
        for i in range(2):
            for k in range(2):
                for i2 in range(2):
                    for k2 in range(2):
                        v = 0j
                        for j in range(2):
                            v += psi[(i * 2 + j) * 2 + k] * np.conj(psi[(i2 * 2 + j) * 2 + k2])
                        rAC[i * 2 + k, i2 * 2 + k2] = v
        for i in range(2):
            for j in range(2):
                for i2 in range(2):
                    for j2 in range(2):
                        v = 0j
                        for k in range(2):
                            v += psi[(i * 2 + j) * 2 + k] * np.conj(psi[(i2 * 2 + j2) * 2 + k])
                        rAB[i * 2 + j, i2 * 2 + j2] = v
        cac = _wootters4(rAC)
        cab = _wootters4(rAB)
        a00 = 0j
        a01 = 0j
        a11 = 0j
        for r in range(4):
            a00 += psi[r] * np.conj(psi[r])
            a11 += psi[4 + r] * np.conj(psi[4 + r])
            a01 += psi[r] * np.conj(psi[4 + r])
        det = (a00 * a11 - a01 * np.conj(a01)).real
        if det < 0.0:
            det = 0.0
        out[idx, 0] = cac * cac
        out[idx, 1] = cab * cab
        out[idx, 2] = 4.0 * det
    return out


# ---------------------------------------------------------------------------
# constant-z boundary arcs of the c = 0 family (local dimension D)
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _zfun(s, D):
    d2 = 1.0 - (D - 1) * s * s
    if d2 < 0.0:
        d2 = 0.0
    return 2.0 * (D - 1) * s * np.sqrt(d2) + (D - 1) * (D - 2) * s * s


@njit(cache=True, nogil=True)
def _s_peak(D):
    # dz/ds changes sign exactly once on (0, s_max)
    lo = 0.0
    hi = 1.0 / np.sqrt(D - 1.0)
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


@njit(cache=True, nogil=True)
def _solve_s(z, D, s_lo, s_hi, increasing):
    lo = s_lo
    hi = s_hi
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        zm = _zfun(mid, D)
        up = zm < z
        if (up and increasing) or ((not up) and (not increasing)):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@njit(cache=True, nogil=True)
def _arc_xy(u, s, D):
    """Squared pairwise negativities at fraction u along the arc a^2 = u s^2."""
    s2 = s * s
    a2 = u * s2
    b2 = s2 - a2
    d2 = 1.0 - (D - 1) * s2
    if d2 < 0.0:
        d2 = 0.0
    x = (D - 1) * (np.sqrt(b2 * b2 + 4.0 * a2 * d2) - b2) + (D - 1) * (D - 2) * a2
    y = (D - 1) * (np.sqrt(a2 * a2 + 4.0 * b2 * d2) - a2) + (D - 1) * (D - 2) * b2
    return x * x, y * y


@njit(cache=True, nogil=True)
def _arc_radius(theta, s, D):
    if s <= 1e-300:
        return 0.0
    lo = 0.0   # angle pi/2
    hi = 1.0   # angle 0
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        X, Y = _arc_xy(mid, s, D)
        ang = np.arctan2(Y, X)
        if ang > theta:
            lo = mid
        else:
            hi = mid
    X, Y = _arc_xy(0.5 * (lo + hi), s, D)
    return np.hypot(X, Y)


@njit(cache=True, nogil=True)
def radial_excess(x2, y2, z2, D):
    """Signed radial distance past the outer arc, and distance to nearest arc.

    Queries are points (x2, y2) in the squared-negativity plane at height z2.
    Returns (excess, near): excess > 0 means the point lies radially beyond
    the bounding (d > 1/sqrt(D)) arc; near is the distance to the closest of
    the two constant-z arcs along the query ray.
    """
    m = x2.shape[0]
    excess = np.empty(m)
    near = np.empty(m)
    s_pk = _s_peak(D)
    z_pk = _zfun(s_pk, D)
    s_mx = 1.0 / np.sqrt(D - 1.0)
    z_mx = _zfun(s_mx, D)   # = D - 2
    for i in range(m):
        z = np.sqrt(z2[i]) if z2[i] > 0.0 else 0.0
        if z > z_pk:
            z = z_pk
        rq = np.hypot(x2[i], y2[i])
        theta = np.arctan2(y2[i], x2[i]) if rq > 0.0 else np.pi / 4.0
        s_out = _solve_s(z, D, 0.0, s_pk, True)
        r_out = _arc_radius(theta, s_out, D)
        excess[i] = rq - r_out
        nd = abs(rq - r_out)
        if z >= z_mx:
            s_in = _solve_s(z, D, s_pk, s_mx, False)
            r_in = _arc_radius(theta, s_in, D)
            nd2 = abs(rq - r_in)
            if nd2 < nd:
                nd = nd2
        near[i] = nd
    return excess, near
