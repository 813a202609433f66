"""Independent numpy oracles used by the tests.

Everything here goes through numpy.linalg directly, bypassing the package's
kernels, so closed forms and block structures are checked against a second
code path.
"""

import numpy as np


def pt_first(rho, dA, dB):
    return rho.reshape(dA, dB, dA, dB).transpose(2, 1, 0, 3).reshape(dA * dB, dA * dB)


def negativity_oracle(rho, dA, dB):
    ev = np.linalg.eigvalsh(pt_first(rho, dA, dB))
    return float(-2.0 * ev[ev < -1e-12].sum())


def pair_rho(amps, d, pair):
    t = np.asarray(amps).reshape(d, d, d)
    if pair == "AC":
        return np.einsum("ijk,ljm->iklm", t, t.conj()).reshape(d * d, d * d)
    return np.einsum("ijk,lmk->ijlm", t, t.conj()).reshape(d * d, d * d)


def triple_oracle_batch(amps, d):
    """Squared (N2_AC, N2_AB, N2_ABC) for a stack of pure-state rows."""
    m = amps.shape[0]
    t = amps.reshape(m, d, d, d)
    tc = t.conj()
    r_ac = np.einsum("nijk,nljm->niklm", t, tc).reshape(m, d * d, d * d)
    r_ab = np.einsum("nijk,nlmk->nijlm", t, tc).reshape(m, d * d, d * d)

    def pt(r):
        return r.reshape(m, d, d, d, d).transpose(0, 3, 2, 1, 4).reshape(m, d * d, d * d)

    wac = np.linalg.eigvalsh(pt(r_ac))
    wab = np.linalg.eigvalsh(pt(r_ab))
    nac = -2.0 * np.where(wac < -1e-12, wac, 0.0).sum(axis=1)
    nab = -2.0 * np.where(wab < -1e-12, wab, 0.0).sum(axis=1)
    rho_a = np.einsum("nijk,nljk->nil", t, tc)
    p = np.clip(np.linalg.eigvalsh(rho_a), 0.0, None)
    nabc = np.clip(np.sqrt(p).sum(axis=1) ** 2 - 1.0, 0.0, None)
    return np.stack([nac**2, nab**2, nabc**2], axis=1)


def triple_oracle(amps, d):
    return triple_oracle_batch(np.asarray(amps)[None, :], d)[0]


def abc_negativity_oracle(amps, d):
    """A|BC negativity from the full D^3 x D^3 partial transpose."""
    amps = np.asarray(amps)
    rho = np.outer(amps, amps.conj())
    pt = rho.reshape(d, d * d, d, d * d).transpose(2, 1, 0, 3).reshape(d**3, d**3)
    ev = np.linalg.eigvalsh(pt)
    return float(-2.0 * ev[ev < -1e-12].sum())


_SY = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(_SY, _SY)


def wootters_oracle(rho):
    """Concurrence straight from eigvals(rho rho~), the textbook route."""
    ev = np.linalg.eigvals(rho @ _YY @ rho.conj() @ _YY)
    mu = np.sort(np.sqrt(np.abs(ev.real)))[::-1]
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def random_acin(rng, max_omega=0.7, complex_omega=True):
    """Normalized Acin parameters drawn uniformly-ish over the simplex."""
    from negmono.states import AcinParams

    v = np.abs(rng.standard_normal(4))
    wmag = rng.random() * max_omega
    v = v / np.linalg.norm(v) * np.sqrt(1 - wmag**2)
    arg = rng.uniform(-np.pi, np.pi) if complex_omega else float(rng.integers(2)) * np.pi
    return AcinParams(*v, wmag * np.exp(1j * arg))


def random_qudit_params(rng, D, c_zero=False, d_range=(0.05, 0.98)):
    from negmono.states import QuditFamilyParams

    raw = np.abs(rng.standard_normal(3))
    if c_zero:
        raw[2] = 0.0
    d = rng.uniform(*d_range)
    abc = raw / np.linalg.norm(raw) * np.sqrt((1 - d * d) / (D - 1))
    return QuditFamilyParams(D, abc[0], abc[1], abc[2], d)
