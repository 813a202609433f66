"""Entanglement measures: negativity, concurrence, monogamy residuals and
single-party marginal spectra."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from negmono.backend import get_kernels
from negmono.errors import DimensionMismatch, NotDensityMatrix
from negmono.linalg import hermitian_eigenvalues, partial_transpose
from negmono.states import AcinParams, PureState

NEG_EIG_CUT = -1e-12      # eigenvalues above this are treated as zero
PSD_TOL = 1e-10

_K = get_kernels()


@dataclass(frozen=True)
class NegativityTriple:
    """Squared negativities (N2_A|C, N2_A|B, N2_A|BC)."""

    n_ac_sq: float
    n_ab_sq: float
    n_abc_sq: float

    def as_array(self) -> np.ndarray:
        return np.array([self.n_ac_sq, self.n_ab_sq, self.n_abc_sq])

    def unsquared(self) -> tuple[float, float, float]:
        a = np.sqrt(np.clip(self.as_array(), 0.0, None))
        return float(a[0]), float(a[1]), float(a[2])


@dataclass(frozen=True)
class ConcurrenceTriple:
    """Squared concurrences (C2_A|C, C2_A|B, C2_A|BC)."""

    c_ac_sq: float
    c_ab_sq: float
    c_abc_sq: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c_ac_sq, self.c_ab_sq, self.c_abc_sq])


@dataclass(frozen=True)
class MarginalSpectra:
    """Ascending single-party eigenvalues (lambda_A, lambda_B, lambda_C)."""

    lambda_a: np.ndarray
    lambda_b: np.ndarray
    lambda_c: np.ndarray

    def __post_init__(self):
        for name in ("lambda_a", "lambda_b", "lambda_c"):
            v = np.asarray(getattr(self, name), dtype=np.float64)
            object.__setattr__(self, name, v)
            if abs(v.sum() - 1.0) > 1e-10:
                raise NotDensityMatrix(f"{name} sums to {v.sum()}, not 1")
            if v.min() < -1e-12 or v.max() > 1 + 1e-12:
                raise NotDensityMatrix(f"{name} outside [0, 1]")


def _validate_density(rho: np.ndarray) -> None:
    if abs(np.trace(rho).real - 1.0) > PSD_TOL or abs(np.trace(rho).imag) > PSD_TOL:
        raise NotDensityMatrix(f"trace {np.trace(rho)} != 1")
    if np.max(np.abs(rho - rho.conj().T)) > PSD_TOL:
        raise NotDensityMatrix("matrix is not Hermitian")
    w = _K.eigvalsh(rho)
    if w[0] < -PSD_TOL:
        raise NotDensityMatrix(f"negative eigenvalue {w[0]} below -{PSD_TOL}")


def pair_marginal(psi: PureState, pair: str) -> np.ndarray:
    """Two-party reduced density matrix of a three-party pure state."""
    t = psi.tensor()
    if pair == "AC":
        dA, _, dC = psi.dims
        return np.einsum("ijk,ljm->iklm", t, t.conj()).reshape(dA * dC, dA * dC)
    if pair == "AB":
        dA, dB, _ = psi.dims
        return np.einsum("ijk,lmk->ijlm", t, t.conj()).reshape(dA * dB, dA * dB)
    if pair == "BC":
        _, dB, dC = psi.dims
        return np.einsum("ijk,ilm->jklm", t, t.conj()).reshape(dB * dC, dB * dC)
    raise DimensionMismatch(f"unknown pair {pair!r}")


def single_marginal(psi: PureState, party: str) -> np.ndarray:
    """One-party reduced density matrix of a three-party pure state."""
    t = psi.tensor()
    if party == "A":
        return np.einsum("ijk,ljk->il", t, t.conj())
    if party == "B":
        return np.einsum("ijk,ilk->jl", t, t.conj())
    if party == "C":
        return np.einsum("ijk,ijl->kl", t, t.conj())
    raise DimensionMismatch(f"unknown party {party!r}")


def negativity(rho, dims: tuple[int, int], *, check: bool = True) -> float:
    """Twice the absolute sum of negative partial-transpose eigenvalues.

    ``rho`` must be a density matrix on the bipartite space ``dims``; for a
    D x D split the result lies in [0, D - 1].
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape[0] != dims[0] * dims[1]:
        raise DimensionMismatch(f"matrix dim {rho.shape[0]} != {dims[0]}*{dims[1]}")
    if check:
        _validate_density(rho)
    w = hermitian_eigenvalues(partial_transpose(rho, dims), check=False)
    return float(-2.0 * w[w < NEG_EIG_CUT].sum())


def negativity_abc(psi: PureState) -> float:
    """Negativity of the pure A|BC cut from the Schmidt spectrum of rho_A."""
    p = np.clip(hermitian_eigenvalues(single_marginal(psi, "A"), check=False), 0.0, None)
    return float(max(np.sqrt(p).sum() ** 2 - 1.0, 0.0))


def negativity_triple(psi: PureState) -> NegativityTriple:
    """Squared negativities of the A|C, A|B and A|BC cuts of a pure state."""
    dA, dB, dC = psi.dims
    n_ac = negativity(pair_marginal(psi, "AC"), (dA, dC), check=False)
    n_ab = negativity(pair_marginal(psi, "AB"), (dA, dB), check=False)
    n_abc = negativity_abc(psi)
    return NegativityTriple(n_ac**2, n_ab**2, n_abc**2)


def n_abc_squared_closed_form(p: AcinParams) -> float:
    """4 (a^2 + b^2 + c^2) d^2, the squared negativity of the A|BC cut."""
    return 4.0 * (p.a**2 + p.b**2 + p.c**2) * p.d**2


def concurrence_pure_cut(psi: PureState) -> float:
    """2 sqrt(det rho_A) for the A|BC cut; requires a qubit A factor.

    For pure three-qubit states this equals the A|BC negativity.
    """
    if psi.dims[0] != 2:
        raise DimensionMismatch("pure-cut concurrence needs d_A = 2")
    rho_a = single_marginal(psi, "A")
    det = (rho_a[0, 0] * rho_a[1, 1] - rho_a[0, 1] * rho_a[1, 0]).real
    return float(2.0 * np.sqrt(max(det, 0.0)))


_SY_SIGN = np.array([-1.0, 1.0, 1.0, -1.0])
_SY_PERM = np.array([3, 2, 1, 0])


def spin_flipped(rho: np.ndarray) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y) in the computational basis."""
    sign = _SY_SIGN[:, None] * _SY_SIGN[None, :]
    return sign * rho[_SY_PERM][:, _SY_PERM].conj()


def wootters_concurrence(rho, *, check: bool = True) -> float:
    """Mixed-state two-qubit concurrence max(0, mu1 - mu2 - mu3 - mu4).

    The mu are the descending square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), computed as the singular values of
    sqrt(rho~) sqrt(rho) to stay accurate when eigenvalues sit near zero.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (4, 4):
        raise DimensionMismatch("Wootters concurrence needs a 4x4 density matrix")
    if check:
        _validate_density(rho)
    w, v = _K.eigh(rho)
    s = (v * np.sqrt(np.clip(w, 0.0, None))[None, :]) @ v.conj().T
    k = spin_flipped(s) @ s
    dilation = np.zeros((8, 8), dtype=np.complex128)
    dilation[:4, 4:] = k
    dilation[4:, :4] = k.conj().T
    sig = _K.eigvalsh(dilation)
    mu = np.clip(sig[4:], 0.0, None)
    return float(max(0.0, 2.0 * mu[-1] - mu.sum()))


def concurrence_triple(psi: PureState) -> ConcurrenceTriple:
    """Squared concurrences of the A|C, A|B and A|BC cuts of a 3-qubit state."""
    if psi.dims != (2, 2, 2):
        raise DimensionMismatch("concurrence triple is defined for three qubits")
    c_ac = wootters_concurrence(pair_marginal(psi, "AC"), check=False)
    c_ab = wootters_concurrence(pair_marginal(psi, "AB"), check=False)
    c_abc = concurrence_pure_cut(psi)
    return ConcurrenceTriple(c_ac**2, c_ab**2, c_abc**2)


def monogamy_residual(t) -> float:
    """z^2 - x^2 - y^2 for a squared triple (>= 0 for valid pure-state triples)."""
    if isinstance(t, NegativityTriple):
        return float(t.n_abc_sq - t.n_ab_sq - t.n_ac_sq)
    if isinstance(t, ConcurrenceTriple):
        return float(t.c_abc_sq - t.c_ab_sq - t.c_ac_sq)
    x, y, z = t
    return float(z - x - y)


def marginal_spectra(psi: PureState) -> MarginalSpectra:
    """Ascending eigenvalues of each single-party marginal."""
    spectra = []
    for party in "ABC":
        w = hermitian_eigenvalues(single_marginal(psi, party), check=False)
        spectra.append(np.clip(w, 0.0, None))
    return MarginalSpectra(*spectra)
