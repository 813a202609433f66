"""Constructors for three-party pure states.

Amplitude ordering is lexicographic |ijk> with the A factor most significant:
index = (i * d_B + j) * d_C + k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from negmono.errors import NotNormalized, UnknownName

NORM_TOL = 1e-12


@dataclass(frozen=True)
class PureState:
    """Normalized state vector over three tensor factors."""

    dims: tuple[int, int, int]
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        object.__setattr__(self, "amplitudes", amps)
        dA, dB, dC = self.dims
        if amps.size != dA * dB * dC:
            raise NotNormalized(
                f"{amps.size} amplitudes for dims {self.dims} (need {dA * dB * dC})"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"norm {norm!r} deviates from 1 beyond {NORM_TOL}")

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)


@dataclass(frozen=True)
class AcinParams:
    """Coefficients (a, b, c, d, omega) of the canonical 3-qubit form
    d|000> + omega|100> + a|101> + b|110> + c|111>."""

    a: float
    b: float
    c: float
    d: float
    omega: complex = 0.0

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            if getattr(self, name) < 0:
                raise NotNormalized(f"coefficient {name} must be >= 0")
        total = self.a**2 + self.b**2 + self.c**2 + self.d**2 + abs(self.omega) ** 2
        if abs(total - 1.0) > NORM_TOL:
            raise NotNormalized(f"coefficient norm {total} != 1")

    @classmethod
    def normalized(cls, a, b, c, d, omega=0.0) -> "AcinParams":
        n = np.sqrt(a * a + b * b + c * c + d * d + abs(omega) ** 2)
        return cls(a / n, b / n, c / n, d / n, omega / n)

    @classmethod
    def boundary(cls, a, b) -> "AcinParams":
        """The c = omega = 0 member with d fixed by normalization."""
        rem = 1.0 - a * a - b * b
        if rem < -NORM_TOL:
            raise NotNormalized(f"a^2 + b^2 = {a*a + b*b} exceeds 1")
        return cls(a, b, 0.0, np.sqrt(max(rem, 0.0)), 0.0)


@dataclass(frozen=True)
class QuditFamilyParams:
    """Coefficients of d|000> + sum_j (a|j0j> + b|jj0> + c|jjj>) on D-level parties."""

    D: int
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if self.D < 2:
            raise NotNormalized("local dimension D must be >= 2")
        for name in ("a", "b", "c", "d"):
            if getattr(self, name) < 0:
                raise NotNormalized(f"coefficient {name} must be >= 0")
        total = self.d**2 + (self.D - 1) * (self.a**2 + self.b**2 + self.c**2)
        if abs(total - 1.0) > NORM_TOL:
            raise NotNormalized(f"coefficient norm {total} != 1")

    @classmethod
    def normalized(cls, D, a, b, c, d) -> "QuditFamilyParams":
        n = np.sqrt(d * d + (D - 1) * (a * a + b * b + c * c))
        return cls(D, a / n, b / n, c / n, d / n)


@dataclass(frozen=True)
class SwapFamilyParams:
    """Swap-rotated maximally entangled family: amplitude d of |000> and angle theta."""

    D: int
    d: float
    theta: float

    def __post_init__(self):
        if self.D < 2:
            raise NotNormalized("local dimension D must be >= 2")
        if not 0.0 <= self.d <= 1.0:
            raise NotNormalized("d must lie in [0, 1]")

    @property
    def b(self) -> float:
        return np.sqrt((1.0 - self.d**2) / (self.D - 1))


def acin_state(p: AcinParams) -> PureState:
    """d|000> + omega|100> + a|101> + b|110> + c|111> on qubit factors."""
    v = np.zeros(8, dtype=np.complex128)
    v[0] = p.d
    v[4] = p.omega
    v[5] = p.a
    v[6] = p.b
    v[7] = p.c
    return PureState((2, 2, 2), v)


def qudit_family_state(p: QuditFamilyParams) -> PureState:
    """d|000> + sum_{j>=1} (a|j0j> + b|jj0> + c|jjj>) on D-level factors."""
    D = p.D
    v = np.zeros(D**3, dtype=np.complex128)
    v[0] = p.d
    for j in range(1, D):
        v[(j * D + 0) * D + j] += p.a
        v[(j * D + j) * D + 0] += p.b
        v[(j * D + j) * D + j] += p.c
    return PureState((D, D, D), v)


def swap_family_state(p: SwapFamilyParams) -> PureState:
    """d e^{i theta}|000> + b sum_j (cos(theta)|jj0> + i sin(theta)|j0j>)."""
    D = p.D
    b = p.b
    v = np.zeros(D**3, dtype=np.complex128)
    v[0] = p.d * np.exp(1j * p.theta)
    for j in range(1, D):
        v[(j * D + j) * D + 0] += b * np.cos(p.theta)
        v[(j * D + 0) * D + j] += 1j * b * np.sin(p.theta)
    return PureState((D, D, D), v)


def haar_random_pure(dims: tuple[int, int, int], seed: int) -> PureState:
    """Haar-random pure state: normalized standard complex Gaussian amplitudes.

    Deterministic for a fixed seed.
    """
    dA, dB, dC = dims
    n = dA * dB * dC
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(dims, v / np.linalg.norm(v))


def haar_amplitude_batch(dims: tuple[int, int, int], count: int, seed: int) -> np.ndarray:
    """(count, prod(dims)) normalized Haar amplitude rows from one seeded stream."""
    n = int(np.prod(dims))
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return m / np.linalg.norm(m, axis=1, keepdims=True)


def haar_local_unitaries(dims: tuple[int, int, int], rng) -> list[np.ndarray]:
    """One Haar-random unitary per factor (QR of a complex Ginibre matrix)."""
    out = []
    for d in dims:
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        q, r = np.linalg.qr(g)
        q = q * (np.diag(r) / np.abs(np.diag(r)))
        out.append(q)
    return out


def named_state(name: str) -> PureState:
    """The GHZ, equal-coefficient W, or |000> product state on three qubits."""
    v = np.zeros(8, dtype=np.complex128)
    if name == "GHZ":
        v[0] = v[7] = 1 / np.sqrt(2)
    elif name == "W":
        v[1] = v[2] = v[4] = 1 / np.sqrt(3)
    elif name == "product":
        v[0] = 1.0
    else:
        raise UnknownName(f"unknown named state {name!r} (GHZ, W, product)")
    return PureState((2, 2, 2), v)
