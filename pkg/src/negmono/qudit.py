"""The D-level generalization: block-diagonalized partial transposes,
closed-form negativities and determinants, marginal-eigenvalue checks, and
large-D asymptotics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from negmono.backend import get_kernels
from negmono.measures import MarginalSpectra, NegativityTriple
from negmono.states import QuditFamilyParams, SwapFamilyParams

_K = get_kernels()


@dataclass(frozen=True)
class PtBlockDecomposition:
    """Block structure of the partially transposed two-party marginal.

    One scalar block (d^2), (D-1)(D-2)/2 copies of a 2x2 block with
    off-diagonal ``offdiag`` (a^2 for the A|C pair, b^2 for A|B), and D-1
    copies of one 3x3 block.
    """

    D: int
    pair: str
    scalar_block: float
    offdiag: float
    offdiag_count: int
    triple_block: np.ndarray
    triple_count: int

    def eigenvalues(self) -> np.ndarray:
        """Full ascending spectrum of the D^2-dimensional partial transpose."""
        w3 = _K.eigvalsh(self.triple_block.astype(np.complex128))
        parts = [np.array([self.scalar_block])]
        parts.append(np.tile([-self.offdiag, self.offdiag], self.offdiag_count))
        parts.append(np.tile(w3, self.triple_count))
        return np.sort(np.concatenate(parts))

    def negativity(self) -> float:
        w = self.eigenvalues()
        return float(-2.0 * w[w < -1e-12].sum())

    def determinant(self) -> float:
        """Product of block determinants (equals the full-matrix determinant)."""
        det3 = float(np.linalg.det(self.triple_block))
        return float(self.scalar_block
                     * (-self.offdiag**2) ** self.offdiag_count
                     * det3**self.triple_count)


def pt_block_decompose(p: QuditFamilyParams, pair: str) -> PtBlockDecomposition:
    """Blocks of the A-transposed A|C (or A|B) marginal of the qudit family.

    The A|B decomposition is the A|C one with a and b interchanged.
    """
    if pair not in ("AC", "AB"):
        raise ValueError(f"pair must be 'AC' or 'AB', got {pair!r}")
    a, b = (p.a, p.b) if pair == "AC" else (p.b, p.a)
    c, d, D = p.c, p.d, p.D
    blk = np.array([
        [0.0, a * d, 0.0],
        [a * d, b * b, b * c],
        [0.0, b * c, a * a + c * c],
    ])
    return PtBlockDecomposition(
        D=D,
        pair=pair,
        scalar_block=d * d,
        offdiag=a * a,
        offdiag_count=(D - 1) * (D - 2) // 2,
        triple_block=blk,
        triple_count=D - 1,
    )


def qudit_negativity_triple(p: QuditFamilyParams) -> tuple[float, float, float]:
    """Unsquared (N_A|C, N_A|B, N_A|BC) from the block structure and the
    Schmidt spectrum of the A marginal."""
    n_ac = pt_block_decompose(p, "AC").negativity()
    n_ab = pt_block_decompose(p, "AB").negativity()
    # A-marginal Schmidt values: d^2 once, a^2+b^2+c^2 with multiplicity D-1
    s2 = p.a**2 + p.b**2 + p.c**2
    schmidt = np.concatenate([[p.d**2], np.full(p.D - 1, s2)])
    n_abc = float(np.sqrt(schmidt).sum() ** 2 - 1.0)
    return n_ac, n_ab, max(n_abc, 0.0)


def n_abc_closed_form(p: QuditFamilyParams) -> float:
    """2 (D-1) d s + (D-1)(D-2) s^2 with s = sqrt(a^2 + b^2 + c^2)."""
    s = np.sqrt(p.a**2 + p.b**2 + p.c**2)
    return float(2.0 * (p.D - 1) * p.d * s + (p.D - 1) * (p.D - 2) * s * s)


def pt_determinants(p: QuditFamilyParams) -> tuple[float, float]:
    """Determinants of the A-transposed A|C and A|B marginals.

    det = (-1)^floor(D/2) d^2 ((a^2 + c^2) d^2 a^2)^(D-1) a^(2(D-1)(D-2)),
    and the same with a and b interchanged; reduces to -a^2 d^4 (a^2 + c^2)
    at D = 2.  Negative whenever the corresponding pair is entangled.
    """
    D, c, d = p.D, p.c, p.d
    sign = (-1.0) ** (D // 2)

    def one(a, b):
        return sign * d**2 * ((a**2 + c**2) * d**2 * a**2) ** (D - 1) \
            * a ** (2 * (D - 1) * (D - 2))

    return float(one(p.a, p.b)), float(one(p.b, p.a))


def higuchi_residual(s: MarginalSpectra) -> tuple[float, float, float]:
    """Marginal-eigenvalue residuals, one per party on the left-hand side.

    For party P: sum of the D-1 smallest eigenvalues of the other two parties
    minus the same partial sum for P.  All three are >= 0 for pure states.
    """
    def partial(v):
        return float(np.sort(v)[:-1].sum())

    pa, pb, pc = partial(s.lambda_a), partial(s.lambda_b), partial(s.lambda_c)
    return (pb + pc - pa, pa + pc - pb, pa + pb - pc)


def asymptotic_family(D: int, alpha: float, beta: float, d0: float = 0.8) -> QuditFamilyParams:
    """The c = 0 member with d = d0/sqrt(D) and (a, b) along (alpha, beta).

    The scale of (a, b) is fixed by normalization, keeping a^2, b^2 and d^2
    all proportional to 1/D, the regime where the leading-order triple
    D^2 (a^2, b^2, a^2 + b^2) has an O(1/D) relative error.
    """
    d = d0 / np.sqrt(D)
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"d0 = {d0} gives d = {d} outside [0, 1]")
    denom = (D - 1) * (alpha**2 + beta**2)
    if denom <= 0:
        a = b = 0.0
        d = 1.0
    else:
        t = np.sqrt((1.0 - d * d) / denom)
        a, b = alpha * t, beta * t
    return QuditFamilyParams(D, a, b, 0.0, d)


def asymptotic_check(D: int, alpha: float, beta: float, d0: float = 0.8) -> tuple[float, float]:
    """(r1, r2): leading-order relative deviation and linear-monogamy defect.

    r1 is the worst component-wise relative deviation of the exact unsquared
    triple from D^2 (a^2, b^2, a^2 + b^2); r2 = |N_A|BC - N_A|B - N_A|C| /
    N_A|BC.  Both scale as O(1/D).
    """
    p = asymptotic_family(D, alpha, beta, d0)
    exact = np.array(qudit_negativity_triple(p))
    target = D * D * np.array([p.a**2, p.b**2, p.a**2 + p.b**2])
    r1 = 0.0
    for e, t in zip(exact, target):
        if t > 0:
            r1 = max(r1, abs(e - t) / t)
        elif e > 0:
            r1 = max(r1, abs(e - t))
    n_ac, n_ab, n_abc = exact
    r2 = abs(n_abc - n_ab - n_ac) / n_abc if n_abc > 0 else 0.0
    return float(r1), float(r2)


def swap_triple(p: SwapFamilyParams) -> NegativityTriple:
    """Squared triple of the swap-rotated state via its phase-stripped family twin.

    The state matches the c = 0 family with (a, b) = (b |sin theta|,
    b |cos theta|) up to local phases, which leave all negativities unchanged.
    """
    b = p.b
    q = QuditFamilyParams.normalized(
        p.D, b * abs(np.sin(p.theta)), b * abs(np.cos(p.theta)), 0.0, p.d
    )
    n_ac, n_ab, n_abc = qudit_negativity_triple(q)
    return NegativityTriple(n_ac**2, n_ab**2, n_abc**2)


def swap_surface_scan(D: int, grid: int) -> list[tuple[float, float, NegativityTriple, bool]]:
    """Triples of the swap family over a (d, theta) grid.

    ``fold_flag`` marks d < 1/sqrt(D), the non-bounding part of the surface.
    """
    rows = []
    fold_at = 1.0 / np.sqrt(D)
    for d in np.linspace(0.0, 1.0, grid):
        for theta in np.linspace(0.0, np.pi / 2.0, grid):
            t = swap_triple(SwapFamilyParams(D, float(d), float(theta)))
            rows.append((float(d), float(theta), t, bool(d < fold_at)))
    return rows
