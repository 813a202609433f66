"""Qubit boundary algebra: the quartic satisfied by the A|C negativity, its
stationarity constraints, the closed-form boundary triples, the implicit
surface, and a classifier for the achievable set.

At fixed z2 = N2_A|BC the c = omega = 0 family traces two arcs in the
(N2_A|C, N2_A|B) plane that share the endpoints (z2, 0) and (0, z2): an outer
(bounding) arc with d > 1/sqrt(2) and an inner (non-bounding) arc with
d < 1/sqrt(2).  The achievable region is bounded by the outer arc; points on
either arc belong to the boundary surface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from negmono.backend import get_kernels
from negmono.errors import NotNormalizable, Unreachable
from negmono.measures import NegativityTriple
from negmono.states import AcinParams

ON_BOUNDARY_TOL = 1e-7
DEFAULT_CURVE_POINTS = 512

_K = get_kernels()


def quartic_eval(p: AcinParams, x: float) -> float:
    """Value at x of the quartic whose root is the A|C negativity.

    Vanishes when x equals the negativity of the A|C marginal of the state
    with parameters ``p``; identical to det(2 rho^T_A + x I_4).
    """
    a, b, c, d = p.a, p.b, p.c, p.d
    w = abs(p.omega)
    cw = np.cos(np.angle(p.omega)) if w > 0 else 1.0
    a2, b2, c2, d2, w2 = a * a, b * b, c * c, d * d, w * w
    return (
        -16 * a2 * a2 * d2 * d2 - 16 * a2 * c2 * d2 * d2
        - 8 * a2 * a2 * d2 * x + 8 * a2 * b2 * d2 * x - 8 * a2 * c2 * d2 * x
        - 8 * a2 * d2 * d2 * x - 8 * a2 * d2 * w2 * x
        + 4 * a2 * b2 * x**2 + 4 * b2 * d2 * x**2 + 4 * c2 * d2 * x**2
        + 4 * c2 * w2 * x**2
        + 2 * a2 * x**3 + 2 * b2 * x**3 + 2 * c2 * x**3 + 2 * d2 * x**3
        + 2 * w2 * x**3 + x**4
        - (16 * d2 * x + 8 * x**2) * a * b * c * w * cw
    )


def stationarity_residuals(p: AcinParams, x: float) -> tuple[float, float]:
    """Left-hand sides of the two boundary stationarity constraints.

    The first is the omega-derivative condition, the second the c-derivative
    condition; both vanish at extremal (boundary) parameter points.  Requires
    a real omega.
    """
    if abs(p.omega.imag) > 1e-9:
        raise ValueError("stationarity constraints are stated for real omega")
    a, b, c, d, w = p.a, p.b, p.c, p.d, p.omega.real
    d2 = d * d
    r1 = x * (4 * a * b * c * d2 + 4 * a * a * d2 * w + 2 * a * b * c * x
              - 2 * c * c * w * x - w * x * x)
    r2 = (8 * a * a * c * d2 * d2 + 4 * a * a * c * d2 * x + 4 * a * b * d2 * w * x
          - 2 * c * d2 * x * x + 2 * a * b * w * x * x - 2 * c * w * w * x * x
          - c * x**3)
    return float(r1), float(r2)


def closed_form_root(a: float, b: float, d: float) -> float:
    """-b^2 + sqrt(b^4 + 4 a^2 d^2): the A|C negativity of the c = omega = 0 state.

    Reduces to 2 a d at b = 0.
    """
    return float(-b * b + np.sqrt(b**4 + 4.0 * a * a * d * d))


def parametric_boundary_triple(a: float, b: float) -> NegativityTriple:
    """Closed-form squared triple of the c = omega = 0 state with given (a, b)."""
    rem = 1.0 - a * a - b * b
    if rem < -1e-12:
        raise NotNormalizable(f"a^2 + b^2 = {a*a + b*b} exceeds 1")
    d2 = max(rem, 0.0)
    x = closed_form_root(a, b, np.sqrt(d2))
    y = closed_form_root(b, a, np.sqrt(d2))
    z2 = 4.0 * (a * a + b * b) * d2
    return NegativityTriple(x * x, y * y, z2)


def implicit_surface_eval(x: float, y: float, z: float) -> float:
    """Implicit polynomial of the boundary surface at unsquared negativities.

    Zero on every point of the parametric boundary family; factors as
    z^2 (z^2 - y^2)^2 at x = 0.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    val = (
        z**6
        - 2 * z**4 * (x * x - x * y + y * y)
        + z * z * (x**4 + y**4
                   - 2 * x * y * (x * (x + 1) + y * (y + 1) - 3 * x * y / 2 + 2))
        + x * y * (2 * y * y + x * y * y + x * x * y + 2 * x * x) * (x + y + 2)
    )
    return val if val.ndim else float(val)


@dataclass(frozen=True)
class BoundaryCurve:
    """Constant-z2 slice of the boundary: the closed loop formed by both arcs.

    ``points`` traces the outer arc from (0, z2) to (z2, 0) and continues back
    along the inner arc; ``outer`` / ``inner`` expose the arcs separately as
    (n, 2) arrays of (x2, y2) samples.
    """

    z_sq: float
    points: np.ndarray
    outer: np.ndarray
    inner: np.ndarray


def _arc_points(z_sq: float, t: float, n: int) -> np.ndarray:
    d2 = 1.0 - t
    a2 = np.linspace(0.0, t, n)
    b2 = t - a2
    x = np.sqrt(b2 * b2 + 4.0 * a2 * d2) - b2
    y = np.sqrt(a2 * a2 + 4.0 * b2 * d2) - a2
    return np.column_stack([x * x, y * y])


def boundary_curve(z_sq: float, n_points: int = DEFAULT_CURVE_POINTS) -> BoundaryCurve:
    """Both constant-z2 arcs of the c = omega = 0 boundary family.

    The two branches fix a^2 + b^2 = (1 -+ sqrt(1 - z2)) / 2 (outer branch has
    the larger d); each arc runs between (0, z2) and (z2, 0).
    """
    if not 0.0 <= z_sq <= 1.0 + 1e-12:
        raise Unreachable(f"z_sq = {z_sq} outside [0, 1]")
    z_sq = min(z_sq, 1.0)
    disc = np.sqrt(max(1.0 - z_sq, 0.0))
    outer = _arc_points(z_sq, (1.0 - disc) / 2.0, n_points)
    inner = _arc_points(z_sq, (1.0 + disc) / 2.0, n_points)
    loop = np.vstack([outer[::-1], inner])
    return BoundaryCurve(z_sq=z_sq, points=loop, outer=outer, inner=inner)


def radial_excess(x2, y2, z2, D: int = 2) -> np.ndarray:
    """Signed radial distance of query triples past the outer boundary arc."""
    x2 = np.atleast_1d(np.asarray(x2, dtype=np.float64))
    y2 = np.atleast_1d(np.asarray(y2, dtype=np.float64))
    z2 = np.atleast_1d(np.asarray(z2, dtype=np.float64))
    excess, _ = _K.radial_excess(x2, y2, z2, D)
    return excess


def classify_batch(x2, y2, z2, D: int = 2, tol: float = ON_BOUNDARY_TOL) -> np.ndarray:
    """Vector classification of squared triples: 'inside'/'on_boundary'/'outside'."""
    x2 = np.atleast_1d(np.asarray(x2, dtype=np.float64))
    y2 = np.atleast_1d(np.asarray(y2, dtype=np.float64))
    z2 = np.atleast_1d(np.asarray(z2, dtype=np.float64))
    excess, near = _K.radial_excess(x2, y2, z2, D)
    out = np.where(near <= tol, "on_boundary", np.where(excess > tol, "outside", "inside"))
    return out


def classify_triple(t: NegativityTriple, tol: float = ON_BOUNDARY_TOL) -> str:
    """Classify one triple against the constant-z2 boundary arcs.

    ``on_boundary`` when the point lies within ``tol`` (radially) of either
    arc, ``outside`` only when beyond the outer arc by more than ``tol``.
    """
    return str(classify_batch([t.n_ac_sq], [t.n_ab_sq], [t.n_abc_sq], tol=tol)[0])
