"""Dataset generation and conjecture probing: Haar sampling, the constant-z
region-filling sweep, and perturbation search around boundary states."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from negmono.backend import get_kernels
from negmono.boundary import BoundaryCurve, radial_excess
from negmono.errors import RegionCheckFailed, Unreachable
from negmono.measures import ConcurrenceTriple, NegativityTriple
from negmono.qudit import pt_block_decompose, pt_determinants
from negmono.states import (AcinParams, QuditFamilyParams, acin_state,
                            haar_amplitude_batch, haar_local_unitaries,
                            qudit_family_state)

_K = get_kernels()

SOURCES = ("haar", "acin_grid", "qudit_grid", "swap_grid", "perturbation")

CSV_FIELDS = ("n_ac_sq", "n_ab_sq", "n_abc_sq")
CSV_FIELDS_CONC = ("c_ac_sq", "c_ab_sq", "c_abc_sq")


@dataclass(frozen=True)
class SampleRecord:
    triple: NegativityTriple
    source: str
    seed: int
    params: dict | None = None
    concurrence: ConcurrenceTriple | None = None

    def __post_init__(self):
        vals = self.triple.as_array()
        if not np.all(np.isfinite(vals)) or vals.min() < -1e-12:
            raise ValueError(f"invalid triple components {vals}")


@dataclass
class SearchReport:
    """Outcome of a perturbation search around one boundary state."""

    max_excess: float
    at_params: dict
    trials: int
    seed: int
    findings: list = field(default_factory=list)


def _chunked(n: int, parts: int):
    parts = max(1, min(parts, n))
    size = (n + parts - 1) // parts
    return [(i, min(i + size, n)) for i in range(0, n, size)]


def sample_triples(dims: tuple[int, int, int], n: int, seed: int,
                   include_concurrence: bool | None = None,
                   threads: int | None = None) -> list[SampleRecord]:
    """Haar-random triples; concurrence triples are included for qubit runs.

    Output is deterministic for a fixed seed and independent of the thread
    count (rows are computed independently and merged in draw order).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    d = dims[0]
    if dims != (d, d, d):
        raise ValueError("sampling kernels expect three equal local dimensions")
    if include_concurrence is None:
        include_concurrence = d == 2
    if include_concurrence and d != 2:
        raise ValueError("concurrence triples are only defined for qubits")
    amps = haar_amplitude_batch(dims, n, seed)
    threads = threads or min(os.cpu_count() or 1, 8)
    spans = _chunked(n, threads)

    def work(span):
        lo, hi = span
        neg = _K.batch_triples(amps[lo:hi], d)
        conc = _K.batch_concurrence(amps[lo:hi]) if include_concurrence else None
        return neg, conc

    if len(spans) == 1:
        results = [work(spans[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            results = list(pool.map(work, spans))
    neg = np.vstack([r[0] for r in results])
    conc = np.vstack([r[1] for r in results]) if include_concurrence else None
    records = []
    for i in range(n):
        records.append(SampleRecord(
            triple=NegativityTriple(*map(float, neg[i])),
            source="haar",
            seed=seed,
            concurrence=ConcurrenceTriple(*map(float, conc[i])) if include_concurrence else None,
        ))
    return records


def region_fill_sweep(z_sq: float, n_c: int, n_points: int = 101) -> list[BoundaryCurve]:
    """Constant-z2 curves as c rises from 0 to its maximum, with verification.

    Uses the larger-d branch (d^2 = (1 + sqrt(1 - z2)) / 2, fixed by z2 alone
    since N2_A|BC = 4 (1 - d^2) d^2 regardless of c).  Checks that every curve
    keeps its endpoints on the coordinate planes, that curves shrink
    monotonically toward the origin as c grows, and that both partial-transpose
    determinants stay negative while a, b > 0.
    """
    if not 0.0 < z_sq < 1.0:
        raise Unreachable(f"z_sq = {z_sq} outside (0, 1)")
    if n_c < 2:
        raise ValueError("n_c must be >= 2")
    d2 = (1.0 + np.sqrt(1.0 - z_sq)) / 2.0
    d = np.sqrt(d2)
    c_max = np.sqrt(1.0 - d2)
    curves = []
    prev_radius = None
    for c in np.linspace(0.0, c_max, n_c):
        t = max(1.0 - d2 - c * c, 0.0)
        a_vals = np.sqrt(np.linspace(0.0, t, n_points))
        pts = np.empty((n_points, 2))
        for i, a in enumerate(a_vals):
            b = np.sqrt(max(t - a * a, 0.0))
            p = QuditFamilyParams.normalized(2, a, b, c, d)
            pts[i, 0] = pt_block_decompose(p, "AC").negativity() ** 2
            pts[i, 1] = pt_block_decompose(p, "AB").negativity() ** 2
            if 0.0 < a and 0.0 < b:
                det_ac, det_ab = pt_determinants(p)
                if det_ac >= 0.0 or det_ab >= 0.0:
                    raise RegionCheckFailed(
                        f"non-negative determinant at a={a}, b={b}, c={c}"
                    )
        if pts[0, 0] > 1e-9 or pts[-1, 1] > 1e-9:
            raise RegionCheckFailed(f"curve endpoints left the coordinate planes at c={c}")
        radius = np.hypot(pts[:, 0], pts[:, 1])
        if prev_radius is not None and np.any(radius > prev_radius + 1e-9):
            raise RegionCheckFailed(f"curve at c={c} is not nested inside its predecessor")
        prev_radius = radius
        curves.append(BoundaryCurve(z_sq=float(z_sq), points=pts, outer=pts,
                                    inner=np.empty((0, 2))))
    collapse = np.hypot(curves[-1].points[:, 0], curves[-1].points[:, 1]).max()
    if collapse > 1e-9:
        raise RegionCheckFailed(f"final curve did not collapse to the origin ({collapse})")
    return curves


def _apply_local_unitaries(amps: np.ndarray, dims, rng) -> np.ndarray:
    ua, ub, uc = haar_local_unitaries(dims, rng)
    t = amps.reshape(amps.shape[0], *dims)
    return np.einsum("ax,by,cz,nxyz->nabc", ua, ub, uc, t).reshape(amps.shape)


def perturbation_search(base, n_trials: int, step: float = 1e-2, seed: int = 0,
                        batch: int = 50) -> SearchReport:
    """Hill-climb on the signed excess past the conjectured boundary.

    ``base`` is a boundary-family parameter set (c = 0, omega = 0).  Each
    round evaluates a batch of candidates: random amplitude perturbations of
    the current best state with random local unitaries applied, plus random
    parameter perturbations of the base family.  The step is halved after 20
    consecutive non-improving rounds (floor 1e-8).  Any excess beyond 1e-7 is
    recorded as a finding.
    """
    if isinstance(base, AcinParams):
        dloc = 2
        psi0 = acin_state(base).amplitudes
        base_vec = np.array([base.a, base.b, base.c, base.d, base.omega.real])
    elif isinstance(base, QuditFamilyParams):
        dloc = base.D
        psi0 = qudit_family_state(base).amplitudes
        base_vec = np.array([base.a, base.b, base.c, base.d])
    else:
        raise TypeError(f"unsupported base parameter type {type(base)!r}")
    dims = (dloc, dloc, dloc)
    dim = dloc**3
    rng = np.random.default_rng(seed)

    def evaluate(amps):
        trip = _K.batch_triples(amps, dloc)
        return radial_excess(trip[:, 0], trip[:, 1], trip[:, 2], D=dloc), trip

    base_excess, _ = evaluate(psi0[None, :])
    best_amps = psi0.copy()
    best_excess = float(base_excess[0])
    report = SearchReport(max_excess=best_excess,
                          at_params={"base": _params_dict(base)},
                          trials=0, seed=seed)
    nonimp = 0
    while report.trials < n_trials:
        k = min(batch, n_trials - report.trials)
        k_par = max(1, k // 4) if k > 1 else 0
        k_amp = k - k_par
        cands = np.empty((k, dim), dtype=np.complex128)
        if k_amp:
            delta = rng.standard_normal((k_amp, dim)) + 1j * rng.standard_normal((k_amp, dim))
            pert = best_amps[None, :] + step * delta
            pert = _apply_local_unitaries(pert, dims, rng)
            cands[:k_amp] = pert
        if k_par:
            dv = rng.standard_normal((k_par, base_vec.size))
            vecs = np.abs(base_vec[None, :] + step * dv)
            for i in range(k_par):
                if dloc == 2:
                    a, b, c, d, w = vecs[i]
                    p = AcinParams.normalized(a, b, c, d, w)
                    cands[k_amp + i] = acin_state(p).amplitudes
                else:
                    a, b, c, d = vecs[i]
                    p = QuditFamilyParams.normalized(dloc, a, b, c, d)
                    cands[k_amp + i] = qudit_family_state(p).amplitudes
        cands /= np.linalg.norm(cands, axis=1, keepdims=True)
        excess, _ = evaluate(cands)
        report.trials += k
        j = int(np.argmax(excess))
        if excess[j] > best_excess:
            best_excess = float(excess[j])
            best_amps = cands[j].copy()
            nonimp = 0
        else:
            nonimp += 1
            if nonimp >= 20:
                step = max(step / 2.0, 1e-8)
                nonimp = 0
        report.max_excess = max(report.max_excess, best_excess)
    report.at_params["amplitudes"] = [[float(v.real), float(v.imag)] for v in best_amps]
    if report.max_excess > 1e-7:
        report.findings.append({
            "kind": "excess_beyond_boundary",
            "max_excess": report.max_excess,
            "D": dloc,
        })
    return report


def _params_dict(p) -> dict:
    d = asdict(p)
    if "omega" in d:
        d["omega"] = [float(np.real(d["omega"])), float(np.imag(d["omega"]))]
    return d


# ---------------------------------------------------------------------------
# dataset files
# ---------------------------------------------------------------------------

def _fmt(v: float) -> str:
    return f"{v:.17g}"


def emit_dataset(records: list[SampleRecord], path: str, format: str = "csv") -> None:
    """Write records per the documented schema (17 significant digits, LF)."""
    with_conc = any(r.concurrence is not None for r in records)
    if with_conc and not all(r.concurrence is not None for r in records):
        raise ValueError("records mix concurrence and non-concurrence rows")
    if format == "csv":
        header = "source,seed," + ",".join(CSV_FIELDS)
        if with_conc:
            header += "," + ",".join(CSV_FIELDS_CONC)
        lines = [header]
        for r in records:
            t = r.triple
            row = [r.source, str(r.seed), _fmt(t.n_ac_sq), _fmt(t.n_ab_sq), _fmt(t.n_abc_sq)]
            if with_conc:
                c = r.concurrence
                row += [_fmt(c.c_ac_sq), _fmt(c.c_ab_sq), _fmt(c.c_abc_sq)]
            lines.append(",".join(row))
        data = "\n".join(lines) + "\n"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
    elif format == "json":
        items = []
        for r in records:
            item = {"source": r.source, "seed": r.seed,
                    "n_ac_sq": r.triple.n_ac_sq, "n_ab_sq": r.triple.n_ab_sq,
                    "n_abc_sq": r.triple.n_abc_sq}
            if with_conc:
                item.update({"c_ac_sq": r.concurrence.c_ac_sq,
                             "c_ab_sq": r.concurrence.c_ab_sq,
                             "c_abc_sq": r.concurrence.c_abc_sq})
            items.append(item)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(items, fh, indent=1)
            fh.write("\n")
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {format!r}")


def read_dataset(path: str, format: str | None = None) -> list[SampleRecord]:
    """Read a dataset written by :func:`emit_dataset` (lossless round trip)."""
    if format is None:
        format = "json" if str(path).endswith(".json") else "csv"
    records = []
    if format == "csv":
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().strip().split(",")
            with_conc = "c_ac_sq" in header
            for line in fh:
                parts = line.strip().split(",")
                if not parts or parts == [""]:
                    continue
                triple = NegativityTriple(*(float(x) for x in parts[2:5]))
                conc = ConcurrenceTriple(*(float(x) for x in parts[5:8])) if with_conc else None
                records.append(SampleRecord(triple=triple, source=parts[0],
                                            seed=int(parts[1]), concurrence=conc))
    else:
        with open(path, encoding="utf-8") as fh:
            for item in json.load(fh):
                conc = None
                if "c_ac_sq" in item:
                    conc = ConcurrenceTriple(item["c_ac_sq"], item["c_ab_sq"], item["c_abc_sq"])
                records.append(SampleRecord(
                    triple=NegativityTriple(item["n_ac_sq"], item["n_ab_sq"], item["n_abc_sq"]),
                    source=item["source"], seed=item["seed"], concurrence=conc))
    return records
