"""Pareto fronts and quality indicators for bi-objective minimisation.

Indicator functions expect both fronts already normalised by the reference
front (see :func:`normalize`); :func:`indicator_values` does that and returns
all five at once. Conventions:

* hypervolume uses the reference point ``(1, 1)``;
* GD and IGD use ``sqrt(sum d_i**2) / N``;
* the epsilon indicator is the additive one.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Front",
    "RunStats",
    "nondominated_mask",
    "build_reference_front",
    "normalize",
    "hypervolume",
    "gd",
    "igd",
    "spread",
    "epsilon_additive",
    "indicator_values",
    "summarize_runs",
    "INDICATORS",
]

INDICATORS = ("HV", "Sp", "GD", "IGD", "E")


def nondominated_mask(points) -> np.ndarray:
    """Mask keeping one copy of each nondominated point.

    Among identical points the earliest in input order is kept.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    keep = np.zeros(len(pts), dtype=bool)
    if not len(pts):
        return keep
    order = np.lexsort((pts[:, 1], pts[:, 0]))  # stable: f1, then f2, then input order
    f2 = pts[order, 1]
    best_before = np.concatenate(([np.inf], np.minimum.accumulate(f2)[:-1]))
    keep[order[f2 < best_before]] = True
    return keep


class Front:
    """Internally nondominated set of objective points, sorted by ``f1``.

    Dominated and duplicate points are dropped on construction. Optional
    genotypes ride along with their points.
    """

    def __init__(self, points, genotypes=None):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        keep = np.flatnonzero(nondominated_mask(pts))
        keep = keep[np.argsort(pts[keep, 0], kind="stable")]
        self.points = pts[keep]
        self.points.setflags(write=False)
        if genotypes is not None:
            geno = np.asarray(genotypes, dtype=bool)
            if len(geno) != len(pts):
                raise ValueError("need one genotype per point")
            self.genotypes = geno[keep]
            self.genotypes.setflags(write=False)
        else:
            self.genotypes = None

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(map(tuple, self.points))

    def __repr__(self):
        return f"Front({self.points.tolist()!r})"

    def point_set(self) -> set[tuple[float, float]]:
        return {(float(a), float(b)) for a, b in self.points}

    def entries(self):
        """``(genotype, (f1, f2))`` pairs; genotypes must be present."""
        if self.genotypes is None:
            raise ValueError("front carries no genotypes")
        return [(g, (float(a), float(b))) for g, (a, b) in zip(self.genotypes, self.points)]


class RunStats(NamedTuple):
    mean: float
    sd: float
    median: float
    iqr: float


def _as_points(front) -> np.ndarray:
    if isinstance(front, Front):
        return front.points
    return np.asarray(front, dtype=float).reshape(-1, 2)


def build_reference_front(fronts: Iterable) -> Front:
    """Nondominated union of several fronts."""
    arrays = [_as_points(f) for f in fronts]
    if not arrays:
        raise ValueError("need at least one front")
    genos = [f.genotypes if isinstance(f, Front) else None for f in fronts]
    if all(g is not None for g in genos):
        return Front(np.vstack(arrays), np.vstack(genos))
    return Front(np.vstack(arrays))


def normalize(front, ref) -> np.ndarray:
    """Map ``ref``'s per-objective range onto ``[0, 1]`` and apply it to ``front``.

    No clipping. An objective on which ``ref`` has zero range maps to 0.
    """
    pts, rpts = _as_points(front), _as_points(ref)
    if not len(rpts):
        raise ValueError("reference front is empty")
    lo, hi = rpts.min(axis=0), rpts.max(axis=0)
    span = hi - lo
    out = np.zeros_like(pts)
    ok = span > 0
    out[:, ok] = (pts[:, ok] - lo[ok]) / span[ok]
    return out


def hypervolume(front, ref_point=(1.0, 1.0)) -> float:
    """Area dominated by ``front`` and bounded by ``ref_point`` (2-D sweep)."""
    pts = _as_points(front)
    rx, ry = ref_point
    pts = pts[(pts[:, 0] < rx) & (pts[:, 1] < ry)]
    if not len(pts):
        return 0.0
    pts = pts[nondominated_mask(pts)]
    pts = pts[np.argsort(pts[:, 0], kind="stable")]
    right = np.append(pts[1:, 0], rx)
    return float(np.sum((right - pts[:, 0]) * (ry - pts[:, 1])))


def _nearest_distances(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    diff = src[:, None, :] - dst[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2)).min(axis=1)


def gd(front, ref) -> float:
    pts, rpts = _as_points(front), _as_points(ref)
    if not len(pts):
        return float("inf")
    d = _nearest_distances(pts, rpts)
    return float(np.sqrt(np.sum(d ** 2)) / len(pts))


def igd(front, ref) -> float:
    return gd(ref, front)


def spread(front, ref) -> float:
    """Spread of ``front`` measured against ``ref``'s extreme points.

    Returns 0 when the formula's denominator vanishes (e.g. a single point
    sitting on coincident extremes).
    """
    pts, rpts = _as_points(front), _as_points(ref)
    if not len(pts):
        return float("inf")
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]
    first_extreme = rpts[np.lexsort((rpts[:, 1], rpts[:, 0]))[0]]
    last_extreme = rpts[np.lexsort((rpts[:, 0], rpts[:, 1]))[0]]
    d_f = float(np.linalg.norm(pts[0] - first_extreme))
    d_l = float(np.linalg.norm(pts[-1] - last_extreme))
    gaps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    mean_gap = float(gaps.mean()) if len(gaps) else 0.0
    num = d_f + d_l + float(np.abs(gaps - mean_gap).sum())
    den = d_f + d_l + len(gaps) * mean_gap
    return num / den if den > 0 else 0.0


def epsilon_additive(front, ref) -> float:
    """Smallest shift ``e`` such that ``front - e`` weakly dominates every ref point."""
    pts, rpts = _as_points(front), _as_points(ref)
    if not len(pts):
        return float("inf")
    diff = pts[None, :, :] - rpts[:, None, :]  # (ref, front, obj)
    return float(diff.max(axis=2).min(axis=1).max())


def indicator_values(front, ref) -> dict[str, float]:
    """All five indicators of ``front`` after normalising both fronts by ``ref``."""
    nf, nr = normalize(front, ref), normalize(ref, ref)
    return {
        "HV": hypervolume(nf),
        "Sp": spread(nf, nr),
        "GD": gd(nf, nr),
        "IGD": igd(nf, nr),
        "E": epsilon_additive(nf, nr),
    }


def summarize_runs(values: Sequence[float]) -> RunStats:
    """Mean, population SD, median and linear-interpolation IQR."""
    arr = np.asarray(values, dtype=float)
    if not arr.size:
        raise ValueError("need at least one value")
    q1, med, q3 = np.percentile(arr, [25, 50, 75])
    return RunStats(float(arr.mean()), float(arr.std()), float(med), float(q3 - q1))
