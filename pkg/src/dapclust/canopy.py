"""Canopy pre-clustering: the cheap-metric sweep that seeds the parallel regions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Dataset
from .sstree import SsTree

_MIN_SAMPLE = 32
_FALLBACK_T2 = 1e-9


@dataclass(frozen=True)
class CanopyConfig:
    """Loose membership threshold t1 and tight removal threshold t2, t2 <= t1."""

    t1: float
    t2: float

    def __post_init__(self):
        if not (math.isfinite(self.t1) and math.isfinite(self.t2)):
            raise ValueError("canopy thresholds must be finite")
        if self.t1 <= 0 or self.t2 <= 0:
            raise ValueError("canopy thresholds must be positive")
        if self.t2 > self.t1:
            raise ValueError(f"t2 ({self.t2}) must not exceed t1 ({self.t1})")


@dataclass(frozen=True)
class Canopy:
    """A pre-cluster: its seed point id and every point within t1 of the seed
    (cheap metric) at the time the seed was drawn."""

    center_id: int
    member_ids: frozenset[int]


def cheap_distance(a, b) -> float:
    """L-infinity distance, the sweep's approximate metric.

    Strictly cheaper per pair than the Euclidean metric (no multiplications)
    and bounds it from below.
    """
    return max(abs(x - y) for x, y in zip(a, b))


def estimate_thresholds(data: Dataset, m: int, tree: SsTree | None = None) -> CanopyConfig:
    """Derive canopy thresholds from the data.

    t2 is the mean distance to the m-th nearest neighbour over a deterministic
    sample (every ceil(n/1000)-th point by id, at least 32 points when
    available); t1 = 3 * t2. Degenerate inputs (all points identical, or fewer
    than two points) fall back to a tiny positive t2.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    n = len(data)
    if n < 2:
        return CanopyConfig(3 * _FALLBACK_T2, _FALLBACK_T2)
    stride = max(1, math.ceil(n / 1000))
    sample = list(range(0, n, stride))
    if len(sample) < _MIN_SAMPLE:
        sample = list(range(min(n, _MIN_SAMPLE)))
    if tree is None:
        tree = SsTree.build(data)
    total = 0.0
    for i in sample:
        nbrs = tree.knn(data[i], m, include_self=False)
        total += nbrs[-1][1]  # m-th neighbour, or the farthest available
    t2 = total / len(sample)
    if t2 == 0.0:
        return CanopyConfig(3e-9, _FALLBACK_T2)
    return CanopyConfig(3.0 * t2, t2)


def canopy_cluster(data: Dataset, cfg: CanopyConfig, tree: SsTree | None = None) -> list[Canopy]:
    """Run the standard canopy sweep.

    The candidate pool starts as all ids ascending. Repeatedly the lowest
    remaining id seeds a canopy of every candidate within t1 (cheap metric),
    and candidates within t2 leave the pool. Points may belong to several
    canopies; every point belongs to at least one. Seed selection by id makes
    the output identical across runs and worker counts.

    When a spatial index over the dataset is supplied, each iteration scans
    only a Euclidean superset of the seed's t1 box instead of every remaining
    candidate (the max-coordinate metric never exceeds the Euclidean one, so
    radius t1*sqrt(dim) covers the box); the output is identical either way.
    """
    n = len(data)
    canopies: list[Canopy] = []
    if n == 0:
        return canopies
    coords = data.coords
    alive = np.ones(n, dtype=bool)
    l2_radius = cfg.t1 * math.sqrt(max(data.dim, 1)) * (1.0 + 1e-12)
    next_seed = 0
    while True:
        while next_seed < n and not alive[next_seed]:
            next_seed += 1
        if next_seed == n:
            break
        seed = next_seed
        if tree is not None:
            near = np.array(tree.range(coords[seed], l2_radius), dtype=np.intp)
            cand = near[alive[near]]
        else:
            cand = np.flatnonzero(alive)
        cheap = np.abs(coords[cand] - coords[seed]).max(axis=1)
        members = cand[cheap <= cfg.t1]
        canopies.append(Canopy(seed, frozenset(int(i) for i in members)))
        alive[cand[cheap <= cfg.t2]] = False
    return canopies
