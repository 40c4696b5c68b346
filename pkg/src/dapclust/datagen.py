"""Deterministic synthetic datasets for tests, demos, and benchmarks."""

from __future__ import annotations

import math
import random

from .core import NOISE, Dataset


def make_blobs(
    n: int,
    clusters: int,
    seed: int,
    dim: int = 2,
    spread: float = 1.0,
    separation: float = 20.0,
) -> tuple[Dataset, list[int]]:
    """Gaussian blobs around well-separated centers laid out on a grid.

    Returns the dataset and the generating blob index per point. Deterministic
    for a fixed seed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if clusters < 1 or clusters > n:
        raise ValueError("clusters must be in 1..n")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = random.Random(seed)
    grid = math.ceil(math.sqrt(clusters))
    centers = []
    for ci in range(clusters):
        c = [0.0] * dim
        if dim == 1:
            c[0] = ci * separation
        else:
            c[0] = (ci % grid) * separation
            c[1] = (ci // grid) * separation
        centers.append(c)
    rows: list[tuple[float, ...]] = []
    truth: list[int] = []
    base, extra = divmod(n, clusters)
    for ci in range(clusters):
        count = base + (1 if ci < extra else 0)
        for _ in range(count):
            rows.append(tuple(centers[ci][d] + rng.gauss(0.0, spread) for d in range(dim)))
            truth.append(ci)
    return Dataset.from_coords(rows), truth


def make_rings(
    n: int,
    rings: int,
    seed: int,
    base_radius: float = 10.0,
    width: float = 1.0,
) -> tuple[Dataset, list[int]]:
    """Concentric 2-D rings: ring i sits at radius (i+1)*base_radius with a
    uniform radial jitter of at most width/2, so every point lies within
    width of its ring radius."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if rings < 1 or rings > n:
        raise ValueError("rings must be in 1..n")
    if base_radius <= 0 or width <= 0:
        raise ValueError("base_radius and width must be positive")
    rng = random.Random(seed)
    rows: list[tuple[float, float]] = []
    truth: list[int] = []
    base, extra = divmod(n, rings)
    for ri in range(rings):
        target = (ri + 1) * base_radius
        count = base + (1 if ri < extra else 0)
        for _ in range(count):
            r = target + rng.uniform(-width / 2.0, width / 2.0)
            theta = rng.uniform(0.0, 2.0 * math.pi)
            rows.append((r * math.cos(theta), r * math.sin(theta)))
            truth.append(ri)
    return Dataset.from_coords(rows), truth


# Geometry of the bridge construction (units below are relative to it):
# blob centers 24 apart, each blob's innermost edge is a fixed anchor point
# 2.0 from its center followed by a short ramp at 1.85 and 1.70, with the
# interior confined to a disc of radius 1.55. The chain sits on the axis just
# left of the midpoint, inside a window narrower than the 0.15 anchor-to-ramp
# step. That guarantees, for any seed, that every chain point's neighbour
# order is: other chain points, then blob A's anchor, then blob B's anchor,
# then everything else. Merging across the blobs therefore starts exactly
# when a chain point reaches past its chain mates and the nearer anchor,
# i.e. when the smoothing parameter exceeds the chain length.
_BRIDGE_SEP = 24.0
_ANCHOR = 2.0
_RAMP = (1.85, 1.70)
_INTERIOR_R = 1.52
_JITTER = 0.02
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
_WINDOW = (-0.07, -0.015)


def make_bridge(n_per_blob: int = 50, j: int = 2, seed: int = 0) -> tuple[Dataset, list[int]]:
    """Two dense blobs plus a chain of j near-equidistant bridge points.

    Blob interiors are sunflower-spiral layouts with a small seeded jitter:
    quasi-uniform spacing keeps each blob's nearest-neighbour graph connected
    at small m, so merge behaviour is governed by the chain alone. Ground
    truth labels the blobs 0 and 1 and marks the chain as noise. Blob points
    come first (all of blob 0, then blob 1), the chain last. j=0 degenerates
    to the two blobs alone.
    """
    if n_per_blob < 4:
        raise ValueError("n_per_blob must be >= 4")
    if j < 0:
        raise ValueError("j must be >= 0")
    rng = random.Random(seed)
    rows: list[tuple[float, float]] = []
    truth: list[int] = []
    interior = n_per_blob - 3
    for label, (cx, direction) in enumerate([(0.0, 1.0), (_BRIDGE_SEP, -1.0)]):
        rows.append((cx + direction * _ANCHOR, 0.0))
        rows.append((cx + direction * _RAMP[0], 0.0))
        rows.append((cx + direction * _RAMP[1], 0.0))
        truth.extend([label] * 3)
        for i in range(interior):
            r = _INTERIOR_R * math.sqrt((i + 0.5) / interior)
            theta = i * _GOLDEN_ANGLE
            rows.append(
                (
                    cx + r * math.cos(theta) + rng.uniform(-_JITTER, _JITTER),
                    r * math.sin(theta) + rng.uniform(-_JITTER, _JITTER),
                )
            )
            truth.append(label)
    mid = _BRIDGE_SEP / 2.0
    lo, hi = _WINDOW
    if j == 1:
        offs = [(lo + hi) / 2.0]
    else:
        offs = [lo + i * (hi - lo) / (j - 1) for i in range(j)] if j else []
    for off in offs:
        rows.append((mid + off, 0.0))
        truth.append(NOISE)
    return Dataset.from_coords(rows), truth


def make_density_pair(scale: float = 1.0) -> tuple[Dataset, list[int]]:
    """A fixed mixed-density instance: a 12x12 grid at spacing 1*scale next
    to a 10x10 grid at spacing 10*scale (nearest hulls 60*scale apart), plus
    32 isolated stray points marked as noise in the ground truth.

    One scan radius cannot serve both grids: the sparse grid needs at least
    10*scale while anything past 60*scale merges the two, so a single-radius
    clusterer recovers the instance only within that band, and a scaled copy
    of the instance shifts the band away entirely. The strays keep the
    failure visible to pair-counting scores: a radius too small for the
    sparse grid folds a whole blob into the noise group.
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    rows: list[tuple[float, float]] = []
    truth: list[int] = []
    for i in range(12):
        for k in range(12):
            rows.append((i * scale, k * scale))
            truth.append(0)
    x0 = 71.0 * scale  # tight grid ends at 11*scale; hull gap is 60*scale
    for i in range(10):
        for k in range(10):
            rows.append((x0 + 10.0 * i * scale, 10.0 * k * scale))
            truth.append(1)
    for i in range(8):  # strays: far from both grids and from each other
        for k in range(4):
            rows.append((200.0 * i * scale, (-200.0 - 200.0 * k) * scale))
            truth.append(NOISE)
    return Dataset.from_coords(rows), truth
