"""The m-nearest-neighbour merge clusterer.

Fast and noise-free, but exhibits the single-link effect: sparse points
roughly equidistant from two dense clusters can fuse them once m exceeds the
chain length. Kept both as a low-noise clusterer and as the demonstrator the
adaptive pipeline is measured against.
"""

import time
from dataclasses import dataclass

from .core import ClusterResult, Dataset, RunStats
from .sstree import SsTree
from .unionfind import UnionFind


@dataclass(frozen=True)
class NaiveConfig:
    """m: how many nearest neighbours each point merges with (self excluded)."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")


def naive_cluster(data: Dataset, cfg: NaiveConfig) -> ClusterResult:
    """Union every point with each of its m nearest neighbours.

    Every point ends up labeled (there is no noise notion here); labels are
    the minimum id per merged set, so the result is independent of query or
    union order. m >= n simply merges everything reachable.
    """
    start = time.perf_counter()
    n = len(data)
    if n == 0:
        return ClusterResult([], set(), RunStats())
    tree = SsTree.build(data)
    uf = UnionFind(n)
    for p in data:
        for qid, _ in tree.knn(p, cfg.m, include_self=False):
            uf.union(p.id, qid)
    labels = uf.labels()
    stats = RunStats(uf_ops=uf.op_count, uf_hops=uf.hop_count)
    stats.t_total = time.perf_counter() - start
    return ClusterResult(labels, set(), stats)
