"""SS+tree spatial index: a bounding-sphere hierarchy for knn and range queries.

The tree is bulk-built top-down and immutable afterwards, so any number of
workers may query it concurrently without locking. Split rule: a node's point
set is cut at the median of the highest-variance coordinate, with a re-check
that the two child spheres overlap less than the parent sphere's radius
(trying lower-variance coordinates next, and falling back to the plain
variance split when none passes). Oversized groups are re-split largest-first
until the fanout limit is filled.
"""

from __future__ import annotations

import heapq
from math import sqrt

import numpy as np

from .core import Dataset, Point, Sphere, distance_coords

FANOUT = 8
LEAF_CAP = 16

# Absorbs float rounding between the vectorised sphere construction and the
# scalar distance loop used at query time. Only ever widens a node's reach,
# so pruning stays sound.
_SLACK = 1e-9


def bounding_sphere(coords: np.ndarray) -> tuple[tuple[float, ...], float]:
    """Approximate minimum enclosing sphere of a coordinate array.

    Two far-point passes pick a diameter estimate; the radius then expands to
    the farthest point so containment is guaranteed.
    """
    k = len(coords)
    if k == 0:
        return (), 0.0
    d0 = ((coords - coords[0]) ** 2).sum(axis=1)
    p1 = coords[int(np.argmax(d0))]
    d1 = ((coords - p1) ** 2).sum(axis=1)
    p2 = coords[int(np.argmax(d1))]
    center = (p1 + p2) / 2.0
    r2 = ((coords - center) ** 2).sum(axis=1).max()
    return tuple(float(v) for v in center), float(np.sqrt(r2))


class SsNode:
    """One tree node: a bounding sphere over every point stored beneath it."""

    __slots__ = ("center", "radius", "children", "entries", "count")

    def __init__(self, center, radius, children=None, entries=None):
        self.center = center
        self.radius = radius
        self.children = children  # internal nodes: list[SsNode]
        self.entries = entries  # leaves: list[(point id, coords)]
        if children is not None:
            self.count = sum(c.count for c in children)
        else:
            self.count = len(entries)

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def sphere(self) -> Sphere:
        return Sphere(self.center, self.radius)

    @property
    def point_ids(self):
        """Ids stored directly in this leaf (None for internal nodes)."""
        if self.entries is None:
            return None
        return [pid for pid, _ in self.entries]


def _split(coords, pos, parent_radius):
    """Cut one group of point positions into two halves.

    Tries coordinates in descending variance order and accepts the first cut
    whose child spheres overlap less than the parent radius; otherwise falls
    back to the plain highest-variance split.
    """
    sub = coords[pos]
    order = np.argsort(-sub.var(axis=0), kind="stable")
    half = len(pos) // 2
    first = None
    for axis in order:
        srt = pos[np.argsort(sub[:, axis], kind="stable")]
        a, b = srt[:half], srt[half:]
        if first is None:
            first = (a, b)
        ca, ra = bounding_sphere(coords[a])
        cb, rb = bounding_sphere(coords[b])
        if ra + rb - distance_coords(ca, cb) < parent_radius:
            return a, b
    return first


def _build_node(ids, coords, pos):
    center, radius = bounding_sphere(coords[pos])
    if len(pos) <= LEAF_CAP:
        entries = [(ids[i], tuple(coords[i])) for i in pos]
        return SsNode(center, radius, entries=entries)
    groups = [pos]
    while len(groups) < FANOUT:
        largest = max(range(len(groups)), key=lambda g: len(groups[g]))
        if len(groups[largest]) <= LEAF_CAP:
            break
        a, b = _split(coords, groups[largest], radius)
        groups[largest : largest + 1] = [a, b]
    children = [_build_node(ids, coords, g) for g in groups]
    return SsNode(center, radius, children=children)


def _query_coords(q):
    if isinstance(q, Point):
        return q.coords, q.id
    return tuple(float(v) for v in q), None


def _collect_ids(node, out):
    stack = [node]
    while stack:
        n = stack.pop()
        if n.children is None:
            for pid, _pc in n.entries:
                out.append(pid)
        else:
            stack.extend(n.children)


class SsTree:
    """Immutable spatial index over a set of points."""

    def __init__(self, root, dim, size):
        self.root = root
        self.dim = dim
        self.size = size

    @classmethod
    def build(cls, points) -> "SsTree":
        """Index a Dataset or any sequence of points; deterministic for a
        given input order."""
        if isinstance(points, Dataset):
            pts = points.points
            dim = points.dim
        else:
            pts = list(points)
            dim = pts[0].dim if pts else 0
        if not pts:
            return cls(None, dim, 0)
        ids = [p.id for p in pts]
        coords = np.array([p.coords for p in pts], dtype=np.float64)
        root = _build_node(ids, coords, np.arange(len(pts)))
        return cls(root, dim, len(pts))

    def knn(self, q, m: int, include_self: bool = True) -> list[tuple[int, float]]:
        """The m indexed points nearest to q (fewer if the tree holds fewer),
        ascending by distance with ties broken by ascending id.

        q may be a Point or a bare coordinate sequence. With include_self
        False and q a Point whose id is indexed, that id is excluded.
        """
        if m < 1:
            raise ValueError("m must be >= 1")
        qc, qid = _query_coords(q)
        if self.root is None:
            return []
        if len(qc) != self.dim:
            raise ValueError(f"query dimension {len(qc)} != tree dimension {self.dim}")
        exclude = qid if (qid is not None and not include_self) else None

        best: list[tuple[float, int]] = []  # max-heap via (-distance, -id)
        todo = [(0.0, 0, self.root)]
        seq = 1
        while todo:
            mind, _, node = heapq.heappop(todo)
            if len(best) == m and mind > -best[0][0]:
                break
            if node.children is None:
                for pid, pc in node.entries:
                    if pid == exclude:
                        continue
                    # inline distance: same accumulation order as the oracles
                    s = 0.0
                    for x, y in zip(qc, pc):
                        dd = x - y
                        s += dd * dd
                    d = sqrt(s)
                    if len(best) < m:
                        heapq.heappush(best, (-d, -pid))
                    elif (d, pid) < (-best[0][0], -best[0][1]):
                        heapq.heapreplace(best, (-d, -pid))
            else:
                bound = None if len(best) < m else -best[0][0]
                for child in node.children:
                    cd = distance_coords(qc, child.center)
                    mindist = cd - child.radius - _SLACK
                    if mindist < 0.0:
                        mindist = 0.0
                    # Equal bounds must still be visited: a tied point with a
                    # smaller id can displace the current worst.
                    if bound is None or mindist <= bound:
                        heapq.heappush(todo, (mindist, seq, child))
                        seq += 1
        out = sorted((-nd, -nid) for nd, nid in best)
        return [(pid, d) for d, pid in out]

    def range(self, center, radius: float) -> list[int]:
        """Ids of all indexed points within the closed ball (<= radius),
        ascending by id."""
        if radius < 0:
            raise ValueError("radius must be non-negative")
        qc, _ = _query_coords(center)
        out: list[int] = []
        if self.root is None:
            return out
        if len(qc) != self.dim:
            raise ValueError(f"query dimension {len(qc)} != tree dimension {self.dim}")
        stack = [self.root]
        while stack:
            node = stack.pop()
            d = distance_coords(qc, node.center)
            if d > radius + node.radius + _SLACK:
                continue  # no point beneath can qualify
            if d + node.radius <= radius - _SLACK:
                # Whole subtree safely inside even after float error, so the
                # per-point test (which stays exact) can be skipped.
                _collect_ids(node, out)
                continue
            if node.children is None:
                for pid, pc in node.entries:
                    # inline distance: same accumulation order as the oracles
                    s = 0.0
                    for x, y in zip(qc, pc):
                        dd = x - y
                        s += dd * dd
                    if sqrt(s) <= radius:
                        out.append(pid)
            else:
                stack.extend(node.children)
        out.sort()
        return out

    def walk(self):
        """Yield every node, parents before their children."""
        if self.root is None:
            return
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if node.children:
                stack.extend(node.children)
