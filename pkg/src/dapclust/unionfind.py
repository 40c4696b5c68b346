"""Disjoint-set forest with union by rank and path compression.

The merge substrate for every clusterer in the package: each point starts as
its own set and sets fuse as similarities are discovered. ``op_count`` and
``hop_count`` record the number of public operations and the parent-pointer
traversals they performed, which is what the amortised-cost checks in the
test suite measure.
"""


class UnionFind:
    __slots__ = ("parent", "rank", "op_count", "hop_count")

    def __init__(self, n: int):
        """Create n singleton sets over the elements 0..n-1."""
        if n < 0:
            raise ValueError("n must be non-negative")
        self.parent = list(range(n))
        self.rank = [0] * n
        self.op_count = 0
        self.hop_count = 0

    def __len__(self) -> int:
        return len(self.parent)

    def _check(self, x: int) -> None:
        if not 0 <= x < len(self.parent):
            raise IndexError(f"element {x} out of range 0..{len(self.parent) - 1}")

    def _root(self, x: int) -> int:
        # Two passes: walk to the root counting hops, then point every node on
        # the path straight at it.
        parent = self.parent
        root = x
        hops = 0
        while parent[root] != root:
            root = parent[root]
            hops += 1
        self.hop_count += hops
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def find(self, x: int) -> int:
        """Canonical root of x's set; compresses the path it walks."""
        self._check(x)
        self.op_count += 1
        return self._root(x)

    def union(self, x: int, y: int) -> int:
        """Merge the sets of x and y (union by rank); returns the merged root.

        A no-op when x and y already share a set.
        """
        self._check(x)
        self._check(y)
        self.op_count += 1
        rx = self._root(x)
        ry = self._root(y)
        if rx == ry:
            return rx
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return rx

    def num_sets(self) -> int:
        """Number of distinct sets."""
        return sum(1 for i, p in enumerate(self.parent) if i == p)

    def labels(self) -> list[int]:
        """Canonical label per element: the minimum id of its set.

        Labels are therefore independent of the order unions were applied in.
        """
        n = len(self.parent)
        mins: dict[int, int] = {}
        out = [0] * n
        for i in range(n):
            r = self._root(i)
            if r not in mins:
                mins[r] = i
            out[i] = mins[r]
        return out

    def components(self) -> list[list[int]]:
        """The partition as member lists, ordered by each set's minimum element."""
        groups: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            groups.setdefault(self._root(i), []).append(i)
        return sorted(groups.values(), key=lambda g: g[0])
