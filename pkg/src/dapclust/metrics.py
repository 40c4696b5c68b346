"""Clustering agreement scores."""

from collections import Counter


def _comb2(x: int) -> int:
    return x * (x - 1) // 2


def adjusted_rand_index(labels_a, labels_b) -> float:
    """Chance-corrected pair-counting agreement between two labelings.

    1.0 means identical partitions, values near 0 mean chance-level
    agreement. Label values are opaque, so the noise marker -1 simply acts as
    one more group on each side.
    """
    if len(labels_a) != len(labels_b):
        raise ValueError("labelings must have equal length")
    n = len(labels_a)
    if n < 2:
        return 1.0
    joint = Counter(zip(labels_a, labels_b))
    sum_joint = sum(_comb2(c) for c in joint.values())
    sum_a = sum(_comb2(c) for c in Counter(labels_a).values())
    sum_b = sum(_comb2(c) for c in Counter(labels_b).values())
    expected = sum_a * sum_b / _comb2(n)
    max_index = (sum_a + sum_b) / 2.0
    if max_index == expected:
        # Both partitions are trivial (all singletons or one block each).
        return 1.0
    return (sum_joint - expected) / (max_index - expected)
