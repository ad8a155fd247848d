"""Set partitions as restricted-growth strings.

A partition of ``n`` cells is encoded by one label per cell: the first cell
has label 0 and every cell either reuses an earlier label or opens the label
``max(previous) + 1``. The encoding is unique, so two partitions are equal iff
their label tuples are.
"""

import math
from collections.abc import Iterable, Iterator
from functools import cache

from pilot_clustering._core.exceptions import PartitionLimitError

MAX_ENUMERATION_CELLS = 12


def canonical_labels(labels: Iterable[int]) -> tuple[int, ...]:
    """Relabel blocks in order of first appearance."""
    mapping: dict[int, int] = {}
    return tuple(mapping.setdefault(label, len(mapping)) for label in labels)


def is_restricted_growth(labels: tuple[int, ...]) -> bool:
    highest = -1
    for label in labels:
        if label < 0 or label > highest + 1:
            return False
        highest = max(highest, label)
    return True


@cache
def bell_number(n: int) -> int:
    """Number of set partitions of ``n`` elements."""
    if n < 0:
        msg = f"Bell numbers are defined for n >= 0, got {n}"
        raise ValueError(msg)
    if n == 0:
        return 1
    return sum(math.comb(n - 1, k) * bell_number(k) for k in range(n))


def check_partition_limit(n: int) -> None:
    """Raise PartitionLimitError unless 1 <= n <= MAX_ENUMERATION_CELLS."""
    if not 1 <= n <= MAX_ENUMERATION_CELLS:
        msg = (
            f"Partition enumeration supports 1..{MAX_ENUMERATION_CELLS} cells, "
            f"got {n}"
        )
        raise PartitionLimitError(msg)


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Yield every restricted-growth string of length ``n`` in lexicographic order.

    Raises:
        PartitionLimitError: If n is outside 1..MAX_ENUMERATION_CELLS.
    """
    check_partition_limit(n)
    labels = [0] * n
    # highest[i] = max(labels[:i + 1])
    highest = [0] * n
    while True:
        yield tuple(labels)
        i = n - 1
        while i > 0 and labels[i] > highest[i - 1]:
            i -= 1
        if i == 0:
            return
        labels[i] += 1
        highest[i] = max(highest[i - 1], labels[i])
        for k in range(i + 1, n):
            labels[k] = 0
            highest[k] = highest[i]


__all__ = [
    "MAX_ENUMERATION_CELLS",
    "canonical_labels",
    "is_restricted_growth",
    "bell_number",
    "check_partition_limit",
    "restricted_growth_strings",
]
