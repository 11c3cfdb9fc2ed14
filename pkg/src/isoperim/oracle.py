"""Brute-force ground truth: enumerate every set of a given volume."""

from __future__ import annotations

from collections.abc import Iterator

from .sets import IntSet, complement_perimeter, perimeter

DEFAULT_CEILING = 70


class CeilingError(ValueError):
    pass


def _check(n: int, ceiling: int) -> None:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > ceiling:
        raise CeilingError(f"brute force refuses n = {n} above its ceiling {ceiling}")


def _distinct_parts(n: int, largest: int) -> Iterator[list[int]]:
    # descending distinct positive parts, each <= largest
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        # the remaining parts are < part, so they sum to at most T(part - 1)
        if part * (part - 1) // 2 < n - part:
            break
        for rest in _distinct_parts(n - part, part - 1):
            yield [part, *rest]


def enumerate_volume_sets(n: int, ceiling: int = DEFAULT_CEILING) -> Iterator[IntSet]:
    """Every subset of {0, ..., n} with volume ``n``, each exactly once.

    Element 0 contributes nothing to the volume, so each partition of ``n`` into
    distinct positive parts appears twice: without and with 0.
    """
    _check(n, ceiling)
    for parts in _distinct_parts(n, n):
        asc = tuple(reversed(parts))
        yield IntSet(asc)
        yield IntSet((0, *asc))


def count_distinct_partitions(n: int) -> int:
    """Partitions of ``n`` into distinct positive parts, by a 0/1 knapsack count."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(n, part - 1, -1):
            ways[total] += ways[total - part]
    return ways[n]


def _argmin(n: int, cost, ceiling: int) -> tuple[int, list[IntSet]]:
    best = None
    witnesses: list[IntSet] = []
    for a in enumerate_volume_sets(n, ceiling):
        c = cost(a)
        if best is None or c < best:
            best, witnesses = c, [a]
        elif c == best:
            witnesses.append(a)
    return best, witnesses


def brute_P(n: int, ceiling: int = DEFAULT_CEILING) -> int:
    return _argmin(n, perimeter, ceiling)[0]


def brute_Q(n: int, ceiling: int = DEFAULT_CEILING) -> int:
    return _argmin(n, complement_perimeter, ceiling)[0]


def witnesses_P(n: int, ceiling: int = DEFAULT_CEILING) -> list[IntSet]:
    """All volume-``n`` sets attaining the minimum perimeter."""
    return _argmin(n, perimeter, ceiling)[1]


def witnesses_Q(n: int, ceiling: int = DEFAULT_CEILING) -> list[IntSet]:
    return _argmin(n, complement_perimeter, ceiling)[1]


def brute_helper(n: int, k: int, kind: str, ceiling: int = DEFAULT_CEILING) -> int | None:
    """Restricted minima over subsets of {0, ..., k}; ``None`` stands for infinity.

    ``kind`` is ``"p"`` (perimeter), ``"q"`` (complement perimeter) or
    ``"sigma"`` (complement perimeter, ``k`` required in the set).  This is the
    literal definition, so ``sigma(0; 0)`` comes out as 1 here while the DP
    tables pin it to 0 as boundary data; the recurrences never read that cell.
    """
    if n < 0:
        return None
    cost = perimeter if kind == "p" else complement_perimeter
    best = None
    for a in enumerate_volume_sets(n, ceiling):
        top = a.max if a.elements else -1
        if top > k or (kind == "sigma" and top != k):
            continue
        c = cost(a)
        if best is None or c < best:
            best = c
    return best
