"""Small combinatorial iteration helpers."""

from __future__ import annotations


def multiset_permutations(items):
    """Distinct permutations of a multiset, in lexicographic order."""
    items = sorted(items)
    n = len(items)
    if n == 0:
        yield ()
        return
    counts = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    keys = sorted(counts)

    def rec(prefix, remaining):
        if remaining == 0:
            yield tuple(prefix)
            return
        for x in keys:
            if counts[x]:
                counts[x] -= 1
                prefix.append(x)
                yield from rec(prefix, remaining - 1)
                prefix.pop()
                counts[x] += 1

    yield from rec([], n)


def weak_compositions(total, parts):
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest
