"""Subsets of ``range(n)`` as Python ints."""

import numpy as np


def full(n):
    return (1 << n) - 1


def mask(items):
    m = 0
    for i in items:
        m |= 1 << int(i)
    return m


def members(m):
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def iter_bits(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def popcount(m):
    return bin(m).count("1")


def to_frozenset(m):
    return frozenset(members(m))


def row_masks(matrix):
    """One int per row: bit ``j`` of entry ``i`` is ``matrix[i, j]``."""
    matrix = np.asarray(matrix, dtype=bool)
    if matrix.size == 0:
        return [0] * matrix.shape[0]
    weights = [1 << j for j in range(matrix.shape[1])]
    return [sum(w for w, b in zip(weights, row) if b) for row in matrix.tolist()]


def sort_key(m):
    return (popcount(m), members(m))


def as_mask(subset):
    """Accept an int mask or any iterable of indices."""
    if isinstance(subset, (int, np.integer)):
        return int(subset)
    return mask(subset)


def downsets(need, cap=None):
    """All subsets ``D`` with ``need[x] ⊆ D`` for every ``x`` in ``D``.

    ``need[x]`` is the bitmask that must accompany ``x`` (it should contain
    ``x`` and be transitively closed).  Cycles are allowed: mutually needing
    elements are treated as one unit.  Results come back sorted by
    :func:`sort_key`.
    """
    n = len(need)
    units = []
    seen = 0
    for x in range(n):
        if seen >> x & 1:
            continue
        unit = 0
        for y in iter_bits(need[x]):
            if need[y] >> x & 1:
                unit |= 1 << y
        unit |= 1 << x
        seen |= unit
        req = 0
        for y in iter_bits(unit):
            req |= need[y]
        units.append((unit, req))
    # a unit's requirements strictly contain those of any unit it needs
    units.sort(key=lambda u: popcount(u[1]))
    out = []

    def rec(i, cur):
        if i == len(units):
            out.append(cur)
            if cap is not None and len(out) > cap:
                from .errors import SizeLimitExceeded
                raise SizeLimitExceeded(f"more than {cap} downsets")
            return
        rec(i + 1, cur)
        unit, req = units[i]
        if req & ~(cur | unit) == 0:
            rec(i + 1, cur | unit)

    rec(0, 0)
    return sorted(out, key=sort_key)
