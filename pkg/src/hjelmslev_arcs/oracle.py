"""Brute-force reference for PHG(2, Z_{p^m}), independent of the main code path.

Points are the sets of unit multiples of unimodular vectors in Z_N^3, and
lines are point sets of spans ``{a x + b y}`` of two points that stay
independent mod p.  No dot products, normal forms or orbit machinery are
shared with the rest of the package.  The maximal arc size is found by
plain subset enumeration.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def _prime_power(N):
    p = next(d for d in range(2, N + 1) if N % d == 0)
    return p


class BruteForcePlane:
    def __init__(self, N: int):
        self.N = N
        self.p = _prime_power(N)
        p = self.p
        units = [a for a in range(N) if a % p]
        vectors = [v for v in itertools.product(range(N), repeat=3) if any(c % p for c in v)]
        point_of = {}
        self.points = []
        for v in vectors:
            if v in point_of:
                continue
            orbit = frozenset(tuple(a * c % N for c in v) for a in units)
            for w in orbit:
                point_of[w] = len(self.points)
            self.points.append(orbit)
        self.point_of = point_of

        def independent_mod_p(x, y):
            xr = [c % p for c in x]
            yr = [c % p for c in y]
            cross = (
                xr[1] * yr[2] - xr[2] * yr[1],
                xr[2] * yr[0] - xr[0] * yr[2],
                xr[0] * yr[1] - xr[1] * yr[0],
            )
            return any(c % p for c in cross)

        reps = [min(o) for o in self.points]
        lines = set()
        for i, x in enumerate(reps):
            for y in reps[i + 1:]:
                if not independent_mod_p(x, y):
                    continue
                span = set()
                for a in range(N):
                    for b in range(N):
                        w = tuple((a * s + b * t) % N for s, t in zip(x, y))
                        if w in point_of:
                            span.add(point_of[w])
                lines.add(frozenset(span))
        self.lines = sorted(lines, key=sorted)
        self.line_masks = [sum(1 << i for i in line) for line in self.lines]

    def point_index(self, coords) -> int:
        return self.point_of[tuple(c % self.N for c in coords)]

    def is_arc(self, indices, u: int) -> bool:
        """Every line carries at most u of the given points (with multiplicity)."""
        return all(sum(1 for i in indices if i in line) <= u for line in self.lines)

    def max_line_count(self, indices) -> int:
        return max(sum(1 for i in indices if i in line) for line in self.lines)


def exists_arc(plane: BruteForcePlane, n: int, u: int):
    """Some n-subset with at most u points on every line, or None."""
    P = len(plane.points)
    through = [[li for li, m in enumerate(plane.line_masks) if m >> i & 1] for i in range(P)]
    counts = [0] * len(plane.lines)
    chosen = []

    def rec(i):
        if len(chosen) == n:
            return list(chosen)
        if P - i < n - len(chosen):
            return None
        ok = all(counts[li] < u for li in through[i])
        if ok:
            for li in through[i]:
                counts[li] += 1
            chosen.append(i)
            found = rec(i + 1)
            if found is not None:
                return found
            chosen.pop()
            for li in through[i]:
                counts[li] -= 1
        return rec(i + 1)

    return rec(0)


def max_arc(plane: BruteForcePlane, u: int):
    """(maximal n, witness) by increasing n until no n-subset is an arc."""
    best = []
    for n in range(1, len(plane.points) + 1):
        found = exists_arc(plane, n, u)
        if found is None:
            break
        best = found
    return len(best), best


@lru_cache(maxsize=None)
def brute_force_plane(N: int) -> BruteForcePlane:
    return BruteForcePlane(N)
