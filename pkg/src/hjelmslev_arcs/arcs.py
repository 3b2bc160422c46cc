"""Arc-level operations that only use plane incidence: expansion of orbit
selections, verification, secant distributions and greedy extension."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .groups import OrbitPartition, RingMatrix
from .plane import PlaneModel
from .search import ArcSolution


class NotAnArcError(ValueError):
    pass


def expand(solution: ArcSolution, partition: OrbitPartition) -> list[int]:
    """Point multiset (sorted index list) selected by the orbit vector x."""
    if len(solution.x) != partition.k:
        raise ValueError(f"solution has {len(solution.x)} variables, partition {partition.k} orbits")
    points = []
    for orbit, mult in zip(partition.point_orbits, solution.x):
        for _ in range(int(mult)):
            points.extend(orbit)
    points.sort()
    solution.points = points
    return points


def multiplicities(points, plane: PlaneModel) -> np.ndarray:
    mult = np.zeros(plane.num_points, dtype=np.int64)
    for i in points:
        if not 0 <= int(i) < plane.num_points:
            raise IndexError(f"point index {i} out of range")
        mult[int(i)] += 1
    return mult


def line_counts(points, plane: PlaneModel) -> np.ndarray:
    """Points of the multiset on every line, multiplicities counted."""
    return plane.incidence.astype(np.int64) @ multiplicities(points, plane)


@dataclass
class VerifyReport:
    max_line_count: int
    is_arc: bool
    attains_u: bool
    projective: bool
    size: int
    violated_lines: list[int] = field(default_factory=list)


def verify(points, plane: PlaneModel, u: int) -> VerifyReport:
    counts = line_counts(points, plane)
    mult = multiplicities(points, plane)
    top = int(counts.max()) if len(counts) else 0
    return VerifyReport(
        max_line_count=top,
        is_arc=top <= u,
        attains_u=top == u,
        projective=bool((mult <= 1).all()),
        size=int(mult.sum()),
        violated_lines=[int(i) for i in np.flatnonzero(counts > u)],
    )


def secant_distribution(points, plane: PlaneModel) -> dict[int, int]:
    """{intersection size: number of lines}."""
    return dict(sorted(Counter(int(c) for c in line_counts(points, plane)).items()))


def extend(points, plane: PlaneModel, u: int) -> list[int]:
    """Add admissible new points in ascending index order until none is left."""
    counts = line_counts(points, plane)
    if counts.max(initial=0) > u:
        raise NotAnArcError("input exceeds u on some line")
    inside = set(int(i) for i in points)
    result = sorted(int(i) for i in points)
    for P in range(plane.num_points):
        if P in inside:
            continue
        through = plane.lines_through_point[P]
        if (counts[through] < u).all():
            counts[through] += 1
            inside.add(P)
            result.append(P)
    return sorted(result)


def is_invariant(points, generators: list[RingMatrix], plane: PlaneModel) -> bool:
    """Every generator maps the point multiset onto itself."""
    mult = multiplicities(points, plane)
    for A in generators:
        perm = A.point_permutation(plane)
        image = np.zeros_like(mult)
        image[perm] = mult
        if not np.array_equal(image, mult):
            return False
    return True


def neighbor_class_counts(points, plane: PlaneModel) -> dict[int, int]:
    classes = plane.neighbor_classes[np.asarray(points, dtype=np.int64)]
    return dict(sorted(Counter(int(c) for c in classes).items()))
