"""The projective Hjelmslev plane PHG(2, R) over a Galois ring R.

Points and lines are both stored as normalized unimodular triples of ring
element indices (an ``(N, 3)`` integer array); a line ``L`` contains a point
``P`` iff the dot product ``L . P`` is zero in R.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .galois_ring import GaloisRing, RingElement


class NotUnimodularError(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    rep: tuple[RingElement, RingElement, RingElement]
    index: int


@dataclass(frozen=True)
class Line:
    rep: tuple[RingElement, RingElement, RingElement]
    index: int


def normalize_indices(ring: GaloisRing, vecs: np.ndarray) -> np.ndarray:
    """Scale each row by the inverse of its leftmost unit coordinate.

    ``vecs`` is an ``(N, 3)`` array of element indices; raises
    NotUnimodularError if some row has no unit.
    """
    vecs = np.asarray(vecs, dtype=np.int64)
    units = ring.is_unit_table[vecs]
    if not units.any(axis=1).all():
        bad = vecs[~units.any(axis=1)][0]
        raise NotUnimodularError(f"vector {tuple(ring.coeffs_of(c) for c in bad)} has no unit coordinate")
    lead = np.argmax(units, axis=1)
    scale = ring.inv_table[vecs[np.arange(len(vecs)), lead]]
    return ring.mul_table[scale[:, None], vecs]


def normalize(v) -> tuple[RingElement, RingElement, RingElement]:
    """Canonical representative u^{-1} v, u the leftmost unit coordinate."""
    ring = v[0].ring
    row = normalize_indices(ring, np.array([[ring._idx(c) for c in v]]))[0]
    return tuple(ring.element(int(c)) for c in row)


def dot_indices(ring: GaloisRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise R-dot product of broadcastable (..., 3) index arrays."""
    mul, add = ring.mul_table, ring.add_table
    s = mul[a[..., 0], b[..., 0]]
    s = add[s, mul[a[..., 1], b[..., 1]]]
    return add[s, mul[a[..., 2], b[..., 2]]]


def normalized_triples(ring: GaloisRing) -> np.ndarray:
    """All normalized unimodular triples, sorted lexicographically."""
    units = ring.is_unit_table
    rows = []
    for v in itertools.product(range(ring.order), repeat=3):
        for c in v:
            if units[c]:
                if c == ring.one:
                    rows.append(v)
                break
    return np.array(rows, dtype=np.int64).reshape(-1, 3)


class PlaneModel:
    """PHG(2, R): points, lines, incidence and neighbor classes."""

    def __init__(self, ring: GaloisRing):
        self.ring = ring
        self.point_reps = normalized_triples(ring)
        # dual coordinates share the normal form
        self.line_reps = self.point_reps
        n = ring.order
        self._lookup = np.full(n**3, -1, dtype=np.int64)
        codes = self._encode(self.point_reps)
        self._lookup[codes] = np.arange(len(codes))

    def _encode(self, vecs: np.ndarray) -> np.ndarray:
        n = self.ring.order
        return (vecs[..., 0] * n + vecs[..., 1]) * n + vecs[..., 2]

    def __repr__(self):
        return f"PHG(2,{self.ring.short_name})"

    @property
    def num_points(self) -> int:
        return len(self.point_reps)

    @property
    def num_lines(self) -> int:
        return len(self.line_reps)

    @property
    def expected_size(self) -> int:
        q, m = self.ring.q, self.ring.m
        return (q * q + q + 1) * q ** (2 * (m - 1))

    def index_of(self, vecs: np.ndarray) -> np.ndarray:
        """Point (or line) indices of arbitrary unimodular index triples."""
        vecs = np.asarray(vecs, dtype=np.int64)
        flat = normalize_indices(self.ring, vecs.reshape(-1, 3))
        return self._lookup[self._encode(flat)].reshape(vecs.shape[:-1])

    def point(self, i: int) -> Point:
        return Point(tuple(self.ring.element(int(c)) for c in self.point_reps[i]), int(i))

    def line(self, i: int) -> Line:
        return Line(tuple(self.ring.element(int(c)) for c in self.line_reps[i]), int(i))

    def points(self) -> list[Point]:
        return [self.point(i) for i in range(self.num_points)]

    def lines(self) -> list[Line]:
        return [self.line(i) for i in range(self.num_lines)]

    def find_point(self, coords) -> int:
        ring = self.ring
        vec = [ring._idx(c) if isinstance(c, RingElement) else ring.index_of(c) for c in coords]
        return int(self.index_of(np.array(vec)))

    find_line = find_point

    def incident(self, P: Point, L: Line) -> bool:
        return bool(self.incidence[L.index, P.index])

    @cached_property
    def functional_values(self) -> np.ndarray:
        """values[L, P] = index of dot(L.rep, P.rep) in R."""
        return dot_indices(self.ring, self.line_reps[:, None, :], self.point_reps[None, :, :])

    @cached_property
    def incidence(self) -> np.ndarray:
        """0/1 matrix, rows = lines, columns = points."""
        return (self.functional_values == self.ring.zero).astype(np.uint8)

    def incidence_matrix(self) -> np.ndarray:
        return self.incidence

    @cached_property
    def points_on_line(self) -> list[np.ndarray]:
        return [np.flatnonzero(row) for row in self.incidence]

    @cached_property
    def lines_through_point(self) -> list[np.ndarray]:
        return [np.flatnonzero(col) for col in self.incidence.T]

    @cached_property
    def points_per_line(self) -> int:
        sums = self.incidence.sum(axis=1)
        assert (sums == sums[0]).all()
        return int(sums[0])

    @cached_property
    def lines_per_point(self) -> int:
        sums = self.incidence.sum(axis=0)
        assert (sums == sums[0]).all()
        return int(sums[0])

    # neighbor classes

    @cached_property
    def residue_plane(self) -> PlaneModel:
        if self.ring.m == 1:
            return self
        return plane_for(self.ring.residue_field)

    @cached_property
    def neighbor_classes(self) -> np.ndarray:
        """Point index in PG(2, F_q) of the residue image of every point."""
        res = self.ring.residue_table[self.point_reps]
        return self.residue_plane.index_of(res)

    def neighbor_class(self, P: Point) -> int:
        return int(self.neighbor_classes[P.index])

    @cached_property
    def line_neighbor_classes(self) -> np.ndarray:
        res = self.ring.residue_table[self.line_reps]
        return self.residue_plane.index_of(res)

    def dump(self) -> str:
        """``idx: (c0,c1,c2)`` per point, then per line."""
        def fmt(reps):
            return [
                f"{i}: (" + ",".join(str(self.ring.coeffs_of(int(c))) for c in row) + ")"
                for i, row in enumerate(reps)
            ]
        return "\n".join(["# points", *fmt(self.point_reps), "# lines", *fmt(self.line_reps)])


_PLANES: dict[GaloisRing, PlaneModel] = {}


def plane_for(ring: GaloisRing) -> PlaneModel:
    """Cached PlaneModel per ring."""
    if ring not in _PLANES:
        _PLANES[ring] = PlaneModel(ring)
    return _PLANES[ring]


def enumerate_points(ring: GaloisRing) -> list[Point]:
    return plane_for(ring).points()


def enumerate_lines(ring: GaloisRing) -> list[Line]:
    return plane_for(ring).lines()
