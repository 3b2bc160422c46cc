"""Matrix groups acting on PHG(2, R), their orbits, and the condensed
orbit incidence matrix used to shrink the arc search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .galois_ring import GaloisRing, RingElement
from .plane import PlaneModel, plane_for


class SingularMatrixError(ValueError):
    pass


class OrbitCountMismatch(ValueError):
    pass


class RingMatrix:
    """A 3x3 matrix over a Galois ring, stored as element indices."""

    def __init__(self, ring: GaloisRing, entries):
        self.ring = ring
        arr = np.empty((3, 3), dtype=np.int64)
        for i in range(3):
            for j in range(3):
                e = entries[i][j]
                if isinstance(e, RingElement):
                    arr[i, j] = ring._idx(e)
                elif isinstance(e, (int, np.integer)):
                    arr[i, j] = int(e)
                else:
                    arr[i, j] = ring.index_of(e)
        self.entries = arr

    @classmethod
    def identity(cls, ring):
        e = np.full((3, 3), ring.zero)
        np.fill_diagonal(e, ring.one)
        return cls(ring, e)

    @classmethod
    def scalar(cls, ring, a: int):
        e = np.full((3, 3), ring.zero)
        np.fill_diagonal(e, a)
        return cls(ring, e)

    def __eq__(self, other):
        return (
            isinstance(other, RingMatrix)
            and other.ring == self.ring
            and np.array_equal(other.entries, self.entries)
        )

    def __hash__(self):
        return hash((self.ring.key, self.entries.tobytes()))

    def __repr__(self):
        rows = [[self.ring.coeffs_of(int(c)) for c in row] for row in self.entries]
        return f"RingMatrix({rows})"

    def to_coeffs(self) -> list:
        return [[list(self.ring.coeffs_of(int(c))) for c in row] for row in self.entries]

    def __matmul__(self, other: RingMatrix) -> RingMatrix:
        mul, add = self.ring.mul_table, self.ring.add_table
        out = np.empty((3, 3), dtype=np.int64)
        for i in range(3):
            for j in range(3):
                s = self.ring.zero
                for k in range(3):
                    s = add[s, mul[self.entries[i, k], other.entries[k, j]]]
                out[i, j] = s
        return RingMatrix(self.ring, out)

    def __pow__(self, e: int) -> RingMatrix:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = RingMatrix.identity(self.ring), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def _minor(self, i, j):
        rows = [a for a in range(3) if a != i]
        cols = [b for b in range(3) if b != j]
        mul, add, neg = self.ring.mul_table, self.ring.add_table, self.ring.neg_table
        e = self.entries
        return add[
            mul[e[rows[0], cols[0]], e[rows[1], cols[1]]],
            neg[mul[e[rows[0], cols[1]], e[rows[1], cols[0]]]],
        ]

    def det(self) -> int:
        add, mul, neg = self.ring.add_table, self.ring.mul_table, self.ring.neg_table
        d = self.ring.zero
        for j in range(3):
            term = mul[self.entries[0, j], self._minor(0, j)]
            d = add[d, term if j % 2 == 0 else neg[term]]
        return int(d)

    def is_invertible(self) -> bool:
        return bool(self.ring.is_unit_table[self.det()])

    def inverse(self) -> RingMatrix:
        """Adjugate divided by the determinant."""
        d = self.det()
        if not self.ring.is_unit_table[d]:
            raise SingularMatrixError(f"determinant {self.ring.coeffs_of(d)} is not a unit")
        dinv = self.ring.inv_table[d]
        mul, neg = self.ring.mul_table, self.ring.neg_table
        out = np.empty((3, 3), dtype=np.int64)
        for i in range(3):
            for j in range(3):
                c = self._minor(j, i)
                out[i, j] = mul[dinv, c if (i + j) % 2 == 0 else neg[c]]
        return RingMatrix(self.ring, out)

    def is_scalar(self) -> bool:
        e = self.entries
        off = e[~np.eye(3, dtype=bool)]
        return bool((off == self.ring.zero).all() and e[0, 0] == e[1, 1] == e[2, 2])

    def residue(self) -> RingMatrix:
        k = self.ring.residue_field
        return RingMatrix(k, self.ring.residue_table[self.entries])

    def projective_order(self, limit: int = 10**6) -> int:
        """Smallest j >= 1 with A^j a scalar matrix, i.e. the order of the
        collineation induced on the points."""
        power = self
        for j in range(1, limit + 1):
            if power.is_scalar():
                return j
            power = power @ self
        raise RuntimeError("projective order exceeds limit")

    def order(self, limit: int = 10**6) -> int:
        ident = RingMatrix.identity(self.ring)
        power = self
        for j in range(1, limit + 1):
            if power == ident:
                return j
            power = power @ self
        raise RuntimeError("order exceeds limit")

    # actions

    def _checked(self):
        if not self.is_invertible():
            raise SingularMatrixError(f"{self!r} is singular")

    def point_permutation(self, plane: PlaneModel) -> np.ndarray:
        """perm[i] = index of A . P_i (column vector action)."""
        self._checked()
        ring = self.ring
        mul, add = ring.mul_table, ring.add_table
        P, A = plane.point_reps, self.entries
        img = np.empty_like(P)
        for i in range(3):
            s = mul[A[i, 0], P[:, 0]]
            s = add[s, mul[A[i, 1], P[:, 1]]]
            img[:, i] = add[s, mul[A[i, 2], P[:, 2]]]
        return plane.index_of(img)

    def line_permutation(self, plane: PlaneModel) -> np.ndarray:
        """perm[i] = index of L_i . A^{-1} (row vector action on dual coordinates)."""
        ring = self.ring
        mul, add = ring.mul_table, ring.add_table
        L, B = plane.line_reps, self.inverse().entries
        img = np.empty_like(L)
        for j in range(3):
            s = mul[L[:, 0], B[0, j]]
            s = add[s, mul[L[:, 1], B[1, j]]]
            img[:, j] = add[s, mul[L[:, 2], B[2, j]]]
        return plane.index_of(img)


def act_on_point(A: RingMatrix, P, plane: PlaneModel):
    return plane.point(int(A.point_permutation(plane)[P.index]))


def act_on_line(A: RingMatrix, L, plane: PlaneModel):
    return plane.line(int(A.line_permutation(plane)[L.index]))


def _orbits_of(perms: list[np.ndarray], size: int) -> list[list[int]]:
    seen = np.zeros(size, dtype=bool)
    orbits = []
    for start in range(size):
        if seen[start]:
            continue
        seen[start] = True
        orbit, frontier = [start], [start]
        while frontier:
            nxt = []
            for x in frontier:
                for perm in perms:
                    y = int(perm[x])
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
                        nxt.append(y)
            frontier = nxt
        orbits.append(sorted(orbit))
    # scanning starts in index order, so orbits are already sorted by their minimum
    return orbits


@dataclass
class OrbitPartition:
    point_orbits: list[list[int]]
    line_orbits: list[list[int]]
    point_orbit_of: np.ndarray = field(repr=False)
    line_orbit_of: np.ndarray = field(repr=False)

    @property
    def k(self) -> int:
        return len(self.point_orbits)

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(o) for o in self.point_orbits]


def orbits(generators: list[RingMatrix], plane: PlaneModel) -> OrbitPartition:
    point_perms = [A.point_permutation(plane) for A in generators]
    line_perms = [A.line_permutation(plane) for A in generators]
    pts = _orbits_of(point_perms, plane.num_points)
    lns = _orbits_of(line_perms, plane.num_lines)
    if len(pts) != len(lns):
        raise OrbitCountMismatch(f"{len(pts)} point orbits but {len(lns)} line orbits")
    p_of = np.empty(plane.num_points, dtype=np.int64)
    l_of = np.empty(plane.num_lines, dtype=np.int64)
    for i, o in enumerate(pts):
        p_of[o] = i
    for i, o in enumerate(lns):
        l_of[o] = i
    return OrbitPartition(pts, lns, p_of, l_of)


@dataclass
class CondensedSystem:
    """Line-orbit x point-orbit intersection matrix with orbit sizes."""

    matrix: np.ndarray
    orbit_sizes: np.ndarray
    line_orbit_sizes: np.ndarray
    points_per_line: int
    lines_per_point: int

    @property
    def k(self) -> int:
        return len(self.orbit_sizes)


def condense(plane: PlaneModel, partition: OrbitPartition, representative: str = "min") -> CondensedSystem:
    """``matrix[i, j]`` = points of orbit j on a representative line of line orbit i.

    ``representative`` is ``"min"`` (smallest line index, the default) or
    ``"max"``; both must give the same matrix.
    """
    M = plane.incidence
    k = partition.k
    pick = min if representative == "min" else max
    reps = [pick(o) for o in partition.line_orbits]
    out = np.zeros((k, k), dtype=np.int64)
    rows = M[reps].astype(np.int64)
    for j, orbit in enumerate(partition.point_orbits):
        out[:, j] = rows[:, orbit].sum(axis=1)
    return CondensedSystem(
        matrix=out,
        orbit_sizes=np.array(partition.orbit_sizes, dtype=np.int64),
        line_orbit_sizes=np.array([len(o) for o in partition.line_orbits], dtype=np.int64),
        points_per_line=plane.points_per_line,
        lines_per_point=plane.lines_per_point,
    )


def _cubic_poly_mul_mod(a, b, g, field: GaloisRing):
    """Product of residues a, b (index lists, low degree first) mod monic cubic g."""
    mul, add, neg = field.mul_table, field.add_table, field.neg_table
    prod = [field.zero] * 5
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = add[prod[i + j], mul[x, y]]
    for d in (4, 3):
        c = prod[d]
        prod[d] = field.zero
        for i in range(3):
            prod[d - 3 + i] = add[prod[d - 3 + i], neg[mul[c, g[i]]]]
    return [int(c) for c in prod[:3]]


def _is_primitive_cubic(g, field: GaloisRing) -> bool:
    """X has multiplicative order q^3 - 1 modulo g (implies g irreducible)."""
    target = field.order**3 - 1
    one = [field.one, field.zero, field.zero]
    x = [field.zero, field.one, field.zero]
    power, n = x, 1
    while power != one:
        power = _cubic_poly_mul_mod(power, x, g, field)
        n += 1
        if n > target:
            return False
    return n == target


def singer_lift(ring: GaloisRing) -> RingMatrix:
    """A matrix over R whose residue is a Singer cycle of PG(2, F_q) and whose
    induced collineation has order q^2 + q + 1.

    Lifts the companion matrix C of the first primitive cubic over F_q, then
    returns C^k where the projective order of C is (q^2+q+1) k.  If some unit
    multiple of that power has matrix order exactly q^2+q+1, that multiple is
    returned instead.
    """
    field = ring.residue_field
    period = field.order**2 + field.order + 1
    for low in itertools.product(range(field.order), repeat=3):
        if low[0] == field.zero:
            continue
        if _is_primitive_cubic(list(low), field):
            break
    else:
        raise RuntimeError(f"no primitive cubic over {field}")
    # companion matrix of X^3 - g2 X^2 - g1 X - g0, with g given as X^3 + low[2] X^2 + ...
    c = [int(ring.neg_table[ring.index_of(field.coeffs_of(a))]) for a in low]
    z, one = ring.zero, ring.one
    C = RingMatrix(ring, [[z, z, c[0]], [one, z, c[1]], [z, one, c[2]]])
    total = C.projective_order(limit=(field.order**3) * ring.order**9)
    if total % period:
        raise RuntimeError(f"projective order {total} is not a multiple of {period}")
    A = C ** (total // period)
    lam = A**period
    for u in np.flatnonzero(ring.is_unit_table):
        if ring.pow_index(int(u), period) == ring.inv_table[lam.entries[0, 0]]:
            A = RingMatrix.scalar(ring, int(u)) @ A
            break
    return A


def resolve_group(directive, ring: GaloisRing) -> list[RingMatrix]:
    """``"trivial"``, ``"singer"``, or a list of 3x3 nested coefficient arrays."""
    if directive in (None, "trivial"):
        return []
    if directive == "singer":
        return [singer_lift(ring)]
    if isinstance(directive, str):
        raise ValueError(f"unknown group directive {directive!r}")
    gens = [g if isinstance(g, RingMatrix) else RingMatrix(ring, g) for g in directive]
    for g in gens:
        g._checked()
    return gens


def group_to_json(directive, generators: list[RingMatrix]):
    if isinstance(directive, str):
        return directive
    return [g.to_coeffs() for g in generators]


def condensed_for(ring: GaloisRing, directive="trivial"):
    """Plane, generators, orbit partition and condensed system in one call."""
    plane = plane_for(ring)
    gens = resolve_group(directive, ring)
    part = orbits(gens, plane)
    return plane, gens, part, condense(plane, part)
