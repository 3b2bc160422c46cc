import itertools

import numpy as np
import pytest

from hjelmslev_arcs.galois_ring import parse_ring
from hjelmslev_arcs.groups import (
    OrbitCountMismatch, RingMatrix, SingularMatrixError, act_on_line, act_on_point, condense,
    condensed_for, orbits, resolve_group, singer_lift,
)
from hjelmslev_arcs.plane import plane_for


def random_invertible(ring, rng, count):
    out = []
    while len(out) < count:
        A = RingMatrix(ring, rng.integers(0, ring.order, size=(3, 3)))
        if A.is_invertible():
            out.append(A)
    return out


def test_inverse_and_determinant_z4():
    Z4 = parse_ring("Z4")
    ident = RingMatrix.identity(Z4)
    rng = np.random.default_rng(1)
    checked = 0
    for _ in range(200):
        A = RingMatrix(Z4, rng.integers(0, 4, size=(3, 3)))
        if A.is_invertible():
            assert A @ A.inverse() == ident == A.inverse() @ A
            checked += 1
        else:
            with pytest.raises(SingularMatrixError):
                A.inverse()
    assert checked > 20


def test_invertible_iff_exhaustive_inverse_exists():
    """Over Z2 x Z2 ... use F2 = Z2 where GL(3) membership can be enumerated."""
    F2 = parse_ring("Z2")
    all_mats = [RingMatrix(F2, np.array(e).reshape(3, 3)) for e in itertools.product(range(2), repeat=9)]
    ident = RingMatrix.identity(F2)
    for A in all_mats[::7]:
        has_inverse = any(A @ B == ident for B in all_mats)
        assert has_inverse == A.is_invertible()


def test_identity_fixes_everything(g16_plane):
    ident = RingMatrix.identity(g16_plane.ring)
    assert (ident.point_permutation(g16_plane) == np.arange(336)).all()
    assert (ident.line_permutation(g16_plane) == np.arange(336)).all()


def test_action_is_bijection_and_homomorphism(g16_plane):
    rng = np.random.default_rng(3)
    A, B = random_invertible(g16_plane.ring, rng, 2)
    pa, pb = A.point_permutation(g16_plane), B.point_permutation(g16_plane)
    assert sorted(pa) == list(range(336))
    assert (( A @ B).point_permutation(g16_plane) == pa[pb]).all()
    P = g16_plane.point(17)
    assert act_on_point(A, act_on_point(B, P, g16_plane), g16_plane) == act_on_point(A @ B, P, g16_plane)


def test_incidence_preserved_z4(z4_plane):
    rng = np.random.default_rng(7)
    M = z4_plane.incidence
    for A in random_invertible(z4_plane.ring, rng, 10):
        pp, lp = A.point_permutation(z4_plane), A.line_permutation(z4_plane)
        for L, P in itertools.product(range(28), range(28)):
            assert M[L, P] == M[lp[L], pp[P]]
    L, P = z4_plane.line(3), z4_plane.point(5)
    assert z4_plane.incident(P, L) == z4_plane.incident(act_on_point(A, P, z4_plane), act_on_line(A, L, z4_plane))


def test_singular_generator_rejected(g16_plane):
    S = RingMatrix(g16_plane.ring, np.zeros((3, 3), dtype=int))
    with pytest.raises(SingularMatrixError):
        orbits([S], g16_plane)


def test_trivial_group(z4_plane):
    part = orbits([], z4_plane)
    assert part.k == 28 and set(part.orbit_sizes) == {1}
    system = condense(z4_plane, part)
    assert np.array_equal(system.matrix, z4_plane.incidence)


def test_singer_g16(g16_plane):
    A = singer_lift(g16_plane.ring)
    assert A.projective_order() == 21
    assert (A ** 21).is_scalar()
    assert not any((A ** j).is_scalar() for j in range(1, 21))
    # residue acts transitively on PG(2, F4)
    res_plane = plane_for(g16_plane.ring.residue_field)
    perm = A.residue().point_permutation(res_plane)
    orbit, x = {0}, 0
    for _ in range(21):
        x = int(perm[x])
        orbit.add(x)
    assert len(orbit) == 21


def test_singer_z25_exact_order():
    R = parse_ring("Z25")
    A = singer_lift(R)
    assert A.order() == 31 == A.projective_order()
    assert A ** 31 == RingMatrix.identity(R)


@pytest.mark.parametrize("name,k,length", [("G16", 16, 21), ("Z25", 25, 31), ("Z9", 9, 13), ("Z8", 16, 7)])
def test_singer_orbits(name, k, length):
    plane, gens, part, system = condensed_for(parse_ring(name), "singer")
    assert part.k == k
    assert set(part.orbit_sizes) == {length}
    assert {len(o) for o in part.line_orbits} == {length}
    assert system.matrix.shape == (k, k)
    assert set(system.matrix.sum(axis=1)) == {plane.points_per_line}
    # orbits are numbered by smallest member
    assert [o[0] for o in part.point_orbits] == sorted(o[0] for o in part.point_orbits)


def test_singer_orbits_meet_every_class_once(g16_plane):
    part = orbits([singer_lift(g16_plane.ring)], g16_plane)
    for o in part.point_orbits:
        assert sorted(g16_plane.neighbor_classes[o]) == list(range(21))


def test_residues_of_orbits_are_residue_orbits():
    plane, gens, part, _ = condensed_for(parse_ring("Z9"), "singer")
    res_plane = plane.residue_plane
    res_part = orbits([gens[0].residue()], res_plane)
    res_orbit_of = res_part.point_orbit_of
    for o in part.point_orbits:
        classes = plane.neighbor_classes[o]
        assert len({int(res_orbit_of[c]) for c in classes}) == 1


@pytest.mark.parametrize("name", ["G16", "Z25", "Z9"])
def test_condensation_representative_independent(name):
    plane, gens, part, system = condensed_for(parse_ring(name), "singer")
    assert np.array_equal(condense(plane, part, representative="max").matrix, system.matrix)


def test_orbit_count_equality_for_random_groups(z4_plane):
    rng = np.random.default_rng(11)
    for A in random_invertible(z4_plane.ring, rng, 10):
        part = orbits([A], z4_plane)
        assert len(part.point_orbits) == len(part.line_orbits)


def test_orbit_count_mismatch_is_an_error(monkeypatch, z4_plane):
    import hjelmslev_arcs.groups as groups

    real = groups._orbits_of
    calls = []

    def fake(perms, size):
        calls.append(size)
        out = real(perms, size)
        return out[:-1] + [out[-1]] if len(calls) == 1 else out[:-2] + [out[-2] + out[-1]]

    monkeypatch.setattr(groups, "_orbits_of", fake)
    with pytest.raises(OrbitCountMismatch):
        groups.orbits([], z4_plane)


def test_resolve_group_explicit(g16):
    A = singer_lift(g16)
    gens = resolve_group([A.to_coeffs()], g16)
    assert gens == [A]
    with pytest.raises(ValueError):
        resolve_group("cyclic", g16)
