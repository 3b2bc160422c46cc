import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hjelmslev_arcs.galois_ring import parse_ring
from hjelmslev_arcs.plane import NotUnimodularError, normalize, plane_for

TABLE = [("Z8", 112), ("Z9", 117), ("G16", 336), ("Z16", 448), ("Z25", 775), ("Z27", 1053)]


@pytest.mark.parametrize("name,size", TABLE + [("Z4", 28), ("F4", 21)])
def test_counts(name, size):
    plane = plane_for(parse_ring(name))
    assert plane.num_points == plane.num_lines == size == plane.expected_size
    assert len({tuple(r) for r in plane.point_reps}) == size


def test_normalize(g16):
    X, one, zero = g16.X, g16(1), g16(0)
    assert normalize((X, one, zero)) == (one, g16((3, 3)), zero)
    v = (one, g16((2, 1)), g16((3, 0)))
    assert normalize(v) == v
    Z4 = parse_ring("Z4")
    with pytest.raises(NotUnimodularError):
        normalize((Z4(2), Z4(2), Z4(2)))


@settings(max_examples=200, deadline=None)
@given(name=st.sampled_from(["Z4", "Z9", "G16", "Z25"]), data=st.data())
def test_normalize_is_quotient_map(name, data):
    R = parse_ring(name)
    units = [x for x in R.elements() if R.is_unit(x)]
    v = tuple(R.element(data.draw(st.integers(0, R.order - 1))) for _ in range(3))
    if not any(R.is_unit(c) for c in v):
        v = (v[0], R(1), v[2])
    s = data.draw(st.sampled_from(units))
    assert normalize(tuple(s * c for c in v)) == normalize(v)
    assert normalize(normalize(v)) == normalize(v)


def test_scalar_orbits_match_points(z4_plane):
    R = z4_plane.ring
    units = [x for x in R.elements() if R.is_unit(x)]
    classes = set()
    for v in itertools.product(R.elements(), repeat=3):
        if any(R.is_unit(c) for c in v):
            classes.add(frozenset(tuple(s * c for c in v) for s in units))
    assert len(classes) == z4_plane.num_points


def test_enumeration_sorted(g16_plane):
    reps = [tuple(r) for r in g16_plane.point_reps]
    assert reps == sorted(reps)


def test_incident_examples(g16_plane):
    P = g16_plane.point(g16_plane.find_point([(1, 0), (0, 0), (0, 0)]))
    L1 = g16_plane.line(g16_plane.find_line([(0, 0), (0, 0), (1, 0)]))
    L2 = g16_plane.line(g16_plane.find_line([(1, 0), (0, 0), (0, 0)]))
    assert g16_plane.incident(P, L1)
    assert not g16_plane.incident(P, L2)


@pytest.mark.parametrize("name,per_line", [("Z4", 6), ("G16", 20), ("Z8", 12), ("Z25", 30)])
def test_incidence_row_and_column_sums(name, per_line):
    plane = plane_for(parse_ring(name))
    M = plane.incidence
    assert M.shape == (plane.num_lines, plane.num_points)
    rows, cols = M.sum(axis=1), M.sum(axis=0)
    assert set(rows) == set(cols) == {per_line}
    q, m = plane.ring.q, plane.ring.m
    assert per_line == q ** (m - 1) * (q + 1)


def test_z4_incidence_matrix(z4_plane):
    assert z4_plane.incidence.shape == (28, 28)
    assert set(z4_plane.incidence.sum(axis=1)) == {6}


def test_g16_incidence_shape(g16_plane):
    assert g16_plane.incidence.shape == (336, 336)


@pytest.mark.parametrize("name", ["Z4", "Z9", "G16"])
def test_lines_are_free_rank_two(name):
    """The point set of each line is exactly the set of points in span(a, b)
    for two of its points that are independent mod p."""
    plane = plane_for(parse_ring(name))
    R = plane.ring
    els = range(R.order)
    for li in range(0, plane.num_lines, max(1, plane.num_lines // 12)):
        pts = plane.points_on_line[li]
        res = plane.neighbor_classes[pts]
        a = pts[0]
        b = next(p for p, c in zip(pts, res) if c != res[0])
        A, B = plane.point_reps[a], plane.point_reps[b]
        span = set()
        for s in els:
            for t in els:
                v = R.add_table[R.mul_table[s, A], R.mul_table[t, B]]
                if R.is_unit_table[v].any():
                    span.add(int(plane.index_of(v)))
        assert span == set(pts.tolist())


@pytest.mark.parametrize("name", ["Z4", "Z9", "G16"])
def test_lines_meeting_in_several_points(name):
    plane = plane_for(parse_ring(name))
    M = plane.incidence.astype(int)
    meet = M @ M.T
    np.fill_diagonal(meet, 0)
    assert meet.max() > 1


@pytest.mark.parametrize("name,classes,size", [("G16", 21, 16), ("Z9", 13, 9), ("Z4", 7, 4)])
def test_neighbor_classes(name, classes, size):
    plane = plane_for(parse_ring(name))
    counts = np.bincount(plane.neighbor_classes)
    assert len(counts) == classes and set(counts) == {size}
    P = plane.point(5)
    same = [i for i in range(plane.num_points)
            if (plane.ring.residue_table[plane.point_reps[i]] == plane.ring.residue_table[plane.point_reps[5]]).all()]
    assert {int(plane.neighbor_classes[i]) for i in same} == {plane.neighbor_class(P)}


def test_dump_format(z4_plane):
    text = z4_plane.dump().splitlines()
    assert text[0] == "# points"
    assert text[1] == "0: ((0,),(0,),(1,))"
    assert len(text) == 2 + 2 * 28
