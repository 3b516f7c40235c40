from dataclasses import replace
from fractions import Fraction as F

import pytest

from tables import G_MAP, LATTES, pair
from unmating.connection import outline, search
from unmating.unmate import (
    EdgeSubstitution, UnmateError, base_angle, compose, edge_matrix, is_primitive,
    matmul, nullspace, pf_vector, substitution, unmate,
)


def test_matrix_and_lengths(lattes, pres_conn):
    w = outline(lattes, pres_conn)
    m = edge_matrix(w)
    assert m == ((2, 2, 1), (2, 1, 2), (0, 1, 1))
    l = pf_vector(m, 4)
    assert l == (F(7, 15), F(6, 15), F(2, 15))
    ml = [sum(m[i][j] * l[j] for j in range(3)) for i in range(3)]
    assert ml == [4 * x for x in l]


def test_preserving_connection_portraits(lattes, pres_conn):
    u = unmate(lattes, pres_conn)
    assert (u.portraits.white, u.portraits.black) == pair(LATTES[0])


def test_column_sums_equal_degree(lattes, ghex):
    for s in (lattes, ghex):
        for pe in search(s, "preserving"):
            m = edge_matrix(pe.walk)
            assert all(sum(r[j] for r in m) == s.degree for j in range(s.k))


def test_angles_wrap_once(lattes, ghex):
    for s in (lattes, ghex):
        for pe in search(s, "preserving"):
            u = unmate(s, pe.connection, pe.walk)
            assert u.angles.total == 1
            assert sum(u.lengths) == 1


def test_post_angles_are_consistent(lattes, pres_conn):
    # a post fixed by f sits at angle 0; its image under angle
    # multiplication agrees with the post it maps to
    u = unmate(lattes, pres_conn)
    angles = u.angles.post_angles(u.walk)
    assert angles[0] == 0
    for j, theta in angles.items():
        img = lattes.vertices[lattes.post_vertex(j)].image
        assert (4 * theta) % 1 == angles[img]


def test_base_angle_cases(lattes):
    l = (F(7, 15), F(6, 15), F(2, 15))
    assert base_angle(lattes, l) == 0
    moved = replace(lattes, vertices=dict(lattes.vertices))
    v = lattes.post_vertex(0)
    moved.vertices[v] = replace(lattes.vertices[v], image=2)
    assert base_angle(moved, l) == (l[0] + l[1]) / 3


def test_reversing_connection_refused(lattes, rev_conn):
    with pytest.raises(UnmateError):
        unmate(lattes, rev_conn)


def test_pf_vector_errors():
    with pytest.raises(UnmateError):
        pf_vector(((1, 0), (0, 1)), 2)  # column sums wrong
    with pytest.raises(UnmateError):
        pf_vector(((2, 0), (0, 2)), 2)  # not primitive


def test_primitivity():
    assert is_primitive(((0, 1), (1, 1)))
    assert not is_primitive(((0, 1), (1, 0)))


def test_nullspace():
    basis = nullspace([[1, 2], [2, 4]])
    assert len(basis) == 1
    assert basis[0][0] + 2 * basis[0][1] == 0
    assert nullspace([[1, 0], [0, 1]]) == []


def test_reversing_square_is_preserving(lattes, rev_conn):
    sub = substitution(outline(lattes, rev_conn))
    assert sub.preserving is False
    sq = compose(sub, sub)
    assert sq.preserving is True
    assert sq.matrix == matmul(sub.matrix, sub.matrix)
    assert all(sum(r[j] for r in sq.matrix) == 16 for j in range(3))


def test_compose_matrix_is_product(lattes):
    pes = search(lattes, "all")
    subs = [substitution(pe.walk) for pe in pes if pe.orientation.value != "incompatible"]
    for a in subs[:6]:
        for b in subs[:6]:
            c = compose(a, b)
            assert c.matrix == matmul(a.matrix, b.matrix)
            if a.preserving is not None and b.preserving is not None:
                assert c.preserving == (a.preserving == b.preserving)


def test_compose_size_mismatch():
    a = EdgeSubstitution((((0, 1),),))
    b = EdgeSubstitution((((0, 1),), ((1, 1),)))
    with pytest.raises(UnmateError):
        compose(a, b)


def test_g_portraits_reproduced(ghex):
    got = set()
    for pe in search(ghex, "preserving"):
        u = unmate(ghex, pe.connection, pe.walk)
        got.add((u.portraits.white, u.portraits.black))
    for entry in G_MAP:
        assert pair(entry) in got
