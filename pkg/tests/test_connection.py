import pytest

from conftest import data_path
from unmating.complex import faces
from unmating.connection import (
    Connection, ConnectionDataError, Orientation, OutlineError, all_connections, classify,
    is_spanning_tree, outline, parse_connection, search, tree_excess, white_graph,
)


def test_preserving_connection_is_tree(lattes, pres_conn):
    assert is_spanning_tree(white_graph(lattes, pres_conn))
    assert tree_excess(lattes, pres_conn) == lattes.degree - 1


def test_outline_preserving(lattes, pres_conn):
    w = outline(lattes, pres_conn)
    assert len(w) == lattes.k * lattes.degree
    cl = classify(lattes, w)
    assert cl.orientation is Orientation.PRESERVING
    assert cl.certificate(lattes) == "-1 1 inf"
    assert cl.isotopy_verified


def test_outline_reversing(lattes, rev_conn):
    cl = classify(lattes, outline(lattes, rev_conn))
    assert cl.orientation is Orientation.REVERSING
    assert cl.certificate(lattes) == "-1 inf 1"


def test_walk_reversal_swaps_classification(lattes, pres_conn, rev_conn):
    for conn, swapped in ((pres_conn, Orientation.REVERSING), (rev_conn, Orientation.PRESERVING)):
        w = outline(lattes, conn)
        assert classify(lattes, w.reversed()).orientation is swapped
        assert w.reversed().reversed() == w


def test_lattes_has_125_connections(lattes):
    assert sum(1 for _ in all_connections(lattes)) == 125


def test_outline_closes_iff_tree(lattes):
    trees = 0
    for conn in all_connections(lattes):
        tree = is_spanning_tree(white_graph(lattes, conn))
        try:
            w = outline(lattes, conn)
            closes = len(w) == 12
        except OutlineError:
            closes = False
        assert closes == tree
        trees += tree
    assert trees > 0


def test_tree_invariants(lattes, ghex):
    for s in (lattes, ghex):
        for conn in all_connections(s):
            if not is_spanning_tree(white_graph(s, conn)):
                continue
            w = outline(s, conn)
            mult = w.multiplicity()
            for v in s.vertices:
                assert mult.get(v, 0) == s.local_degree(v)
            assert tree_excess(s, conn) == s.degree - 1
            assert sorted(w.post_order()) == list(range(s.k))


def test_white_graph_shape(lattes, pres_conn):
    g = white_graph(lattes, pres_conn)
    tiles = [n for n in g if n[0] == "tile"]
    assert len(tiles) == lattes.degree
    # one graph edge per white sector
    assert g.number_of_edges() == sum(lattes.local_degree(v) for v in lattes.vertices)


def test_search_modes_partition_trees(lattes):
    by_mode = {m: search(lattes, m) for m in ("preserving", "reversing", "incompatible")}
    everything = search(lattes, "all")
    assert len(everything) == sum(len(v) for v in by_mode.values())
    assert len(by_mode["preserving"]) == 18
    assert len(by_mode["reversing"]) == 8


def test_search_deterministic_under_workers(lattes):
    one = [pe.connection.serialize() for pe in search(lattes, "all", workers=1)]
    many = [pe.connection.serialize() for pe in search(lattes, "all", workers=3)]
    assert one == many


def test_parse_errors(lattes):
    with pytest.raises(ConnectionDataError):
        parse_connection("conn nowhere block 0 2", lattes)
    with pytest.raises(ConnectionDataError):
        parse_connection("conn c0 block 0 3", lattes)
    with pytest.raises(ConnectionDataError):
        parse_connection("frobnicate", lattes)
    with pytest.raises(ConnectionDataError):
        parse_connection("mark m1 0 0\nmark m1 0 0", lattes)


def test_unmarked_post_rejected(ghex):
    # inf is a post vertex of valence 6 and needs an explicit mark
    with pytest.raises(ConnectionDataError):
        parse_connection("conn inf block 0 4", ghex)


def test_serialize_round_trip(lattes):
    for pe in search(lattes, "all"):
        again = parse_connection(pe.connection.serialize(), lattes)
        assert again.serialize() == pe.connection.serialize()
