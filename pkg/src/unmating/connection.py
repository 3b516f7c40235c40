"""Connections of 1-tiles, the outline walk of the white component, and
exhaustive search for pseudo-equators.
"""

from __future__ import annotations

import enum
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import networkx as nx

from .complex import WHITE, faces, natural_key, sectors
from .ncpart import cnc, enumerate_cnc


class ConnectionDataError(ValueError):
    """Malformed connection data (bad sector index, missing mark, ...)."""


class OutlineError(ValueError):
    pass


class Orientation(enum.Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"
    INCOMPATIBLE = "incompatible"


@dataclass(frozen=True)
class Connection:
    """Cnc-partition per vertex.

    Vertices absent from ``parts`` carry the all-singleton partition; at a
    valence-2 vertex that is the only choice, and its single arc is the mark.
    """

    parts: tuple[tuple[str, object], ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts, key=lambda p: natural_key(p[0]))))

    @classmethod
    def from_dict(cls, parts):
        return cls(tuple(parts.items()))

    def at(self, s, v):
        for vid, c in self.parts:
            if vid == v:
                return c
        n = s.local_degree(v)
        c = cnc([], n)
        if n == 1:
            c = c.with_mark((0, 0))
        return c

    def serialize(self, s=None):
        """Canonical text form (one ``conn`` line per non-singleton block)."""
        lines = []
        for vid, c in self.parts:
            for b in c.white.blocks:
                if len(b) > 1:
                    lines.append(f"conn {vid} block " + " ".join(map(str, b)))
            if c.mark is not None and c.n > 1:
                lines.append(f"mark {vid} {c.mark[0]} {c.mark[1]}")
        return "\n".join(lines)


def parse_connection(text, s):
    """Parse a connection file against skeleton ``s``."""
    blocks = {}
    marks = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "conn" and len(tok) >= 4 and tok[2] == "block":
                blocks.setdefault(tok[1], []).append(tuple(int(x) for x in tok[3:]))
            elif tok[0] == "mark" and len(tok) == 4:
                if tok[1] in marks:
                    raise ConnectionDataError(f"line {lineno}: second mark at {tok[1]}")
                marks[tok[1]] = (int(tok[2]), int(tok[3]))
            else:
                raise ConnectionDataError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            if isinstance(exc, ConnectionDataError):
                raise
            raise ConnectionDataError(f"line {lineno}: {exc}") from None
    parts = {}
    for vid in set(blocks) | set(marks):
        if vid not in s.vertices:
            raise ConnectionDataError(f"unknown vertex {vid!r}")
        n = s.local_degree(vid)
        try:
            parts[vid] = cnc(blocks.get(vid, []), n, marks.get(vid))
        except ValueError as exc:
            raise ConnectionDataError(f"vertex {vid}: {exc}") from None
    conn = Connection.from_dict(parts)
    check_connection(s, conn)
    return conn


def check_connection(s, conn):
    for vid, _ in conn.parts:
        if vid not in s.vertices:
            raise ConnectionDataError(f"unknown vertex {vid!r}")
    for vid, c in conn.parts:
        if c.n != s.local_degree(vid):
            raise ConnectionDataError(f"vertex {vid}: partition has n={c.n}, vertex has {s.local_degree(vid)}")
    for j, vid in sorted(s.post_vertices().items()):
        if conn.at(s, vid).mark is None:
            raise ConnectionDataError(f"postcritical vertex {vid} (post {j}) is not marked")


def load_connection(path, s):
    with open(path, encoding="utf-8") as fh:
        return parse_connection(fh.read(), s)


# ---------------------------------------------------------------------------
# white connection graph

def white_graph(s, conn):
    """Bipartite multigraph of white tiles and white blocks.

    Tile nodes are ``("tile", face_id)``, block nodes ``("block", v, block)``;
    one edge per (vertex, white sector) incidence.
    """
    g = nx.MultiGraph()
    for f in faces(s):
        if f.color == WHITE:
            g.add_node(("tile", f.id))
    for v in s.vertices:
        table = sectors(s, v)
        c = conn.at(s, v)
        if c.size != len(table.faces):
            raise ConnectionDataError(f"vertex {v}: partition size {c.size} != valence {len(table.faces)}")
        for b in c.white.blocks:
            node = ("block", v, b)
            g.add_node(node)
            for i in b:
                g.add_edge(node, ("tile", table.faces[i]), sector=i)
    return g


def is_spanning_tree(g):
    n = g.number_of_nodes()
    return n > 0 and g.number_of_edges() == n - 1 and nx.is_connected(g)


def tree_excess(s, conn):
    """Sum over vertices of n_v - #white blocks; equals d - 1 on trees."""
    return sum(conn.at(s, v).n - len(conn.at(s, v).white.blocks) for v in s.vertices)


# ---------------------------------------------------------------------------
# outline walk

@dataclass(frozen=True)
class Passage:
    """One visit of the outline at a vertex, through the arc ``arc``.

    ``edge_in`` is the 1-edge just traversed, ``edge_out`` the next one; both
    are traversed forward.  ``post`` is set on the marked arc of a post vertex.
    """

    vertex: str
    arc: tuple[int, int]
    edge_in: str
    edge_out: str
    out_type: int
    post: int | None = None


@dataclass(frozen=True)
class OutlineWalk:
    k: int
    degree: int
    passages: tuple[Passage, ...]
    reversed_: bool = False

    def __len__(self):
        return len(self.passages)

    def post_positions(self):
        """Post index -> position of its marked passage."""
        return {p.post: i for i, p in enumerate(self.passages) if p.post is not None}

    def post_order(self):
        return [p.post for p in self.passages if p.post is not None]

    def multiplicity(self):
        out = {}
        for p in self.passages:
            out[p.vertex] = out.get(p.vertex, 0) + 1
        return out

    def reversed(self):
        """The same closed curve run backwards (start kept at post 0)."""
        ps = self.passages
        rev = (ps[0],) + tuple(reversed(ps[1:]))
        return OutlineWalk(self.k, self.degree, rev, not self.reversed_)


def outline(s, conn):
    """Boundary walk of the white component of the geometric representation.

    Edges are run forward (white tile on the left).  Arriving at ``v`` through
    white sector ``i`` the walk follows the arc from boundary point i+1 to the
    next member ``j`` of i's block and leaves along ray ``j``.
    """
    check_connection(s, conn)
    start_v = s.post_vertex(0)
    posts = {vid: j for j, vid in s.post_vertices().items()}
    mark = conn.at(s, start_v).mark
    total = s.k * s.degree
    passages = []
    v, arc = start_v, mark
    edge_in = None
    while True:
        table = sectors(s, v)
        c = conn.at(s, v)
        eid, side = table.rays[arc[1]]
        assert side == "t"
        e = s.edges[eid]
        post = posts.get(v) if c.mark == arc else None
        passages.append(Passage(v, arc, edge_in, eid, e.type, post))
        if len(passages) > total:
            raise OutlineError(f"walk exceeds {total} passages; connection is not a tree")
        v = e.head
        table = sectors(s, v)
        c = conn.at(s, v)
        ray = table.ray_index((eid, "h"))
        arc = c.arc_at(ray - 1)
        edge_in = eid
        if v == start_v and arc == mark:
            break
    if len(passages) != total:
        raise OutlineError(f"walk closes after {len(passages)} of {total} edges; "
                           "connection is not a tree")
    first = passages[0]
    passages[0] = Passage(first.vertex, first.arc, edge_in, first.edge_out, first.out_type, first.post)
    return OutlineWalk(s.k, s.degree, tuple(passages))


@dataclass(frozen=True)
class Classification:
    orientation: Orientation
    post_order: tuple[int, ...]
    isotopy_verified: bool

    def certificate(self, s):
        return " ".join(s.label(j) for j in self.post_order)


def _cyclic_equal(seq, target):
    if len(seq) != len(target):
        return False
    n = len(seq)
    return any(list(seq[r:]) + list(seq[:r]) == list(target) for r in range(n))


def classify(s, w):
    """Compare the cyclic order of posts along the walk with their order on C.

    For three posts the answer is exact; for more it is only a necessary
    condition and ``isotopy_verified`` is False.
    """
    order = tuple(w.post_order())
    k = s.k
    forward = list(range(k))
    backward = [0] + list(range(k - 1, 0, -1))
    if _cyclic_equal(order, forward):
        o = Orientation.PRESERVING
    elif _cyclic_equal(order, backward):
        o = Orientation.REVERSING
    else:
        o = Orientation.INCOMPATIBLE
    return Classification(o, order, k <= 3)


@dataclass(frozen=True)
class PseudoEquator:
    connection: Connection
    walk: OutlineWalk
    classification: Classification

    @property
    def orientation(self):
        return self.classification.orientation


# ---------------------------------------------------------------------------
# search

def connection_space(s):
    """Per-vertex candidate lists: critical vertices and marked posts."""
    posts = set(s.post_vertices().values())
    choices = []
    for v in sorted(s.vertices, key=natural_key):
        n = s.local_degree(v)
        if n == 1 and v not in posts:
            continue
        opts = list(enumerate_cnc(n, marked=v in posts))
        choices.append((v, opts))
    return choices


def all_connections(s):
    choices = connection_space(s)
    names = [v for v, _ in choices]
    for combo in itertools.product(*(opts for _, opts in choices)):
        yield Connection(tuple((v, c) for v, c in zip(names, combo) if c.n > 1 or c.mark != (0, 0)))


def _evaluate(s, conn, modes):
    if not is_spanning_tree(white_graph(s, conn)):
        return None
    w = outline(s, conn)
    cl = classify(s, w)
    if cl.orientation.value not in modes:
        return None
    return PseudoEquator(conn, w, cl)


def _search_chunk(args):
    s, first_index, modes = args
    choices = connection_space(s)
    names = [v for v, _ in choices]
    lists = [opts for _, opts in choices]
    if lists:
        lists[0] = [lists[0][first_index]]
    out = []
    for combo in itertools.product(*lists):
        conn = Connection(tuple((v, c) for v, c in zip(names, combo) if c.n > 1 or c.mark != (0, 0)))
        pe = _evaluate(s, conn, modes)
        if pe is not None:
            out.append(pe)
    return out


def _modes(mode):
    if mode == "all":
        return {o.value for o in Orientation}
    if mode not in ("preserving", "reversing", "incompatible"):
        raise ValueError(f"unknown mode {mode!r}")
    return {mode}


def search(s, mode="preserving", workers=None):
    """All tree connections whose outline matches ``mode``, canonically sorted."""
    modes = _modes(mode)
    faces(s)  # validate up front
    choices = connection_space(s)
    if workers is None:
        workers = int(os.environ.get("UNMATE_THREADS", "1") or 1)
    width = len(choices[0][1]) if choices else 1
    jobs = [(s, i, modes) for i in range(width)]
    if workers > 1 and width > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search_chunk, jobs))
    else:
        chunks = [_search_chunk(j) for j in jobs]
    results = [pe for chunk in chunks for pe in chunk]
    results.sort(key=lambda pe: pe.connection.serialize())
    return results
