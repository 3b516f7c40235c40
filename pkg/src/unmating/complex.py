"""Level-1 complex of a Thurston map: the planar graph f^-1(C) with covering labels.

A :class:`Skeleton` stores the embedded graph as a rotation system.  Every
edge carries its *type* ``j`` (it maps onto the 0-edge ``E_j`` running from
post ``j`` to post ``j+1``) and is oriented the way ``f`` orients it.  Faces
and their colors are never stored; they are recovered by :func:`trace_faces`.

Darts are pairs ``(edge_id, +1)`` (tail to head) and ``(edge_id, -1)``.
Edge-ends are pairs ``(edge_id, "t")`` and ``(edge_id, "h")``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

WHITE = "white"
BLACK = "black"


class SkeletonSyntaxError(ValueError):
    """Raised by :func:`parse_skeleton` on malformed input."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class FaceTracingError(ValueError):
    pass


def natural_key(s):
    """Sort key treating embedded integers numerically (``e2 < e10``)."""
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok)
                 for tok in re.findall(r"\d+|\D+", s))


@dataclass(frozen=True)
class Vertex:
    id: str
    image: int
    post: int | None = None


@dataclass(frozen=True)
class Edge:
    id: str
    type: int
    tail: str
    head: str

    def end_vertex(self, end):
        return self.tail if end == "t" else self.head


@dataclass
class Skeleton:
    name: str
    degree: int
    k: int
    post_labels: list[str]
    vertices: dict[str, Vertex]
    edges: dict[str, Edge]
    rotations: dict[str, list[tuple[str, str]]]
    _faces: list | None = field(default=None, repr=False, compare=False)
    _sectors: dict | None = field(default=None, repr=False, compare=False)

    def valence(self, v):
        return len(self.rotations.get(v, ()))

    def local_degree(self, v):
        return self.valence(v) // 2

    def post_vertex(self, j):
        for v in self.vertices.values():
            if v.post == j:
                return v.id
        raise KeyError(f"no vertex carries post {j}")

    def post_vertices(self):
        """Map post index -> vertex id."""
        return {v.post: v.id for v in self.vertices.values() if v.post is not None}

    def critical_vertices(self):
        return [v for v in self.vertices if self.valence(v) > 2]

    def label(self, j):
        return self.post_labels[j]


@dataclass(frozen=True)
class Face:
    id: str
    color: str
    boundary: tuple[tuple[str, int], ...]
    # (vertex, sector index) for every corner; filled in by validate()
    corners: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class SectorTable:
    """Faces around a vertex, ordered counterclockwise, white sectors even.

    ``rays[i]`` is the edge-end bounding sector ``i`` on its clockwise side;
    sector ``i`` lies between ``rays[i]`` and ``rays[i+1]``.  ``shift`` is
    the position of ``rays[0]`` in the stored rotation list.
    """

    vertex: str
    faces: tuple[str, ...]
    rays: tuple[tuple[str, str], ...]
    shift: int

    @property
    def n(self):
        return len(self.faces) // 2

    def ray_index(self, end):
        return self.rays.index(end)


@dataclass
class ValidationReport:
    skeleton: str
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.errors

    def __bool__(self):
        return self.ok

    def format(self):
        if self.ok:
            return f"{self.skeleton}: OK"
        lines = [f"{self.skeleton}: FAIL ({len(self.errors)} violation(s))"]
        lines += [f"  - {e}" for e in self.errors]
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# parsing and formatting

_END_RE = re.compile(r"^(.+)([th])$")


def _kv(tokens, lineno, required, optional=()):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise SkeletonSyntaxError(f"expected key=value, got {tok!r}", lineno)
        key, val = tok.split("=", 1)
        if key not in required and key not in optional:
            raise SkeletonSyntaxError(f"unknown key {key!r}", lineno)
        if key in out:
            raise SkeletonSyntaxError(f"repeated key {key!r}", lineno)
        out[key] = val
    missing = [k for k in required if k not in out]
    if missing:
        raise SkeletonSyntaxError(f"missing {', '.join(missing)}", lineno)
    return out


def _int(val, lineno, what):
    try:
        return int(val)
    except ValueError:
        raise SkeletonSyntaxError(f"{what} must be an integer, got {val!r}", lineno) from None


def parse_skeleton(text):
    """Parse a skeleton file.  Only syntax and references are checked."""
    name = None
    degree = k = None
    labels = {}
    vertices, edges, rotations = {}, {}, {}
    rot_lines = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, *rest = line.split()
        if kw == "map":
            if len(rest) != 1:
                raise SkeletonSyntaxError("usage: map <name>", lineno)
            name = rest[0]
        elif kw == "degree":
            if len(rest) != 1:
                raise SkeletonSyntaxError("usage: degree <d>", lineno)
            degree = _int(rest[0], lineno, "degree")
        elif kw == "post":
            if len(rest) != 1:
                raise SkeletonSyntaxError("usage: post <k>", lineno)
            k = _int(rest[0], lineno, "post count")
        elif kw == "postlabel":
            if len(rest) != 2:
                raise SkeletonSyntaxError("usage: postlabel <j> <name>", lineno)
            j = _int(rest[0], lineno, "post index")
            if j in labels:
                raise SkeletonSyntaxError(f"duplicate postlabel {j}", lineno)
            labels[j] = rest[1]
        elif kw == "vertex":
            if not rest:
                raise SkeletonSyntaxError("usage: vertex <vid> image=<j> [post=<j>]", lineno)
            vid = rest[0]
            if vid in vertices:
                raise SkeletonSyntaxError(f"duplicate vertex {vid!r}", lineno)
            kv = _kv(rest[1:], lineno, ("image",), ("post",))
            post = _int(kv["post"], lineno, "post") if "post" in kv else None
            vertices[vid] = Vertex(vid, _int(kv["image"], lineno, "image"), post)
        elif kw == "edge":
            if not rest:
                raise SkeletonSyntaxError("usage: edge <eid> type=<j> tail=<v> head=<v>", lineno)
            eid = rest[0]
            if eid in edges:
                raise SkeletonSyntaxError(f"duplicate edge {eid!r}", lineno)
            kv = _kv(rest[1:], lineno, ("type", "tail", "head"))
            edges[eid] = (Edge(eid, _int(kv["type"], lineno, "type"), kv["tail"], kv["head"]), lineno)
        elif kw == "rot":
            if not rest:
                raise SkeletonSyntaxError("usage: rot <vid> <end>...", lineno)
            vid = rest[0]
            if vid in rotations:
                raise SkeletonSyntaxError(f"duplicate rotation for {vid!r}", lineno)
            ends = []
            for tok in rest[1:]:
                m = _END_RE.match(tok)
                if not m:
                    raise SkeletonSyntaxError(f"bad edge-end {tok!r}", lineno)
                ends.append((m.group(1), m.group(2)))
            rotations[vid] = ends
            rot_lines[vid] = lineno
        else:
            raise SkeletonSyntaxError(f"unknown keyword {kw!r}", lineno)

    for what, val in (("map", name), ("degree", degree), ("post", k)):
        if val is None:
            raise SkeletonSyntaxError(f"missing '{what}' line")
    for eid, (e, lineno) in edges.items():
        for v in (e.tail, e.head):
            if v not in vertices:
                raise SkeletonSyntaxError(f"edge {eid!r} references unknown vertex {v!r}", lineno)
    for vid, ends in rotations.items():
        lineno = rot_lines[vid]
        if vid not in vertices:
            raise SkeletonSyntaxError(f"rotation for unknown vertex {vid!r}", lineno)
        for eid, _ in ends:
            if eid not in edges:
                raise SkeletonSyntaxError(f"rotation references unknown edge {eid!r}", lineno)
    post_labels = [labels.get(j, str(j)) for j in range(k)]
    return Skeleton(name, degree, k, post_labels, vertices,
                    {eid: e for eid, (e, _) in edges.items()}, rotations)


def format_skeleton(s):
    lines = [f"map {s.name}", f"degree {s.degree}", f"post {s.k}"]
    lines += [f"postlabel {j} {lab}" for j, lab in enumerate(s.post_labels)]
    for v in s.vertices.values():
        extra = f" post={v.post}" if v.post is not None else ""
        lines.append(f"vertex {v.id} image={v.image}{extra}")
    for e in s.edges.values():
        lines.append(f"edge {e.id} type={e.type} tail={e.tail} head={e.head}")
    for vid, ends in s.rotations.items():
        lines.append("rot " + " ".join([vid] + [f"{eid}{side}" for eid, side in ends]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# faces and sectors

def _end_of_arrival(dart):
    eid, sign = dart
    return (eid, "h" if sign > 0 else "t")


def _dart_leaving(end):
    eid, side = end
    return (eid, 1 if side == "t" else -1)


def _dart_key(dart):
    return (natural_key(dart[0]), -dart[1])


def dart_name(dart):
    return f"{dart[0]}{'+' if dart[1] > 0 else '-'}"


def _rotation_index(s):
    pos = {}
    for vid, ends in s.rotations.items():
        for i, end in enumerate(ends):
            pos[end] = (vid, i)
    return pos


def trace_faces(s):
    """Trace the faces of the rotation system (face on the left of each dart).

    Returns faces sorted by id; a face's id is its smallest dart, e.g. ``e3+``.
    White faces run along their edges forward, black ones backward; a face
    mixing both directions gets color ``None`` and is left for
    :func:`validate` to report.
    """
    pos = _rotation_index(s)
    darts = [(eid, sgn) for eid in s.edges for sgn in (1, -1)]
    seen = set()
    faces = []
    for start in darts:
        if start in seen:
            continue
        boundary = []
        dart = start
        while True:
            if dart in seen:
                raise FaceTracingError(f"face walk from {dart_name(start)} does not close")
            seen.add(dart)
            boundary.append(dart)
            end = _end_of_arrival(dart)
            if end not in pos:
                raise FaceTracingError(f"edge-end {end[0]}{end[1]} missing from rotations")
            vid, i = pos[end]
            ends = s.rotations[vid]
            dart = _dart_leaving(ends[(i - 1) % len(ends)])
            if dart == start:
                break
            if len(boundary) > 2 * len(s.edges):
                raise FaceTracingError(f"face walk from {dart_name(start)} does not close")
        lo = min(range(len(boundary)), key=lambda t: _dart_key(boundary[t]))
        boundary = boundary[lo:] + boundary[:lo]
        signs = {sgn for _, sgn in boundary}
        color = WHITE if signs == {1} else BLACK if signs == {-1} else None
        faces.append(Face(dart_name(boundary[0]), color, tuple(boundary)))
    faces.sort(key=lambda f: _dart_key(f.boundary[0]))
    return faces


def _face_of_dart(faces):
    return {d: f.id for f in faces for d in f.boundary}


def _sector_table(s, vid, face_of):
    ends = s.rotations[vid]
    tails = [i for i, (_, side) in enumerate(ends) if side == "t"]
    if not tails:
        raise ValueError(f"vertex {vid!r} has no outgoing edge")
    shift = min(tails, key=lambda i: natural_key(ends[i][0]))
    rays = tuple(ends[shift:] + ends[:shift])
    faces = tuple(face_of[_dart_leaving(end)] for end in rays)
    return SectorTable(vid, faces, rays, shift)


def sectors(s, v):
    """Sector table of vertex ``v``; ``s`` must have passed :func:`validate`."""
    if v not in s.vertices:
        raise KeyError(f"unknown vertex {v!r}")
    if s._sectors is None:
        report = validate(s)
        if not report.ok:
            raise ValueError(f"skeleton {s.name} is invalid: {report.errors[0]}")
    return s._sectors[v]


def faces(s):
    if s._faces is None:
        report = validate(s)
        if not report.ok:
            raise ValueError(f"skeleton {s.name} is invalid: {report.errors[0]}")
    return s._faces


# ---------------------------------------------------------------------------
# validation

def validate(s):
    """Check every structural invariant of ``s``; cache faces/sectors on success."""
    rep = ValidationReport(s.name)
    err = rep.errors.append
    k, d = s.k, s.degree
    if d < 2:
        err(f"degree {d} < 2")
    if k < 3:
        err(f"post count {k} < 3")
    if len(s.post_labels) != k:
        err("post label count differs from post count")

    if len(s.edges) != k * d:
        err(f"edge count {len(s.edges)} != k*d = {k * d}")
    for j in range(k):
        cnt = sum(1 for e in s.edges.values() if e.type == j)
        if cnt != d:
            err(f"{cnt} edges of type {j}, expected {d}")
    for v in s.vertices.values():
        if not 0 <= v.image < k:
            err(f"vertex {v.id}: image {v.image} out of range")
    for e in s.edges.values():
        if not 0 <= e.type < k:
            err(f"edge {e.id}: type {e.type} out of range")
            continue
        if e.tail == e.head:
            err(f"edge {e.id} is a loop")
        if s.vertices[e.tail].image != e.type:
            err(f"edge {e.id}: tail {e.tail} has image {s.vertices[e.tail].image}, expected {e.type}")
        if s.vertices[e.head].image != (e.type + 1) % k:
            err(f"edge {e.id}: head {e.head} has image {s.vertices[e.head].image}, "
                f"expected {(e.type + 1) % k}")

    # rotation bookkeeping
    seen = {}
    for vid, ends in s.rotations.items():
        for end in ends:
            if end in seen:
                err(f"edge-end {end[0]}{end[1]} listed twice")
            seen[end] = vid
            e = s.edges[end[0]]
            if e.end_vertex(end[1]) != vid:
                err(f"edge-end {end[0]}{end[1]} listed at {vid}, belongs to {e.end_vertex(end[1])}")
    for e in s.edges.values():
        for side in "th":
            if (e.id, side) not in seen:
                err(f"edge-end {e.id}{side} missing from rotations")
    for vid in s.vertices:
        if vid not in s.rotations or not s.rotations[vid]:
            err(f"vertex {vid} has no rotation")

    excess = 0
    for vid, ends in s.rotations.items():
        val = len(ends)
        if val % 2:
            err(f"vertex {vid}: odd valence {val}")
            continue
        excess += val // 2 - 1
        img = s.vertices[vid].image
        sides = [side for _, side in ends]
        alternating = all(sides[i] != sides[(i + 1) % val] for i in range(val))
        if not alternating:
            err(f"vertex {vid}: head/tail ends do not alternate")
        for eid, side in ends:
            want = img if side == "t" else (img - 1) % k
            if s.edges[eid].type != want:
                err(f"vertex {vid}: end {eid}{side} has type {s.edges[eid].type}, expected {want}")
    if excess != 2 * d - 2:
        err(f"Riemann-Hurwitz: sum of (deg-1) is {excess}, expected {2 * d - 2}")

    posts = {}
    for v in s.vertices.values():
        if v.post is None:
            continue
        if not 0 <= v.post < k:
            err(f"vertex {v.id}: post index {v.post} out of range")
        elif v.post in posts:
            err(f"post {v.post} assigned to both {posts[v.post]} and {v.id}")
        else:
            posts[v.post] = v.id
    for j in range(k):
        if j not in posts:
            err(f"post {j} not assigned to any vertex")

    if rep.errors:
        return rep

    try:
        fs = trace_faces(s)
    except FaceTracingError as exc:
        err(str(exc))
        return rep
    if len(fs) != 2 * d:
        err(f"{len(fs)} faces, expected 2d = {2 * d}")
    euler = len(s.vertices) - len(s.edges) + len(fs)
    if euler != 2:
        err(f"Euler characteristic {euler} != 2")
    for f in fs:
        if len(f.boundary) != k:
            err(f"face {f.id}: boundary length {len(f.boundary)} != {k}")
        if f.color is None:
            err(f"face {f.id}: edge directions are not coherent")
            continue
        types = [s.edges[eid].type for eid, _ in f.boundary]
        step = 1 if f.color == WHITE else -1
        if any((types[(i + 1) % len(types)] - types[i]) % k != step % k for i in range(len(types))):
            err(f"face {f.id}: edge types {types} are not cyclic")
    whites = sum(1 for f in fs if f.color == WHITE)
    blacks = sum(1 for f in fs if f.color == BLACK)
    if whites != d or blacks != d:
        err(f"{whites} white / {blacks} black faces, expected {d} each")
    if rep.errors:
        return rep

    face_of = _face_of_dart(fs)
    tables = {vid: _sector_table(s, vid, face_of) for vid in s.vertices}
    colors = {f.id: f.color for f in fs}
    for t in tables.values():
        for i, fid in enumerate(t.faces):
            if colors[fid] != (WHITE if i % 2 == 0 else BLACK):
                err(f"vertex {t.vertex}: sector {i} has the wrong color")
    if rep.errors:
        return rep
    corners = {f.id: [] for f in fs}
    for t in tables.values():
        for i, fid in enumerate(t.faces):
            corners[fid].append((t.vertex, i))
    s._faces = [Face(f.id, f.color, f.boundary, tuple(corners[f.id])) for f in fs]
    s._sectors = tables
    return rep


def load_skeleton(path):
    with open(path, encoding="utf-8") as fh:
        return parse_skeleton(fh.read())
