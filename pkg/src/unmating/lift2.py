"""Degree-2 maps: lift C through the cover and test every lift for a
pseudo-equator.

For a quadratic map with critical points ``a``, ``b`` and critical values
on C, the preimage f^-1(C) consists of four arcs from ``a`` to ``b``: two
lifts of each of the arcs into which the critical values cut C.  What is
not determined by the cyclic order of post(f) on C is which named preimage
of each interior post point sits on which lift; every choice is tried.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complex import Edge, Skeleton, Vertex, natural_key, validate
from .connection import all_connections, is_spanning_tree, search, white_graph


class PortraitDataError(ValueError):
    pass


class LiftError(ValueError):
    pass


@dataclass(frozen=True)
class MappingPortrait:
    images: dict
    degrees: dict
    post: frozenset
    degree: int

    @property
    def points(self):
        return sorted(self.images, key=natural_key)

    def critical_points(self):
        return [x for x in self.points if self.degrees[x] > 1]

    def preimages(self, y):
        return sorted((x for x in self.images if self.images[x] == y), key=natural_key)


def parse_mapping_portrait(text):
    images, degrees, post = {}, {}, set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] != "point" or len(tok) < 4:
            raise PortraitDataError(f"line {lineno}: expected 'point <name> image=<name> deg=<n> [post]'")
        name = tok[1]
        if name in images:
            raise PortraitDataError(f"line {lineno}: duplicate point {name!r}")
        kv = {}
        flags = set()
        for t in tok[2:]:
            if "=" in t:
                key, val = t.split("=", 1)
                kv[key] = val
            else:
                flags.add(t)
        if set(kv) != {"image", "deg"} or flags - {"post"}:
            raise PortraitDataError(f"line {lineno}: bad fields in {line!r}")
        try:
            degrees[name] = int(kv["deg"])
        except ValueError:
            raise PortraitDataError(f"line {lineno}: deg must be an integer") from None
        images[name] = kv["image"]
        if "post" in flags:
            post.add(name)
    return make_mapping_portrait(images, degrees, post)


def make_mapping_portrait(images, degrees, post):
    for x, y in images.items():
        if y not in images:
            raise PortraitDataError(f"image {y!r} of {x!r} is not a marked point")
        if degrees[x] < 1:
            raise PortraitDataError(f"local degree of {x!r} must be positive")
    post = frozenset(post)
    if not post:
        raise PortraitDataError("no postcritical points designated")
    for p in post:
        if images[p] not in post:
            raise PortraitDataError(f"post point {p!r} maps outside post(f)")
    # every post point has total preimage degree d
    totals = {p: sum(degrees[x] for x in images if images[x] == p) for p in post}
    ds = set(totals.values())
    if len(ds) != 1:
        raise PortraitDataError(f"inconsistent preimage degrees over post(f): {totals}")
    d = ds.pop()
    if d < 2:
        raise PortraitDataError("degree must be at least 2")
    marked = set(images)
    expected = set(post) | {x for x in images if images[x] in post}
    if marked != expected:
        extra = sorted(marked - expected)
        raise PortraitDataError(f"marked set is not post(f) together with its preimages: extra {extra}")
    excess = sum(v - 1 for v in degrees.values())
    if excess != 2 * d - 2:
        raise PortraitDataError(f"sum of (deg-1) is {excess}, expected {2 * d - 2}")
    cvals = {images[c] for c in images if degrees[c] > 1}
    if not cvals <= post:
        raise PortraitDataError(f"critical value(s) {sorted(cvals - post)} not postcritical")
    return MappingPortrait(dict(images), dict(degrees), post, d)


def load_mapping_portrait(path):
    with open(path, encoding="utf-8") as fh:
        return parse_mapping_portrait(fh.read())


def cyclic_orders(points):
    """Cyclic orders of ``points`` up to rotation and reflection."""
    pts = sorted(points, key=natural_key)
    first, rest = pts[0], pts[1:]
    out = []
    for perm in itertools.permutations(rest):
        if len(perm) >= 2 and natural_key(perm[0]) > natural_key(perm[-1]):
            continue
        out.append((first,) + perm)
    return out


def _check_quadratic(mp):
    if mp.degree != 2:
        raise LiftError(f"only degree 2 is supported, got {mp.degree}")
    crit = mp.critical_points()
    if len(crit) != 2:
        raise LiftError(f"expected two critical points, got {crit}")
    for c in crit:
        if mp.images[c] not in mp.post:
            raise LiftError(f"critical value of {c} is not on C")
    a, b = crit
    if mp.images[a] == mp.images[b]:
        raise LiftError("both critical points share a critical value")
    return a, b


def _arc_data(order, start, stop):
    """0-edge indices and interior post names from ``start`` to ``stop``."""
    k = len(order)
    i, j = order.index(start), order.index(stop)
    steps = (j - i) % k
    types = [(i + t) % k for t in range(steps)]
    interior = [order[(i + t) % k] for t in range(1, steps)]
    return types, interior


def _build(mp, order, a, b, choice, name):
    k = len(order)
    idx = {p: j for j, p in enumerate(order)}
    alpha_types, alpha_pts = _arc_data(order, mp.images[a], mp.images[b])
    beta_types, beta_pts = _arc_data(order, mp.images[b], mp.images[a])
    vertices = {}
    for x in mp.points:
        vertices[x] = Vertex(x, idx[mp.images[x]], idx.get(x) if x in mp.post else None)

    edges = {}
    first_end, last_end = {}, {}

    def lift(tag, types, pts, start, stop, r):
        path = [start] + [choice[p][r] for p in pts] + [stop]
        ids = []
        for t, typ in enumerate(types):
            eid = f"{tag}{r + 1}_{t}"
            edges[eid] = Edge(eid, typ, path[t], path[t + 1])
            ids.append(eid)
        first_end[(tag, r)] = (ids[0], "t")
        last_end[(tag, r)] = (ids[-1], "h")
        return ids

    chains = {}
    for r in (0, 1):
        chains[("A", r)] = lift("A", alpha_types, alpha_pts, a, b, r)
        chains[("B", r)] = lift("B", beta_types, beta_pts, b, a, r)

    rotations = {
        a: [first_end[("A", 0)], last_end[("B", 0)], first_end[("A", 1)], last_end[("B", 1)]],
        b: [first_end[("B", 0)], last_end[("A", 0)], first_end[("B", 1)], last_end[("A", 1)]],
    }
    for ids in chains.values():
        for e1, e2 in zip(ids, ids[1:]):
            rotations[edges[e1].head] = [(e2, "t"), (e1, "h")]
    edges = dict(sorted(edges.items(), key=lambda kv: natural_key(kv[0])))
    return Skeleton(name, 2, k, list(order), vertices, edges, rotations)


def lift_degree2(mp, order):
    """All level-1 skeletons over the oriented cyclic ``order`` of post(f).

    Choices that differ by the deck involution (swapping both pairs of
    lifts) give the same skeleton and are emitted once.
    """
    a, b = _check_quadratic(mp)
    if sorted(order, key=natural_key) != sorted(mp.post, key=natural_key):
        raise LiftError(f"order {order} is not a cyclic order of post(f)")
    order = tuple(order)
    _, alpha_pts = _arc_data(order, mp.images[a], mp.images[b])
    _, beta_pts = _arc_data(order, mp.images[b], mp.images[a])
    interior = alpha_pts + beta_pts
    pre = {}
    for p in interior:
        xs = mp.preimages(p)
        if len(xs) != 2:
            raise LiftError(f"interior post point {p} has preimages {xs}, expected two")
        pre[p] = xs
    out = []
    for bits in itertools.product((0, 1), repeat=len(interior)):
        if bits and bits[0] == 1:
            continue
        choice = {p: (pre[p][bit], pre[p][1 - bit]) for p, bit in zip(interior, bits)}
        tag = "".join(map(str, bits)) or "0"
        s = _build(mp, order, a, b, choice, f"lift[{' '.join(order)}]#{tag}")
        rep = validate(s)
        if not rep.ok:
            raise LiftError(f"lifted skeleton {s.name} is invalid: {rep.errors}")
        out.append(s)
    return out


@dataclass
class OrderOutcome:
    order: tuple
    skeletons: int
    connections: int
    trees: int
    candidates: list = field(default_factory=list)


@dataclass
class ObstructionReport:
    outcomes: list

    @property
    def candidate_count(self):
        return sum(len(o.candidates) for o in self.outcomes)

    @property
    def verdict(self):
        return "NO-PSEUDO-EQUATOR" if self.candidate_count == 0 else "CANDIDATES-FOUND"

    def format(self):
        lines = ["# each cyclic order is tried with both orientations of C",
                 "# (the reflected order is the same curve with the other side white)"]
        for o in self.outcomes:
            lines.append(f"order {' '.join(o.order)}: skeletons={o.skeletons} "
                         f"connections={o.connections} trees={o.trees} "
                         f"candidates={len(o.candidates)}")
            for name, conn, cert in o.candidates:
                lines.append(f"  candidate {name}: {conn.serialize().replace(chr(10), '; ')} "
                             f"[outline order {cert}]")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def _order_outcome(args):
    mp, order = args
    sks = lift_degree2(mp, order)
    conns = trees = 0
    cands = []
    for s in sks:
        for conn in all_connections(s):
            conns += 1
            if is_spanning_tree(white_graph(s, conn)):
                trees += 1
        for pe in search(s, "preserving", workers=1):
            cands.append((s.name, pe.connection, pe.classification.certificate(s)))
    return OrderOutcome(tuple(order), len(sks), conns, trees, cands)


def obstruct(mp, workers=None):
    """Search every lift over every oriented cyclic order of post(f)."""
    _check_quadratic(mp)
    oriented = []
    for order in cyclic_orders(mp.post):
        oriented.append(order)
        oriented.append((order[0],) + tuple(reversed(order[1:])))
    if workers is None:
        workers = int(os.environ.get("UNMATE_THREADS", "1") or 1)
    jobs = [(mp, o) for o in oriented]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_order_outcome, jobs))
    else:
        outcomes = [_order_outcome(j) for j in jobs]
    return ObstructionReport(outcomes)
