"""Non-crossing partitions of the tiles around a vertex.

Around a vertex of valence ``2n`` the sectors are numbered ``0..2n-1``
counterclockwise; even sectors are white, odd ones black.  Indices are kept
absolute, so a white partition is a partition of ``{0, 2, ..., 2n-2}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


def _normalize(blocks):
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def _check_partition(blocks, ground=None):
    flat = [x for b in blocks for x in b]
    if any(len(b) == 0 for b in blocks):
        raise ValueError("empty block")
    if len(flat) != len(set(flat)):
        raise ValueError("blocks are not disjoint")
    if ground is not None and set(flat) != set(ground):
        raise ValueError("blocks do not cover the ground set")


def _separates(block, a, b):
    """True if ``block`` has points strictly on both sides of the chord a-b."""
    lo, hi = min(a, b), max(a, b)
    inside = outside = False
    for x in block:
        if x == a or x == b:
            continue
        if lo < x < hi:
            inside = True
        else:
            outside = True
    return inside and outside


def is_noncrossing(blocks, ground=None):
    """True iff no two blocks interleave as ``a < b < c < d``.

    >>> is_noncrossing([{0, 4, 6}, {2}])
    True
    >>> is_noncrossing([{0, 4}, {2, 6}])
    False
    """
    blocks = [tuple(sorted(b)) for b in blocks]
    _check_partition(blocks, ground)
    for b1, b2 in itertools.combinations(blocks, 2):
        # b2 crosses b1 iff some chord between consecutive points of b1
        # has points of b2 on both sides
        for i in range(len(b1)):
            if _separates(b2, b1[i], b1[(i + 1) % len(b1)]):
                return False
    return True


@dataclass(frozen=True)
class NcPartition:
    """Partition of the white (parity 0) or black (parity 1) indices mod 2n."""

    size: int
    parity: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.size % 2 or self.size < 2:
            raise ValueError(f"ground size must be even and positive, got {self.size}")
        object.__setattr__(self, "blocks", _normalize(self.blocks))
        ground = range(self.parity, self.size, 2)
        _check_partition(self.blocks, ground)
        if not is_noncrossing(self.blocks):
            raise ValueError(f"crossing partition {self.blocks}")

    @property
    def n(self):
        return self.size // 2

    def block_of(self, i):
        for b in self.blocks:
            if i in b:
                return b
        raise KeyError(i)

    def __len__(self):
        return len(self.blocks)


def succeeding_pairs(block, size):
    """Pairs (i, j) of cyclically consecutive members; (i, i) for a singleton."""
    b = sorted(block)
    return [(b[t], b[(t + 1) % len(b)]) for t in range(len(b))]


def next_in_block(block, i):
    b = sorted(block)
    return b[(b.index(i) + 1) % len(b)]


def complement(white):
    """Coarsest black partition whose union with ``white`` is non-crossing.

    Two odd indices share a block iff no white block separates them.

    >>> complement(NcPartition(8, 0, ((0, 4, 6), (2,)))).blocks
    ((1, 3), (5,), (7,))
    """
    odds = list(range(1 - white.parity, white.size, 2))
    parent = {x: x for x in odds}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in itertools.combinations(odds, 2):
        if not any(_separates(blk, a, b) for blk in white.blocks):
            parent[find(a)] = find(b)
    groups = {}
    for x in odds:
        groups.setdefault(find(x), []).append(x)
    return NcPartition(white.size, 1 - white.parity, tuple(groups.values()))


@dataclass(frozen=True)
class CncPartition:
    """White/black complementary pair with an optional marked white arc.

    ``mark`` is a succeeding pair ``(i, j)`` of a white block; its arc joins
    boundary points ``i+1`` and ``j`` and is where the vertex itself sits.
    """

    white: NcPartition
    black: NcPartition
    mark: tuple[int, int] | None = None

    @property
    def size(self):
        return self.white.size

    @property
    def n(self):
        return self.white.n

    def arcs(self):
        return [p for b in self.white.blocks for p in succeeding_pairs(b, self.size)]

    def arc_at(self, i):
        """The arc entered from white sector ``i`` (arriving on ray i+1)."""
        return (i, next_in_block(self.white.block_of(i), i))

    def black_side(self, arc):
        """Black block on the far side of ``arc`` (the one containing i+1)."""
        return self.black.block_of((arc[0] + 1) % self.size)

    def with_mark(self, mark):
        return CncPartition(self.white, self.black, mark)


def cnc(white_blocks, n, mark=None):
    """Build the cnc-partition on 2n sectors with the given white blocks.

    Whites not mentioned become singletons.
    """
    blocks = [tuple(b) for b in white_blocks]
    used = {x for b in blocks for x in b}
    for x in used:
        if x % 2 or not 0 <= x < 2 * n:
            raise ValueError(f"{x} is not a white sector index for n={n}")
    blocks += [(x,) for x in range(0, 2 * n, 2) if x not in used]
    white = NcPartition(2 * n, 0, tuple(blocks))
    c = CncPartition(white, complement(white))
    if mark is not None:
        mark = tuple(mark)
        if mark not in c.arcs():
            raise ValueError(f"mark {mark} is not a succeeding pair of a white block")
        c = c.with_mark(mark)
    return c


def _nc_partitions(items):
    """Non-crossing partitions of the (linearly ordered) ``items``."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    # the block of `first` picks a subset of the rest; the gaps between
    # its consecutive members are partitioned independently
    for r in range(len(rest) + 1):
        for chosen in itertools.combinations(range(len(rest)), r):
            cuts = [-1] + list(chosen) + [len(rest)]
            gaps = [rest[cuts[t] + 1:cuts[t + 1]] for t in range(len(cuts) - 1)]
            block = (first,) + tuple(rest[c] for c in chosen)
            for parts in itertools.product(*(list(_nc_partitions(g)) for g in gaps)):
                yield (block,) + tuple(b for p in parts for b in p)


def enumerate_cnc(n, marked=False):
    """All cnc-partitions on 2n sectors, in lexicographic order of white blocks.

    With ``marked`` each partition is yielded once per admissible mark.
    """
    if n < 1:
        raise ValueError("n must be positive")
    whites = sorted(_normalize(p) for p in _nc_partitions(tuple(range(0, 2 * n, 2))))
    for blocks in whites:
        c = cnc(blocks, n)
        if marked:
            for arc in sorted(c.arcs()):
                yield c.with_mark(arc)
        else:
            yield c


@dataclass(frozen=True)
class Arc:
    pair: tuple[int, int]
    endpoints: tuple[int, int]
    white_block: tuple[int, ...]
    black_block: tuple[int, ...]
    marked: bool = False


@dataclass(frozen=True)
class Region:
    color: str
    block: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ArcDiagram:
    size: int
    arcs: tuple[Arc, ...]
    regions: tuple[Region, ...]


def arc_diagram(c):
    """Arcs and complementary regions of the geometric representation.

    Each arc borders exactly one white and one black region.  The arc
    (i, j) runs from boundary point i+1 to j; sectors i+1..j-1 lie on its
    far side, and the first of them is black, so it names the black region.
    """
    size = c.size
    arcs = []
    for pair in sorted(c.arcs()):
        i, j = pair
        arcs.append(Arc(pair, ((i + 1) % size, j), c.white.block_of(i),
                        c.black_side(pair), pair == c.mark))
    regions = []
    for b in c.white.blocks:
        regions.append(Region("white", b, tuple(a.pair for a in arcs if a.white_block == b)))
    for b in c.black.blocks:
        regions.append(Region("black", b, tuple(a.pair for a in arcs if a.black_block == b)))
    return ArcDiagram(size, tuple(arcs), tuple(regions))
