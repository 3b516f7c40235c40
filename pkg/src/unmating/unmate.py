"""From a pseudo-equator to the critical portraits of the two polynomials.

All arithmetic is exact (:class:`fractions.Fraction`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .connection import Orientation, classify, outline


class UnmateError(ValueError):
    pass


# ---------------------------------------------------------------------------
# edge replacement matrix

def _orientation_of(w):
    k = w.k
    order = w.post_order()
    if len(order) != k or sorted(order) != list(range(k)):
        raise UnmateError(f"walk does not pass every post exactly once: {order}")
    pos = order.index(0)
    order = order[pos:] + order[:pos]
    if order == list(range(k)):
        return Orientation.PRESERVING
    if order == [0] + list(range(k - 1, 0, -1)):
        return Orientation.REVERSING
    raise UnmateError(f"post order {order} is neither preserving nor reversing")


def segments(w):
    """Per 0-edge E_i, the signed word of 1-edge types that E_i is deformed to.

    On a reversing walk E_i runs backwards along the outline, so its word is
    the outline stretch from post i+1 to post i read in reverse, negated.
    """
    orient = _orientation_of(w)
    pos = w.post_positions()
    n = len(w.passages)
    words = []
    for i in range(w.k):
        a, b = pos[i], pos[(i + 1) % w.k]
        if orient is Orientation.PRESERVING:
            idx = [(a + t) % n for t in range((b - a) % n)]
            words.append(tuple((w.passages[t].out_type, 1) for t in idx))
        else:
            idx = [(b + t) % n for t in range((a - b) % n)]
            words.append(tuple((w.passages[t].out_type, -1) for t in reversed(idx)))
    return orient, words


def edge_matrix(w):
    """m_ij = number of type-j edges in the deformed 0-edge E_i."""
    _, words = segments(w)
    return abelianize(words, w.k)


def abelianize(words, k):
    m = [[0] * k for _ in range(k)]
    for i, word in enumerate(words):
        for j, _ in word:
            m[i][j] += 1
    return tuple(tuple(row) for row in m)


def matmul(a, b):
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0])))
                 for i in range(len(a)))


def is_primitive(m):
    """Wielandt: a primitive k x k matrix has M^((k-1)^2 + 1) > 0."""
    k = len(m)
    pattern = tuple(tuple(int(x > 0) for x in row) for row in m)
    p = pattern
    for _ in range((k - 1) ** 2):
        p = tuple(tuple(int(x > 0) for x in row) for row in matmul(p, pattern))
    return all(x > 0 for row in p for x in row)


def nullspace(a):
    """Basis of the right nullspace of a rational matrix (Gauss-Jordan)."""
    rows = [list(map(Fraction, r)) for r in a]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def pf_vector(m, d):
    """Positive eigenvector of ``m`` for eigenvalue ``d``, normalized to sum 1."""
    k = len(m)
    for j in range(k):
        col = sum(m[i][j] for i in range(k))
        if col != d:
            raise UnmateError(f"column {j} sums to {col}, expected {d}")
    if not is_primitive(m):
        raise UnmateError("edge matrix is not primitive")
    shifted = [[m[i][j] - (d if i == j else 0) for j in range(k)] for i in range(k)]
    basis = nullspace(shifted)
    if len(basis) != 1:
        raise UnmateError(f"eigenspace for {d} has dimension {len(basis)}")
    v = basis[0]
    total = sum(v)
    l = tuple(x / total for x in v)
    if any(x <= 0 for x in l):
        raise UnmateError(f"eigenvector {l} is not positive")
    return l


# ---------------------------------------------------------------------------
# angles

def base_angle(s, l):
    """External angle of post 0: 0 if fixed, else l(p_0, p_j)/(d-1)."""
    j = s.vertices[s.post_vertex(0)].image
    if j == 0:
        return Fraction(0)
    return sum(l[:j], Fraction(0)) / (s.degree - 1)


@dataclass(frozen=True)
class AngleAssignment:
    base: Fraction
    edge_lengths: tuple[Fraction, ...]    # per type, l_j / d
    passage_angles: tuple[Fraction, ...]  # one per passage of the walk, mod 1
    total: Fraction

    def post_angles(self, w):
        pos = w.post_positions()
        return {j: self.passage_angles[pos[j]] for j in sorted(pos)}


def edge_angles(w, l, theta0):
    """Cumulative angle at each passage, starting from ``theta0`` at post 0."""
    lengths = tuple(Fraction(x) / w.degree for x in l)
    acc = Fraction(theta0)
    angles = []
    total = Fraction(0)
    for p in w.passages:
        angles.append(acc % 1)
        acc += lengths[p.out_type]
        total += lengths[p.out_type]
    return AngleAssignment(Fraction(theta0), lengths, tuple(angles), total)


@dataclass(frozen=True)
class CriticalPortraitPair:
    degree: int
    white: tuple[tuple[Fraction, ...], ...]
    black: tuple[tuple[Fraction, ...], ...]

    def format(self):
        return f"w: {format_sets(self.white)}\nb: {format_sets(self.black)}"


def canonical_sets(sets):
    return tuple(sorted(tuple(sorted(x % 1 for x in a)) for a in sets))


def format_sets(sets):
    return " ".join("{" + ", ".join(f"{x.numerator}/{x.denominator}" for x in a) + "}"
                    for a in canonical_sets(sets))


def extract_portraits(s, conn, w, angles):
    """Angle sets of the non-trivial white and black components at each vertex."""
    white, black = {}, {}
    for p, theta in zip(w.passages, angles.passage_angles):
        c = conn.at(s, p.vertex)
        wb = c.white.block_of(p.arc[0])
        bb = c.black_side(p.arc)
        white.setdefault((p.vertex, wb), []).append(theta)
        black.setdefault((p.vertex, bb), []).append((1 - theta) % 1)
    for (v, b), got in list(white.items()) + list(black.items()):
        if len(got) != len(b):
            raise UnmateError(f"vertex {v}: block {b} has {len(b)} arcs but {len(got)} passages")
    wsets = [a for (v, b), a in white.items() if len(b) >= 2]
    bsets = [a for (v, b), a in black.items() if len(b) >= 2]
    return CriticalPortraitPair(s.degree, canonical_sets(wsets), canonical_sets(bsets))


@dataclass(frozen=True)
class Unmating:
    walk: object
    matrix: tuple[tuple[int, ...], ...]
    lengths: tuple[Fraction, ...]
    angles: AngleAssignment
    portraits: CriticalPortraitPair


def unmate(s, conn, w=None):
    """Run the whole pipeline for a connection whose outline is preserving."""
    if w is None:
        w = outline(s, conn)
    cl = classify(s, w)
    if cl.orientation is not Orientation.PRESERVING:
        raise UnmateError(f"outline is {cl.orientation.value}, not preserving")
    m = edge_matrix(w)
    l = pf_vector(m, s.degree)
    theta0 = base_angle(s, l)
    a = edge_angles(w, l, theta0)
    return Unmating(w, m, l, a, extract_portraits(s, conn, w, a))


# ---------------------------------------------------------------------------
# edge substitutions

@dataclass(frozen=True)
class EdgeSubstitution:
    """E_i -> word of signed types.  A negative letter is run backwards."""

    words: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def k(self):
        return len(self.words)

    @property
    def matrix(self):
        return abelianize(self.words, self.k)

    @property
    def preserving(self):
        signs = {sgn for word in self.words for _, sgn in word}
        if signs == {1}:
            return True
        if signs == {-1}:
            return False
        return None

    def format(self):
        lines = []
        for i, word in enumerate(self.words):
            letters = " ".join(f"{'' if sgn > 0 else '-'}{j}" for j, sgn in word)
            lines.append(f"E{i} -> {letters}")
        return "\n".join(lines)


def substitution(w):
    _, words = segments(w)
    return EdgeSubstitution(tuple(words))


def compose(a, b):
    """Deform by ``a`` first, then by the lift ``b``: each letter j of a_i
    becomes b_j, reversed and negated when the letter is negative."""
    if a.k != b.k:
        raise UnmateError(f"cannot compose substitutions on {a.k} and {b.k} types")
    words = []
    for word in a.words:
        out = []
        for j, sgn in word:
            if not 0 <= j < b.k:
                raise UnmateError(f"type {j} out of range")
            sub = b.words[j]
            if sgn > 0:
                out.extend(sub)
            else:
                out.extend((t, -s) for t, s in reversed(sub))
        words.append(tuple(out))
    return EdgeSubstitution(tuple(words))
