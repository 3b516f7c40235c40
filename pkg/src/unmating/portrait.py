"""Rational angle dynamics under t -> d t mod 1 and critical-portrait checks."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

_ANGLE_RE = re.compile(r"^\s*(-?\d+)\s*/\s*(\d+)\s*$|^\s*(-?\d+)\s*$")


class PortraitSyntaxError(ValueError):
    pass


def parse_angle(text):
    """Parse ``p/q`` (or an integer) into a reduced angle in [0, 1).

    Decimal input is rejected so that angles stay exact.

    >>> parse_angle("14/12")
    Fraction(1, 6)
    """
    m = _ANGLE_RE.match(text)
    if not m:
        raise PortraitSyntaxError(f"not an exact angle: {text!r}")
    if m.group(3) is not None:
        return Fraction(int(m.group(3))) % 1
    q = int(m.group(2))
    if q == 0:
        raise PortraitSyntaxError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), q) % 1


def fmt(x):
    return f"{x.numerator}/{x.denominator}"


def mu(theta, d):
    return (d * Fraction(theta)) % 1


def orbit(theta, d):
    """Forward orbit of ``theta`` until the first repeat.

    Returns ``(preperiod, period, points)`` where ``points`` lists each
    distinct point once, in order.
    """
    seen = {}
    pts = []
    x = Fraction(theta) % 1
    while x not in seen:
        seen[x] = len(pts)
        pts.append(x)
        x = mu(x, d)
    pre = seen[x]
    return pre, len(pts) - pre, pts


def is_periodic(theta, d):
    return orbit(theta, d)[0] == 0


@dataclass(frozen=True)
class Portrait:
    degree: int
    sets: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def make(cls, degree, sets):
        return cls(degree, tuple(tuple(sorted(Fraction(x) % 1 for x in a)) for a in sets))

    def points(self):
        return sorted({x for a in self.sets for x in a})

    def postcritical_angles(self):
        """Union of forward orbits mu^k(A_j), k >= 1."""
        out = set()
        for a in self.sets:
            for x in a:
                _, _, pts = orbit(mu(x, self.degree), self.degree)
                out.update(pts)
        return sorted(out)


def parse_portrait(text):
    degree = None
    sets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, *rest = line.split()
        if kw == "degree" and len(rest) == 1:
            degree = int(rest[0])
        elif kw == "set" and rest:
            try:
                sets.append([parse_angle(t) for t in rest])
            except PortraitSyntaxError as exc:
                raise PortraitSyntaxError(f"line {lineno}: {exc}") from None
        else:
            raise PortraitSyntaxError(f"line {lineno}: cannot parse {line!r}")
    if degree is None:
        raise PortraitSyntaxError("missing 'degree' line")
    return Portrait.make(degree, sets)


def format_portrait(p):
    lines = [f"degree {p.degree}"]
    lines += ["set " + " ".join(fmt(x) for x in a) for a in p.sets]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# gaps

def _in_open_arc(x, a, b):
    """x strictly inside the counterclockwise arc from a to b."""
    if a < b:
        return a < x < b
    return x > a or x < b


def _crosses(chord, angle_set):
    a, b = chord
    inside = outside = False
    for x in angle_set:
        if x in (a, b):
            continue
        if _in_open_arc(x, a, b):
            inside = True
        else:
            outside = True
    return inside and outside


@dataclass
class GapStructure:
    """1-gaps of a portrait: the circle cut at all portrait angles."""

    cuts: list[Fraction]
    label: list[int]  # gap label of interval [cuts[t], cuts[t+1])
    boundary_hits: set = field(default_factory=set)

    def gap_of(self, x):
        """Label of the interval [c_t, c_{t+1}) containing ``x``.

        A point sitting on a cut is assigned to the interval starting there,
        i.e. to the gap on its counterclockwise side.
        """
        cuts = self.cuts
        if x in cuts:
            self.boundary_hits.add(x)
        t = max((i for i, c in enumerate(cuts) if c <= x), default=len(cuts) - 1)
        return self.label[t]


def one_gaps(p):
    cuts = p.points()
    m = len(cuts)
    if m == 0:
        return GapStructure([Fraction(0)], [0])
    mids = []
    for t in range(m):
        a, b = cuts[t], cuts[(t + 1) % m]
        if t == m - 1:
            b += 1
        mids.append(((a + b) / 2) % 1)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in itertools.combinations(range(m), 2):
        chord = (mids[s], mids[t])
        if not any(_crosses(chord, a) for a in p.sets):
            parent[find(s)] = find(t)
    return GapStructure(cuts, [min(u for u in range(m) if find(u) == find(t)) for t in range(m)])


def gaps(p, n, points=None):
    """Partition ``points`` (default: the postcritical angles) into n-gaps."""
    gs = one_gaps(p)
    pts = p.postcritical_angles() if points is None else sorted(points)
    classes = {}
    for x in pts:
        itin = []
        y = x
        for _ in range(n):
            itin.append(gs.gap_of(y))
            y = mu(y, p.degree)
        classes.setdefault(tuple(itin), []).append(x)
    return sorted(classes.values())


def separation_time(p, x, y, gs=None):
    """First k with mu^k x, mu^k y in different 1-gaps, or None if never.

    The pair's joint orbit is eventually periodic, so a repeated state ends
    the search.
    """
    gs = gs or one_gaps(p)
    seen = set()
    k = 0
    while (x, y) not in seen:
        if gs.gap_of(x) != gs.gap_of(y):
            return k
        seen.add((x, y))
        x, y = mu(x, p.degree), mu(y, p.degree)
        k += 1
    return None


# ---------------------------------------------------------------------------
# validation

@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class PortraitReport:
    results: list[AxiomResult]
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def format(self):
        lines = []
        for r in self.results:
            line = f"{r.name}: {'pass' if r.passed else 'FAIL'}"
            if r.witness:
                line += f"  [{r.witness}]"
            lines.append(line)
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"verdict: {'critical portrait' if self.ok else 'not a critical portrait'}")
        return "\n".join(lines)


def _fmt_set(a):
    return "{" + ", ".join(fmt(x) for x in a) + "}"


def validate_portrait(p):
    d = p.degree
    res = []

    # CP1
    wit = ""
    if d < 2:
        wit = f"degree {d} < 2"
    for a in p.sets:
        if not a:
            wit = wit or "empty set"
        if len(set(a)) != len(a):
            wit = wit or f"repeated angle in {_fmt_set(a)}"
    for a, b in itertools.combinations(p.sets, 2):
        common = set(a) & set(b)
        if common:
            wit = wit or f"{_fmt_set(a)} and {_fmt_set(b)} share {fmt(min(common))}"
    res.append(AxiomResult("CP1", not wit, wit))

    # CP2
    wit = ""
    for a in p.sets:
        images = {mu(x, d) for x in a}
        if len(images) > 1:
            wit = f"{_fmt_set(a)} maps to {_fmt_set(sorted(images))}"
            break
    res.append(AxiomResult("CP2", not wit, wit))

    # CP3
    excess = sum(len(a) - 1 for a in p.sets)
    res.append(AxiomResult("CP3", excess == d - 1,
                           "" if excess == d - 1 else f"sum(#A-1) = {excess}, d-1 = {d - 1}"))

    # CP4
    wit = ""
    for a, b in itertools.combinations(p.sets, 2):
        for s, u in itertools.combinations(a, 2):
            if _crosses((s, u), b):
                t = next(x for x in b if _in_open_arc(x, s, u))
                v = next(x for x in b if x not in (s, u) and not _in_open_arc(x, s, u))
                wit = f"{_fmt_set(a)} crosses {_fmt_set(b)} via {fmt(s)}, {fmt(t)}, {fmt(u)}, {fmt(v)}"
                break
        if wit:
            break
    res.append(AxiomResult("CP4", not wit, wit))

    # CP5
    periodic = [x for a in p.sets for x in a if is_periodic(x, d)]
    res.append(AxiomResult("CP5", not periodic,
                           f"{fmt(periodic[0])} is periodic" if periodic else ""))

    post = set(p.postcritical_angles())

    # CP6
    wit = ""
    for a in p.sets:
        hit = sorted(post & set(a))
        if len(hit) > 1:
            wit = f"{_fmt_set(a)} contains {', '.join(map(fmt, hit))} from the postcritical angles"
            break
    res.append(AxiomResult("CP6", not wit, wit))

    # CP7
    notes = []
    basic_ok = all(r.passed for r in res[:4])
    if not basic_ok:
        res.append(AxiomResult("CP7", False, "skipped: requires CP1-CP4"))
    else:
        gs = one_gaps(p)
        wit = ""
        n0 = 0
        for x, y in itertools.combinations(sorted(post), 2):
            k = separation_time(p, x, y, gs)
            if k is None:
                wit = f"{fmt(x)} and {fmt(y)} lie in a common n-gap for every n"
                break
            n0 = max(n0, k + 1)
        if gs.boundary_hits:
            notes.append("postcritical angle(s) " + ", ".join(fmt(x) for x in sorted(gs.boundary_hits))
                         + " lie on portrait angles; counted in the gap on their counterclockwise side")
        res.append(AxiomResult("CP7", not wit, wit or f"n0 = {n0}"))
    return PortraitReport(res, notes)
