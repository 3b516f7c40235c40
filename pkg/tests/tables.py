"""Critical portraits listed for the Lattes map and for g, as (N, sets) pairs.

Each entry is (label, white, black); a portrait is (denominator, [[numerators]]).
"""

from fractions import Fraction

LATTES = [
    ("1", (60, [[7, 22, 37], [43, 58]]), (60, [[2, 47], [15, 30, 45]])),
    ("2", (20, [[2, 7, 17], [10, 15]]), (20, [[2, 7, 17], [10, 15]])),
    ("3", (60, [[11, 26], [29, 59], [30, 45]]), (60, [[1, 46], [19, 34], [15, 45]])),
    ("4", (60, [[14, 59], [26, 41], [15, 45]]), (60, [[1, 31], [15, 30], [34, 49]])),
    ("5", (20, [[3, 18], [7, 17], [10, 15]]), (20, [[3, 18], [7, 17], [10, 15]])),
    ("6", (60, [[7, 37], [15, 30], [43, 58]]), (60, [[2, 47], [15, 45], [23, 38]])),
    ("1'", (60, [[2, 47], [15, 30, 45]]), (60, [[7, 22, 37], [43, 58]])),
    ("2'", (60, [[13, 58], [15, 30, 45]]), (60, [[2, 17], [23, 38, 53]])),
    ("3'", (20, [[1, 11], [5, 10], [14, 19]]), (20, [[1, 11], [5, 10], [14, 19]])),
    ("4'", (20, [[1, 6], [9, 19], [10, 15]]), (20, [[1, 6], [9, 19], [10, 15]])),
    ("5'", (60, [[13, 58], [15, 45], [22, 37]]), (60, [[2, 17], [23, 53], [30, 45]])),
    ("6'", (60, [[2, 47], [15, 45], [23, 38]]), (60, [[7, 37], [15, 30], [43, 58]])),
    ("1''", (20, [[3, 13, 18], [5, 10]]), (20, [[3, 13, 18], [5, 10]])),
    ("2''", (60, [[2, 17], [23, 38, 53]]), (60, [[13, 58], [15, 30, 45]])),
    ("3''", (60, [[1, 46], [15, 45], [19, 34]]), (60, [[11, 26], [29, 59], [30, 45]])),
    ("4''", (60, [[1, 31], [15, 30], [34, 49]]), (60, [[14, 59], [15, 45], [26, 41]])),
    ("5''", (60, [[2, 17], [23, 53], [30, 45]]), (60, [[13, 58], [15, 45], [22, 37]])),
    ("6''", (20, [[2, 17], [3, 13], [5, 10]]), (20, [[2, 17], [3, 13], [5, 10]])),
]

G_MAP = [
    ("g1", (27, [[4, 22], [12, 21]]), (27, [[5, 14], [15, 24]])),
    ("g2", (27, [[7, 25], [12, 21]]), (27, [[2, 11], [15, 24]])),
]

# quadratic portraits of the two polynomials in the degree-2 non-example
QUADRATIC = [
    ("P_w", (12, [[1, 7]])),
    ("P_b", (28, [[27, 13]])),
]


def to_sets(portrait):
    den, sets = portrait
    return tuple(sorted(tuple(sorted(Fraction(x, den) for x in a)) for a in sets))


def pair(entry):
    _, w, b = entry
    return (to_sets(w), to_sets(b))
