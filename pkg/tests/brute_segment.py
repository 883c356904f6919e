"""Hand-style enumeration for A = {0, 1, 2} on the line, from the definitions.

Standalone: imports nothing from gkzstab. Prints a JSON object with the
triangulations, the Chow and Hurwitz polytopes, the degrees and the two
membership certificates.

    python3 tests/brute_segment.py
"""

import json
from fractions import Fraction
from itertools import combinations
from math import factorial

A = [0, 1, 2]
N_DIM = 1
LEFT, RIGHT = min(A), max(A)


def triangulations():
    """Subsets of segments [a, b] (a < b in A) tiling [0, 2] with disjoint
    interiors: consecutive segments chained from LEFT to RIGHT."""
    segments = [(a, b) for a, b in combinations(A, 2)]
    out = []
    for r in range(1, len(segments) + 1):
        for subset in combinations(segments, r):
            chain = sorted(subset)
            if chain[0][0] != LEFT or chain[-1][1] != RIGHT:
                continue
            if all(chain[k][1] == chain[k + 1][0] for k in range(len(chain) - 1)):
                out.append(tuple(chain))
    return sorted(out)


def gkz(tri):
    # entry j: total length of the segments with endpoint a_j
    return tuple(sum(b - a for a, b in tri if x in (a, b)) for x in A)


def massive(tri, level):
    # level 1: the segments themselves (all lie in the 1-face P);
    # level 0: endpoints of segments that are vertices of P, volume 1
    if level == 1:
        return gkz(tri)
    used = {x for seg in tri for x in seg}
    return tuple(1 if x in used and x in (LEFT, RIGHT) else 0 for x in A)


def hurwitz(tri):
    top, below = massive(tri, 1), massive(tri, 0)
    return tuple(N_DIM * a - b for a, b in zip(top, below))


def vertices(vectors):
    """Extreme points of finitely many vectors lying on a line or at a point:
    the two ends of the range of a generic linear functional."""
    distinct = sorted(set(vectors))
    if len(distinct) == 1:
        return distinct
    weight = [3 ** k for k in range(len(distinct[0]))]
    key = sorted(distinct, key=lambda v: sum(w * x for w, x in zip(weight, v)))
    return sorted({key[0], key[-1]})


def combination_on_segment(point, ends):
    """Solve point = t * ends[0] + (1 - t) * ends[1] exactly; None if no t."""
    p, q = ends
    t = None
    for a, b, x in zip(p, q, point):
        if a != b:
            t = Fraction(x - b, a - b)
            break
    if t is None:
        return (Fraction(1), Fraction(0)) if tuple(p) == tuple(point) else None
    if all(t * a + (1 - t) * b == x for a, b, x in zip(p, q, point)) and 0 <= t <= 1:
        return (t, 1 - t)
    return None


def main():
    tris = triangulations()
    ch = vertices([gkz(t) for t in tris])
    hu = vertices([hurwitz(t) for t in tris])
    vol = Fraction(RIGHT - LEFT)
    bvol = Fraction(2)  # two endpoints, counting measure
    deg_r = factorial(N_DIM + 1) * vol
    deg_hu = N_DIM * factorial(N_DIM + 1) * vol - factorial(N_DIM) * bvol
    scaled_hu = [tuple(deg_r * x for x in v) for v in hu]
    numerical = []
    for v in ch:
        point = tuple(deg_hu * x for x in v)
        numerical.append({
            "point": [str(x) for x in point],
            "coefficients": [str(c) for c in combination_on_segment(point, scaled_hu)],
            "against": [[str(x) for x in w] for w in scaled_hu],
        })
    c = factorial(N_DIM + 1) * vol / len(A)
    balanced = (c,) * len(A)
    chow_coeffs = combination_on_segment(balanced, ch)
    print(json.dumps({
        "triangulations": [[list(s) for s in t] for t in tris],
        "chow_vertices": [list(v) for v in ch],
        "hurwitz_vertices": [list(v) for v in hu],
        "deg_r": str(deg_r),
        "deg_hu": str(deg_hu),
        "numerical_ss": numerical,
        "chow_ss": {
            "constant": str(c),
            "coefficients": [str(x) for x in chow_coeffs],
        },
    }, indent=2))


if __name__ == "__main__":
    main()
