"""Dev helper: search for catalog generators the source text leaves implicit.

Prints matrices; results are pasted into build_catalog.py and re-verified
there by closure and invariance.
"""

import itertools
import math
import sys

from curvesym.algebra import DEFAULT_FIELD as F, named_constants, parse_poly
from curvesym.curves import BiForm33, InvarianceError, fiber_lift, invariance
from curvesym.symmetry import BiMoebius, ProjMap, closure, classify, mat_det, order_histogram

C = named_constants(F)
i, j, eps = C["i"], C["j"], C["eps"]
VB = ("x1", "x2", "y1", "y2")


def ok(model, g):
    try:
        invariance(model, g)
        return True
    except InvarianceError:
        return False


def octa_48():
    b = "2/3"
    M = BiForm33(parse_poly(f"(x1*y1+x2*y2)^3 + {b}*(x1*y1-x2*y2)*(x1*y2-x2*y1)*(x1*y2+x2*y1)", VB))
    gens = [BiMoebius.from_rows([[-1, 0], [0, 1]], [[-1, 0], [0, 1]]),
            BiMoebius.from_rows([[0, 1], [1, 0]], [[0, 1], [1, 0]])]
    assert all(ok(M, g) for g in gens)
    found3 = None
    signs = list(itertools.product((1, -1), repeat=3))
    for (a1, a2, a3), (b1, b2, b3) in itertools.product(signs, signs):
        A = [[a1 * i, a1 * a2 * i], [1, a3]]
        B = [[b1 * i, b1 * b2 * i], [1, b3]]
        if mat_det([[F(x) for x in r] for r in A]).is_zero() or mat_det([[F(x) for x in r] for r in B]).is_zero():
            continue
        g = BiMoebius.from_rows(A, B)
        if ok(M, g):
            found3 = (A, B)
            print("order-3 element", A, B)
            break
    gens.append(BiMoebius.from_rows(*found3))
    print("nonswap closure", closure(gens).order)
    units = [F(1), i, F(-1), -i]
    shapes = []
    for a, b in itertools.product(units, units):
        shapes.append([[a, 0], [0, b]])
        shapes.append([[0, a], [b, 0]])
    for A, B in itertools.product(shapes, shapes):
        g = BiMoebius(tuple(tuple(F(x) for x in r) for r in A), tuple(tuple(F(x) for x in r) for r in B), True,
                      canonical=False)
        if ok(M, g):
            print("swap element", A, B)
            G = closure(gens + [g])
            print("full closure", G.order, classify(G), order_histogram(G))
            return



def klein_group(k=1):
    """Klein's icosahedral Moebius group with eps replaced by eps^k (Galois)."""
    e = eps
    S = [[e ** 3, 0], [0, e ** 2]]
    T = [[-(e - e ** 4), e ** 2 - e ** 3], [e ** 2 - e ** 3, e - e ** 4]]
    U = [[0, -1], [1, 0]]
    if k != 1:
        # Galois automorphism of Q(zeta_120) restricted to eps -> eps^k
        s = next(s for s in range(1, 120) if (24 * s - 24 * k) % 120 == 0 and math.gcd(s, 120) == 1)
        conv = lambda M: [[F(x).conjugate_power(s) for x in r] for r in M]
        S, T, U = conv(S), conv(T), conv(U)
    return closure([ProjMap.from_rows(S), ProjMap.from_rows(T), ProjMap.from_rows(U)])


def bring_120():
    M = BiForm33(parse_poly("x1^3*y1^2*y2 + x1^2*x2*y2^3 + x1*x2^2*y1^3 - x2^3*y1*y2^2", VB))
    gens = [BiMoebius.from_rows([[eps, 0], [0, eps ** 4]], [[eps ** 2, 0], [0, eps ** 3]]),
            BiMoebius.from_rows([[0, 1], [-1, 0]], [[0, 1], [-1, 0]]),
            BiMoebius.from_rows([[eps ** 2, 0], [0, eps ** 3]], [[0, -eps ** 4], [eps, 0]], swap=True)]
    assert all(ok(M, g) for g in gens), [ok(M, g) for g in gens]
    H = closure(gens)
    print("subgroup", H.order, order_histogram(H))
    groups = {k: klein_group(k) for k in (1, 2)}
    for kx in (1, 2):
        for X in groups[kx].elements:
            if X.matrix[0][1].is_zero() or X.matrix[1][0].is_zero():
                continue
            for ky in (1, 2):
                for Y in groups[ky].elements:
                    g = BiMoebius(X.matrix, Y.matrix)
                    if ok(M, g):
                        print("extra element", kx, ky, X.matrix, Y.matrix)
                        G = closure(gens + [g])
                        print("closure", G.order, order_histogram(G))
                        return


if __name__ == "__main__":
    globals()[sys.argv[1]]()
