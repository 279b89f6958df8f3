"""Nets of quadrics in P4: the discriminant quintic and related loci.

For a net lambda1 F1 + lambda2 F2 + lambda3 F3 with symmetric matrices A_i,
the quintic Delta5(lambda) = det(sum lambda_i A_i) parametrises the
singular members.  A smooth point lambda of Delta5 gives a cone whose vertex
x spans the kernel of the pencil matrix; x_i x_k is proportional to the
cofactor U_ik there.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import Poly, det
from .curves import QuadricNetModel, net_action, proportionality, pullback, read_form
from .symmetry import ProjMap, SymmetryError, kernel, mat_det, rref

LVARS = ("l1", "l2", "l3")


class QuadNetError(Exception):
    pass


class FactorizationError(QuadNetError):
    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


class EliminationError(QuadNetError):
    pass


class RankError(QuadNetError):
    pass


class BasisError(QuadNetError, ValueError):
    pass


def _lin(field, coeffs):
    return Poly(LVARS, {}, field).linear_form(coeffs)


def pencil_matrix(net):
    """The symmetric 5x5 matrix (u_ik) of linear forms in lambda."""
    mats = net.matrices()
    field = net.quadrics[0].field
    return tuple(tuple(_lin(field, [A[i][k] for A in mats]) for k in range(5)) for i in range(5))


def delta5(net):
    return det(pencil_matrix(net))


def pencil_at(net, lam):
    field = net.quadrics[0].field
    lam = [field(c) for c in lam]
    mats = net.matrices()
    return tuple(tuple(sum((lam[j] * mats[j][i][k] for j in range(3)), field.zero) for k in range(5))
                 for i in range(5))


def jacobian_minors(net):
    """The ten 3x3 minors of (dF_i/dx_k), keyed by 1-based column triples."""
    vars = QuadricNetModel.VARS
    J = [[q.derivative(v) for v in vars] for q in net.quadrics]
    return {tuple(c + 1 for c in cols): det([[J[i][c] for c in cols] for i in range(3)])
            for cols in combinations(range(5), 3)}


def verify_factorization(q, factors):
    """Scalar c with q == c * prod(factors); raises FactorizationError otherwise."""
    if sum(f.degree() for f in factors) != q.degree():
        raise FactorizationError(f"factor degrees sum to {sum(f.degree() for f in factors)}, "
                                 f"not {q.degree()}")
    prod = factors[0]
    for f in factors[1:]:
        prod = prod * f
    c = proportionality(prod, q)
    if c is None or c.is_zero():
        e0 = max(prod.terms)
        c0 = q.coeff(e0) / prod.terms[e0]
        raise FactorizationError("product of factors is not proportional to the quintic", q - prod * c0)
    return c


def catalog_factors(entry):
    """Delta5 factors recorded with a catalog net entry."""
    raw = entry.expected.get("delta5_factors")
    if raw is None:
        raise QuadNetError(f"{entry.id} has no recorded Delta5 factors")
    field = entry.model.quadrics[0].field
    return [read_form(obj, LVARS, field) for obj in raw]


def _conic_matrix(c):
    field = c.field
    M = [[field.zero] * 3 for _ in range(3)]
    for e, v in c.terms.items():
        idx = [k for k in range(3) for _ in range(e[k])]
        i, j = idx
        if i == j:
            M[i][i] = v
        else:
            M[i][j] = M[j][i] = v / 2
    return M


def _line_vector(l):
    return [l.coeff(tuple(1 if k == j else 0 for k in range(3))) for j in range(3)]


def _cross(u, v):
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def _parallel(u, v):
    return all((u[i] * v[j] - u[j] * v[i]).is_zero() for i in range(3) for j in range(i + 1, 3))


def polar_triangle_check(conic, lines):
    """Each line is the polar, with respect to the conic, of the opposite vertex."""
    if conic.degree() != 2 or len(lines) != 3 or any(l.degree() != 1 for l in lines):
        raise QuadNetError("need a conic and three lines")
    M = _conic_matrix(conic)
    vec = [_line_vector(l) for l in lines]
    for k in range(3):
        a, b = [vec[j] for j in range(3) if j != k]
        v = _cross(a, b)
        if all(x.is_zero() for x in v):
            raise QuadNetError("two of the lines coincide")
        polar = [sum((M[i][j] * v[j] for j in range(3)), v[0].field.zero) for i in range(3)]
        if all(x.is_zero() for x in polar) or not _parallel(polar, vec[k]):
            return False
    return True


def check_equivariance(net, g, N=None):
    """Delta5 of the pulled-back net is det(g)^2 Delta5(lambda) and Delta5(N^T lambda)."""
    N = N if N is not None else net_action(net, g)
    moved = QuadricNetModel(tuple(pullback(q, g, QuadricNetModel.VARS) for q in net.quadrics))
    lhs = delta5(moved)
    field = net.quadrics[0].field
    images = {LVARS[j]: _lin(field, [N[i][j] for i in range(3)]) for j in range(3)}
    d = delta5(net)
    return lhs == d * mat_det(g.matrix) ** 2 and lhs == d.compose(images, LVARS)


# --- splitting types ----------------------------------------------------------

_CASES = {
    (5,): 1, (1, 4): 2, (2, 3): 3, (1, 1, 3): 4, (1, 2, 2): 5, (1, 1, 1, 2): 6, (1, 1, 1, 1, 1): 7,
}


@dataclass(frozen=True)
class SplitClass:
    case: int
    count: int
    blocks: tuple


def _blocks(net):
    parent = list(range(5))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for q in net.quadrics:
        for e in q.terms:
            idx = [k for k in range(5) if e[k]]
            if len(idx) == 2:
                parent[find(idx[0])] = find(idx[1])
    groups = {}
    for k in range(5):
        groups.setdefault(find(k), []).append(k + 1)
    return tuple(sorted((tuple(g) for g in groups.values()), key=lambda g: (len(g), g)))


def classify_split(net, basis=None, double_points=()):
    """Splitting case 1..7 from the block structure of the net's variable supports.

    Each block of size s contributes a factor of degree s to Delta5, and the
    factors meet in sum s_i s_j points, the count of root-form systems.
    ``basis`` is an optional change of coordinates applied first; for the
    unsplit case the supplied double points are counted instead.
    """
    if basis is not None:
        try:
            g = ProjMap.from_rows(basis, net.quadrics[0].field)
        except SymmetryError as exc:
            raise BasisError(f"declared basis change is not invertible: {exc}") from None
        net = QuadricNetModel(tuple(pullback(q, g, QuadricNetModel.VARS) for q in net.quadrics))
    blocks = _blocks(net)
    sizes = tuple(len(b) for b in blocks)
    case = _CASES[sizes]
    count = sum(a * b for a, b in combinations(sizes, 2)) + len(double_points)
    return SplitClass(case, count, blocks)


# --- elimination --------------------------------------------------------------

@dataclass(frozen=True)
class Elimination:
    quadrics: tuple  # basis of the members with no x_k^2 term
    substituted: object = None  # quartic after x_k = -R/L, when one member is x_k L + R


def eliminate_square(net, k, into=None):
    """Members of the net with zero x_k^2 coefficient (k is 1-based).

    The first basis quadric is free of x_k.  When the second is linear in
    x_k, say x_k L + R, substituting x_k = -R/L into a net member
    a x_k^2 + x_k M + N gives the quartic a R^2 - R M L + N L^2.
    """
    vars = QuadricNetModel.VARS
    if not 1 <= k <= 5:
        raise EliminationError("variable index must be in 1..5")
    v = vars[k - 1]
    qs = net.quadrics
    field = qs[0].field
    sq = tuple(2 if i == k - 1 else 0 for i in range(5))
    row = [q.coeff(sq) for q in qs]
    if all(c.is_zero() for c in row):
        raise EliminationError(f"x{k}^2 does not occur in the net")
    zero = Poly(qs[0].vars, {}, field)
    m = [sum((qs[i] * c[i] for i in range(3)), zero) for c in kernel((tuple(row),))]
    # a member free of x_k: its x_k x_j coefficients vanish
    cross = [tuple(1 if i in (k - 1, j) else 0 for i in range(5)) for j in range(5) if j != k - 1]
    free = kernel(tuple(tuple(p.coeff(e) for p in m) for e in cross))
    if not free:
        raise EliminationError(f"x{k} occurs off-diagonally in every member without x{k}^2")
    c = free[0]
    q1 = m[0] * c[0] + m[1] * c[1]
    q2 = m[0] if not c[1].is_zero() else m[1]
    parts = q2.coeffs_in(v)
    substituted = None
    if parts.get(1) is not None and not parts[1].is_zero():
        L, R = parts[1], parts.get(0, Poly(parts[1].vars, {}, field))
        cands = [i for i in range(3) if not row[i].is_zero()]
        target = qs[into if into is not None else cands[-1]]
        tp = target.coeffs_in(v)
        zero = Poly(L.vars, {}, field)
        a, M, Nn = tp.get(2, zero), tp.get(1, zero), tp.get(0, zero)
        substituted = (a * R * R - R * M * L + Nn * L * L).with_vars(vars)
    return Elimination((q1, q2), substituted)


# --- Delta5 <-> D10 correspondence ------------------------------------------------

def cofactor(M, i, k):
    minor = [row[:k] + row[k + 1:] for r, row in enumerate(M) if r != i]
    return det(minor) * (-1 if (i + k) % 2 else 1)


def correspondence_check(net, lam):
    """Kernel point x of the pencil at lambda, checking x_i x_k = rho U_ik."""
    P = pencil_at(net, lam)
    red, piv = rref(P)
    rank = len(piv)
    if rank == 5:
        raise RankError("lambda is not on Delta5")
    if rank < 4:
        raise RankError(f"pencil has rank {rank} at lambda: a double point of Delta5")
    x = kernel(P)[0]
    U = [[cofactor(P, i, k) for k in range(5)] for i in range(5)]
    rho = None
    for i in range(5):
        for k in range(5):
            if not U[i][k].is_zero():
                rho = (x[i] * x[k]) / U[i][k]
                break
        if rho is not None:
            break
    if rho is None:
        raise RankError("all cofactors vanish")
    for i in range(5):
        for k in range(5):
            if x[i] * x[k] != rho * U[i][k]:
                raise QuadNetError(f"x_{i + 1} x_{k + 1} is not proportional to U_{i + 1}{k + 1}")
    return tuple(x)
