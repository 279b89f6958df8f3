"""Fixed points of automorphisms, branch data and the Zeuthen relation.

The Zeuthen (Riemann-Hurwitz) relation in the form used throughout:

    2(p - 1) = 2n(p' - 1) + sum over orbits of (n / n_i)(n_i - 1)

Fixed points are geometric points of the curve counted without
multiplicity.  Models over P1 (BiForm33, trigonal, hyperelliptic) are handled
in the finite algebra K[t]/(q) where q cuts out the fixed points on the base,
so irrational fixed points need no field extension.  Collineation models use
eigenspaces and resultant elimination with seeded coordinate shears.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (
    Poly, distinct_root_count, gcd_binary, resultant, resultant_by_evaluation,
    _uderiv, _ugcd, _utrim,
)
from .curves import (
    BiForm33, HyperBranchModel, PlaneNodalModel, QuadricNetModel, SpaceQCModel,
    TrigonalModel, genus, invariance, pullback,
)
from .symmetry import (
    BiMoebius, FieldTooSmallError, FiberMap, ProjMap, Group, closure, eigen_split,
    kernel, mat_det, mat_inv, mat_mul, mat_vec, scalar_of,
)


class RamifyError(Exception):
    pass


class NeedsProbeError(RamifyError):
    """Exact elimination did not settle a count; use the finite-field probe."""


class InconsistencyError(RamifyError):
    pass


class ZeuthenInputError(RamifyError, ValueError):
    pass


@dataclass(frozen=True)
class FixedSet:
    isolated_count: int
    pointwise: bool = False
    loci: tuple = ()


@dataclass(frozen=True, order=True)
class BranchDatum:
    n_i: int
    orbits: int


@dataclass(frozen=True)
class ZeuthenSolution:
    p: int
    n: int
    p_quot: int
    branch: tuple

    @property
    def residual(self):
        return verify_zeuthen(self.p, self.n, self.p_quot, self.branch)


# --- finite algebras K[t1, ...]/(q1(t1), ...) --------------------------------

class _Quotient:
    """K[t_1..t_r]/(q_1(t_1), ..., q_r(t_r)) with squarefree univariate q_k.

    Over the algebraic closure this is K-bar^N, one coordinate per point
    (root tuple), so the kernel of multiplication by a family of elements
    has dimension equal to the number of points where all of them vanish.
    """

    def __init__(self, moduli, field):
        self.field = field
        self.moduli = []
        for q in moduli:
            q = _utrim(list(q))
            lead = q[-1].inverse()
            self.moduli.append([c * lead for c in q])
        self.dims = [len(q) - 1 for q in self.moduli]
        self.basis = [()]
        for d in self.dims:
            self.basis = [b + (k,) for b in self.basis for k in range(d)]
        self._pow = {}

    @property
    def size(self):
        return len(self.basis)

    def _reduce1(self, coeffs, k):
        """Reduce a univariate list (constant first) modulo q_k."""
        q, d = self.moduli[k], self.dims[k]
        c = list(coeffs)
        for e in range(len(c) - 1, d - 1, -1):
            top = c[e]
            if top.is_zero():
                continue
            for i in range(d):
                c[e - d + i] = c[e - d + i] - top * q[i]
            c[e] = self.field.zero
        return c[:d] + [self.field.zero] * (d - len(c[:d]))

    def power(self, k, e):
        key = (k, e)
        if key not in self._pow:
            c = [self.field.zero] * (e + 1)
            c[e] = self.field.one
            self._pow[key] = self._reduce1(c, k)
        return self._pow[key]

    def element(self, f, vars):
        """Image of the polynomial f (variables ``vars`` -> t_1..t_r)."""
        out = {}
        idx = [f.vars.index(v) for v in vars]
        for e, c in f.terms.items():
            parts = [self.power(k, e[i]) for k, i in enumerate(idx)]
            for b in self.basis:
                t = c
                for k, bk in enumerate(b):
                    t = t * parts[k][bk]
                    if t.is_zero():
                        break
                if not t.is_zero():
                    out[b] = out.get(b, self.field.zero) + t
        return {b: c for b, c in out.items() if not c.is_zero()}

    def const(self, c):
        c = self.field(c)
        return {} if c.is_zero() else {(0,) * len(self.dims): c}

    def add(self, a, b, s=1):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, self.field.zero) + v * s
        return {k: v for k, v in out.items() if not v.is_zero()}

    def mul(self, a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                parts = [self._mono(k, ea[k] + eb[k]) for k in range(len(self.dims))]
                for bb in self.basis:
                    t = ca * cb
                    for k, bk in enumerate(bb):
                        t = t * parts[k][bk]
                        if t.is_zero():
                            break
                    if not t.is_zero():
                        out[bb] = out.get(bb, self.field.zero) + t
        return {k: v for k, v in out.items() if not v.is_zero()}

    def _mono(self, k, e):
        return self.power(k, e)

    def matrix(self, a):
        cols = []
        for b in self.basis:
            unit = {b: self.field.one}
            prod = self.mul(a, unit)
            cols.append([prod.get(bb, self.field.zero) for bb in self.basis])
        return [[cols[j][i] for j in range(len(cols))] for i in range(len(self.basis))]

    def zeros(self, elems):
        """Number of points at which every element of ``elems`` vanishes."""
        rows = []
        for a in elems:
            rows.extend(self.matrix(a))
        if not rows:
            return self.size
        return len(kernel(rows))

    def det(self, m):
        """Division-free determinant (Laplace) of a small matrix of elements."""
        n = len(m)
        if n == 0:
            return self.const(1)
        if n == 1:
            return m[0][0]
        acc = {}
        for j in range(n):
            if not m[0][j]:
                continue
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = self.mul(m[0][j], self.det(minor))
            acc = self.add(acc, term, -1 if j % 2 else 1)
        return acc


def _psc(alg, f, g, i):
    """i-th principal subresultant coefficient of f, g (coefficient lists, highest first)."""
    m, n = len(f) - 1, len(g) - 1
    width = m + n - i
    rows = []
    for r in range(n - i):
        rows.append([{}] * r + list(f) + [{}] * (width - r - len(f)))
    for r in range(m - i):
        rows.append([{}] * r + list(g) + [{}] * (width - r - len(g)))
    size = m + n - 2 * i
    return alg.det([row[:size] for row in rows])


def _distinct_fibre_sum(alg, coeffs, restrict=()):
    """Sum over points with all ``restrict`` zero of the distinct roots of sum coeffs[k] w^(deg-k).

    The leading coefficient must vanish nowhere (checked by the caller).
    """
    k = len(coeffs) - 1
    base = alg.zeros(list(restrict))
    if k <= 0:
        return 0
    deriv = [alg.mul(c, alg.const(k - e)) for e, c in enumerate(coeffs[:-1])]
    total = k * base
    pscs = []
    for i in range(k - 1):
        pscs.append(_psc(alg, coeffs, deriv, i))
        total -= alg.zeros(list(restrict) + pscs)
    return total


# --- P1 helpers -----------------------------------------------------------------

def _fixed_quadratic(A):
    """Fixed points of t -> (a t + b)/(c t + d) as coefficients of c t^2 + (d - a) t - b."""
    (a, b), (c, d) = A
    return [-b, d - a, c]


def _is_scalar(M):
    return scalar_of(M) is not None


_SHEAR = (-3, -2, -1, 1, 2, 3)


def _rand_matrix(rng, n, field):
    while True:
        # no zero entries: special points tend to have rational relations
        M = tuple(tuple(field(rng.choice(_SHEAR)) for _ in range(n)) for _ in range(n))
        if not mat_det(M).is_zero():
            return M


def _conj(S, A, T=None):
    """S^-1 A T (T defaults to S)."""
    return mat_mul(mat_mul(mat_inv(S), A), S if T is None else T)


def _biform_fixed(model, g, rng):
    field = model.F.field
    for _ in range(8):
        S, T = _rand_matrix(rng, 2, field), _rand_matrix(rng, 2, field)
        F = pullback(model.F, BiMoebius(S, T, canonical=False), BiForm33.VARS)
        if g.swap:
            A, B = _conj(S, g.A, T), _conj(T, g.B, S)
            AB = mat_mul(A, B)
            if _is_scalar(AB):
                xv = ("x1", "x2")
                X = [Poly.variable(xv, v, field) for v in xv]
                images = {"x1": X[0], "x2": X[1],
                          "y1": X[0] * B[0][0] + X[1] * B[0][1],
                          "y2": X[0] * B[1][0] + X[1] * B[1][1]}
                G = F.compose(images, xv)
                if G.is_zero():
                    raise RamifyError("the fixed graph lies on the curve")
                return FixedSet(distinct_root_count(G), loci=(("graph", G.degree()),))
            q = _fixed_quadratic(AB)
            if q[2].is_zero():
                continue
            alg = _Quotient([q], field)
            t = _t("t", field)
            f = F.compose({"x1": t, "x2": Poly.constant(("t",), 1, field),
                           "y1": t * B[0][0] + B[0][1], "y2": t * B[1][0] + B[1][1]}, ("t",))
            n = alg.zeros([alg.element(f, ("t",))])
            return FixedSet(n, loci=(("graph-points", 2),))
        A, B = _conj(S, g.A), _conj(T, g.B)
        sa, sb = _is_scalar(A), _is_scalar(B)
        if sa and sb:
            return FixedSet(0, pointwise=True)
        if not sa and not sb:
            qa, qb = _fixed_quadratic(A), _fixed_quadratic(B)
            if qa[2].is_zero() or qb[2].is_zero():
                continue
            alg = _Quotient([qa, qb], field)
            f = F.subs({"x2": 1, "y2": 1})
            return FixedSet(alg.zeros([alg.element(f, ("x1", "y1"))]), loci=(("eigen-pairs", 4),))
        # one factor acts trivially: eigen-lines of the other meet the curve
        if sa:
            F = F.compose({"x1": Poly.variable(F.vars, "y1", field), "x2": Poly.variable(F.vars, "y2", field),
                           "y1": Poly.variable(F.vars, "x1", field), "y2": Poly.variable(F.vars, "x2", field)},
                          F.vars)
            A, B = B, A
        q = _fixed_quadratic(A)
        if q[2].is_zero():
            continue
        alg = _Quotient([q], field)
        f = F.subs({"x2": 1})
        coeffs = [alg.element(c, ("x1",)) for c in _coeffs_desc(f, "y1", "y2", 3)]
        if alg.zeros([coeffs[0]]):
            continue
        n = _distinct_fibre_sum(alg, coeffs)
        return FixedSet(n, loci=(("eigen-lines", 2),))
    raise NeedsProbeError("no admissible coordinate shear for the P1 x P1 fixed-point count")


def _t(name, field):
    return Poly.variable((name,), name, field)


def _coeffs_desc(f, var, homog, degree):
    """Coefficients (highest first) of f in ``var`` after dropping ``homog`` by setting it to 1."""
    h = f.subs({homog: 1})
    parts = h.coeffs_in(var)
    rest = tuple(v for v in h.vars if v != var)
    zero = Poly(rest, {}, h.field)
    return [parts.get(k, zero) for k in range(degree, -1, -1)]


def _fibre_fixed(model, g, rng):
    """Fibre maps on the trigonal cone (weight 2) or a hyperelliptic curve (weight g+1)."""
    field = g.field
    if isinstance(model, TrigonalModel):
        base_forms = [model.f4, model.f6]
    else:
        base_forms = [model.B]
    w = g.weight
    s = scalar_of(g.A)
    if s is not None:
        if g.c == s ** w:
            return FixedSet(0, pointwise=True)
        # w = 0 section only
        f0 = base_forms[-1]
        return FixedSet(distinct_root_count(f0), loci=(("w=0", f0.degree()),))
    for _ in range(8):
        S = _rand_matrix(rng, 2, field)
        A = _conj(S, g.A)
        q = _fixed_quadratic(A)
        if q[2].is_zero():
            continue
        forms = [pullback(f, FiberMap(S, field.one, w, canonical=False), ("x", "y")).subs({"y": 1})
                 for f in base_forms]
        alg = _Quotient([q], field)
        vals = [alg.element(f, ("x",)) for f in forms]
        lam = alg.add(alg.mul(alg.element(_t("x", field), ("x",)), alg.const(A[1][0])), alg.const(A[1][1]))
        lw = alg.const(1)
        for _ in range(w):
            lw = alg.mul(lw, lam)
        delta = alg.add(alg.const(g.c), lw, -1)
        last = vals[-1]
        isolated = alg.zeros([last]) - alg.zeros([last, delta])
        if isinstance(model, TrigonalModel):
            coeffs = [alg.const(1), {}, vals[0], vals[1]]
        else:
            coeffs = [alg.const(1), {}, alg.mul(last, alg.const(-1))]
        n = isolated + _distinct_fibre_sum(alg, coeffs, restrict=[delta])
        return FixedSet(n, loci=(("fixed-fibres", 2),))
    raise NeedsProbeError("no admissible coordinate shear for the fibre count")


# --- eigenspace intersections ---------------------------------------------------

SVARS = ("s0", "s1", "s2", "s3", "s4")


def _restrict(f, vars, basis):
    svars = SVARS[:len(basis)]
    images = {}
    for i, v in enumerate(vars):
        acc = Poly(svars, {}, f.field)
        for k, b in enumerate(basis):
            if not b[i].is_zero():
                acc = acc + Poly.variable(svars, svars[k], f.field) * b[i]
        images[v] = acc
    return f.compose(images, svars)


def _count_projective(forms, seed=0, attempts=8):
    """Distinct common zeros of homogeneous forms in P^(k-1), k = number of variables.

    k <= 2 is exact.  For k = 3, 4 the count is taken from eliminants under
    random shears; the largest count is accepted once two shears give it.
    """
    k = len(forms[0].vars)
    nonzero = [f for f in forms if not f.is_zero()]
    if k == 1:
        return 0 if nonzero else 1
    forms = nonzero
    if not forms:
        raise RamifyError("positive-dimensional fixed locus on the curve")
    if k == 2:
        g = forms[0]
        for f in forms[1:]:
            g = gcd_binary(g, f)
        return distinct_root_count(g) if g.degree() > 0 else 0
    if len(forms) < k - 1:
        raise RamifyError("positive-dimensional fixed locus on the curve")
    # a bad shear can only merge points or push them to infinity, so the
    # largest count wins once a second shear confirms it
    rng = random.Random(seed)
    seen = []
    for _ in range(attempts):
        c = _eliminate_count(forms, rng)
        if c is None:
            continue
        seen.append(c)
        if seen.count(max(seen)) >= 2:
            return max(seen)
    raise NeedsProbeError(f"elimination counts disagree across shears: {seen}")


def _combos(forms, rng, how_many):
    """Random combinations of forms, degrees equalised with a random linear form."""
    field = forms[0].field
    D = max(f.degree() for f in forms)
    vars = forms[0].vars
    out = []
    for _ in range(how_many):
        ell = Poly(vars, {}, field).linear_form([rng.randint(1, 3) for _ in vars])
        acc = Poly(vars, {}, field)
        for f in forms:
            acc = acc + f * ell ** (D - f.degree()) * rng.randint(1, 5)
        out.append(acc)
    return out


def _eliminate_count(forms, rng):
    field = forms[0].field
    k = len(forms[0].vars)
    vars = forms[0].vars
    S = _rand_matrix(rng, k, field)
    sheared = [pullback(f, ProjMap(S, canonical=False), vars) for f in forms]
    aff = [f.subs({vars[0]: 1}) for f in sheared]
    if k == 3:
        x, y = vars[1], vars[2]
        if len(aff) == 2:
            pairs = [(aff[0], aff[1])]
        else:
            pairs = []
            for _ in range(3):
                h = _combos(sheared, rng, 2)
                pairs.append(tuple(p.subs({vars[0]: 1}) for p in h))
        acc = None
        for f, g in pairs:
            df, dg = f.degree(), g.degree()
            if f.degree(y) != df or g.degree(y) != dg:
                return None
            r = _utrim(resultant_by_evaluation(f, g, y, x, (df, dg), df * dg))
            if not r:
                return None
            acc = r if acc is None else _utrim(_ugcd(acc, r))
        return _udistinct(acc)
    if k == 4:
        x, y, z = vars[1], vars[2], vars[3]
        acc = None
        for _ in range(3):
            h = [p.subs({vars[0]: 1}) for p in _combos(sheared, rng, 3)]
            D = h[0].degree()
            if any(p.degree(z) != D for p in h):
                return None
            R12 = resultant(h[0], h[1], z, degrees=(D, D))
            R13 = resultant(h[0], h[2], z, degrees=(D, D))
            E = R12.degree()
            if R12.degree(y) != E or R13.degree(y) != R13.degree() or R13.degree() != E:
                return None
            r = _utrim(resultant_by_evaluation(R12, R13, y, x, (E, E), E * E))
            if not r:
                return None
            acc = r if acc is None else _utrim(_ugcd(acc, r))
        return _udistinct(acc)
    raise RamifyError(f"elimination in {k} variables is not supported")


def _udistinct(p):
    p = _utrim(list(p))
    if len(p) <= 1:
        return 0
    g = _utrim(_ugcd(p, _uderiv(p)))
    return (len(p) - 1) - (len(g) - 1)


def _projmap_fixed(model, g, seed):
    try:
        spaces = eigen_split(g)
    except FieldTooSmallError as exc:
        raise NeedsProbeError(str(exc)) from None
    if len(spaces) == 1:
        return FixedSet(0, pointwise=True)
    forms = model.forms()
    vars = model.VARS
    total, loci = 0, []
    for lam, basis in spaces:
        restricted = [_restrict(f, vars, basis) for f in forms]
        n = _count_projective(restricted, seed)
        loci.append((f"eigenspace dim {len(basis)}", n))
        total += n
    if isinstance(model, PlaneNodalModel):
        for point, mult in model.marked:
            pt = [model.F.field(c) for c in point]
            img = mat_vec(g.matrix, pt)
            if _proportional(img, pt):
                raise RamifyError("a marked singular point is fixed; branch analysis is not supported")
    return FixedSet(total, loci=tuple(loci))


def _proportional(u, v):
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if not (u[i] * v[j] - u[j] * v[i]).is_zero():
                return False
    return True


# --- public operations ----------------------------------------------------------

def fixed_points(model, g, seed=0):
    """Geometric fixed points of g on the curve."""
    invariance(model, g)
    rng = random.Random(seed)
    if isinstance(model, BiForm33):
        return _biform_fixed(model, g, rng)
    if isinstance(model, (TrigonalModel, HyperBranchModel)):
        if not isinstance(g, FiberMap):
            raise RamifyError("fixed points on a cover need a fibre lift of the base map")
        return _fibre_fixed(model, g, rng)
    if isinstance(model, (QuadricNetModel, SpaceQCModel, PlaneNodalModel)):
        return _projmap_fixed(model, g, seed)
    raise RamifyError(f"no fixed-point method for {model.kind}")


def element_order(g, cap=256):
    ident = g.identity().key
    p, n = g, 1
    while p.key != ident:
        p = p.compose(g)
        n += 1
        if n > cap:
            raise RamifyError("element order exceeds cap")
    return n


def _power(g, k):
    p = g.identity()
    for _ in range(k):
        p = p.compose(g)
    return p


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n):
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def cyclic_branch_data(model, g, seed=0):
    """Orbit counts by stabilizer order for the cyclic group generated by g."""
    n = element_order(g)
    fix = {}
    for e in _divisors(n):
        if e > 1:
            fix[e] = fixed_points(model, _power(g, n // e), seed).isolated_count
    out = []
    for e in sorted(fix, reverse=True):
        exact = sum(_mobius(f // e) * fix[f] for f in fix if f % e == 0)
        if exact < 0 or exact % (n // e):
            raise InconsistencyError(f"{exact} points with stabilizer {e} in a group of order {n}")
        if exact:
            out.append(BranchDatum(e, exact // (n // e)))
    return _canonical(out)


def _canonical(branch):
    return tuple(sorted((BranchDatum(*b) if not isinstance(b, BranchDatum) else b for b in branch),
                        key=lambda b: (-b.n_i, b.orbits)))


def fixed_counts(model, G, seed=0):
    """|Fix(g)| for every element of G, computed once per conjugacy class."""
    out = {}
    for cls in G.conjugacy_classes():
        rep = cls[0]
        fs = fixed_points(model, rep, seed)
        for h in cls:
            out[h.key] = 0 if fs.pointwise else fs.isolated_count
    return out


def quotient_genus(model, G, p=None, seed=0, counts=None):
    """Solve the Zeuthen relation for p' from the fixed-point data of G acting on the model."""
    if not isinstance(G, Group):
        G = closure(list(G))
    if p is None:
        p = genus(model)
    counts = counts or fixed_counts(model, G, seed)
    n = G.order
    ident = G.identity.key
    S = sum(c for k, c in counts.items() if k != ident)
    num = 2 * (p - 1) - S
    if num % (2 * n):
        raise InconsistencyError(f"p' is not an integer: 2(p-1) - S = {num}, 2n = {2 * n}")
    pq = num // (2 * n) + 1
    if pq < 0:
        raise InconsistencyError(f"negative quotient genus {pq}")
    # points with stabilizer exactly H, by decreasing |H|
    subgroups = {}
    for g in G.elements:
        if g.key == ident:
            continue
        keys = frozenset(_power(g, k).key for k in range(element_order(g)))
        subgroups.setdefault(keys, g)
    exact = {}
    for H in sorted(subgroups, key=len, reverse=True):
        above = sum(exact[K] for K in exact if H < K)
        exact[H] = counts[subgroups[H].key] - above
        if exact[H] < 0:
            raise InconsistencyError("negative stabilizer count")
    by_order = {}
    for H, c in exact.items():
        by_order[len(H)] = by_order.get(len(H), 0) + c
    branch = []
    for e, c in by_order.items():
        if c == 0:
            continue
        if (c * e) % n:
            raise InconsistencyError(f"{c} points with stabilizer order {e} do not form whole orbits")
        branch.append(BranchDatum(e, c * e // n))
    sol = ZeuthenSolution(p, n, pq, _canonical(branch))
    if sol.residual:
        raise InconsistencyError(f"Zeuthen residual {sol.residual}")
    return sol


def verify_zeuthen(p, n, p_quot, branch):
    """LHS - RHS of the Zeuthen relation; zero means admissible."""
    if n < 1:
        raise ZeuthenInputError("group order must be positive")
    rhs = 2 * n * (p_quot - 1)
    for b in branch:
        ni, orbits = (b.n_i, b.orbits) if isinstance(b, BranchDatum) else b
        if ni < 2 or n % ni:
            raise ZeuthenInputError(f"stabilizer order {ni} must be >= 2 and divide {n}")
        if orbits < 0:
            raise ZeuthenInputError("negative orbit count")
        rhs += orbits * (n // ni) * (ni - 1)
    return 2 * (p - 1) - rhs


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def only_abelian_groups(n):
    """True when every group of order n is abelian.

    n must be cube-free with q not dividing p^k - 1 for primes p^a || n,
    1 <= k <= a, and primes q | n.
    """
    f = _factor(n)
    if any(a >= 3 for a in f.values()):
        return False
    return not any((p ** k - 1) % q == 0 for p, a in f.items() for k in range(1, a + 1) for q in f)


def _realizable(n, pq, branch):
    """Necessary conditions from the monodromy of a branched Galois cover."""
    r = sum(b.orbits for b in branch)
    if pq == 0:
        if r < 2:
            return False
        if r == 2 and any(b.n_i != n for b in branch):
            return False
    if r == 1 and only_abelian_groups(n):
        return False
    return True


def _partitions(target, parts):
    """Multisets of (divisor, weight) summing to target; parts sorted by divisor descending."""
    if target == 0:
        yield ()
        return
    if not parts:
        return
    (d, w), rest = parts[0], parts[1:]
    for c in range(target // w, -1, -1):
        for tail in _partitions(target - c * w, rest):
            yield (((d, c),) if c else ()) + tail


def enumerate_zeuthen(p, n_max, primes_only=False):
    """All admissible (n, p', branch) for genus p with 2 <= n <= n_max."""
    if p < 2:
        raise ZeuthenInputError("genus must be at least 2")
    if n_max > 512:
        raise ZeuthenInputError("n_max is capped at 512")
    out = []
    for n in range(2, n_max + 1):
        if primes_only and not _is_prime(n):
            continue
        parts = [(d, n - n // d) for d in sorted(_divisors(n), reverse=True) if d > 1]
        pq = 0
        while 2 * n * (pq - 1) <= 2 * (p - 1):
            R = 2 * (p - 1) - 2 * n * (pq - 1)
            for combo in _partitions(R, parts):
                branch = _canonical(BranchDatum(d, c) for d, c in combo)
                if _realizable(n, pq, branch):
                    out.append(ZeuthenSolution(p, n, pq, branch))
            pq += 1
    out.sort(key=lambda s: (s.n, s.p_quot, [(-b.n_i, b.orbits) for b in s.branch]))
    return out


def rh_cover_branch(d, p, p_quot):
    """Total simple branching of a degree-d cover from genus p to genus p'."""
    if d < 2:
        raise ZeuthenInputError("cover degree must be at least 2")
    b = 2 * p - 2 - d * (2 * p_quot - 2)
    if b < 0:
        raise ZeuthenInputError(f"negative branching {b}")
    return b
