"""Finite-field cross-checks.

Curves and group elements are reduced modulo a prime q = 1 (mod K) by
sending zeta_K to a fixed element of order K in F_q.  Over F_q and its
extensions F_{q^k} we count points, count fixed points of reduced group
elements and look for singular points.  Everything here is evidence: a
probe that finds nothing proves nothing over the rationals.

Zero-dimensional systems are solved by a resultant chain over F_q whose
candidates are always verified by substitution, so counts are exact over
each F_{q^k}; the random choices only affect whether the chain degenerates.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

import flint

from .algebra import CycNum, Poly, euler_phi
from .curves import (BiForm33, HyperBranchModel, PlaneNodalModel, QuadricNetModel, SpaceQCModel,
                     TrigonalModel)
from .symmetry import BiMoebius, FiberMap, ProjMap

PRIME_CAP = 2 ** 31
DEFAULT_BUDGET = 2 ** 18  # fibre operations per count
EVIDENCE = "probabilistic evidence over finite fields, not a proof"


class FFError(Exception):
    pass


class PrimeSearchError(FFError):
    pass


class ReductionError(FFError, ValueError):
    def __init__(self, message, q=None):
        super().__init__(message)
        self.q = q


class BudgetError(FFError):
    pass


class DegenerateError(FFError):
    """A resultant chain lost information; retried with a new shear."""


class ProbeError(FFError):
    pass


# --- primes ---------------------------------------------------------------------

def _is_prime(n):
    return n >= 2 and flint.fmpz(n).is_prime()


def primitive_root(q):
    """Least generator of the multiplicative group of F_q."""
    if not _is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q == 2:
        return 1
    ps = [int(p) for p, _ in flint.fmpz(q - 1).factor()]
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in ps):
            return g
    raise PrimeSearchError(f"no primitive root mod {q}")


@dataclass(frozen=True)
class PrimeSpec:
    K: int
    q: int
    generator: int
    root_image: int
    k_max: int = 6

    def __post_init__(self):
        K, q, r = self.K, self.q, self.root_image
        if (q - 1) % K:
            raise ValueError(f"q = {q} is not 1 mod {K}")
        if pow(r, K, q) != 1 or any(pow(r, K // p, q) == 1 for p, _ in flint.fmpz(K).factor()):
            raise ValueError(f"{r} does not have order {K} mod {q}")

    def as_dict(self):
        return {"K": self.K, "q": self.q, "generator": self.generator,
                "root_image": self.root_image, "k_max": self.k_max}


def find_prime(K, minimum=2, k_max=6):
    """Least prime q >= minimum with q = 1 (mod K), zeta_K -> g^((q-1)/K)."""
    if K < 1:
        raise ValueError("K must be positive")
    if minimum < 2:
        raise ValueError("minimum must be at least 2")
    q = minimum + (1 - minimum) % K
    while q < PRIME_CAP:
        if _is_prime(q):
            g = primitive_root(q)
            return PrimeSpec(K, q, g, pow(g, (q - 1) // K, q), k_max)
        q += K
    raise PrimeSearchError(f"no prime = 1 mod {K} in [{minimum}, 2^31)")


def default_primes(K=120):
    """The two least primes = 1 (mod K) above 2K."""
    p1 = find_prime(K, 2 * K + 1)
    return p1, find_prime(K, p1.q + 1)


# --- scalar reduction -------------------------------------------------------------

_SUBFIELD_BASES = {}


def _solve_fraction(cols, target):
    """x with sum x_j cols[j] == target over Q, or None."""
    n, m = len(target), len(cols)
    rows = [[cols[j][i] for j in range(m)] + [target[i]] for i in range(n)]
    piv, r = [], 0
    for c in range(m):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    if any(rows[i][m] for i in range(r, n)):
        return None
    x = [Fraction(0)] * m
    for i, c in enumerate(piv):
        x[c] = rows[i][m]
    return x


def _subfield_coords(x, d):
    """Coordinates of x in the basis zeta_d^j, or None if x is not in Q(zeta_d)."""
    field = x.field
    N = field.index
    key = (N, d)
    cols = _SUBFIELD_BASES.get(key)
    if cols is None:
        cols = [field.zeta_power((N // d) * j).coords() for j in range(euler_phi(d))]
        _SUBFIELD_BASES[key] = cols
    return _solve_fraction(cols, x.coords())


def _frac_mod(c, q):
    c = Fraction(c)
    if c.denominator % q == 0:
        raise ReductionError(f"denominator {c.denominator} is divisible by q = {q}", q)
    return c.numerator * pow(c.denominator, -1, q) % q


def reduce_scalar(x, spec):
    q = spec.q
    if isinstance(x, (int, Fraction)):
        return _frac_mod(x, q)
    if not isinstance(x, CycNum):
        raise TypeError(f"cannot reduce {x!r}")
    N = x.field.index
    d = gcd(N, spec.K)
    coords = x.coords() if d == N else _subfield_coords(x, d)
    if coords is None:
        raise ReductionError(f"{x} does not lie in Q(zeta_{d}); zeta_{N} has no image mod {q}", q)
    r = pow(spec.root_image, spec.K // d, q)
    acc, rp = 0, 1
    for c in coords:
        if c:
            acc += _frac_mod(c, q) * rp
        rp = rp * r % q
    return acc % q


def _ctx(n, q):
    return flint.nmod_mpoly_ctx.get(("v", n), modulus=q)


def reduce_poly(p, spec):
    """The form as an nmod_mpoly in variables v0..v(n-1)."""
    ctx = _ctx(len(p.vars), spec.q)
    terms = {}
    for e, c in p.terms.items():
        if min(e) < 0:
            raise ReductionError("negative exponents cannot be reduced", spec.q)
        terms[tuple(e)] = reduce_scalar(c, spec)
    return ctx.from_dict(terms)


def _reduce_matrix(M, spec):
    return tuple(tuple(reduce_scalar(c, spec) for c in row) for row in M)


# --- reduced group elements --------------------------------------------------------

def _mmul(a, b, q):
    n, m = len(a), len(b[0])
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(len(b))) % q for j in range(m)) for i in range(n))


def _normalise(M, q):
    """M scaled so that its first nonzero entry is 1, and the scaling used."""
    first = next(c for row in M for c in row if c)
    s = pow(first, -1, q)
    return tuple(tuple(c * s % q for c in row) for row in M), s


@dataclass(frozen=True)
class FFElement:
    """A group element over F_q: kind is projmap, bimoebius or fiber."""

    kind: str
    mats: tuple
    q: int
    swap: bool = False
    c: int = 1
    weight: int = 0

    @property
    def key(self):
        if self.kind == "projmap":
            return ("P", _normalise(self.mats[0], self.q)[0])
        if self.kind == "bimoebius":
            return ("B", self.swap) + tuple(_normalise(M, self.q)[0] for M in self.mats)
        A, s = _normalise(self.mats[0], self.q)
        return ("T", A, self.c * pow(s, self.weight, self.q) % self.q)

    def compose(self, other):
        """self after other."""
        if self.kind != other.kind or self.q != other.q:
            raise FFError("cannot compose elements of different kinds")
        q = self.q
        if self.kind == "projmap":
            return FFElement("projmap", (_mmul(self.mats[0], other.mats[0], q),), q)
        if self.kind == "bimoebius":
            A, B = self.mats
            C, D = other.mats
            if not self.swap:
                return FFElement("bimoebius", (_mmul(A, C, q), _mmul(B, D, q)), q, other.swap)
            return FFElement("bimoebius", (_mmul(A, D, q), _mmul(B, C, q)), q, not other.swap)
        return FFElement("fiber", (_mmul(self.mats[0], other.mats[0], q),), q,
                         c=self.c * other.c % q, weight=self.weight)

    def __eq__(self, other):
        return isinstance(other, FFElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def reduce_element(g, spec):
    q = spec.q
    if isinstance(g, ProjMap):
        return FFElement("projmap", (_reduce_matrix(g.matrix, spec),), q)
    if isinstance(g, BiMoebius):
        return FFElement("bimoebius", (_reduce_matrix(g.A, spec), _reduce_matrix(g.B, spec)), q, g.swap)
    if isinstance(g, FiberMap):
        return FFElement("fiber", (_reduce_matrix(g.A, spec),), q, c=reduce_scalar(g.c, spec), weight=g.weight)
    raise TypeError(f"cannot reduce {g!r}")


def ff_closure(gens, cap=4096):
    """Elements of the group generated by reduced generators."""
    gens = list(gens)
    seen = {g.key: g for g in gens}
    frontier = list(gens)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = g.compose(h)
                if x.key not in seen:
                    seen[x.key] = x
                    nxt.append(x)
                    if len(seen) > cap:
                        raise FFError(f"reduced group exceeds {cap} elements")
        frontier = nxt
    return list(seen.values())


# --- reduced curves -------------------------------------------------------------

@dataclass(frozen=True)
class FFCurve:
    kind: str
    spec: PrimeSpec
    forms: tuple
    nvars: int
    marked: tuple = ()
    weight: int = 0

    @property
    def q(self):
        return self.spec.q

    @property
    def projective(self):
        return self.kind in ("plane_nodal", "space_qc", "quadric_net")


def reduce_curve(model, spec):
    model.require_concrete()
    forms = tuple(reduce_poly(f, spec) for f in model.forms())
    if isinstance(model, PlaneNodalModel):
        marked = tuple((tuple(reduce_scalar(c, spec) for c in p), mu) for p, mu in model.marked)
        return FFCurve("plane_nodal", spec, forms, 3, marked)
    if isinstance(model, SpaceQCModel):
        return FFCurve("space_qc", spec, forms, 4)
    if isinstance(model, QuadricNetModel):
        return FFCurve("quadric_net", spec, forms, 5)
    if isinstance(model, BiForm33):
        return FFCurve("biform33", spec, forms, 4)
    if isinstance(model, TrigonalModel):
        return FFCurve("trigonal", spec, forms, 2, weight=2)
    if isinstance(model, HyperBranchModel):
        return FFCurve("hyper_branch", spec, forms, 2, weight=model.degree // 2)
    raise TypeError(f"cannot reduce {model!r}")


def reduce_mod(entity, spec):
    """Reduce a scalar, form, group element or curve model modulo spec.q."""
    if isinstance(entity, (int, Fraction, CycNum)):
        return reduce_scalar(entity, spec)
    if isinstance(entity, Poly):
        return reduce_poly(entity, spec)
    if isinstance(entity, (ProjMap, BiMoebius, FiberMap)):
        return reduce_element(entity, spec)
    return reduce_curve(entity, spec)


def _linear_images(M, ctx):
    """Linear forms sum_j M_ij v_j, the pullback images of the variables."""
    n = len(M[0])
    return [ctx.from_dict({tuple(1 if t == j else 0 for t in range(n)): M[i][j] for j in range(n)})
            for i in range(len(M))]


def _in_span(target, basis, q):
    """Is the polynomial target an F_q-combination of basis?"""
    monos = sorted({m for p in basis + [target] for m in p.monoms()})
    idx = {m: i for i, m in enumerate(monos)}

    def row(p):
        r = [0] * len(monos)
        for m, c in zip(p.monoms(), p.coeffs()):
            r[idx[m]] = int(c)
        return r

    rows = [row(p) for p in basis]
    if not rows:
        return target.is_zero()
    A = flint.nmod_mat(rows, q)
    B = flint.nmod_mat(rows + [row(target)], q)
    return A.rank() == B.rank()


def _degree_pieces(forms, ctx, d):
    """Degree-d part of the ideal generated by forms (monomial multiples)."""
    n = ctx.nvars()
    out = []
    for f in forms:
        e = d - f.total_degree()
        if e < 0:
            continue
        for mono in itertools.combinations_with_replacement(range(n), e):
            exps = [0] * n
            for i in mono:
                exps[i] += 1
            out.append(f * ctx.from_dict({tuple(exps): 1}))
    return out


def invariance_ff(curve, g):
    """Does the reduced element preserve the reduced curve?"""
    q = curve.q
    if curve.projective:
        if g.kind != "projmap":
            return False
        ctx = curve.forms[0].context()
        images = _linear_images(g.mats[0], ctx)
        for f in curve.forms:
            moved = f.compose(*images)
            if not _in_span(moved, _degree_pieces(curve.forms, ctx, f.total_degree()), q):
                return False
        return True
    if curve.kind == "biform33":
        if g.kind != "bimoebius":
            return False
        (F,) = curve.forms
        ctx = F.context()
        A, B = g.mats
        if g.swap:
            M = [[0, 0, A[0][0], A[0][1]], [0, 0, A[1][0], A[1][1]],
                 [B[0][0], B[0][1], 0, 0], [B[1][0], B[1][1], 0, 0]]
        else:
            M = [[A[0][0], A[0][1], 0, 0], [A[1][0], A[1][1], 0, 0],
                 [0, 0, B[0][0], B[0][1]], [0, 0, B[1][0], B[1][1]]]
        return _in_span(F.compose(*_linear_images(M, ctx)), [F], q)
    ctx = curve.forms[0].context()
    images = _linear_images(g.mats[0], ctx)
    if curve.kind == "hyper_branch" and g.kind == "projmap":
        # a Moebius map of the base preserving the branch form
        (B,) = curve.forms
        return _in_span(B.compose(*images), [B], q)
    if g.kind != "fiber":
        return False
    if curve.kind == "trigonal":
        f4, f6 = curve.forms
        c = g.c
        return (f4.compose(*images) - f4 * (c * c % q)).is_zero() and \
            (f6.compose(*images) - f6 * pow(c, 3, q)).is_zero()
    (B,) = curve.forms
    return (B.compose(*images) - B * (g.c * g.c % q)).is_zero()


# --- arithmetic over F_{q^k} ---------------------------------------------------------

class _Ext:
    """F_{q^k} with univariate polynomials over it."""

    _cache = {}

    def __new__(cls, q, k):
        key = (q, k)
        obj = cls._cache.get(key)
        if obj is None:
            obj = super().__new__(cls)
            obj.q, obj.k = q, k
            obj.F = flint.fq_default_ctx(q, k)
            obj.P = flint.fq_default_poly_ctx(obj.F)
            obj.zero, obj.one = obj.F(0), obj.F(1)
            cls._cache[key] = obj
        return obj

    def elements(self):
        if self.k == 1:
            return (self.F(i) for i in range(self.q))
        return (self.F(list(c)) for c in itertools.product(range(self.q), repeat=self.k))

    def size(self):
        return self.q ** self.k

    def roots(self, coeffs):
        """Distinct roots of sum coeffs[i] t^i; None if the polynomial is zero."""
        p = self.P(list(coeffs))
        if p.is_zero():
            return None
        if p.degree() < 1:
            return []
        return [r for r, _ in p.roots()]


def _terms(p):
    return list(zip(p.monoms(), [int(c) for c in p.coeffs()]))


def _evaluate(terms, point, ext):
    acc = ext.zero
    for e, c in terms:
        t = ext.F(c)
        for x, k in zip(point, e):
            if k:
                t = t * x ** k
        acc = acc + t
    return acc


def _specialise(terms, j, partial, ext, deg):
    """Coefficients in v_j of a polynomial in v0..v_j with v0..v_(j-1) fixed."""
    out = [ext.zero] * (deg + 1)
    for e, c in terms:
        t = ext.F(c)
        for x, k in zip(partial, e[:j]):
            if k:
                t = t * x ** k
        out[e[j]] = out[e[j]] + t
    return out


def _binary_points(coeffs, ext):
    """Points (s : t) of P1 with sum coeffs[i] s^i t^(d-i) = 0; None if zero."""
    r = ext.roots(coeffs)
    if r is None:
        return None
    pts = [(x, ext.one) for x in r]
    if coeffs[-1].is_zero():
        pts.append((ext.one, ext.zero))
    return pts


def _p1(ext):
    for x in ext.elements():
        yield (x, ext.one)
    yield (ext.one, ext.zero)


# --- zero-dimensional solving ------------------------------------------------------

def _top(p, nvars):
    degs = p.degrees()
    for j in range(nvars - 1, -1, -1):
        if degs[j] > 0:
            return j
    return 0


def _chain(polys, m, base, rng, q):
    """Triangular list of polynomial sets: levels[j] have top variable v_j.

    Variables v_j with j >= base are eliminated by resultants of random
    F_q-combinations; solutions of the system project into every level.
    """
    levels = [[] for _ in range(m)]
    for p in polys:
        if not p.is_zero():
            levels[_top(p, m)].append(p)
    for j in range(m - 1, max(base, 1) - 1, -1):
        P = levels[j]
        if len(P) < 2:
            continue
        pairs = [(P[0], P[1])] if len(P) == 2 else None
        if pairs is None:
            pairs = []
            for _ in range(2):
                a = sum((p * rng.randrange(1, q) for p in P[1:]), P[0] * 0) + P[0]
                b = sum((p * rng.randrange(1, q) for p in P), P[0] * 0)
                pairs.append((a, b))
        var = f"v{j}"
        for a, b in pairs:
            for _ in range(3):
                r = a.resultant(b, var)
                if not r.is_zero():
                    break
                b = sum((p * rng.randrange(1, q) for p in P), P[0] * 0)
            else:
                raise DegenerateError(f"resultants in v{j} vanish identically")
            levels[_top(r, m)].append(r)
    return levels


def _affine_solutions(polys, m, ext, sweep, rng):
    """Solutions in F_{q^k}^m; with ``sweep`` the first coordinate runs freely."""
    q = ext.q
    base = 1 if sweep else 0
    levels = _chain(polys, m, base, rng, q)
    data = [[(_terms(p), p.degrees()[j]) for p in lv] for j, lv in enumerate(levels)]
    checks = [_terms(p) for p in polys if not p.is_zero()]
    out = []

    def rec(j, partial):
        if j == m:
            if all(_evaluate(t, partial, ext).is_zero() for t in checks):
                out.append(tuple(partial))
            return
        g = None
        for terms, deg in data[j]:
            c = _specialise(terms, j, partial, ext, deg)
            p = ext.P(c)
            if p.is_zero():
                continue
            g = p if g is None else g.gcd(p)
        if g is None:
            if j >= base:
                raise DegenerateError(f"no condition left on v{j}")
            cands = ext.elements()
        elif g.degree() < 1:
            return
        else:
            cands = [r for r, _ in g.roots()]
        for x in cands:
            rec(j + 1, partial + [x])

    rec(0, [])
    return out


def _projective_solutions(forms, n, ext, sweep, rng):
    """Points of P^(n-1)(F_{q^k}) on the forms, as tuples with first nonzero entry 1."""
    q = ext.q
    forms = [f for f in forms if not f.is_zero()]
    if n == 1:
        return [] if forms else [(ext.one,)]
    if not forms:
        raise DegenerateError("no equations: the whole space")
    actx = _ctx(n - 1, q)
    one = actx.from_dict({(0,) * (n - 1): 1})
    gens = [actx.from_dict({tuple(1 if t == i else 0 for t in range(n - 1)): 1}) for i in range(n - 1)]
    aff = [f.compose(one, *gens, ctx=actx) for f in forms]
    pts = [(ext.one,) + s for s in _affine_solutions(aff, n - 1, ext, sweep, rng)]
    zero = actx.from_dict({})
    hyper = [f.compose(zero, *gens, ctx=actx) for f in forms]
    if all(h.is_zero() for h in hyper):
        raise DegenerateError("the hyperplane v0 = 0 lies in the locus")
    pts += [(ext.zero,) + s for s in _projective_solutions(hyper, n - 1, ext, False, rng)]
    return pts


def _unit_lead(pt):
    lead = next(x for x in pt if not x.is_zero())
    inv = lead ** -1
    return tuple(x * inv for x in pt)


def _random_invertible(n, q, rng):
    while True:
        M = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        if flint.nmod_mat(M, q).rank() == n:
            return M


def _solve_sheared(forms, n, ext, sweep, seed, attempts=6):
    """Projective solutions in the original coordinates, retrying degenerate shears."""
    q = ext.q
    rng = random.Random(seed)
    ctx = _ctx(n, q)
    last = None
    for _ in range(attempts):
        S = _random_invertible(n, q, rng)
        images = _linear_images(S, ctx)
        moved = [f.compose(*images) for f in forms]
        try:
            sols = _projective_solutions(moved, n, ext, sweep, rng)
        except DegenerateError as exc:
            last = exc
            continue
        return [_unit_lead(tuple(sum((ext.F(S[i][j]) * y[j] for j in range(n)), ext.zero) for i in range(n)))
                for y in sols]
    raise ProbeError(f"elimination degenerate under {attempts} shears: {last}")


# --- point counts --------------------------------------------------------------

def _check_budget(work, budget):
    if work > budget:
        raise BudgetError(f"{work} fibre operations exceed the budget of {budget}")


def _fibre_roots(curve, v, ext):
    """Distinct fibre coordinates over the base point v of a P1 cover."""
    vals = [_evaluate(_terms(f), v, ext) for f in curve.forms]
    if curve.kind == "trigonal":
        f4, f6 = vals
        return ext.roots([f6, f4, ext.zero, ext.one])
    (B,) = vals
    return ext.roots([-B, ext.zero, ext.one])


def curve_points(curve, k=1, budget=DEFAULT_BUDGET, seed=0):
    """All points over F_{q^k}, in model coordinates."""
    ext = _Ext(curve.q, k)
    _check_budget(ext.size() + 1, budget)
    if curve.projective:
        return _solve_sheared(list(curve.forms), curve.nvars, ext, True, seed)
    if curve.kind == "biform33":
        terms = _terms(curve.forms[0])
        pts = []
        for x in _p1(ext):
            coeffs = [ext.zero] * 4
            for e, c in terms:
                coeffs[e[2]] = coeffs[e[2]] + ext.F(c) * x[0] ** e[0] * x[1] ** e[1]
            ys = _binary_points(coeffs, ext)
            if ys is None:
                raise ProbeError("a fibre of the (3, 3) curve is a whole line")
            pts += [x + y for y in ys]
        return pts
    pts = []
    for v in _p1(ext):
        pts += [v + (w,) for w in _fibre_roots(curve, v, ext)]
    return pts


def count_points(curve, k=1, budget=DEFAULT_BUDGET, seed=0):
    """Number of points of the model over F_{q^k} (the singular model for plane curves)."""
    return len(curve_points(curve, k, budget, seed))


def count_points_naive(curve, k=1, budget=DEFAULT_BUDGET):
    """Independent count by enumerating the whole ambient space."""
    ext = _Ext(curve.q, k)
    Q = ext.size()
    terms = [_terms(f) for f in curve.forms]
    if curve.projective:
        n = curve.nvars
        _check_budget((Q ** n - 1) // (Q - 1), budget)
        elems = list(ext.elements())
        total = 0
        for lead in range(n):
            for rest in itertools.product(elems, repeat=n - lead - 1):
                pt = (ext.zero,) * lead + (ext.one,) + rest
                if all(_evaluate(t, pt, ext).is_zero() for t in terms):
                    total += 1
        return total
    _check_budget((Q + 1) ** 2, budget)
    elems = list(ext.elements())
    p1 = list(_p1(ext))
    total = 0
    if curve.kind == "biform33":
        for x in p1:
            for y in p1:
                if _evaluate(terms[0], x + y, ext).is_zero():
                    total += 1
        return total
    for v in p1:
        vals = [_evaluate(t, v, ext) for t in terms]
        for w in elems:
            if curve.kind == "trigonal":
                val = w ** 3 + vals[0] * w + vals[1]
            else:
                val = w * w - vals[0]
            if val.is_zero():
                total += 1
    return total


def weil_ok(n1, q, genus):
    """|N_1 - (q + 1)| <= 2 g sqrt(q), compared in integers."""
    d = abs(n1 - (q + 1))
    return d * d <= 4 * genus * genus * q


# --- fixed points ----------------------------------------------------------------

def _eigenspaces(M, q):
    n = len(M)
    spaces = []
    for lam in range(1, q):
        A = flint.nmod_mat([[(M[i][j] - (lam if i == j else 0)) % q for j in range(n)] for i in range(n)], q)
        X, nullity = A.nullspace()
        if nullity:
            basis = [[int(X[i, j]) for i in range(n)] for j in range(nullity)]
            spaces.append((lam, basis))
    if sum(len(b) for _, b in spaces) != n:
        raise ProbeError("reduced matrix is not diagonalisable over F_q")
    return spaces


def _moebius_fixed(A, ext):
    """Fixed points of v -> A v on P1(F_{q^k}), or None when A is scalar."""
    a, b, c, d = (ext.F(x) for x in (A[0][0], A[0][1], A[1][0], A[1][1]))
    # (a s + b t) t - (c s + d t) s = 0
    return _binary_points([b, a - d, -c], ext)


def _bicubic(terms, x, ext, slot):
    """F with one factor fixed at x, as coefficients in the other factor."""
    coeffs = [ext.zero] * 4
    for e, c in terms:
        if slot == "x":
            coeffs[e[2]] = coeffs[e[2]] + ext.F(c) * x[0] ** e[0] * x[1] ** e[1]
        else:
            coeffs[e[0]] = coeffs[e[0]] + ext.F(c) * x[0] ** e[2] * x[1] ** e[3]
    return coeffs


def _apply2(A, v, ext):
    return (ext.F(A[0][0]) * v[0] + ext.F(A[0][1]) * v[1], ext.F(A[1][0]) * v[0] + ext.F(A[1][1]) * v[1])


def _biform_fixed_ff(curve, g, ext):
    (F,) = curve.forms
    terms = _terms(F)
    q = curve.q
    A, B = g.mats
    if g.swap:
        AB = _mmul(A, B, q)
        xs = _moebius_fixed(AB, ext)
        if xs is not None:
            return sum(1 for x in xs if _evaluate(terms, x + _apply2(B, x, ext), ext).is_zero())
        s2 = _ctx(2, q)
        s, t = s2.from_dict({(1, 0): 1}), s2.from_dict({(0, 1): 1})
        G = F.compose(s, t, s * B[0][0] + t * B[0][1], s * B[1][0] + t * B[1][1], ctx=s2)
        coeffs = [ext.zero] * 7
        for e, c in _terms(G):
            coeffs[e[0]] = coeffs[e[0]] + ext.F(c)
        pts = _binary_points(coeffs, ext)
        if pts is None:
            raise ProbeError("the graph of B lies on the curve")
        return len(pts)
    xs, ys = _moebius_fixed(A, ext), _moebius_fixed(B, ext)
    if xs is None and ys is None:
        return count_points(curve, ext.k)
    if xs is not None and ys is not None:
        return sum(1 for x in xs for y in ys if _evaluate(terms, x + y, ext).is_zero())
    total = 0
    for fixed, slot in ((ys, "y"), (xs, "x")):
        if fixed is None:
            continue
        for p in fixed:
            pts = _binary_points(_bicubic(terms, p, ext, slot), ext)
            if pts is None:
                raise ProbeError("a fixed fibre lies on the curve")
            total += len(pts)
    return total


def _cover_fixed_ff(curve, g, ext):
    q = curve.q
    A = g.mats[0]
    c = ext.F(g.c)
    base = _moebius_fixed(A, ext)
    if base is None:
        s = ext.F(A[0][0])
        if c == s ** curve.weight:
            return count_points(curve, ext.k)
        # only the branch points (fibre coordinate 0) are fixed
        last = curve.forms[-1]
        deg = last.total_degree()
        coeffs = [ext.zero] * (deg + 1)
        for e, cc in _terms(last):
            coeffs[e[0]] = coeffs[e[0]] + ext.F(cc)
        pts = _binary_points(coeffs, ext)
        if pts is None:
            raise ProbeError("the last form vanishes identically")
        return len(pts)
    total = 0
    for v in base:
        Av = _apply2(A, v, ext)
        i = 0 if not v[0].is_zero() else 1
        lam = Av[i] / v[i]
        ws = _fibre_roots(curve, v, ext)
        if c == lam ** curve.weight:
            total += len(ws)
        else:
            total += sum(1 for w in ws if w.is_zero())
    return total


def fixed_points_ff(curve, g, k=1, seed=0):
    """Points over F_{q^k} fixed by a reduced projective collineation."""
    ext = _Ext(curve.q, k)
    q = curve.q
    M = g.mats[0]
    n = curve.nvars
    spaces = _eigenspaces(M, q)
    if len(spaces) == 1:
        return curve_points(curve, k, seed=seed)
    pts = []
    for lam, basis in spaces:
        e = len(basis)
        ectx = _ctx(e, q)
        images = [ectx.from_dict({tuple(1 if t == j else 0 for t in range(e)): basis[j][i] for j in range(e)})
                  for i in range(n)]
        restricted = [f.compose(*images, ctx=ectx) for f in curve.forms]
        if e > 1 and all(r.is_zero() for r in restricted):
            raise ProbeError(f"eigenspace of dimension {e} lies on the curve")
        sols = _solve_sheared(restricted, e, ext, False, seed)
        pts += [_unit_lead(tuple(sum((ext.F(basis[j][i]) * s[j] for j in range(e)), ext.zero) for i in range(n)))
                for s in sols]
    return pts


def fixed_count_ff(curve, g, k=1, seed=0):
    """Number of F_{q^k}-points of the curve fixed by g."""
    if g.q != curve.q:
        raise FFError("element and curve are reduced at different primes")
    ext = _Ext(curve.q, k)
    if curve.projective:
        if g.kind != "projmap":
            raise FFError("projective models need a collineation")
        return len(fixed_points_ff(curve, g, k, seed))
    if curve.kind == "biform33":
        if g.kind != "bimoebius":
            raise FFError("(3, 3) curves need a bi-Moebius element")
        return _biform_fixed_ff(curve, g, ext)
    if g.kind != "fiber":
        raise FFError("covers of P1 need a fibre map")
    return _cover_fixed_ff(curve, g, ext)


def _mobius(n):
    res, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def closed_point_degrees(table):
    """Numbers a_d of closed points of degree d from counts N_k, k = 1..len(table)."""
    out = {}
    for d in range(1, len(table) + 1):
        s = sum(_mobius(d // e) * table[e - 1] for e in range(1, d + 1) if d % e == 0)
        if s % d:
            raise FFError(f"counts {table} are not those of a finite Frobenius-stable set")
        if s:
            out[d] = s // d
    return out


@dataclass(frozen=True)
class FixedTable:
    q: int
    counts: tuple  # N_k for k = 1..k_max
    degrees: dict = dc_field(default_factory=dict)

    @property
    def geometric(self):
        """Total over closed points of degree <= k_max."""
        return sum(d * a for d, a in self.degrees.items())

    @property
    def stable(self):
        """The count at k = lcm of the residue degrees, if that k was reached."""
        L = 1
        for d in self.degrees:
            L = L * d // gcd(L, d)
        return self.counts[L - 1] if L <= len(self.counts) else None


def fixed_table(curve, g, k_max=None, seed=0):
    k_max = k_max or curve.spec.k_max
    counts = tuple(fixed_count_ff(curve, g, k, seed) for k in range(1, k_max + 1))
    return FixedTable(curve.q, counts, closed_point_degrees(counts))


# --- smoothness probe ----------------------------------------------------------

@dataclass(frozen=True)
class ProbeResult:
    status: str  # "no-singularity-found" or "singular"
    q: int
    k_checked: tuple
    points_checked: int
    witness: tuple = None
    note: str = EVIDENCE

    def as_dict(self):
        return {"status": self.status, "q": self.q, "k_checked": list(self.k_checked),
                "points_checked": self.points_checked,
                "witness": None if self.witness is None else [str(c) for c in self.witness],
                "note": self.note}


def _rank(rows, ext):
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        inv = rows[rank][c] ** -1
        for i in range(len(rows)):
            if i != rank and not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _same_projective(u, v):
    return all((u[i] * v[j] - u[j] * v[i]).is_zero() for i in range(len(u)) for j in range(i + 1, len(u)))


def _gradients(curve):
    """Partial-derivative term lists of the defining equation(s)."""
    if curve.projective or curve.kind == "biform33":
        return [[_terms(f.derivative(i)) for i in range(curve.nvars)] for f in curve.forms]
    return None


def _singular_at(curve, grads, pt, ext):
    if grads is not None:
        J = [[_evaluate(t, pt, ext) for t in row] for row in grads]
        return _rank(J, ext) < len(curve.forms)
    v, w = pt[:2], pt[2]
    if curve.kind == "trigonal":
        f4, f6 = curve.forms
        for i in range(2):
            d = _evaluate(_terms(f4.derivative(i)), v, ext) * w + _evaluate(_terms(f6.derivative(i)), v, ext)
            if not d.is_zero():
                return False
        return (ext.F(3) * w * w + _evaluate(_terms(f4), v, ext)).is_zero()
    (B,) = curve.forms
    if not w.is_zero():
        return False
    return all(_evaluate(_terms(B.derivative(i)), v, ext).is_zero() for i in range(2))


def smooth_probe(curve, k_max=1, budget=DEFAULT_BUDGET, seed=0):
    """Look for singular points over F_{q^k}, k = 1..k_max (marked points excluded)."""
    grads = _gradients(curve)
    checked, total = [], 0
    for k in range(1, k_max + 1):
        ext = _Ext(curve.q, k)
        marked = [tuple(ext.F(c) for c in p) for p, _ in curve.marked]
        for pt in curve_points(curve, k, budget, seed):
            if any(_same_projective(pt, m) for m in marked):
                continue
            total += 1
            if _singular_at(curve, grads, pt, ext):
                return ProbeResult("singular", curve.q, tuple(checked + [k]), total, pt)
        checked.append(k)
    return ProbeResult("no-singularity-found", curve.q, tuple(checked), total)


# --- catalog-level checks ------------------------------------------------------

def check_functoriality(gens, spec):
    """reduce(g h) == reduce(g) reduce(h) for all pairs of generators."""
    red = [reduce_element(g, spec) for g in gens]
    for g, rg in zip(gens, red):
        for h, rh in zip(gens, red):
            if reduce_element(g.compose(h), spec) != rg.compose(rh):
                return False
    return True


def reduced_group_order(gens, spec):
    return len(ff_closure([reduce_element(g, spec) for g in gens]))
