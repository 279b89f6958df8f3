"""Curve models, the curve catalog, invariance and smoothness checks."""

from __future__ import annotations

import json
import random
from itertools import product
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction

from .algebra import (
    DEFAULT_FIELD, AlgebraError, Poly, ResultantError, ShapeError,
    _udivmod, _ugcd, discriminant, distinct_root_count, divide_binary,
    gcd_binary, nth_root, resultant_binary_pair, resultant_by_evaluation,
)
from .symmetry import (
    BiMoebius, FiberMap, ProjMap, SymmetryError, closure, classify, kernel,
    mat_det, mat_inv, order_histogram,
)


class CurveError(Exception):
    pass


class CatalogError(CurveError):
    def __init__(self, entry_id, path, message):
        self.entry_id, self.path = entry_id, path
        super().__init__(f"entry {entry_id!r} at {path}: {message}")


class InvarianceError(CurveError):
    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class GenusUndefinedError(CurveError):
    pass


class DegenerateFamilyError(CurveError):
    pass


class ParametricModelError(CurveError):
    pass


# --- models ----------------------------------------------------------------

def _model_part(f, vars):
    """Check f lives in ``vars`` plus parameters; return the parameter names."""
    if f.vars[:len(vars)] != tuple(vars):
        raise ShapeError(f"expected variables {vars}, got {f.vars}")
    return f.vars[len(vars):]


class CurveModel:
    kind = "abstract"
    VARS: tuple = ()

    def forms(self):
        raise NotImplementedError

    @property
    def params(self):
        names = []
        for f in self.forms():
            for p in _model_part(f, self.VARS):
                if p not in names:
                    names.append(p)
        return tuple(names)

    def require_concrete(self):
        if self.params:
            raise ParametricModelError(f"{self.kind} model still has free parameters {self.params}")

    def _sub(self, f, values):
        extra = f.vars[len(self.VARS):]
        missing = [p for p in extra if p not in values]
        if missing:
            raise ParametricModelError(f"no value for parameters {missing}")
        return f.subs({p: values[p] for p in extra})


@dataclass(frozen=True)
class BiForm33(CurveModel):
    """Curve of bidegree (3, 3) on P1 x P1."""

    F: Poly
    kind = "biform33"
    VARS = ("x1", "x2", "y1", "y2")

    def __post_init__(self):
        _model_part(self.F, self.VARS)
        if self.F.is_zero():
            raise ShapeError("zero form")
        for e in self.F.terms:
            if e[0] + e[1] != 3 or e[2] + e[3] != 3:
                raise ShapeError("F must have bidegree (3, 3)")

    def forms(self):
        return (self.F,)

    def substitute(self, values):
        return BiForm33(self._sub(self.F, values))


@dataclass(frozen=True)
class TrigonalModel(CurveModel):
    """w^3 + f4(x, y) w + f6(x, y) = 0 with w of weight 2."""

    f4: Poly
    f6: Poly
    kind = "trigonal"
    VARS = ("x", "y")

    def __post_init__(self):
        for f, d in ((self.f4, 4), (self.f6, 6)):
            _model_part(f, self.VARS)
            for e in f.terms:
                if e[0] + e[1] != d:
                    raise ShapeError(f"f{d} must be a binary form of degree {d}")
        if self.f6.is_zero():
            raise ShapeError("f6 vanishes identically")

    def forms(self):
        return (self.f4, self.f6)

    def substitute(self, values):
        return TrigonalModel(self._sub(self.f4, values), self._sub(self.f6, values))

    def equation(self):
        vars, w = ("x", "y", "w"), (1, 1, 2)
        W = Poly.variable(vars, "w", self.f6.field, w)
        return W ** 3 + self.f4.with_vars(vars, w) * W + self.f6.with_vars(vars, w)

    def discriminant(self):
        """The degree-12 branch form 4 f4^3 + 27 f6^2."""
        return discriminant(self.equation(), "w")


@dataclass(frozen=True)
class QuadricNetModel(CurveModel):
    """Complete intersection of three quadrics in P4."""

    quadrics: tuple
    kind = "quadric_net"
    VARS = ("x1", "x2", "x3", "x4", "x5")

    def __post_init__(self):
        if len(self.quadrics) != 3:
            raise ShapeError("a net needs exactly three quadrics")
        for q in self.quadrics:
            _model_part(q, self.VARS)
            if any(sum(e[:5]) != 2 for e in q.terms):
                raise ShapeError("net members must be quadratic forms")

    @classmethod
    def from_matrices(cls, mats, field=None):
        field = field or DEFAULT_FIELD
        out = []
        for M in mats:
            terms = {}
            for i in range(5):
                for j in range(5):
                    if M[i][j] != M[j][i]:
                        raise ShapeError("quadric matrices must be symmetric")
                    c = field(M[i][j])
                    if c.is_zero():
                        continue
                    e = [0] * 5
                    e[i] += 1
                    e[j] += 1
                    e = tuple(e)
                    terms[e] = terms.get(e, field.zero) + c
            out.append(Poly.from_dict(cls.VARS, terms, field))
        return cls(tuple(out))

    def matrices(self):
        self.require_concrete()
        field = self.quadrics[0].field
        mats = []
        for q in self.quadrics:
            M = [[field.zero] * 5 for _ in range(5)]
            for e, c in q.terms.items():
                idx = [k for k in range(5) for _ in range(e[k])]
                i, j = idx
                if i == j:
                    M[i][i] = c
                else:
                    M[i][j] = M[j][i] = c / 2
            mats.append(tuple(tuple(r) for r in M))
        return tuple(mats)

    def forms(self):
        return tuple(self.quadrics)

    def substitute(self, values):
        return QuadricNetModel(tuple(self._sub(q, values) for q in self.quadrics))


@dataclass(frozen=True)
class SpaceQCModel(CurveModel):
    """Quadric and cubic surface in P3 meeting in a curve."""

    Q: Poly
    C: Poly
    kind = "space_qc"
    VARS = ("z1", "z2", "z3", "z4")

    def __post_init__(self):
        for f, d in ((self.Q, 2), (self.C, 3)):
            _model_part(f, self.VARS)
            if f.is_zero() or any(sum(e[:4]) != d for e in f.terms):
                raise ShapeError(f"expected a form of degree {d}")

    def forms(self):
        return (self.Q, self.C)

    def substitute(self, values):
        return SpaceQCModel(self._sub(self.Q, values), self._sub(self.C, values))


@dataclass(frozen=True)
class PlaneNodalModel(CurveModel):
    """Plane curve with marked singular points (point, multiplicity)."""

    F: Poly
    marked: tuple = ()
    kind = "plane_nodal"
    VARS = ("x", "y", "z")

    def __post_init__(self):
        _model_part(self.F, self.VARS)
        if self.F.is_zero() or len({sum(e[:3]) for e in self.F.terms}) != 1:
            raise ShapeError("F must be a nonzero ternary form")

    @property
    def degree(self):
        return sum(next(iter(self.F.terms))[:3])

    def forms(self):
        return (self.F,)

    def substitute(self, values):
        return PlaneNodalModel(self._sub(self.F, values), self.marked)


@dataclass(frozen=True)
class HyperBranchModel(CurveModel):
    """Hyperelliptic curve y^2 = B(x, z), B a binary form of degree 2g + 2."""

    B: Poly
    kind = "hyper_branch"
    VARS = ("x", "y")

    def __post_init__(self):
        _model_part(self.B, self.VARS)
        degs = {e[0] + e[1] for e in self.B.terms}
        if len(degs) != 1 or degs.pop() % 2:
            raise ShapeError("branch form must be homogeneous of even degree")

    @property
    def degree(self):
        e = next(iter(self.B.terms))
        return e[0] + e[1]

    def forms(self):
        return (self.B,)

    def substitute(self, values):
        return HyperBranchModel(self._sub(self.B, values))


# --- pullbacks and invariance ------------------------------------------------

def _images(f, src, dst, M):
    """Images for v_i in ``src`` -> sum_j M[i][j] dst_j, as Polys in f's variables."""
    out = {}
    for i, v in enumerate(src):
        acc = Poly(f.vars, {}, f.field, f.weights)
        for j, w in enumerate(dst):
            c = M[i][j]
            if not c.is_zero():
                acc = acc + Poly.variable(f.vars, w, f.field, f.weights) * c
        out[v] = acc
    return out


def pullback(f, g, vars):
    """F o g for a form in ``vars`` (leading variables of f)."""
    images = {v: Poly.variable(f.vars, v, f.field, f.weights) for v in f.vars}
    if isinstance(g, ProjMap):
        if g.dim != len(vars):
            raise SymmetryError(f"{g.dim}x{g.dim} collineation on {len(vars)} variables")
        images.update(_images(f, vars, vars, g.matrix))
    elif isinstance(g, BiMoebius):
        xs, ys = vars[:2], vars[2:]
        if g.swap:
            images.update(_images(f, xs, ys, g.A))
            images.update(_images(f, ys, xs, g.B))
        else:
            images.update(_images(f, xs, xs, g.A))
            images.update(_images(f, ys, ys, g.B))
    elif isinstance(g, FiberMap):
        images.update(_images(f, vars[:2], vars[:2], g.A))
    else:
        raise SymmetryError(f"unsupported element {g!r}")
    return f.compose(images, f.vars, f.weights)


def proportionality(f, h):
    """lambda with h == lambda * f, or None."""
    if f.is_zero():
        return f.field.one if h.is_zero() else None
    e0 = max(f.terms)
    lam = h.coeff(e0) / f.terms[e0]
    return lam if h == f * lam else None


def _coefficient_rows(polys):
    monos = sorted({e for p in polys for e in p.terms})
    return monos, [[p.coeff(m) for p in polys] for m in monos]


def solve_span(target, basis):
    """Coefficients c with target == sum c_k basis_k, or None."""
    field = target.field
    monos, rows = _coefficient_rows(list(basis) + [target])
    if not rows:
        return [field.zero] * len(basis)
    ker = kernel(tuple(tuple(r) for r in rows))
    for v in ker:
        if not v[-1].is_zero():
            s = -v[-1].inverse()
            coeffs = [x * s for x in v[:-1]]
            # unique when the basis is independent
            return coeffs
    return None


def _check_kind(model, g):
    ok = {
        "biform33": lambda: isinstance(g, BiMoebius),
        "trigonal": lambda: isinstance(g, FiberMap) and g.weight == 2,
        "quadric_net": lambda: isinstance(g, ProjMap) and g.dim == 5,
        "space_qc": lambda: isinstance(g, ProjMap) and g.dim == 4,
        "plane_nodal": lambda: isinstance(g, ProjMap) and g.dim == 3,
        "hyper_branch": lambda: (isinstance(g, ProjMap) and g.dim == 2)
        or (isinstance(g, FiberMap) and g.weight == model.degree // 2),
    }[model.kind]()
    if not ok:
        raise SymmetryError(f"{g!r} does not act on a {model.kind} model")


@dataclass(frozen=True)
class TrigonalScaling:
    """f4 o A = l f4, f6 o A = k f6, whole equation scaled by lam = c^3."""

    lam: object
    l: object
    k: object
    c: object


def invariance(model, g):
    """Scalar (or matrix) by which g rescales the defining equations.

    BiForm33, PlaneNodalModel, HyperBranchModel: lambda with F o g = lambda F.
    TrigonalModel: lambda = c^3 (see :func:`trigonal_scaling` for k and l).
    QuadricNetModel: the 3x3 NetAction N with F_i o g = sum_j N[i][j] F_j.
    SpaceQCModel: (lambda_Q, mu_C) with Q o g = lambda_Q Q and
    C o g = mu_C C modulo the ideal of Q.
    """
    model.require_concrete()
    _check_kind(model, g)
    if model.kind == "trigonal":
        return trigonal_scaling(model, g).lam
    if model.kind == "quadric_net":
        return net_action(model, g)
    if model.kind == "space_qc":
        return _space_qc_scaling(model, g)
    f = model.forms()[0]
    h = pullback(f, g, model.VARS)
    if model.kind == "hyper_branch" and isinstance(g, FiberMap):
        lam = g.c * g.c
        if h != f * lam:
            raise InvarianceError("branch form not invariant", h - f * lam)
        return lam
    lam = proportionality(f, h)
    if lam is None:
        raise InvarianceError(f"{model.kind} form not invariant under {g!r}", h)
    return lam


def trigonal_scaling(model, g):
    model.require_concrete()
    _check_kind(model, g)
    c = g.c
    l, k = c * c, c * c * c
    h4 = pullback(model.f4, g, model.VARS)
    h6 = pullback(model.f6, g, model.VARS)
    if h4 != model.f4 * l:
        raise InvarianceError("f4 o A != c^2 f4", h4 - model.f4 * l)
    if h6 != model.f6 * k:
        raise InvarianceError("f6 o A != c^3 f6", h6 - model.f6 * k)
    if k * k != l ** 3:
        raise InvarianceError("k^2 != l^3")
    return TrigonalScaling(lam=k, l=l, k=k, c=c)


def fiber_lift(f4, f6, A, field=None):
    """The scalar c making (A, c) an automorphism of w^3 + f4 w + f6.

    Returns None when the binary substitution does not lift.  When f4
    vanishes, c is a cube root of k found among the session roots of unity
    times rational cube roots; None if no such root exists.
    """
    g0 = FiberMap(A, (field or DEFAULT_FIELD).one, 2, canonical=False)
    h6 = pullback(f6, g0, ("x", "y"))
    k = proportionality(f6, h6)
    if k is None:
        return None
    if not f4.is_zero():
        h4 = pullback(f4, g0, ("x", "y"))
        l = proportionality(f4, h4)
        if l is None or k * k != l ** 3:
            return None
        return k / l
    for r in k.field.roots_of_unity():
        q = k / r ** 3
        if q.is_rational():
            root = _rational_cube_root(q.to_fraction())
            if root is not None:
                return r * root
    return None


def _rational_cube_root(q):
    out = []
    for n in (abs(q.numerator), q.denominator):
        t = round(n ** (1 / 3))
        t = next((s for s in (t - 1, t, t + 1) if s >= 0 and s ** 3 == n), None)
        if t is None:
            return None
        out.append(t)
    return Fraction(out[0] if q >= 0 else -out[0], out[1])


def hyperelliptic_lifts(model, g):
    """The two lifts (A, c) and (A, -c) of a base collineation to y^2 = B.

    c is a square root of the scaling lambda with B o A = lambda B.
    """
    if not isinstance(g, ProjMap) or g.dim != 2:
        raise CurveError("lifts start from a binary collineation")
    lam = invariance(model, g)
    c = nth_root(lam, 2)
    if c is None:
        raise CurveError(f"no square root of the scaling {lam!r} in the session field")
    w = model.degree // 2
    return FiberMap(g.matrix, c, w, canonical=False), FiberMap(g.matrix, -c, w, canonical=False)


def hyperelliptic_group(model, gens, cap=1024):
    """Automorphisms of y^2 = B over the Moebius group generated by ``gens``.

    Returns (full, lifted): full is generated by lifts of the generators and
    the involution y -> -y; lifted is a subgroup mapping isomorphically onto
    the base group (one sign per generator), or None when no choice closes
    up, i.e. the extension does not split.
    """
    if model.kind != "hyper_branch":
        raise CurveError("hyperelliptic_group needs a hyper_branch model")
    lifts = [hyperelliptic_lifts(model, g) for g in gens]
    first = lifts[0][0]
    inv = FiberMap(first.identity().A, -first.field.one, first.weight, canonical=False)
    full = closure([pair[0] for pair in lifts] + [inv], cap)
    base = closure(list(gens), cap).order
    for signs in product((0, 1), repeat=len(lifts)):
        try:
            H = closure([lifts[k][s] for k, s in enumerate(signs)], base)
        except SymmetryError:
            continue
        if H.order == base:
            return full, H
    return full, None


def net_action(model, g):
    model.require_concrete()
    qs = model.quadrics
    rows = []
    for q in qs:
        h = pullback(q, g, model.VARS)
        coeffs = solve_span(h, qs)
        if coeffs is None:
            raise InvarianceError("transformed quadric leaves the net", h)
        rows.append(tuple(coeffs))
    N = tuple(rows)
    if mat_det(N).is_zero():
        raise InvarianceError("net action is singular")
    return N


def _space_qc_scaling(model, g):
    hq = pullback(model.Q, g, model.VARS)
    lam = proportionality(model.Q, hq)
    if lam is None:
        raise InvarianceError("quadric not invariant", hq)
    hc = pullback(model.C, g, model.VARS)
    lin = [Poly.variable(model.VARS, v, model.Q.field) * model.Q for v in model.VARS]
    coeffs = solve_span(hc, [model.C] + lin)
    if coeffs is None:
        raise InvarianceError("cubic not invariant modulo the quadric", hc)
    return lam, coeffs[0]


# --- smoothness --------------------------------------------------------------

@dataclass(frozen=True)
class Smoothness:
    status: str  # "smooth" | "singular" | "inconclusive"
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.status == "smooth"


PENDING_PROBE = "pending finite-field probe"


def _strip(f, g):
    """Remove from f every factor it shares with g."""
    while True:
        h = gcd_binary(f, g)
        if h.degree() <= 0:
            return f
        f = divide_binary(f, h)


def _trigonal_smoothness(model):
    f4, f6 = model.f4, model.f6
    x, y = model.VARS
    if f4.is_zero():
        rep = gcd_binary(f6.derivative(x), f6.derivative(y))
        if rep.degree() > 0:
            return Smoothness("singular", rep, "f6 has a repeated factor")
        return Smoothness("smooth", None, "f4 = 0 and f6 squarefree")
    G = gcd_binary(f4, f6)
    if G.degree() > 0:
        bad = gcd_binary(G, gcd_binary(f6.derivative(x), f6.derivative(y)))
        if bad.degree() > 0:
            return Smoothness("singular", bad, "a repeated factor of f6 also divides f4")
    D = model.discriminant()
    if D.is_zero():
        return Smoothness("singular", None, "discriminant vanishes identically")
    rest = _strip(D, G) if G.degree() > 0 else D
    rep = gcd_binary(rest.derivative(x), rest.derivative(y)) if rest.degree() > 1 else None
    if rep is not None and rep.degree() > 0:
        return Smoothness("singular", rep, "two of the twelve branch lines coincide")
    return Smoothness("smooth", None, "branch divisor squarefree away from common factors of f4, f6")


def _biform_smoothness(model, seed=0):
    rng = random.Random(seed)
    F = model.F
    field = F.field
    for first, second in ((("x1", "x2"), ("y1", "y2")), (("y1", "y2"), ("x1", "x2"))):
        a, b = [F.derivative(v) for v in second]
        c, d = [F.derivative(v) for v in first]
        r1, r2 = field(rng.randint(1, 97)), field(rng.randint(1, 97))
        try:
            elims = [
                resultant_binary_pair(a, b, second),
                resultant_binary_pair(a, c + d * r1, second),
                resultant_binary_pair(b, c * r2 + d, second),
            ]
        except (ResultantError, AlgebraError):
            continue
        elims = [e.drop_vars(()) for e in elims if not e.is_zero()]
        if not elims:
            continue
        g = elims[0]
        for e in elims[1:]:
            g = gcd_binary(g, e)
        if g.degree() <= 0:
            return Smoothness("smooth", None, f"eliminants over {second} coprime")
    return Smoothness("inconclusive", None, PENDING_PROBE)


def point_multiplicity(F, point, vars, cap=None):
    """Order of vanishing of the form F at a projective point."""
    cap = sum(next(iter(F.terms))) if cap is None else cap
    derivs = [F]
    for order in range(cap + 1):
        if any(not g.evaluate(point).is_zero() for g in derivs):
            return order
        derivs = _dedupe([h for g in derivs for h in (g.derivative(v) for v in vars) if not h.is_zero()])
        if not derivs:
            return order + 1
    return cap + 1


def _dedupe(polys):
    seen, out = set(), []
    for p in polys:
        k = tuple(sorted((e, c.key) for e, c in p.terms.items()))
        if k not in seen:
            seen.add(k)
            out.append(p)
    return out


def _plane_smoothness(model, seed=0):
    F = model.F
    field = F.field
    vars = model.VARS
    for point, mult in model.marked:
        pt = [field(c) for c in point]
        got = point_multiplicity(F, pt, vars, cap=mult + 1)
        if got != mult:
            return Smoothness("singular", (tuple(point), got),
                              f"marked point has multiplicity {got}, expected {mult}")
    rng = random.Random(seed)
    d = model.degree
    for _ in range(3):
        M = [[field(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        if mat_det(tuple(tuple(r) for r in M)).is_zero():
            continue
        g = ProjMap(tuple(tuple(r) for r in M), canonical=False)
        G = pullback(F, g, vars)
        inv = _inverse3(M)
        # marked points in the new coordinates, dehomogenised at y = 1
        roots = []
        ok = True
        for point, _ in model.marked:
            q = [sum((inv[i][j] * field(point[j]) for j in range(3)), field.zero) for i in range(3)]
            if q[1].is_zero():
                ok = False
                break
            roots.append(q[0] / q[1])
        if not ok:
            continue
        parts = [G.derivative(v).subs({"y": 1}) for v in vars]
        if any(p.degree("z") != d - 1 for p in parts):
            continue
        s = field(rng.randint(1, 50))
        pairs = [(parts[0], parts[1]), (parts[0], parts[2]), (parts[1] + parts[0] * s, parts[2])]
        acc = None
        for p, q in pairs:
            r = _trim_list(resultant_by_evaluation(p, q, "z", "x", (d - 1, d - 1), (d - 1) ** 2))
            if not r:
                continue
            acc = r if acc is None else _ugcd(acc, r)
        if acc is None:
            continue
        for r0 in roots:
            acc = _strip_root(acc, r0)
        if len(acc) <= 1:
            return Smoothness("smooth", tuple(model.marked), "no singular points besides the marked ones")
        return Smoothness("inconclusive", None, PENDING_PROBE)
    return Smoothness("inconclusive", None, PENDING_PROBE)


def _trim_list(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _strip_root(p, r):
    """Divide the univariate list p by (t - r) as often as possible."""
    lin = [-r, r.field.one]
    while len(p) > 1:
        q, rem = _udivmod(list(p), lin)
        if rem:
            break
        p = q
    return p


def _inverse3(M):
    return mat_inv(tuple(tuple(r) for r in M))


def smoothness_check(model, seed=0):
    """Smooth, singular (with witness) or inconclusive (with reason)."""
    model.require_concrete()
    if model.kind == "trigonal":
        return _trigonal_smoothness(model)
    if model.kind == "biform33":
        return _biform_smoothness(model, seed)
    if model.kind == "plane_nodal":
        return _plane_smoothness(model, seed)
    if model.kind == "hyper_branch":
        n = distinct_root_count(model.B)
        if n == model.degree:
            return Smoothness("smooth", None, "branch form squarefree")
        return Smoothness("singular", None, f"branch form has {n} distinct roots of {model.degree}")
    return Smoothness("inconclusive", None, PENDING_PROBE)


def genus(model, check=None):
    """Geometric genus of a smooth (or marked-nodal) model."""
    check = check or smoothness_check(model)
    if check.status == "singular" or (check.status == "inconclusive" and check.reason != PENDING_PROBE):
        raise GenusUndefinedError(f"genus undefined: {check.reason}")
    kind = model.kind
    if kind == "biform33":
        return (3 - 1) * (3 - 1)
    if kind in ("trigonal", "space_qc"):
        return 4
    if kind == "quadric_net":
        return 5
    if kind == "hyper_branch":
        return (model.degree - 2) // 2
    if kind == "plane_nodal":
        m = model.degree
        return (m - 1) * (m - 2) // 2 - sum(mu * (mu - 1) // 2 for _, mu in model.marked)
    raise CurveError(f"unknown model kind {kind}")


# --- catalog -----------------------------------------------------------------

MODEL_KINDS = {
    "biform33": BiForm33,
    "trigonal": TrigonalModel,
    "quadric_net": QuadricNetModel,
    "space_qc": SpaceQCModel,
    "plane_nodal": PlaneNodalModel,
    "hyper_branch": HyperBranchModel,
}


@dataclass(frozen=True)
class GeneratorSpec:
    """A catalog generator whose entries may depend on the moduli."""

    kind: str
    matrices: tuple  # tuple of matrices of Poly-in-params
    swap: bool = False
    c: object = None
    weight: int = 2

    def realize(self, values, field=None):
        def ev(p):
            return _eval_param(p, values)

        mats = [tuple(tuple(ev(x) for x in row) for row in M) for M in self.matrices]
        if self.kind == "projmap":
            return ProjMap.from_rows(mats[0], field)
        if self.kind == "bimoebius":
            return BiMoebius.from_rows(mats[0], mats[1], self.swap, field)
        if self.kind == "trigonal":
            return FiberMap.from_rows(mats[0], ev(self.c), self.weight, field)
        raise CurveError(f"unknown generator kind {self.kind}")


def _eval_param(p, values):
    if not isinstance(p, Poly):
        return p
    missing = [v for v in p.vars if v not in values]
    if missing:
        raise ParametricModelError(f"no value for parameters {missing}")
    q = p.subs({v: values[v] for v in p.vars})
    return q.coeff(())


@dataclass(frozen=True)
class CurveEntry:
    id: str
    genus: int
    model: CurveModel
    generators: tuple  # GeneratorSpec
    expected: dict
    paper_ref: str = ""
    params: tuple = ()
    moduli: dict = dc_field(default_factory=dict)

    @property
    def is_parametric(self):
        return bool(self.params)

    def group_elements(self):
        """Realized generators; the entry must be concrete."""
        if self.params:
            raise ParametricModelError(f"{self.id}: instantiate moduli first")
        return [g.realize({}) for g in self.generators]


class _Reader:
    """Parses catalog payloads for one entry."""

    def __init__(self, field, src, params):
        self.field, self.src, self.params = field, src, tuple(params)

    def triples(self, triples, where):
        acc = self.field.zero
        for t in triples:
            if not (isinstance(t, list) and len(t) == 3 and all(isinstance(v, int) for v in t)):
                raise CurveError(f"{where}: cyclotomic literal must be [power, num, den] triples")
            power, num, den = t
            if den == 0:
                raise CurveError(f"{where}: zero denominator")
            acc = acc + self.field.root(self.src, power) * Fraction(num, den)
        return acc

    def scalar(self, obj, where):
        """Literal -> CycNum, or a Poly in the parameters for parametric terms."""
        field = self.field
        if isinstance(obj, int) and not isinstance(obj, bool):
            return field(obj)
        if isinstance(obj, list):
            return self.triples(obj, where)
        if isinstance(obj, dict) and "terms" in obj:
            acc = Poly(self.params, {}, field)
            for t in obj["terms"]:
                if not (isinstance(t, list) and len(t) in (3, 4)):
                    raise CurveError(f"{where}: malformed parametric term {t!r}")
                c = self.triples([t[:3]], where)
                exps = t[3] if len(t) == 4 else {}
                bad = [k for k in exps if k not in self.params]
                if bad:
                    raise CurveError(f"{where}: undeclared parameters {bad}")
                e = tuple(int(exps.get(p, 0)) for p in self.params)
                acc = acc + Poly(self.params, {e: c}, field)
            return acc
        raise CurveError(f"{where}: unrecognised coefficient {obj!r}")

    def form(self, obj, vars, where):
        if not isinstance(obj, dict) or "terms" not in obj:
            raise CurveError(f"{where}: form payload needs 'terms'")
        field = self.field
        allv = tuple(vars) + self.params
        acc = Poly(allv, {}, field)
        for k, t in enumerate(obj["terms"]):
            if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], list) and len(t[0]) == len(vars)):
                raise CurveError(f"{where}.terms[{k}]: expected [exponents, coefficient]")
            c = self.scalar(t[1], f"{where}.terms[{k}]")
            mono = Poly(allv, {tuple(t[0]) + (0,) * len(self.params): field.one}, field)
            if isinstance(c, Poly):
                c = c.with_vars(allv)
            acc = acc + mono * c
        return acc

    def matrix(self, obj, where, n=None):
        if not isinstance(obj, list) or not obj or any(not isinstance(r, list) for r in obj):
            raise CurveError(f"{where}: matrix must be a list of rows")
        if n is not None and (len(obj) != n or any(len(r) != n for r in obj)):
            raise CurveError(f"{where}: expected a {n}x{n} matrix")
        return tuple(tuple(self.scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(r))
                     for i, r in enumerate(obj))

    def model(self, obj, where):
        kind = obj.get("kind")
        if kind not in MODEL_KINDS:
            raise CurveError(f"{where}: unknown model kind {kind!r}")
        cls = MODEL_KINDS[kind]
        V = cls.VARS
        if kind == "biform33":
            return cls(self.form(obj["F"], V, f"{where}.F"))
        if kind == "trigonal":
            return cls(self.form(obj["f4"], V, f"{where}.f4"), self.form(obj["f6"], V, f"{where}.f6"))
        if kind == "quadric_net":
            if "matrices" in obj:
                if self.params:
                    raise CurveError(f"{where}: parametric nets must use forms")
                mats = [self.matrix(m, f"{where}.matrices[{k}]", 5) for k, m in enumerate(obj["matrices"])]
                return cls.from_matrices(mats, self.field)
            return cls(tuple(self.form(q, V, f"{where}.quadrics[{k}]") for k, q in enumerate(obj["quadrics"])))
        if kind == "space_qc":
            return cls(self.form(obj["Q"], V, f"{where}.Q"), self.form(obj["C"], V, f"{where}.C"))
        if kind == "plane_nodal":
            marked = []
            for k, m in enumerate(obj.get("marked", [])):
                pt = tuple(self.scalar(c, f"{where}.marked[{k}]") for c in m["point"])
                if any(isinstance(c, Poly) for c in pt):
                    raise CurveError(f"{where}.marked[{k}]: marked points must be constant")
                marked.append((pt, int(m["multiplicity"])))
            return cls(self.form(obj["F"], V, f"{where}.F"), tuple(marked))
        return cls(self.form(obj["B"], V, f"{where}.B"))

    def generator(self, obj, where):
        kind = obj.get("kind")
        if kind == "projmap":
            return GeneratorSpec("projmap", (self.matrix(obj["matrix"], f"{where}.matrix"),))
        if kind == "pentahedral_perm":
            return GeneratorSpec("projmap", (tuple(pentahedral_matrix(obj["perm"], self.field)),))
        if kind == "bimoebius":
            return GeneratorSpec("bimoebius", (self.matrix(obj["A"], f"{where}.A", 2),
                                               self.matrix(obj["B"], f"{where}.B", 2)),
                                 swap=bool(obj.get("swap", False)))
        if kind == "trigonal":
            return GeneratorSpec("trigonal", (self.matrix(obj["A"], f"{where}.A", 2),),
                                 c=self.scalar(obj["c"], f"{where}.c"), weight=int(obj.get("weight", 2)))
        raise CurveError(f"{where}: unknown generator kind {kind!r}")


def pentahedral_matrix(perm, field=None):
    """4x4 matrix of z_i -> z_perm(i) on {sum z = 0}, with z5 eliminated."""
    field = field or DEFAULT_FIELD
    if sorted(perm) != list(range(5)):
        raise CurveError(f"not a permutation of five letters: {perm}")
    rows = []
    for i in range(4):
        j = perm[i]
        if j < 4:
            rows.append(tuple(field.one if k == j else field.zero for k in range(4)))
        else:
            rows.append(tuple(-field.one for _ in range(4)))
    return rows


_REQUIRED = ("id", "genus", "model", "generators", "expected")


def read_form(obj, vars, field=None, source_index=120):
    """Parse a catalog form payload (e.g. an ``expected`` annotation)."""
    return _Reader(field or DEFAULT_FIELD, source_index, ()).form(obj, vars, "form")


def load_catalog(data, field=None):
    """Parse and validate catalog JSON (bytes or str) into CurveEntry objects."""
    field = field or DEFAULT_FIELD
    try:
        doc = json.loads(data)
    except (ValueError, UnicodeDecodeError) as exc:
        raise CatalogError(None, "$", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("field_index"), int) \
            or not isinstance(doc.get("entries"), list):
        raise CatalogError(None, "$", "top level must be {field_index: int, entries: [...]}")
    src = doc["field_index"]
    if src < 1 or field.index % src:
        raise CatalogError(None, "$.field_index", f"Q(zeta_{src}) does not embed in {field}")
    entries, seen = [], set()
    for n, obj in enumerate(doc["entries"]):
        eid = obj.get("id") if isinstance(obj, dict) else None
        base = f"$.entries[{n}]"
        try:
            if not isinstance(obj, dict):
                raise CurveError("entry must be an object")
            missing = [k for k in _REQUIRED if k not in obj]
            if missing:
                raise CurveError(f"missing fields {missing}")
            if eid in seen:
                raise CurveError("duplicate id")
            seen.add(eid)
            params = tuple(obj.get("params", ()))
            rd = _Reader(field, src, params)
            model = rd.model(obj["model"], f"{base}.model")
            gens = tuple(rd.generator(g, f"{base}.generators[{k}]") for k, g in enumerate(obj["generators"]))
            exp = dict(obj["expected"])
            if not isinstance(exp.get("order"), int) or exp["order"] < 1:
                raise CurveError("expected.order must be a positive integer")
            if exp.get("histogram") is not None:
                exp["histogram"] = {int(k): int(v) for k, v in exp["histogram"].items()}
            for g in gens:
                _check_spec_kind(model, g)
            entries.append(CurveEntry(
                id=eid, genus=int(obj["genus"]), model=model, generators=gens,
                expected=exp, paper_ref=obj.get("paper_ref", ""), params=params,
                moduli={p: None for p in params},
            ))
        except (CurveError, AlgebraError, SymmetryError, KeyError, TypeError, ValueError, AttributeError) as exc:
            raise CatalogError(eid, base, str(exc)) from None
    return entries


def _check_spec_kind(model, g):
    want = {
        "biform33": "bimoebius", "trigonal": "trigonal", "quadric_net": "projmap",
        "space_qc": "projmap", "plane_nodal": "projmap",
    }.get(model.kind)
    if model.kind == "hyper_branch":
        ok = g.kind in ("projmap", "trigonal")
    else:
        ok = g.kind == want
    dims = {"quadric_net": 5, "space_qc": 4, "plane_nodal": 3, "hyper_branch": 2}
    if ok and g.kind == "projmap" and len(g.matrices[0]) != dims[model.kind]:
        ok = False
    if not ok:
        raise CurveError(f"generator kind {g.kind} does not act on a {model.kind} model")


def default_catalog_bytes():
    from importlib.resources import files
    return files("curvesym").joinpath("data/catalog.json").read_bytes()


def load_default_catalog():
    return load_catalog(default_catalog_bytes())


# --- moduli and entry verification ---------------------------------------------

EXACT_KINDS = ("biform33", "trigonal", "plane_nodal", "hyper_branch")


def random_moduli(params, rng, bound=7):
    """Nonzero rationals num/den with |num|, den <= bound."""
    values = {}
    for p in params:
        num = 0
        while num == 0:
            num = rng.randint(-bound, bound)
        values[p] = Fraction(num, rng.randint(1, bound))
    return values


def _acceptable(model, check):
    if check.status == "smooth":
        return True
    return model.kind not in EXACT_KINDS and check.status == "inconclusive" and check.reason == PENDING_PROBE


def concrete_entry(entry, values, field=None):
    """Substitute moduli into the model and generators (no checks)."""
    field = field or DEFAULT_FIELD
    vals = {k: field(v) for k, v in values.items()}
    model = entry.model.substitute(vals) if entry.params else entry.model
    specs = []
    for g in entry.generators:
        mats = tuple(tuple(tuple(_eval_param(x, vals) for x in row) for row in M) for M in g.matrices)
        c = _eval_param(g.c, vals) if g.c is not None else None
        specs.append(GeneratorSpec(g.kind, mats, g.swap, c, g.weight))
    return replace(entry, model=model, generators=tuple(specs), params=(),
                   moduli={**entry.moduli, **vals})


def instantiate_moduli(entry, seed, retries=32, candidates=None, check_group=True):
    """Replace free moduli by seeded small rationals, retrying degenerate draws.

    A draw is kept when the model passes the smoothness check and, with
    ``check_group``, every generator is an invariance of the model and the
    generated group has exactly the expected order.
    """
    if not entry.params:
        return entry
    rng = random.Random(seed)
    pending = list(candidates or [])
    reasons = []
    for _ in range(retries):
        values = pending.pop(0) if pending else random_moduli(entry.params, rng)
        try:
            inst = concrete_entry(entry, values)
            check = smoothness_check(inst.model, seed)
            if not _acceptable(inst.model, check):
                reasons.append(f"{values}: {check.status} ({check.reason})")
                continue
            if check_group:
                gens = inst.group_elements()
                for g in gens:
                    invariance(inst.model, g)
                order = closure(gens).order
                if order != entry.expected["order"]:
                    reasons.append(f"{values}: group order {order}")
                    continue
            return inst
        except (ZeroDivisionError, AlgebraError, SymmetryError, CurveError) as exc:
            reasons.append(f"{values}: {exc}")
    raise DegenerateFamilyError(f"{entry.id}: no admissible moduli in {retries} draws; last: {reasons[-3:]}")


@dataclass
class EntryReport:
    id: str
    ok: bool
    order: int
    expected_order: int
    type: str
    expected_type: str
    histogram: dict
    genus: int | None
    smoothness: str
    moduli: dict
    problems: list
    notes: str = ""

    def as_dict(self):
        return {
            "id": self.id, "ok": self.ok, "order": self.order, "expected_order": self.expected_order,
            "type": self.type, "expected_type": self.expected_type,
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "genus": self.genus, "smoothness": self.smoothness,
            "moduli": {k: repr(v) for k, v in self.moduli.items()},
            "problems": self.problems, "notes": self.notes,
        }


def verify_entry(entry, seed=0, with_histogram=True):
    """Instantiate (if needed) and check invariance, order, type, histogram, genus."""
    inst = instantiate_moduli(entry, seed) if entry.params else entry
    problems = []
    gens = inst.group_elements()
    for k, g in enumerate(gens):
        try:
            invariance(inst.model, g)
        except InvarianceError as exc:
            problems.append(f"generator {k}: {exc}")
    G = closure(gens)
    gt = classify(G)
    hist = order_histogram(G) if with_histogram else {}
    exp = inst.expected
    if G.order != exp["order"]:
        problems.append(f"order {G.order} != expected {exp['order']}")
    if exp.get("type") and gt.name != exp["type"]:
        problems.append(f"type {gt.name} != expected {exp['type']}")
    if exp.get("histogram") and hist != exp["histogram"]:
        problems.append(f"histogram {hist} != expected {exp['histogram']}")
    check = smoothness_check(inst.model, seed)
    try:
        g_val = genus(inst.model, check)
        if g_val != inst.genus:
            problems.append(f"genus {g_val} != catalog genus {inst.genus}")
    except GenusUndefinedError as exc:
        g_val = None
        problems.append(str(exc))
    return EntryReport(
        id=inst.id, ok=not problems, order=G.order, expected_order=exp["order"], type=gt.name,
        expected_type=exp.get("type", ""), histogram=hist, genus=g_val,
        smoothness=f"{check.status}: {check.reason}", moduli=dict(inst.moduli), problems=problems,
        notes=exp.get("notes", ""),
    )
