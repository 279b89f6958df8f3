"""Finite projective transformations, group closure and classification.

Three kinds of element are supported:

* :class:`ProjMap` -- an n x n matrix acting on P^(n-1), up to scalar;
* :class:`BiMoebius` -- a pair of binary substitutions acting on P1 x P1,
  optionally exchanging the two factors;
* :class:`FiberMap` -- a binary substitution on (x, y) together with a scalar
  on a weighted fibre variable w (weight 2 for trigonal models, weight
  g+1 for hyperelliptic ones).

All of them are immutable and carry an exact canonical key, so group
closure is plain set saturation.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field as dc_field
from math import gcd

from .algebra import AlgebraError, CycNum, DEFAULT_FIELD, nth_root


class SymmetryError(Exception):
    pass


class OrderError(SymmetryError):
    """Element has infinite order or order beyond the configured cap."""


class FieldTooSmallError(SymmetryError):
    pass


class GroupTooLargeError(SymmetryError):
    pass


class BlockInvarianceError(SymmetryError):
    pass


# --- exact matrices --------------------------------------------------------

def as_matrix(rows, field=None):
    field = field or DEFAULT_FIELD
    return tuple(tuple(field(c) for c in row) for row in rows)


def identity_matrix(n, field=None):
    field = field or DEFAULT_FIELD
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(p):
            acc = None
            for k in range(m):
                x = ai[k]
                if x.is_zero():
                    continue
                y = b[k][j]
                if y.is_zero():
                    continue
                t = x * y
                acc = t if acc is None else acc + t
            row.append(acc if acc is not None else ai[0].field.zero)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v):
    return tuple(sum((x * y for x, y in zip(row, v)), row[0].field.zero) for row in a)


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_det(a):
    from .algebra import det
    return det([list(r) for r in a])


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def kernel(a):
    """Basis of the right kernel {v : a v = 0}."""
    ncols = len(a[0])
    field = a[0][0].field
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def mat_inv(a):
    n = len(a)
    field = a[0][0].field
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise SymmetryError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def _first_nonzero(a):
    for row in a:
        for x in row:
            if not x.is_zero():
                return x
    raise SymmetryError("zero matrix")


def canonical_matrix(a):
    return mat_scale(a, _first_nonzero(a).inverse())


def _mkey(a):
    return tuple(x.key for row in a for x in row)


def scalar_of(a):
    """Return c if a == c * I, else None."""
    c = a[0][0]
    if c.is_zero():
        return None
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if i == j:
                if x != c:
                    return None
            elif not x.is_zero():
                return None
    return c


def subspace_key(vectors):
    red, _ = rref(vectors)
    return tuple(x.key for row in red for x in row)


# --- element kinds ---------------------------------------------------------

class ProjMap:
    kind = "projmap"
    __slots__ = ("matrix", "key")

    def __init__(self, matrix, canonical=True):
        cm = canonical_matrix(matrix)
        self.matrix = cm if canonical else matrix
        self.key = ("P", _mkey(cm))

    @classmethod
    def from_rows(cls, rows, field=None):
        m = as_matrix(rows, field)
        if mat_det(m).is_zero():
            raise SymmetryError("singular collineation")
        return cls(m, canonical=False)

    @property
    def dim(self):
        return len(self.matrix)

    @property
    def field(self):
        return self.matrix[0][0].field

    def compose(self, other):
        _check_same(self, other)
        return ProjMap(mat_mul(self.matrix, other.matrix))

    def raw_power_scalar(self, m):
        p = self.matrix
        for _ in range(m - 1):
            p = mat_mul(p, self.matrix)
        return scalar_of(p)

    def inverse(self):
        return ProjMap(mat_inv(self.matrix))

    def identity(self):
        return ProjMap(identity_matrix(self.dim, self.field))

    def scaled(self, c):
        return ProjMap(mat_scale(self.matrix, c), canonical=False)

    def __eq__(self, other):
        return isinstance(other, ProjMap) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"ProjMap({[list(r) for r in self.matrix]})"


class BiMoebius:
    """(x, y) -> (A x, B y), or (A y, B x) when ``swap`` is set."""

    kind = "bimoebius"
    __slots__ = ("A", "B", "swap", "key")

    def __init__(self, A, B, swap=False, canonical=True):
        cA, cB = canonical_matrix(A), canonical_matrix(B)
        if canonical:
            A, B = cA, cB
        self.A, self.B, self.swap = A, B, bool(swap)
        self.key = ("B", self.swap, _mkey(cA), _mkey(cB))

    @classmethod
    def from_rows(cls, A, B, swap=False, field=None):
        A, B = as_matrix(A, field), as_matrix(B, field)
        if mat_det(A).is_zero() or mat_det(B).is_zero():
            raise SymmetryError("singular binary substitution")
        return cls(A, B, swap, canonical=False)

    @property
    def dim(self):
        return 2

    @property
    def field(self):
        return self.A[0][0].field

    def compose(self, other):
        _check_same(self, other)
        A, B, C, D = self.A, self.B, other.A, other.B
        if not self.swap:
            return BiMoebius(mat_mul(A, C), mat_mul(B, D), other.swap)
        # a swap after h: x-slot receives A applied to h's y-image
        return BiMoebius(mat_mul(A, D), mat_mul(B, C), not other.swap)

    def inverse(self):
        if not self.swap:
            return BiMoebius(mat_inv(self.A), mat_inv(self.B))
        return BiMoebius(mat_inv(self.B), mat_inv(self.A), True)

    def identity(self):
        i = identity_matrix(2, self.field)
        return BiMoebius(i, i)

    def factor_scalars(self, m):
        """For g^m non-swapping, the scalars (a, b) with g^m = (a I, b I), else None."""
        g = BiMoebius(self.A, self.B, self.swap, canonical=False)
        p = g
        for _ in range(m - 1):
            p = BiMoebius(*_raw_bicompose(p, g))
        if p.swap:
            return None
        a, b = scalar_of(p.A), scalar_of(p.B)
        if a is None or b is None:
            return None
        return a, b

    def __eq__(self, other):
        return isinstance(other, BiMoebius) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        s = "swap, " if self.swap else ""
        return f"BiMoebius({s}A={[list(r) for r in self.A]}, B={[list(r) for r in self.B]})"


def _raw_bicompose(g, h):
    A, B, C, D = g.A, g.B, h.A, h.B
    if not g.swap:
        return mat_mul(A, C), mat_mul(B, D), h.swap
    return mat_mul(A, D), mat_mul(B, C), not h.swap


class FiberMap:
    """(x, y, w) -> (A(x, y), c w) with (A, c) ~ (sA, s^weight c)."""

    kind = "trigonal"
    __slots__ = ("A", "c", "weight", "key")

    def __init__(self, A, c, weight=2, canonical=True):
        s = _first_nonzero(A).inverse()
        cA, cc = mat_scale(A, s), c * s ** weight
        if canonical:
            A, c = cA, cc
        self.A, self.c, self.weight = A, c, weight
        self.key = ("T", weight, _mkey(cA), cc.key)

    @classmethod
    def from_rows(cls, A, c, weight=2, field=None):
        field = field or DEFAULT_FIELD
        A = as_matrix(A, field)
        c = field(c)
        if mat_det(A).is_zero() or c.is_zero():
            raise SymmetryError("singular fibre map")
        return cls(A, c, weight, canonical=False)

    @property
    def dim(self):
        return 2

    @property
    def field(self):
        return self.c.field

    def compose(self, other):
        _check_same(self, other)
        if other.weight != self.weight:
            raise SymmetryError("fibre weights differ")
        return FiberMap(mat_mul(self.A, other.A), self.c * other.c, self.weight)

    def inverse(self):
        return FiberMap(mat_inv(self.A), self.c.inverse(), self.weight)

    def identity(self):
        return FiberMap(identity_matrix(2, self.field), self.field.one, self.weight)

    def __eq__(self, other):
        return isinstance(other, FiberMap) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FiberMap(A={[list(r) for r in self.A]}, c={self.c!r}, weight={self.weight})"


# weight-2 fibre maps act on trigonal models
TrigonalMap = FiberMap


def _check_same(g, h):
    if type(g) is not type(h) or g.dim != h.dim:
        raise SymmetryError(f"cannot compose {g.kind}/{g.dim} with {h.kind}/{h.dim}")


def compose(g, h):
    """g after h."""
    return g.compose(h)


# --- order and normalisation -------------------------------------------------

def projective_order(g, cap=256):
    """Least m with g^m trivial, together with the scalar(s) witnessing it.

    ProjMap: (m, c) with M^m = c I.  BiMoebius: (m, (a, b)).  FiberMap:
    (m, s) with A^m = s I and c^m = s^weight.
    """
    if isinstance(g, ProjMap):
        p = g.matrix
        for m in range(1, cap + 1):
            c = scalar_of(p)
            if c is not None:
                return m, c
            p = mat_mul(p, g.matrix)
    elif isinstance(g, BiMoebius):
        p = (g.A, g.B, g.swap)
        for m in range(1, cap + 1):
            if not p[2]:
                a, b = scalar_of(p[0]), scalar_of(p[1])
                if a is not None and b is not None:
                    return m, (a, b)
            p = _raw_bicompose(BiMoebius(*p, canonical=False), g)
    elif isinstance(g, FiberMap):
        A, c = g.A, g.c
        for m in range(1, cap + 1):
            s = scalar_of(A)
            if s is not None and c == s ** g.weight:
                return m, s
            A, c = mat_mul(A, g.A), c * g.c
    else:
        raise SymmetryError(f"unknown element {g!r}")
    raise OrderError(f"order exceeds cap {cap}")


def _root_scaling(c, m, field):
    """r in the field with r^m * c == 1."""
    x = nth_root(c, m)
    if x is None:
        raise FieldTooSmallError(f"no m-th root of {c!r} (m = {m}) found in {field}")
    return x.inverse()


def normalize_finite(g, cap=256):
    """Scalar multiple of g whose m-th power is exactly the identity.

    Returns (g', m); g' is not canonicalised so the exact scaling survives.
    """
    m, c = projective_order(g, cap)
    field = g.field
    if isinstance(g, ProjMap):
        r = _root_scaling(c, m, field)
        return g.scaled(r), m
    if isinstance(g, BiMoebius):
        a, b = c
        ra, rb = _root_scaling(a, m, field), _root_scaling(b, m, field)
        if g.swap:
            # (sA, tB) swap: g^m picks up (st)^(m/2) in both factors
            return BiMoebius(mat_scale(g.A, ra), mat_scale(g.B, rb), True, canonical=False), m
        return BiMoebius(mat_scale(g.A, ra), mat_scale(g.B, rb), False, canonical=False), m
    if isinstance(g, FiberMap):
        r = _root_scaling(c, m, field)
        return FiberMap(mat_scale(g.A, r), g.c * r ** g.weight, g.weight, canonical=False), m
    raise SymmetryError(f"unknown element {g!r}")


def eigen_split_matrix(M, m):
    """Eigenvalue/eigenspace pairs of a matrix with M^m = I."""
    field = M[0][0].field
    if field.index % m:
        raise FieldTooSmallError(f"{m}-th roots of unity are not in {field}")
    n = len(M)
    out = []
    for k in range(m):
        lam = field.root(m, k)
        basis = kernel(mat_sub(M, mat_scale(identity_matrix(n, field), lam)))
        if basis:
            out.append((lam, basis))
    if sum(len(b) for _, b in out) != n:
        raise SymmetryError("eigenspaces do not span; matrix is not of finite order")
    return out


def eigen_split(g, cap=256):
    """Eigenspace decomposition of a finite-order collineation (ProjMap)."""
    if not isinstance(g, ProjMap):
        raise SymmetryError("eigen_split applies to collineations")
    h, m = normalize_finite(g, cap)
    return eigen_split_matrix(h.matrix, m)


# --- groups ----------------------------------------------------------------

@dataclass
class Group:
    elements: list
    generators: list
    index: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {g.key: k for k, g in enumerate(self.elements)}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g.key in self.index

    @property
    def identity(self):
        return self.elements[0]

    def element_order(self, g):
        ident = self.identity.key
        p, m = g, 1
        while p.key != ident:
            p = p.compose(g)
            m += 1
            if m > len(self.elements):
                raise SymmetryError("element order exceeds group order")
        return m

    def is_abelian(self):
        gens = self.generators
        return all(a.compose(b).key == b.compose(a).key for a in gens for b in gens)

    def conjugacy_classes(self):
        seen, classes = set(), []
        for g in self.elements:
            if g.key in seen:
                continue
            cls = {}
            for h in self.elements:
                c = h.compose(g).compose(h.inverse())
                cls[c.key] = c
            seen.update(cls)
            classes.append(list(cls.values()))
        return classes


def closure(generators, cap=1024, order_cap=256):
    """Group generated by ``generators`` by breadth-first saturation."""
    if not generators:
        raise SymmetryError("closure needs at least one generator")
    first = generators[0]
    for g in generators:
        _check_same(first, g)
        projective_order(g, order_cap)
    ident = first.identity()
    elements = [ident]
    index = {ident.key: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = x.compose(g)
            if y.key not in index:
                if len(elements) >= cap:
                    raise GroupTooLargeError(f"group exceeds {cap} elements")
                index[y.key] = len(elements)
                elements.append(y)
                queue.append(y)
    return Group(elements, list(generators), index)


def order_histogram(G):
    return dict(sorted(Counter(G.element_order(g) for g in G.elements).items()))


@dataclass(frozen=True)
class GroupType:
    name: str
    order: int
    abelian: bool
    histogram: tuple

    def __str__(self):
        return self.name


_NAMED = {
    (12, ((1, 1), (2, 3), (3, 8))): "tetrahedral",
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "octahedral",
    (60, ((1, 1), (2, 15), (3, 20), (5, 24))): "icosahedral",
}


def classify(G):
    """Name the group from (order, abelian flag, order histogram).

    Decision table: abelian with an element of full order -> cyclic-n;
    abelian of order 4 otherwise -> klein-four; non-abelian of order 2n with
    an element of order n and exactly n (+1 if n even) involutions ->
    dihedral-2n; the three polyhedral histograms -> tetrahedral, octahedral,
    icosahedral; anything else -> other.
    """
    n = G.order
    hist = order_histogram(G)
    abelian = G.is_abelian()
    htuple = tuple(sorted(hist.items()))
    if abelian and n in hist:
        name = f"cyclic-{n}"
    elif abelian and n == 4:
        name = "klein-four"
    elif not abelian and n % 2 == 0 and (n // 2) in hist and \
            hist.get(2, 0) == n // 2 + (1 if (n // 2) % 2 == 0 else 0):
        name = f"dihedral-{n}"
    else:
        name = _NAMED.get((n, htuple), "other")
    return GroupType(name, n, abelian, htuple)


def subgroup(G, generators, cap=1024):
    H = closure(generators, cap)
    for h in H.elements:
        if h not in G:
            raise SymmetryError("subgroup element outside the group")
    return H


def is_normal(H, G):
    for h in H.elements:
        if h not in G:
            raise SymmetryError("H is not contained in G")
    for g in G.generators:
        gi = g.inverse()
        for h in H.generators:
            if g.compose(h).compose(gi) not in H:
                return False
    return True


# --- actions ---------------------------------------------------------------

def segre_collineation(g):
    """The 4x4 space collineation of a BiMoebius element.

    Coordinates follow x : y : z : w = x2 y1 : x1 y1 : x1 y2 : x2 y2, the
    parametrisation of the quadric xz = yw by its two rulings.
    """
    field = g.field
    # point (x1,x2),(y1,y2) -> Segre coordinates; compute images of the basis
    pairs = [(1, 0), (0, 0), (0, 1), (1, 1)]  # (x-index, y-index) per coordinate
    A, B = g.A, g.B
    cols = []
    for (xi, yi) in pairs:
        # basis point e_x[xi] (x) e_y[yi]
        ex = [field.zero, field.zero]
        ey = [field.zero, field.zero]
        ex[xi] = field.one
        ey[yi] = field.one
        if not g.swap:
            nx, ny = mat_vec(A, ex), mat_vec(B, ey)
        else:
            nx, ny = mat_vec(A, ey), mat_vec(B, ex)
        cols.append([nx[a] * ny[b] for (a, b) in pairs])
    M = tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))
    return ProjMap(M)


def _as_projmap(g):
    if isinstance(g, ProjMap):
        return g
    if isinstance(g, BiMoebius):
        return segre_collineation(g)
    raise SymmetryError("block actions need collineations")


def action_on_blocks(G, blocks):
    """Permutation action of G on a G-invariant list of projective subspaces.

    ``blocks`` is a list of spanning sets (lists of coordinate vectors).
    Returns (permutations per element, image order, kernel order).
    """
    keys = [subspace_key([tuple(v) for v in b]) for b in blocks]
    lookup = {k: i for i, k in enumerate(keys)}
    if len(lookup) != len(keys):
        raise SymmetryError("duplicate blocks")

    def perm_of(g):
        M = _as_projmap(g).matrix
        out = []
        for b in blocks:
            k = subspace_key([mat_vec(M, tuple(v)) for v in b])
            j = lookup.get(k)
            if j is None:
                return None
            out.append(j)
        return tuple(out)

    for g in G.generators:
        if perm_of(g) is None:
            raise BlockInvarianceError(f"generator {g!r} does not permute the blocks")
    perms = [perm_of(g) for g in G.elements]
    ident = tuple(range(len(blocks)))
    kernel_order = sum(1 for p in perms if p == ident)
    image_order = len(set(perms))
    assert image_order * kernel_order == G.order
    return perms, image_order, kernel_order


def perm_compose(p, q):
    """p after q, permutations as tuples of images."""
    return tuple(p[i] for i in q)


def perm_closure(generators, k=None):
    gens = [tuple(g) for g in generators]
    if not gens:
        return 1
    k = k or len(gens[0])
    if k > 12:
        raise SymmetryError("permutation closure limited to 12 letters")
    ident = tuple(range(k))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = perm_compose(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def perm_from_cycles(cycles, k):
    """Permutation on 0..k-1 from 1-based cycle notation like [(1, 2, 3)]."""
    img = list(range(k))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)
