"""Exact arithmetic in cyclotomic fields and polynomial algebra over them.

Field elements are kept in the power basis 1, z, ..., z^(phi(N)-1) modulo the
N-th cyclotomic polynomial.  The heavy lifting for coefficient arithmetic is
done by FLINT's rational polynomials; everything above that (multivariate
forms, binary-form gcd, Sylvester resultants) lives here.
"""

from __future__ import annotations

import ast
import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd

import flint


class AlgebraError(Exception):
    """Base class for errors raised by the exact algebra layer."""


class UnsupportedRootError(AlgebraError):
    pass


class ShapeError(AlgebraError):
    pass


class UnsupportedDegreeError(AlgebraError):
    pass


class ResultantError(AlgebraError):
    pass


def euler_phi(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_coeffs(k):
    """Integer coefficients (constant term first) of the k-th cyclotomic polynomial.

    Computed by dividing t^k - 1 by the cyclotomic polynomials of the proper
    divisors of k, so no external table is involved.
    """
    if k < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            num = _exact_int_div(num, list(cyclotomic_coeffs(d)))
    return tuple(num)


def _exact_int_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q, r = divmod(c, lead)
        if r:
            raise AlgebraError("inexact integer polynomial division")
        out[i] = q
        for j, dj in enumerate(den):
            num[i + j] -= q * dj
    if any(num[: len(den) - 1]):
        raise AlgebraError("inexact integer polynomial division")
    return out


def cyclotomic_polynomial(k, var="t"):
    """The k-th cyclotomic polynomial as a univariate :class:`Poly`."""
    coeffs = cyclotomic_coeffs(k)
    field = QQ_FIELD
    return Poly.from_dict((var,), {(e,): field(c) for e, c in enumerate(coeffs) if c})


class CyclotomicField:
    """The field Q(zeta_N) for a fixed session index N."""

    def __init__(self, index=120):
        if index < 1:
            raise ValueError("field index must be positive")
        self.index = index
        self.degree = euler_phi(index)
        self.modulus = flint.fmpq_poly(list(cyclotomic_coeffs(index)))
        self._powers = {}
        self.zero = CycNum(self, flint.fmpq_poly([]))
        self.one = CycNum(self, flint.fmpq_poly([1]))

    def __repr__(self):
        return f"CyclotomicField({self.index})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.index == self.index

    def __hash__(self):
        return hash(("CyclotomicField", self.index))

    def __call__(self, value):
        if isinstance(value, CycNum):
            if value.field.index != self.index:
                raise ShapeError(f"element of Q(zeta_{value.field.index}) used in Q(zeta_{self.index})")
            return value
        if isinstance(value, (int, Fraction)):
            value = Fraction(value)
            return CycNum(self, flint.fmpq_poly([flint.fmpq(value.numerator, value.denominator)]))
        if isinstance(value, flint.fmpq):
            return CycNum(self, flint.fmpq_poly([value]))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def zeta_power(self, e):
        e %= self.index
        p = self._powers.get(e)
        if p is None:
            p = CycNum(self, flint.fmpq_poly([0] * e + [1]) % self.modulus)
            self._powers[e] = p
        return p

    def root(self, k, j=1):
        """zeta_k^j embedded in this field; k must divide the session index."""
        if k < 1 or self.index % k:
            raise UnsupportedRootError(f"zeta_{k} is not in Q(zeta_{self.index})")
        return self.zeta_power(j * (self.index // k))

    def from_triples(self, triples):
        """Build sum (num/den) * zeta_N^power from [power, num, den] triples."""
        acc = self.zero
        for power, num, den in triples:
            acc = acc + self.zeta_power(power) * Fraction(num, den)
        return acc

    def roots_of_unity(self):
        return [self.zeta_power(e) for e in range(self.index)]

    def log_root(self, x):
        """Return e with x == zeta_N^e, or None if x is not an N-th root of unity."""
        table = self.__dict__.get("_log_table")
        if table is None:
            table = {self.zeta_power(e).key: e for e in range(self.index)}
            self._log_table = table
        return table.get(x.key)


class CycNum:
    __slots__ = ("field", "poly", "_key")

    def __init__(self, field, poly):
        self.field = field
        self.poly = poly
        self._key = None

    @property
    def key(self):
        if self._key is None:
            self._key = tuple(self.poly.coeffs())
        return self._key

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.field.index != self.field.index:
                raise ShapeError("mixed cyclotomic fields")
            return other
        return self.field(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycNum(self.field, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.field, -self.poly)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycNum(self.field, self.poly - other.poly)

    def __rsub__(self, other):
        return self.field(other) - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            return NotImplemented
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.poly, other.poly
        if a.degree() <= 0 or b.degree() <= 0:
            return CycNum(self.field, a * b)
        return CycNum(self.field, (a * b) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.poly.degree() == 0:
            return CycNum(self.field, flint.fmpq_poly([1 / self.poly.coeffs()[0]]))
        g, s, _ = self.poly.xgcd(self.field.modulus)
        # g is the monic gcd, a nonzero constant since the modulus is irreducible
        return CycNum(self.field, (s / g.coeffs()[0]) % self.field.modulus)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.field.index == other.field.index and self.poly == other.poly
        if isinstance(other, (int, Fraction)):
            return self.poly == self.field(other).poly
        return NotImplemented

    def __hash__(self):
        return hash(self.key)

    def is_zero(self):
        return self.poly.is_zero()

    def __bool__(self):
        return not self.poly.is_zero()

    def is_rational(self):
        return self.poly.degree() <= 0

    def to_fraction(self):
        if not self.is_rational():
            raise AlgebraError(f"{self} is not rational")
        if self.is_zero():
            return Fraction(0)
        c = self.poly.coeffs()[0]
        return Fraction(int(c.p), int(c.q))

    def coords(self):
        """Power-basis coordinates as Fractions, length phi(N)."""
        cs = [Fraction(int(c.p), int(c.q)) for c in self.poly.coeffs()]
        return cs + [Fraction(0)] * (self.field.degree - len(cs))

    def to_triples(self):
        return [[e, c.numerator, c.denominator] for e, c in enumerate(self.coords()) if c]

    def conjugate_power(self, k):
        """Image under the Galois automorphism zeta -> zeta^k (gcd(k, N) = 1)."""
        if igcd(k, self.field.index) != 1:
            raise AlgebraError("Galois exponent must be a unit mod N")
        acc = self.field.zero
        for e, c in enumerate(self.coords()):
            if c:
                acc = acc + self.field.zeta_power(e * k) * c
        return acc

    def __repr__(self):
        if self.is_rational():
            return str(self.to_fraction())
        terms = []
        for e, c in enumerate(self.coords()):
            if not c:
                continue
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if not mono:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return "(" + text + ")"


QQ_FIELD = CyclotomicField(1)


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Sparse multivariate polynomial with cyclotomic coefficients.

    ``vars`` is an ordered tuple of names and ``weights`` their integer
    weights (1 unless stated).  Negative exponents are tolerated so that
    moduli such as ``1/a`` can appear in parametrised catalog data.
    """

    __slots__ = ("vars", "weights", "terms", "field")

    def __init__(self, vars, terms, field, weights=None):
        self.vars = tuple(vars)
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.vars)
        self.terms = terms
        self.field = field

    # construction -----------------------------------------------------
    @classmethod
    def from_dict(cls, vars, terms, field=None, weights=None):
        if field is None:
            field = next(iter(terms.values())).field if terms else QQ_FIELD
        clean = {}
        for e, c in terms.items():
            c = field(c)
            if not c.is_zero():
                clean[tuple(e)] = c
        return cls(vars, clean, field, weights)

    @classmethod
    def constant(cls, vars, c, field, weights=None):
        return cls.from_dict(vars, {(0,) * len(vars): field(c)}, field, weights)

    @classmethod
    def variable(cls, vars, name, field, weights=None):
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {e: field.one}, field, weights)

    def _like(self, terms):
        return Poly(self.vars, terms, self.field, self.weights)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ShapeError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return Poly.constant(self.vars, other, self.field, self.weights)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            if c.is_zero():
                return self._like({})
            return self._like({e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _mono_mul(e1, e2)
                p = c1 * c2
                s = terms.get(e)
                terms[e] = p if s is None else s + p
        return self._like({e: c for e, c in terms.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a scalar or by a single-term polynomial."""
        if isinstance(other, Poly):
            if len(other.terms) != 1:
                raise AlgebraError("division only by monomials")
            (e2, c2), = other.terms.items()
            inv = c2.inverse()
            return self._like({tuple(a - b for a, b in zip(e, e2)): c * inv for e, c in self.terms.items()})
        return self * self.field(other).inverse()

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) != 1:
                raise AlgebraError("negative powers only of monomials")
            (e, c), = self.terms.items()
            return self._like({tuple(-n * x for x in e): c.inverse() ** (-n)})
        result = Poly.constant(self.vars, 1, self.field, self.weights)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ShapeError):
            return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset((e, c.key) for e, c in self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # structure --------------------------------------------------------
    def index(self, var):
        try:
            return self.vars.index(var)
        except ValueError:
            raise ShapeError(f"unknown variable {var!r} in {self.vars}") from None

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        k = self.index(var)
        return max(e[k] for e in self.terms)

    def degree_in(self, vars):
        ks = [self.index(v) for v in vars]
        return max((sum(e[k] for k in ks) for e in self.terms), default=-1)

    def weighted_degree(self):
        return max((sum(w * x for w, x in zip(self.weights, e)) for e in self.terms), default=-1)

    def is_homogeneous(self, vars=None, weighted=True):
        if not self.terms:
            return True
        if vars is None:
            ks, ws = range(len(self.vars)), self.weights if weighted else (1,) * len(self.vars)
        else:
            ks = [self.index(v) for v in vars]
            ws = [self.weights[k] if weighted else 1 for k in range(len(self.vars))]
        degs = {sum(ws[k] * e[k] for k in ks) for e in self.terms}
        return len(degs) == 1

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def derivative(self, var):
        k = self.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                terms[tuple(ne)] = c * e[k]
        return self._like(terms)

    def coeffs_in(self, var):
        """Split as sum var^k * P_k, returning {k: P_k} with P_k in the other variables."""
        k = self.index(var)
        rest = tuple(v for v in self.vars if v != var)
        rw = tuple(w for v, w in zip(self.vars, self.weights) if v != var)
        out = {}
        for e, c in self.terms.items():
            ne = e[:k] + e[k + 1:]
            out.setdefault(e[k], {})[ne] = c
        return {d: Poly(rest, t, self.field, rw) for d, t in out.items()}

    def with_vars(self, vars, weights=None):
        """Re-embed into a superset (or reordering) of the current variables."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        for v, e in zip(self.vars, zip(*self.terms.keys()) if self.terms else []):
            if v not in vars and any(e):
                raise ShapeError(f"variable {v} still present")
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for k, x in zip(pos, e):
                ne[k] = x
            terms[tuple(ne)] = c
        if weights is None:
            wmap = dict(zip(self.vars, self.weights))
            weights = tuple(wmap.get(v, 1) for v in vars)
        return Poly(vars, terms, self.field, weights)

    def drop_vars(self, drop):
        """Remove variables that do not occur."""
        keep = [k for k, v in enumerate(self.vars) if v not in drop]
        for e in self.terms:
            if any(e[k] for k in range(len(self.vars)) if k not in keep):
                raise ShapeError("cannot drop a variable that occurs")
        return Poly(tuple(self.vars[k] for k in keep),
                    {tuple(e[k] for k in keep): c for e, c in self.terms.items()},
                    self.field, tuple(self.weights[k] for k in keep))

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        terms = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                terms[e] = v
        return Poly(self.vars, terms, field, self.weights)

    # evaluation and substitution ---------------------------------------
    def evaluate(self, point):
        """Evaluate at a full point (sequence aligned with vars, or a dict)."""
        if isinstance(point, dict):
            point = [point[v] for v in self.vars]
        point = [self.field(p) for p in point]
        powers = [dict() for _ in point]
        acc = self.field.zero
        for e, c in self.terms.items():
            t = c
            for k, x in enumerate(e):
                if x:
                    pk = powers[k].get(x)
                    if pk is None:
                        pk = point[k] ** x
                        powers[k][x] = pk
                    t = t * pk
            acc = acc + t
        return acc

    def subs(self, values):
        """Substitute scalars for some variables; those variables are removed."""
        ks = [k for k, v in enumerate(self.vars) if v in values]
        keep = [k for k in range(len(self.vars)) if k not in ks]
        vals = {k: self.field(values[self.vars[k]]) for k in ks}
        terms = {}
        for e, c in self.terms.items():
            t = c
            for k in ks:
                if e[k]:
                    t = t * vals[k] ** e[k]
            if t.is_zero():
                continue
            ne = tuple(e[k] for k in keep)
            s = terms.get(ne)
            terms[ne] = t if s is None else s + t
        return Poly(tuple(self.vars[k] for k in keep),
                    {e: c for e, c in terms.items() if not c.is_zero()},
                    self.field, tuple(self.weights[k] for k in keep))

    def compose(self, images, new_vars, new_weights=None):
        """Substitute var -> images[var] (a Poly in ``new_vars``) for every variable."""
        new_vars = tuple(new_vars)
        one = Poly.constant(new_vars, 1, self.field, new_weights)
        imgs = []
        for v in self.vars:
            im = images[v]
            if not isinstance(im, Poly):
                im = Poly.constant(new_vars, im, self.field, new_weights)
            if im.vars != new_vars:
                im = im.with_vars(new_vars, new_weights)
            imgs.append(im)
        cache = [dict() for _ in imgs]

        def power(k, n):
            p = cache[k].get(n)
            if p is None:
                if n == 0:
                    p = one
                elif n < 0:
                    p = imgs[k] ** n
                else:
                    p = power(k, n - 1) * imgs[k]
                cache[k][n] = p
            return p

        acc = Poly(new_vars, {}, self.field, one.weights)
        for e, c in self.terms.items():
            t = one * c
            for k, x in enumerate(e):
                if x:
                    t = t * power(k, x)
            acc = acc + t
        return acc

    def linear_form(self, coeffs):
        """Linear form sum coeffs[k] * vars[k] in this polynomial's variables."""
        terms = {}
        for k, c in enumerate(coeffs):
            c = self.field(c)
            if not c.is_zero():
                e = [0] * len(self.vars)
                e[k] = 1
                terms[tuple(e)] = c
        return self._like(terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(v if x == 1 else f"{v}^{x}" for v, x in zip(self.vars, e) if x)
            if not mono:
                parts.append(repr(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c!r}*{mono}")
        return " + ".join(parts)


def substitute_linear(f, maps):
    """Pull back ``f`` along block-wise linear substitutions.

    ``maps`` sends a tuple of variable names to a square matrix M, meaning
    v_i -> sum_j M[i][j] v_j inside the block.  Weight-2 (or higher) variables
    may only carry 1x1 scalar blocks.  Unmentioned variables are left alone.
    """
    images = {v: Poly.variable(f.vars, v, f.field, f.weights) for v in f.vars}
    wmap = dict(zip(f.vars, f.weights))
    for block, mat in maps.items():
        block = tuple(block)
        if len(mat) != len(block) or any(len(row) != len(block) for row in mat):
            raise ShapeError(f"substitution for {block} is not {len(block)}x{len(block)}")
        if len({wmap.get(v, 1) for v in block}) > 1:
            raise ShapeError("a block must contain variables of equal weight")
        if len(block) > 1 and any(wmap.get(v, 1) != 1 for v in block):
            raise ShapeError("weighted variables receive scalar action only")
        for i, v in enumerate(block):
            if v not in images:
                raise ShapeError(f"unknown variable {v}")
            acc = Poly(f.vars, {}, f.field, f.weights)
            for j, w in enumerate(block):
                c = f.field(mat[i][j])
                if not c.is_zero():
                    acc = acc + Poly.variable(f.vars, w, f.field, f.weights) * c
            images[v] = acc
    return f.compose(images, f.vars, f.weights)


# --- univariate helpers (dense coefficient lists, constant term first) ------

def _utrim(p):
    while p and p[-1].is_zero():
        p.pop()
    return p


def _udivmod(a, b):
    a, b = _utrim(list(a)), _utrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = b[-1].inverse()
    q = [None] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        q[i] = c
        if not c.is_zero():
            for j, bj in enumerate(b):
                a[i + j] = a[i + j] - c * bj
    r = _utrim(a[: len(b) - 1])
    return q, r


def _umonic(p):
    p = _utrim(list(p))
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _ugcd(a, b):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    return _umonic(a)


def _uderiv(p):
    return [p[k] * k for k in range(1, len(p))]


# --- binary forms ----------------------------------------------------------

def _binary_vars(f):
    if len(f.vars) != 2:
        raise ShapeError(f"binary form expected, got variables {f.vars}")
    if not f.is_homogeneous(weighted=False):
        raise ShapeError("binary form must be homogeneous")
    return f.vars


def _split_binary(f):
    """f = y^a * F(x, y) with y not dividing F; return (a, [coeffs of F(x,1)])."""
    d = f.degree()
    a = min(e[1] for e in f.terms)
    coeffs = [f.field.zero] * (d - a + 1)
    for (ex, ey), c in f.terms.items():
        coeffs[ex] = c
    return a, coeffs


def _join_binary(vars, field, a, coeffs):
    coeffs = _utrim(list(coeffs))
    n = len(coeffs) - 1
    return Poly(vars, {(k, n - k + a): c for k, c in enumerate(coeffs) if not c.is_zero()}, field)


def normalize_binary(f):
    """Scale so the first nonzero coefficient in descending x-power order is 1."""
    if f.is_zero():
        return f
    lead = max(f.terms)
    return f * f.terms[lead].inverse()


def gcd_binary(f, g):
    """Monic greatest common divisor of two binary forms."""
    if f.is_zero() and g.is_zero():
        raise AlgebraError("gcd of two zero forms")
    if f.is_zero():
        return normalize_binary(g)
    if g.is_zero():
        return normalize_binary(f)
    vars = _binary_vars(f)
    if g.vars != vars:
        raise ShapeError("binary forms in different variables")
    _binary_vars(g)
    a1, u1 = _split_binary(f)
    a2, u2 = _split_binary(g)
    return normalize_binary(_join_binary(vars, f.field, min(a1, a2), _ugcd(u1, u2)))


def divide_binary(f, g):
    """Exact quotient f / g of binary forms."""
    vars = _binary_vars(f)
    a1, u1 = _split_binary(f)
    a2, u2 = _split_binary(g)
    if a2 > a1:
        raise AlgebraError("inexact binary form division")
    q, r = _udivmod(u1, u2)
    if r:
        raise AlgebraError("inexact binary form division")
    return _join_binary(vars, f.field, a1 - a2, q)


def squarefree_part(f):
    x, y = _binary_vars(f)
    return normalize_binary(divide_binary(f, gcd_binary(f.derivative(x), f.derivative(y)))) \
        if f.degree() > 0 else normalize_binary(f)


def distinct_root_count(f):
    """Number of distinct projective roots of a nonzero binary form."""
    if f.is_zero():
        raise AlgebraError("the zero form has every point as a root")
    x, y = _binary_vars(f)
    if f.degree() == 0:
        return 0
    g = gcd_binary(f.derivative(x), f.derivative(y))
    return f.degree() - g.degree()


# --- determinants, resultants, discriminants ----------------------------------

def det(matrix):
    """Determinant of a square matrix of CycNum (Gauss) or Poly (division-free)."""
    n = len(matrix)
    if n == 0:
        raise ShapeError("empty matrix")
    if any(len(row) != n for row in matrix):
        raise ShapeError("determinant of a non-square matrix")
    if any(isinstance(c, Poly) for row in matrix for c in row):
        return _det_laplace(matrix)
    return _det_gauss(matrix)


def _det_gauss(matrix):
    m = [list(row) for row in matrix]
    n = len(m)
    field = next(c.field for row in m for c in row if isinstance(c, CycNum))
    m = [[field(c) for c in row] for row in m]
    sign, acc = 1, field.one
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return field.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        acc = acc * p
        inv = p.inverse()
        for r in range(col + 1, n):
            if not m[r][col].is_zero():
                factor = m[r][col] * inv
                m[r] = [a - factor * b if k >= col else a for k, (a, b) in enumerate(zip(m[r], m[col]))]
    return acc if sign > 0 else -acc


def _det_laplace(matrix):
    n = len(matrix)
    proto = next(c for row in matrix for c in row if isinstance(c, Poly))
    zero = Poly(proto.vars, {}, proto.field, proto.weights)
    rows = [[c if isinstance(c, Poly) else Poly.constant(proto.vars, c, proto.field, proto.weights)
             for c in row] for row in matrix]
    memo = {}

    def minor(r, cols):
        # determinant of rows r..n-1 restricted to the sorted column tuple
        if r == n:
            return Poly.constant(proto.vars, 1, proto.field, proto.weights)
        hit = memo.get((r, cols))
        if hit is not None:
            return hit
        acc = zero
        for k, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            sub = minor(r + 1, cols[:k] + cols[k + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            acc = acc + term if k % 2 == 0 else acc - term
        memo[(r, cols)] = acc
        return acc

    return minor(0, tuple(range(n)))


def sylvester_matrix(p, q):
    """Sylvester matrix of two coefficient lists given highest degree first."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    zero = 0
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(p) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(q) + [zero] * (size - n - 1 - i))
    return rows


def _coeff_list(f, var, degree):
    parts = f.coeffs_in(var)
    rest = tuple(v for v in f.vars if v != var)
    rw = tuple(w for v, w in zip(f.vars, f.weights) if v != var)
    zero = Poly(rest, {}, f.field, rw)
    return [parts.get(k, zero) for k in range(degree, -1, -1)]


def resultant(f, g, var, degrees=None):
    """Sylvester resultant of f and g with respect to ``var``.

    For forms homogeneous in an eliminated pair, pass the formal degrees via
    ``degrees``; by default the actual degrees in ``var`` are used.  Returns a
    Poly in the remaining variables.
    """
    if f.is_zero() or g.is_zero():
        raise ResultantError("resultant with a zero polynomial is undefined")
    if f.vars != g.vars:
        raise ShapeError("resultant of polynomials in different variables")
    m, n = degrees if degrees is not None else (f.degree(var), g.degree(var))
    if m == 0 and n == 0:
        return Poly.constant(tuple(v for v in f.vars if v != var), 1, f.field)
    p = _coeff_list(f, var, m)
    q = _coeff_list(g, var, n)
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    rest = p[0]
    mat = sylvester_matrix(p, q)
    zero = Poly(rest.vars, {}, f.field, rest.weights)
    mat = [[zero if (isinstance(c, int) and c == 0) else c for c in row] for row in mat]
    if not rest.vars:
        scal = [[c.coeff(()) for c in row] for row in mat]
        return Poly.constant((), _det_gauss(scal), f.field)
    return _det_laplace(mat)


def resultant_binary_pair(f, g, pair):
    """Resultant eliminating a homogeneous variable pair (u, v) from f and g.

    f and g must be homogeneous in ``pair``; the result is a Poly in the
    remaining variables.
    """
    u, v = pair
    df, dg = f.degree_in(pair), g.degree_in(pair)
    if not (f.is_homogeneous(pair, weighted=False) and g.is_homogeneous(pair, weighted=False)):
        raise ShapeError("forms must be homogeneous in the eliminated pair")
    fd = f.subs({v: 1})
    gd = g.subs({v: 1})
    return resultant(fd, gd, u, degrees=(df, dg))


def discriminant(f, var):
    """Discriminant of f in ``var`` (degree 2 or 3).

    Degree 2 gives b^2 - 4ac.  Degree 3 gives the negative of the classical
    discriminant, so that w^3 + p w + q maps to 4 p^3 + 27 q^2.
    """
    d = f.degree(var)
    parts = f.coeffs_in(var)
    rest = tuple(v for v in f.vars if v != var)
    rw = tuple(w for v, w in zip(f.vars, f.weights) if v != var)
    zero = Poly(rest, {}, f.field, rw)
    c = [parts.get(k, zero) for k in range(d + 1)]
    if d == 2:
        a, b, cc = c[2], c[1], c[0]
        return b * b - a * cc * 4
    if d == 3:
        a, b, cc, dd = c[3], c[2], c[1], c[0]
        classical = (b * b * cc * cc - a * cc ** 3 * 4 - b ** 3 * dd * 4
                     - a * a * dd * dd * 27 + a * b * cc * dd * 18)
        return -classical
    raise UnsupportedDegreeError(f"discriminant of degree {d} not supported")


# --- convenience surface -------------------------------------------------

DEFAULT_FIELD = CyclotomicField(120)


def make_root(k, j=1, field=None):
    return (field or DEFAULT_FIELD).root(k, j)


def field_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def named_constants(field):
    """Named algebraic constants available to the expression parser."""
    out = {}

    def put(name, k, build):
        if field.index % k == 0:
            out[name] = build()

    put("i", 4, lambda: field.root(4))
    put("j", 3, lambda: field.root(3))
    put("eps", 5, lambda: field.root(5))
    put("z8", 8, lambda: field.root(8))
    put("sqrt2", 8, lambda: field.root(8) + field.root(8, 7))
    put("sqrt3", 12, lambda: field.root(12) + field.root(12, 11))
    put("sqrt5", 5, lambda: field.root(5) - field.root(5, 2) - field.root(5, 3) + field.root(5, 4))
    return out


def _rational_root(q, m):
    """Rational m-th root of the Fraction q, or None."""
    if q < 0 and m % 2 == 0:
        return None
    out = []
    for n in (abs(q.numerator), q.denominator):
        t = round(n ** (1 / m))
        t = next((s for s in (t - 1, t, t + 1) if s >= 0 and s ** m == n), None)
        if t is None:
            return None
        out.append(t)
    return Fraction(out[0] if q >= 0 else -out[0], out[1])


def nth_root(c, m):
    """Some x in the field with x^m == c, or None.

    The search covers x = u * q * s with u a root of unity, q rational and s
    a product of the square roots of 2, 3 and 5 available in the field.  This
    is the shape every scalar met by the catalog groups takes.
    """
    field = c.field
    if c.is_zero():
        return field.zero
    consts = named_constants(field)
    surds = [field.one]
    for name in ("sqrt2", "sqrt3", "sqrt5"):
        if name in consts:
            surds = surds + [s * consts[name] for s in surds]
    for s in surds:
        base = c / s ** m
        for e in range(field.index):
            t = base * field.zeta_power(-e)
            if t.is_rational():
                q = _rational_root(t.to_fraction(), m)
                if q is None:
                    continue
                # t = q^m and zeta^e must be an m-th power of a root of unity
                for k in range(field.index):
                    if (k * m - e) % field.index == 0:
                        return field.zeta_power(k) * q * s
    return None


def parse_poly(text, vars, field=None, weights=None, constants=None):
    """Parse an arithmetic expression into a :class:`Poly`.

    Supports + - * / ^ (or **), integer literals, the variables in ``vars``
    and named constants (i, j, eps, z8, sqrt2, sqrt3, sqrt5, zeta<K>_<e>).
    Division is allowed by scalars and monomials only.
    """
    field = field or DEFAULT_FIELD
    vars = tuple(vars)
    names = named_constants(field)
    if constants:
        names.update({k: field(v) for k, v in constants.items()})
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def lookup(name):
        if name in vars:
            return Poly.variable(vars, name, field, weights)
        if name in names:
            return Poly.constant(vars, names[name], field, weights)
        if name.startswith("zeta") and "_" in name:
            k, e = name[4:].split("_")
            return Poly.constant(vars, field.root(int(k), int(e)), field, weights)
        raise AlgebraError(f"unknown name {name!r} in {text!r}")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Poly.constant(vars, node.value, field, weights)
        if isinstance(node, ast.Name):
            return lookup(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                neg = False
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    exp, neg = exp.operand, True
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise AlgebraError("exponents must be integer literals")
                return walk(node.left) ** (-exp.value if neg else exp.value)
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.degree() == 0 and len(right.terms) == 1 and not any(next(iter(right.terms))):
                    return left * right.coeff((0,) * len(vars)).inverse()
                return left / right
        raise AlgebraError(f"unsupported syntax in {text!r}")

    return walk(tree)


def parse_scalar(text, field=None, constants=None):
    p = parse_poly(text, (), field, constants=constants)
    return p.coeff(())


def interpolate(xs, ys):
    """Coefficients (constant first) of the polynomial through (xs[k], ys[k])."""
    n = len(xs)
    field = xs[0].field
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [field.zero] * n
    for k in range(n - 1, -1, -1):
        # out = out * (t - xs[k]) + coef[k]
        nxt = [field.zero] * n
        for d in range(n - 1):
            if not out[d].is_zero():
                nxt[d + 1] = nxt[d + 1] + out[d]
                nxt[d] = nxt[d] - out[d] * xs[k]
        nxt[0] = nxt[0] + coef[k]
        out = nxt
    return _utrim(out)


def resultant_by_evaluation(f, g, var, param, degrees, bound):
    """Res_var(f, g) for bivariate f, g in (param, var), as a univariate list in param.

    ``degrees`` are the formal degrees in ``var`` and ``bound`` an upper bound
    for the degree of the result in ``param``.  Computed by evaluating the
    parameter at bound + 1 integers and interpolating.
    """
    if set(f.vars) != {var, param} or f.vars != g.vars:
        raise ShapeError("bivariate inputs in (param, var) expected")
    field = f.field
    xs, ys = [], []
    t = 0
    while len(xs) < bound + 1:
        t += 1
        pt = field(t if t % 2 else -t)
        fp = f.subs({param: pt})
        gp = g.subs({param: pt})
        p = _coeff_list(fp, var, degrees[0])
        q = _coeff_list(gp, var, degrees[1])
        mat = sylvester_matrix([c.coeff(()) for c in p], [c.coeff(()) for c in q])
        mat = [[field.zero if (isinstance(c, int) and c == 0) else c for c in row] for row in mat]
        xs.append(pt)
        ys.append(_det_gauss(mat))
    return interpolate(xs, ys)
