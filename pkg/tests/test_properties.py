"""Seeded randomized property suites (at least 100 cases each)."""

from fractions import Fraction
from functools import lru_cache

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from curvesym import ffprobe as ff
from curvesym.algebra import DEFAULT_FIELD, Poly, divide_binary, gcd_binary, resultant_binary_pair
from curvesym.ramify import fixed_points
from curvesym.symmetry import closure, order_histogram

from conftest import group, instance

K = DEFAULT_FIELD
CASES = 120
PROPS = settings(max_examples=CASES, deadline=None, derandomize=True,
                 suppress_health_check=[HealthCheck.too_slow])

small = st.fractions(min_value=-9, max_value=9, max_denominator=5)
field_elements = st.dictionaries(st.integers(0, 119), small, max_size=4).map(
    lambda d: sum((K.zeta_power(e) * c for e, c in d.items()), K.zero))
nonzero = field_elements.filter(lambda a: not a.is_zero())


# --- field axioms ---------------------------------------------------------------

@PROPS
@given(field_elements, field_elements, field_elements)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == K.zero and a + K.zero == a and a * K.one == a


@PROPS
@given(nonzero, field_elements)
def test_division(a, b):
    assert a * a.inverse() == K.one
    assert (b / a) * a == b


# --- gcd and resultant contracts --------------------------------------------------

VARS = ("x", "y")
linear = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(lambda t: t != (0, 0))


def form(factors):
    out = Poly.constant(VARS, 1, K)
    for a, b in factors:
        out = out * Poly.from_dict(VARS, {(1, 0): a, (0, 1): b}, K)
    return out


forms = st.lists(linear, min_size=1, max_size=4).map(form)


@PROPS
@given(forms, forms, forms)
def test_gcd_contract(f, g, h):
    d = gcd_binary(f * h, g * h)
    divide_binary(f * h, d)
    divide_binary(g * h, d)
    divide_binary(d, gcd_binary(h, h))
    assert d.degree() >= h.degree()
    assert gcd_binary(f, g) == gcd_binary(g, f)


def res(f, g):
    return resultant_binary_pair(f, g, VARS).coeff(())


@PROPS
@given(forms, forms, forms)
def test_resultant_contract(f, g, h):
    r = res(f, g)
    assert r.is_zero() == (gcd_binary(f, g).degree() > 0)
    sign = -1 if (f.degree() * g.degree()) % 2 else 1
    assert res(g, f) == r * sign
    assert res(f * h, g) == r * res(h, g)


# --- closure determinism ----------------------------------------------------------

CLOSURE_ENTRIES = ["p4q-10", "p4q-12", "p4q-13", "p4q-14", "p4c-21", "p4c-20", "p6-3"]


@lru_cache(maxsize=None)
def gens_of(entry_id):
    return tuple(instance(entry_id).group_elements())


@PROPS
@given(st.sampled_from(CLOSURE_ENTRIES), st.randoms(use_true_random=False), st.integers(0, 2))
def test_closure_independent_of_generator_order(entry_id, rnd, extra):
    gens = list(gens_of(entry_id))
    shuffled = gens[:]
    rnd.shuffle(shuffled)
    shuffled += [rnd.choice(gens) for _ in range(extra)]
    G, H = group(entry_id), closure(shuffled)
    assert H.order == G.order
    assert set(H.index) == set(G.index)
    assert order_histogram(H) == order_histogram(G)
    again = closure(shuffled)
    assert [g.key for g in again] == [g.key for g in H]


# --- conjugation invariance of fixed-point counts ------------------------------------

CONJ_ENTRIES = ["p4c-21", "p4q-10", "p4c-20", "p4q-13", "p4c-17", "p4q-15-bring"]


@lru_cache(maxsize=None)
def exact_count(entry_id, key):
    G = group(entry_id)
    fs = fixed_points(instance(entry_id).model, G.elements[G.index[key]])
    return "all" if fs.pointwise else fs.isolated_count


@lru_cache(maxsize=None)
def reduced_curve(entry_id, q):
    spec = next(s for s in ff.default_primes() if s.q == q)
    return ff.reduce_curve(instance(entry_id).model, spec), spec


@PROPS
@given(st.sampled_from(CONJ_ENTRIES), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6),
       st.sampled_from([241, 601]))
def test_fixed_counts_are_class_functions(entry_id, i, j, q):
    G = group(entry_id)
    g = G.elements[i % G.order]
    h = G.elements[j % G.order]
    c = h.compose(g).compose(h.inverse())
    assert exact_count(entry_id, g.key) == exact_count(entry_id, c.key)
    curve, spec = reduced_curve(entry_id, q)
    assert ff.fixed_count_ff(curve, ff.reduce_element(g, spec)) == \
        ff.fixed_count_ff(curve, ff.reduce_element(c, spec))


# --- Burnside and Lagrange divisibility -------------------------------------------------

@PROPS
@given(st.sampled_from(CONJ_ENTRIES), st.integers(0, 10 ** 6), st.sampled_from([241, 601]))
def test_burnside_on_rational_points(entry_id, i, q):
    G = group(entry_id)
    g = G.elements[i % G.order]
    H = closure([g])
    assert G.order % H.order == 0
    curve, spec = reduced_curve(entry_id, q)
    total = sum(ff.fixed_count_ff(curve, ff.reduce_element(h, spec)) for h in H)
    assert total % H.order == 0


@lru_cache(maxsize=None)
def class_sizes(entry_id):
    return {x.key: len(c) for c in group(entry_id).conjugacy_classes() for x in c}


@PROPS
@given(st.sampled_from(CLOSURE_ENTRIES + ["p5-192", "p4q-15-bring"]), st.integers(0, 10 ** 6))
def test_lagrange(entry_id, i):
    G = group(entry_id)
    g = G.elements[i % G.order]
    assert G.order % G.element_order(g) == 0
    assert G.order % class_sizes(entry_id)[g.key] == 0


# --- reduction functoriality -------------------------------------------------------------

@lru_cache(maxsize=None)
def prime_above(m):
    return ff.find_prime(120, m)


@PROPS
@given(st.sampled_from(CLOSURE_ENTRIES), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6),
       st.integers(2, 5000))
def test_reduction_respects_composition(entry_id, i, j, m):
    spec = prime_above(m)
    G = group(entry_id)
    g, h = G.elements[i % G.order], G.elements[j % G.order]
    assert ff.reduce_element(g.compose(h), spec) == ff.reduce_element(g, spec).compose(ff.reduce_element(h, spec))


@PROPS
@given(field_elements, field_elements, st.integers(2, 5000))
def test_scalar_reduction_is_a_ring_map(a, b, m):
    spec = prime_above(m)
    q = spec.q
    ra, rb = ff.reduce_scalar(a, spec), ff.reduce_scalar(b, spec)
    assert ff.reduce_scalar(a * b, spec) == ra * rb % q
    assert ff.reduce_scalar(a - b, spec) == (ra - rb) % q
    assert ff.reduce_scalar(Fraction(3, 7) * a, spec) == 3 * pow(7, -1, q) * ra % q
