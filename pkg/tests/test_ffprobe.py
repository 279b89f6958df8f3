from fractions import Fraction

import pytest

from curvesym import ffprobe as ff
from curvesym.algebra import DEFAULT_FIELD, make_root, parse_poly
from curvesym.curves import PlaneNodalModel, QuadricNetModel
from curvesym.symmetry import closure

from conftest import catalog, group, instance, net_involutions

K = DEFAULT_FIELD
PRIMES = ff.default_primes()

# frozen after a brute-force enumeration of the ambient space
BRING_MOD_11 = 24


def test_find_prime_examples():
    assert ff.find_prime(120).q == 241
    assert ff.find_prime(5).q == 11
    s = ff.find_prime(3)
    assert s.q == 7 and s.root_image == 2


def test_default_primes():
    assert [s.q for s in PRIMES] == [241, 601]


def test_prime_spec_validation():
    with pytest.raises(ValueError):
        ff.PrimeSpec(3, 7, 3, 1)
    with pytest.raises(ValueError):
        ff.PrimeSpec(120, 251, 6, 1)


def test_prime_search_cap():
    with pytest.raises(ff.PrimeSearchError):
        ff.find_prime(120, minimum=ff.PRIME_CAP - 100)


def test_reduce_scalars():
    s = PRIMES[0]
    assert ff.reduce_mod(K(-1), s) == s.q - 1
    assert ff.reduce_mod(Fraction(1, 2), s) == (s.q + 1) // 2
    assert ff.reduce_mod(make_root(120), s) == s.root_image
    assert ff.reduce_mod(make_root(3), ff.find_prime(3)) == 2


def test_reduction_is_a_ring_map():
    s = PRIMES[1]
    a = make_root(8) + 3 * make_root(5)
    b = make_root(12) - Fraction(2, 7)
    q = s.q
    assert ff.reduce_mod(a * b, s) == ff.reduce_mod(a, s) * ff.reduce_mod(b, s) % q
    assert ff.reduce_mod(a + b, s) == (ff.reduce_mod(a, s) + ff.reduce_mod(b, s)) % q


def test_bad_denominator():
    s = PRIMES[0]
    with pytest.raises(ff.ReductionError) as info:
        ff.reduce_mod(Fraction(1, 241), s)
    assert info.value.q == 241


def test_root_outside_subfield():
    with pytest.raises(ff.ReductionError):
        ff.reduce_mod(make_root(8), ff.find_prime(3))


def test_g192_reduces_to_three_quadrics():
    curve = ff.reduce_mod(catalog()["p5-192"].model, PRIMES[0])
    assert len(curve.forms) == 3
    assert all(f.total_degree() == 2 for f in curve.forms)
    assert curve.q == 241


def test_smooth_conic_count():
    conic = PlaneNodalModel(parse_poly("x^2 + y^2 + z^2", PlaneNodalModel.VARS, K))
    for s in PRIMES:
        assert ff.count_points(ff.reduce_curve(conic, s)) == s.q + 1


def test_bring_golden_count():
    curve = ff.reduce_curve(catalog()["p4-bring-pentahedral"].model, ff.find_prime(5))
    assert ff.count_points(curve) == BRING_MOD_11
    assert ff.count_points_naive(curve) == BRING_MOD_11


@pytest.mark.parametrize("entry_id", ["p4c-14", "p4q-12", "p5-hyper", "p6-3"])
def test_solver_matches_enumeration(entry_id):
    curve = ff.reduce_curve(instance(entry_id).model, PRIMES[0])
    assert ff.count_points(curve) == ff.count_points_naive(curve)


@pytest.mark.parametrize("entry_id", ["p4c-14", "p4q-15-bring", "p5-64", "p5-hyper"])
def test_weil_bound(entry_id):
    inst = instance(entry_id)
    for s in PRIMES:
        n1 = ff.count_points(ff.reduce_curve(inst.model, s))
        assert ff.weil_ok(n1, s.q, inst.genus)


def test_budget():
    curve = ff.reduce_curve(catalog()["p5-192"].model, PRIMES[0])
    with pytest.raises(ff.BudgetError):
        ff.count_points(curve, k=3)
    with pytest.raises(ff.BudgetError):
        ff.count_points(curve, k=1, budget=100)


@pytest.mark.parametrize("spec", PRIMES, ids=lambda s: str(s.q))
def test_alpha_table_stabilises_at_eight(spec):
    model, alpha, _ = net_involutions()
    table = ff.fixed_table(ff.reduce_curve(model, spec), ff.reduce_element(alpha, spec))
    assert len(table.counts) == 6
    assert table.geometric == 8
    assert table.stable == 8


@pytest.mark.parametrize("spec", PRIMES, ids=lambda s: str(s.q))
def test_beta_table_is_zero(spec):
    model, _, beta = net_involutions()
    table = ff.fixed_table(ff.reduce_curve(model, spec), ff.reduce_element(beta, spec))
    assert table.counts == (0,) * 6


def test_identity_fixes_all_points():
    inst = instance("p4c-14")
    s = PRIMES[0]
    curve = ff.reduce_curve(inst.model, s)
    ident = ff.reduce_element(inst.group_elements()[0].identity(), s)
    assert ff.fixed_count_ff(curve, ident) == ff.count_points(curve)


def test_closed_point_degrees():
    assert ff.closed_point_degrees([0, 8, 0, 8]) == {2: 4}
    assert ff.closed_point_degrees([2, 2, 5]) == {1: 2, 3: 1}
    with pytest.raises(ff.FFError):
        ff.closed_point_degrees([0, 1])


def test_invariance_after_reduction():
    for entry_id in ("p4q-15-bring", "p4c-21", "p5-160", "p6-3", "p4-bring-pentahedral"):
        inst = instance(entry_id)
        curve = ff.reduce_curve(inst.model, PRIMES[0])
        for g in inst.group_elements():
            assert ff.invariance_ff(curve, ff.reduce_element(g, PRIMES[0]))


def test_reduced_group_orders():
    for entry_id in ("p4q-15-bring", "p5-192", "p4c-21"):
        gens = instance(entry_id).group_elements()
        for s in PRIMES:
            assert ff.check_functoriality(gens, s)
            assert ff.reduced_group_order(gens, s) == group(entry_id).order


def test_g192_probe_clean():
    for s in PRIMES:
        result = ff.smooth_probe(ff.reduce_curve(catalog()["p5-192"].model, s))
        assert result.status == "no-singularity-found"
        assert result.points_checked > 0
        assert "not a proof" in result.note


def test_degenerate_net_has_witness():
    texts = ("x1^2 + x2^2 + x3^2", "x1*x4 + x2*x5 + x3^2 + x5^2", "x2*x4 + x1*x5 + x3*x5 + x1^2")
    model = QuadricNetModel(tuple(parse_poly(t, QuadricNetModel.VARS, K) for t in texts))
    result = ff.smooth_probe(ff.reduce_curve(model, PRIMES[0]))
    assert result.status == "singular"
    assert [int(c) for c in result.witness] == [0, 0, 0, 1, 0]


def test_trigonal_probe_agrees_with_exact_check():
    model = catalog()["p4c-14"].model
    assert ff.smooth_probe(ff.reduce_curve(model, PRIMES[0])).status == "no-singularity-found"


def test_ff_closure_of_cyclic_element():
    inst = instance("p4q-12")
    g5 = ff.reduce_element(inst.group_elements()[0], PRIMES[0])
    assert len(ff.ff_closure([g5])) == 5
    assert len(closure(inst.group_elements()[:1])) == 5
