import time

import pytest

from curvesym.ramify import (
    BranchDatum,
    InconsistencyError,
    RamifyError,
    ZeuthenInputError,
    cyclic_branch_data,
    element_order,
    enumerate_zeuthen,
    fixed_counts,
    fixed_points,
    quotient_genus,
    rh_cover_branch,
    verify_zeuthen,
)
from curvesym.symmetry import closure, compose

from conftest import alpha_fixed, group, instance, net_involutions


def test_swap_involution_six_points():
    inst = instance("p4q-01")
    g = inst.group_elements()[0]
    assert g.swap
    assert fixed_points(inst.model, g).isolated_count == 6


def test_alpha_involution_eight_points():
    fs = alpha_fixed()
    assert fs.isolated_count == 8
    assert not fs.pointwise


def test_beta_involution_no_points():
    model, _, beta = net_involutions()
    assert fixed_points(model, beta).isolated_count == 0


def test_diagonal_g5_four_points():
    inst = instance("p4q-12")
    g5 = inst.group_elements()[0]
    assert element_order(g5) == 5
    assert fixed_points(inst.model, g5).isolated_count == 4


def test_identity_is_pointwise():
    inst = instance("p4q-03")
    g = inst.group_elements()[0]
    assert fixed_points(inst.model, g.identity()).pointwise


def test_perspective_g3_branch_data():
    inst = instance("p4c-15")
    g = inst.group_elements()[0]
    assert inst.model.f4.is_zero()
    assert cyclic_branch_data(inst.model, g) == (BranchDatum(3, 6),)


def test_involution_branch_datum():
    inst = instance("p4q-01")
    assert cyclic_branch_data(inst.model, inst.group_elements()[0]) == (BranchDatum(2, 6),)


def test_order_four_swap_consistent_with_square():
    inst = instance("p4q-07")
    G = group("p4q-07")
    g = next(h for h in G if h.swap and element_order(h) == 4)
    data = cyclic_branch_data(inst.model, g)
    fix_g = fixed_points(inst.model, g).isolated_count
    fix_g2 = fixed_points(inst.model, compose(g, g)).isolated_count
    assert fix_g <= fix_g2
    assert sum(b.orbits for b in data if b.n_i == 4) == fix_g
    assert sum(b.orbits * 4 // b.n_i for b in data) == fix_g2
    sol = quotient_genus(inst.model, closure([g]))
    assert sol.residual == 0


def test_quotient_genus_swap():
    inst = instance("p4q-01")
    sol = quotient_genus(inst.model, group("p4q-01"))
    assert (sol.n, sol.p_quot, sol.residual) == (2, 1, 0)


def test_quotient_genus_ruling_preserving():
    inst = instance("p4q-02")
    sol = quotient_genus(inst.model, group("p4q-02"))
    assert (sol.p_quot, sol.residual) == (2, 0)


def test_quotient_genus_net_involutions():
    model, alpha, beta = net_involutions()
    sol_b = quotient_genus(model, closure([beta]), p=5)
    assert (sol_b.p_quot, sol_b.branch, sol_b.residual) == (3, (), 0)
    A = closure([alpha])
    sol_a = quotient_genus(model, A, p=5, counts={A.identity.key: 0, alpha.key: alpha_fixed().isolated_count})
    assert (sol_a.p_quot, sol_a.residual) == (1, 0)


def test_quotient_genus_bring_group():
    inst = instance("p4q-15-bring")
    G = group("p4q-15-bring")
    counts = fixed_counts(inst.model, G)
    sol = quotient_genus(inst.model, G, counts=counts)
    assert sol.p_quot == 0 and sol.residual == 0
    assert sorted(b.n_i for b in sol.branch) == [2, 4, 5]


def test_inconsistent_counts_detected():
    inst = instance("p4q-01")
    G = group("p4q-01")
    g = G.elements[1]
    with pytest.raises(InconsistencyError):
        quotient_genus(inst.model, G, counts={G.identity.key: 0, g.key: 5})


def test_plane_marked_fixed_point_unsupported():
    inst = instance("p6-2")
    g = inst.group_elements()[0]
    with pytest.raises(RamifyError):
        fixed_points(inst.model, g)


def test_verify_zeuthen_examples():
    assert verify_zeuthen(4, 2, 1, [BranchDatum(2, 6)]) == 0
    assert verify_zeuthen(5, 2, 3, []) == 0
    assert verify_zeuthen(4, 3, 0, [(3, 5)]) == 2


def test_verify_zeuthen_divisibility():
    with pytest.raises(ZeuthenInputError):
        verify_zeuthen(4, 6, 0, [(4, 1)])
    with pytest.raises(ZeuthenInputError):
        verify_zeuthen(4, 0, 0, [])


def test_seven_only_arithmetically():
    # one orbit of n_i = 7 over an elliptic quotient balances the equation,
    # but a cyclic cover cannot branch over a single point
    assert verify_zeuthen(4, 7, 1, [(7, 1)]) == 0
    assert not [s for s in enumerate_zeuthen(4, 7) if s.n == 7]


def test_prime_periods_genus_four():
    sols = enumerate_zeuthen(4, 60, primes_only=True)
    assert {s.n for s in sols} == {2, 3, 5}
    assert all(s.residual == 0 for s in sols)


def test_genus_two_period_five():
    sols = enumerate_zeuthen(2, 10)
    assert any(s.n == 5 and s.p_quot == 0 and s.branch == (BranchDatum(5, 3),) for s in sols)


def test_genus_four_period_three():
    sols = {(s.p_quot, s.branch) for s in enumerate_zeuthen(4, 3) if s.n == 3}
    assert (0, (BranchDatum(3, 6),)) in sols
    assert (2, ()) in sols


def test_enumeration_speed():
    start = time.perf_counter()
    total = 0
    for p in range(2, 7):
        sols = enumerate_zeuthen(p, 60)
        assert all(s.residual == 0 for s in sols)
        total += len(sols)
    assert total > 0
    assert time.perf_counter() - start < 60


def test_enumeration_rejects_low_genus():
    with pytest.raises(ZeuthenInputError):
        enumerate_zeuthen(1, 10)


def test_rh_cover_branch():
    assert rh_cover_branch(3, 6, 0) == 16
    assert rh_cover_branch(3, 4, 0) == 12
    assert rh_cover_branch(2, 5, 0) == 12
    with pytest.raises(ZeuthenInputError):
        rh_cover_branch(2, 2, 3)
