import pytest

from curvesym.chars import (
    CharInputError,
    RelationError,
    contact_phi_count,
    plane_pluecker,
    space_sextic_chars,
    trisecant_genus,
    weierstrass_count,
)


def test_smooth_quartic():
    c = plane_pluecker(degree=4, nodes=0, cusps=0)
    assert (c.class_, c.inflexions, c.bitangents, c.genus) == (12, 24, 28, 3)


def test_smooth_cubic():
    c = plane_pluecker(degree=3, nodes=0, cusps=0)
    assert (c.class_, c.inflexions, c.bitangents) == (6, 9, 0)


def test_nodal_sextic_cone():
    c = plane_pluecker(degree=6, nodes=6, cusps=0, genus=4)
    assert c.class_ == 18


def test_cusp_count_from_genus():
    c = plane_pluecker(degree=4, cusps=0, genus=2)
    assert c.nodes == 1 and c.class_ == 10


def test_inconsistent_input():
    with pytest.raises(RelationError):
        plane_pluecker(degree=4, nodes=0, cusps=0, class_=10)


def test_underdetermined_input():
    with pytest.raises(CharInputError):
        plane_pluecker(degree=4)


def test_negative_input():
    with pytest.raises(CharInputError):
        plane_pluecker(degree=4, nodes=-1, cusps=0)


def test_sextic_chars_base_case():
    t = space_sextic_chars(0, 0)
    assert (t.alpha, t.t_prime, t.gamma_prime) == (60, 120, 324)
    assert (t.r, t.h, t.y, t.n_class, t.x, t.t) == (18, 6, 96, 36, 126, 480)


def test_sextic_chars_max_theta():
    t = space_sextic_chars(12, 0)
    assert (t.alpha, t.n_class) == (36, 24)


def test_bring_osculating_planes():
    assert space_sextic_chars(0, 75).gamma_prime == 24


@pytest.mark.parametrize("theta", range(13))
def test_closed_forms(theta):
    t = space_sextic_chars(theta, 0)
    assert t.n_class == 36 - theta
    assert t.x == 126 - theta
    assert t.alpha == 60 - 2 * theta
    assert t.t == 480 - 12 * theta
    assert t.t_prime == 120
    assert t.gamma_prime == 324 - 12 * theta
    assert isinstance(t.g, int)


def test_theta_range():
    with pytest.raises(CharInputError):
        space_sextic_chars(13, 0)
    with pytest.raises(CharInputError):
        space_sextic_chars(-1, 0)


def test_delta_too_large():
    with pytest.raises(CharInputError):
        space_sextic_chars(0, 10 ** 4)


def test_weierstrass_counts():
    assert [weierstrass_count(p) for p in (2, 3, 4)] == [6, 24, 60]


def test_contact_counts():
    assert [contact_phi_count(p) for p in (2, 3, 4)] == [6, 28, 120]
    assert contact_phi_count(4) == space_sextic_chars(0, 0).t_prime


def test_genus_argument():
    with pytest.raises(CharInputError):
        weierstrass_count(1)


def test_trisecant_genus():
    assert trisecant_genus(0) == 11
    assert trisecant_genus(6) == 5
    assert trisecant_genus(4) == 7
    with pytest.raises(CharInputError):
        trisecant_genus(7)
