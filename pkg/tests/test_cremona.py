from dataclasses import replace

import pytest

from curvesym.algebra import DEFAULT_FIELD, parse_poly
from curvesym.cremona import (
    CollinearBaseError,
    CremonaError,
    CremonaStep,
    S5VerificationError,
    apply_step,
    compose_perms,
    default_steps,
    induced_pencil_permutation,
    preserves,
    std_quad_transform,
    verify_s5,
)
from curvesym.curves import PlaneNodalModel, point_multiplicity, proportionality
from curvesym.symmetry import perm_closure

from conftest import catalog

K = DEFAULT_FIELD
CORNERS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def plane(text, marked=()):
    return PlaneNodalModel(parse_poly(text, PlaneNodalModel.VARS, K), marked)


def s5_entry():
    return catalog()["p6-3"]


def test_transform_is_an_involution():
    conic = plane("x^2 + 2*y^2 + 3*z^2 + x*y + y*z")
    quartic = std_quad_transform(conic, CORNERS)
    assert quartic.degree == 4
    assert sorted(mu for _, mu in quartic.marked) == [2, 2, 2]
    back = std_quad_transform(quartic, CORNERS)
    assert back.degree == 2
    assert proportionality(conic.F, back.F) is not None


def test_conic_through_base_points_becomes_line():
    line = std_quad_transform(plane("x*y + y*z + z*x"), CORNERS)
    assert line.degree == 1
    assert proportionality(line.F, parse_poly("x + y + z", PlaneNodalModel.VARS, K)) is not None


def test_sextic_at_three_nodes():
    model = s5_entry().model
    image = std_quad_transform(model, CORNERS)
    assert image.degree == 6
    assert sorted(mu for _, mu in image.marked) == [2, 2, 2, 2]
    for p, mu in image.marked:
        assert point_multiplicity(image.F, tuple(K(c) for c in p), PlaneNodalModel.VARS) == 2


def test_collinear_base():
    with pytest.raises(CollinearBaseError):
        std_quad_transform(plane("x^2 + y^2 + z^2"), ((1, 0, 0), (0, 1, 0), (1, 1, 0)))


def test_step_shape():
    with pytest.raises(CremonaError):
        CremonaStep()
    with pytest.raises(CremonaError):
        CremonaStep(matrix=((1, 0, 0), (0, 1, 0), (0, 0, 1)), base=CORNERS)


def test_identity_step():
    model = s5_entry().model
    ident = CremonaStep(matrix=((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert induced_pencil_permutation(model, ident) == (0, 1, 2, 3, 4)


def _label(model, point):
    for k, (p, mu) in enumerate(model.marked):
        if tuple(K(c) for c in p) == tuple(K(c) for c in point):
            return k


def test_coordinate_cycle():
    model = s5_entry().model
    cycle = CremonaStep(matrix=((0, 0, 1), (1, 0, 0), (0, 1, 0)))
    preserves(model, cycle)
    perm = induced_pencil_permutation(model, cycle)
    corners = sorted(_label(model, c) for c in CORNERS)
    assert sorted(perm[i] for i in corners) == corners
    assert all(perm[i] != i for i in corners)
    assert perm[4] == 4 and perm[_label(model, (1, 1, 1))] == _label(model, (1, 1, 1))


def test_quadratic_step_swaps_fourth_node_with_conics():
    model = s5_entry().model
    perm = induced_pencil_permutation(model, CremonaStep(base=CORNERS))
    fourth = _label(model, (1, 1, 1))
    assert perm[fourth] == 4 and perm[4] == fourth
    assert all(perm[_label(model, c)] == _label(model, c) for c in CORNERS)


def test_s5_order():
    assert verify_s5(s5_entry()) == 120


def test_collineations_alone():
    entry = s5_entry()
    steps = [s for s in default_steps(entry) if not s.is_quadratic]
    assert verify_s5(entry, steps) <= 24


def test_perturbed_sextic_fails():
    entry = s5_entry()
    model = entry.model
    bad = PlaneNodalModel(model.F + parse_poly("x^3*y^2*z", PlaneNodalModel.VARS, K), model.marked)
    with pytest.raises(S5VerificationError) as info:
        verify_s5(replace(entry, model=bad))
    assert "generator" in str(info.value)


def test_apply_collineation_moves_marks():
    model = s5_entry().model
    img = apply_step(model, CremonaStep(matrix=((0, 1, 0), (1, 0, 0), (0, 0, 1))))
    assert {tuple(K(c) for c in p) for p, _ in img.marked} == {tuple(K(c) for c in p) for p, _ in model.marked}


def test_compose_perms():
    a = (1, 2, 0, 3, 4)
    b = (0, 1, 2, 4, 3)
    assert compose_perms(a, b) == tuple(a[i] for i in b)
    assert perm_closure([a, b]) == 6
