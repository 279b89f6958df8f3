import json

import pytest

from curvesym.algebra import DEFAULT_FIELD, parse_poly
from curvesym.curves import (
    CatalogError,
    CurveError,
    DegenerateFamilyError,
    GenusUndefinedError,
    InvarianceError,
    ParametricModelError,
    TrigonalModel,
    default_catalog_bytes,
    genus,
    hyperelliptic_group,
    hyperelliptic_lifts,
    instantiate_moduli,
    invariance,
    load_catalog,
    point_multiplicity,
    smoothness_check,
    verify_entry,
)
from curvesym.symmetry import classify, closure, is_normal

from conftest import catalog, instance

K = DEFAULT_FIELD


def _doc():
    return json.loads(default_catalog_bytes())


def _one(entry_id):
    doc = _doc()
    doc["entries"] = [e for e in doc["entries"] if e["id"] == entry_id]
    return doc


def test_minimal_catalog():
    entries = load_catalog(json.dumps(_one("p4c-14")))
    assert len(entries) == 1
    assert entries[0].model.kind == "trigonal"


def test_duplicate_id_rejected():
    doc = _one("p4c-14")
    doc["entries"] *= 2
    with pytest.raises(CatalogError) as info:
        load_catalog(json.dumps(doc))
    assert "p4c-14" in str(info.value)


def test_missing_field_names_path():
    doc = _one("p4c-14")
    del doc["entries"][0]["generators"]
    with pytest.raises(CatalogError) as info:
        load_catalog(json.dumps(doc))
    assert "$.entries[0]" in str(info.value)


def test_non_embeddable_field_index():
    doc = _one("p4c-14")
    doc["field_index"] = 7
    with pytest.raises(CatalogError):
        load_catalog(json.dumps(doc))


def test_unknown_model_kind():
    doc = _one("p4c-14")
    doc["entries"][0]["model"]["kind"] = "quartic_surface"
    with pytest.raises(CatalogError):
        load_catalog(json.dumps(doc))


def test_shipped_catalog_composition():
    ids = list(catalog())
    assert sum(i.startswith("p4q-") for i in ids) == 15
    assert sum(i.startswith("p4c-") for i in ids) == 21
    assert sum(i.startswith("p5-") and i != "p5-hyper" for i in ids) == 4
    assert sum(i.startswith("p6-") for i in ids) == 3
    assert "p4-bring-pentahedral" in ids and "p5-hyper" in ids
    assert len(ids) == 45


def test_diagonal_g5_scaling_is_one():
    inst = instance("p4q-12")
    g5 = inst.group_elements()[0]
    assert invariance(inst.model, g5) == K(1)


def test_sign_changes_fix_every_quadric():
    inst = catalog()["p5-192"]
    one, zero = K(1), K(0)
    ident = tuple(tuple(one if i == j else zero for j in range(3)) for i in range(3))
    for g in closure(inst.group_elements()):
        M = g.matrix
        if all(M[i][j].is_zero() for i in range(5) for j in range(5) if i != j) \
                and all(M[i][i] * M[i][i] == M[0][0] * M[0][0] for i in range(5)):
            N = invariance(inst.model, g)
            assert tuple(tuple(c / N[0][0] for c in row) for row in N) == ident


@pytest.mark.parametrize("entry_id", ["p4q-15-bring", "p4c-14", "p5-64", "p6-3", "p5-hyper"])
def test_identity_scaling(entry_id):
    inst = instance(entry_id)
    g = inst.group_elements()[0]
    lam = invariance(inst.model, g.identity())
    if inst.model.kind == "quadric_net":
        assert all((lam[i][j] == K(1)) == (i == j) for i in range(3) for j in range(3))
    elif inst.model.kind == "space_qc":
        assert lam == (K(1), K(1))
    else:
        assert lam == K(1)


def test_perturbed_form_breaks_invariance():
    inst = catalog()["p4q-15-bring"]
    model = type(inst.model)(inst.model.F + parse_poly("x1^3*y1^3", inst.model.F.vars, K))
    with pytest.raises(InvarianceError):
        for g in inst.group_elements():
            invariance(model, g)


def trig(f4, f6):
    vars = TrigonalModel.VARS
    return TrigonalModel(parse_poly(f4, vars, K), parse_poly(f6, vars, K))


def test_trigonal_smooth():
    check = smoothness_check(trig("y^4", "x^5*y"))
    assert check.status == "smooth"


def test_trigonal_double_factor_singular():
    check = smoothness_check(trig("x^2*y^2", "x^2*(x^4 + y^4)"))
    assert check.status == "singular"


def test_trigonal_repeated_branch_line():
    check = smoothness_check(trig("0", "x^2*y^4 + y^6"))
    assert check.status == "singular"


def test_s5_sextic_marked_points():
    model = catalog()["p6-3"].model
    pts = [p for p, mu in model.marked]
    expected = {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)}
    assert {tuple(K(c) for c in p) for p in pts} == {tuple(K(c) for c in p) for p in expected}
    for p, mu in model.marked:
        assert mu == 2
        assert point_multiplicity(model.F, tuple(K(c) for c in p), model.VARS) == 2
    assert smoothness_check(model).status == "smooth"


@pytest.mark.parametrize("entry_id,g", [
    ("p4q-15-bring", 4), ("p4c-14", 4), ("p6-3", 6), ("p6-2", 6), ("p6-1", 6), ("p5-hyper", 5),
])
def test_genus(entry_id, g):
    assert genus(instance(entry_id).model) == g


def test_genus_of_singular_model():
    with pytest.raises(GenusUndefinedError):
        genus(trig("x^2*y^2", "x^2*(x^4 + y^4)"))


def test_family_instantiation_orders():
    inst = instantiate_moduli(catalog()["p4q-02"], 1)
    assert not inst.params
    assert smoothness_check(inst.model).status == "smooth"
    assert closure(inst.group_elements()).order == 2
    assert closure(instance("p4q-06").group_elements()).order == 3


def test_retry_after_degenerate_draw():
    entry = catalog()["p4q-11"]
    bad = {p: 0 for p in entry.params}
    inst = instantiate_moduli(entry, 0, candidates=[bad])
    assert inst.moduli != bad
    assert closure(inst.group_elements()).order == 12


def test_retries_exhausted():
    entry = catalog()["p4q-11"]
    bad = {p: 0 for p in entry.params}
    with pytest.raises(DegenerateFamilyError):
        instantiate_moduli(entry, 0, retries=2, candidates=[bad, bad])


def test_parametric_entry_needs_moduli():
    with pytest.raises(ParametricModelError):
        catalog()["p4q-01"].group_elements()


@pytest.mark.parametrize("entry_id", ["p4q-07", "p4c-21", "p5-hyper", "p6-1"])
def test_verify_entry(entry_id):
    report = verify_entry(catalog()[entry_id])
    assert report.ok, report.problems
    assert report.order == report.expected_order


def test_hyperelliptic_lifts_square_to_scaling():
    entry = catalog()["p5-hyper"]
    for g in entry.group_elements():
        plus, minus = hyperelliptic_lifts(entry.model, g)
        assert plus.c * plus.c == invariance(entry.model, g)
        assert invariance(entry.model, plus) == invariance(entry.model, minus)


def test_hyperelliptic_full_group():
    entry = catalog()["p5-hyper"]
    full, lifted = hyperelliptic_group(entry.model, entry.group_elements())
    assert full.order == 120
    assert lifted.order == 60 and classify(lifted).name == "icosahedral"
    assert is_normal(lifted, full)


def test_hyperelliptic_group_needs_cover():
    entry = catalog()["p6-1"]
    with pytest.raises(CurveError):
        hyperelliptic_group(entry.model, entry.group_elements())
