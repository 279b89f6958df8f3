import pytest

from curvesym.algebra import DEFAULT_FIELD, make_root
from curvesym.symmetry import (
    BiMoebius,
    BlockInvarianceError,
    FiberMap,
    GroupTooLargeError,
    OrderError,
    ProjMap,
    SymmetryError,
    action_on_blocks,
    classify,
    closure,
    compose,
    eigen_split,
    is_normal,
    normalize_finite,
    order_histogram,
    perm_closure,
    perm_from_cycles,
    projective_order,
    subgroup,
)

from conftest import group, instance

K = DEFAULT_FIELD


def diag(*entries):
    n = len(entries)
    return ProjMap.from_rows([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def test_identity_composition():
    g = ProjMap.from_rows([[1, 2], [0, 1]])
    assert compose(g.identity(), g) == g
    assert compose(g, g.identity()) == g


def test_swap_squared_is_ruling_preserving():
    A = [[2, 0], [0, 1]]
    B = [[0, 1], [1, 0]]
    g = BiMoebius.from_rows(A, B, swap=True)
    sq = compose(g, g)
    assert not sq.swap
    # (x, y) -> (A y, B x) twice gives (A B x, B A y)
    expected = BiMoebius.from_rows([[0, 2], [1, 0]], [[0, 1], [2, 0]])
    assert sq == expected


def test_fibre_map_composition_up_to_scaling():
    i = make_root(4)
    g = FiberMap.from_rows([[i, 0], [0, 1]], i)
    h = FiberMap.from_rows([[1, 0], [0, -1]], 3)
    gh = compose(g, h)
    assert gh == FiberMap.from_rows([[i, 0], [0, -1]], 3 * i)
    assert gh == FiberMap.from_rows([[2 * i, 0], [0, -2]], 12 * i)


def test_compose_kind_mismatch():
    with pytest.raises(SymmetryError):
        compose(diag(1, -1), BiMoebius.from_rows([[1, 0], [0, 1]], [[1, 0], [0, 1]]))


def test_projective_orders():
    m, c = projective_order(diag(1, -1, 1, 1, 1))
    assert (m, c) == (2, K(1))
    j = make_root(3)
    g = BiMoebius.from_rows([[j * j, 0], [0, 1]], [[j, 0], [0, 1]])
    assert projective_order(g)[0] == 3
    eps = make_root(5)
    swap4 = BiMoebius.from_rows([[eps ** 2, 0], [0, eps ** 3]], [[0, -eps ** 4], [eps, 0]], swap=True)
    assert projective_order(swap4)[0] == 4


def test_infinite_order_capped():
    with pytest.raises(OrderError):
        projective_order(ProjMap.from_rows([[1, 1], [0, 1]]), cap=50)


def test_normalize_finite():
    i = make_root(4)
    h, m = normalize_finite(diag(i, i))
    assert m == 1
    assert h.matrix == ((K(1), K(0)), (K(0), K(1)))
    g = diag(1, -1)
    h, m = normalize_finite(g)
    assert m == 2 and h == g


def _dims(split):
    return {lam: len(basis) for lam, basis in split}


def test_eigen_split_involution_types():
    assert _dims(eigen_split(diag(-1, 1, 1, 1, 1))) == {K(-1): 1, K(1): 4}
    beta = _dims(eigen_split(diag(-1, -1, 1, 1, 1)))
    assert sorted(beta.values()) == [2, 3]
    assert _dims(eigen_split(diag(1, 1, 1))) == {K(1): 3}


def test_closure_small():
    g = BiMoebius.from_rows([[-1, 0], [0, 1]], [[-1, 0], [0, 1]])
    assert closure([g]).order == 2


def test_closure_cap():
    eps = make_root(120)
    with pytest.raises(GroupTooLargeError):
        closure([diag(eps, 1)], cap=50)


def test_klein_histogram():
    G = closure([diag(-1, 1, 1), diag(1, -1, 1)])
    assert order_histogram(G) == {1: 1, 2: 3}
    assert classify(G).name == "klein-four"


def test_bring_closure_and_histogram():
    G = group("p4q-15-bring")
    assert G.order == 120
    assert order_histogram(G) == {1: 1, 2: 25, 3: 20, 4: 30, 5: 24, 6: 20}


@pytest.mark.parametrize("entry_id,name", [
    ("p4q-07", "dihedral-8"),
    ("p4q-10", "octahedral"),
    ("p4q-12", "dihedral-10"),
    ("p4c-10", "tetrahedral"),
    ("p4q-03", "klein-four"),
    ("p4c-12", "cyclic-12"),
])
def test_classify_catalog_groups(entry_id, name):
    assert classify(group(entry_id)).name == name


def test_classify_icosahedral():
    assert classify(group("p5-hyper")).name == "icosahedral"


def test_g36_contains_normal_g9():
    G = group("p4q-13")
    assert G.order == 36
    gens = instance("p4q-13").group_elements()
    H = subgroup(G, gens[:2])
    assert H.order == 9
    assert is_normal(H, G)


def test_reflection_not_normal_in_d6():
    G = group("p4q-05")
    assert classify(G).name == "dihedral-6"
    refl = next(g for g in G if G.element_order(g) == 2)
    assert not is_normal(closure([refl]), G)


def test_is_normal_requires_containment():
    G = closure([diag(-1, 1, 1)])
    H = closure([diag(1, -1, 1)])
    with pytest.raises(SymmetryError):
        is_normal(H, G)


def _pentahedral_planes():
    one, zero = K(1), K(0)
    e = [tuple(one if k == i else zero for k in range(4)) for i in range(4)]
    planes = [[e[k] for k in range(4) if k != i] for i in range(4)]
    planes.append([tuple(a - b for a, b in zip(e[i], e[i + 1])) for i in range(3)])
    return planes


def test_bring_action_on_planes_is_faithful():
    G = group("p4-bring-pentahedral")
    perms, image, kernel = action_on_blocks(G, _pentahedral_planes())
    assert (image, kernel) == (120, 1)
    assert len(set(perms)) == 120


def test_blocks_must_be_permuted():
    G = closure([diag(1, -1)])
    with pytest.raises(BlockInvarianceError):
        action_on_blocks(G, [[(K(1), K(1))], [(K(1), K(2))]])


def test_perm_closure():
    s = perm_from_cycles([(1, 2)], 5)
    c = perm_from_cycles([(1, 2, 3, 4, 5)], 5)
    assert perm_closure([s, c]) == 120
    assert perm_closure([perm_from_cycles([(1, 2, 3)], 3)]) == 3


def test_conjugacy_classes_partition():
    G = group("p4q-10")
    classes = G.conjugacy_classes()
    assert sum(len(c) for c in classes) == 24
    assert sorted(len(c) for c in classes) == [1, 3, 6, 6, 8]
