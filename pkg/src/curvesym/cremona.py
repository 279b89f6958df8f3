"""Standard quadratic transformations and the five g^1_4 of the nodal sextic.

A plane sextic with four nodes has genus 6 and five pencils of degree 4:
the lines through each node and the conics through all four.  Steps are
point maps; a collineation M sends p to M p, a quadratic step based at
points p_1, p_2, p_3 (columns of P) sends w to P Q(P^-1 w) with
Q(x, y, z) = (yz, zx, xy).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly
from .curves import InvarianceError, PlaneNodalModel, point_multiplicity, proportionality, pullback
from .symmetry import ProjMap, mat_det, mat_inv, mat_vec, perm_closure, perm_compose

VARS = PlaneNodalModel.VARS


class CremonaError(Exception):
    pass


class CollinearBaseError(CremonaError, ValueError):
    pass


class StripError(CremonaError):
    """Exceptional factors did not divide out as the multiplicities predict."""


class S5VerificationError(CremonaError):
    pass


@dataclass(frozen=True)
class CremonaStep:
    """A collineation (``matrix``) or a quadratic step based at ``base`` points."""

    matrix: tuple = None
    base: tuple = None

    def __post_init__(self):
        if (self.matrix is None) == (self.base is None):
            raise CremonaError("a step is either a collineation or a quadratic transform")

    @property
    def is_quadratic(self):
        return self.base is not None

    def describe(self):
        if self.is_quadratic:
            return "quadratic at " + ", ".join(_fmt(p) for p in self.base)
        return "collineation " + repr([[str(c) for c in row] for row in self.matrix])


def _fmt(p):
    return "(" + ":".join(str(c) for c in p) + ")"


def _field(model):
    return model.F.field


def _point(field, p):
    return tuple(field(c) for c in p)


def _same_point(u, v):
    return all((u[i] * v[j] - u[j] * v[i]).is_zero() for i in range(3) for j in range(i + 1, 3))


def _base_matrix(base):
    P = tuple(tuple(base[j][i] for j in range(3)) for i in range(3))
    if mat_det(P).is_zero():
        raise CollinearBaseError("base points are collinear")
    return P


def _quad_point(u):
    x, y, z = u
    return (y * z, z * x, x * y)


def std_quad_transform(model, base):
    """Image of the curve under the quadratic step based at three points.

    Returns the transformed PlaneNodalModel; marked points are carried
    along with the multiplicity bookkeeping (base point i gets
    m - mu_j - mu_k, other marked points keep theirs).
    """
    field = _field(model)
    base = [_point(field, p) for p in base]
    if len(base) != 3:
        raise CremonaError("a quadratic step needs three base points")
    P = _base_matrix(base)
    m = model.degree
    mus = [point_multiplicity(model.F, p, VARS) for p in base]
    Fp = pullback(model.F, ProjMap(P, canonical=False), VARS)
    X = [Poly.variable(VARS, v, field) for v in VARS]
    G = Fp.compose({"x": X[1] * X[2], "y": X[2] * X[0], "z": X[0] * X[1]}, VARS)
    low = tuple(min(e[k] for e in G.terms) for k in range(3))
    if list(low) != mus:
        raise StripError(f"exceptional exponents {low} differ from multiplicities {tuple(mus)}")
    H = Poly(VARS, {tuple(e[k] - low[k] for k in range(3)): c for e, c in G.terms.items()}, field)
    degree = 2 * m - sum(mus)
    if any(sum(e) != degree for e in H.terms):
        raise StripError("stripped form has the wrong degree")
    R = pullback(H, ProjMap(mat_inv(P), canonical=False), VARS)
    marked = []
    for k, p in enumerate(base):
        j, l = [i for i in range(3) if i != k]
        mu = m - mus[j] - mus[l]
        if mu > 1:
            marked.append((p, mu))
    Pinv = mat_inv(P)
    for q, mu in model.marked:
        q = _point(field, q)
        if any(_same_point(q, b) for b in base):
            continue
        u = mat_vec(Pinv, q)
        if sum(1 for c in u if c.is_zero()) > 0:
            raise CremonaError(f"marked point {_fmt(q)} lies on a side of the base triangle")
        marked.append((mat_vec(P, _quad_point(u)), mu))
    return PlaneNodalModel(R, tuple(marked))


def apply_step(model, step):
    if step.is_quadratic:
        return std_quad_transform(model, step.base)
    field = _field(model)
    M = tuple(tuple(field(c) for c in row) for row in step.matrix)
    # image curve of p -> M p is F o M^-1
    R = pullback(model.F, ProjMap(mat_inv(M), canonical=False), VARS)
    marked = tuple((mat_vec(M, _point(field, q)), mu) for q, mu in model.marked)
    return PlaneNodalModel(R, marked)


def preserves(model, step):
    """Scalar lambda with image == lambda * F; raises InvarianceError otherwise."""
    image = apply_step(model, step)
    lam = proportionality(model.F, image.F)
    if lam is None:
        raise InvarianceError(f"{step.describe()} does not preserve the curve", image.F)
    return lam


# --- pencil bookkeeping -----------------------------------------------------------

def _nodes(model):
    field = _field(model)
    nodes = [_point(field, q) for q, mu in model.marked if mu == 2]
    if len(nodes) != 4:
        raise CremonaError("the pencil labels need exactly four marked double points")
    return nodes


def _node_index(nodes, p):
    for i, q in enumerate(nodes):
        if _same_point(p, q):
            return i
    return None


def _step_on_linear_system(step, nodes, degree, mults):
    """Degree and node multiplicities of the image of a general member.

    ``mults`` maps node index -> multiplicity; the member is otherwise
    general, so it meets a side of the base triangle only where forced.
    """
    field = nodes[0][0].field
    if not step.is_quadratic:
        M = tuple(tuple(field(c) for c in row) for row in step.matrix)
        out = {}
        for i, mu in mults.items():
            j = _node_index(nodes, mat_vec(M, nodes[i]))
            if j is None:
                raise CremonaError("collineation does not permute the nodes")
            out[j] = mu
        return degree, out
    base = [_point(field, p) for p in step.base]
    P = _base_matrix(base)
    Pinv = mat_inv(P)
    bidx = [_node_index(nodes, b) for b in base]
    if None in bidx:
        raise CremonaError("quadratic steps must be based at nodes")
    mu_b = [mults.get(i, 0) for i in bidx]
    new_degree = 2 * degree - sum(mu_b)
    out = {}
    for k, i in enumerate(bidx):
        j, l = [t for t in range(3) if t != k]
        mu = degree - mu_b[j] - mu_b[l]
        if mu:
            out[i] = mu
    for i, mu in mults.items():
        if i in bidx:
            continue
        u = mat_vec(Pinv, nodes[i])
        j = _node_index(nodes, mat_vec(P, _quad_point(u)))
        if j is None:
            raise CremonaError("quadratic step sends a node off the node set")
        out[j] = mu
    return new_degree, out


def _label_of(degree, mults, n_nodes=4):
    if degree == 1 and len(mults) == 1 and list(mults.values()) == [1]:
        return next(iter(mults))
    if degree == 2 and len(mults) == n_nodes and set(mults.values()) == {1}:
        return n_nodes
    raise CremonaError(f"image system (degree {degree}, multiplicities {mults}) is not one of the five pencils")


def induced_pencil_permutation(model, step, check=True):
    """Permutation of the labels 0..3 (node pencils, in marked order) and 4 (conics).

    perm[a] = b when the step carries pencil a onto pencil b.
    """
    if check:
        preserves(model, step)
    nodes = _nodes(model)
    systems = [(1, {i: 1}) for i in range(4)] + [(2, {i: 1 for i in range(4)})]
    return tuple(_label_of(*_step_on_linear_system(step, nodes, d, dict(m))) for d, m in systems)


def default_steps(entry):
    """Collineation generators of the entry plus quadratic steps at the recorded node triples."""
    steps = [CremonaStep(matrix=g.matrix) for g in entry.group_elements()]
    for triple in entry.expected.get("quadratic_bases", []):
        pts = [entry.model.marked[i - 1][0] for i in triple]
        steps.append(CremonaStep(base=tuple(pts)))
    return steps


def verify_s5(entry, steps=None):
    """Order of the group the steps induce on the five pencils (120 for the S5 sextic)."""
    model = entry.model
    if not isinstance(model, PlaneNodalModel):
        raise CremonaError("verify_s5 needs a plane nodal model")
    steps = default_steps(entry) if steps is None else list(steps)
    perms = []
    for k, step in enumerate(steps):
        try:
            perms.append(induced_pencil_permutation(model, step))
        except InvarianceError as exc:
            raise S5VerificationError(f"generator {k} ({step.describe()}) fails invariance") from exc
    return perm_closure(perms, 5) if perms else 1


def compose_perms(*perms):
    """Permutation of doing perms[-1] first, then ... perms[0]."""
    out = tuple(range(len(perms[0])))
    for p in perms:
        out = perm_compose(out, p)
    return out
