"""Plücker characteristics: plane curves and the genus-4 space sextic."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from fractions import Fraction


class CharInputError(ValueError):
    pass


class RelationError(ValueError):
    """Supplied characteristics violate a Plücker relation."""


@dataclass(frozen=True)
class PlaneChars:
    degree: int
    class_: int
    nodes: int
    cusps: int
    inflexions: int
    bitangents: int
    genus: int

    def as_dict(self):
        return asdict(self)


_NAMES = ("degree", "class_", "nodes", "cusps", "inflexions", "bitangents", "genus")


def _relations(v):
    """Residuals of the six Plücker relations; None where a value is missing."""
    d, c, dl, k, i, t, g = (v.get(n) for n in _NAMES)

    def r(fn, *args):
        return None if any(a is None for a in args) else fn()

    return {
        "class = d(d-1) - 2 delta - 3 kappa": r(lambda: d * (d - 1) - 2 * dl - 3 * k - c, d, dl, k, c),
        "iota = 3d(d-2) - 6 delta - 8 kappa": r(lambda: 3 * d * (d - 2) - 6 * dl - 8 * k - i, d, dl, k, i),
        "genus = (d-1)(d-2)/2 - delta - kappa": r(lambda: Fraction((d - 1) * (d - 2), 2) - dl - k - g, d, dl, k, g),
        "d = c(c-1) - 2 tau - 3 iota": r(lambda: c * (c - 1) - 2 * t - 3 * i - d, c, t, i, d),
        "kappa = 3c(c-2) - 6 tau - 8 iota": r(lambda: 3 * c * (c - 2) - 6 * t - 8 * i - k, c, t, i, k),
        "genus = (c-1)(c-2)/2 - tau - iota": r(lambda: Fraction((c - 1) * (c - 2), 2) - t - i - g, c, t, i, g),
    }


def _solve_linear(v):
    """Fill in one unknown per pass while some relation has exactly one."""
    lin = {
        # (unknown, formula) pairs; each uses only names that must be known
        "class_": [lambda: v["degree"] * (v["degree"] - 1) - 2 * v["nodes"] - 3 * v["cusps"]],
        "inflexions": [lambda: 3 * v["degree"] * (v["degree"] - 2) - 6 * v["nodes"] - 8 * v["cusps"],
                       lambda: Fraction(v["class_"] * (v["class_"] - 1) - 2 * v["bitangents"] - v["degree"], 3)],
        "genus": [lambda: Fraction((v["degree"] - 1) * (v["degree"] - 2), 2) - v["nodes"] - v["cusps"],
                  lambda: Fraction((v["class_"] - 1) * (v["class_"] - 2), 2) - v["bitangents"] - v["inflexions"]],
        "nodes": [lambda: Fraction((v["degree"] - 1) * (v["degree"] - 2), 2) - v["genus"] - v["cusps"],
                  lambda: Fraction(v["degree"] * (v["degree"] - 1) - 3 * v["cusps"] - v["class_"], 2)],
        "cusps": [lambda: Fraction((v["degree"] - 1) * (v["degree"] - 2), 2) - v["genus"] - v["nodes"],
                  lambda: 3 * v["class_"] * (v["class_"] - 2) - 6 * v["bitangents"] - 8 * v["inflexions"]],
        "bitangents": [lambda: Fraction(v["class_"] * (v["class_"] - 1) - 3 * v["inflexions"] - v["degree"], 2),
                       lambda: Fraction((v["class_"] - 1) * (v["class_"] - 2), 2) - v["genus"] - v["inflexions"]],
        "degree": [lambda: v["class_"] * (v["class_"] - 1) - 2 * v["bitangents"] - 3 * v["inflexions"]],
    }
    progress = True
    while progress:
        progress = False
        for name, rules in lin.items():
            if v.get(name) is not None:
                continue
            for rule in rules:
                try:
                    val = rule()
                except (KeyError, TypeError):
                    continue
                v[name] = val
                progress = True
                break


def plane_pluecker(**known):
    """Complete a plane curve's characteristics from a determining subset.

    Keyword names: degree, class_ (or cls), nodes, cusps, inflexions,
    bitangents, genus.  Over-determined input is checked for consistency.
    """
    if "cls" in known:
        known["class_"] = known.pop("cls")
    unknown = set(known) - set(_NAMES)
    if unknown:
        raise CharInputError(f"unknown characteristics {sorted(unknown)}")
    v = {n: known.get(n) for n in _NAMES}
    for n, x in v.items():
        if x is not None and (not isinstance(x, int) or x < 0):
            raise CharInputError(f"{n} must be a non-negative integer")
    _solve_linear(v)
    missing = [n for n in _NAMES if v[n] is None]
    if missing:
        raise CharInputError(f"input does not determine {missing}")
    bad = [rel for rel, res in _relations(v).items() if res]
    if bad:
        raise RelationError("violated: " + "; ".join(bad))
    for n in _NAMES:
        x = Fraction(v[n])
        if x.denominator != 1 or x < 0:
            raise RelationError(f"{n} = {x} is not a non-negative integer")
        v[n] = int(x)
    return PlaneChars(**v)


@dataclass(frozen=True)
class CharTable:
    m: int
    r: int
    n_class: int
    alpha: int
    h: int
    g: int
    x: int
    y: int
    theta: int
    delta: int
    gamma_prime: int
    t: int
    t_prime: int
    p: int

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _cayley_t(r, n, m, theta):
    return Fraction(r ** 3 - 3 * r ** 2 - 58 * r - 3 * r * (n + 3 * m + 3 * theta) + 42 * n + 78 * m + 78 * theta, 6)


def _cayley_t_prime(r, n, m, theta):
    return Fraction(r ** 3 - 3 * r ** 2 - 58 * r - 3 * r * (m + 3 * n + 3 * theta) + 42 * m + 78 * n + 78 * theta, 6)


def space_sextic_chars(theta, delta):
    """Characteristics of the canonical space sextic (m, p) = (6, 4).

    Closed forms are checked against two applications of the plane
    relations: to the perspective cone (m, r, h, 0, n + theta, y) and to a
    plane section of the tangent developable (r, n, x, m + theta, alpha,
    g + delta).
    """
    if not isinstance(theta, int) or not 0 <= theta <= 12:
        raise CharInputError("theta must be an integer in 0..12")
    if not isinstance(delta, int) or delta < 0:
        raise CharInputError("delta must be a non-negative integer")
    m, p = 6, 4
    r, h, n, y = 18, 6, 36 - theta, 96
    x, alpha = 126 - theta, 60 - 2 * theta
    g = Fraction(531) - Fraction(65, 2) * theta + Fraction(theta * theta, 2) - delta
    if g.denominator != 1:
        raise AssertionError("g is not integral")
    gamma = r * n + 12 * r - 14 * n - 6 * m - 8 * theta - 4 * delta
    t, t_prime = 480 - 12 * theta, 120

    cone = plane_pluecker(degree=m, cusps=0, genus=p)
    if (cone.class_, cone.nodes, cone.inflexions, cone.bitangents) != (r, h, n + theta, y):
        raise AssertionError(f"perspective cone disagrees: {cone}")
    section = plane_pluecker(degree=r, class_=n, cusps=m + theta, genus=p)
    if (section.nodes, section.inflexions, section.bitangents) != (x, alpha, g + delta):
        raise AssertionError(f"developable section disagrees: {section}")
    if gamma != 324 - 12 * theta - 4 * delta:
        raise AssertionError("gamma' closed form disagrees")
    if (_cayley_t(r, n, m, theta), _cayley_t_prime(r, n, m, theta)) != (t, t_prime):
        raise AssertionError("t, t' closed forms disagree")
    if g < 0 or gamma < 0:
        raise CharInputError(f"delta = {delta} makes a count negative (g = {g}, gamma' = {gamma})")
    return CharTable(m=m, r=r, n_class=n, alpha=alpha, h=h, g=int(g), x=x, y=y, theta=theta,
                     delta=delta, gamma_prime=gamma, t=t, t_prime=t_prime, p=p)


def _genus_arg(p):
    if not isinstance(p, int) or p < 2:
        raise CharInputError("genus must be an integer >= 2")


def weierstrass_count(p):
    _genus_arg(p)
    return (p - 1) * p * (p + 1)


def contact_phi_count(p):
    """Adjoint curves touching at p - 1 points (odd theta characteristics)."""
    _genus_arg(p)
    return 2 ** (p - 1) * (2 ** p - 1)


def trisecant_genus(delta):
    """Genus of a section of the trisecant ruled surface."""
    if not isinstance(delta, int) or not 0 <= delta <= 6:
        raise CharInputError("delta must be an integer in 0..6")
    return 11 - delta
