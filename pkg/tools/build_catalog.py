"""Generate src/curvesym/data/catalog.json from readable equations.

Run from the repository root:  python3 tools/build_catalog.py [--check]
With --check every entry is instantiated and verified after writing.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from curvesym.algebra import DEFAULT_FIELD as F, parse_poly
from curvesym.curves import _Reader, fiber_lift, load_catalog, verify_entry

OUT = Path(__file__).resolve().parents[1] / "src" / "curvesym" / "data" / "catalog.json"
PHI = "(1+sqrt5)/2"


# --- serialisation ---------------------------------------------------------

def _lit(c):
    return c.to_triples()


def scalar_json(text, params=()):
    p = parse_poly(str(text), tuple(params))
    if all(not any(e) for e in p.terms):
        return _lit(p.coeff((0,) * len(params)))
    terms = []
    for e, c in sorted(p.terms.items()):
        exps = {name: x for name, x in zip(params, e) if x}
        for t in _lit(c):
            terms.append(t + [exps])
    return {"terms": terms}


def form_json(text, vars, params=()):
    n = len(vars)
    p = parse_poly(text, tuple(vars) + tuple(params))
    groups = {}
    for e, c in p.terms.items():
        groups.setdefault(e[:n], []).append((e[n:], c))
    terms = []
    for me in sorted(groups, reverse=True):
        parts = groups[me]
        if len(parts) == 1 and not any(parts[0][0]):
            terms.append([list(me), _lit(parts[0][1])])
        else:
            tt = []
            for pe, c in parts:
                exps = {name: x for name, x in zip(params, pe) if x}
                tt.extend(t + [exps] for t in _lit(c))
            terms.append([list(me), {"terms": tt}])
    return {"terms": terms}


def matrix_json(M, params=()):
    return [[scalar_json(x, params) for x in row] for row in M]


def diag(*xs):
    n = len(xs)
    return [[xs[i] if i == j else 0 for j in range(n)] for i in range(n)]


def images(n, rows):
    """Matrix from a dict k -> {j: coeff} (1-based), rows default to identity."""
    M = diag(*([1] * n))
    for k, row in rows.items():
        M[k - 1] = [row.get(j + 1, 0) for j in range(n)]
    return M


I2 = [[1, 0], [0, 1]]
P2 = [[0, 1], [1, 0]]


def bimoebius(A, B, swap=False, params=()):
    return {"kind": "bimoebius", "A": matrix_json(A, params), "B": matrix_json(B, params), "swap": swap}


def projmap(M, params=()):
    return {"kind": "projmap", "matrix": matrix_json(M, params)}


# --- entries -----------------------------------------------------------------

ENTRIES = []


def add(id, genus, paper_ref, model, generators, expected, params=()):
    exp = {"notes": ""}
    exp.update(expected)
    ENTRIES.append({"id": id, "genus": genus, "paper_ref": paper_ref, "params": list(params),
                    "model": model, "generators": generators, "expected": exp})


VB = ("x1", "x2", "y1", "y2")


def biform(text, params=()):
    return {"kind": "biform33", "F": form_json(text, VB, params)}


def quadric_entries():
    j = "j"
    EQ31 = ("x1^2*y1^2*(x1*y2 + x2*y1) + x1*y1*(x1^2*y2^2 + x2^2*y1^2 + a*x1*x2*y1*y2)"
            " + b*(x1^3*y2^3 + x2^3*y1^3) + c*x1*x2*y1*y2*(x1*y2 + x2*y1)"
            " + x2*y2*(d*(x1^2*y2^2 + x2^2*y1^2) + e*x1*x2*y1*y2) + f*x2^2*y2^2*(x1*y2 + x2*y1)")
    EQ32 = ("x1^3*y1^3 + x1*y1*x2*y2*(a*x1*y1 + b*x2*y2) + c*x2^3*y2^3 + x1^3*y1*y2^2"
            " + x1*x2^2*y1^3 + d*x2^3*y1^2*y2 + e*x1^2*x2*y2^3")
    EQ34 = ("x1^3*y1^3 + x2^3*y2^3 + a*x1*y1*x2*y2*(x1*y1 + x2*y2) + b*y1*y2*(x1^3*y2 + x2^3*y1)"
            " + c*x1*x2*(x1*y2^3 + x2*y1^3)")
    EQ46 = ("x1^3*y1^3 + x2^3*y2^3 + a*(x1^3*y2^3 + x2^3*y1^3) + b*x1^2*y1^2*x2*y2"
            " + c*x1*y1*x2^2*y2^2")
    swap = bimoebius(I2, I2, True)
    g2 = bimoebius(diag(-1, 1), diag(-1, 1))
    pp = bimoebius(P2, P2)
    g3 = bimoebius(diag(f"{j}^2", 1), diag(j, 1))

    add("p4q-01", 4, "Eq. (3.1)", biform(EQ31, "abcdef"), [swap],
        {"order": 2, "type": "cyclic-2", "quotient_genus": 1, "moduli_count": 6,
         "notes": "G2 exchanging the rulings; perspective involution with 6 fixed points"}, "abcdef")
    add("p4q-02", 4, "Eq. (3.2)", biform(EQ32, "abcde"), [g2],
        {"order": 2, "type": "cyclic-2", "quotient_genus": 2, "moduli_count": 5,
         "notes": "G2 preserving the rulings; 2 fixed points"}, "abcde")
    add("p4q-03", 4, "Eq. (3.2) with (3.3) d = e", biform(EQ32.replace("e*", "d*"), "abcd"), [g2, swap],
        {"order": 4, "type": "klein-four", "moduli_count": 4}, "abcd")
    add("p4q-04", 4, "Eq. (3.4)", biform(EQ34, "abc"), [g2, pp],
        {"order": 4, "type": "klein-four", "moduli_count": 3}, "abc")
    add("p4q-05", 4, "Eq. (4.6)", biform(EQ46, "abc"), [g3, swap],
        {"order": 6, "type": "dihedral-6", "moduli_count": 3}, "abc")
    add("p4q-06", 4, "Eq. (5.9)",
        biform("x1^3*(y1^3 + a*y1^2*y2 + y2^3) + x2^3*(b*y1^3 + y1*y2^2 + c*y2^3)", "abc"),
        [bimoebius(diag(j, 1), I2)],
        {"order": 3, "type": "cyclic-3", "moduli_count": 3,
         "notes": "f3, phi3 chosen as generic cubics with three free coefficients"}, "abc")
    add("p4q-07", 4, "Eq. (3.4) with (3.5) c = -b", biform(EQ34.replace("c*", "-b*"), "ab"),
        [g2, pp, bimoebius([[0, 1], ["i", 0]], [[0, 1], ["-i", 0]], True)],
        {"order": 8, "type": "dihedral-8", "moduli_count": 2}, "ab")
    add("p4q-08", 4, "Eq. (4.6) with (4.7) b = c", biform(EQ46.replace("c*", "b*"), "ab"), [g3, swap, pp],
        {"order": 12, "type": "dihedral-12", "moduli_count": 2}, "ab")
    add("p4q-09", 4, "Eq. (5.10)",
        biform("x1^3*(y1 - y2)*(y1 - a*y2)*(y1 - b*y2) + x2^3*(y1 + y2)*(y1 + a*y2)*(y1 + b*y2)", "ab"),
        [bimoebius(diag(j, 1), I2), bimoebius(P2, diag(1, -1))],
        {"order": 6, "type": "dihedral-6", "moduli_count": 2}, "ab")
    add("p4q-10", 4, "Eq. (4.8)",
        biform("(x1*y1 + x2*y2)^3 + b*(x1*y1 - x2*y2)*(x1*y2 - x2*y1)*(x1*y2 + x2*y1)", "b"),
        [g2, pp, bimoebius([["i", "i"], [1, -1]], [["-i", "-i"], [1, -1]]),
         bimoebius(diag(1, "i"), diag(1, "-i"), True)],
        {"order": 24, "type": "octahedral", "moduli_count": 1,
         "notes": "last factor read as (x1 y2 + x2 y1); the printed (x1 y2 + x2 y2) is not invariant "
                  "under the normal Klein four-group"}, "b")
    add("p4q-11", 4, "Eq. (5.11)",
        biform("x1^3*y1*(y1^2 + a*y2^2) + x2^3*y2*(a*y1^2 + y2^2)", "a"),
        [bimoebius(diag("-j", 1), diag(-1, 1)), pp],
        {"order": 12, "type": "dihedral-12", "moduli_count": 1,
         "notes": "the text derives a dihedral G12 with cyclic G6 (-j x1, -y1); the summary table "
                  "lists this case as a dihedral G6"}, "a")
    add("p4q-12", 4, "Eq. (6.14), four-term family",
        biform("x1^3*y1^2*y2 + x1^2*x2*y2^3 + x1*x2^2*y1^3 + a^5*x2^3*y1*y2^2", "a"),
        [bimoebius(diag("eps", "eps^4"), diag("eps^2", "eps^3")),
         bimoebius([[0, "a^2"], ["1/a", 0]], [[0, 1], ["1/a", 0]], params="a")],
        {"order": 10, "type": "dihedral-10", "moduli_count": 1,
         "notes": "printed equation repeats x1 x2 y2^3 beside x1^2 x2 y2^3; the four-term family "
                  "agrees with Eq. (5.15) at a^5 = -1"}, "a")
    g9 = [bimoebius(diag(j, 1), I2), bimoebius(I2, diag(j, 1))]
    add("p4q-13", 4, "Eq. (5.12)",
        biform("x1^3*y1^3 + x1^3*y2^3 + x2^3*y1^3 + a^3*x2^3*y2^3", "a"),
        g9 + [bimoebius([[0, "a"], [1, 0]], [[0, 1], ["1/a", 0]], params="a"), swap],
        {"order": 36, "type": "other", "moduli_count": 1,
         "notes": "G18 preserving the rulings plus 18 exchanging them"}, "a")
    add("p4q-14", 4, "Eq. (5.13)",
        biform("x1^3*y1^3 + x1^3*y2^3 + x2^3*y1^3 - x2^3*y2^3"),
        g9 + [bimoebius([[0, -1], [1, 0]], [[0, 1], [-1, 0]]), swap, bimoebius(P2, diag(1, -1))],
        {"order": 72, "type": "other", "moduli_count": 0})
    add("p4q-15-bring", 4, "Eq. (5.15) Bring's curve",
        biform("x1^3*y1^2*y2 + x1^2*x2*y2^3 + x1*x2^2*y1^3 - x2^3*y1*y2^2"),
        [bimoebius(diag("eps", "eps^4"), diag("eps^2", "eps^3")),
         bimoebius([[0, 1], [-1, 0]], [[0, 1], [-1, 0]]),
         bimoebius(diag("eps^2", "eps^3"), [[0, "-eps^4"], ["eps", 0]], True),
         bimoebius([[1, f"1-{PHI}"], [f"1-{PHI}", -1]], [[1, PHI], [PHI, -1]])],
        {"order": 120, "type": "other", "moduli_count": 0,
         "histogram": {"1": 1, "2": 25, "3": 20, "4": 30, "5": 24, "6": 20},
         "notes": "fourth generator (order 2, preserving the rulings) found by search inside the "
                  "icosahedral Moebius groups of the two rulings"})


def trig(f4, f6, params=()):
    return {"kind": "trigonal", "f4": form_json(f4, ("x", "y"), params),
            "f6": form_json(f6, ("x", "y"), params)}


def fiber(model, A, params, c=None):
    """Trigonal generator; c computed from a sample instance when omitted."""
    if c is None:
        vals = {p: Fraction(k + 2, 3) for k, p in enumerate(params)}
        rd = _Reader(F, 120, tuple(params))
        tmpl = rd.model(model, "$")
        inst = tmpl.substitute({k: F(v) for k, v in vals.items()}) if params else tmpl
        Am = tuple(tuple(parse_poly(str(x), ()).coeff(()) for x in row) for row in A)
        cv = fiber_lift(inst.f4, inst.f6, Am)
        if cv is None:
            raise SystemExit(f"no fibre lift for {A}")
        return {"kind": "trigonal", "A": matrix_json(A), "c": cv.to_triples()}
    return {"kind": "trigonal", "A": matrix_json(A), "c": scalar_json(c)}


def cone_entries():
    cases = [
        # (f4, f6, params, generator matrices, extra fibre-only generator, order, type, note)
        ("a*x^4 + b*x^2*y^2 + c*y^4", "d*x^6 + e*x^4*y^2 + f*x^2*y^4 + g*y^6", "abcdefg",
         [diag(-1, 1)], 2, "cyclic-2", "perspective involution"),
        ("a*x^4 + b*x^2*y^2 + c*y^4", "x*y*(d*x^4 + e*x^2*y^2 + f*y^4)", "abcdef",
         [diag(1, -1)], 2, "cyclic-2", "involution with axes; plane equation multiplied by y"),
        ("a*(x^4 + y^4) + b*x^2*y^2", "x*y*(c*(x^4 + y^4) + d*x^2*y^2)", "abcd",
         [diag(1, -1), P2], 4, "klein-four", ""),
        ("a*(x^4 + y^4) + b*x^2*y^2", "x*y*(x^4 - y^4)", "ab",
         [diag(1, -1), P2], 4, "klein-four", "f6 is the Jacobian of f4"),
        ("a*x^2*y^2", "x*y*(x^4 + y^4)", "a", [diag(1, "i"), P2], 8, "dihedral-8", ""),
        ("x^4 + a*y^4", "y^2*(b*x^4 + c*y^4)", "abc", [diag("i", 1)], 4, "cyclic-4", ""),
        ("a*x^2*y^2", "x^6 + b*x^3*y^3 + y^6", "ab", [diag(1, "j"), P2], 6, "dihedral-6", ""),
        ("a*x^2*y^2", "x^6 + y^6", "a", [diag(-1, "j"), P2], 12, "dihedral-12", ""),
        ("y*(a*x^3 + b*y^3)", "x^6 + c*x^3*y^3 + d*y^6", "abcd", [diag("j", 1)], 3, "cyclic-3", ""),
        ("a*y*(x^3 + y^3)", "x^6 + 20*x^3*y^3 - 8*y^6", "a", [diag("j", 1), [[1, -2], [-1, -1]]],
         12, "tetrahedral", "order-2 generator exchanges the roots of f4 in pairs"),
        ("a*y^4", "x^6 + b*y^6", "ab", [diag("-j", 1)], 6, "cyclic-6", ""),
        ("y^4", "x^6", "", [diag("-j", "i")], 12, "cyclic-12", ""),
        ("a*y^4", "y*(x^5 + b*y^5)", "ab", [diag("eps", 1)], 5, "cyclic-5", ""),
        ("y^4", "x^5*y", "", [diag("eps", -1)], 10, "cyclic-10", ""),
        ("0", "x*y*(x - y)*(x - a*y)*(x - b*y)*(x - c*y)", "abc", [], 3, "cyclic-3",
         "generic sextic with three cross-ratio moduli"),
        ("0", "x^6 + a*x^4*y^2 + b*x^2*y^4 + y^6", "ab", [diag(-1, 1)], 6, "cyclic-6", ""),
        ("0", "x*y*(x^4 + a*x^2*y^2 + y^4)", "a", [diag(1, -1), P2], 12, "other",
         "three cyclic G6 through the perspective G3"),
        ("0", "x^6 + a*x^3*y^3 + y^6", "a", [diag(1, "j"), P2], 18, "other", ""),
        ("0", "y*(x^5 + y^5)", "", [diag("eps", 1)], 15, "cyclic-15", ""),
        ("0", "x^6 + y^6", "", [diag("zeta6_1", 1), P2], 36, "other", ""),
        ("0", "x*y*(x^4 + y^4)", "", [diag("i", 1), P2, [["z8", -1], [1, "-i*z8"]]], 72, "other",
         "octahedral form; G3 perspective normal subgroup"),
    ]
    for k, (f4, f6, params, mats, order, typ, note) in enumerate(cases, start=1):
        params = tuple(params)
        model = trig(f4, f6, params)
        gens = [fiber(model, A, params) for A in mats]
        if f4 == "0":
            gens.append({"kind": "trigonal", "A": matrix_json(I2), "c": scalar_json("j")})
        add(f"p4c-{k:02d}", 4, f"Eq. (9.{k})", model, gens,
            {"order": order, "type": typ, "notes": note}, params)


def net(texts):
    vars = ("x1", "x2", "x3", "x4", "x5")
    return {"kind": "quadric_net", "quadrics": [form_json(t, vars) for t in texts]}


def lam(texts):
    return [form_json(t, ("l1", "l2", "l3")) for t in texts]


def signs(ks):
    out = []
    for k in ks:
        d = [1] * 5
        d[k - 1] = -1
        out.append(projmap(diag(*d)))
    return out


def net_entries():
    add("p5-192", 5, "genus 5, group of order 192",
        net(["x1^2 + x4^2 + x5^2", "x2^2 + x4^2 - x5^2", "x3^2 + x4*x5"]),
        signs([1, 2, 3]) + [
            projmap(images(5, {1: {2: 1}, 2: {1: 1}, 3: {3: "z8"}, 5: {5: "i"}})),
            projmap(images(5, {1: {1: "sqrt2"}, 2: {3: 2}, 3: {2: 1}, 4: {4: 1, 5: 1}, 5: {4: 1, 5: -1}})),
        ],
        {"order": 192, "type": "other",
         "delta5_factors": lam(["l1", "l2", "l3", "4*l1^2 - 4*l2^2 - l3^2"]),
         "notes": "Delta5 = conic times three lines forming a polar triangle"})
    add("p5-64", 5, "genus 5, group of order 64",
        net(["x1^2 + x2^2 + x3^2 + x4^2 + x5^2", "x1^2 + i*x2^2 - x3^2 - i*x4^2",
             "x1^2 - x2^2 + x3^2 - x4^2"]),
        signs([1, 2, 3, 4]) + [projmap(images(5, {1: {2: 1}, 2: {3: 1}, 3: {4: 1}, 4: {1: 1}}))],
        {"order": 64, "type": "other",
         "delta5_factors": lam(["l1 + l2 + l3", "l1 + i*l2 - l3", "l1 - l2 + l3", "l1 - i*l2 - l3", "l1"]),
         "notes": "printed x3^3 in the third quadric read as x3^2"})
    add("p5-96", 5, "genus 5, group of order 96",
        net(["x1^2 + x4^2 + x5^2", "x2^2 + j*x4^2 + j^2*x5^2", "x3^2 + j^2*x4^2 + j*x5^2"]),
        signs([1, 2, 3, 4]) + [
            projmap(images(5, {1: {2: 1}, 2: {3: 1}, 3: {1: 1}, 4: {4: "j^2"}, 5: {5: "j"}})),
            projmap(images(5, {2: {3: 1}, 3: {2: 1}, 4: {5: 1}, 5: {4: 1}})),
        ],
        {"order": 96, "type": "other",
         "delta5_factors": lam(["l1", "l2", "l3", "l1 + j*l2 + j^2*l3", "l1 + j^2*l2 + j*l3"])})
    add("p5-160", 5, "genus 5, group of order 160",
        net(["x1^2 + x2^2 + x3^2 + x4^2 + x5^2",
             "x1^2 + eps*x2^2 + eps^2*x3^2 + eps^3*x4^2 + eps^4*x5^2",
             "eps^4*x1^2 + eps^3*x2^2 + eps^2*x3^2 + eps*x4^2 + x5^2"]),
        signs([1, 2, 3, 4]) + [
            projmap(images(5, {1: {2: 1}, 2: {3: 1}, 3: {4: 1}, 4: {5: 1}, 5: {1: 1}})),
            projmap(images(5, {1: {5: 1}, 2: {4: 1}, 4: {2: 1}, 5: {1: 1}})),
        ],
        {"order": 160, "type": "other",
         "delta5_factors": lam([f"l1 + eps^{k}*l2 + eps^{4 - k}*l3" for k in range(5)])})


def plane(text, marked):
    return {"kind": "plane_nodal", "F": form_json(text, ("x", "y", "z")),
            "marked": [{"point": [scalar_json(c) for c in p], "multiplicity": m} for p, m in marked]}


S6 = ("2*(x^4*y*z + y^4*x*z + z^4*x*y + x^3*y^3 + x^3*z^3 + y^3*z^3)"
      " - 2*(x^4*y^2 + x^4*z^2 + y^4*x^2 + y^4*z^2 + z^4*x^2 + z^4*y^2)"
      " + (x^3*y^2*z + x^3*z^2*y + y^3*x^2*z + y^3*z^2*x + z^3*x^2*y + z^3*y^2*x)"
      " - 6*x^2*y^2*z^2")


def genus6_entries():
    cyc = images(3, {1: {2: 1}, 2: {3: 1}, 3: {1: 1}})
    tr = images(3, {1: {2: 1}, 2: {1: 1}})
    add("p6-1", 6, "genus 6 type 1 (plane quintic)", plane("x^5 + y^5 + z^5", []),
        [projmap(diag("eps", 1, 1)), projmap(diag(1, "eps", 1)), projmap(cyc), projmap(tr)],
        {"order": 150, "type": "other",
         "notes": "illustrative example (Fermat quintic); the text gives no explicit curve"})
    add("p6-2", 6, "genus 6 type 2 (sextic with a triple and a double point)",
        plane("z^3*x*(x^2 - y^2) + y^2*(x^4 + y^4)", [((0, 0, 1), 3), ((1, 0, 0), 2)]),
        [projmap(diag(1, -1, 1)), projmap(diag(1, 1, "j"))],
        {"order": 6, "type": "cyclic-6",
         "notes": "illustrative example; homology z -> j z permutes each trigonal triple"})
    add("p6-3", 6, "genus 6 type 3, sextic with 120 birational automorphisms",
        plane(S6, [((0, 0, 1), 2), ((0, 1, 0), 2), ((1, 0, 0), 2), ((1, 1, 1), 2)]),
        [projmap(cyc), projmap(tr), projmap([[-1, 0, 1], [0, -1, 1], [0, 0, 1]])],
        {"order": 24, "type": "octahedral", "full_order": 120, "quadratic_bases": [[1, 2, 3]],
         "notes": "collineations permuting the four nodes; quadratic transformations complete S5"})


def special_entries():
    add("p4-bring-pentahedral", 4, "Eq. (5.15a)",
        {"kind": "space_qc",
         "Q": form_json("z1^2 + z2^2 + z3^2 + z4^2 + (z1 + z2 + z3 + z4)^2", ("z1", "z2", "z3", "z4")),
         "C": form_json("z1^3 + z2^3 + z3^3 + z4^3 - (z1 + z2 + z3 + z4)^3", ("z1", "z2", "z3", "z4"))},
        [{"kind": "pentahedral_perm", "perm": [1, 2, 3, 4, 0]},
         {"kind": "pentahedral_perm", "perm": [1, 0, 2, 3, 4]}],
        {"order": 120, "type": "other",
         "histogram": {"1": 1, "2": 25, "3": 20, "4": 30, "5": 24, "6": 20},
         "notes": "z5 eliminated by sum z = 0"})
    e = "eps"
    add("p5-hyper", 5, "hyperelliptic curve y^2 = x(x^10 + 11x^5 - 1)",
        {"kind": "hyper_branch", "B": form_json("x*y*(x^10 + 11*x^5*y^5 - y^10)", ("x", "y"))},
        [projmap(diag(f"{e}^3", f"{e}^2")),
         projmap([[f"-({e} - {e}^4)", f"{e}^2 - {e}^3"], [f"{e}^2 - {e}^3", f"{e} - {e}^4"]]),
         projmap([[0, -1], [1, 0]])],
        {"order": 60, "type": "icosahedral", "full_order": 120,
         "notes": "Moebius group of the branch form; the hyperelliptic involution is central"})


def build():
    ENTRIES.clear()
    quadric_entries()
    cone_entries()
    net_entries()
    genus6_entries()
    special_entries()
    return {"field_index": 120, "entries": ENTRIES}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    doc = build()
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {len(doc['entries'])} entries to {OUT}")
    if args.check:
        bad = 0
        for entry in load_catalog(OUT.read_bytes()):
            rep = verify_entry(entry, seed=1)
            bad += not rep.ok
            print(f"{'ok ' if rep.ok else 'BAD'} {rep.id:24s} order {rep.order:4d} {rep.type:14s} {rep.problems}")
        return 1 if bad else 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
