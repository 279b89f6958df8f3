"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import chars, cremona, ffprobe, quadnet, ramify
from .curves import (CatalogError, CurveError, DegenerateFamilyError, InvarianceError, genus,
                     hyperelliptic_group, invariance, instantiate_moduli, load_catalog,
                     default_catalog_bytes, smoothness_check, PENDING_PROBE)
from .symmetry import GroupTooLargeError, OrderError, classify, closure, is_normal, order_histogram

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


CAP_ERRORS = (GroupTooLargeError, OrderError, ffprobe.BudgetError)


# --- reports ---------------------------------------------------------------------

@dataclass
class Check:
    name: str
    status: str  # pass | fail | skip
    details: str = ""

    def as_dict(self):
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass
class EntryResult:
    id: str
    checks: list = dc_field(default_factory=list)
    timings: dict = dc_field(default_factory=dict)

    @property
    def status(self):
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    def add(self, name, ok, details="", skip=False):
        self.checks.append(Check(name, "skip" if skip else ("pass" if ok else "fail"), details))

    def as_dict(self, timings=False):
        d = {"id": self.id, "status": self.status, "checks": [c.as_dict() for c in self.checks]}
        if timings:
            d["timings"] = self.timings
        return d


@dataclass
class Report:
    seed: int
    entries: list
    catalog: str = "default"

    @property
    def status(self):
        return "fail" if any(e.status == "fail" for e in self.entries) else "pass"

    def as_dict(self, timings=False):
        return {"catalog": self.catalog, "seed": self.seed, "status": self.status,
                "entries": [e.as_dict(timings) for e in self.entries]}

    def to_json(self, timings=False):
        return json.dumps(self.as_dict(timings), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        entries = [EntryResult(e["id"], [Check(**c) for c in e["checks"]], e.get("timings", {}))
                   for e in d["entries"]]
        return cls(d["seed"], entries, d["catalog"])


# --- catalog plumbing --------------------------------------------------------------

def _catalog_bytes(path):
    if path is None:
        return default_catalog_bytes()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read catalog: {exc}") from None


def _entries(args):
    data = _catalog_bytes(args.catalog)
    entries = load_catalog(data)
    if args.entry:
        known = {e.id: e for e in entries}
        missing = [i for i in args.entry if i not in known]
        if missing:
            raise InputError(f"unknown entry ids: {', '.join(missing)}")
        entries = [known[i] for i in args.entry]
    return data, entries


def _one_entry(args):
    if not args.entry or len(args.entry) != 1:
        raise InputError("exactly one --entry is required")
    _, entries = _entries(args)
    return instantiate_moduli(entries[0], args.seed)


# --- verify ------------------------------------------------------------------------

def _timed(result, name, fn):
    t = time.perf_counter()
    try:
        return fn()
    finally:
        result.timings[name] = round(time.perf_counter() - t, 3)


def _lines_and_conic(factors):
    lines = [f for f in factors if f.degree() == 1]
    conics = [f for f in factors if f.degree() == 2]
    return (conics[0], lines) if len(conics) == 1 and len(lines) == 3 else None


def verify_one(entry, seed=0, probe=True):
    """Run every applicable check on one catalog entry."""
    res = EntryResult(entry.id)
    res.add("load", True, entry.paper_ref)
    try:
        inst = _timed(res, "moduli", lambda: instantiate_moduli(entry, seed))
    except DegenerateFamilyError as exc:
        res.add("moduli", False, str(exc))
        return res
    if entry.params:
        res.add("moduli", True, ", ".join(f"{k}={v}" for k, v in inst.moduli.items()))
    else:
        res.add("moduli", True, "no free moduli", skip=True)
    model, exp = inst.model, inst.expected
    gens = inst.group_elements()
    bad = []
    for k, g in enumerate(gens):
        try:
            invariance(model, g)
        except InvarianceError as exc:
            bad.append(f"generator {k}: {exc}")
    res.add("invariance", not bad, "; ".join(bad) or f"{len(gens)} generators")
    G = _timed(res, "closure", lambda: closure(gens))
    res.add("order", G.order == exp["order"], f"{G.order} (expected {exp['order']})")
    gt = classify(G)
    if exp.get("type"):
        res.add("type", gt.name == exp["type"], f"{gt.name} (expected {exp['type']})")
    hist = order_histogram(G)
    if exp.get("histogram"):
        res.add("histogram", hist == exp["histogram"], json.dumps({str(k): v for k, v in hist.items()}))
    else:
        res.add("histogram", True, json.dumps({str(k): v for k, v in hist.items()}), skip=True)
    check = _timed(res, "smoothness", lambda: smoothness_check(model, seed))
    pending = check.status == "inconclusive" and check.reason == PENDING_PROBE
    if pending and probe:
        results = [ffprobe.smooth_probe(ffprobe.reduce_curve(model, sp), 1, seed=seed)
                   for sp in ffprobe.default_primes()]
        ok = all(r.status == "no-singularity-found" for r in results)
        res.add("smoothness", ok, "; ".join(f"q={r.q}: {r.status}" for r in results) + f" ({ffprobe.EVIDENCE})")
    elif pending:
        res.add("smoothness", True, PENDING_PROBE, skip=True)
    else:
        res.add("smoothness", check.status == "smooth", f"{check.status}: {check.reason}")
    try:
        g_val = genus(model, check)
        res.add("genus", g_val == inst.genus, f"{g_val} (catalog {inst.genus})")
    except CurveError as exc:
        res.add("genus", False, str(exc))
    if "quotient_genus" in exp:
        try:
            sol = _timed(res, "quotient_genus", lambda: ramify.quotient_genus(model, G, inst.genus, seed))
            res.add("quotient_genus", sol.p_quot == exp["quotient_genus"],
                    f"p' = {sol.p_quot} (expected {exp['quotient_genus']}), branch "
                    + ", ".join(f"{b.orbits}x{b.n_i}" for b in sol.branch))
        except ramify.RamifyError as exc:
            res.add("quotient_genus", False, str(exc))
    if "delta5_factors" in exp:
        try:
            factors = quadnet.catalog_factors(inst)
            c = quadnet.verify_factorization(quadnet.delta5(model), factors)
            res.add("delta5", True, f"Delta5 = {c} * product of {len(factors)} factors")
            split = _lines_and_conic(factors)
            if split:
                res.add("polar_triangle", quadnet.polar_triangle_check(*split), "three lines and a conic")
        except quadnet.FactorizationError as exc:
            res.add("delta5", False, str(exc))
    if "quadratic_bases" in exp:
        try:
            order = cremona.verify_s5(inst)
            want = exp.get("full_order", 120)
            res.add("s5_action", order == want, f"pencil group of order {order} (expected {want})")
        except cremona.CremonaError as exc:
            res.add("s5_action", False, str(exc))
    if model.kind == "hyper_branch" and "full_order" in exp:
        try:
            full, lifted = hyperelliptic_group(model, gens)
            normal = lifted is not None and is_normal(lifted, full)
            res.add("full_group", full.order == exp["full_order"] and normal,
                    f"order {full.order} (expected {exp['full_order']}), lifted subgroup "
                    + ("normal" if normal else "missing or not normal"))
        except CurveError as exc:
            res.add("full_group", False, str(exc))
    return res


def _verify_worker(job):
    data, eid, seed, probe = job
    entry = next(e for e in load_catalog(data) if e.id == eid)
    return verify_one(entry, seed, probe)


def cmd_verify(args):
    data, entries = _entries(args)
    jobs = [(data, e.id, args.seed, not args.no_probe) for e in sorted(entries, key=lambda e: e.id)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_worker, jobs))
    else:
        results = [_verify_worker(j) for j in jobs]
    report = Report(args.seed, results, args.catalog or "default")
    if args.json:
        print(report.to_json(args.timings))
    else:
        print(f"seed {args.seed}  catalog {report.catalog}")
        for r in results:
            print(f"{r.id:24s} {r.status.upper()}")
            for c in r.checks:
                print(f"    {c.name:16s} {c.status:5s} {c.details}")
        print(f"overall: {report.status.upper()}")
    return EXIT_OK if report.status == "pass" else EXIT_FAIL


# --- other commands ------------------------------------------------------------------

def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_zeuthen(args):
    sols = ramify.enumerate_zeuthen(args.genus, args.max_n, args.primes_only)
    payload = [{"n": s.n, "p_quot": s.p_quot, "branch": [[b.n_i, b.orbits] for b in s.branch]} for s in sols]
    lines = [f"n={s.n:3d}  p'={s.p_quot}  branch " + (" ".join(f"{b.orbits}x{b.n_i}" for b in s.branch) or "-")
             for s in sols]
    _emit(args, {"genus": args.genus, "solutions": payload}, lines)
    return EXIT_OK


def cmd_chars(args):
    table = chars.space_sextic_chars(args.theta, args.delta)
    d = table.as_dict()
    _emit(args, d, [f"{k:12s} {v}" for k, v in d.items()])
    return EXIT_OK


def cmd_delta5(args):
    inst = _one_entry(args)
    if inst.model.kind != "quadric_net":
        raise InputError(f"{inst.id} is not a net of quadrics")
    d5 = quadnet.delta5(inst.model)
    out = {"id": inst.id, "delta5": str(d5)}
    ok = True
    try:
        factors = quadnet.catalog_factors(inst)
        c = quadnet.verify_factorization(d5, factors)
        out.update(factorization="verified", scalar=str(c), factors=[str(f) for f in factors])
        split = _lines_and_conic(factors)
        if split:
            out["polar_triangle"] = quadnet.polar_triangle_check(*split)
            ok = out["polar_triangle"]
    except quadnet.FactorizationError as exc:
        out["factorization"] = f"failed: {exc}"
        ok = False
    except quadnet.QuadNetError as exc:
        out["factorization"] = f"no recorded factors ({exc})"
    split = quadnet.classify_split(inst.model)
    out["split_case"], out["root_systems"] = split.case, split.count
    _emit(args, out, [f"{k:16s} {v}" for k, v in out.items()])
    return EXIT_OK if ok else EXIT_FAIL


def _primes(args):
    if args.prime is None:
        return list(ffprobe.default_primes())
    if args.prime < 2:
        raise InputError("--prime must be at least 2")
    sp = ffprobe.find_prime(120, args.prime, args.ext)
    if sp.q != args.prime:
        raise InputError(f"{args.prime} is not a prime = 1 (mod 120); next one is {sp.q}")
    return [sp]


def cmd_probe(args):
    inst = _one_entry(args)
    if not 1 <= args.ext <= 12:
        raise InputError("--ext must be in 1..12")
    gens = inst.group_elements()
    G = closure(gens)
    reps = [cls[0] for cls in G.conjugacy_classes()[1:]]
    out = {"id": inst.id, "evidence": ffprobe.EVIDENCE, "primes": []}
    lines = [f"{inst.id}: {ffprobe.EVIDENCE}"]
    ok = True
    for sp in _primes(args):
        curve = ffprobe.reduce_curve(inst.model, sp)
        n1 = ffprobe.count_points(curve, 1, seed=args.seed)
        weil = ffprobe.weil_ok(n1, sp.q, inst.genus) if inst.model.kind not in ("plane_nodal",) else None
        order = ffprobe.reduced_group_order(gens, sp)
        probe = ffprobe.smooth_probe(curve, 1, seed=args.seed)
        rows = []
        for g in reps:
            rg = ffprobe.reduce_element(g, sp)
            try:
                tab = ffprobe.fixed_table(curve, rg, args.ext, args.seed)
            except ffprobe.FFError as exc:
                rows.append({"order": G.element_order(g), "error": str(exc)})
                continue
            rows.append({"order": G.element_order(g), "counts": list(tab.counts), "geometric": tab.geometric})
        entry = {"prime": sp.as_dict(), "N1": n1, "weil_ok": weil, "reduced_order": order,
                 "order_preserved": order == G.order, "smoothness": probe.as_dict(), "fixed": rows}
        ok = ok and order == G.order and weil is not False
        out["primes"].append(entry)
        lines.append(f"q={sp.q} (zeta_120 -> {sp.root_image}, generator {sp.generator})  N1={n1}"
                     f"  weil={weil}  |G mod q|={order}  smooth probe: {probe.status}")
        for r in rows:
            if "error" in r:
                lines.append(f"    order {r['order']:3d}: {r['error']}")
            else:
                lines.append(f"    order {r['order']:3d}: N_k = {r['counts']}  -> {r['geometric']}")
    _emit(args, out, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_group(args):
    inst = _one_entry(args)
    G = closure(inst.group_elements())
    gt = classify(G)
    hist = order_histogram(G)
    out = {"id": inst.id, "order": G.order, "type": gt.name, "abelian": gt.abelian,
           "histogram": {str(k): v for k, v in hist.items()},
           "classes": len(G.conjugacy_classes()), "expected_order": inst.expected["order"]}
    _emit(args, out, [f"{k:16s} {v}" for k, v in out.items()])
    return EXIT_OK if G.order == inst.expected["order"] else EXIT_FAIL


def cmd_fixed(args):
    inst = _one_entry(args)
    G = closure(inst.group_elements())
    rows, lines = [], []
    for cls in G.conjugacy_classes():
        g = cls[0]
        try:
            fs = ramify.fixed_points(inst.model, g, args.seed)
            count = "all" if fs.pointwise else fs.isolated_count
        except ramify.RamifyError as exc:
            count = f"n/a ({exc})"
        rows.append({"order": G.element_order(g), "class_size": len(cls), "fixed": count})
        lines.append(f"order {G.element_order(g):3d}  class {len(cls):3d}  fixed {count}")
    out = {"id": inst.id, "classes": rows}
    try:
        sol = ramify.quotient_genus(inst.model, G, inst.genus, args.seed)
        out["quotient"] = {"n": sol.n, "p_quot": sol.p_quot, "branch": [[b.n_i, b.orbits] for b in sol.branch]}
        lines.append(f"quotient genus {sol.p_quot}, branch "
                     + (" ".join(f"{b.orbits}x{b.n_i}" for b in sol.branch) or "-"))
    except ramify.RamifyError as exc:
        out["quotient"] = f"n/a ({exc})"
        lines.append(f"quotient genus n/a ({exc})")
    _emit(args, out, lines)
    return EXIT_OK


# --- argument parsing -------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help="catalog JSON (default: the shipped catalog)")
    common.add_argument("--entry", action="append", help="entry id (repeatable)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true")
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="curvesym", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="check catalog entries")
    v.add_argument("--no-probe", action="store_true", help="skip finite-field smoothness probes")
    v.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")
    v.set_defaults(fn=cmd_verify)
    z = sub.add_parser("zeuthen", parents=[common], help="enumerate Zeuthen solutions")
    z.add_argument("--genus", type=int, required=True)
    z.add_argument("--max-n", type=int, default=100)
    z.add_argument("--primes-only", action="store_true")
    z.set_defaults(fn=cmd_zeuthen)
    c = sub.add_parser("chars", parents=[common], help="characteristics of the space sextic")
    c.add_argument("--theta", type=int, required=True)
    c.add_argument("--delta", type=int, required=True)
    c.set_defaults(fn=cmd_chars)
    d = sub.add_parser("delta5", parents=[common], help="discriminant quintic of a net")
    d.set_defaults(fn=cmd_delta5)
    pr = sub.add_parser("probe", parents=[common], help="finite-field evidence for one entry")
    pr.add_argument("--prime", type=int)
    pr.add_argument("--ext", type=int, default=6, help="largest extension degree for fixed counts")
    pr.set_defaults(fn=cmd_probe)
    g = sub.add_parser("group", parents=[common], help="group order, type and histogram")
    g.set_defaults(fn=cmd_group)
    f = sub.add_parser("fixed", parents=[common], help="fixed points and quotient genus")
    f.set_defaults(fn=cmd_fixed)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.fn(args)
    except CAP_ERRORS as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, CatalogError, ramify.ZeuthenInputError, chars.CharInputError,
            ffprobe.ReductionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvarianceError, quadnet.QuadNetError, cremona.CremonaError, ramify.RamifyError,
            ffprobe.FFError, DegenerateFamilyError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
