"""Command line driver: `relhom run` executes a session file, `relhom
selftest` runs the seeded property battery.

Reports are plain dicts.  The machine format is JSON with sorted keys, so a
fixed seed gives byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import warnings

from . import ab4_local, bounded_model, towers
from .complexes import (ChainComplex, WindowTooSmall, concentrated, homology, interior_degrees,
                        is_k_I_we, truncate)
from .exact_linalg import IntegersMod, QuotientPoly
from .injclass import InjectiveClass, make_ideal, spec_primes
from .modules import FPModule, ResourceLimitError, describe, is_isomorphic
from .session import Session, SessionError, SessionWriter, parse_session, parse_ring

REPORT_HEADER = "relhom-report 1"


class TaskFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# tasks


def _as_complex(obj) -> ChainComplex:
    return concentrated(obj, 0, 0) if isinstance(obj, FPModule) else obj


def _homology_table(X: ChainComplex, window):
    lo, hi = window
    return {str(i): describe(homology(X, i)) for i in interior_degrees(X) if lo <= i <= hi}


def _table_window(table):
    keys = [int(k) for k in table]
    return [min(keys), max(keys)] if keys else None


def task_resolve(S: Session, args, opts):
    X = _as_complex(S.get(args[0], ("module", "complex"), 0))
    cls = S.get(args[1], "class", 0)
    depth = int(args[2]) if len(args) > 2 else opts["depth"]
    RX = bounded_model.fibrant_replacement(X, cls, depth)
    return {"verdict": "PASS", "window": list(RX.window), "depth": depth,
            "complete": RX.exhaustive, "homology": _homology_table(RX.complex, opts["window"]),
            "terms": {str(i): describe(RX.complex.obj(i)) for i in RX.complex.degrees()}}


def task_homology(S: Session, args, opts):
    X = _as_complex(S.get(args[0], ("module", "complex"), 0))
    table = _homology_table(X, opts["window"])
    return {"verdict": "PASS", "window": _table_window(table), "depth": None, "homology": table}


def task_factorize(S: Session, args, opts):
    f = S.get(args[0], "chainmap", 0)
    cls = S.get(args[1], "class", 0)
    modes = [args[2]] if len(args) > 2 else ["cof-trivfib", "trivcof-fib"]
    out = {"depth": opts["depth"], "modes": {}}
    ok = True
    for mode in modes:
        fac = bounded_model.factor_cof_trivfib if mode == "cof-trivfib" else bounded_model.factor_trivcof_fib
        res = fac(f, cls)
        exact = (res.second @ res.first) == f
        good = exact and res.certified.get("first") is not None and res.certified.get("second") is not None
        ok &= good
        out["modes"][mode] = {"composite exact": exact, "first": res.certified.get("first"),
                              "second": res.certified.get("second"),
                              "middle": repr(res.mid), "window": list(res.certified["window"])}
    out["window"] = list(next(iter(out["modes"].values()))["window"])
    out["verdict"] = "PASS" if ok else "FAIL"
    return out


def task_lift(S: Session, args, opts):
    i, p, top, bottom = (S.get(a, "chainmap", 0) for a in args[:4])
    cls = S.get(args[4], "class", 0)
    mode = args[5] if len(args) > 5 else "cof-vs-trivfib"
    prob = bounded_model.LiftingProblem(i, p, top, bottom)
    h = bounded_model.solve_lifting(prob, cls, mode)
    h2 = bounded_model.solve_lifting_linear(prob)
    ok = prob.check(h) and h2 is not None and prob.check(h2)
    return {"verdict": "PASS" if ok else "FAIL", "mode": mode, "depth": None,
            "window": [h.source.lo, h.source.hi], "constructive": prob.check(h),
            "linear": h2 is not None and prob.check(h2)}


def task_approximate(S: Session, args, opts):
    X = _as_complex(S.get(args[0], ("module", "complex"), 0))
    cls = S.get(args[1], "class", 0)
    N = int(args[2]) if len(args) > 2 else opts["depth"]
    rep = towers.verify_model_approximation(X, cls, N)
    out = rep.as_dict()
    out["verdict"] = "PASS" if rep.passed else "FAIL"
    out["depth"] = N
    out["note"] = f"verified to depth {N} inside the window"
    return out


def task_tower_factorize(S: Session, args, opts):
    T = S.get(args[0], "tower", 0)
    cls = S.get(args[1], "class", 0)
    mode = args[2] if len(args) > 2 else "trivcof-fib"
    fac = towers.factorize_tower(towers.to_point(T), mode, cls)
    ok = all(v is not None for v in fac.certified.values())
    mid = fac.mid.levels[-1]
    return {"verdict": "PASS" if ok else "FAIL", "mode": mode, "levels": fac.levels,
            "certified": fac.certified, "depth": T.height, "window": [mid.lo, mid.hi]}


def task_ab4(S: Session, args, opts):
    cls = S.get(args[0], "class", 0)
    n = int(args[1])
    family = [S.get(a, "module", 0) for a in args[2:]]
    rep = ab4_local.check_AB4_I_n(family, cls, n, opts["depth"])
    out = rep.as_dict()
    out["verdict"] = "PASS" if rep.passed else "FAIL"
    return out


def task_cech(S: Session, args, opts):
    from .session import _element_list
    M = S.get(args[0], "module", 0)
    xs = _element_list(S.ring, " ".join(args[1:]))
    H = {str(j): describe(ab4_local.cech_local_cohomology(M, xs, j)) for j in range(len(xs) + 2)}
    gamma = None
    if len(xs) == 1:
        G = ab4_local.gamma_torsion(M, make_ideal(S.ring, xs[0]))[0]
        gamma = is_isomorphic(G, ab4_local.cech_local_cohomology(M, xs, 0))
    ok = all(v == "0" for j, v in H.items() if int(j) > len(xs)) and gamma is not False
    return {"verdict": "PASS" if ok else "FAIL", "cohomology": H, "H0 equals torsion": gamma,
            "window": [0, len(xs) + 1], "depth": None}


def task_hull(S: Session, args, opts):
    from .session import _element_list
    (g,) = _element_list(S.ring, " ".join(args))
    P = ab4_local.prime_ideal(make_ideal(S.ring, g))
    E, emb = ab4_local.injective_hull(S.ring, P)
    return {"verdict": "PASS", "prime": str(P), "hull": describe(E),
            "injective": ab4_local.is_injective(E), "window": None, "depth": None}


def task_local_bound(S: Session, args, opts):
    M = S.get(args[0], ("module", "complex"), 0)
    cls = S.get(args[1], "class", 0)
    depth = int(args[2]) if len(args) > 2 else opts["depth"]
    rep = ab4_local.resolution_homology_bound_check(M, cls, depth)
    return {"verdict": "PASS" if rep["passed"] else "FAIL", "window": list(rep["window"]),
            "depth": depth, "vanishing": {str(k): v for k, v in rep["vanishing"].items()},
            "comparison": {str(k): v for k, v in rep.get("comparison", {}).items()}}


def task_check_axioms(S: Session, args, opts):
    cls = S.get(args[0], "class", 0)
    cases = int(args[1]) if len(args) > 1 else 3
    rng = random.Random(opts["seed"])
    suites = {"factorization": suite_factorization(cls, rng, cases),
              "lifting": suite_lifting(cls, rng, cases)}
    ok = all(s["verdict"] == "PASS" for s in suites.values())
    return {"verdict": "PASS" if ok else "FAIL", "suites": suites, "window": None,
            "depth": opts["depth"]}


TASK_RUNNERS = {
    "resolve": task_resolve, "homology": task_homology, "factorize": task_factorize,
    "lift": task_lift, "approximate": task_approximate, "tower-factorize": task_tower_factorize,
    "ab4": task_ab4, "cech": task_cech, "hull": task_hull, "local-bound": task_local_bound,
    "check-axioms": task_check_axioms,
}


def run(session: Session, options=None) -> dict:
    """Execute the tasks in order; an error in one task is recorded and the
    others still run."""
    opts = dict(session.options)
    opts.update({k: v for k, v in (options or {}).items() if v is not None})
    results = []
    with _cap(opts.get("cap")), warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for t in session.tasks:
            entry = {"task": t.kind, "args": list(t.args), "line": t.line}
            try:
                entry.update(TASK_RUNNERS[t.kind](session, t.args, opts))
            except SessionError as e:
                entry.update({"verdict": "ERROR", "error": f"line {t.line}: {e.message}"})
            except (ValueError, ResourceLimitError, WindowTooSmall, IndexError, TaskFailure) as e:
                entry.update({"verdict": "ERROR", "error": f"{type(e).__name__}: {e}"})
            results.append(entry)
    failed = sum(r["verdict"] != "PASS" for r in results)
    return {"header": REPORT_HEADER, "ring": str(session.ring),
            "options": {k: list(v) if isinstance(v, tuple) else v for k, v in sorted(opts.items())},
            "tasks": results, "failed": failed}


class _cap:
    """Temporarily set the generator cap through the environment."""

    def __init__(self, cap):
        self.cap = cap

    def __enter__(self):
        self.old = os.environ.get("RELHOM_MAX_GENERATORS")
        if self.cap is not None and self.old is None:
            os.environ["RELHOM_MAX_GENERATORS"] = str(self.cap)

    def __exit__(self, *exc):
        if self.old is None:
            os.environ.pop("RELHOM_MAX_GENERATORS", None)


# ---------------------------------------------------------------------------
# the property battery


def _suite(results, counterexamples):
    failures = [c for c in counterexamples if c is not None]
    return {"verdict": "PASS" if not failures else "FAIL", "cases": results,
            "failures": len(failures), "counterexamples": failures[:3]}


def _replay_map(f, cls, task_words):
    w = SessionWriter(f.ring)
    X = w.complex(f.source)
    Y = w.complex(f.target)
    g = w.chain_map(f, X, Y)
    c = w.cls(cls)
    w.task(*[word.format(map=g, cls=c) for word in task_words])
    return w.text()


def suite_factorization(cls, rng, cases):
    from .generators import random_chain_map, random_complex
    bad = []
    for _ in range(cases):
        X = random_complex(cls.ring, rng, -1, 0)
        Y = random_complex(cls.ring, rng, -1, 0)
        f = random_chain_map(X, Y, rng)
        for fac in (bounded_model.factor_cof_trivfib, bounded_model.factor_trivcof_fib):
            res = fac(f, cls)
            ok = (res.second @ res.first) == f and all(res.certified.get(k) for k in ("first", "second"))
            bad.append(None if ok else _replay_map(f, cls, ["factorize", "{map}", "{cls}"]))
    return _suite(cases, bad)


def suite_lifting(cls, rng, cases):
    from .generators import certified_square
    bad = []
    for _ in range(cases):
        for mode in bounded_model.MODES:
            prob = certified_square(cls, mode, rng)
            h = bounded_model.solve_lifting(prob, cls, mode)
            h2 = bounded_model.solve_lifting_linear(prob)
            ok = prob.check(h) and h2 is not None and prob.check(h2)
            bad.append(None if ok else f"lifting square failed in mode {mode}")
    return _suite(cases, bad)


def suite_truncation(cls, rng, cases):
    from .generators import random_complex
    bad = []
    for _ in range(cases):
        X = random_complex(cls.ring, rng, -2, 1, bounded_above_at=None)
        n = rng.randint(-2, 0)
        t = truncate(X, n)[1]
        ok = is_k_I_we(t, n, cls)
        if not ok:
            w = SessionWriter(cls.ring)
            name = w.complex(X)
            w.task("homology", name)
            bad.append(w.text())
        else:
            bad.append(None)
    return _suite(cases, bad)


def suite_adjunction(cls, rng, cases):
    from .generators import random_chain_map, random_complex
    bad = []
    for _ in range(cases):
        X = random_complex(cls.ring, rng, -1, 1, bounded_above_at=None)
        Yc = random_complex(cls.ring, rng, -1, 1, bounded_above_at=None)
        Y = towers.tow(Yc, 2)
        L = towers.lim_tower(Y)
        f = random_chain_map(X, L, rng)
        rep = towers.adjunction_roundtrip(X, Y, f=f)
        g = towers.adjoint_to_tower(f, Y, X)
        rep.update(towers.adjunction_roundtrip(X, Y, g=g))
        bad.append(None if all(rep.values()) else "adjunction round trip failed")
    return _suite(cases, bad)


def suite_approximation(cls, rng, cases, N=4):
    from .generators import random_complex
    bad = []
    for _ in range(cases):
        X = random_complex(cls.ring, rng, -1, 1, bounded_above_at=None)
        rep = towers.verify_model_approximation(X, cls, N)
        if rep.passed:
            bad.append(None)
        else:
            w = SessionWriter(cls.ring)
            name = w.complex(X)
            c = w.cls(cls)
            w.task("approximate", name, c, N)
            bad.append(w.text())
    return _suite(cases, bad)


def suite_homology_bound(cls, rng, cases):
    R = cls.ring
    bad = []
    for a in R.elements()[:max(cases, 0)]:
        M = FPModule.cyclic(R, a)
        rep = ab4_local.resolution_homology_bound_check(M, cls, 6)
        bad.append(None if rep["passed"] else f"homology bound fails for R/({a})")
    return _suite(min(cases, len(R.elements())), bad)


def suite_matlis(R, cases):
    if cases <= 0:
        return _suite(0, [])
    primes = ab4_local.primes_of(R)
    hulls = [ab4_local.injective_hull(R, P)[0] for P in primes]
    bad = []
    from .modules import hom_module
    for P, E in zip(primes, hulls):
        for Q, F in zip(primes, hulls):
            nonzero = not hom_module(E, F).module.is_zero()
            if nonzero != Q.ideal.contains_ideal(P.ideal):
                bad.append(f"Hom(E({P}), E({Q})) nonzero = {nonzero}")
            G = ab4_local.gamma_torsion(F, P)[0]
            want = F if Q.ideal.contains_ideal(P.ideal) else FPModule.zero(R)
            if not is_isomorphic(G, want):
                bad.append(f"torsion of E({Q}) at {P} is {describe(G)}")
    for a in R.elements()[:cases]:
        M = FPModule.cyclic(R, a)
        locs = [ab4_local.localize_at_prime(M, P)[0].is_zero() for P in primes]
        if M.is_zero() != all(locs):
            bad.append(f"local-to-global fails for R/({a})")
    return _suite(len(primes), bad)


def suite_cech(R, rng, cases):
    from .generators import random_element, random_module
    bad = []
    for _ in range(cases):
        M = random_module(R, rng)
        x = random_element(R, rng)
        H0 = ab4_local.cech_local_cohomology(M, [x], 0)
        G = ab4_local.gamma_torsion(M, make_ideal(R, x))[0]
        ok = is_isomorphic(H0, G) and ab4_local.cech_local_cohomology(M, [x], 2).is_zero()
        bad.append(None if ok else f"Cech H^0 differs from torsion for x = {x}")
    return _suite(cases, bad)


def suite_decomposition(cls, rng, cases):
    from .generators import trivial_fibrant_complex
    bad = []
    for _ in range(cases):
        X, _ = trivial_fibrant_complex(cls, rng)
        dec = bounded_model.decompose_trivial_fibrant(X, cls)
        ok = (dec.from_discs @ dec.to_discs) == bounded_model.identity_of(X)
        bad.append(None if ok else "disc decomposition is not an isomorphism")
    return _suite(cases, bad)


SELFTEST_RINGS = {"ZZ/4": lambda: IntegersMod(4), "ZZ/6": lambda: IntegersMod(6),
                  "F2[t]/(t^2)": lambda: QuotientPoly(2, (0, 0, 1))}


def test_classes(R):
    """All objects, all injectives, and every proper nonempty prime subset."""
    from itertools import combinations
    primes = spec_primes(R)
    out = [InjectiveClass.everything(R)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out.append(ab4_local.class_of_primes(R, primes, "all injectives"))
        for k in range(1, len(primes)):
            for S in combinations(primes, k):
                out.append(ab4_local.class_of_primes(R, S))
    return out


def selftest(rings=None, cases: int = 2, seed: int = 0) -> dict:
    """Run the property battery; the report depends only on the arguments."""
    rings = rings or list(SELFTEST_RINGS)
    report = {"header": REPORT_HEADER, "selftest": {"rings": list(rings), "cases": cases, "seed": seed},
              "rings": {}}
    failed = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in rings:
            R = SELFTEST_RINGS[name]() if name in SELFTEST_RINGS else parse_ring(name)
            rng = random.Random(f"{seed}:{name}")
            suites = {}
            if cases > 0:
                for cls in test_classes(R):
                    key = cls.label
                    suites[f"factorization [{key}]"] = suite_factorization(cls, rng, cases)
                    suites[f"lifting [{key}]"] = suite_lifting(cls, rng, cases)
                    suites[f"truncation [{key}]"] = suite_truncation(cls, rng, cases)
                    suites[f"decomposition [{key}]"] = suite_decomposition(cls, rng, cases)
                    if not cls.all_objects:
                        suites[f"homology bound [{key}]"] = suite_homology_bound(cls, rng, cases)
                        suites[f"approximation [{key}]"] = suite_approximation(cls, rng, cases)
                suites["adjunction"] = suite_adjunction(test_classes(R)[0], rng, cases)
                suites["matlis"] = suite_matlis(R, cases)
                suites["cech"] = suite_cech(R, rng, cases)
            failed += sum(s["verdict"] != "PASS" for s in suites.values())
            report["rings"][name] = suites
    report["failed"] = failed
    report["verdict"] = "PASS" if failed == 0 else "FAIL"
    return report


# ---------------------------------------------------------------------------
# output


def render(report: dict, fmt: str) -> str:
    if fmt == "machine":
        return json.dumps(report, sort_keys=True, indent=1) + "\n"
    lines = []
    if "tasks" in report:
        lines.append(f"ring {report['ring']}")
        for t in report["tasks"]:
            extra = t.get("error") or _summary(t)
            lines.append(f"{t['verdict']:5} {t['task']} {' '.join(t['args'])}  {extra}")
        lines.append(f"{report['failed']} task(s) not passing")
    else:
        for ring, suites in report["rings"].items():
            for name, s in suites.items():
                lines.append(f"{s['verdict']:5} {ring} {name} ({s['cases']} cases)")
        lines.append(f"selftest {report['verdict']}")
    return "\n".join(lines) + "\n"


def _summary(t: dict) -> str:
    keep = {k: v for k, v in t.items() if k not in ("task", "args", "line", "verdict")}
    return json.dumps(keep, sort_keys=True)


def _window(text):
    lo, hi = text.split(":")
    return int(lo), int(hi)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="relhom", description="relative homological algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    pr = sub.add_parser("run", help="execute a session file")
    pr.add_argument("session")
    pr.add_argument("--window", type=_window)
    pr.add_argument("--depth", type=int)
    pr.add_argument("--seed", type=int)
    pr.add_argument("--format", choices=("text", "machine"), default="text")
    ps = sub.add_parser("selftest", help="run the seeded property battery")
    ps.add_argument("--rings", default=",".join(SELFTEST_RINGS))
    ps.add_argument("--cases", type=int, default=2)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--format", choices=("text", "machine"), default="machine")
    args = parser.parse_args(argv)
    if args.command == "run":
        try:
            session = parse_session(args.session)
        except (OSError, SessionError) as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        report = run(session, {"window": args.window, "depth": args.depth, "seed": args.seed})
        sys.stdout.write(render(report, args.format))
        return 0 if report["failed"] == 0 else 1
    rings = [r.strip() for r in args.rings.split(",") if r.strip()]
    report = selftest(rings, args.cases, args.seed)
    sys.stdout.write(render(report, args.format))
    return 0 if report["verdict"] == "PASS" else 1


if __name__ == "__main__":
    sys.exit(main())
