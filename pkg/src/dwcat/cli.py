"""Command-line front end.

Exit codes are a contract: 0 for success, 1 for a mathematical failure
(an identity violated, a check battery red, a roundtrip mismatch), 2 for
input that does not parse or validate, and 3 when a classification run
disagrees with a requested expected table.  Reports are canonical JSON —
sorted keys, two-space indent, trailing newline, no timings — so byte
comparison across runs and worker counts is meaningful.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import islice

import numpy as np

from .algebras import (
    coset_twisted_algebra,
    function_algebra,
    twisted_group_algebra,
    verify_algebra,
)
from .center import (
    CocycleData,
    CoherenceError,
    check_module,
    gauge_twist,
    modules_equal,
    permutation_module,
    relabeled,
)
from .classify import classify_pair, compare_with_expected, dihedral_expected
from .cohomology import Cochain, bar_differential_values, cohomology_group
from .fileio import (
    FileFormatError,
    algebra_dict,
    cocycle_file_dict,
    group_spec_dict,
    load_algebra,
    load_cocycle,
    load_group,
    load_module,
    module_dict,
)
from .groups import FiniteGroup
from .induction import Induction
from .localmod import (
    check_right_module,
    component_split,
    extract_component,
    fpdim_report,
    is_local,
    module_over_cosets,
    regular_module,
    verify_local_layer,
)
from .phases import Phase

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2
EXIT_EXPECT = 3


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _elements(text: str, G: FiniteGroup, what: str) -> list[int]:
    try:
        out = sorted(set(int(t) for t in text.split(",") if t.strip() != ""))
    except ValueError as exc:
        raise FileFormatError(f"bad {what} list {text!r}: {exc}") from exc
    if not out or out[0] < 0 or out[-1] >= G.n:
        raise FileFormatError(f"{what} indices out of range for |G|={G.n}")
    return out


def _subgroup(text: str, G: FiniteGroup) -> list[int]:
    H = _elements(text, G, "subgroup")
    if not G.is_subgroup(H):
        raise FileFormatError(f"{text!r} is not a subgroup")
    return H


def _context(args) -> tuple[FiniteGroup, Cochain]:
    G = load_group(args.group)
    _, omega = load_cocycle(args.cocycle, G)
    return G, omega


def _cocycle_failures(G: FiniteGroup, ch: Cochain) -> dict:
    """Normalization and the cocycle condition, with first witnesses."""
    out: dict = {"normalized": ch.is_normalized()}
    d = bar_differential_values(ch.values, G.table, ch.modulus) % ch.modulus
    bad = np.argwhere(d)
    out["cocycle"] = not len(bad)
    if len(bad):
        out["first_violation"] = [int(v) for v in bad[0]]
        out["violations"] = int(len(bad))
    return out


def _jobs(args) -> int:
    if getattr(args, "jobs", None) is not None:
        jobs = args.jobs
    else:
        try:
            jobs = int(os.environ.get("DWCAT_JOBS", "1"))
        except ValueError:
            jobs = 1
    if jobs < 1:
        raise FileFormatError("--jobs must be a positive integer")
    return jobs


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_group(args) -> int:
    G = load_group(args.group)
    subs = []
    everything = list(range(G.n))
    for S in G.subgroups():
        subs.append(
            {
                "elements": [int(x) for x in S],
                "order": len(S),
                "normal": G.is_normal_in(S, everything),
            }
        )
    report = {
        "kind": "group",
        "order": G.n,
        "abelian": G.is_abelian,
        "spec": group_spec_dict(G),
        "subgroups": subs,
    }
    _emit(report, args.out)
    return EXIT_OK


def cmd_cocycle_gen(args) -> int:
    G = load_group(args.group)
    if args.family is not None:
        _, omega = load_cocycle(args.family, G)
    else:
        modulus = args.modulus if args.modulus else G.n * G.n
        coh = cohomology_group(G, args.degree, modulus)
        reps = list(islice(coh.class_representatives(), args.index + 1))
        if len(reps) <= args.index:
            raise FileFormatError(
                f"cohomology class index {args.index} out of range "
                f"({len(reps)} classes)"
            )
        omega = reps[args.index]
    _emit(cocycle_file_dict(omega), args.out)
    return EXIT_OK


def cmd_cocycle_check(args) -> int:
    G = load_group(args.group) if args.group else None
    G, omega = load_cocycle(args.cocycle, G)
    report = {
        "kind": "cocycle_check",
        "group_order": G.n,
        "arity": omega.arity,
        "modulus": omega.modulus,
    }
    report.update(_cocycle_failures(G, omega))
    _emit(report, args.out)
    ok = report["normalized"] and report["cocycle"]
    return EXIT_OK if ok else EXIT_MATH


def cmd_identities(args) -> int:
    G, omega = _context(args)
    report: dict = {
        "kind": "identities",
        "group_order": G.n,
        "cocycle": args.cocycle,
    }
    gate = _cocycle_failures(G, omega)
    report["input_cocycle"] = gate
    if not (gate["normalized"] and gate["cocycle"]):
        report["all_passed"] = False
        _emit(report, args.out)
        return EXIT_MATH
    data = CocycleData(G, omega, validate=False)
    results = {}
    ok = True
    for name, (count, first) in data.verify_identities().items():
        results[name] = {
            "violations": int(count),
            "first": None if first is None else [int(v) for v in first],
        }
        ok = ok and count == 0
    report["results"] = results
    report["all_passed"] = ok
    _emit(report, args.out)
    return EXIT_OK if ok else EXIT_MATH


def cmd_module_check(args) -> int:
    G, omega = _context(args)
    data = CocycleData(G, omega)
    V = load_module(args.module, data)
    report = {"kind": "module_check", "dim": V.dim, "modulus": V.modulus}
    try:
        check_module(V)
    except CoherenceError as exc:
        report["ok"] = False
        report["error"] = str(exc)
        _emit(report, args.out)
        return EXIT_MATH
    report["ok"] = True
    _emit(report, args.out)
    return EXIT_OK


def _check_modulus(modulus, data) -> None:
    if modulus is not None and modulus % data.modulus:
        raise FileFormatError(
            f"--modulus must be a multiple of the cocycle modulus "
            f"{data.modulus}"
        )


def _build_representative(data, H, N, modulus, index):
    _check_modulus(modulus, data)
    cls = classify_pair(data, H, N, modulus)
    if cls.solutions.is_empty:
        return cls, None
    if index >= len(cls.representatives):
        raise FileFormatError(
            f"representative index {index} out of range "
            f"({len(cls.representatives)} available)"
        )
    kappa, eps = cls.layout.tables_from_vector(cls.representatives[index])
    A = coset_twisted_algebra(data, H, N, kappa, eps, cls.layout.modulus)
    return cls, A


def cmd_algebra_build(args) -> int:
    G, omega = _context(args)
    data = CocycleData(G, omega)
    H = _subgroup(args.subgroup, G)
    N = _subgroup(args.normal, G)
    if not set(N) <= set(H) or not G.is_normal_in(N, H):
        raise FileFormatError("--normal must be a normal subgroup of --subgroup")
    cls, A = _build_representative(data, H, N, args.modulus, args.rep)
    if A is None:
        sys.stderr.write("no pairing solutions for this (H, N)\n")
        return EXIT_MATH
    _emit(algebra_dict(A), args.out)
    return EXIT_OK


def cmd_algebra_verify(args) -> int:
    G, omega = _context(args)
    data = CocycleData(G, omega)
    A = load_algebra(args.algebra, data)
    results = verify_algebra(A)
    ok = all(v == "ok" for v in results.values())
    report = {
        "kind": "algebra_check",
        "dim": A.dim,
        "results": results,
        "all_passed": ok,
    }
    _emit(report, args.out)
    return EXIT_OK if ok else EXIT_MATH


def cmd_induce(args) -> int:
    G, omega = _context(args)
    data = CocycleData(G, omega)
    H = _subgroup(args.subgroup, G)
    ind = Induction(data, H)
    V = load_module(args.module, ind.sub_data)
    try:
        check_module(V)
    except CoherenceError as exc:
        sys.stderr.write(f"input module is invalid: {exc}\n")
        return EXIT_MATH
    _emit(module_dict(ind.module(V)), args.out)
    return EXIT_OK


def _random_modules(ind: Induction, count: int, seed: int):
    rng = np.random.default_rng(seed)
    K = ind.sub_data.group
    out = []
    for t in range(count):
        V = permutation_module(ind.sub_data, int(rng.integers(K.n)))
        mmod = int(rng.integers(2, 13))
        V = gauge_twist(V, rng.integers(0, mmod, size=V.dim), mmod)
        if t % 2:
            V = relabeled(V, [int(x) for x in rng.permutation(V.dim)])
        out.append(V)
    return out


def cmd_roundtrip(args) -> int:
    G, omega = _context(args)
    data = CocycleData(G, omega)
    H = _subgroup(args.subgroup, G)
    ind = Induction(data, H)
    if args.module:
        modules = [load_module(args.module, ind.sub_data)]
    else:
        modules = _random_modules(ind, args.random, args.seed)
    rows = []
    ok = True
    for V in modules:
        res = verify_local_layer(ind, V)
        ok = ok and all(v == "ok" for v in res.values())
        rows.append({"dim": V.dim, "results": res})
    report = {
        "kind": "roundtrip",
        "subgroup": H,
        "index": ind.r,
        "modules": rows,
        "all_passed": ok,
    }
    _emit(report, args.out)
    return EXIT_OK if ok else EXIT_MATH


def cmd_localmod(args) -> int:
    G, omega = _context(args)
    data = CocycleData(G, omega)
    H = _subgroup(args.subgroup, G)
    N = _subgroup(args.normal, G)
    if not set(N) <= set(H) or not G.is_normal_in(N, H):
        raise FileFormatError("--normal must be a normal subgroup of --subgroup")
    fp = fpdim_report(G, H, N)
    report: dict = {
        "kind": "localmod",
        "subgroup": H,
        "normal": N,
        "fpdim": {
            k: (f"{v.numerator}/{v.denominator}" if k != "consistent" else v)
            for k, v in fp.items()
        },
    }
    cls, A = _build_representative(data, H, N, args.modulus, args.rep)
    if A is None:
        report["checks"] = {"solutions": "absent"}
        report["all_passed"] = False
        _emit(report, args.out)
        return EXIT_MATH
    ind = Induction(data, H)
    F = function_algebra(data, H)
    M = module_over_cosets(F, A)
    checks: dict = {}
    try:
        check_right_module(M)
        checks["coset_action_axioms"] = "ok"
    except CoherenceError as exc:
        checks["coset_action_axioms"] = str(exc)
    checks["local_over_cosets"] = "ok" if is_local(M) else "double braiding acts"
    checks["regular_local"] = (
        "ok" if is_local(regular_module(A)) else "double braiding acts"
    )
    try:
        comps = component_split(M)
        sizes = sorted(len(c) for c in comps)
        dim_ok = all(s * ind.r == A.dim for s in sizes)
        checks["component_split"] = (
            "ok" if dim_ok else f"component sizes {sizes} do not tile {A.dim}"
        )
        back = extract_component(M, ind, 0)
        kappa, eps = cls.layout.tables_from_vector(cls.representatives[args.rep])
        N_sub = [ind.sub_index[x] for x in N]
        B = twisted_group_algebra(
            ind.sub_data, N_sub, kappa, eps, cls.layout.modulus
        )
        checks["extracted_subalgebra_module"] = (
            "ok" if modules_equal(back, B.module) else "extraction differs"
        )
    except CoherenceError as exc:
        checks["component_split"] = str(exc)
    ok = all(v == "ok" for v in checks.values()) and fp["consistent"]
    report["checks"] = checks
    report["all_passed"] = ok
    _emit(report, args.out)
    return EXIT_OK if ok else EXIT_MATH


# ---------------------------------------------------------------------------
# classification


def _classify_task(task) -> dict:
    (table, omega_values, omega_modulus, H, N, modulus, max_reps) = task
    G = FiniteGroup(table)
    omega = Cochain(
        G, 3, omega_modulus, np.array(omega_values, dtype=np.int64)
    )
    data = CocycleData(G, omega, validate=False)
    H, N = list(H), list(N)
    cls = classify_pair(data, H, N, modulus, max_representatives=max_reps)
    r = G.n // len(H)
    qdim = len(N) * r
    entries = []
    for vec in cls.representatives:
        kappa, eps = cls.layout.tables_from_vector(vec)
        A = coset_twisted_algebra(data, H, N, kappa, eps, cls.layout.modulus)
        checks = verify_algebra(A)
        entries.append(
            {
                "H": H,
                "N": N,
                "kappa": [
                    [a, b, Phase(int(kappa[a, b]), cls.layout.modulus).as_fraction_str()]
                    for a in range(len(N))
                    for b in range(len(N))
                    if kappa[a, b] % cls.layout.modulus
                ],
                "epsilon": [
                    [h, n, Phase(int(eps[h, n]), cls.layout.modulus).as_fraction_str()]
                    for h in range(len(H))
                    for n in range(len(N))
                    if eps[h, n] % cls.layout.modulus
                ],
                "qdim": qdim,
                "betaA": len(N),
                "beta1": r,
                "checks": checks,
                "char_obstruction": _prime_factors(qdim),
            }
        )
    empty = cls.solutions.is_empty
    return {
        "H": H,
        "N": N,
        "modulus": modulus,
        "solutions": "0" if empty else str(cls.solutions.cardinality()),
        "classes": int(cls.class_count),
        "class_invariants": [int(f) for f in cls.class_factors],
        "truncated": bool(cls.truncated),
        "entries": entries,
    }


def _conjugacy_canonical(G: FiniteGroup, H, N) -> tuple[tuple, tuple]:
    best = None
    for g in range(G.n):
        cand = (
            tuple(sorted(int(G.conj[g, x]) for x in H)),
            tuple(sorted(int(G.conj[g, x]) for x in N)),
        )
        if best is None or cand < best:
            best = cand
    return best


def cmd_classify(args) -> int:
    G, omega = _context(args)
    if args.char is not None and not _is_prime(args.char):
        raise FileFormatError("--char must be a prime number")
    jobs = _jobs(args)
    data = CocycleData(G, omega)
    _check_modulus(args.modulus, data)

    tasks = []
    for H in G.subgroups():
        for N in G.normal_subgroups_of(H):
            modulus = (
                args.modulus
                if args.modulus
                else len(H) * len(N) * data.modulus
            )
            tasks.append(
                (
                    G.table.tolist(),
                    [int(v) for v in omega.values.ravel()],
                    omega.modulus,
                    tuple(H),
                    tuple(N),
                    modulus,
                    args.max_representatives,
                )
            )
    tasks.sort(key=lambda t: (t[3], t[4]))

    if jobs == 1:
        groups = [_classify_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_classify_task, tasks))

    for grp in groups:
        for entry in grp["entries"]:
            if any(v != "ok" for v in entry["checks"].values()):
                sys.stderr.write(
                    "internal consistency failure: representative for "
                    f"H={entry['H']} N={entry['N']} fails "
                    f"{[k for k, v in entry['checks'].items() if v != 'ok']}\n"
                )
                return EXIT_MATH

    report: dict = {
        "kind": "classification",
        "group": args.group,
        "group_order": G.n,
        "cocycle": args.cocycle,
        "modulus": args.modulus if args.modulus else None,
        "counts": [
            {
                "H": g["H"],
                "N": g["N"],
                "classes": g["classes"],
                "solutions": g["solutions"],
            }
            for g in groups
        ],
        "entries": [e for g in groups for e in g["entries"]],
        "total_classes": sum(g["classes"] for g in groups),
    }

    if args.conjugation_dedup:
        canon_seen = set()
        for g in groups:
            canon = _conjugacy_canonical(G, g["H"], g["N"])
            canon_seen.add(canon)
            note = {"H": list(canon[0]), "N": list(canon[1])}
            for e in report["entries"]:
                if e["H"] == g["H"] and e["N"] == g["N"]:
                    e["conjugate_of"] = note
            for c in report["counts"]:
                if c["H"] == g["H"] and c["N"] == g["N"]:
                    c["conjugate_of"] = note
        report["conjugacy_pair_classes"] = len(canon_seen)

    exit_code = EXIT_OK
    if args.expect == "dihedral":
        if G.n % 4 != 2 or not args.cocycle.startswith("dihedral:"):
            raise FileFormatError(
                "--expect dihedral needs an odd dihedral group with a "
                "'dihedral:p' cocycle"
            )
        p = int(args.cocycle.split(":", 1)[1])
        comparison = compare_with_expected(
            [_CountsOnly(g) for g in groups], dihedral_expected(G, p)
        )
        report["expected_comparison"] = {
            "ok": comparison.ok,
            "matches": [
                {"H": list(H), "N": list(N), "classes": c}
                for H, N, c in comparison.matches
            ],
            "mismatches": [
                {"H": list(H), "N": list(N), "observed": obs, "expected": exp}
                for H, N, obs, exp in comparison.mismatches
            ],
            "flagged": [
                {"H": list(H), "N": list(N), "observed": obs, "expected": exp}
                for H, N, obs, exp in comparison.flagged_notes
            ],
        }
        if not comparison.ok:
            exit_code = EXIT_EXPECT

    if args.char is not None:
        kept = [e for e in report["entries"] if e["qdim"] % args.char]
        report["char"] = args.char
        report["char_filtered"] = len(report["entries"]) - len(kept)
        report["entries"] = kept

    _emit(report, args.out)
    return exit_code


class _CountsOnly:
    """Adapter giving compare_with_expected its (layout, count) view."""

    class _Layout:
        __slots__ = ("H", "N")

        def __init__(self, H, N):
            self.H = tuple(H)
            self.N = tuple(N)

    def __init__(self, group_result: dict):
        self.layout = self._Layout(group_result["H"], group_result["N"])
        self._classes = group_result["classes"]

    @property
    def class_count(self) -> int:
        return self._classes


# ---------------------------------------------------------------------------
# argument parsing


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="dwcat",
        description="Exact computations in twisted Drinfeld doubles: "
        "cocycles, identity sweeps, Frobenius algebras, induction, "
        "local modules, classification.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, cocycle=True):
        p.add_argument("--group", required=True, help="group spec or preset")
        if cocycle:
            p.add_argument(
                "--cocycle",
                required=True,
                help="cocycle file or 'dihedral:p'",
            )
        p.add_argument("--out", help="write the JSON output here")

    p = sub.add_parser("group", help="validate and describe a group")
    common(p, cocycle=False)
    p.set_defaults(fn=cmd_group)

    coc = sub.add_parser("cocycle", help="generate or check cocycles")
    csub = coc.add_subparsers(dest="subcommand", required=True)
    p = csub.add_parser("gen", help="emit a solver-generated cocycle file")
    common(p, cocycle=False)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--modulus", type=int, help="coefficient modulus (default |G|^2)")
    p.add_argument("--index", type=int, default=0, help="cohomology class index")
    p.add_argument("--family", help="closed-form family spec, e.g. 'dihedral:3'")
    p.set_defaults(fn=cmd_cocycle_gen)
    p = csub.add_parser("check", help="validate a cocycle file")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--group", help="group spec (needed for 'dihedral:p')")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_cocycle_check)

    p = sub.add_parser("identities", help="run the six structure-phase sweeps")
    common(p)
    p.set_defaults(fn=cmd_identities)

    mod = sub.add_parser("module", help="module operations")
    msub = mod.add_subparsers(dest="subcommand", required=True)
    p = msub.add_parser("check", help="verify a module spec file")
    common(p)
    p.add_argument("--module", required=True)
    p.set_defaults(fn=cmd_module_check)

    alg = sub.add_parser("algebra", help="build or verify algebras")
    asub = alg.add_subparsers(dest="subcommand", required=True)
    p = asub.add_parser("build", help="build a classification representative")
    common(p)
    p.add_argument("--subgroup", required=True, help="comma-separated indices")
    p.add_argument("--normal", required=True, help="comma-separated indices")
    p.add_argument("--modulus", type=int, help="pairing modulus override")
    p.add_argument("--rep", type=int, default=0, help="representative index")
    p.set_defaults(fn=cmd_algebra_build)
    p = asub.add_parser("verify", help="run the full check battery on a dump")
    common(p)
    p.add_argument("--algebra", required=True)
    p.set_defaults(fn=cmd_algebra_verify)

    p = sub.add_parser("induce", help="induce a subgroup module up")
    common(p)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--module", required=True, help="module spec over the subgroup")
    p.set_defaults(fn=cmd_induce)

    p = sub.add_parser(
        "roundtrip", help="induce, check locality, extract, compare"
    )
    common(p)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--module", help="module spec over the subgroup")
    p.add_argument("--random", type=int, default=5, help="random module count")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_roundtrip)

    p = sub.add_parser(
        "localmod", help="local-module checks for one classification entry"
    )
    common(p)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--normal", required=True)
    p.add_argument("--modulus", type=int)
    p.add_argument("--rep", type=int, default=0)
    p.set_defaults(fn=cmd_localmod)

    p = sub.add_parser("classify", help="enumerate all (H, N) families")
    common(p)
    p.add_argument("--modulus", type=int, help="pairing modulus override")
    p.add_argument("--char", type=int, help="drop entries whose dimension vanishes mod this prime")
    p.add_argument("--conjugation-dedup", action="store_true")
    p.add_argument("--expect", choices=["dihedral"])
    p.add_argument("--jobs", type=int, help="worker processes (or DWCAT_JOBS)")
    p.add_argument(
        "--max-representatives",
        type=int,
        default=512,
        help="cap on emitted representatives per (H, N)",
    )
    p.set_defaults(fn=cmd_classify)

    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except FileFormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CoherenceError as exc:
        sys.stderr.write(f"mathematical failure: {exc}\n")
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
