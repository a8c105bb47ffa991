"""Command-line surface: reproducible enumeration and verification runs.

Reports are JSON only, deterministically ordered, and byte-identical across
runs with the same configuration.  Exit codes: 0 all checks pass, 1 at least
one claim fails, 2 a search or budget was inconclusive, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .algebra import Algebra, AlgebraConstructionError, build_nilpotent_loop, build_preprojective, build_t2, load_algebra_spec
from .errors import BudgetExceededError, HypothesisNotVerifiedError, InconclusiveError
from .modules import (
    enumerate_indecomposables,
    injectives,
    is_isomorphic,
    is_projective_module,
    module_from_json,
)
from .morphism import enumerate_S_indecomposables
from .subcategory import Subcat

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class Deadline:
    def __init__(self, budget_ms):
        self.start = time.monotonic()
        self.budget_ms = budget_ms

    def check(self, where: str):
        if self.budget_ms is None:
            return
        if (time.monotonic() - self.start) * 1000.0 > self.budget_ms:
            raise BudgetExceededError("global budget exhausted during %s" % where)


def parse_algebra(spec: str, p: int) -> Algebra:
    if spec.endswith(".json") or os.path.exists(spec):
        return load_algebra_spec(spec)
    parts = spec.split(":")
    name = parts[0]
    if name == "nilpotent_loop":
        return build_nilpotent_loop(int(parts[1]), p)
    if name == "preprojective":
        return build_preprojective(int(parts[1]), p)
    if name == "t2":
        return build_t2(parse_algebra(":".join(parts[1:]), p))
    raise AlgebraConstructionError("unknown algebra spec %r" % spec)


def parse_subcat(spec: str, algebra: Algebra, bound: int) -> Subcat:
    if spec == "all":
        return Subcat.all_modules(algebra, max(bound, algebra.dim))
    gens = []
    for path in spec.split(","):
        with open(path) as fh:
            gens.append(module_from_json(algebra, json.load(fh)))
    return Subcat(algebra, gens)


def emit(report: dict, out_path):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(args) -> int:
    algebra = parse_algebra(args.algebra, args.p)
    if args.dump_algebra:
        algebra.dump(args.dump_algebra)
    report = {
        "command": "enumerate",
        "config": {
            "algebra": args.algebra,
            "p": args.p,
            "bound": args.bound,
            "what": args.what,
            "subcat": args.subcat,
        },
    }
    if args.what == "modules":
        mods = enumerate_indecomposables(algebra, args.bound)
        report["count"] = len(mods)
        report["modules"] = [m.to_json_dict() for m in mods]
    elif args.what == "s-objects":
        sub = parse_subcat(args.subcat, algebra, args.bound)
        objs = enumerate_S_indecomposables(sub, args.bound)
        report["count"] = len(objs)
        report["objects"] = [o.to_json_dict() for o in objs]
    elif args.what == "gamma-modules":
        from .functor_cat import StableAuslanderSetting, gamma_indecomposables

        sub = parse_subcat(args.subcat, algebra, args.bound)
        setting = StableAuslanderSetting(sub)
        mods = gamma_indecomposables(setting)
        report["count"] = len(mods)
        report["gamma_dimension"] = setting.gamma.dim
        report["modules"] = [m.to_json_dict() for m in mods]
    else:
        raise ValueError("unknown enumeration target %r" % args.what)
    emit(report, args.out)
    return EXIT_PASS


def _kinds(token: str):
    from .exact_structures import ALL_KINDS, StructureKind

    if token == "all":
        return list(ALL_KINDS)
    return [StructureKind.from_token(token)]


def suite_axioms(sub, bound, kinds, deadline):
    from .exact_structures import check_axioms

    checks = []
    for kind in kinds:
        deadline.check("axioms:%s" % kind.value)
        rep = check_axioms(kind, sub, bound)
        for c in rep["checks"]:
            checks.append(
                {
                    "name": "%s:%s" % (kind.value, c["axiom"]),
                    "status": c["status"],
                    "checked": c["checked"],
                    **({"witness": c["witness"]} if "witness" in c else {}),
                }
            )
    return checks


def suite_classify(sub, bound, kinds, deadline):
    from .exact_structures import (
        brute_force_injective,
        brute_force_projective,
        classify_injective,
        classify_projective,
        s_indecomposables,
    )

    checks = []
    inds = s_indecomposables(sub, bound)
    for idx, o in enumerate(inds):
        for kind in kinds:
            deadline.check("classify")
            cp, bp = classify_projective(kind, o, sub), brute_force_projective(kind, o, sub, bound)
            ci, bi = classify_injective(kind, o, sub), brute_force_injective(kind, o, sub, bound)
            checks.append(
                {
                    "name": "object%d:%s:projective" % (idx, kind.value),
                    "status": "pass" if cp == bp else "fail",
                    "closed_form": cp,
                    "oracle": bp,
                }
            )
            checks.append(
                {
                    "name": "object%d:%s:injective" % (idx, kind.value),
                    "status": "pass" if ci == bi else "fail",
                    "closed_form": ci,
                    "oracle": bi,
                }
            )
    return checks


def suite_psi(sub, bound, kinds, deadline):
    from .functor_cat import StableAuslanderSetting, verify_functor_properties, stable_equivalence_check

    setting = StableAuslanderSetting(sub)
    checks = []
    deadline.check("psi:lifts")
    checks.append(
        {
            "name": "action_lift_well_defined",
            "status": "pass" if setting.lift_well_defined() else "fail",
        }
    )
    deadline.check("psi:properties")
    rep = verify_functor_properties(setting, bound)
    for c in rep["checks"]:
        checks.append(
            {"name": c["name"], "status": c["status"], **({"detail": c["detail"]} if c.get("detail") is not None else {})}
        )
    deadline.check("psi:stable")
    rep2 = stable_equivalence_check(setting, bound)
    for c in rep2["checks"]:
        checks.append({"name": c["name"], "status": c["status"], "detail": c["detail"]})
    return checks


def suite_counting(sub, bound, kinds, deadline):
    from .exact_structures import s_indecomposables
    from .functor_cat import StableAuslanderSetting, gamma_indecomposables

    deadline.check("counting")
    inds = s_indecomposables(sub, bound)
    setting = StableAuslanderSetting(sub)
    gmods = gamma_indecomposables(setting)
    expected = len(gmods) + 2 * len(sub.generators)
    return [
        {
            "name": "counting_identity",
            "status": "pass" if len(inds) == expected else "fail",
            "s_indecomposables": len(inds),
            "gamma_indecomposables": len(gmods),
            "generators": len(sub.generators),
        }
    ]


def suite_hereditary(sub, bound, kinds, deadline):
    from .exact_structures import StructureKind, injective_dimension, projective_dimension, s_indecomposables

    checks = []
    for idx, o in enumerate(s_indecomposables(sub, bound)):
        deadline.check("hereditary")
        pd = projective_dimension(StructureKind.CW, o, sub)
        idim = injective_dimension(StructureKind.CW, o, sub)
        ok = pd is not None and idim is not None and pd <= 1 and idim <= 1
        checks.append(
            {
                "name": "object%d:cw_dimensions" % idx,
                "status": "pass" if ok else "fail",
                "pd": pd,
                "id": idim,
            }
        )
    return checks


def suite_frobenius(sub, bound, kinds, deadline):
    from .exact_structures import StructureKind, classify_injective, classify_projective, s_indecomposables

    checks = []
    deadline.check("frobenius")
    projs = set()
    for v in sub.algebra.vertices:
        from .modules import projective_module

        projs.add(v)
    x_inj = sub.x_injectives()
    gens_proj = [g for g in sub.generators if is_projective_module(g)]
    hypothesis = len(gens_proj) == len(x_inj) and all(
        any(is_isomorphic(pg, ig) for ig in x_inj) for pg in gens_proj
    )
    checks.append(
        {
            "name": "frobenius_hypothesis_on_subcategory",
            "status": "pass" if hypothesis else "skipped",
        }
    )
    if not hypothesis:
        return checks
    inds = s_indecomposables(sub, bound)
    for kind in (StructureKind.SCW, StructureKind.CANONICAL):
        bad = []
        for o in inds:
            if classify_projective(kind, o, sub) != classify_injective(kind, o, sub):
                bad.append(o.to_json_dict())
        checks.append(
            {
                "name": "%s_projectives_equal_injectives" % kind.value,
                "status": "pass" if not bad else "fail",
                **({"witness": bad[0]} if bad else {}),
            }
        )
    return checks


def suite_ar(sub, bound, kinds, deadline):
    from .ar_theory import (
        check_component_translation,
        find_ar_conflation_ending_at,
        is_almost_split_conflation,
        translation_agreement_across_kinds,
    )
    from .exact_structures import StructureKind, classify_projective, s_indecomposables

    checks = []
    inds = s_indecomposables(sub, bound)
    for kind in kinds:
        for idx, y in enumerate(inds):
            if classify_projective(kind, y, sub):
                continue
            deadline.check("ar:find")
            conf = find_ar_conflation_ending_at(y, kind, sub, bound)
            if conf is None:
                checks.append({"name": "object%d:%s:ar" % (idx, kind.value), "status": "inconclusive"})
                continue
            ok = is_almost_split_conflation(conf, inds)
            checks.append(
                {
                    "name": "object%d:%s:ar" % (idx, kind.value),
                    "status": "pass" if ok else "fail",
                    "start": conf.start.to_json_dict(),
                }
            )
    for idx, y in enumerate(inds):
        from .exact_structures import StructureKind as SK

        if classify_projective(SK.SCW, y, sub):
            continue
        deadline.check("ar:agreement")
        rep = translation_agreement_across_kinds(y, sub, bound)
        checks.append({"name": "object%d:translation_agreement" % idx, "status": rep["status"]})
    for idx, y in enumerate(inds):
        from .exact_structures import StructureKind as SK

        if classify_projective(SK.CANONICAL, y, sub):
            continue
        deadline.check("ar:components")
        rep = check_component_translation(y, sub, bound)
        checks.append(
            {"name": "object%d:component_translation" % idx, "status": rep["status"]}
        )
    return checks


SUITES = {
    "axioms": suite_axioms,
    "classify": suite_classify,
    "psi": suite_psi,
    "counting": suite_counting,
    "hereditary": suite_hereditary,
    "frobenius": suite_frobenius,
    "ar": suite_ar,
}


def cmd_verify(args) -> int:
    algebra = parse_algebra(args.algebra, args.p)
    sub = parse_subcat(args.subcat, algebra, args.bound)
    kinds = _kinds(args.kind)
    budget = os.environ.get("MONOCAT_BUDGET_MS")
    deadline = Deadline(float(budget) if budget else None)
    report = {
        "command": "verify",
        "suite": args.suite,
        "config": {
            "algebra": args.algebra,
            "subcat": args.subcat,
            "p": args.p,
            "bound": args.bound,
            "kind": args.kind,
        },
    }
    try:
        checks = SUITES[args.suite](sub, args.bound, kinds, deadline)
    except (BudgetExceededError, InconclusiveError, HypothesisNotVerifiedError) as exc:
        report["status"] = "inconclusive"
        report["reason"] = str(exc)
        emit(report, args.out)
        return EXIT_INCONCLUSIVE
    report["checks"] = checks
    inconclusive = any(c["status"] == "inconclusive" for c in checks)
    failed = any(c["status"] == "fail" for c in checks)
    report["status"] = "fail" if failed else ("inconclusive" if inconclusive else "pass")
    emit(report, args.out)
    if failed:
        return EXIT_FAIL
    if inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monocat",
        description="Monomorphism categories over finite-dimensional algebras: "
        "enumeration and mechanical verification of their exact structures.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", required=True, help="builder spec (nilpotent_loop:N, preprojective:M, t2:...) or JSON file")
    common.add_argument("--subcat", default="all", help="'all' or comma-separated module JSON files")
    common.add_argument("--p", type=int, default=2, help="prime modulus")
    common.add_argument("--bound", type=int, default=6, help="total dimension bound for enumeration")
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")

    enu = subparsers.add_parser("enumerate", parents=[common], help="list indecomposables")
    enu.add_argument("--what", choices=["modules", "s-objects", "gamma-modules"], default="s-objects")
    enu.add_argument("--dump-algebra", default=None, help="also write the algebra spec JSON here")
    enu.set_defaults(func=cmd_enumerate)

    ver = subparsers.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("--kind", default="all", choices=["canonical", "cw", "scw", "all"])
    ver.add_argument("--suite", required=True, choices=sorted(SUITES))
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (AlgebraConstructionError, FileNotFoundError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return EXIT_INPUT
    except (BudgetExceededError, InconclusiveError, HypothesisNotVerifiedError) as exc:
        sys.stderr.write("inconclusive: %s\n" % exc)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
