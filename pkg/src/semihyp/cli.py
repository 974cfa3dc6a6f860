"""Command-line surface.

Subcommands: construct, check, lim, equiv, arens, action-check,
fixed-points, fp-harness.  Exit codes: 0 when every check passes or the
requested answer was computed, 1 when a mathematical check failed (the
report carries the witness), 2 for input errors.  Reports are
deterministic given input and seed; timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import constructors
from .actions import canonical_action, check_action_law, fixed_points, fp_property_harness
from .amenability import equivalence_suite, lim_solve
from .core import (
    Semihypergroup,
    center,
    check_associativity,
    check_probability_axiom,
    find_identity,
    find_involutions,
    is_commutative,
    verify,
)
from .errors import SemihypError, VerificationError
from .fileio import Report, emit_structure, parse_action, parse_structure
from .functions import check_arens_regularity
from .measures import parse_rational

DEFAULT_SEED = 20260809

_GROUPS = {
    "z2": lambda: constructors.cyclic_group(2),
    "z3": lambda: constructors.cyclic_group(3),
    "z4": lambda: constructors.cyclic_group(4),
    "z5": lambda: constructors.cyclic_group(5),
    "z6": lambda: constructors.cyclic_group(6),
    "s3": lambda: constructors.symmetric_group(3),
}


def _group(name: str):
    try:
        return _GROUPS[name.lower()]()
    except KeyError:
        raise SemihypError(
            f"unknown group {name!r} (available: {', '.join(sorted(_GROUPS))})"
        ) from None


def _rl(text: str) -> list[Fraction]:
    return [parse_rational(tok) for tok in text.split(",") if tok.strip()]


def _construct(args) -> Semihypergroup:
    fam = args.family
    if fam == "group":
        return constructors.from_group(_group(args.group))
    if fam == "semigroup":
        if args.kind == "left-zero":
            names = [f"p{i}" for i in range(args.size)] if args.size != 2 else ["a", "b"]
            return constructors.left_zero_semigroup(names)
        raise SemihypError("semigroup construction supports --kind left-zero")
    if fam == "coset":
        return constructors.left_coset_space(_group(args.group), args.subgroup.split(","))
    if fam == "double-coset":
        return constructors.double_coset_space(_group(args.group), args.subgroup.split(","))
    if fam == "orbit":
        G = _group(args.group)
        if args.by == "negation":
            act = constructors.negation_action(G)
        elif args.by == "trivial":
            act = constructors.trivial_action(G)
        else:
            raise SemihypError("orbit action must be 'negation' or 'trivial'")
        return constructors.orbit_space(G, act)
    if fam == "three-point":
        return constructors.three_point_family(_rl(args.x), _rl(args.y), _rl(args.z))
    if fam == "zeuner":
        return constructors.zeuner_grid(args.n)
    raise SemihypError(f"unknown family {fam!r}")


def _load_structure(path: str) -> Semihypergroup:
    with open(path, "r", encoding="utf-8") as fh:
        doc = parse_structure(fh.read())
    return verify(doc.table, name=doc.name)


def _emit(report: Report, args) -> int:
    out = report.to_json() if getattr(args, "json", False) else report.render_text()
    sys.stdout.write(out)
    return report.exit_code


def cmd_construct(args) -> int:
    S = _construct(args)
    text = emit_structure(S)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_check(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        doc = parse_structure(fh.read())
    report = Report("check", structure=doc.name or args.file)
    prob = check_probability_axiom(doc.table)
    report.add(
        "probability entries",
        prob.ok,
        "" if prob.ok else f"witness {prob.witness}: {prob.reason}",
    )
    ok = prob.ok
    if prob.ok:
        assoc = check_associativity(doc.table)
        report.add(
            "associativity",
            assoc.ok,
            "" if assoc.ok else f"witness {assoc.witness}",
        )
        ok = ok and assoc.ok
        if assoc.ok:
            ident = find_identity(doc.table)
            report.fields["identity"] = (
                f"{ident.point} (two-sided)" if ident.point else ident.kind
            )
            if ident.point is not None:
                scan = find_involutions(doc.table, ident.point)
                report.fields["involutions"] = (
                    ", ".join(
                        "(" + " ".join(f"{p}->{inv(p)}" for p in doc.table.space.points) + ")"
                        for inv in scan.involutions
                    )
                    or "none"
                )
                report.fields["hypergroup"] = bool(scan.involutions)
                if scan.warning:
                    report.fields["warning"] = scan.warning
            report.fields["commutative"] = is_commutative(doc.table)
            report.fields["center"] = "{" + ", ".join(center(doc.table)) + "}"
    report.exit_code = 0 if ok else 1
    return _emit(report, args)


def cmd_lim(args) -> int:
    S = _load_structure(args.file)
    res = lim_solve(S)
    report = Report("lim", structure=S.name or args.file)
    if res.exists:
        report.fields["verdict"] = "LIM exists"
        report.fields["witness"] = "(" + ", ".join(str(w) for w in res.mean.weights) + ")"
        report.fields["polytope dimension"] = res.dimension
    else:
        report.fields["verdict"] = "no LIM"
        report.fields["farkas certificate"] = "(" + ", ".join(
            str(c) for c in res.certificate
        ) + ")"
    return _emit(report, args)


def cmd_equiv(args) -> int:
    S = _load_structure(args.file)
    rep = equivalence_suite(S)
    report = Report("equiv", structure=S.name or args.file)
    report.fields["lim"] = rep.lim
    report.fields["fixed mean under point evaluations"] = rep.condition2
    report.fields["translation-fixed probability measure"] = rep.condition3
    report.add("three formulations agree", rep.agree)
    report.exit_code = 0 if rep.agree else 1
    return _emit(report, args)


def cmd_arens(args) -> int:
    S = _load_structure(args.file)
    res = check_arens_regularity(S, trials=args.trials, seed=args.seed)
    report = Report("arens", structure=S.name or args.file, seed=args.seed)
    report.fields["pairs checked"] = res.trials
    report.add("left and right products agree", res.ok, str(res.witness or ""))
    report.exit_code = 0 if res.ok else 1
    return _emit(report, args)


def cmd_action_check(args) -> int:
    S = _load_structure(args.structure)
    with open(args.action, "r", encoding="utf-8") as fh:
        a = parse_action(fh.read(), S)
    res = check_action_law(a)
    report = Report("action-check", structure=S.name or args.structure)
    report.fields["state dimension"] = a.state_dim
    report.add("action law", res.ok, "" if res.ok else f"{res.reason} at {res.witness}")
    report.exit_code = 0 if res.ok else 1
    return _emit(report, args)


def cmd_fixed_points(args) -> int:
    S = _load_structure(args.structure)
    if args.canonical:
        a = canonical_action(S)
    else:
        if not args.action:
            raise SemihypError("provide an action file or --canonical")
        with open(args.action, "r", encoding="utf-8") as fh:
            a = parse_action(fh.read(), S)
        law = check_action_law(a)
        if not law.ok:
            report = Report("fixed-points", structure=S.name or args.structure)
            report.add("action law", False, f"{law.reason} at {law.witness}")
            report.exit_code = 1
            return _emit(report, args)
    res = fixed_points(a)
    report = Report("fixed-points", structure=S.name or args.structure)
    report.fields["action"] = "canonical" if args.canonical else args.action
    if res.exists:
        report.fields["fixed point"] = "(" + ", ".join(str(v) for v in res.witness) + ")"
        report.fields["polytope dimension"] = res.dimension
    else:
        report.fields["verdict"] = "no common fixed point"
        report.fields["farkas certificate"] = "(" + ", ".join(
            str(c) for c in res.certificate
        ) + ")"
    return _emit(report, args)


def cmd_fp_harness(args) -> int:
    S = _load_structure(args.structure)
    rep = fp_property_harness(S, count=args.instances, seed=args.seed)
    report = Report("fp-harness", structure=S.name or args.structure, seed=args.seed)
    report.fields["lim"] = "exists" if rep.lim.exists else "none"
    report.fields["actions tested"] = rep.instances
    report.fields["with fixed point"] = rep.fixed
    report.fields["canonical has fixed point"] = rep.canonical.exists
    report.add(rep.verdict, rep.consistent)
    report.exit_code = 0 if rep.consistent else 1
    return _emit(report, args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="semihyp",
        description="exact computations on finite semihypergroups",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a structure and write it to a file")
    c.add_argument("family", choices=[
        "group", "semigroup", "coset", "double-coset", "orbit", "three-point", "zeuner",
    ])
    c.add_argument("--group", default="z3", help="named group (z2..z6, s3)")
    c.add_argument("--subgroup", default="", help="comma-separated subgroup elements")
    c.add_argument("--by", default="negation", help="orbit action: negation | trivial")
    c.add_argument("--kind", default="left-zero", help="semigroup kind")
    c.add_argument("--size", type=int, default=2, help="semigroup size")
    c.add_argument("--x", default="", help="three-point x parameters, e.g. 1/4,1/4,1/2")
    c.add_argument("--y", default="", help="three-point y parameters")
    c.add_argument("--z", default="", help="three-point z parameters")
    c.add_argument("--n", type=int, default=2, help="zeuner grid resolution (even)")
    c.add_argument("-o", "--output", default="", help="output file (default stdout)")
    c.set_defaults(func=cmd_construct)

    for name, fn, extra in (
        ("check", cmd_check, ()),
        ("lim", cmd_lim, ()),
        ("equiv", cmd_equiv, ()),
        ("arens", cmd_arens, ("trials", "seed")),
    ):
        p = sub.add_parser(name)
        p.add_argument("file")
        if "trials" in extra:
            p.add_argument("--trials", type=int, default=100)
        if "seed" in extra:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.set_defaults(func=fn)

    p = sub.add_parser("action-check")
    p.add_argument("structure")
    p.add_argument("action")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_action_check)

    p = sub.add_parser("fixed-points")
    p.add_argument("structure")
    p.add_argument("action", nargs="?", default="")
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fixed_points)

    p = sub.add_parser("fp-harness")
    p.add_argument("structure")
    p.add_argument("--instances", type=int, default=25)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fp_harness)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    start = time.perf_counter()
    try:
        code = args.func(args)
    except VerificationError as exc:
        # a mathematical check failed during construction; the witness is
        # part of the message
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (SemihypError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        elapsed = time.perf_counter() - start
        print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
