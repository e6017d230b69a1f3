"""Command-line frontend: prove | sat | interpolate | beth | fuzz."""

import argparse
import json
import sys

from .interp import (
    NotImplicitDefinitionError,
    SplitClosed,
    SplitSequent,
    beth,
    clusters,
    entails,
    export_dot_split,
    interpolant_of_tableau,
    prove_split,
    simplify as simplify_formula,
    verify_interpolant,
)
from .prover import (
    BudgetExceededError,
    Closed,
    DEFAULT_BUDGET,
    Open,
    export_dot,
    prove,
)
from .semantics import KripkeModel, model_to_json
from .syntax import (
    And,
    Atom,
    Neg,
    ParseError,
    Sequent,
    parse_formula,
    parse_sequent,
    print_formula,
    vocabulary,
)


def _arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdltab", description="PDL tableau prover and interpolator"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dot=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if dot:
            p.add_argument("--dot", metavar="PATH", help="write the closed tableau as DOT")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")

    p_prove = sub.add_parser("prove", help="decide validity of a formula")
    p_prove.add_argument("formula")
    common(p_prove)

    p_sat = sub.add_parser("sat", help="decide satisfiability of a comma-separated sequent")
    p_sat.add_argument("sequent")
    common(p_sat)

    p_itp = sub.add_parser("interpolate", help="compute a Craig interpolant for phi -> psi")
    p_itp.add_argument("phi")
    p_itp.add_argument("psi")
    p_itp.add_argument(
        "--verify", action="store_true", help="re-check the interpolant, exit 3 on mismatch"
    )
    p_itp.add_argument("--simplify", action="store_true", help="apply cosmetic simplification")
    common(p_itp)

    p_beth = sub.add_parser("beth", help="explicit definition of an implicitly defined atom")
    p_beth.add_argument("phi")
    p_beth.add_argument("atom")
    p_beth.add_argument(
        "--verify", action="store_true", help="re-check the definition, exit 3 on mismatch"
    )
    p_beth.add_argument("--simplify", action="store_true")
    common(p_beth, dot=False)

    p_fuzz = sub.add_parser("fuzz", help="run the seeded property suites")
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--n", type=int, default=25, help="instances per suite")
    p_fuzz.add_argument(
        "--suite",
        choices=[
            "all",
            "roundtrip",
            "unfold-equivalence",
            "local-rules",
            "prover-roundtrip",
            "interpolation",
        ],
        default="all",
    )

    return parser


def _model_obj(model: KripkeModel, point: int) -> dict:
    return json.loads(model_to_json(model, point))


def _write_dot(path: str | None, tableau) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(export_dot(tableau))


def cmd_prove(args) -> int:
    formula = parse_formula(args.formula)
    result = prove(Sequent([Neg(formula)]), args.budget)
    if isinstance(result, Closed):
        _write_dot(args.dot, result.tableau)
        if args.json:
            print(json.dumps({"formula": print_formula(formula), "result": "valid"}))
        else:
            print("valid")
        return 0
    if args.dot:
        print("no closed tableau to export for an invalid formula", file=sys.stderr)
    if args.json:
        payload = {
            "formula": print_formula(formula),
            "result": "invalid",
            "countermodel": _model_obj(result.model, result.point),
        }
        print(json.dumps(payload))
    else:
        print("invalid")
        print(model_to_json(result.model, result.point))
    return 1


def cmd_sat(args) -> int:
    sequent = parse_sequent(args.sequent)
    result = prove(sequent, args.budget)
    if isinstance(result, Open):
        if args.dot:
            print("no closed tableau to export for a satisfiable sequent", file=sys.stderr)
        if args.json:
            print(json.dumps({"result": "sat", "model": _model_obj(result.model, result.point)}))
        else:
            print("sat")
            print(model_to_json(result.model, result.point))
        return 0
    _write_dot(args.dot, result.tableau)
    if args.json:
        print(json.dumps({"result": "unsat"}))
    else:
        print("unsat")
    return 1


def cmd_interpolate(args) -> int:
    phi = parse_formula(args.phi)
    psi = parse_formula(args.psi)
    split_result = prove_split(SplitSequent(Sequent([phi]), Sequent([Neg(psi)])), args.budget)
    if not isinstance(split_result, SplitClosed):
        if args.dot:
            print("no closed split tableau to export for an invalid implication", file=sys.stderr)
        if args.json:
            payload = {
                "result": "not valid",
                "countermodel": _model_obj(split_result.model, split_result.point),
            }
            print(json.dumps(payload))
        else:
            print("not valid")
            print(model_to_json(split_result.model, split_result.point))
        return 1
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(export_dot_split(split_result.tableau))
    theta = interpolant_of_tableau(split_result.tableau)
    if args.simplify:
        theta = simplify_formula(theta)
    verified = None
    if args.verify:
        report = verify_interpolant(phi, psi, theta, args.budget)
        verified = {"voc": report.voc_ok, "left": report.left_ok, "right": report.right_ok}
        if not report.ok:
            print(f"verification failed: {verified}", file=sys.stderr)
            return 3
    if args.json:
        info = clusters(split_result.tableau)
        payload = {
            "interpolant": print_formula(theta),
            "verified": verified,
            "stats": {
                "tableau_nodes": len(split_result.tableau.nodes),
                "clusters": len(info.clusters),
                "proper_clusters": len(info.proper_clusters),
            },
        }
        print(json.dumps(payload))
    else:
        print(print_formula(theta))
    return 0


def cmd_beth(args) -> int:
    phi = parse_formula(args.phi)
    if args.atom not in vocabulary(phi).props:
        print(f"error: atom {args.atom!r} does not occur in the formula", file=sys.stderr)
        return 2
    try:
        definition = beth(phi, args.atom, args.budget)
    except NotImplicitDefinitionError as err:
        if args.json:
            payload = {
                "result": "not an implicit definition",
                "countermodel": _model_obj(err.model, err.point),
            }
            print(json.dumps(payload))
        else:
            print("not an implicit definition")
            print(model_to_json(err.model, err.point))
        return 1
    if args.simplify:
        definition = simplify_formula(definition)
    if args.verify:
        left = entails(And(phi, Atom(args.atom)), definition, args.budget)
        right = entails(And(phi, definition), Atom(args.atom), args.budget)
        if not (left and right):
            print("verification failed", file=sys.stderr)
            return 3
    if args.json:
        print(json.dumps({"definition": print_formula(definition)}))
    else:
        print(print_formula(definition))
    return 0


def cmd_fuzz(args) -> int:
    from .fuzz import ALL_SUITES

    names = list(ALL_SUITES) if args.suite == "all" else [args.suite]
    exit_code = 0
    for name in names:
        result = ALL_SUITES[name](args.seed, args.n)
        status = "PASS" if result.ok else "FAIL"
        print(f"{status} {name}: {result.checks} checks, {len(result.failures)} failures")
        for line in result.failures[:5]:
            print(f"  {line}")
        if not result.ok:
            exit_code = 1
    return exit_code


def main(argv=None) -> int:
    args = _arg_parser().parse_args(argv)
    handlers = {
        "prove": cmd_prove,
        "sat": cmd_sat,
        "interpolate": cmd_interpolate,
        "beth": cmd_beth,
        "fuzz": cmd_fuzz,
    }
    try:
        return handlers[args.command](args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except BudgetExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
