"""Acceptance criteria, one test per criterion, each printing a verdict line."""

import os
import subprocess
import sys
import time

from pdltab.interp import (
    SplitSequent,
    interpolation_details,
    prove_split,
    verify_interpolant,
)
from pdltab.prover import Closed, Open, prove, validate_tableau
from pdltab.semantics import check_sequent
from pdltab.syntax import (
    Atom,
    AtomicProg,
    Box,
    LoadedFormula,
    Neg,
    Sequent,
    Star,
    parse_formula,
    parse_program,
    parse_sequent,
    vocabulary,
)
from pdltab.unfold import H, HPair, unfold_P, unfold_F, unfold_box, unfold_dia
from pdltab.fuzz import (
    acceptance_fingerprint,
    suite_interpolation,
    suite_local_rules,
    suite_prover_roundtrip,
    suite_unfold_equivalence,
)

psi = Atom("x")
p = Atom("p")
a, b = AtomicProg("a"), AtomicProg("b")


def _report(name: str, started: float, limit: float):
    elapsed = time.perf_counter() - started
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.2f}s, limit {limit:.0f}s)")
    assert elapsed < limit, f"{name} exceeded its runtime limit"


def test_criterion_1_golden_unfold_values():
    from pdltab.unfold import test_profiles

    started = time.perf_counter()
    alpha = parse_program("(a u ?(p)) ; b*")
    bstar = parse_program("b*")
    profiles = {frozenset(pr.chosen): pr for pr in test_profiles(alpha)}
    l0, l1 = profiles[frozenset()], profiles[frozenset({p})]
    assert set(unfold_P(alpha, l0)) == {(a, bstar)}
    assert set(unfold_F(alpha, l0)) == {Neg(p)}
    assert set(unfold_P(alpha, l1)) == {(a, bstar), (), (b, bstar)}
    assert set(unfold_F(alpha, l1)) == set()
    assert set(unfold_box(alpha, psi)) == {
        parse_sequent("~p, [a][b*]x"),
        parse_sequent("x, [a][b*]x, [b][b*]x"),
    }

    double_star = parse_program("(a*)*")
    astar = parse_program("a*")
    (only_profile,) = test_profiles(double_star)
    assert set(unfold_P(double_star, only_profile)) == {(), (a, astar, double_star)}

    assert set(H(double_star)) == {HPair((), ()), HPair((), (a, astar, double_star))}
    comp = parse_program("(?(p) u a) ; b*")
    assert set(H(comp)) == {
        HPair((), (a, bstar)),
        HPair((p,), ()),
        HPair((p,), (b, bstar)),
    }
    star = parse_program("(?(p) u a)*")
    assert set(H(star)) == {HPair((), ()), HPair((), (a, star))}

    assert set(unfold_dia(double_star, psi)) == {
        parse_sequent("~x"),
        parse_sequent("~[a][a*][(a*)*]x"),
    }
    assert set(unfold_dia(comp, psi)) == {
        parse_sequent("~[a][b*]x"),
        parse_sequent("p, ~x"),
        parse_sequent("p, ~[b][b*]x"),
    }
    assert set(unfold_dia(star, psi)) == {
        parse_sequent("~x"),
        parse_sequent("~[a][(?(p) u a)*]x"),
    }
    _report("criterion 1 (golden unfold values)", started, 1.0)


def test_criterion_2_validity_verdicts():
    started = time.perf_counter()
    valid = [
        "[a*]q -> [a][(a u ?(p))*]q",
        "([a;b](p & q) & [c]bot) -> ([a;b]q & [c]r)",
    ]
    invalid = ["[a*]~[a]p -> p", "[a][a*]p -> [a][a*]q"]
    for text in valid:
        result = prove(Sequent([Neg(parse_formula(text))]))
        assert isinstance(result, Closed), text
        validate_tableau(result.tableau)
    for text in invalid:
        result = prove(Sequent([Neg(parse_formula(text))]))
        assert isinstance(result, Open), text
        assert result.model.states <= 3, text
        assert check_sequent(
            result.model, result.point, Sequent([Neg(parse_formula(text))])
        ), text
    _report("criterion 2 (validity verdicts)", started, 5.0)


def test_criterion_3_section76_end_to_end():
    started = time.perf_counter()
    phi = parse_formula("p & [a][a*](p | [a*]p)")
    goal = parse_formula("[a][a*]p")
    result = prove_split(SplitSequent(Sequent([phi]), Sequent([Neg(goal)])))
    theta = interpolation_details(result.tableau).theta[result.tableau.root]
    voc = vocabulary(theta)
    assert voc.props <= {"p"} and voc.progs <= {"a"}
    report = verify_interpolant(phi, goal, theta)
    assert report.voc_ok and report.left_ok and report.right_ok
    target = parse_formula("[(a ; ?(~[a*]p))*][a ; ?(~[a*]p)]p")
    assert isinstance(prove(Sequent([theta, Neg(target)])), Closed)
    assert isinstance(prove(Sequent([target, Neg(theta)])), Closed)
    _report("criterion 3 (worked interpolation example)", started, 10.0)


def test_criterion_4_quasi_tableau_golden():
    from pdltab.syntax import And

    started = time.perf_counter()
    goal = SplitSequent(
        parse_sequent("p, [a][a*](p | [a*]p)"), parse_sequent("~[a][a*]p")
    )
    tableau = prove_split(goal).tableau
    details = interpolation_details(tableau)
    (cluster,) = [c for c in details.info.clusters if c.proper]
    quasi = details.quasi[cluster.root]
    iotas = details.iotas[cluster.root]

    assert len(quasi.nodes) == 8
    assert [n.ktype for n in quasi.nodes] == [1, 2, 3, 1, 2, 3, 1, 1]
    assert quasi.nodes[7].companion is quasi.nodes[0]
    long_chain = Sequent([LoadedFormula((a, Star(a)), p)])
    short_chain = Sequent([LoadedFormula((Star(a),), p)])
    assert [n.label for n in quasi.nodes] == [
        long_chain, long_chain, long_chain,
        short_chain, short_chain, short_chain,
        parse_sequent("~p"), long_chain,
    ]

    chain = parse_program("?(~bot) ; a ; ?(~~~[a*]p)")
    trivial = parse_program("?(~bot)")
    guard = parse_program("?(~~~[a*]p)")
    core = And(p, Atom("_q0"))
    expected = [
        Box(Star(chain), Box(chain, p)),
        Box(trivial, Box(a, Box(guard, core))),
        Box(a, Box(guard, core)),
        Box(guard, core),
        Box(guard, core),
        core,
        p,
        Atom("_q0"),
    ]
    assert [iotas[n] for n in quasi.nodes] == expected
    _report("criterion 4 (quasi-tableau golden)", started, 10.0)


def test_criterion_5_unfold_equivalence_suite():
    started = time.perf_counter()
    result = suite_unfold_equivalence(20260809, n=200, models_each=10)
    assert result.failures == []
    print(f"  ({result.checks} state checks)")
    _report("criterion 5 (unfold equivalence suite)", started, 60.0)


def test_criterion_6_rule_soundness_suite():
    started = time.perf_counter()
    result = suite_local_rules(20260809, n=500)
    assert result.failures == []
    _report("criterion 6 (rule soundness suite)", started, 60.0)


def test_criterion_7_sat_countermodel_round_trip():
    started = time.perf_counter()
    result = suite_prover_roundtrip(20260809, n=200)
    assert result.failures == []
    _report("criterion 7 (sat round trip)", started, 300.0)


def test_criterion_8_interpolation_suite():
    started = time.perf_counter()
    result = suite_interpolation(20260809, n=100, n_beth=20)
    assert result.failures == []
    _report("criterion 8 (interpolation suite)", started, 600.0)


def test_criterion_9_determinism():
    started = time.perf_counter()
    first = acceptance_fingerprint()
    second = acceptance_fingerprint()
    assert first == second

    def external(hashseed: str) -> bytes:
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        proc = subprocess.run(
            [
                sys.executable,
                "-c",
                "from pdltab.fuzz import acceptance_fingerprint;"
                "print(acceptance_fingerprint())",
            ],
            capture_output=True,
            env=env,
            check=True,
        )
        return proc.stdout

    assert external("0") == external("1") == external("271828")
    assert external("0").decode().strip() == first
    _report("criterion 9 (byte-identical reruns)", started, 120.0)
