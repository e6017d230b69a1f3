"""Seeded random generators and the property suites behind `pdltab fuzz`."""

import random
from dataclasses import dataclass

from .interp import NotValidError, beth, equivalent, interpolate, verify_interpolant
from .prover import (
    Closed,
    Open,
    RuleId,
    prove,
    prover_moves,
    rule_children,
    validate_tableau,
)
from .semantics import check_sequent, evaluate, random_model
from .syntax import (
    And,
    Atom,
    AtomicProg,
    Bottom,
    Box,
    Comp,
    Formula,
    LoadedFormula,
    Neg,
    Program,
    Sequent,
    Star,
    Test,
    Union,
    boxes,
    parse_formula,
    print_formula,
    print_member,
)
from .unfold import H, unfold_box

PROPS = ("p", "q")
PROGS = ("a", "b")


def gen_program(rng: random.Random, size: int, props=PROPS, progs=PROGS) -> Program:
    if size <= 1:
        return AtomicProg(rng.choice(progs))
    kind = rng.choice(["atom", "test", "union", "comp", "star", "star"])
    if kind == "atom":
        return AtomicProg(rng.choice(progs))
    if kind == "test":
        return Test(gen_formula(rng, size - 1, props, progs))
    if kind == "star":
        return Star(gen_program(rng, size - 1, props, progs))
    split = rng.randint(1, size - 2) if size > 2 else 1
    left = gen_program(rng, split, props, progs)
    right = gen_program(rng, size - 1 - split, props, progs)
    return Union(left, right) if kind == "union" else Comp(left, right)


def gen_formula(rng: random.Random, size: int, props=PROPS, progs=PROGS) -> Formula:
    if size <= 1:
        return rng.choice([Atom(rng.choice(props)), Bottom()] + [Atom(rng.choice(props))] * 2)
    kind = rng.choice(["neg", "and", "box", "box"])
    if kind == "neg":
        return Neg(gen_formula(rng, size - 1, props, progs))
    if kind == "and":
        split = rng.randint(1, size - 2) if size > 2 else 1
        return And(
            gen_formula(rng, split, props, progs),
            gen_formula(rng, size - 1 - split, props, progs),
        )
    split = rng.randint(1, size - 2) if size > 2 else 1
    return Box(
        gen_program(rng, split, props, progs),
        gen_formula(rng, size - 1 - split, props, progs),
    )


def gen_sequent(rng: random.Random, max_members=4, size=10, props=PROPS, progs=PROGS) -> Sequent:
    n = rng.randint(1, max_members)
    return Sequent(gen_formula(rng, rng.randint(1, size), props, progs) for _ in range(n))


def gen_model(rng: random.Random, max_states=5, props=PROPS, progs=PROGS):
    return random_model(rng.randint(0, 10**9), max_states, props, progs, rng.choice([0.2, 0.4, 0.7]))


@dataclass
class SuiteResult:
    name: str
    checks: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def suite_roundtrip(seed: int, n: int = 200) -> SuiteResult:
    """parse . print is the identity on random ASTs."""
    rng = random.Random(seed)
    failures = []
    for i in range(n):
        f = gen_formula(rng, rng.randint(1, 12))
        if parse_formula(print_formula(f)) != f:
            failures.append(f"round trip changed {print_formula(f)}")
    return SuiteResult("roundtrip", n, failures)


def suite_unfold_equivalence(seed: int, n: int = 200, models_each: int = 10) -> SuiteResult:
    """Box and diamond unfoldings are truth-preserving at every state."""
    rng = random.Random(seed)
    failures = []
    checks = 0
    for i in range(n):
        alpha = gen_program(rng, rng.randint(1, 8))
        psi = gen_formula(rng, rng.randint(1, 4))
        box = Box(alpha, psi)
        dia = Neg(box)
        box_unf = unfold_box(alpha, psi)
        h_pairs = H(alpha)
        for j in range(models_each):
            m = gen_model(rng)
            for w in range(m.states):
                checks += 1
                lhs = evaluate(m, w, box)
                rhs = any(check_sequent(m, w, g) for g in box_unf)
                if lhs != rhs:
                    failures.append(f"box unfold mismatch: {print_formula(box)} at {w}")
                lhs_d = evaluate(m, w, dia)
                rhs_d = any(
                    all(evaluate(m, w, t) for t in pair.guards)
                    and evaluate(m, w, Neg(boxes(pair.rest, psi)))
                    for pair in h_pairs
                )
                if lhs_d != rhs_d:
                    failures.append(f"dia unfold mismatch: {print_formula(dia)} at {w}")
    return SuiteResult("unfold-equivalence", checks, failures)


def _random_loaded_variant(rng: random.Random, s: Sequent) -> Sequent:
    diamonds = [
        m
        for m in s
        if isinstance(m, Neg) and isinstance(m.sub, Box)
    ]
    if diamonds and rng.random() < 0.5:
        target = rng.choice(diamonds)
        progs = []
        tail = target.sub
        while isinstance(tail, Box):
            progs.append(tail.prog)
            tail = tail.sub
        return s.without(target).union([LoadedFormula(tuple(progs), tail)])
    return s


def suite_local_rules(seed: int, n: int = 500) -> SuiteResult:
    """Every local rule instance is locally sound and invertible."""
    rng = random.Random(seed)
    failures = []
    checks = 0
    while checks < n:
        s = _random_loaded_variant(rng, gen_sequent(rng))
        moves = [
            mv
            for mv in prover_moves(s)
            if mv[0] not in (RuleId.MODAL,)
        ]
        if not moves:
            continue
        rule, principal = rng.choice(moves)
        children = rule_children(s, rule, principal)
        m = gen_model(rng)
        w = rng.randrange(m.states)
        checks += 1
        parent_true = check_sequent(m, w, s)
        child_true = any(check_sequent(m, w, c) for c in children)
        if parent_true != child_true:
            failures.append(
                f"rule {rule} on {print_member(principal)} not invertible in context"
            )
    return SuiteResult("local-rules", checks, failures)


def suite_prover_roundtrip(seed: int, n: int = 200) -> SuiteResult:
    """Open results yield checking countermodels; closed results yield valid tableaux."""
    rng = random.Random(seed)
    failures = []
    for i in range(n):
        s = gen_sequent(rng)
        result = prove(s)
        if isinstance(result, Open):
            if not check_sequent(result.model, result.point, s):
                failures.append(f"countermodel fails root: {s}")
        else:
            try:
                validate_tableau(result.tableau)
            except Exception as err:  # noqa: BLE001 - report any invariant breach
                failures.append(f"invalid tableau for {s}: {err}")
    return SuiteResult("prover-roundtrip", n, failures)


def gen_valid_implication(rng: random.Random) -> tuple[Formula, Formula]:
    """Pattern-based valid implications.

    Mixes propositional shapes (psi & chi entails psi | rho) with two
    star-based shapes that force proper clusters during interpolation: the
    induction pattern psi & [b*](psi -> [b]psi) entails [b*]psi, and the
    antitone diamond pattern ~[b*]psi entails ~[b*](psi & chi).
    """
    kind = rng.randrange(3)
    if kind == 0:
        psi = gen_formula(rng, rng.randint(1, 6))
        chi = gen_formula(rng, rng.randint(1, 5))
        rho = gen_formula(rng, rng.randint(1, 5))
        return And(psi, chi), Neg(And(Neg(psi), Neg(rho)))
    psi = gen_formula(rng, rng.randint(1, 4))
    beta: Program
    if rng.random() < 0.6:
        beta = AtomicProg(rng.choice(PROGS))
    else:
        beta = Union(AtomicProg("a"), AtomicProg("b"))
    if kind == 1:
        f = And(psi, Box(Star(beta), Neg(And(psi, Neg(Box(beta, psi))))))
        return f, Box(Star(beta), psi)
    chi = gen_formula(rng, rng.randint(1, 3))
    return Neg(Box(Star(beta), psi)), Neg(Box(Star(beta), And(psi, chi)))


def suite_interpolation(seed: int, n: int = 100, n_beth: int = 20) -> SuiteResult:
    rng = random.Random(seed)
    failures = []
    count = 0
    # majority pattern-based, a slice of prover-filtered fully random pairs
    while count < n:
        if count % 5 == 4:
            f = gen_formula(rng, rng.randint(1, 7))
            g = gen_formula(rng, rng.randint(1, 7))
            try:
                theta = interpolate(f, g)
            except NotValidError:
                continue
        else:
            f, g = gen_valid_implication(rng)
            theta = interpolate(f, g)
        count += 1
        report = verify_interpolant(f, g, theta)
        if not report.ok:
            failures.append(
                f"verification {report} for {print_formula(f)} -> {print_formula(g)}"
            )
    for i in range(n_beth):
        chi = gen_formula(rng, rng.randint(1, 5), props=("q", "r"))
        f = And(Neg(And(Atom("p"), Neg(chi))), Neg(And(chi, Neg(Atom("p")))))
        definition = beth(f, "p")
        if not equivalent(definition, chi):
            failures.append(f"beth definition not equivalent to {print_formula(chi)}")
    return SuiteResult("interpolation", n + n_beth, failures)


ALL_SUITES = {
    "roundtrip": suite_roundtrip,
    "unfold-equivalence": suite_unfold_equivalence,
    "local-rules": suite_local_rules,
    "prover-roundtrip": suite_prover_roundtrip,
    "interpolation": suite_interpolation,
}


def acceptance_fingerprint() -> str:
    """Canonical serialization of the golden computations, for determinism checks."""
    from .interp import SplitSequent, interpolation_details, prove_split
    from .semantics import model_to_json
    from .syntax import Sequent, parse_program, parse_sequent, print_sequent
    from .unfold import unfold_dia, unfold_dia_loaded

    lines = []
    psi = Atom("x")
    for text in ("(a u ?(p)) ; b*", "(a*)*", "(?(p) u a) ; b*", "(?(p) u a)*"):
        alpha = parse_program(text)
        lines.append(f"box {text}: " + " | ".join(map(print_sequent, unfold_box(alpha, psi))))
        lines.append(f"dia {text}: " + " | ".join(map(print_sequent, unfold_dia(alpha, psi))))
        lines.append(f"dialoaded {text}: " + " | ".join(map(print_sequent, unfold_dia_loaded(alpha, psi))))
        for pair in H(alpha):
            lines.append(
                f"H {text}: [" + ",".join(map(print_formula, pair.guards)) + "] "
                + " ".join(str(r) for r in pair.rest)
            )
    for text in (
        "[a*]q -> [a][(a u ?(p))*]q",
        "([a;b](p & q) & [c]bot) -> ([a;b]q & [c]r)",
        "[a*]~[a]p -> p",
        "[a][a*]p -> [a][a*]q",
    ):
        result = prove(Sequent([Neg(parse_formula(text))]))
        if isinstance(result, Closed):
            lines.append(f"prove {text}: valid nodes={len(result.tableau.nodes)}")
        else:
            lines.append(f"prove {text}: invalid {model_to_json(result.model, result.point)}")
    goal = SplitSequent(
        parse_sequent("p, [a][a*](p | [a*]p)"), parse_sequent("~[a][a*]p")
    )
    tableau = prove_split(goal).tableau
    details = interpolation_details(tableau)
    lines.append("interpolant: " + print_formula(details.theta[tableau.root]))
    info = details.info
    (cluster,) = [c for c in info.clusters if c.proper]
    quasi = details.quasi[cluster.root]
    iotas = details.iotas[cluster.root]
    for node in quasi.nodes:
        lines.append(
            f"quasi {node.index} type {node.ktype} [{print_sequent(node.label)}] "
            + print_formula(iotas[node])
        )
    return "\n".join(lines)
