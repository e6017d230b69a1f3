import random

from pdltab.semantics import check_sequent, evaluate
from pdltab.syntax import (
    And,
    Atom,
    AtomicProg,
    LoadedFormula,
    Neg,
    Sequent,
    boxes,
    fischer_ladner,
    parse_formula,
    parse_program,
    parse_sequent,
    progs_of,
    size,
    tests_of,
    unload,
    vocabulary,
)
from pdltab.unfold import (
    H,
    HPair,
    signature_formula,
    test_profiles,
    unfold_F,
    unfold_P,
    unfold_box,
    unfold_dia,
    unfold_dia_loaded,
)
from pdltab.fuzz import gen_formula, gen_model, gen_program

p, q = Atom("p"), Atom("q")
a, b = AtomicProg("a"), AtomicProg("b")
psi = Atom("x")


def profile_of(prog, *chosen):
    for profile in test_profiles(prog):
        if profile.chosen == frozenset(chosen):
            return profile
    raise AssertionError("no such profile")


def test_profiles_examples():
    alpha = parse_program("(a u ?(p)) ; b*")
    assert [pr.chosen for pr in test_profiles(alpha)] == [frozenset(), frozenset({p})]
    assert [pr.chosen for pr in test_profiles(a)] == [frozenset()]
    assert [pr.chosen for pr in test_profiles(parse_program("(a*)*"))] == [frozenset()]


def test_signature_formula():
    alpha = parse_program("?(p & q) ; ?(~p) ; ?(~q)")
    # un-negated chosen tests, negated failed tests, in canonical test order
    sig = signature_formula(alpha, profile_of(alpha, And(p, q)))
    assert sig == parse_formula("(p & q) & ~~p & ~~q")
    # signature formulas need not be consistent: with no chosen test this
    # program's signature is false everywhere
    empty_sig = signature_formula(alpha, profile_of(alpha))
    rng = random.Random(5)
    for _ in range(20):
        m = gen_model(rng)
        assert not any(evaluate(m, w, empty_sig) for w in range(m.states))
    assert signature_formula(a, profile_of(a)) == parse_formula("~bot")
    full = signature_formula(alpha, profile_of(alpha, And(p, q), Neg(p), Neg(q)))
    assert _conjuncts(full) == [And(p, q), Neg(p), Neg(q)]


def _conjuncts(f):
    out = []
    while isinstance(f, And):
        out.append(f.left)
        f = f.right
    out.append(f)
    return out


def test_unfold_P_F_examples():
    alpha = parse_program("(a u ?(p)) ; b*")
    bstar = parse_program("b*")
    l0 = profile_of(alpha)
    l1 = profile_of(alpha, p)
    assert set(unfold_P(alpha, l0)) == {(a, bstar)}
    assert unfold_F(alpha, l0) == [Neg(p)]
    assert set(unfold_P(alpha, l1)) == {(a, bstar), (), (b, bstar)}
    assert unfold_F(alpha, l1) == []
    dd = parse_program("(a*)*")
    astar = parse_program("a*")
    assert set(unfold_P(dd, profile_of(dd))) == {(), (a, astar, dd)}


def test_unfold_box_examples():
    alpha = parse_program("(a u ?(p)) ; b*")
    assert unfold_box(alpha, psi) == [
        parse_sequent("~p, [a][b*]x"),
        parse_sequent("x, [a][b*]x, [b][b*]x"),
    ]
    assert unfold_box(parse_program("(a*)*"), psi) == [
        parse_sequent("x, [a][a*][(a*)*]x")
    ]
    assert set(unfold_box(parse_program("?(p)"), psi)) == {
        Sequent([Neg(p)]),
        Sequent([psi]),
    }


def test_H_examples():
    dd = parse_program("(a*)*")
    astar = parse_program("a*")
    assert set(H(dd)) == {HPair((), ()), HPair((), (a, astar, dd))}

    comp = parse_program("(?(p) u a) ; b*")
    bstar = parse_program("b*")
    assert set(H(comp)) == {
        HPair((), (a, bstar)),
        HPair((p,), ()),
        HPair((p,), (b, bstar)),
    }

    star = parse_program("(?(p) u a)*")
    assert set(H(star)) == {HPair((), ()), HPair((), (a, star))}


def test_unfold_dia_examples():
    dd = parse_program("(a*)*")
    assert set(unfold_dia(dd, psi)) == {
        parse_sequent("~x"),
        parse_sequent("~[a][a*][(a*)*]x"),
    }
    comp = parse_program("(?(p) u a) ; b*")
    assert set(unfold_dia(comp, psi)) == {
        parse_sequent("~[a][b*]x"),
        parse_sequent("p, ~x"),
        parse_sequent("p, ~[b][b*]x"),
    }
    assert unfold_dia(b, psi) == [parse_sequent("~[b]x")]


def test_unfold_dia_loaded_examples():
    dd = parse_program("(a*)*")
    astar = parse_program("a*")
    assert set(unfold_dia_loaded(dd, psi)) == {
        Sequent([Neg(psi)]),
        Sequent([LoadedFormula((a, astar, dd), psi)]),
    }
    assert unfold_dia_loaded(b, psi) == [Sequent([LoadedFormula((b,), psi)])]
    star = parse_program("(?(p) u a)*")
    assert set(unfold_dia_loaded(star, psi)) == {
        Sequent([Neg(psi)]),
        Sequent([LoadedFormula((a, star), psi)]),
    }
    # remainder prefixes stay loaded behind the unfolded head
    loaded_rest = LoadedFormula((b,), psi)
    out = unfold_dia_loaded(star, loaded_rest)
    assert Sequent([LoadedFormula((a, star, b), psi)]) in out
    assert Sequent([LoadedFormula((b,), psi)]) in out


def test_unfold_box_members_in_fl():
    # membership holds up to single negation: the closure is closed under
    # the single negation, so a negated member whose body is itself negated
    # is represented by its collapsed form
    def in_closure(member, closure):
        from pdltab.syntax import single_neg

        return member in closure or single_neg(member) in closure

    rng = random.Random(21)
    for _ in range(60):
        alpha = gen_program(rng, rng.randint(1, 6))
        f = gen_formula(rng, 3)
        closure = fischer_ladner([boxes([alpha], f)])
        for g in unfold_box(alpha, f):
            for member in g:
                assert in_closure(member, closure)
        dia_closure = fischer_ladner([Neg(boxes([alpha], f))])
        for g in unfold_dia(alpha, f):
            for member in g:
                assert in_closure(member, dia_closure)
        for g in unfold_dia_loaded(alpha, f):
            for member in g:
                assert in_closure(unload(member), dia_closure)


def test_unfold_chains_shrink():
    rng = random.Random(22)
    for _ in range(80):
        alpha = gen_program(rng, rng.randint(1, 6))
        for profile in test_profiles(alpha):
            for chain in unfold_P(alpha, profile):
                if isinstance(alpha, AtomicProg):
                    assert chain == (alpha,)
                    continue
                for gamma in chain:
                    if type(alpha).__name__ == "Star":
                        assert size(gamma) <= size(alpha)
                    else:
                        assert size(gamma) < size(alpha)
                if chain:
                    assert set(chain) <= progs_of(alpha)


def test_hpair_heads_are_atomic():
    rng = random.Random(23)
    for _ in range(80):
        alpha = gen_program(rng, rng.randint(1, 7))
        for pair in H(alpha):
            if pair.rest:
                assert isinstance(pair.rest[0], AtomicProg)
            assert set(pair.guards) <= tests_of(alpha)
            assert set(pair.rest) <= progs_of(alpha)


def test_H_keeps_fresh_atoms_fresh():
    rng = random.Random(24)
    for _ in range(60):
        alpha = gen_program(rng, rng.randint(1, 7))
        if "x" in vocabulary(alpha).props:
            continue
        for pair in H(alpha):
            for guard in pair.guards:
                assert "x" not in vocabulary(guard).props
            for prog in pair.rest:
                assert "x" not in vocabulary(prog).props


def test_unfold_semantic_equivalence_spot():
    rng = random.Random(25)
    for _ in range(40):
        alpha = gen_program(rng, rng.randint(1, 6))
        f = gen_formula(rng, 3)
        box = boxes([alpha], f)
        for _ in range(4):
            m = gen_model(rng)
            for w in range(m.states):
                assert evaluate(m, w, box) == any(
                    check_sequent(m, w, g) for g in unfold_box(alpha, f)
                )
                assert evaluate(m, w, Neg(box)) == any(
                    check_sequent(m, w, g) for g in unfold_dia(alpha, f)
                )
