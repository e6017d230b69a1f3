import random

import pytest

from pdltab.semantics import (
    KripkeModel,
    check_sequent,
    evaluate,
    model_from_json,
    model_to_json,
    random_model,
    relate,
    relate_seq,
)
from pdltab.syntax import (
    Atom,
    AtomicProg,
    Comp,
    Sequent,
    Star,
    Test,
    Union,
    boxes,
    parse_formula,
    parse_program,
    parse_sequent,
    substitute,
)
from pdltab.fuzz import gen_formula, gen_model, gen_program

a, b = AtomicProg("a"), AtomicProg("b")


def chain(n, prog="a"):
    return KripkeModel(n, {prog: frozenset((i, i + 1) for i in range(n - 1))}, {})


def test_eval_bottom_and_test_box():
    m = chain(1)
    assert not evaluate(m, 0, parse_formula("bot"))
    assert evaluate(m, 0, parse_formula("[?(p)]q"))  # p false: empty test relation


def test_eval_free_repeat_model():
    # one state, a-loop, p false
    m = KripkeModel(1, {"a": frozenset({(0, 0)})}, {"p": frozenset()})
    assert evaluate(m, 0, parse_formula("[a*]~[a]p & ~p"))


def test_relate_test_diagonal():
    m = KripkeModel(2, {}, {"p": frozenset({1})})
    assert relate(m, Test(Atom("p"))) == frozenset({(1, 1)})


def test_relate_star_closure():
    m = chain(2)
    assert relate(m, Star(a)) == frozenset({(0, 0), (1, 1), (0, 1)})


def test_relate_union():
    m = KripkeModel(
        2,
        {"a": frozenset({(0, 1)}), "b": frozenset({(1, 0)})},
        {},
    )
    assert relate(m, Union(a, b)) == frozenset({(0, 1), (1, 0)})


def test_relate_seq_identity_and_composition():
    m = KripkeModel(3, {"a": frozenset({(0, 1)}), "b": frozenset({(1, 2)})}, {})
    assert relate_seq(m, []) == frozenset({(0, 0), (1, 1), (2, 2)})
    assert relate_seq(m, [a, b]) == frozenset({(0, 2)})
    prog = parse_program("(a u b)*")
    assert relate_seq(m, [prog]) == relate(m, prog)


def test_check_sequent():
    m = chain(1)
    assert check_sequent(m, 0, Sequent([]))
    assert not check_sequent(m, 0, parse_sequent("p, ~p"))


def test_check_sequent_lpr_model():
    # two states, w --a--> v, a-loop at v, p at v
    m = KripkeModel(
        2, {"a": frozenset({(0, 1), (1, 1)})}, {"p": frozenset({1}), "q": frozenset()}
    )
    assert check_sequent(m, 0, parse_sequent("[a][a*]p, ~[a][a*]q"))
    assert check_sequent(m, 1, parse_sequent("p, [a][a*]p, ~[a*]q"))


def test_random_model_deterministic():
    m1 = random_model(42, 4, {"p", "q"}, {"a"}, 0.5)
    m2 = random_model(42, 4, {"p", "q"}, {"a"}, 0.5)
    assert m1 == m2
    assert random_model(43, 4, {"p"}, {"a"}, 0.0).relations["a"] == frozenset()
    m = random_model(7, 1, {"p"}, {"a", "b"}, 1.0)
    assert m.states == 1
    assert m.relations["a"] == frozenset({(0, 0)})
    assert m.relations["b"] == frozenset({(0, 0)})


def test_model_bounds_validated():
    with pytest.raises(ValueError):
        KripkeModel(1, {"a": frozenset({(0, 1)})}, {})
    with pytest.raises(ValueError):
        random_model(0, 0, set(), set(), 0.5)


def test_star_is_least_reflexive_transitive_closure():
    rng = random.Random(11)
    for _ in range(30):
        m = gen_model(rng)
        prog = gen_program(rng, rng.randint(1, 4))
        base = relate(m, prog)
        star = relate(m, Star(prog))
        # closure by brute-force iteration
        expected = set((i, i) for i in range(m.states)) | set(base)
        changed = True
        while changed:
            changed = False
            for (i, j) in list(expected):
                for (k, l) in base:
                    if j == k and (i, l) not in expected:
                        expected.add((i, l))
                        changed = True
        assert star == frozenset(expected)


def test_relate_seq_equals_composition_program():
    rng = random.Random(12)
    for _ in range(30):
        m = gen_model(rng)
        progs = [gen_program(rng, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        composed = progs[-1]
        for prog in reversed(progs[:-1]):
            composed = Comp(prog, composed)
        assert relate_seq(m, progs) == relate(m, composed)


def test_boxes_evaluation():
    rng = random.Random(13)
    for _ in range(30):
        m = gen_model(rng)
        progs = [gen_program(rng, rng.randint(1, 3)) for _ in range(rng.randint(0, 3))]
        f = gen_formula(rng, 3)
        rel = relate_seq(m, progs)
        for w in range(m.states):
            expected = all(evaluate(m, v, f) for (u, v) in rel if u == w)
            assert evaluate(m, w, boxes(progs, f)) == expected


def test_evaluation_commutes_with_substitution():
    rng = random.Random(14)
    for _ in range(40):
        m = gen_model(rng)
        f = gen_formula(rng, rng.randint(1, 6))
        sigma = {"p": gen_formula(rng, 3)}
        revalued = KripkeModel(
            m.states,
            m.relations,
            {
                **m.valuation,
                "p": frozenset(w for w in range(m.states) if evaluate(m, w, sigma["p"])),
            },
        )
        for w in range(m.states):
            assert evaluate(m, w, substitute(sigma, f)) == evaluate(revalued, w, f)


def test_json_round_trip_and_format():
    m = KripkeModel(
        2, {"a": frozenset({(1, 0), (0, 1)})}, {"p": frozenset({1, 0})}
    )
    text = model_to_json(m, 1)
    assert text == (
        '{"states": 2, "relations": {"a": [[0, 1], [1, 0]]},'
        ' "valuation": {"p": [0, 1]}, "point": 1}'
    )
    back = model_from_json(text)
    assert back.model == m and back.point == 1
