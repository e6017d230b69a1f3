import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from pdltab.syntax import (
    And,
    Atom,
    AtomicProg,
    Bottom,
    Box,
    Comp,
    LoadedFormula,
    Neg,
    ParseError,
    ReservedPrefixError,
    Sequent,
    Star,
    Test,
    Union,
    boxes,
    fischer_ladner,
    is_basic,
    loaded_boxes,
    measure,
    parse_formula,
    parse_program,
    parse_sequent,
    print_formula,
    print_program,
    progs_of,
    single_neg,
    substitute,
    tests_of,
    unload,
    vocabulary,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")
a, b = AtomicProg("a"), AtomicProg("b")


# --- parsing

def test_parse_double_negation():
    assert parse_formula("~~p") == Neg(Neg(p))


def test_parse_program_sugar():
    assert parse_formula("[(a u ?(p)) ; b*] q") == Box(
        Comp(Union(a, Test(p)), Star(b)), q
    )


def test_parse_implication_desugars():
    assert parse_formula("p -> q") == Neg(And(p, Neg(q)))


def test_parse_or_desugars():
    assert parse_formula("p | q") == Neg(And(Neg(p), Neg(q)))


def test_parse_iff_desugars():
    assert parse_formula("p <-> q") == And(
        Neg(And(p, Neg(q))), Neg(And(q, Neg(p)))
    )


def test_parse_precedence():
    assert parse_formula("~p & q") == And(Neg(p), q)
    assert parse_program("a u b ; c") == Union(a, Comp(b, AtomicProg("c")))
    assert parse_program("a ; b*") == Comp(a, Star(b))


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_formula("p & &")
    assert err.value.position == 4


def test_reserved_prefix_rejected():
    with pytest.raises(ReservedPrefixError):
        parse_formula("_q1 & p")


def test_parse_sequent():
    assert parse_sequent("p, ~p") == Sequent([p, Neg(p)])


# --- printing

def test_print_examples():
    assert print_formula(Neg(Neg(p))) == "~~p"
    assert parse_formula(print_formula(Neg(Neg(p)))) == Neg(Neg(p))
    assert print_formula(Box(Star(a), q)) == "[a*]q"
    assert print_formula(Bottom()) == "bot"


formulas = st.deferred(
    lambda: st.one_of(
        st.just(Bottom()),
        st.builds(Atom, st.sampled_from(["p", "q", "r"])),
        st.builds(Neg, formulas),
        st.builds(And, formulas, formulas),
        st.builds(Box, programs, formulas),
    )
)
programs = st.deferred(
    lambda: st.one_of(
        st.builds(AtomicProg, st.sampled_from(["a", "b", "c"])),
        st.builds(Test, formulas),
        st.builds(Union, programs, programs),
        st.builds(Comp, programs, programs),
        st.builds(Star, programs),
    )
)


@given(formulas)
@settings(max_examples=300, deadline=None)
def test_print_parse_roundtrip(f):
    assert parse_formula(print_formula(f)) == f


@given(programs)
@settings(max_examples=200, deadline=None)
def test_print_parse_roundtrip_programs(prog):
    assert parse_program(print_program(prog)) == prog


# --- single negation

def test_single_neg():
    assert single_neg(Neg(p)) == p
    assert single_neg(p) == Neg(p)
    assert single_neg(Bottom()) == Neg(Bottom())


@given(formulas)
@settings(max_examples=100, deadline=None)
def test_single_neg_double_application(f):
    twice = single_neg(single_neg(f))
    collapsed = f.sub.sub if isinstance(f, Neg) and isinstance(f.sub, Neg) else f
    assert twice in (f, collapsed)


# --- Fischer-Ladner closure

def test_fl_star_clause():
    alpha = Comp(a, b)
    start = Box(Star(alpha), p)
    closure = fischer_ladner([start])
    assert Box(alpha, start) in closure


def test_fl_empty():
    assert fischer_ladner([]) == set()


def test_fl_atomic_box():
    assert fischer_ladner([parse_formula("[a]p")]) == {
        parse_formula("[a]p"),
        parse_formula("~[a]p"),
        p,
        Neg(p),
    }


@given(st.lists(formulas, max_size=3))
@settings(max_examples=60, deadline=None)
def test_fl_idempotent_and_monotone(fs):
    closure = fischer_ladner(fs)
    assert fischer_ladner(closure) == closure
    assert set(fs) <= closure
    assert len(closure) < 10_000


# --- tests_of / progs_of

def test_tests_of_examples():
    assert tests_of(parse_program("?([?(q)]p) ; a")) == {parse_formula("[?(q)]p")}
    assert tests_of(a) == set()
    assert tests_of(parse_program("(?(p) u a) ; b*")) == {p}


def test_progs_of_examples():
    whole = parse_program("?([?(q)]p) ; a")
    assert progs_of(whole) == {whole, parse_program("?([?(q)]p)"), a}
    assert progs_of(a) == {a}
    assert progs_of(Star(b)) == {Star(b), b}


# --- boxes and loading

def test_boxes():
    assert boxes([], p) == p
    assert boxes([a, b], p) == Box(a, Box(b, p))
    assert loaded_boxes([a, Star(b)], p) == LoadedFormula((a, Star(b)), p)
    assert loaded_boxes([], p) == p


def test_loaded_formula_requires_prefix():
    with pytest.raises(ValueError):
        LoadedFormula((), p)


# --- substitution

def test_substitute_swap():
    sigma = {"p": r, "r": p}
    f = parse_formula("[?([?(r)]p)]r")
    assert substitute(sigma, f) == parse_formula("[?([?(p)]r)]p")


def test_substitute_identity_and_other():
    f = parse_formula("[a*](p & ~q)")
    assert substitute({}, f) == f
    assert substitute({"p": r}, q) == q


@given(formulas)
@settings(max_examples=100, deadline=None)
def test_substitute_vocabulary(f):
    sigma = {"p": parse_formula("q & [a]r")}
    voc = vocabulary(substitute(sigma, f))
    base = vocabulary(f)
    bound = (base.props - {"p"}) | vocabulary(sigma["p"]).props
    assert voc.props <= bound
    assert voc.progs <= base.progs | vocabulary(sigma["p"]).progs


# --- vocabulary

def test_vocabulary_examples():
    v = vocabulary(parse_formula("[a]p"))
    assert v.props == {"p"} and v.progs == {"a"}
    v = vocabulary(parse_formula("[?(q)]bot"))
    assert v.props == {"q"} and v.progs == set()
    v = vocabulary(parse_sequent("p, ~[a][a*]p"))
    assert v.props == {"p"} and v.progs == {"a"}


# --- measure

def test_measure_examples():
    assert measure(parse_formula("~~p")) == 1
    assert measure(parse_formula("[a](p & q)")) == 0
    assert measure(parse_formula("~(p & q)")) == 1


def test_measure_loaded_equals_unloaded():
    lf = LoadedFormula((Star(a), b), p)
    assert measure(lf) == measure(unload(lf))


# --- basic sequents

def test_is_basic():
    assert is_basic(parse_sequent("p, ~[a]q"))
    assert not is_basic(parse_sequent("p & q"))
    assert not is_basic(parse_sequent("[a*]p"))
    assert is_basic(Sequent([LoadedFormula((a, Star(b)), p)]))
    assert not is_basic(Sequent([LoadedFormula((Star(b),), p)]))


# --- unloading

def test_unload():
    assert unload(LoadedFormula((a, b), p)) == parse_formula("~[a][b]p")
    assert unload(LoadedFormula((Star(a),), q)) == parse_formula("~[a*]q")
    s = Sequent([p, LoadedFormula((a,), q)])
    assert unload(s) == parse_sequent("p, ~[a]q")


# --- sequents

def test_sequent_is_canonical():
    assert Sequent([q, p, q]) == Sequent([p, q])
    assert list(Sequent([q, p])) == list(Sequent([p, q]))


def test_sequent_rejects_two_loaded():
    with pytest.raises(ValueError):
        Sequent([LoadedFormula((a,), p), LoadedFormula((b,), q)])
