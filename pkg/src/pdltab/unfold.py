"""Local unfolding of boxes and diamonds: test profiles, P/F, and H."""

from dataclasses import dataclass

from .syntax import (
    AtomicProg,
    Comp,
    Formula,
    LoadedFormula,
    Member,
    Neg,
    Program,
    Sequent,
    Star,
    Test,
    Union,
    boxes,
    conj,
    formula_key,
    tests_of,
)

ProgList = tuple[Program, ...]
EPSILON: ProgList = ()


@dataclass(frozen=True)
class TestProfile:
    """A subset of the shallow tests of a program, fixing which tests succeed."""

    __test__ = False

    tests: tuple[Formula, ...]  # all shallow tests, in canonical order
    chosen: frozenset[Formula]

    def __contains__(self, t: Formula) -> bool:
        return t in self.chosen


@dataclass(frozen=True)
class HPair:
    """A guard set and a residual program list; nonempty lists start atomic."""

    guards: tuple[Formula, ...]
    rest: ProgList


def test_profiles(p: Program) -> list[TestProfile]:
    """All test profiles, enumerated by increasing bitmask over canonical order."""
    tests = tuple(sorted(tests_of(p), key=formula_key))
    profiles = []
    for mask in range(1 << len(tests)):
        chosen = frozenset(t for i, t in enumerate(tests) if mask & (1 << i))
        profiles.append(TestProfile(tests, chosen))
    return profiles


test_profiles.__test__ = False


def signature_formula(p: Program, profile: TestProfile) -> Formula:
    """Conjunction of each test or its negation, per profile membership."""
    return conj(t if t in profile else Neg(t) for t in profile.tests)


def unfold_P(p: Program, profile: TestProfile) -> list[ProgList]:
    """Possible executions of the program when exactly the chosen tests succeed."""

    def go(b: Program) -> list[ProgList]:
        if isinstance(b, AtomicProg):
            return [(b,)]
        if isinstance(b, Test):
            return [EPSILON] if b.cond in profile else []
        if isinstance(b, Union):
            return _dedup(go(b.left) + go(b.right))
        if isinstance(b, Comp):
            left = go(b.left)
            out = [d + (b.right,) for d in left if d != EPSILON]
            if EPSILON in left:
                out += go(b.right)
            return _dedup(out)
        if isinstance(b, Star):
            out = [EPSILON]
            out += [d + (b,) for d in go(b.sub) if d != EPSILON]
            return _dedup(out)
        raise TypeError(f"not a program: {b!r}")

    return go(p)


def unfold_F(p: Program, profile: TestProfile) -> list[Formula]:
    """Negations of the failed test formulas."""
    return [Neg(t) for t in profile.tests if t not in profile]


def _dedup(items: list) -> list:
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


_box_cache: dict = {}


def unfold_box(p: Program, f: Formula) -> list[Sequent]:
    """One sequent per test profile (profiles in bitmask order, duplicates
    collapsed): the failed-test negations plus a box chain per execution."""
    cached = _box_cache.get((p, f))
    if cached is not None:
        return list(cached)
    out = []
    for profile in test_profiles(p):
        members: list[Member] = list(unfold_F(p, profile))
        members += [boxes(d, f) for d in unfold_P(p, profile)]
        out.append(Sequent(members))
    out = _dedup(out)
    _box_cache[(p, f)] = tuple(out)
    return out


_H_cache: dict = {}


def H(p: Program) -> list[HPair]:
    """Guarded residual executions for diamond unfolding."""
    cached = _H_cache.get(p)
    if cached is not None:
        return list(cached)

    def go(b: Program) -> list[tuple[frozenset[Formula], ProgList]]:
        if isinstance(b, AtomicProg):
            return [(frozenset(), (b,))]
        if isinstance(b, Test):
            return [(frozenset({b.cond}), EPSILON)]
        if isinstance(b, Union):
            return _dedup(go(b.left) + go(b.right))
        if isinstance(b, Comp):
            out = []
            for guards, rest in go(b.left):
                if rest != EPSILON:
                    out.append((guards, rest + (b.right,)))
            for guards, rest in go(b.left):
                if rest == EPSILON:
                    for guards2, rest2 in go(b.right):
                        out.append((guards | guards2, rest2))
            return _dedup(out)
        if isinstance(b, Star):
            out = [(frozenset(), EPSILON)]
            out += [(g, r + (b,)) for (g, r) in go(b.sub) if r != EPSILON]
            return _dedup(out)
        raise TypeError(f"not a program: {b!r}")

    out = [
        HPair(tuple(sorted(guards, key=formula_key)), rest) for guards, rest in go(p)
    ]
    _H_cache[p] = tuple(out)
    return out


def unfold_dia(p: Program, f: Formula) -> list[Sequent]:
    """One sequent per H-pair: guards plus the negated residual box chain."""
    out = []
    for pair in H(p):
        members: list[Member] = list(pair.guards)
        members.append(Neg(boxes(pair.rest, f)))
        out.append(Sequent(members))
    return _dedup(out)


def unfold_dia_loaded(p: Program, x: Member) -> list[Sequent]:
    """Loaded diamond unfolding.

    ``x`` is the remainder under the first loaded box: a plain formula, or a
    loaded formula whose prefix gives the remaining loaded boxes.  Residual
    chains stay loaded; an empty chain collapses to a plain negation.
    """
    if isinstance(x, LoadedFormula):
        rest_prefix, tail = x.prefix, x.tail
    else:
        rest_prefix, tail = (), x
    out = []
    for pair in H(p):
        chain = pair.rest + rest_prefix
        residue: Member
        if chain:
            residue = LoadedFormula(chain, tail)
        else:
            residue = Neg(tail)
        members: list[Member] = list(pair.guards)
        members.append(residue)
        out.append(Sequent(members))
    return _dedup(out)
