"""Finite Kripke models, evaluation, and random models for oracle testing."""

import json
import random
from dataclasses import dataclass
from typing import Iterable

from .syntax import (
    And,
    Atom,
    AtomicProg,
    Bottom,
    Box,
    Comp,
    LoadedFormula,
    Member,
    Neg,
    Program,
    Sequent,
    Star,
    Test,
    Union,
    unload,
)

Pair = tuple[int, int]


@dataclass(frozen=True)
class KripkeModel:
    """A finite Kripke model over dense integer state indices."""

    states: int
    relations: dict[str, frozenset[Pair]]
    valuation: dict[str, frozenset[int]]

    def __post_init__(self):
        for name, pairs in self.relations.items():
            for i, j in pairs:
                if not (0 <= i < self.states and 0 <= j < self.states):
                    raise ValueError(f"relation {name} has out-of-range pair {(i, j)}")
        for name, states in self.valuation.items():
            if not all(0 <= i < self.states for i in states):
                raise ValueError(f"valuation of {name} out of range")


@dataclass(frozen=True)
class PointedModel:
    model: KripkeModel
    point: int

    def __post_init__(self):
        if not (0 <= self.point < self.model.states):
            raise ValueError("point out of range")


def _compose(r: frozenset[Pair], s: frozenset[Pair]) -> frozenset[Pair]:
    by_left: dict[int, list[int]] = {}
    for i, j in s:
        by_left.setdefault(i, []).append(j)
    return frozenset((i, k) for i, j in r for k in by_left.get(j, ()))


def _rt_closure(r: frozenset[Pair], n: int) -> frozenset[Pair]:
    # exact reflexive-transitive closure by worklist
    closure = set((i, i) for i in range(n)) | set(r)
    succ: dict[int, set[int]] = {}
    for i, j in closure:
        succ.setdefault(i, set()).add(j)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            out = succ.get(i, set())
            new = set()
            for j in list(out):
                new |= succ.get(j, set())
            if not new <= out:
                succ.setdefault(i, set()).update(new)
                changed = True
    return frozenset((i, j) for i, out in succ.items() for j in out)


def relate(m: KripkeModel, p: Program) -> frozenset[Pair]:
    """The accessibility relation of a program, star via exact closure."""
    if isinstance(p, AtomicProg):
        return m.relations.get(p.name, frozenset())
    if isinstance(p, Test):
        return frozenset((v, v) for v in range(m.states) if evaluate(m, v, p.cond))
    if isinstance(p, Union):
        return relate(m, p.left) | relate(m, p.right)
    if isinstance(p, Comp):
        return _compose(relate(m, p.left), relate(m, p.right))
    if isinstance(p, Star):
        return _rt_closure(relate(m, p.sub), m.states)
    raise TypeError(f"not a program: {p!r}")


def relate_seq(m: KripkeModel, progs: Iterable[Program]) -> frozenset[Pair]:
    """Relation of a program list: identity for the empty list, else composition."""
    result = frozenset((i, i) for i in range(m.states))
    for p in progs:
        result = _compose(result, relate(m, p))
    return result


def evaluate(m: KripkeModel, w: int, f: Member) -> bool:
    """Kripke truth at a state; loaded formulas evaluate as their unloaded versions."""
    if isinstance(f, LoadedFormula):
        return evaluate(m, w, unload(f))
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return w in m.valuation.get(f.name, frozenset())
    if isinstance(f, Neg):
        return not evaluate(m, w, f.sub)
    if isinstance(f, And):
        return evaluate(m, w, f.left) and evaluate(m, w, f.right)
    if isinstance(f, Box):
        return all(evaluate(m, v, f.sub) for (u, v) in relate(m, f.prog) if u == w)
    raise TypeError(f"not a formula: {f!r}")


def check_sequent(m: KripkeModel, w: int, s: Sequent) -> bool:
    """True iff every member of the sequent holds at the state."""
    return all(evaluate(m, w, f) for f in s)


def random_model(
    seed: int,
    max_states: int,
    props: Iterable[str],
    progs: Iterable[str],
    density: float,
) -> KripkeModel:
    """Deterministic pseudorandom model; edge probability given by density."""
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    rng = random.Random(seed)
    n = rng.randint(1, max_states)
    relations = {}
    for a in sorted(set(progs)):
        relations[a] = frozenset(
            (i, j) for i in range(n) for j in range(n) if rng.random() < density
        )
    valuation = {}
    for p in sorted(set(props)):
        valuation[p] = frozenset(i for i in range(n) if rng.random() < 0.5)
    return KripkeModel(n, relations, valuation)


def model_to_json(m: KripkeModel, point: int) -> str:
    """Serialize a pointed model in the fixed JSON shape."""
    obj = {
        "states": m.states,
        "relations": {a: sorted([i, j] for (i, j) in pairs) for a, pairs in sorted(m.relations.items())},
        "valuation": {p: sorted(states) for p, states in sorted(m.valuation.items())},
        "point": point,
    }
    return json.dumps(obj)


def model_from_json(text: str) -> PointedModel:
    obj = json.loads(text)
    model = KripkeModel(
        obj["states"],
        {a: frozenset((i, j) for i, j in pairs) for a, pairs in obj["relations"].items()},
        {p: frozenset(states) for p, states in obj["valuation"].items()},
    )
    return PointedModel(model, obj["point"])
