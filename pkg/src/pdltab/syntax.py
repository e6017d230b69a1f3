"""Formula and program ASTs, parser, printer, and syntactic utilities."""

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class Formula:
    """Base class for PDL formulas (primitives only: bot, atoms, ~, &, [.]).

    Equality and hashing go through the structural key, which is cached per
    object; proof search hammers both on large formulas.
    """

    def __str__(self) -> str:
        return print_formula(self)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return formula_key(self) == formula_key(other)

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(formula_key(self))
            object.__setattr__(self, "_hash", h)
        return h


class Program:
    """Base class for PDL programs (atomic, tests, u, ;, *)."""

    def __str__(self) -> str:
        return print_program(self)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Program):
            return NotImplemented
        return program_key(self) == program_key(other)

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(program_key(self))
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True, eq=False)
class Bottom(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, eq=False)
class Neg(Formula):
    sub: Formula


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Box(Formula):
    prog: Program
    sub: Formula


@dataclass(frozen=True, eq=False)
class AtomicProg(Program):
    name: str


@dataclass(frozen=True, eq=False)
class Test(Program):
    __test__ = False  # keep pytest collection away

    cond: Formula


@dataclass(frozen=True, eq=False)
class Union(Program):
    left: Program
    right: Program


@dataclass(frozen=True, eq=False)
class Comp(Program):
    left: Program
    right: Program


@dataclass(frozen=True, eq=False)
class Star(Program):
    sub: Program


@dataclass(frozen=True, eq=False)
class LoadedFormula:
    """A negated box chain whose leading boxes carry the focus mark.

    ``LoadedFormula((a, b), phi)`` denotes the formula obtained from
    ``~[a][b]phi`` by marking both boxes as loaded.  The negation is part
    of the type; ``prefix`` is never empty.
    """

    prefix: tuple[Program, ...]
    tail: Formula

    def __post_init__(self):
        if not self.prefix:
            raise ValueError("loaded prefix must be nonempty")

    def __str__(self) -> str:
        return print_member(self)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, LoadedFormula):
            return NotImplemented
        return member_key(self) == member_key(other)

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(member_key(self))
            object.__setattr__(self, "_hash", h)
        return h


#: A sequent member: a plain formula or a loaded formula.
Member = Formula | LoadedFormula

TRUE = Neg(Bottom())
BOT = Bottom()


# ---------------------------------------------------------------------------
# Canonical structural order


def formula_key(f: Formula) -> tuple:
    key = f.__dict__.get("_key")
    if key is not None:
        return key
    if isinstance(f, Bottom):
        key = (0,)
    elif isinstance(f, Atom):
        key = (1, f.name)
    elif isinstance(f, And):
        key = (2, formula_key(f.left), formula_key(f.right))
    elif isinstance(f, Neg):
        key = (3, formula_key(f.sub))
    elif isinstance(f, Box):
        key = (4, program_key(f.prog), formula_key(f.sub))
    else:
        raise TypeError(f"not a formula: {f!r}")
    object.__setattr__(f, "_key", key)
    return key


def program_key(p: Program) -> tuple:
    key = p.__dict__.get("_key")
    if key is not None:
        return key
    if isinstance(p, AtomicProg):
        key = (0, p.name)
    elif isinstance(p, Test):
        key = (1, formula_key(p.cond))
    elif isinstance(p, Union):
        key = (2, program_key(p.left), program_key(p.right))
    elif isinstance(p, Comp):
        key = (3, program_key(p.left), program_key(p.right))
    elif isinstance(p, Star):
        key = (4, program_key(p.sub))
    else:
        raise TypeError(f"not a program: {p!r}")
    object.__setattr__(p, "_key", key)
    return key


def member_key(m: Member) -> tuple:
    """Sort key over sequent members; plain formulas sort before loaded ones."""
    if isinstance(m, LoadedFormula):
        key = m.__dict__.get("_key")
        if key is None:
            key = (1, tuple(program_key(a) for a in m.prefix), formula_key(m.tail))
            object.__setattr__(m, "_key", key)
        return key
    return (0, formula_key(m))


class Sequent:
    """A finite set of possibly loaded formulas, stored sorted and deduplicated.

    At most one member may be loaded; every tableau rule preserves this and
    the constructor asserts it.
    """

    __slots__ = ("members", "_hash")

    members: tuple[Member, ...]

    def __init__(self, members: Iterable[Member] = ()):
        canon = sorted(set(members), key=member_key)
        if sum(1 for m in canon if isinstance(m, LoadedFormula)) > 1:
            raise ValueError("sequent with more than one loaded member")
        object.__setattr__(self, "members", tuple(canon))
        object.__setattr__(self, "_hash", hash(self.members))

    def __iter__(self) -> Iterator[Member]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, m: Member) -> bool:
        return m in self.members

    def __eq__(self, other) -> bool:
        return self is other or (
            isinstance(other, Sequent) and self.members == other.members
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Sequent({print_sequent(self)!r})"

    def __str__(self) -> str:
        return print_sequent(self)

    @property
    def loaded(self) -> bool:
        return any(isinstance(m, LoadedFormula) for m in self.members)

    @property
    def loaded_member(self) -> LoadedFormula | None:
        for m in self.members:
            if isinstance(m, LoadedFormula):
                return m
        return None

    def without(self, m: Member) -> "Sequent":
        return Sequent(x for x in self.members if x != m)

    def union(self, other: Iterable[Member]) -> "Sequent":
        return Sequent(list(self.members) + list(other))


@dataclass(frozen=True)
class Vocabulary:
    """Atomic propositions and atomic programs occurring in an object."""

    props: frozenset[str]
    progs: frozenset[str]

    def __or__(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(self.props | other.props, self.progs | other.progs)

    def __and__(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(self.props & other.props, self.progs & other.progs)

    def __le__(self, other: "Vocabulary") -> bool:
        return self.props <= other.props and self.progs <= other.progs


EMPTY_VOC = Vocabulary(frozenset(), frozenset())


# ---------------------------------------------------------------------------
# Parser

RESERVED_PREFIX = "_q"
KEYWORDS = {"bot", "u"}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[a-z_][a-zA-Z0-9_]*)"
    r"|(?P<op><->|->|[~&|\[\]();*?,])"
    r")"
)


class ParseError(ValueError):
    """Syntax error, with the character position where it occurred."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ReservedPrefixError(ParseError):
    """Identifier uses the reserved internal prefix."""


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
        if m.group("ident"):
            word = m.group("ident")
            if word.startswith("_"):
                raise ReservedPrefixError(
                    f"identifier {word!r} uses a reserved prefix", m.start("ident")
                )
            kind = "kw" if word in KEYWORDS else "ident"
            tokens.append((kind, word, m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        tok = self.peek()
        if tok is None or tok[1] != value:
            got = tok[1] if tok else "end of input"
            at = tok[2] if tok else len(self.text)
            raise ParseError(f"expected {value!r}, found {got!r}", at)
        self.pos += 1

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[1] == value

    # formula := iff ; right-associative sugar layers
    def formula(self) -> Formula:
        left = self.imp()
        if self.at("<->"):
            self.next()
            right = self.formula()
            return And(Neg(And(left, Neg(right))), Neg(And(right, Neg(left))))
        return left

    def imp(self) -> Formula:
        left = self.or_()
        if self.at("->"):
            self.next()
            right = self.imp()
            return Neg(And(left, Neg(right)))
        return left

    def or_(self) -> Formula:
        left = self.and_()
        if self.at("|"):
            self.next()
            right = self.or_()
            return Neg(And(Neg(left), Neg(right)))
        return left

    def and_(self) -> Formula:
        left = self.unary()
        if self.at("&"):
            self.next()
            right = self.and_()
            return And(left, right)
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        kind, value, at = tok
        if value == "~":
            self.next()
            return Neg(self.unary())
        if value == "[":
            self.next()
            prog = self.program()
            self.expect("]")
            return Box(prog, self.unary())
        if value == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if kind == "kw" and value == "bot":
            self.next()
            return Bottom()
        if kind == "ident":
            self.next()
            return Atom(value)
        raise ParseError(f"unexpected token {value!r} in formula", at)

    def program(self) -> Program:
        left = self.comp()
        if self.at("u"):
            self.next()
            right = self.program()
            return Union(left, right)
        return left

    def comp(self) -> Program:
        left = self.starred()
        if self.at(";"):
            self.next()
            right = self.comp()
            return Comp(left, right)
        return left

    def starred(self) -> Program:
        p = self.prog_primary()
        while self.at("*"):
            self.next()
            p = Star(p)
        return p

    def prog_primary(self) -> Program:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        kind, value, at = tok
        if value == "?":
            self.next()
            self.expect("(")
            cond = self.formula()
            self.expect(")")
            return Test(cond)
        if value == "(":
            self.next()
            p = self.program()
            self.expect(")")
            return p
        if kind == "ident":
            self.next()
            return AtomicProg(value)
        raise ParseError(f"unexpected token {value!r} in program", at)


def parse_formula(text: str) -> Formula:
    """Parse concrete syntax into a primitive-connective AST."""
    p = _Parser(text)
    f = p.formula()
    tok = p.peek()
    if tok is not None:
        raise ParseError(f"unexpected trailing token {tok[1]!r}", tok[2])
    return f


def parse_program(text: str) -> Program:
    p = _Parser(text)
    prog = p.program()
    tok = p.peek()
    if tok is not None:
        raise ParseError(f"unexpected trailing token {tok[1]!r}", tok[2])
    return prog


def parse_sequent(text: str) -> Sequent:
    """Parse a comma-separated list of formulas."""
    parts = []
    p = _Parser(text)
    if p.peek() is not None:
        parts.append(p.formula())
        while p.at(","):
            p.next()
            parts.append(p.formula())
    tok = p.peek()
    if tok is not None:
        raise ParseError(f"unexpected trailing token {tok[1]!r}", tok[2])
    return Sequent(parts)


# ---------------------------------------------------------------------------
# Printer (primitives only, round-trips structurally)


def print_formula(f: Formula) -> str:
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Neg):
        return "~" + _print_unary_arg(f.sub)
    if isinstance(f, Box):
        return "[" + print_program(f.prog) + "]" + _print_unary_arg(f.sub)
    if isinstance(f, And):
        left = _print_unary_arg(f.left) if isinstance(f.left, And) else print_formula(f.left)
        return f"{left} & {print_formula(f.right)}"
    raise TypeError(f"not a formula: {f!r}")


def _print_unary_arg(f: Formula) -> str:
    # conjunctions bind looser than ~ and [.]
    s = print_formula(f)
    return f"({s})" if isinstance(f, And) else s


def print_program(p: Program) -> str:
    if isinstance(p, AtomicProg):
        return p.name
    if isinstance(p, Test):
        return "?(" + print_formula(p.cond) + ")"
    if isinstance(p, Star):
        inner = print_program(p.sub)
        if isinstance(p.sub, (Union, Comp)):
            inner = f"({inner})"
        return inner + "*"
    if isinstance(p, Comp):
        left = print_program(p.left)
        if isinstance(p.left, (Union, Comp)):
            left = f"({left})"
        right = print_program(p.right)
        if isinstance(p.right, Union):
            right = f"({right})"
        return f"{left} ; {right}"
    if isinstance(p, Union):
        left = print_program(p.left)
        if isinstance(p.left, Union):
            left = f"({left})"
        return f"{left} u {print_program(p.right)}"
    raise TypeError(f"not a program: {p!r}")


def print_member(m: Member) -> str:
    """Print a member; loaded boxes carry a ``!`` marker (not parseable)."""
    if isinstance(m, LoadedFormula):
        marks = "".join(f"[!{print_program(a)}]" for a in m.prefix)
        return "~" + marks + _print_unary_arg(m.tail)
    return print_formula(m)


def print_sequent(s: Sequent) -> str:
    return ", ".join(print_member(m) for m in s.members)


# ---------------------------------------------------------------------------
# Syntactic operations


def single_neg(f: Formula) -> Formula:
    """The single negation: strips a top negation if present, else adds one."""
    return f.sub if isinstance(f, Neg) else Neg(f)


def subformulas_step(f: Formula) -> list[Formula]:
    """Direct subformulas, including test conditions under boxes."""
    if isinstance(f, Neg):
        return [f.sub]
    if isinstance(f, And):
        return [f.left, f.right]
    if isinstance(f, Box):
        return [f.sub] + sorted(tests_of(f.prog), key=formula_key)
    return []


def fischer_ladner(formulas: Iterable[Formula]) -> set[Formula]:
    """Smallest superset closed under single negations, subformulas, and
    the three box-decomposition clauses."""
    closure: set[Formula] = set()
    todo = list(formulas)
    while todo:
        f = todo.pop()
        if f in closure:
            continue
        closure.add(f)
        todo.append(single_neg(f))
        todo.extend(subformulas_step(f))
        if isinstance(f, Box):
            a, phi = f.prog, f.sub
            if isinstance(a, Union):
                todo.append(Box(a.left, phi))
                todo.append(Box(a.right, phi))
            elif isinstance(a, Comp):
                todo.append(Box(a.left, Box(a.right, phi)))
            elif isinstance(a, Star):
                todo.append(Box(a.sub, f))
    return closure


_tests_cache: dict = {}
_progs_cache: dict = {}


def tests_of(p: Program) -> frozenset[Formula]:
    """Shallow tests: test conditions not nested inside other tests."""
    cached = _tests_cache.get(p)
    if cached is not None:
        return cached
    if isinstance(p, AtomicProg):
        out = frozenset()
    elif isinstance(p, Test):
        out = frozenset({p.cond})
    elif isinstance(p, (Union, Comp)):
        out = tests_of(p.left) | tests_of(p.right)
    elif isinstance(p, Star):
        out = tests_of(p.sub)
    else:
        raise TypeError(f"not a program: {p!r}")
    _tests_cache[p] = out
    return out


tests_of.__test__ = False


def progs_of(p: Program) -> frozenset[Program]:
    """Shallow subprograms: programs not nested inside tests."""
    cached = _progs_cache.get(p)
    if cached is not None:
        return cached
    if isinstance(p, (AtomicProg, Test)):
        out = frozenset({p})
    elif isinstance(p, (Union, Comp)):
        out = frozenset({p}) | progs_of(p.left) | progs_of(p.right)
    elif isinstance(p, Star):
        out = frozenset({p}) | progs_of(p.sub)
    else:
        raise TypeError(f"not a program: {p!r}")
    _progs_cache[p] = out
    return out


def boxes(progs: Iterable[Program], f: Formula) -> Formula:
    """Right fold of boxes over a program list; the empty list yields f."""
    result = f
    for a in reversed(list(progs)):
        result = Box(a, result)
    return result


def loaded_boxes(progs: Iterable[Program], f: Formula) -> Member:
    """Loaded variant of :func:`boxes`; empty list degenerates to ``f``."""
    prefix = tuple(progs)
    return LoadedFormula(prefix, f) if prefix else f


Substitution = Mapping[str, Formula]


def substitute(sigma: Substitution, x):
    """Simultaneous substitution of atoms by formulas, including inside tests."""
    if isinstance(x, Bottom):
        return x
    if isinstance(x, Atom):
        return sigma.get(x.name, x)
    if isinstance(x, Neg):
        return Neg(substitute(sigma, x.sub))
    if isinstance(x, And):
        return And(substitute(sigma, x.left), substitute(sigma, x.right))
    if isinstance(x, Box):
        return Box(substitute(sigma, x.prog), substitute(sigma, x.sub))
    if isinstance(x, AtomicProg):
        return x
    if isinstance(x, Test):
        return Test(substitute(sigma, x.cond))
    if isinstance(x, Union):
        return Union(substitute(sigma, x.left), substitute(sigma, x.right))
    if isinstance(x, Comp):
        return Comp(substitute(sigma, x.left), substitute(sigma, x.right))
    if isinstance(x, Star):
        return Star(substitute(sigma, x.sub))
    raise TypeError(f"cannot substitute in {x!r}")


def vocabulary(x) -> Vocabulary:
    """Atoms and atomic programs occurring anywhere in a formula, program,
    loaded formula, or sequent."""
    props: set[str] = set()
    progs: set[str] = set()

    def walk(y):
        if isinstance(y, Atom):
            props.add(y.name)
        elif isinstance(y, AtomicProg):
            progs.add(y.name)
        elif isinstance(y, Neg):
            walk(y.sub)
        elif isinstance(y, And):
            walk(y.left)
            walk(y.right)
        elif isinstance(y, Box):
            walk(y.prog)
            walk(y.sub)
        elif isinstance(y, Test):
            walk(y.cond)
        elif isinstance(y, (Union, Comp)):
            walk(y.left)
            walk(y.right)
        elif isinstance(y, Star):
            walk(y.sub)
        elif isinstance(y, LoadedFormula):
            for a in y.prefix:
                walk(a)
            walk(y.tail)
        elif isinstance(y, Sequent):
            for m in y:
                walk(m)
        elif isinstance(y, Bottom):
            pass
        else:
            raise TypeError(f"no vocabulary for {y!r}")

    walk(x)
    return Vocabulary(frozenset(props), frozenset(progs))


def measure(x) -> int:
    """Termination measure on members and sequents.

    Follows the published clause table except that the clause for a
    negated non-atomic box also counts the measure of the negated body:
    without that term, unfolding ``~[a*]phi`` into ``~phi`` can increase
    the measure (take ``phi = (p & q) & r``), so the local rules would
    not strictly descend.
    """
    if isinstance(x, Sequent):
        return sum(measure(m) for m in x)
    if isinstance(x, LoadedFormula):
        return measure(Neg(boxes(x.prefix, x.tail)))
    if isinstance(x, (Bottom, Atom)):
        return 0
    if isinstance(x, And):
        return 1 + measure(x.left) + measure(x.right)
    if isinstance(x, Box):
        if isinstance(x.prog, AtomicProg):
            return 0
        return 1 + measure(x.sub) + sum(measure(Neg(t)) for t in tests_of(x.prog))
    if isinstance(x, Neg):
        y = x.sub
        if isinstance(y, (Bottom, Atom)):
            return 0
        if isinstance(y, Neg):
            return 1 + measure(y.sub)
        if isinstance(y, And):
            return 1 + max(measure(Neg(y.left)), measure(Neg(y.right)))
        if isinstance(y, Box):
            if isinstance(y.prog, AtomicProg):
                return 0
            return 1 + measure(Neg(y.sub)) + sum(measure(t) for t in tests_of(y.prog))
    raise TypeError(f"no measure for {x!r}")


def member_is_basic(m: Member) -> bool:
    """Whether a member has one of the basic shapes.

    A loaded member counts as basic exactly when its first loaded program
    is atomic (it then has the shape of a basic negated box).
    """
    if isinstance(m, LoadedFormula):
        return isinstance(m.prefix[0], AtomicProg)
    if isinstance(m, (Bottom, Atom)):
        return True
    if isinstance(m, Neg):
        return isinstance(m.sub, (Bottom, Atom)) or (
            isinstance(m.sub, Box) and isinstance(m.sub.prog, AtomicProg)
        )
    if isinstance(m, Box):
        return isinstance(m.prog, AtomicProg)
    return False


def is_basic(s: Sequent) -> bool:
    return all(member_is_basic(m) for m in s)


def unload(x):
    """Remove all loading marks from a member or a sequent."""
    if isinstance(x, Sequent):
        return Sequent(unload(m) for m in x)
    if isinstance(x, LoadedFormula):
        return Neg(boxes(x.prefix, x.tail))
    return x


def size(x) -> int:
    """Number of AST constructors, counting through tests."""
    if isinstance(x, (Bottom, Atom, AtomicProg)):
        return 1
    if isinstance(x, (Neg, Star)):
        return 1 + size(x.sub)
    if isinstance(x, Test):
        return 1 + size(x.cond)
    if isinstance(x, (And, Union, Comp)):
        return 1 + size(x.left) + size(x.right)
    if isinstance(x, Box):
        return 1 + size(x.prog) + size(x.sub)
    if isinstance(x, LoadedFormula):
        return 1 + sum(size(a) for a in x.prefix) + size(x.tail)
    raise TypeError(f"no size for {x!r}")


def conj(formulas: Iterable[Formula]) -> Formula:
    """Right-folded conjunction; the empty conjunction is ``~bot``."""
    items = list(formulas)
    if not items:
        return TRUE
    result = items[-1]
    for f in reversed(items[:-1]):
        result = And(f, result)
    return result


def disj(formulas: Iterable[Formula]) -> Formula:
    """Right-folded desugared disjunction; the empty disjunction is ``bot``."""
    items = list(formulas)
    if not items:
        return BOT
    result = items[-1]
    for f in reversed(items[:-1]):
        result = Neg(And(Neg(f), Neg(result)))
    return result
