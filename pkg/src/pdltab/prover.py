"""Cyclic loaded-tableau proof search for PDL sequents.

Proof search is a two-player game: the prover picks a rule and principal
formula, the builder picks a rule child.  A play ends at a closed sequent or
a loaded-path repeat (prover wins), or at a stuck sequent or free repeat
(builder wins).  A prover win yields a closed tableau; a builder win yields
a winning strategy tree from which a countermodel is extracted.
"""

import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .semantics import KripkeModel
from .syntax import (
    And,
    Atom,
    AtomicProg,
    Bottom,
    Box,
    Formula,
    LoadedFormula,
    Member,
    Neg,
    Sequent,
    formula_key,
    is_basic,
    member_key,
    print_member,
    print_sequent,
    unload,
    vocabulary,
)
from .unfold import unfold_box, unfold_dia, unfold_dia_loaded

sys.setrecursionlimit(100000)

DEFAULT_BUDGET = 1_000_000
_BIG = 1 << 60


class RuleId(Enum):
    NEG = "(~)"
    AND = "(&)"
    NEG_AND = "(~&)"
    BOX = "([])"
    DIA = "(<>)"
    DIA_LOADED = "(<>!)"
    LOAD_PLUS = "(L+)"
    LOAD_MINUS = "(L-)"
    MODAL = "(M)"

    def __str__(self) -> str:
        return self.value


LOCAL_RULES = frozenset(
    {RuleId.NEG, RuleId.AND, RuleId.NEG_AND, RuleId.BOX, RuleId.DIA, RuleId.DIA_LOADED}
)


class BudgetExceededError(RuntimeError):
    """Search exceeded its node budget."""

    def __init__(self, nodes: int):
        super().__init__(f"proof search exceeded budget after {nodes} nodes")
        self.nodes = nodes


class RuleNotApplicableError(ValueError):
    pass


class SearchInconsistencyError(RuntimeError):
    """Replay disagreed with the recorded search verdicts (a search bug)."""


class InvalidTableauError(ValueError):
    pass


def projection(s: Sequent, a: str) -> Sequent:
    """Formulas under an atomic box with exactly the given head."""
    return Sequent(
        m.sub
        for m in s
        if isinstance(m, Box) and isinstance(m.prog, AtomicProg) and m.prog.name == a
    )


def is_closed(s: Sequent) -> bool:
    """Bottom present, or a literal clash.

    The clash test uses literal membership: a loaded member never matches
    its unloaded version here, unloading happens via (L-) instead.
    """
    members = set(s.members)
    if Bottom() in members:
        return True
    return any(isinstance(m, Neg) and m.sub in members for m in members)


def _strip_boxes(f: Formula) -> tuple[tuple, Formula]:
    progs = []
    while isinstance(f, Box):
        progs.append(f.prog)
        f = f.sub
    return tuple(progs), f


def _modal_residue(lf: LoadedFormula) -> Member:
    rest = lf.prefix[1:]
    return LoadedFormula(rest, lf.tail) if rest else Neg(lf.tail)


def rule_children(
    s: Sequent, rule: RuleId, principal: Member, *, lminus_needs_basic: bool = True
) -> list[Sequent]:
    """Children of one rule application; the principal leaves the context."""
    if principal not in s:
        raise RuleNotApplicableError(f"principal {print_member(principal)} not in sequent")
    ctx = s.without(principal)

    if rule is RuleId.NEG:
        if not (isinstance(principal, Neg) and isinstance(principal.sub, Neg)):
            raise RuleNotApplicableError("(~) needs a doubly negated principal")
        return [ctx.union([principal.sub.sub])]

    if rule is RuleId.AND:
        if not isinstance(principal, And):
            raise RuleNotApplicableError("(&) needs a conjunction")
        return [ctx.union([principal.left, principal.right])]

    if rule is RuleId.NEG_AND:
        if not (isinstance(principal, Neg) and isinstance(principal.sub, And)):
            raise RuleNotApplicableError("(~&) needs a negated conjunction")
        return [
            ctx.union([Neg(principal.sub.left)]),
            ctx.union([Neg(principal.sub.right)]),
        ]

    if rule is RuleId.BOX:
        if not (isinstance(principal, Box) and not isinstance(principal.prog, AtomicProg)):
            raise RuleNotApplicableError("([]) needs a non-atomic box")
        return [ctx.union(g) for g in unfold_box(principal.prog, principal.sub)]

    if rule is RuleId.DIA:
        if not (
            isinstance(principal, Neg)
            and isinstance(principal.sub, Box)
            and not isinstance(principal.sub.prog, AtomicProg)
        ):
            raise RuleNotApplicableError("(<>) needs a negated non-atomic box")
        return [
            ctx.union(g) for g in unfold_dia(principal.sub.prog, principal.sub.sub)
        ]

    if rule is RuleId.DIA_LOADED:
        if not (
            isinstance(principal, LoadedFormula)
            and not isinstance(principal.prefix[0], AtomicProg)
        ):
            raise RuleNotApplicableError("(<>!) needs a non-atomic loaded head")
        rest = principal.prefix[1:]
        x: Member = LoadedFormula(rest, principal.tail) if rest else principal.tail
        return [ctx.union(g) for g in unfold_dia_loaded(principal.prefix[0], x)]

    if rule is RuleId.LOAD_PLUS:
        if not (
            isinstance(principal, Neg)
            and isinstance(principal.sub, Box)
            and isinstance(principal.sub.prog, AtomicProg)
        ):
            raise RuleNotApplicableError("(L+) needs a negated atomic box chain")
        if ctx.loaded or not is_basic(ctx):
            raise RuleNotApplicableError("(L+) context must be free and basic")
        prefix, tail = _strip_boxes(principal.sub)
        return [ctx.union([LoadedFormula(prefix, tail)])]

    if rule is RuleId.LOAD_MINUS:
        if not isinstance(principal, LoadedFormula):
            raise RuleNotApplicableError("(L-) needs a loaded principal")
        if lminus_needs_basic and not is_basic(ctx):
            raise RuleNotApplicableError("(L-) context must be basic")
        return [ctx.union([unload(principal)])]

    if rule is RuleId.MODAL:
        if not (
            isinstance(principal, LoadedFormula)
            and isinstance(principal.prefix[0], AtomicProg)
        ):
            raise RuleNotApplicableError("(M) needs an atomic loaded head")
        if not is_basic(ctx):
            raise RuleNotApplicableError("(M) context must be basic")
        a = principal.prefix[0].name
        return [projection(ctx, a).union([_modal_residue(principal)])]

    raise RuleNotApplicableError(f"unknown rule {rule}")


Move = tuple[RuleId, Member]


def prover_moves(s: Sequent, last_rule: RuleId | None = None) -> list[Move]:
    """All admissible (rule, principal) pairs, in canonical order.

    Order: non-branching local rules, then branching local rules, then one
    loading move per diamond member, then the modal rule.  (L-) directly
    after (L+) is excluded.
    """
    nonbranching: list[Move] = []
    branching: list[Move] = []
    loaded = s.loaded_member
    for m in s.members:
        if isinstance(m, LoadedFormula):
            if not isinstance(m.prefix[0], AtomicProg):
                branching.append((RuleId.DIA_LOADED, m))
        elif isinstance(m, And):
            nonbranching.append((RuleId.AND, m))
        elif isinstance(m, Neg):
            g = m.sub
            if isinstance(g, Neg):
                nonbranching.append((RuleId.NEG, m))
            elif isinstance(g, And):
                branching.append((RuleId.NEG_AND, m))
            elif isinstance(g, Box) and not isinstance(g.prog, AtomicProg):
                branching.append((RuleId.DIA, m))
        elif isinstance(m, Box) and not isinstance(m.prog, AtomicProg):
            branching.append((RuleId.BOX, m))
    nonbranching.sort(key=lambda mv: member_key(mv[1]))
    branching.sort(key=lambda mv: member_key(mv[1]))
    if (
        loaded is not None
        and last_rule is not RuleId.LOAD_PLUS
        and is_basic(s.without(loaded))
    ):
        nonbranching.append((RuleId.LOAD_MINUS, loaded))

    loading: list[Move] = []
    if loaded is None and is_basic(s):
        for m in s.members:
            if (
                isinstance(m, Neg)
                and isinstance(m.sub, Box)
                and isinstance(m.sub.prog, AtomicProg)
            ):
                loading.append((RuleId.LOAD_PLUS, m))

    modal: list[Move] = []
    if (
        loaded is not None
        and isinstance(loaded.prefix[0], AtomicProg)
        and is_basic(s.without(loaded))
    ):
        modal.append((RuleId.MODAL, loaded))

    return nonbranching + branching + loading + modal


# ---------------------------------------------------------------------------
# Generic game search engine (shared with the split system)


@dataclass(frozen=True)
class WinClosed:
    pass


@dataclass(frozen=True)
class WinRepeat:
    steps_up: int


@dataclass(frozen=True)
class WinNode:
    move: tuple
    children: tuple
    subtrees: tuple


WinTree = WinClosed | WinRepeat | WinNode

_WIN_CLOSED = WinClosed()


def _tree_labels(tree: WinNode) -> frozenset:
    """All labels below a winning node, memoized on the tree object."""
    cached = tree.__dict__.get("_labels")
    if cached is not None:
        return cached
    labels = set(tree.children)
    for sub in tree.subtrees:
        if isinstance(sub, WinNode):
            labels |= _tree_labels(sub)
    labels = frozenset(labels)
    object.__setattr__(tree, "_labels", labels)
    return labels


class GameSearch:
    """Depth-first AND-OR search over game positions.

    Win conditions are path-relative, so verdicts are never memoized across
    contexts; the one sound cache holds standalone closed subtrees (all
    repeat companions internal), grafted only when none of their labels
    occur on the current path, which keeps repeats leaves after grafting.
    """

    def __init__(
        self,
        closed_fn: Callable,
        loaded_fn: Callable,
        moves_fn: Callable,
        apply_fn: Callable,
        rule_of_move: Callable,
        budget: int = DEFAULT_BUDGET,
    ):
        self.closed_fn = closed_fn
        self.loaded_fn = loaded_fn
        self.moves_fn = moves_fn
        self.apply_fn = apply_fn
        self.rule_of_move = rule_of_move
        self.budget = budget
        self.nodes = 0
        self._path: list = []
        self._path_loaded: list[bool] = []
        self._pos: dict = {}
        self._on_path: dict = {}
        self._cache: dict = {}

    # -- main search

    def search(self, label, last_rule=None) -> tuple[bool, WinTree | None]:
        win, tree, _ = self._search(label, last_rule)
        return win, tree

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(self.nodes)

    def _repeat_status(self, label) -> str:
        """'lp', 'free', 'third', or 'none' for the current path."""
        occ = self._pos.get(label)
        if not occ:
            return "none"
        if not self.loaded_fn(label):
            return "free"
        d = occ[-1]
        if all(self._path_loaded[d:]):
            return "lp"
        return "third"

    def _search(self, label, last_rule) -> tuple[bool, WinTree | None, int]:
        self._tick()
        if self.closed_fn(label):
            return True, _WIN_CLOSED, _BIG
        status = self._repeat_status(label)
        depth = len(self._path)
        if status == "lp":
            return True, WinRepeat(depth - self._pos[label][-1]), self._pos[label][-1]
        if status == "free":
            return False, None, _BIG

        blocked = last_rule is RuleId.LOAD_PLUS
        key = (label, blocked)
        hit = self._cache.get(key)
        if hit is not None:
            tree, labels = hit
            if len(self._path) < len(labels):
                grafts_cleanly = not any(l in labels for l in self._path)
            else:
                grafts_cleanly = not any(self._on_path.get(l) for l in labels)
            if grafts_cleanly:
                return True, tree, _BIG

        moves = self.moves_fn(label, last_rule)
        if not moves:
            return False, None, _BIG

        self._push(label)
        try:
            for move in moves:
                subtrees = []
                mind = _BIG
                ok = True
                children = self.apply_fn(label, move)
                for child in children:
                    win, tree, md = self._search(child, self.rule_of_move(move))
                    if not win:
                        ok = False
                        break
                    subtrees.append(tree)
                    mind = min(mind, md)
                if ok:
                    node = WinNode(move, tuple(children), tuple(subtrees))
                    if mind >= depth:
                        self._cache[key] = (node, _tree_labels(node) | {label})
                    return True, node, mind
            return False, None, _BIG
        finally:
            self._pop(label)

    def _push(self, label):
        self._pos.setdefault(label, []).append(len(self._path))
        self._path.append(label)
        self._path_loaded.append(self.loaded_fn(label))
        self._on_path[label] = self._on_path.get(label, 0) + 1

    def _pop(self, label):
        self._path.pop()
        self._path_loaded.pop()
        self._pos[label].pop()
        n = self._on_path[label] - 1
        if n:
            self._on_path[label] = n
        else:
            del self._on_path[label]

    # -- builder strategy replay (after a failed search)

    def replay(self, label, last_rule=None) -> "StrategyNode":
        self._tick()
        if self.closed_fn(label):
            raise SearchInconsistencyError("builder strategy reached a closed sequent")
        status = self._repeat_status(label)
        if status == "lp":
            raise SearchInconsistencyError("builder strategy reached a loaded-path repeat")
        if status == "free":
            steps = len(self._path) - self._pos[label][-1]
            return StrategyNode(label, [], steps)
        moves = self.moves_fn(label, last_rule)
        if not moves:
            return StrategyNode(label, [], None)
        self._push(label)
        try:
            edges = []
            for move in moves:
                rule = self.rule_of_move(move)
                answer = None
                for child in self.apply_fn(label, move):
                    win, _, _ = self._search(child, rule)
                    if not win:
                        answer = child
                        break
                if answer is None:
                    raise SearchInconsistencyError(
                        "no builder reply survives a prover move"
                    )
                edges.append((move, self.replay(answer, rule)))
            return StrategyNode(label, edges, None)
        finally:
            self._pop(label)


@dataclass(eq=False, repr=False)
class StrategyNode:
    """One node of a builder winning strategy tree.

    Each edge answers one admissible prover move.  ``repeat_steps`` is set
    on free-repeat leaves; ``companion`` is resolved in a second pass.
    """

    label: Sequent
    edges: list
    repeat_steps: int | None
    companion: "StrategyNode | None" = None
    parent: "StrategyNode | None" = None

    def __repr__(self) -> str:
        return f"StrategyNode({print_sequent(self.label)!r})"


@dataclass
class StrategyTree:
    root: StrategyNode

    def nodes(self) -> list[StrategyNode]:
        out = []
        todo = [self.root]
        while todo:
            n = todo.pop()
            out.append(n)
            todo.extend(st for _, st in n.edges)
        return out


def _resolve_strategy_links(root: StrategyNode) -> None:
    stack: list[StrategyNode] = []

    def walk(node: StrategyNode):
        stack.append(node)
        if node.repeat_steps is not None:
            node.companion = stack[-1 - node.repeat_steps]
        for _, child in node.edges:
            child.parent = node
            walk(child)
        stack.pop()

    walk(root)


# ---------------------------------------------------------------------------
# Tableaux


@dataclass
class TabNode:
    label: Sequent
    rule: RuleId | None
    principal: Member | None
    parent: int | None
    children: list[int] = field(default_factory=list)


@dataclass
class Tableau:
    """Arena-indexed tableau; companions map repeat leaves to ancestors."""

    nodes: list[TabNode]
    companions: dict[int, int]
    root: int = 0

    def leaves(self) -> list[int]:
        return [i for i, n in enumerate(self.nodes) if not n.children]


def _materialize(root_label: Sequent, tree: WinTree) -> Tableau:
    nodes: list[TabNode] = []
    companions: dict[int, int] = {}
    stack: list[int] = []

    def walk(label, t, parent) -> int:
        idx = len(nodes)
        nodes.append(TabNode(label, None, None, parent))
        stack.append(idx)
        if isinstance(t, WinRepeat):
            companions[idx] = stack[-1 - t.steps_up]
        elif isinstance(t, WinNode):
            rule, principal = t.move
            nodes[idx].rule = rule
            nodes[idx].principal = principal
            for child_label, sub in zip(t.children, t.subtrees):
                nodes[idx].children.append(walk(child_label, sub, idx))
        stack.pop()
        return idx

    walk(root_label, tree, None)
    return Tableau(nodes, companions)


def validate_tableau(t: Tableau, expect_closed: bool = True) -> None:
    """Check the structural tableau invariants, raising on violation."""
    from .syntax import measure

    ancestors: list[int] = []

    def path_to(idx: int) -> list[int]:
        out = []
        cur = t.nodes[idx].parent
        while cur is not None:
            out.append(cur)
            cur = t.nodes[cur].parent
        return out

    for idx, node in enumerate(t.nodes):
        for c in node.children:
            if t.nodes[c].parent != idx:
                raise InvalidTableauError("broken parent link")
        if node.children:
            if node.rule is None:
                raise InvalidTableauError("interior node without a rule")
            expected = rule_children(node.label, node.rule, node.principal)
            got = [t.nodes[c].label for c in node.children]
            if got != expected:
                raise InvalidTableauError(
                    f"children of node {idx} do not instantiate {node.rule}"
                )
            parent = node.parent
            if (
                parent is not None
                and t.nodes[parent].rule is RuleId.LOAD_PLUS
                and node.rule is RuleId.LOAD_MINUS
            ):
                raise InvalidTableauError("(L-) immediately after (L+)")
            if node.rule in LOCAL_RULES:
                pm = measure(node.label)
                for c in node.children:
                    if not measure(t.nodes[c].label) < pm:
                        raise InvalidTableauError(f"measure did not descend at {idx}")

        # repeats must be leaves of the right kind
        up = path_to(idx)
        equal = [a for a in up if t.nodes[a].label == node.label]
        if equal:
            nearest = equal[0]
            seg = [idx] + up[: up.index(nearest) + 1]
            fully_loaded = all(t.nodes[i].label.loaded for i in seg)
            if not node.label.loaded:
                if node.children:
                    raise InvalidTableauError(f"free repeat {idx} is not a leaf")
            elif fully_loaded:
                if node.children:
                    raise InvalidTableauError(f"loaded-path repeat {idx} is not a leaf")
                if t.companions.get(idx) != nearest:
                    raise InvalidTableauError(f"companion of {idx} is not the nearest")
                if not any(t.nodes[i].rule is RuleId.MODAL for i in seg[1:]):
                    raise InvalidTableauError(f"no modal step on repeat path of {idx}")

    if expect_closed:
        for idx in t.leaves():
            if idx in t.companions:
                continue
            if not is_closed(t.nodes[idx].label):
                raise InvalidTableauError(f"leaf {idx} neither closed nor a repeat")


def export_dot(t: Tableau) -> str:
    """Graphviz rendering: solid rule edges, dashed repeat-to-companion edges."""

    def esc(s: str) -> str:
        return s.replace("\\", "\\\\").replace('"', '\\"')

    lines = ["digraph tableau {", "  node [shape=box];"]
    for idx, node in enumerate(t.nodes):
        lines.append(f'  n{idx} [label="{esc(print_sequent(node.label))}"];')
    for idx, node in enumerate(t.nodes):
        for c in node.children:
            lines.append(f'  n{idx} -> n{c} [label="{esc(str(node.rule))}"];')
    for rep, comp in sorted(t.companions.items()):
        lines.append(
            f'  n{rep} -> n{comp} [style=dashed, constraint=false, label="♥"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Top-level proving


@dataclass
class Closed:
    tableau: Tableau


@dataclass
class Open:
    model: KripkeModel
    point: int


ProofResult = Closed | Open


def _search_moves(s: Sequent, last_rule: RuleId | None) -> list[Move]:
    # a single (~) or (&) move suffices: those rules are invertible and any
    # exhaustive local reduction order reaches the same basic sequents
    moves = prover_moves(s, last_rule)
    pure = [mv for mv in moves if mv[0] in (RuleId.NEG, RuleId.AND)]
    if pure:
        return [pure[0]]
    # try the modal step before unloading: an (L-) detour re-explores the
    # whole free continuation at every modal depth, which compounds badly
    moves.sort(key=lambda mv: 1 if mv[0] is RuleId.LOAD_MINUS else 0)
    return moves


def _make_engine(budget: int) -> GameSearch:
    return GameSearch(
        closed_fn=is_closed,
        loaded_fn=lambda s: s.loaded,
        moves_fn=_search_moves,
        apply_fn=lambda s, mv: rule_children(s, mv[0], mv[1]),
        rule_of_move=lambda mv: mv[0],
        budget=budget,
    )


def prove(s: Sequent, budget: int = DEFAULT_BUDGET) -> ProofResult:
    """Decide consistency: a closed tableau or a checking countermodel."""
    if s.loaded:
        raise ValueError("top-level sequent must be free")
    engine = _make_engine(budget)
    win, tree = engine.search(s)
    if win:
        return Closed(_materialize(s, tree))
    strategy = StrategyTree(engine.replay(s))
    _resolve_strategy_links(strategy.root)
    model, point, _ = _model_graph_full(strategy, s)
    return Open(model, point)


def build_strategy_tree(s: Sequent, budget: int = DEFAULT_BUDGET) -> StrategyTree:
    """The builder's winning strategy tree; requires that prove(s) is open."""
    engine = _make_engine(budget)
    win, _ = engine.search(s)
    if win:
        raise SearchInconsistencyError("sequent is inconsistent, no builder strategy")
    strategy = StrategyTree(engine.replay(s))
    _resolve_strategy_links(strategy.root)
    return strategy


# ---------------------------------------------------------------------------
# Countermodel extraction: pre-states and the model graph


def _prestates(stree: StrategyTree) -> list[list[StrategyNode]]:
    """Maximal local-rule segments, wrapping once through free-repeat companions."""
    initials = [stree.root]
    for node in stree.nodes():
        for move, child in node.edges:
            if move[0] is RuleId.MODAL:
                initials.append(child)

    def local_edges(node: StrategyNode):
        return [(mv, st) for mv, st in node.edges if mv[0] in LOCAL_RULES]

    out: list[list[StrategyNode]] = []

    def extend(node: StrategyNode, trail: list[StrategyNode]):
        trail = trail + [node]
        if node.repeat_steps is not None:
            # wrap: follow the tree path from the companion toward the repeat
            # while only local rules are applied
            comp = node.companion
            path_up = [node]
            cur = node
            while cur is not comp:
                cur = cur.parent
                path_up.append(cur)
            path_down = list(reversed(path_up))  # companion .. repeat
            trail.append(comp)
            for prev, nxt in zip(path_down, path_down[1:]):
                mv = next(m for m, st in prev.edges if st is nxt)
                if mv[0] not in LOCAL_RULES:
                    break
                trail.append(nxt)
            out.append(trail)
            return
        branches = local_edges(node)
        if not branches:
            out.append(trail)
            return
        for _, child in branches:
            extend(child, trail)

    for ini in initials:
        extend(ini, [])
    return out


def _state_key(state: frozenset[Formula]) -> tuple:
    return tuple(sorted(formula_key(f) for f in state))


def _model_graph_full(
    stree: StrategyTree, root_sequent: Sequent
) -> tuple[KripkeModel, int, list[frozenset[Formula]]]:
    voc = vocabulary(root_sequent)
    prestates = _prestates(stree)
    state_sets: list[frozenset[Formula]] = []
    seen = set()
    for pre in prestates:
        state = frozenset(unload(m) for node in pre for m in node.label)
        if state not in seen:
            seen.add(state)
            state_sets.append(state)
    state_sets.sort(key=_state_key)
    index = {s: i for i, s in enumerate(state_sets)}

    root_state = frozenset(
        unload(m) for node in _first_root_prestate(stree, prestates) for m in node.label
    )
    point = index[root_state]

    relations: dict[str, frozenset] = {}
    for a in sorted(voc.progs):
        pairs = set()
        for x_set in state_sets:
            diamonds = [
                f
                for f in x_set
                if isinstance(f, Neg)
                and isinstance(f.sub, Box)
                and isinstance(f.sub.prog, AtomicProg)
                and f.sub.prog.name == a
            ]
            if not diamonds:
                continue
            proj = {
                f.sub for f in x_set
                if isinstance(f, Box)
                and isinstance(f.prog, AtomicProg)
                and f.prog.name == a
            }
            for y_set in state_sets:
                if any(proj <= y_set and Neg(d.sub.sub) in y_set for d in diamonds):
                    pairs.add((index[x_set], index[y_set]))
        relations[a] = frozenset(pairs)

    valuation = {
        p: frozenset(i for i, s in enumerate(state_sets) if Atom(p) in s)
        for p in sorted(voc.props)
    }
    model = KripkeModel(len(state_sets), relations, valuation)
    return model, point, state_sets


def _first_root_prestate(stree, prestates):
    for pre in prestates:
        if pre[0] is stree.root:
            return pre
    raise SearchInconsistencyError("no pre-state starts at the root")


def model_graph(stree: StrategyTree) -> tuple[KripkeModel, int]:
    """Kripke model whose states are the unloaded pre-state unions."""
    model, point, _ = _model_graph_full(stree, stree.root.label)
    return model, point
