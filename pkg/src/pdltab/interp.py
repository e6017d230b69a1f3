"""Craig interpolation from uniform closed split tableaux.

A split sequent tracks which formulas descend from the antecedent (left) and
which from the negated consequent (right).  Interpolants are synthesized
bottom-up over the cluster condensation of a closed split tableau: singleton
clusters combine child interpolants per rule; a proper cluster is solved
through its quasi-tableau, whose companion nodes turn the pre-interpolant
fixpoint equations into star boxes.
"""

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .semantics import KripkeModel
from .prover import (
    Closed,
    DEFAULT_BUDGET,
    GameSearch,
    Open,
    RuleId,
    SearchInconsistencyError,
    projection,
    prove,
    rule_children,
)
from .syntax import (
    And,
    Atom,
    AtomicProg,
    BOT,
    Box,
    Comp,
    Formula,
    LoadedFormula,
    Member,
    Neg,
    Program,
    Sequent,
    Star,
    TRUE,
    Test,
    Union,
    conj,
    disj,
    formula_key,
    is_basic,
    print_sequent,
    program_key,
    substitute,
    unload,
    vocabulary,
)

QVAR_PREFIX = "_q"


class NotValidError(ValueError):
    """The implication is not valid; carries a countermodel."""

    def __init__(self, model: KripkeModel, point: int):
        super().__init__("implication is not valid")
        self.model = model
        self.point = point


class NotImplicitDefinitionError(ValueError):
    def __init__(self, model: KripkeModel, point: int):
        super().__init__("formula does not implicitly define the atom")
        self.model = model
        self.point = point


class NotClosedError(ValueError):
    pass


class UniformityViolationError(ValueError):
    pass


class GrammarViolationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Split sequents and split tableaux


@dataclass(frozen=True)
class SplitSequent:
    left: Sequent
    right: Sequent

    def __post_init__(self):
        if self.left.loaded and self.right.loaded:
            raise ValueError("both components loaded")

    def __str__(self) -> str:
        return f"{print_sequent(self.left)} ; {print_sequent(self.right)}"

    @property
    def loaded_side(self) -> int | None:
        if self.left.loaded:
            return 1
        if self.right.loaded:
            return 2
        return None

    def component(self, side: int) -> Sequent:
        return self.left if side == 1 else self.right

    def with_component(self, side: int, s: Sequent) -> "SplitSequent":
        return SplitSequent(s, self.right) if side == 1 else SplitSequent(self.left, s)

    def union(self) -> Sequent:
        return Sequent(list(self.left.members) + list(self.right.members))


@dataclass
class SplitNode:
    label: SplitSequent
    rule: RuleId | None
    side: int | None
    principal: Member | None
    parent: int | None
    children: list[int] = field(default_factory=list)


@dataclass
class SplitTableau:
    nodes: list[SplitNode]
    companions: dict[int, int]
    root: int = 0

    def leaves(self) -> list[int]:
        return [i for i, n in enumerate(self.nodes) if not n.children]


def split_is_closed(ss: SplitSequent) -> bool:
    """Closedness over the union, matching loaded against unloaded members.

    The unsplit prover requires literal clashes and unloads via (L-); here
    the loaded member counts as its unloaded version, which is sound (the
    marks are semantically transparent) and keeps exit leaves small.
    """
    u = {unload(m) for m in ss.left} | {unload(m) for m in ss.right}
    if BOT in u:
        return True
    return any(isinstance(f, Neg) and f.sub in u for f in u)


def _local_rule_of(m: Member) -> RuleId | None:
    if isinstance(m, LoadedFormula):
        return None if isinstance(m.prefix[0], AtomicProg) else RuleId.DIA_LOADED
    if isinstance(m, And):
        return RuleId.AND
    if isinstance(m, Neg):
        g = m.sub
        if isinstance(g, Neg):
            return RuleId.NEG
        if isinstance(g, And):
            return RuleId.NEG_AND
        if isinstance(g, Box) and not isinstance(g.prog, AtomicProg):
            return RuleId.DIA
    if isinstance(m, Box) and not isinstance(m.prog, AtomicProg):
        return RuleId.BOX
    return None


def _first_local_move(s: Sequent) -> tuple[RuleId, Member] | None:
    for m in s.members:
        if isinstance(m, LoadedFormula):
            continue
        rule = _local_rule_of(m)
        if rule is not None:
            return rule, m
    return None


def loaded_component_move(s: Sequent) -> tuple[RuleId, Member]:
    """The one rule a loaded component admits under uniformity: reduce the
    smallest unloaded member first, else unfold the loaded formula."""
    mv = _first_local_move(s)
    if mv is not None:
        return mv
    lf = s.loaded_member
    if lf is None or isinstance(lf.prefix[0], AtomicProg):
        raise UniformityViolationError("loaded component admits no local rule")
    return RuleId.DIA_LOADED, lf


SplitMove = tuple[RuleId, int, Member]


def split_moves(ss: SplitSequent, last_rule: RuleId | None) -> list[SplitMove]:
    """Admissible prover moves under the uniform scheduling.

    Loaded nodes reduce the unloaded component to basic first (U1), then
    apply the component-determined rule to the loaded side (U2); the only
    genuine choices are which diamond to load and modal-versus-unload.
    """
    side = ss.loaded_side
    if side is not None:
        other = 3 - side
        if not is_basic(ss.component(other)):
            rule, m = _first_local_move(ss.component(other))
            return [(rule, other, m)]
        comp = ss.component(side)
        if not is_basic(comp):
            rule, m = loaded_component_move(comp)
            return [(rule, side, m)]
        lf = comp.loaded_member
        moves: list[SplitMove] = [(RuleId.MODAL, side, lf)]
        if last_rule is not RuleId.LOAD_PLUS:
            moves.append((RuleId.LOAD_MINUS, side, lf))
        return moves
    for s in (1, 2):
        mv = _first_local_move(ss.component(s))
        if mv is not None:
            return [(mv[0], s, mv[1])]
    moves = []
    for s in (1, 2):
        for m in ss.component(s).members:
            if (
                isinstance(m, Neg)
                and isinstance(m.sub, Box)
                and isinstance(m.sub.prog, AtomicProg)
            ):
                moves.append((RuleId.LOAD_PLUS, s, m))
    return moves


def split_apply(ss: SplitSequent, move: SplitMove) -> list[SplitSequent]:
    rule, side, principal = move
    comp = ss.component(side)
    if rule is RuleId.MODAL:
        lf = principal
        if not (isinstance(lf, LoadedFormula) and isinstance(lf.prefix[0], AtomicProg)):
            raise ValueError("split modal rule needs an atomic loaded head")
        other = ss.component(3 - side)
        if not (is_basic(comp.without(lf)) and is_basic(other)):
            raise ValueError("split modal rule needs basic components")
        a = lf.prefix[0].name
        new_self = rule_children(comp, RuleId.MODAL, lf)[0]
        new_other = projection(other, a)
        out = ss.with_component(side, new_self).with_component(3 - side, new_other)
        return [out]
    children = rule_children(comp, rule, principal, lminus_needs_basic=False)
    return [ss.with_component(side, c) for c in children]


# ---------------------------------------------------------------------------
# Split proof search


@dataclass
class SplitClosed:
    tableau: SplitTableau


@dataclass
class SplitNotProvable:
    model: KripkeModel
    point: int


SplitResult = SplitClosed | SplitNotProvable


def _materialize_split(root_label: SplitSequent, tree) -> SplitTableau:
    from .prover import WinNode, WinRepeat

    nodes: list[SplitNode] = []
    companions: dict[int, int] = {}
    stack: list[int] = []

    def walk(label, t, parent) -> int:
        idx = len(nodes)
        nodes.append(SplitNode(label, None, None, None, parent))
        stack.append(idx)
        if isinstance(t, WinRepeat):
            companions[idx] = stack[-1 - t.steps_up]
        elif isinstance(t, WinNode):
            rule, side, principal = t.move
            nodes[idx].rule = rule
            nodes[idx].side = side
            nodes[idx].principal = principal
            for child_label, sub in zip(t.children, t.subtrees):
                nodes[idx].children.append(walk(child_label, sub, idx))
        stack.pop()
        return idx

    walk(root_label, tree, None)
    return SplitTableau(nodes, companions)


def prove_split(goal: SplitSequent, budget: int = DEFAULT_BUDGET) -> SplitResult:
    """A uniform closed split tableau, or a countermodel of the union."""
    if goal.loaded_side is not None:
        raise ValueError("both components must be free at entry")
    union_result = prove(goal.union(), budget)
    if isinstance(union_result, Open):
        return SplitNotProvable(union_result.model, union_result.point)
    engine = GameSearch(
        closed_fn=split_is_closed,
        loaded_fn=lambda ss: ss.loaded_side is not None,
        moves_fn=split_moves,
        apply_fn=split_apply,
        rule_of_move=lambda mv: mv[0],
        budget=budget,
    )
    win, tree = engine.search(goal)
    if not win:
        raise SearchInconsistencyError("split search opened an unsatisfiable sequent")
    return SplitClosed(_materialize_split(goal, tree))


# ---------------------------------------------------------------------------
# Clusters


@dataclass(frozen=True)
class Cluster:
    index: int
    root: int
    members: tuple[int, ...]
    exits: tuple[int, ...]
    proper: bool


@dataclass
class ClusterInfo:
    of_node: list[int]
    clusters: list[Cluster]

    @property
    def proper_clusters(self) -> list[Cluster]:
        return [c for c in self.clusters if c.proper]


def clusters(t: SplitTableau) -> ClusterInfo:
    """Strongly connected components of tree edges plus companion back edges."""
    n = len(t.nodes)
    succ = [list(t.nodes[i].children) for i in range(n)]
    for rep, comp in t.companions.items():
        succ[rep].append(comp)

    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp_of = [-1] * n
    comps: list[list[int]] = []
    counter = 0

    for start in range(n):
        if index[start] != -1:
            continue
        work = [(start, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while pi < len(succ[v]):
                w = succ[v][pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                group = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    group.append(w)
                    if w == v:
                        break
                comps.append(group)
            if work:
                parent, _ = work[-1]
                low[parent] = min(low[parent], low[v])

    comps_sorted = sorted(comps, key=min)
    out = []
    for ci, group in enumerate(comps_sorted):
        members = tuple(sorted(group))
        for v in members:
            comp_of[v] = ci
    for ci, group in enumerate(comps_sorted):
        members = tuple(sorted(group))
        member_set = set(members)
        root = min(
            members,
            key=lambda v: _depth(t, v),
        )
        exits = tuple(
            sorted(
                c
                for v in members
                for c in t.nodes[v].children
                if c not in member_set
            )
        )
        out.append(Cluster(ci, root, members, exits, len(members) > 1))
    return ClusterInfo(comp_of, out)


def _depth(t: SplitTableau, v: int) -> int:
    d = 0
    cur = t.nodes[v].parent
    while cur is not None:
        d += 1
        cur = t.nodes[cur].parent
    return d


# ---------------------------------------------------------------------------
# Interpolants for singleton clusters


def leaf_interpolant(g: SplitSequent) -> Formula:
    """Interpolant of a closed leaf, by the four cases in order."""
    u1 = {unload(m) for m in g.left}
    u2 = {unload(m) for m in g.right}
    if BOT in u1 or any(isinstance(f, Neg) and f.sub in u1 for f in u1):
        return BOT
    if BOT in u2 or any(isinstance(f, Neg) and f.sub in u2 for f in u2):
        return TRUE
    for f in sorted(u1, key=formula_key):
        if Neg(f) in u2:
            return f
    for f in sorted(u2, key=formula_key):
        if Neg(f) in u1:
            return Neg(f)
    raise NotClosedError(f"leaf is not closed: {g}")


def local_interpolant_step(
    t: SplitTableau, node_index: int, child_thetas: list[Formula]
) -> Formula:
    """Combine child interpolants across one rule application."""
    node = t.nodes[node_index]
    if node.rule is RuleId.MODAL:
        (theta,) = child_thetas
        child = t.nodes[node.children[0]]
        a = node.principal.prefix[0].name
        if node.side == 1:
            if not child.label.right.members:
                return BOT
            return Neg(Box(AtomicProg(a), Neg(theta)))
        if not child.label.left.members:
            return TRUE
        return Box(AtomicProg(a), theta)
    if node.side == 2:
        return conj(child_thetas)
    return disj(child_thetas)


# ---------------------------------------------------------------------------
# Quasi-tableaux for proper clusters


@dataclass(eq=False)
class QNode:
    index: int
    ktype: int
    label: Sequent
    children: list["QNode"] = field(default_factory=list)
    companion: "QNode | None" = None

    def __repr__(self) -> str:
        return f"QNode({self.index}, type {self.ktype}, {print_sequent(self.label)!r})"


@dataclass
class QuasiTableau:
    root: QNode
    nodes: list[QNode]  # preorder

    @property
    def companions(self) -> list[QNode]:
        found = []
        for n in self.nodes:
            if n.companion is not None and n.companion not in found:
                found.append(n.companion)
        return sorted(found, key=lambda n: n.index)


def _loaded_label(t: SplitTableau, idx: int, loaded_side: int) -> Sequent:
    return t.nodes[idx].label.component(loaded_side)


def quasi_tableau(
    t: SplitTableau, info: ClusterInfo, cluster: Cluster, loaded_side: int = 2
) -> QuasiTableau:
    """The typed auxiliary tree over the loaded components of a proper cluster."""
    if not cluster.proper:
        raise ValueError("quasi-tableaux are built for proper clusters only")
    member_labels = {_loaded_label(t, v, loaded_side) for v in cluster.members}

    rule_for: dict[Sequent, tuple[RuleId, Member]] = {}
    for v in cluster.members:
        node = t.nodes[v]
        if node.rule is None or node.rule is RuleId.MODAL:
            continue
        if node.side != loaded_side:
            continue
        lab = _loaded_label(t, v, loaded_side)
        seen = rule_for.get(lab)
        if seen is None:
            rule_for[lab] = (node.rule, node.principal)
        elif seen != (node.rule, node.principal):
            raise UniformityViolationError(
                f"two rules applied to loaded component {print_sequent(lab)}"
            )

    nodes: list[QNode] = []

    def mk(ktype: int, label: Sequent) -> QNode:
        node = QNode(len(nodes), ktype, label)
        nodes.append(node)
        return node

    root = mk(1, _loaded_label(t, cluster.root, loaded_side))

    def expand(node: QNode, ancestors: dict[Sequent, QNode]):
        if node.ktype == 1:
            comp = ancestors.get(node.label)
            if comp is not None:
                node.companion = comp
                return
            if node.label not in member_labels:
                return
            child = mk(2, node.label)
            node.children.append(child)
            expand(child, {**ancestors, node.label: node})
            return
        if node.ktype == 2:
            child = mk(3, node.label)
            node.children.append(child)
            expand(child, ancestors)
            return
        # type 3
        if is_basic(node.label):
            lf = node.label.loaded_member
            if lf is None or not isinstance(lf.prefix[0], AtomicProg):
                raise UniformityViolationError(
                    "basic quasi-node without an atomic loaded head"
                )
            (child_label,) = rule_children(node.label, RuleId.MODAL, lf)
            child = mk(1, child_label)
            node.children.append(child)
            expand(child, ancestors)
            return
        entry = rule_for.get(node.label)
        if entry is None:
            raise UniformityViolationError(
                f"no rule recorded for loaded component {print_sequent(node.label)}"
            )
        rule, principal = entry
        for child_label in rule_children(node.label, rule, principal):
            child = mk(1, child_label)
            node.children.append(child)
        for child in node.children:
            expand(child, ancestors)

    expand(root, {})
    return QuasiTableau(root, nodes)


# ---------------------------------------------------------------------------
# Pre-interpolants


def _has_qvar(x) -> bool:
    return any(p.startswith(QVAR_PREFIX) for p in vocabulary(x).props)


def _spl_chains(f: Formula) -> list[tuple[tuple[Program, ...], str, object]]:
    """Decompose into simple elements: (box chain, 'q'|'f', variable or formula)."""
    if isinstance(f, Atom) and f.name.startswith(QVAR_PREFIX):
        return [((), "q", f.name)]
    if isinstance(f, And):
        return _spl_chains(f.left) + _spl_chains(f.right)
    if isinstance(f, Box):
        if _has_qvar(f.prog):
            raise GrammarViolationError("internal variable inside a program")
        return [((f.prog,) + chain, kind, payload) for chain, kind, payload in _spl_chains(f.sub)]
    if _has_qvar(f):
        raise GrammarViolationError(
            "internal variable under a connective outside the pre-interpolant grammar"
        )
    return [((), "f", f)]


def _boxes(chain: tuple[Program, ...], f: Formula) -> Formula:
    for a in reversed(chain):
        f = Box(a, f)
    return f


def spl(f: Formula) -> list[Formula]:
    """Simple formulas whose conjunction is equivalent to the input; a bare
    internal variable is wrapped as a box over a trivial test."""
    out = []
    for chain, kind, payload in _spl_chains(f):
        if kind == "q":
            if chain:
                out.append(_boxes(chain, Atom(payload)))
            else:
                out.append(Box(Test(TRUE), Atom(payload)))
        else:
            out.append(_boxes(chain, payload))
    uniq = sorted(set(out), key=formula_key)
    return uniq


def normal_form(f: Formula) -> Formula:
    return conj(spl(f))


def _compose(chain: tuple[Program, ...]) -> Program:
    result = chain[-1]
    for a in reversed(chain[:-1]):
        result = Comp(a, result)
    return result


def _union_fold(progs: list[Program]) -> Program:
    result = progs[-1]
    for a in reversed(progs[:-1]):
        result = Union(a, result)
    return result


def _solve_companion(qname: str, iota_child: Formula) -> Formula:
    """Solve the fixpoint at a companion: collect the box chains ending in its
    own variable into a star over their union, keep the rest as remainder."""
    alphas: list[Program] = []
    remainder: list[Formula] = []
    for chain, kind, payload in _spl_chains(iota_child):
        if kind == "q" and payload == qname:
            alphas.append(_compose(chain) if chain else Test(TRUE))
        elif kind == "q":
            part = _boxes((_compose(chain),) if chain else (Test(TRUE),), Atom(payload))
            remainder.append(part)
        else:
            remainder.append(Box(_compose(chain), payload) if chain else payload)
    if not alphas:
        raise GrammarViolationError("companion variable missing from its pre-interpolant")
    alpha = _union_fold(sorted(set(alphas), key=program_key))
    rem = conj(sorted(set(remainder), key=formula_key))
    return Box(Star(alpha), rem)


def pre_interpolants(
    q: QuasiTableau,
    thetas: Mapping[Sequent, Formula],
    common_voc=None,
) -> dict[QNode, Formula]:
    """Leaf-to-root pre-interpolant assignment over a quasi-tableau.

    ``thetas`` maps each loaded-component label to its region formula (the
    disjunction of the exit interpolants sharing that label).
    """
    companion_order = q.companions  # preorder position of the companion itself
    qname = {c: f"{QVAR_PREFIX}{i}" for i, c in enumerate(companion_order)}
    is_companion = set(companion_order)

    iota: dict[QNode, Formula] = {}
    open_q: dict[QNode, frozenset[str]] = {}

    def visit(x: QNode):
        for child in x.children:
            visit(child)
        if x.ktype == 1 and x.companion is not None:
            iota[x] = Atom(qname[x.companion])
            open_q[x] = frozenset({qname[x.companion]})
        elif x.ktype == 1 and not x.children:
            iota[x] = thetas.get(x.label, BOT)
            open_q[x] = frozenset()
        elif x.ktype == 1 and x in is_companion:
            (child,) = x.children
            iota[x] = _solve_companion(qname[x], iota[child])
            open_q[x] = open_q[child] - {qname[x]}
        elif x.ktype == 1:
            (child,) = x.children
            iota[x] = iota[child]
            open_q[x] = open_q[child]
        elif x.ktype == 2:
            (child,) = x.children
            iota[x] = Box(Test(Neg(thetas.get(x.label, BOT))), iota[child])
            open_q[x] = open_q[child]
        elif is_basic(x.label):
            (child,) = x.children
            a = x.label.loaded_member.prefix[0].name
            iota[x] = Box(AtomicProg(a), iota[child])
            open_q[x] = open_q[child]
        else:
            iota[x] = conj([iota[c] for c in x.children])
            open_q[x] = frozenset().union(*(open_q[c] for c in x.children))

        if common_voc is not None:
            voc = vocabulary(iota[x])
            if not (
                voc.props <= common_voc.props | open_q[x]
                and voc.progs <= common_voc.progs
            ):
                raise GrammarViolationError(
                    f"pre-interpolant vocabulary escapes the shared vocabulary at {x!r}"
                )

    visit(q.root)
    return iota


# ---------------------------------------------------------------------------
# Cluster interpolants and whole-tableau extraction


def theta_region(d: Sequent, exit_itps: Iterable[tuple[Sequent, Formula]]) -> Formula:
    """Disjunction of the exit interpolants whose loaded component equals d."""
    matching = sorted(
        {th for lab, th in exit_itps if lab == d}, key=formula_key
    )
    return disj(matching)


def _swap_tableau(t: SplitTableau) -> SplitTableau:
    nodes = [
        SplitNode(
            SplitSequent(n.label.right, n.label.left),
            n.rule,
            None if n.side is None else 3 - n.side,
            n.principal,
            n.parent,
            list(n.children),
        )
        for n in t.nodes
    ]
    return SplitTableau(nodes, dict(t.companions), t.root)


def cluster_interpolant(
    t: SplitTableau,
    info: ClusterInfo,
    cluster: Cluster,
    exit_thetas: Mapping[int, Formula],
) -> Formula:
    """Interpolant for the root of a proper cluster, given exit interpolants."""
    root_label = t.nodes[cluster.root].label
    side = root_label.loaded_side
    if side is None:
        raise UniformityViolationError("proper cluster with a free root")
    if side == 1:
        swapped = _swap_tableau(t)
        negated = {e: Neg(th) for e, th in exit_thetas.items()}
        return Neg(cluster_interpolant(swapped, info, cluster, negated))
    if not root_label.left.members:
        return TRUE
    q = quasi_tableau(t, info, cluster, loaded_side=2)
    exit_pairs = [
        (_loaded_label(t, e, 2), exit_thetas[e]) for e in cluster.exits
    ]
    labels = {n.label for n in q.nodes}
    thetas = {lab: theta_region(lab, exit_pairs) for lab in labels}
    common = vocabulary(root_label.left) & vocabulary(root_label.right)
    iotas = pre_interpolants(q, thetas, common)
    result = iotas[q.root]
    if _has_qvar(result):
        raise GrammarViolationError("root pre-interpolant contains internal variables")
    return result


@dataclass
class InterpolationDetails:
    theta: dict[int, Formula]
    quasi: dict[int, QuasiTableau]  # keyed by proper-cluster root
    iotas: dict[int, dict[QNode, Formula]]
    info: ClusterInfo


def interpolation_details(t: SplitTableau) -> InterpolationDetails:
    """Interpolants for every needed node, plus the per-cluster machinery."""
    info = clusters(t)
    theta: dict[int, Formula] = {}
    quasi: dict[int, QuasiTableau] = {}
    iotas: dict[int, dict[QNode, Formula]] = {}

    order = sorted(info.clusters, key=lambda c: _depth(t, c.root), reverse=True)
    for cluster in order:
        if not cluster.proper:
            (n,) = cluster.members
            node = t.nodes[n]
            if not node.children:
                theta[n] = leaf_interpolant(node.label)
            else:
                theta[n] = local_interpolant_step(
                    t, n, [theta[c] for c in node.children]
                )
        else:
            exit_thetas = {e: theta[e] for e in cluster.exits}
            theta[cluster.root] = cluster_interpolant(t, info, cluster, exit_thetas)
            root_label = t.nodes[cluster.root].label
            if root_label.loaded_side == 2 and root_label.left.members:
                q = quasi_tableau(t, info, cluster, loaded_side=2)
                exit_pairs = [(_loaded_label(t, e, 2), exit_thetas[e]) for e in cluster.exits]
                labels = {n.label for n in q.nodes}
                thetas = {lab: theta_region(lab, exit_pairs) for lab in labels}
                quasi[cluster.root] = q
                iotas[cluster.root] = pre_interpolants(q, thetas)
    return InterpolationDetails(theta, quasi, iotas, info)


def interpolant_of_tableau(t: SplitTableau) -> Formula:
    """Interpolant of the root split sequent of a uniform closed split tableau."""
    return interpolation_details(t).theta[t.root]


def export_dot_split(t: SplitTableau) -> str:
    """Graphviz rendering of a split tableau, components separated by ';'."""

    def esc(s: str) -> str:
        return s.replace("\\", "\\\\").replace('"', '\\"')

    lines = ["digraph tableau {", "  node [shape=box];"]
    for idx, node in enumerate(t.nodes):
        lines.append(f'  n{idx} [label="{esc(str(node.label))}"];')
    for idx, node in enumerate(t.nodes):
        for c in node.children:
            lines.append(
                f'  n{idx} -> n{c} [label="{esc(f"{node.rule}_{node.side}")}"];'
            )
    for rep, comp in sorted(t.companions.items()):
        lines.append(
            f'  n{rep} -> n{comp} [style=dashed, constraint=false, label="♥"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Top-level interpolation, verification, Beth definitions


def interpolate(
    f: Formula,
    g: Formula,
    budget: int = DEFAULT_BUDGET,
    apply_simplify: bool = False,
    verify: bool = False,
) -> Formula:
    """Craig interpolant of a valid implication f -> g."""
    result = prove_split(SplitSequent(Sequent([f]), Sequent([Neg(g)])), budget)
    if isinstance(result, SplitNotProvable):
        raise NotValidError(result.model, result.point)
    theta = interpolant_of_tableau(result.tableau)
    if apply_simplify:
        theta = simplify(theta, verify=verify, budget=budget)
    return theta


@dataclass(frozen=True)
class VerifyReport:
    voc_ok: bool
    left_ok: bool
    right_ok: bool

    @property
    def ok(self) -> bool:
        return self.voc_ok and self.left_ok and self.right_ok


def verify_interpolant(
    f: Formula, g: Formula, theta: Formula, budget: int = DEFAULT_BUDGET
) -> VerifyReport:
    """Check vocabulary inclusion and both implications with the prover."""
    voc_ok = vocabulary(theta) <= (vocabulary(f) & vocabulary(g))
    left_ok = isinstance(prove(Sequent([f, Neg(theta)]), budget), Closed)
    right_ok = isinstance(prove(Sequent([theta, Neg(g)]), budget), Closed)
    return VerifyReport(voc_ok, left_ok, right_ok)


def entails(f: Formula, g: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    return isinstance(prove(Sequent([f, Neg(g)]), budget), Closed)


def equivalent(f: Formula, g: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    return entails(f, g, budget) and entails(g, f, budget)


def _fresh_names(base: str, taken: frozenset[str], count: int) -> list[str]:
    out = []
    i = 0
    while len(out) < count:
        cand = f"{base}{i}"
        if cand not in taken and cand not in out:
            out.append(cand)
        i += 1
    return out


def beth(f: Formula, p: str, budget: int = DEFAULT_BUDGET) -> Formula:
    """Explicit definition of an implicitly defined atom, via interpolation."""
    voc = vocabulary(f)
    if p not in voc.props:
        raise ValueError(f"atom {p!r} does not occur in the formula")
    p0, p1 = _fresh_names(p, voc.props | {p}, 2)
    f0 = substitute({p: Atom(p0)}, f)
    f1 = substitute({p: Atom(p1)}, f)
    left = And(f0, Atom(p0))
    right = Neg(And(f1, Neg(Atom(p1))))
    try:
        return interpolate(left, right, budget)
    except NotValidError as err:
        raise NotImplicitDefinitionError(err.model, err.point) from None


# ---------------------------------------------------------------------------
# Cosmetic simplification (never used on tableau sequents)


def simplify(theta: Formula, verify: bool = False, budget: int = DEFAULT_BUDGET) -> Formula:
    """Equivalence-preserving cleanup: drop double negations, trivial test
    boxes, and trivial tests inside compositions."""
    result = _simplify_formula(theta)
    if verify and not equivalent(theta, result, budget):
        raise SearchInconsistencyError("simplification changed the meaning")
    return result


def _simplify_formula(f: Formula) -> Formula:
    if isinstance(f, Neg):
        sub = _simplify_formula(f.sub)
        if isinstance(sub, Neg):
            return sub.sub
        return Neg(sub)
    if isinstance(f, And):
        left = _simplify_formula(f.left)
        right = _simplify_formula(f.right)
        if left == TRUE:
            return right
        if right == TRUE:
            return left
        return And(left, right)
    if isinstance(f, Box):
        prog = _simplify_program(f.prog)
        sub = _simplify_formula(f.sub)
        if prog == Test(TRUE):
            return sub
        return Box(prog, sub)
    return f


def _simplify_program(p: Program) -> Program:
    if isinstance(p, Test):
        return Test(_simplify_formula(p.cond))
    if isinstance(p, Star):
        return Star(_simplify_program(p.sub))
    if isinstance(p, Union):
        return Union(_simplify_program(p.left), _simplify_program(p.right))
    if isinstance(p, Comp):
        left = _simplify_program(p.left)
        right = _simplify_program(p.right)
        if left == Test(TRUE):
            return right
        if right == Test(TRUE):
            return left
        return Comp(left, right)
    return p
