"""Reduced ordered binary decision diagrams for ADT structure functions.

The manager hash-conses nodes into a unique table, so within one
manager two equivalent functions are the same integer ref.  No
complement edges, no garbage collection, no dynamic reordering: node
numbering is creation order, which keeps DOT dumps and benchmarks
reproducible.

The Pareto analysis walks the diagram once.  It requires a
defense-first variable order (every defense step before every attack
step): below an attack-level node the remaining function must not
depend on defender choices, otherwise the single attacker value the
algorithm keeps there would silently collapse defender alternatives.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .model import Aadt, Actor, Adt, GateKind, event_assignment
from .semiring import Front, pareto_min

ZERO = 0
ONE = 1


class OrderingError(ValueError):
    """A variable order that the requested operation cannot use."""


class BddManager:
    """Node store for one fixed variable order.

    Refs are ints; 0 and 1 are the terminals.  ``make`` applies both
    reduction rules, so every ref denotes a reduced diagram.
    """

    def __init__(self, order: Sequence[str]):
        order = tuple(order)
        if len(set(order)) != len(order):
            raise ValueError("variable order contains duplicates")
        self._order = order
        self._rank = {v: i for i, v in enumerate(order)}
        n = len(order)
        # (level, low, high); terminals sit one level past the last
        # variable so parent.level < child.level holds uniformly.
        self._nodes: list[tuple[int, int, int]] = [(n, ZERO, ZERO), (n, ONE, ONE)]
        self._unique: dict[tuple[int, int, int], int] = {}
        self._cache: dict[tuple, int] = {}

    @property
    def order(self) -> tuple[str, ...]:
        return self._order

    def __len__(self) -> int:
        """Nodes ever created, terminals included."""
        return len(self._nodes)

    def level(self, ref: int) -> int:
        return self._nodes[ref][0]

    def low(self, ref: int) -> int:
        if ref <= ONE:
            raise ValueError("terminals have no children")
        return self._nodes[ref][1]

    def high(self, ref: int) -> int:
        if ref <= ONE:
            raise ValueError("terminals have no children")
        return self._nodes[ref][2]

    def label(self, ref: int) -> str:
        if ref <= ONE:
            return str(ref)
        return self._order[self._nodes[ref][0]]

    def is_terminal(self, ref: int) -> bool:
        return ref <= ONE

    def make(self, level: int, low: int, high: int) -> int:
        """Hash-consed node constructor enforcing both reduction rules."""
        if low == high:
            return low
        if not (level < self._nodes[low][0] and level < self._nodes[high][0]):
            raise ValueError("children must sit strictly below their parent")
        key = (level, low, high)
        ref = self._unique.get(key)
        if ref is None:
            ref = len(self._nodes)
            self._nodes.append(key)
            self._unique[key] = ref
        return ref

    def var(self, var_id: str) -> int:
        """The diagram of a single variable."""
        try:
            rank = self._rank[var_id]
        except KeyError:
            raise OrderingError(f"{var_id!r} is not in the variable order") from None
        return self.make(rank, ZERO, ONE)

    # ------------------------------------------------------------------
    # boolean operations

    def apply_and(self, u: int, v: int) -> int:
        if u == ZERO or v == ZERO:
            return ZERO
        if u == ONE:
            return v
        if v == ONE or u == v:
            return u
        if u > v:
            u, v = v, u
        key = ("and", u, v)
        ref = self._cache.get(key)
        if ref is None:
            ref = self._apply_node(self.apply_and, u, v)
            self._cache[key] = ref
        return ref

    def apply_or(self, u: int, v: int) -> int:
        if u == ONE or v == ONE:
            return ONE
        if u == ZERO:
            return v
        if v == ZERO or u == v:
            return u
        if u > v:
            u, v = v, u
        key = ("or", u, v)
        ref = self._cache.get(key)
        if ref is None:
            ref = self._apply_node(self.apply_or, u, v)
            self._cache[key] = ref
        return ref

    def _apply_node(self, op, u: int, v: int) -> int:
        lu, lv = self._nodes[u][0], self._nodes[v][0]
        level = min(lu, lv)
        u0, u1 = (self._nodes[u][1], self._nodes[u][2]) if lu == level else (u, u)
        v0, v1 = (self._nodes[v][1], self._nodes[v][2]) if lv == level else (v, v)
        return self.make(level, op(u0, v0), op(u1, v1))

    def negate(self, u: int) -> int:
        """Complement by swapping terminals through the unique table."""
        if u == ZERO:
            return ONE
        if u == ONE:
            return ZERO
        key = ("not", u)
        ref = self._cache.get(key)
        if ref is None:
            level, low, high = self._nodes[u]
            ref = self.make(level, self.negate(low), self.negate(high))
            self._cache[key] = ref
        return ref

    # ------------------------------------------------------------------
    # inspection

    def evaluate(self, ref: int, assignment: Mapping[str, int]) -> int:
        """Follow the assignment from ref down to a terminal."""
        while ref > ONE:
            level, low, high = self._nodes[ref]
            ref = high if assignment[self._order[level]] else low
        return ref

    def reachable(self, ref: int) -> list[int]:
        """Refs reachable from ref, ascending (creation order)."""
        seen = {ref}
        todo = [ref]
        while todo:
            r = todo.pop()
            if r <= ONE:
                continue
            for c in self._nodes[r][1:]:
                if c not in seen:
                    seen.add(c)
                    todo.append(c)
        return sorted(seen)

    def node_count(self, ref: int) -> int:
        """Size of the diagram rooted at ref, terminals included."""
        return len(self.reachable(ref))

    def to_dot(self, ref: int, name: str = "adt") -> str:
        """Graphviz text: dashed low edges, solid high edges."""
        refs = self.reachable(ref)
        lines = [f"digraph {name} {{"]
        by_level: dict[int, list[int]] = {}
        for r in refs:
            if r <= ONE:
                lines.append(f'  n{r} [shape=box, label="{r}"];')
            else:
                lines.append(f'  n{r} [shape=circle, label="{self.label(r)}"];')
                by_level.setdefault(self._nodes[r][0], []).append(r)
        for level in sorted(by_level):
            members = " ".join(f"n{r};" for r in by_level[level])
            lines.append(f"  {{ rank=same; {members} }}")
        for r in refs:
            if r > ONE:
                lines.append(f"  n{r} -> n{self._nodes[r][1]} [style=dashed];")
                lines.append(f"  n{r} -> n{self._nodes[r][2]} [style=solid];")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# variable orders

def defense_first_order(adt: Adt) -> tuple[str, ...]:
    """Document-order defense steps followed by document-order attack steps."""
    defense, attack = adt.basic_steps()
    return defense + attack


def check_order(adt: Adt, order: Sequence[str], *, defense_first: bool) -> None:
    """Check that the order covers exactly the basic steps.

    With ``defense_first`` also reject orders that put any attack step
    before some defense step.
    """
    order = tuple(order)
    if len(set(order)) != len(order):
        raise OrderingError("variable order contains duplicates")
    defense, attack = adt.basic_steps()
    want = set(defense) | set(attack)
    have = set(order)
    if have != want:
        missing = sorted(want - have)
        extra = sorted(have - want)
        detail = []
        if missing:
            detail.append(f"missing {missing}")
        if extra:
            detail.append(f"unknown {extra}")
        raise OrderingError("order must cover exactly the basic steps: " + ", ".join(detail))
    if defense_first:
        seen_attack = None
        attack_ids = set(attack)
        for v in order:
            if v in attack_ids:
                seen_attack = v
            elif seen_attack is not None:
                raise OrderingError(
                    f"defense step {v!r} ordered after attack step {seen_attack!r}; "
                    "the Pareto analysis needs all defense steps first"
                )


def load_order(path) -> tuple[str, ...]:
    """Read a variable order file: one basic step id per line."""
    with open(path, "r", encoding="utf-8") as fh:
        return tuple(line.strip() for line in fh if line.strip())


# ----------------------------------------------------------------------
# compilation

def compile_structure(mgr: BddManager, adt: Adt) -> int:
    """Diagram of the structure function under the manager's order.

    Any coverage-complete order is accepted here; only the Pareto
    analysis insists on defense-first.
    """
    check_order(adt, mgr.order, defense_first=False)
    memo: dict[str, int] = {}
    frames: list[list] = [[adt.root, 0]]
    while frames:
        frame = frames[-1]
        nid, i = frame
        n = adt.nodes[nid]
        if i < len(n.children):
            frame[1] += 1
            k = n.children[i]
            if k not in memo:
                frames.append([k, 0])
            continue
        frames.pop()
        if nid in memo:
            continue
        if n.kind is GateKind.BS:
            memo[nid] = mgr.var(nid)
        elif n.kind is GateKind.INH:
            memo[nid] = mgr.apply_and(memo[n.inhibited], mgr.negate(memo[n.trigger]))
        else:
            op = mgr.apply_and if n.kind is GateKind.AND else mgr.apply_or
            acc = memo[n.children[0]]
            for k in n.children[1:]:
                acc = op(acc, memo[k])
            memo[nid] = acc
    return memo[adt.root]


def compile_adt(adt: Adt, order: Sequence[str] | None = None) -> tuple[BddManager, int]:
    """Fresh manager plus compiled root ref; defaults to defense-first order."""
    if order is None:
        order = defense_first_order(adt)
    mgr = BddManager(order)
    return mgr, compile_structure(mgr, adt)


def bdd_eval(mgr: BddManager, ref: int, adt: Adt,
             defense_bits: Sequence[int], attack_bits: Sequence[int]) -> int:
    """Evaluate a compiled diagram on one event."""
    return mgr.evaluate(ref, event_assignment(adt, defense_bits, attack_bits))


# ----------------------------------------------------------------------
# Pareto analysis on the diagram

def bdd_bu(aadt: Aadt, mgr: BddManager, ref: int) -> Front:
    """Pareto front computed in one pass over the diagram.

    Shared nodes are processed once.  Requires a defense-first order;
    an attack-level node whose child front still contains defender
    choices raises OrderingError.
    """
    adt = aadt.adt
    ddom, adom = aadt.defender_domain, aadt.attacker_domain
    attacker_root = adt.nodes[adt.root].actor is Actor.ATTACKER
    # A path into the 'attack fails' terminal needs no attack budget at
    # all when the root is defensive, and is unattackable otherwise.
    if attacker_root:
        fail, succeed = adom.unit_oplus, adom.unit_otimes
    else:
        fail, succeed = adom.unit_otimes, adom.unit_oplus
    memo: dict[int, Front] = {
        ZERO: ((ddom.unit_otimes, fail),),
        ONE: ((ddom.unit_otimes, succeed),),
    }

    def attacker_component(child: int, var: str):
        front = memo[child]
        if len(front) != 1 or front[0][0] != ddom.unit_otimes:
            raise OrderingError(
                f"below attack step {var!r} the diagram still depends on "
                "defender choices; the variable order must place every "
                "defense step before every attack step"
            )
        return front[0][1]

    todo = [ref]
    while todo:
        r = todo[-1]
        if r in memo:
            todo.pop()
            continue
        level, low, high = mgr._nodes[r]
        pending = [c for c in (low, high) if c not in memo]
        if pending:
            todo.extend(pending)
            continue
        todo.pop()
        var = mgr.order[level]
        if adt.nodes[var].actor is Actor.ATTACKER:
            skip = attacker_component(low, var)
            take = attacker_component(high, var)
            best = adom.oplus(
                skip, adom.otimes(aadt.attacker_values[var], take)
            )
            memo[r] = ((ddom.unit_otimes, best),)
        else:
            cost = aadt.defender_values[var]
            points = list(memo[low])
            points.extend((ddom.otimes(cost, d), a) for d, a in memo[high])
            memo[r] = pareto_min(points, ddom, adom)
    return memo[ref]


# ----------------------------------------------------------------------
# structural checks (used by the test suite, handy for debugging)

def structure_violations(mgr: BddManager, ref: int) -> list[str]:
    """Reducedness, ordering and rootedness defects of one diagram."""
    out = []
    refs = mgr.reachable(ref)
    seen_keys: dict[tuple[int, int, int], int] = {}
    has_parent = set()
    for r in refs:
        if mgr.is_terminal(r):
            continue
        level, low, high = mgr._nodes[r]
        if low == high:
            out.append(f"node {r} has identical children")
        key = (level, low, high)
        if key in seen_keys:
            out.append(f"nodes {seen_keys[key]} and {r} duplicate {key}")
        seen_keys[key] = r
        for c in (low, high):
            has_parent.add(c)
            if mgr._nodes[c][0] <= level:
                out.append(f"edge {r} -> {c} does not descend in the order")
    parentless = [r for r in refs if r not in has_parent and not mgr.is_terminal(r)]
    if mgr.is_terminal(ref):
        if refs != [ref]:
            out.append("terminal root with extra reachable nodes")
    elif parentless != [ref]:
        out.append(f"expected the root {ref} as only parentless node, got {parentless}")
    return out
