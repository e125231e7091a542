"""Shared fixtures: hand-built reference models and small helpers."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from adtpareto.model import Aadt, Actor, Adt, AdtNode, GateKind
from adtpareto.semiring import builtin_domain

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def mk_aadt(nodes, root, defender_values, attacker_values,
            defender="min_cost", attacker="min_cost", name=""):
    return Aadt(
        adt=Adt(nodes, root),
        defender_domain=builtin_domain(defender),
        attacker_domain=builtin_domain(attacker),
        defender_values=dict(defender_values),
        attacker_values=dict(attacker_values),
        name=name,
    )


def bs(nid, actor):
    return AdtNode(nid, GateKind.BS, actor)


def gate(nid, kind, actor, children):
    return AdtNode(nid, kind, actor, tuple(children))


def inh(nid, actor, trigger, inhibited):
    return AdtNode(nid, GateKind.INH, actor, (trigger, inhibited),
                   trigger=trigger, inhibited=inhibited)


def build_countered_routes() -> Aadt:
    """Two countered attack routes under an OR: front {(0,5),(4,10),(12,inf)}."""
    nodes = [
        gate("root", GateKind.OR, Actor.ATTACKER, ("block1", "block2")),
        inh("block1", Actor.ATTACKER, "d1", "a1"),
        inh("block2", Actor.ATTACKER, "d2", "a2"),
        bs("d1", Actor.DEFENDER),
        bs("a1", Actor.ATTACKER),
        bs("d2", Actor.DEFENDER),
        bs("a2", Actor.ATTACKER),
    ]
    return mk_aadt(nodes, "root", {"d1": 4, "d2": 8}, {"a1": 5, "a2": 10},
                   name="countered-routes")


def build_joint_defense() -> Aadt:
    """Attack a2 is stopped only by deploying both defenses, unless the
    attacker also runs a1; a3 always works but is expensive.

    Reference feasible events: every single defense leaves the a2-only
    attack (cost 10) optimal; both defenses force a1+a2 (cost 15).
    """
    nodes = [
        gate("root", GateKind.OR, Actor.ATTACKER, ("x", "a3")),
        inh("x", Actor.ATTACKER, "t", "a2"),
        inh("t", Actor.DEFENDER, "a1", "both"),
        gate("both", GateKind.AND, Actor.DEFENDER, ("d1", "d2")),
        bs("d1", Actor.DEFENDER),
        bs("d2", Actor.DEFENDER),
        bs("a1", Actor.ATTACKER),
        bs("a2", Actor.ATTACKER),
        bs("a3", Actor.ATTACKER),
    ]
    return mk_aadt(nodes, "root", {"d1": 5, "d2": 10},
                   {"a1": 5, "a2": 10, "a3": 20}, name="joint-defense")


def build_maxpf(n: int) -> Aadt:
    """Defender-rooted OR of n inhibited defenses with doubling costs.

    Every defense subset is Pareto optimal: the front is exactly
    {(k, k) | 0 <= k < 2**n}.
    """
    nodes = [gate("root", GateKind.OR, Actor.DEFENDER,
                  tuple(f"i{i}" for i in range(1, n + 1)))]
    dv, av = {}, {}
    for i in range(1, n + 1):
        nodes.append(inh(f"i{i}", Actor.DEFENDER, f"a{i}", f"d{i}"))
        nodes.append(bs(f"a{i}", Actor.ATTACKER))
        nodes.append(bs(f"d{i}", Actor.DEFENDER))
        dv[f"d{i}"] = 2 ** (i - 1)
        av[f"a{i}"] = 2 ** (i - 1)
    return mk_aadt(nodes, "root", dv, av, name=f"maxpf-{n}")


def build_attack_first_counterexample() -> Aadt:
    """Single countered attack step; the pinned ordering regression model."""
    nodes = [
        inh("root", Actor.ATTACKER, "d1", "a1"),
        bs("d1", Actor.DEFENDER),
        bs("a1", Actor.ATTACKER),
    ]
    return mk_aadt(nodes, "root", {"d1": 4}, {"a1": 5},
                   name="attack_first_counterexample")


def unchecked_bdd_bu(aadt: Aadt, mgr, ref):
    """One-pass diagram analysis WITHOUT the defense-first guard.

    At an attack-level node this folds the child fronts down to their
    best attacker component and drops the defender components, which is
    exactly the unsound shortcut the shipped analysis refuses to take.
    Kept here as the regression foil, not as usable functionality.
    """
    from adtpareto.bdd import ONE, ZERO

    adt = aadt.adt
    ddom, adom = aadt.defender_domain, aadt.attacker_domain
    attacker_root = adt.nodes[adt.root].actor is Actor.ATTACKER
    if attacker_root:
        fail, succeed = adom.unit_oplus, adom.unit_otimes
    else:
        fail, succeed = adom.unit_otimes, adom.unit_oplus
    memo = {
        ZERO: ((ddom.unit_otimes, fail),),
        ONE: ((ddom.unit_otimes, succeed),),
    }

    def best_attacker(front):
        acc = front[0][1]
        for _, a in front[1:]:
            acc = adom.oplus(acc, a)
        return acc

    todo = [ref]
    while todo:
        r = todo[-1]
        if r in memo:
            todo.pop()
            continue
        low, high = mgr.low(r), mgr.high(r)
        pending = [c for c in (low, high) if c not in memo]
        if pending:
            todo.extend(pending)
            continue
        todo.pop()
        var = mgr.order[mgr.level(r)]
        if adt.nodes[var].actor is Actor.ATTACKER:
            best = adom.oplus(
                best_attacker(memo[low]),
                adom.otimes(aadt.attacker_values[var], best_attacker(memo[high])),
            )
            memo[r] = ((ddom.unit_otimes, best),)
        else:
            cost = aadt.defender_values[var]
            points = list(memo[low])
            points.extend((ddom.otimes(cost, d), a) for d, a in memo[high])
            from adtpareto.semiring import pareto_min
            memo[r] = pareto_min(points, ddom, adom)
    return memo[ref]


def eval_reference(aadt: Aadt, defense_bits, attack_bits, node=None) -> int:
    """Independent recursive structure evaluation (no memo, no plan)."""
    adt = aadt.adt
    defense, attack = adt.basic_steps()
    dbit = dict(zip(defense, defense_bits))
    abit = dict(zip(attack, attack_bits))

    def rec(nid: str) -> int:
        n = adt.nodes[nid]
        if n.kind is GateKind.BS:
            bit = dbit[nid] if n.actor is Actor.DEFENDER else abit[nid]
            return 1 if bit else 0
        if n.kind is GateKind.AND:
            return 1 if all(rec(c) for c in n.children) else 0
        if n.kind is GateKind.OR:
            return 1 if any(rec(c) for c in n.children) else 0
        return 1 if rec(n.inhibited) and not rec(n.trigger) else 0

    return rec(adt.root if node is None else node)


def all_vectors(n: int):
    """Bit tuples of width n, lexicographic."""
    return [tuple((k >> (n - 1 - i)) & 1 for i in range(n)) for k in range(1 << n)]


def to_domain_value(cost: int, domain_name: str):
    """Map a generated integer cost into a given domain's value set."""
    if domain_name == "probability":
        return Fraction(cost, 128)
    return cost


def rebind_domains(aadt: Aadt, defender: str, attacker: str) -> Aadt:
    """Same structure, new domain pair, costs mapped into range."""
    return Aadt(
        adt=aadt.adt,
        defender_domain=builtin_domain(defender),
        attacker_domain=builtin_domain(attacker),
        defender_values={k: to_domain_value(v, defender)
                         for k, v in aadt.defender_values.items()},
        attacker_values={k: to_domain_value(v, attacker)
                         for k, v in aadt.attacker_values.items()},
        name=f"{aadt.name}-{defender}-{attacker}",
    )


@pytest.fixture
def countered_routes() -> Aadt:
    return build_countered_routes()


@pytest.fixture
def joint_defense() -> Aadt:
    return build_joint_defense()
