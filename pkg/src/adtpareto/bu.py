"""Bottom-up Pareto analysis for tree-shaped ADTs.

Each node gets a front of (defender, attacker) value pairs; a gate's
front is the minimized pairwise combination of its children's fronts.
Minimizing between fold steps is sound because the combination
distributes over selection, so pruning never loses optimal points.
Sharing breaks the underlying decomposition argument, which is why a
DAG input is refused instead of silently analyzed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Aadt, Actor, GateKind
from .semiring import Front, SemiringOp, combine_fronts, pareto_min


class TreeShapeError(ValueError):
    """Raised when bottom-up analysis meets a node with two parents."""

    def __init__(self, node_id: str):
        self.node_id = node_id
        super().__init__(
            f"node {node_id!r} has more than one parent; "
            "bottom-up analysis is only sound on trees, use the BDD analysis"
        )


@dataclass(frozen=True)
class GateOps:
    """Per-gate operator pair; the defender side always accumulates."""

    defender: SemiringOp
    attacker: SemiringOp


_ATTACKER_OP = {
    (GateKind.AND, Actor.ATTACKER): SemiringOp.OTIMES,
    (GateKind.AND, Actor.DEFENDER): SemiringOp.OPLUS,
    (GateKind.OR, Actor.ATTACKER): SemiringOp.OPLUS,
    (GateKind.OR, Actor.DEFENDER): SemiringOp.OTIMES,
    (GateKind.INH, Actor.ATTACKER): SemiringOp.OTIMES,
    (GateKind.INH, Actor.DEFENDER): SemiringOp.OPLUS,
}


def gate_operators(kind: GateKind, actor: Actor) -> GateOps:
    """Operator pair used to fold child fronts at a gate.

    The attacker operator accumulates where the attacker must deal with
    every child (attacker AND, defender OR, attacker inhibition) and
    selects the best child otherwise.
    """
    if kind is GateKind.BS:
        raise ValueError("basic steps have no gate operators")
    return GateOps(SemiringOp.OTIMES, _ATTACKER_OP[(kind, actor)])


def bu_pareto(aadt: Aadt, node: str | None = None) -> Front:
    """Pareto front of the subtree rooted at ``node`` (default: root).

    Requires the subtree to be a tree; a shared node raises
    TreeShapeError naming it.
    """
    adt = aadt.adt
    start = adt.root if node is None else node
    ddom, adom = aadt.defender_domain, aadt.attacker_domain
    fronts: dict[str, Front] = {}
    visited = {start}
    frames: list[list] = [[start, 0]]
    while frames:
        frame = frames[-1]
        nid, i = frame
        n = adt.nodes[nid]
        if i < len(n.children):
            frame[1] += 1
            k = n.children[i]
            if k in visited:
                raise TreeShapeError(k)
            visited.add(k)
            frames.append([k, 0])
            continue
        frames.pop()
        if n.kind is GateKind.BS:
            if n.actor is Actor.ATTACKER:
                fronts[nid] = ((ddom.unit_otimes, aadt.attacker_values[nid]),)
            else:
                # Not deploying is free; deploying costs the step value
                # and, seen from this leaf alone, stops the attacker.
                fronts[nid] = pareto_min(
                    [
                        (ddom.unit_otimes, adom.unit_otimes),
                        (aadt.defender_values[nid], adom.unit_oplus),
                    ],
                    ddom,
                    adom,
                )
        else:
            ops = gate_operators(n.kind, n.actor)
            acc = fronts[n.children[0]]
            for k in n.children[1:]:
                acc = combine_fronts(acc, fronts[k], ddom, adom, ops.attacker)
            fronts[nid] = acc
    return fronts[start]
