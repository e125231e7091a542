"""Seeded random generation of attributed ADTs.

Instances must be reproducible byte for byte across machines and
Python versions, so randomness comes from a small local SplitMix64
implementation instead of the stdlib Mersenne twister, whose draw
algorithms are not a documented stability guarantee.

The generator keeps a stack of open child slots and spends a node
budget on them.  A slot becomes a gate while budget allows children and
a basic step once it does not, so the requested node count is hit
exactly.  All distributional choices (uniform child counts, uniform
AND/OR split, inhibition carve-out, cost range) are documented in the
README.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import Aadt, Actor, Adt, AdtNode, GateKind
from .semiring import builtin_domain

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 pseudo-random generator (public-domain algorithm).

    64-bit state, one mix per draw.  Good enough statistically for
    instance generation and trivially portable.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]; modulo reduction (bias < 2**-50
        for the ranges used here)."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq: Sequence):
        return seq[self.randint(0, len(seq) - 1)]


@dataclass(frozen=True)
class GenConfig:
    """Knobs for one random instance; equal configs give equal bytes."""

    node_count: int
    seed: int
    shape: str = "tree"
    max_children: int = 3
    inh_prob: float = 0.2
    dag_share_prob: float = 0.15
    cost_range: tuple[int, int] = (1, 100)

    def check(self) -> None:
        if self.node_count < 1:
            raise ValueError("node_count must be positive")
        if self.shape not in ("tree", "dag"):
            raise ValueError("shape must be 'tree' or 'dag'")
        if self.max_children < 2:
            raise ValueError("max_children must be at least 2")
        if not (0.0 <= self.inh_prob <= 1.0 and 0.0 <= self.dag_share_prob <= 1.0):
            raise ValueError("probabilities must lie in [0, 1]")
        lo, hi = self.cost_range
        if not (isinstance(lo, int) and isinstance(hi, int) and 0 <= lo <= hi):
            raise ValueError("cost_range must be a non-negative integer range")


# A slot is one pending child position: (parent id or None for the
# root, actor the node there must have, role for INH bookkeeping).
_CHILD, _TRIGGER, _INHIBITED = "child", "trigger", "inhibited"


def random_aadt(cfg: GenConfig) -> Aadt:
    """Generate a valid attributed ADT with exactly cfg.node_count nodes.

    Costs are uniform integers from cfg.cost_range on the min_cost
    domain for both actors; rebind domains by constructing a new Aadt
    if another domain pair is wanted.
    """
    cfg.check()
    rng = SplitMix64(cfg.seed)
    records: dict[str, dict] = {}
    steps_by_actor: dict[Actor, list[str]] = {Actor.ATTACKER: [], Actor.DEFENDER: []}
    values: dict[Actor, dict[str, int]] = {Actor.ATTACKER: {}, Actor.DEFENDER: {}}
    counters = {"a": 0, "d": 0, "g": 0}

    def new_id(prefix: str) -> str:
        counters[prefix] += 1
        return f"{prefix}{counters[prefix]}"

    def attach(parent: str | None, role: str, nid: str) -> None:
        if parent is None:
            return
        rec = records[parent]
        rec["children"].append(nid)
        if role != _CHILD:
            rec[role] = nid

    root_actor = rng.choice((Actor.ATTACKER, Actor.DEFENDER))
    root_id: str | None = None
    slots: list[tuple[str | None, Actor, str]] = [(None, root_actor, _CHILD)]
    created = 0

    while slots:
        parent, actor, role = slots.pop()
        # Budget accounting: this slot consumes one node; every other
        # open slot still needs at least one.
        room = cfg.node_count - created - 1 - len(slots)
        assert room >= 0, "slot bookkeeping broke the node budget"

        if room == 0:
            # Budget exhausted at this position: place a basic step,
            # possibly shared in dag mode (sharing frees one node of
            # budget, which needs another open slot to absorb it).
            reused = None
            if cfg.shape == "dag" and parent is not None and slots:
                siblings = set(records[parent]["children"])
                candidates = [s for s in steps_by_actor[actor] if s not in siblings]
                if candidates and rng.random() < cfg.dag_share_prob:
                    reused = rng.choice(candidates)
            if reused is not None:
                attach(parent, role, reused)
                continue
            nid = new_id("a" if actor is Actor.ATTACKER else "d")
            records[nid] = {"kind": GateKind.BS, "actor": actor, "children": []}
            values[actor][nid] = rng.randint(*cfg.cost_range)
            steps_by_actor[actor].append(nid)
            created += 1
            attach(parent, role, nid)
            if parent is None:
                root_id = nid
            continue

        # Room to spawn children: place a gate.
        kind = GateKind.AND if rng.random() < 0.5 else GateKind.OR
        if room >= 2 and rng.random() < cfg.inh_prob:
            kind = GateKind.INH
        nid = new_id("g")
        records[nid] = {"kind": kind, "actor": actor, "children": []}
        created += 1
        attach(parent, role, nid)
        if parent is None:
            root_id = nid
        if kind is GateKind.INH:
            # Trigger belongs to the opponent; push inhibited first so
            # the trigger subtree is generated (and numbered) first.
            slots.append((nid, actor, _INHIBITED))
            slots.append((nid, actor.opponent(), _TRIGGER))
        else:
            want = rng.randint(2, cfg.max_children)
            count = min(want, room)
            for _ in range(count):
                slots.append((nid, actor, _CHILD))

    assert created == cfg.node_count and root_id is not None

    nodes: dict[str, AdtNode] = {}
    for nid, rec in records.items():
        if rec["kind"] is GateKind.INH:
            nodes[nid] = AdtNode(
                nid,
                GateKind.INH,
                rec["actor"],
                (rec["trigger"], rec["inhibited"]),
                trigger=rec["trigger"],
                inhibited=rec["inhibited"],
            )
        else:
            nodes[nid] = AdtNode(nid, rec["kind"], rec["actor"], tuple(rec["children"]))

    aadt = Aadt(
        adt=Adt(nodes, root_id),
        defender_domain=builtin_domain("min_cost"),
        attacker_domain=builtin_domain("min_cost"),
        defender_values=values[Actor.DEFENDER],
        attacker_values=values[Actor.ATTACKER],
        name=f"gen-{cfg.shape}-n{cfg.node_count}-s{cfg.seed}",
    )
    problems = aadt.validate()
    if problems:
        raise RuntimeError(f"generator produced an invalid ADT: {problems[:3]}")
    return aadt
