"""Attack-defense tree model: graph types, validation, JSON interchange.

An ADT is a rooted connected DAG of typed nodes.  Leaves are basic
steps owned by either actor; inner nodes are AND/OR gates (children
share the gate's actor) or inhibition gates (one triggering child of
the opposite actor suppresses the other child's effect).

The JSON interchange format::

    {
      "name": "example",
      "root": "g1",
      "nodes": [
        {"id": "g1", "kind": "OR",  "actor": "A", "children": ["g2", "a3"]},
        {"id": "g2", "kind": "INH", "actor": "A", "trigger": "d1", "inhibited": "a1"},
        {"id": "a1", "kind": "BS",  "actor": "A", "cost": 5},
        ...
      ],
      "domains": {"attacker": "min_cost", "defender": "min_cost"}
    }

``cost`` is required exactly on basic steps, ``children`` exactly on
AND/OR gates, ``trigger``/``inhibited`` exactly on inhibition gates.
Unknown fields and duplicate ids are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .semiring import Domain, Value, builtin_domain, metric_value


class GateKind(Enum):
    BS = "BS"
    AND = "AND"
    OR = "OR"
    INH = "INH"


class Actor(Enum):
    ATTACKER = "A"
    DEFENDER = "D"

    def opponent(self) -> "Actor":
        return Actor.DEFENDER if self is Actor.ATTACKER else Actor.ATTACKER


@dataclass(frozen=True)
class AdtNode:
    """One node. For inhibition gates ``children == (trigger, inhibited)``."""

    id: str
    kind: GateKind
    actor: Actor
    children: tuple[str, ...] = ()
    trigger: str | None = None
    inhibited: str | None = None


class AdtFormatError(ValueError):
    """Raised when a document cannot even be read as an ADT."""


class Adt:
    """An attack-defense tree (more precisely, DAG).

    Instances are immutable after construction and safe to share;
    evaluation plans are cached on first use.  ``validate`` accepts
    arbitrary node maps, every other method assumes a valid structure.
    """

    def __init__(self, nodes: Mapping[str, AdtNode] | Iterable[AdtNode], root: str):
        if isinstance(nodes, Mapping):
            self.nodes: dict[str, AdtNode] = dict(nodes)
        else:
            self.nodes = {n.id: n for n in nodes}
        self.root = root
        self._plan = None
        self._steps_cache: tuple[tuple[str, ...], tuple[str, ...]] | None = None

    # ------------------------------------------------------------------
    # structural validation

    def validate(self) -> list[str]:
        """All constraint violations, empty when the ADT is well formed."""
        out: list[str] = []
        nodes = self.nodes
        if not nodes:
            return ["ADT has no nodes"]
        if self.root not in nodes:
            out.append(f"root {self.root!r} is not a declared node")

        for nid, n in nodes.items():
            if n.id != nid:
                out.append(f"{nid}: node map key disagrees with node id {n.id!r}")
            for c in n.children:
                if c not in nodes:
                    out.append(f"{nid}: references unknown node {c!r}")
            if len(set(n.children)) != len(n.children):
                out.append(f"{nid}: duplicate child entries")
            if n.kind is GateKind.BS:
                if n.children:
                    out.append(f"{nid}: basic step must be a leaf")
            elif not n.children:
                out.append(f"{nid}: {n.kind.value} gate has no children")
            if n.kind is GateKind.INH:
                if n.trigger is None or n.inhibited is None:
                    out.append(f"{nid}: inhibition gate needs both trigger and inhibited")
                elif n.trigger == n.inhibited:
                    out.append(f"{nid}: trigger and inhibited child must differ")
                elif set(n.children) != {n.trigger, n.inhibited}:
                    out.append(f"{nid}: children must be exactly the trigger and inhibited nodes")
                else:
                    t, h = nodes.get(n.trigger), nodes.get(n.inhibited)
                    if t is not None and h is not None and t.actor is h.actor:
                        out.append(
                            f"{nid}: inhibition children must belong to opposite actors"
                        )
            else:
                if n.trigger is not None or n.inhibited is not None:
                    out.append(f"{nid}: trigger/inhibited only allowed on INH gates")
                if n.kind in (GateKind.AND, GateKind.OR):
                    for c in n.children:
                        child = nodes.get(c)
                        if child is not None and child.actor is not n.actor:
                            out.append(f"{nid}: child {c} must have the gate's actor")

        # Graph shape: rooted, connected, acyclic, root without parents.
        for nid, n in nodes.items():
            if self.root in n.children:
                out.append(f"{nid}: root must not have incoming edges")
        if self.root in nodes:
            reachable, cyclic = self._reach(self.root)
            for nid in cyclic:
                out.append(f"{nid}: lies on a cycle")
            for nid in nodes:
                if nid not in reachable:
                    out.append(f"{nid}: unreachable from root")
        return out

    def _reach(self, start: str) -> tuple[set[str], set[str]]:
        """Reachable node ids and ids closing a cycle (three-color DFS)."""
        reachable: set[str] = {start}
        cyclic: set[str] = set()
        color: dict[str, int] = {start: 1}  # 1 = on the current path, 2 = done
        frames: list[list] = [[start, 0]]
        while frames:
            frame = frames[-1]
            nid, i = frame
            kids = tuple(k for k in self.nodes[nid].children if k in self.nodes)
            if i < len(kids):
                frame[1] += 1
                k = kids[i]
                reachable.add(k)
                c = color.get(k, 0)
                if c == 1:
                    cyclic.add(k)
                elif c == 0:
                    color[k] = 1
                    frames.append([k, 0])
            else:
                frames.pop()
                color[nid] = 2
        return reachable, cyclic

    # ------------------------------------------------------------------
    # derived structure

    def is_tree(self) -> bool:
        """True when no node has two parents."""
        seen: set[str] = set()
        for n in self.nodes.values():
            for c in n.children:
                if c in seen:
                    return False
                seen.add(c)
        return True

    def basic_steps(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        """Defense and attack step ids in document order.

        Document order is the first visit of a depth-first walk from the
        root that follows children left to right (trigger before
        inhibited).  This fixes the bit positions used by every vector
        in the package.
        """
        if self._steps_cache is None:
            defense: list[str] = []
            attack: list[str] = []
            seen: set[str] = set()
            stack = [self.root]
            while stack:
                nid = stack.pop()
                if nid in seen:
                    continue
                seen.add(nid)
                n = self.nodes[nid]
                if n.kind is GateKind.BS:
                    (defense if n.actor is Actor.DEFENDER else attack).append(nid)
                else:
                    stack.extend(reversed(n.children))
            self._steps_cache = (tuple(defense), tuple(attack))
        return self._steps_cache

    def _eval_plan(self):
        """Postorder instruction list over reachable nodes; built once."""
        if self._plan is not None:
            return self._plan
        order: list[str] = []
        done: set[str] = set()
        active: set[str] = set()
        frames: list[list] = [[self.root, 0]]
        active.add(self.root)
        while frames:
            frame = frames[-1]
            nid, i = frame
            kids = self.nodes[nid].children
            if i < len(kids):
                frame[1] += 1
                k = kids[i]
                if k in done:
                    continue
                if k in active:
                    raise ValueError(f"cycle through {k!r}; validate the ADT first")
                active.add(k)
                frames.append([k, 0])
            else:
                frames.pop()
                active.discard(nid)
                done.add(nid)
                order.append(nid)

        defense, attack = self.basic_steps()
        dpos = {nid: i for i, nid in enumerate(defense)}
        apos = {nid: i for i, nid in enumerate(attack)}
        idx = {nid: i for i, nid in enumerate(order)}
        steps: list[tuple] = []
        for nid in order:
            n = self.nodes[nid]
            if n.kind is GateKind.BS:
                if n.actor is Actor.DEFENDER:
                    steps.append((_OP_DEF, dpos[nid]))
                else:
                    steps.append((_OP_ATT, apos[nid]))
            elif n.kind is GateKind.AND:
                steps.append((_OP_AND, tuple(idx[c] for c in n.children)))
            elif n.kind is GateKind.OR:
                steps.append((_OP_OR, tuple(idx[c] for c in n.children)))
            else:
                steps.append((_OP_INH, (idx[n.inhibited], idx[n.trigger])))
        self._plan = (steps, idx, len(defense), len(attack))
        return self._plan

    def eval_structure(
        self,
        defense_bits: Sequence[int],
        attack_bits: Sequence[int],
        node: str | None = None,
    ) -> int:
        """Truth value of the node (default: root) under the given event.

        Bits are indexed by ``basic_steps`` order.  Shared nodes are
        evaluated once per call.
        """
        steps, idx, nd, na = self._eval_plan()
        if len(defense_bits) != nd or len(attack_bits) != na:
            raise ValueError(
                f"expected {nd} defense and {na} attack bits, "
                f"got {len(defense_bits)} and {len(attack_bits)}"
            )
        target = idx[self.root if node is None else node]
        vals = [0] * (target + 1)
        for i in range(target + 1):
            op, arg = steps[i]
            if op == _OP_ATT:
                v = 1 if attack_bits[arg] else 0
            elif op == _OP_DEF:
                v = 1 if defense_bits[arg] else 0
            elif op == _OP_AND:
                v = 1
                for j in arg:
                    if not vals[j]:
                        v = 0
                        break
            elif op == _OP_OR:
                v = 0
                for j in arg:
                    if vals[j]:
                        v = 1
                        break
            else:
                v = 1 if vals[arg[0]] and not vals[arg[1]] else 0
            vals[i] = v
        return vals[target]


_OP_ATT, _OP_DEF, _OP_AND, _OP_OR, _OP_INH = range(5)


@dataclass
class Aadt:
    """An ADT with attribute domains and per-step values attached.

    ``defender_values`` / ``attacker_values`` assign one domain value to
    every basic step of the respective actor.  Attack succeeds when the
    structure function yields 1 for an attacker root and 0 for a
    defender root; the root actor therefore decides which vectors count
    as successful everywhere downstream.
    """

    adt: Adt
    defender_domain: Domain
    attacker_domain: Domain
    defender_values: dict[str, Value]
    attacker_values: dict[str, Value]
    name: str = ""
    _ordered: tuple[tuple[Value, ...], tuple[Value, ...]] | None = field(
        default=None, repr=False, compare=False
    )

    def _ordered_values(self) -> tuple[tuple[Value, ...], tuple[Value, ...]]:
        if self._ordered is None:
            defense, attack = self.adt.basic_steps()
            self._ordered = (
                tuple(self.defender_values[i] for i in defense),
                tuple(self.attacker_values[i] for i in attack),
            )
        return self._ordered

    def defender_metric(self, defense_bits: Sequence[int]) -> Value:
        return metric_value(self.defender_domain, self._ordered_values()[0], defense_bits)

    def attacker_metric(self, attack_bits: Sequence[int]) -> Value:
        return metric_value(self.attacker_domain, self._ordered_values()[1], attack_bits)

    def validate(self) -> list[str]:
        """Structural violations plus assignment problems."""
        out = self.adt.validate()
        defense = {n.id for n in self.adt.nodes.values()
                   if n.kind is GateKind.BS and n.actor is Actor.DEFENDER}
        attack = {n.id for n in self.adt.nodes.values()
                  if n.kind is GateKind.BS and n.actor is Actor.ATTACKER}
        for ids, values, dom, label in (
            (defense, self.defender_values, self.defender_domain, "defender"),
            (attack, self.attacker_values, self.attacker_domain, "attacker"),
        ):
            for nid in sorted(ids - values.keys()):
                out.append(f"{nid}: missing {label} value")
            for nid in sorted(values.keys() - ids):
                out.append(f"{nid}: {label} value assigned to a non-{label} step")
            for nid in sorted(ids & values.keys()):
                if not dom.contains(values[nid]):
                    out.append(f"{nid}: value {values[nid]!r} outside domain {dom.name}")
        return out


def event_assignment(
    adt: Adt, defense_bits: Sequence[int], attack_bits: Sequence[int]
) -> dict[str, int]:
    """Map each basic step id to its bit for one event."""
    defense, attack = adt.basic_steps()
    if len(defense_bits) != len(defense) or len(attack_bits) != len(attack):
        raise ValueError("bit vector lengths do not match the basic steps")
    out = {nid: (1 if b else 0) for nid, b in zip(defense, defense_bits)}
    out.update({nid: (1 if b else 0) for nid, b in zip(attack, attack_bits)})
    return out


# ----------------------------------------------------------------------
# JSON interchange

_TOP_KEYS = {"name", "root", "nodes", "domains"}
_BASE_KEYS = {"id", "kind", "actor"}
_KEYS_BY_KIND = {
    GateKind.BS: _BASE_KEYS | {"cost"},
    GateKind.AND: _BASE_KEYS | {"children"},
    GateKind.OR: _BASE_KEYS | {"children"},
    GateKind.INH: _BASE_KEYS | {"trigger", "inhibited"},
}


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise AdtFormatError(message)


def aadt_from_dict(obj) -> Aadt:
    """Build an attributed ADT from parsed JSON, strictly."""
    _require(isinstance(obj, dict), "top level must be an object")
    extra = obj.keys() - _TOP_KEYS
    _require(not extra, f"unknown top-level fields: {sorted(extra)}")
    missing = _TOP_KEYS - obj.keys()
    _require(not missing, f"missing top-level fields: {sorted(missing)}")
    _require(isinstance(obj["name"], str), "'name' must be a string")
    _require(isinstance(obj["root"], str), "'root' must be a string")
    _require(isinstance(obj["nodes"], list) and obj["nodes"], "'nodes' must be a non-empty array")

    doms = obj["domains"]
    _require(isinstance(doms, dict), "'domains' must be an object")
    _require(
        doms.keys() == {"attacker", "defender"},
        "'domains' must have exactly the keys 'attacker' and 'defender'",
    )
    try:
        attacker_dom = builtin_domain(doms["attacker"])
        defender_dom = builtin_domain(doms["defender"])
    except (KeyError, TypeError) as e:
        raise AdtFormatError(str(e)) from None

    nodes: dict[str, AdtNode] = {}
    defender_values: dict[str, Value] = {}
    attacker_values: dict[str, Value] = {}
    for raw in obj["nodes"]:
        _require(isinstance(raw, dict), "each node must be an object")
        for key in _BASE_KEYS:
            _require(key in raw, f"node missing required field {key!r}")
        nid = raw["id"]
        _require(isinstance(nid, str) and nid, "node id must be a non-empty string")
        _require(nid not in nodes, f"duplicate node id {nid!r}")
        try:
            kind = GateKind(raw["kind"])
        except ValueError:
            raise AdtFormatError(f"{nid}: unknown kind {raw['kind']!r}") from None
        try:
            actor = Actor(raw["actor"])
        except ValueError:
            raise AdtFormatError(f"{nid}: unknown actor {raw['actor']!r}") from None

        allowed = _KEYS_BY_KIND[kind]
        extra = raw.keys() - allowed
        _require(not extra, f"{nid}: fields {sorted(extra)} not allowed on {kind.value}")
        missing = allowed - raw.keys()
        _require(not missing, f"{nid}: {kind.value} requires fields {sorted(missing)}")

        if kind is GateKind.BS:
            cost = raw["cost"]
            dom = defender_dom if actor is Actor.DEFENDER else attacker_dom
            _require(
                dom.contains(cost),
                f"{nid}: cost {cost!r} is not a value of domain {dom.name}",
            )
            nodes[nid] = AdtNode(nid, kind, actor)
            if actor is Actor.DEFENDER:
                defender_values[nid] = cost
            else:
                attacker_values[nid] = cost
        elif kind is GateKind.INH:
            trig, inh = raw["trigger"], raw["inhibited"]
            _require(isinstance(trig, str), f"{nid}: 'trigger' must be a node id")
            _require(isinstance(inh, str), f"{nid}: 'inhibited' must be a node id")
            nodes[nid] = AdtNode(nid, kind, actor, (trig, inh), trigger=trig, inhibited=inh)
        else:
            kids = raw["children"]
            _require(
                isinstance(kids, list) and all(isinstance(c, str) for c in kids),
                f"{nid}: 'children' must be an array of node ids",
            )
            nodes[nid] = AdtNode(nid, kind, actor, tuple(kids))

    return Aadt(
        adt=Adt(nodes, obj["root"]),
        defender_domain=defender_dom,
        attacker_domain=attacker_dom,
        defender_values=defender_values,
        attacker_values=attacker_values,
        name=obj["name"],
    )


def parse_aadt(text: str) -> Aadt:
    """Parse the JSON interchange format; AdtFormatError on any defect."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise AdtFormatError(f"not valid JSON: {e}") from None
    return aadt_from_dict(obj)


def load_aadt(path) -> Aadt:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_aadt(fh.read())


def _json_cost(v: Value):
    if isinstance(v, Fraction):
        return float(v)
    return v


def aadt_to_dict(aadt: Aadt) -> dict:
    nodes = []
    for n in aadt.adt.nodes.values():
        rec: dict = {"id": n.id, "kind": n.kind.value, "actor": n.actor.value}
        if n.kind is GateKind.INH:
            rec["trigger"] = n.trigger
            rec["inhibited"] = n.inhibited
        elif n.kind is not GateKind.BS:
            rec["children"] = list(n.children)
        else:
            values = (
                aadt.defender_values
                if n.actor is Actor.DEFENDER
                else aadt.attacker_values
            )
            rec["cost"] = _json_cost(values[n.id])
        nodes.append(rec)
    return {
        "name": aadt.name,
        "root": aadt.adt.root,
        "nodes": nodes,
        "domains": {
            "attacker": aadt.attacker_domain.name,
            "defender": aadt.defender_domain.name,
        },
    }


def serialize_aadt(aadt: Aadt) -> str:
    """Canonical text form: stable key order, two-space indent."""
    return json.dumps(aadt_to_dict(aadt), indent=2) + "\n"


def save_aadt(aadt: Aadt, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_aadt(aadt))
