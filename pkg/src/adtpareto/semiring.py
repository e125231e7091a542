"""Attribute domains and Pareto front primitives.

An attribute domain packages a commutative, associative combinator
(``otimes``) with a total order on values.  The selection operator
(``oplus``) is never stored: it is always "pick the smaller value under
the order".  Fronts are tuples of ``(defender value, attacker value)``
pairs kept minimal under componentwise dominance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Tuple, Union

Value = Union[int, float, Fraction]
ValuePair = Tuple[Value, Value]
Front = Tuple[ValuePair, ...]


class SemiringOp(Enum):
    """Names one of the two domain operators without fixing a domain."""

    OTIMES = "otimes"
    OPLUS = "oplus"


@dataclass(frozen=True)
class Domain:
    """A totally ordered value set with a combinator.

    ``unit_otimes`` is the neutral element of ``otimes`` and the least
    element of the order; ``unit_oplus`` is the greatest element and
    stands for "no attack exists".  ``leq(x, y)`` reads "x is at least
    as good as y" for the owner of the domain, so for probabilities the
    order runs opposite to the numeric one.
    """

    name: str
    otimes: Callable[[Value, Value], Value]
    unit_otimes: Value
    unit_oplus: Value
    leq: Callable[[Value, Value], bool]
    lower: Value = 0
    upper: Value = math.inf

    def oplus(self, x: Value, y: Value) -> Value:
        """Selection: the better of two values under the order."""
        return x if self.leq(x, y) else y

    def lt(self, x: Value, y: Value) -> bool:
        return x != y and self.leq(x, y)

    def contains(self, v: Value) -> bool:
        """Whether ``v`` lies in the domain's numeric value range."""
        if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
            return False
        if isinstance(v, float) and math.isnan(v):
            return False
        return self.lower <= v <= self.upper

    def __repr__(self) -> str:  # keep dataclass noise out of error messages
        return f"Domain({self.name!r})"


def _add(x: Value, y: Value) -> Value:
    return x + y


def _max(x: Value, y: Value) -> Value:
    return max(x, y)


def _mul(x: Value, y: Value) -> Value:
    return x * y


def _le(x: Value, y: Value) -> bool:
    return x <= y

def _ge(x: Value, y: Value) -> bool:
    return x >= y


BUILTIN_DOMAINS: dict[str, Domain] = {
    "min_cost": Domain("min_cost", _add, 0, math.inf, _le),
    "min_time_seq": Domain("min_time_seq", _add, 0, math.inf, _le),
    "min_time_par": Domain("min_time_par", _max, 0, math.inf, _le),
    "min_skill": Domain("min_skill", _max, 0, math.inf, _le),
    # Success probabilities: combining is multiplication and smaller
    # probabilities are *worse* for the owner, so the order is the
    # reversed numeric one.  The neutral element of multiplication (1)
    # is then the least element, and 0 the greatest ("no attack").
    "probability": Domain("probability", _mul, 1, 0, _ge, lower=0, upper=1),
}


def builtin_domain(name: str) -> Domain:
    """Look up one of the built-in attribute domains by name."""
    try:
        return BUILTIN_DOMAINS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_DOMAINS))
        raise KeyError(f"unknown attribute domain {name!r} (known: {known})") from None


def metric_value(domain: Domain, values: Iterable[Value], bits: Iterable[int]) -> Value:
    """Fold the values whose bit is set; the empty fold is the otimes unit."""
    acc = domain.unit_otimes
    for v, b in zip(values, bits, strict=True):
        if b:
            acc = domain.otimes(acc, v)
    return acc


def dominates(p: ValuePair, q: ValuePair, defender_dom: Domain, attacker_dom: Domain) -> bool:
    """True when ``p`` is at least as good as ``q`` on both axes.

    Good for the defender means a small defender value and a *large*
    attacker value (the attack is expensive or impossible).
    """
    return defender_dom.leq(p[0], q[0]) and attacker_dom.leq(q[1], p[1])


def _front_cmp(defender_dom: Domain, attacker_dom: Domain):
    def cmp(p: ValuePair, q: ValuePair) -> int:
        if p[0] != q[0]:
            return -1 if defender_dom.leq(p[0], q[0]) else 1
        if p[1] != q[1]:
            # Equal defender values: the harder-to-attack point first.
            return -1 if attacker_dom.leq(q[1], p[1]) else 1
        return 0

    return cmp


def pareto_min(points: Iterable[ValuePair], defender_dom: Domain, attacker_dom: Domain) -> Front:
    """Dominance-minimal subset of ``points``, canonically sorted.

    Duplicates are merged first, so mutually equal points do not
    eliminate each other.  The result is an antichain sorted by
    ascending defender value, which makes fronts directly comparable
    with ``==``.
    """
    pts = list(dict.fromkeys((d, a) for d, a in points))
    pts.sort(key=cmp_to_key(_front_cmp(defender_dom, attacker_dom)))
    kept: list[ValuePair] = []
    strongest = None  # best attacker component among the points kept so far
    for d, a in pts:
        # Everything sorted earlier has a defender value at least as
        # good, so (d, a) survives iff no earlier attacker component
        # already covers a.
        if strongest is None or not attacker_dom.leq(a, strongest):
            kept.append((d, a))
            strongest = a
    return tuple(kept)


def combine_fronts(
    left: Iterable[ValuePair],
    right: Iterable[ValuePair],
    defender_dom: Domain,
    attacker_dom: Domain,
    attacker_op: SemiringOp,
) -> Front:
    """Pairwise-combine two fronts and minimize the result.

    Defender components always combine with the defender combinator;
    the attacker side uses the gate-dependent operator, either the
    combinator or the selection.
    """
    if attacker_op is SemiringOp.OTIMES:
        op = attacker_dom.otimes
    else:
        op = attacker_dom.oplus
    products = [
        (defender_dom.otimes(dl, dr), op(al, ar))
        for dl, al in left
        for dr, ar in right
    ]
    return pareto_min(products, defender_dom, attacker_dom)


def format_value(v: Value) -> str:
    """Render a value for CSV output: plain decimals, infinity as 'inf'."""
    if v == math.inf:
        return "inf"
    if isinstance(v, Fraction):
        v = float(v)
    return str(v)


def front_to_csv(front: Iterable[ValuePair]) -> str:
    lines = ["defender,attacker"]
    for d, a in front:
        lines.append(f"{format_value(d)},{format_value(a)}")
    return "\n".join(lines) + "\n"


def front_to_json(front: Iterable[ValuePair]) -> str:
    def cell(v: Value):
        if v == math.inf:
            return None
        if isinstance(v, Fraction):
            return float(v)
        return v

    return json.dumps([[cell(d), cell(a)] for d, a in front])
