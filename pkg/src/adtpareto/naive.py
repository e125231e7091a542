"""Brute-force reference analysis.

Everything here enumerates complete vector spaces.  It is the trusted
oracle the clever algorithms are checked against, so it must stay free
of pruning and shortcuts.
"""

from __future__ import annotations

from typing import Sequence, Union

from .model import Aadt, Actor
from .semiring import Front, pareto_min

DEFAULT_ENUMERATION_CAP = 26


class EnumerationCapError(RuntimeError):
    """Refusal to enumerate an event space larger than 2**cap."""


class _NoAttack:
    """Marker for 'no successful attack exists against this defense'."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "NO_ATTACK"

    def __reduce__(self):
        return "NO_ATTACK"


NO_ATTACK = _NoAttack()

Response = Union[tuple, _NoAttack]


def _check_cap(aadt: Aadt, force: bool) -> None:
    defense, attack = aadt.adt.basic_steps()
    n = len(defense) + len(attack)
    if n > DEFAULT_ENUMERATION_CAP and not force:
        raise EnumerationCapError(
            f"{n} basic steps exceed the enumeration cap of "
            f"{DEFAULT_ENUMERATION_CAP}; pass force=True to run anyway"
        )


def _vectors(n: int) -> list[tuple[int, ...]]:
    """All bit vectors of width n in lexicographic order."""
    return [tuple((k >> (n - 1 - i)) & 1 for i in range(n)) for k in range(1 << n)]


def _attack_succeeds(aadt: Aadt, value: int) -> bool:
    # An attacker root wants the structure function true, a defender
    # root wants it false.
    if aadt.adt.nodes[aadt.adt.root].actor is Actor.ATTACKER:
        return value == 1
    return value == 0


def optimal_response(
    aadt: Aadt, defense_bits: Sequence[int], *, force: bool = False
) -> Response:
    """Cheapest successful attack against one defense vector.

    Ties are broken toward the lexicographically smallest vector;
    NO_ATTACK when no attack works.
    """
    _check_cap(aadt, force)
    _, attack = aadt.adt.basic_steps()
    best: Response = NO_ATTACK
    best_val = None
    dom = aadt.attacker_domain
    for alpha in _vectors(len(attack)):
        if not _attack_succeeds(aadt, aadt.adt.eval_structure(defense_bits, alpha)):
            continue
        val = aadt.attacker_metric(alpha)
        if best_val is None or dom.lt(val, best_val):
            best, best_val = alpha, val
    return best


def feasible_events(
    aadt: Aadt, *, force: bool = False
) -> list[tuple[tuple[int, ...], Response]]:
    """Every defense vector paired with its optimal attack response."""
    _check_cap(aadt, force)
    defense, attack = aadt.adt.basic_steps()
    alphas = _vectors(len(attack))
    dom = aadt.attacker_domain
    attack_costs = [aadt.attacker_metric(a) for a in alphas]
    eval_structure = aadt.adt.eval_structure
    out = []
    for delta in _vectors(len(defense)):
        best: Response = NO_ATTACK
        best_val = None
        for alpha, val in zip(alphas, attack_costs):
            if not _attack_succeeds(aadt, eval_structure(delta, alpha)):
                continue
            if best_val is None or dom.lt(val, best_val):
                best, best_val = alpha, val
        out.append((delta, best))
    return out


def naive_pareto(aadt: Aadt, *, force: bool = False) -> Front:
    """Pareto front by full enumeration of the feasible events."""
    pairs = []
    for delta, resp in feasible_events(aadt, force=force):
        d = aadt.defender_metric(delta)
        if resp is NO_ATTACK:
            a = aadt.attacker_domain.unit_oplus
        else:
            a = aadt.attacker_metric(resp)
        pairs.append((d, a))
    return pareto_min(pairs, aadt.defender_domain, aadt.attacker_domain)
