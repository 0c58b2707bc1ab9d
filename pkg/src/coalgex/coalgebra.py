"""Finite pointed coalgebras: a state set with a transition map into F-values."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .functor import FunctorExpr
from .fvalue import FValue, ShapeError, carrier_leaves, check_shape


class CoalgebraError(ValueError):
    pass


@dataclass
class Coalgebra:
    functor: FunctorExpr
    states: tuple[str, ...]
    transition: dict[str, FValue]
    point: str | None = None
    # optional display names (e.g. the expression a synthesized state stands for)
    labels: dict[str, str] = field(default_factory=dict)

    def value(self, state: str) -> FValue:
        try:
            return self.transition[state]
        except KeyError:
            raise CoalgebraError(f"unknown state {state!r}") from None


def validate_coalgebra(c: Coalgebra) -> None:
    """Totality, shape conformance and state references."""
    if len(set(c.states)) != len(c.states):
        raise CoalgebraError("duplicate state names")
    state_set = set(c.states)
    missing = state_set - set(c.transition)
    if missing:
        raise CoalgebraError(f"transition not total at state {sorted(missing)[0]!r}")
    extra = set(c.transition) - state_set
    if extra:
        raise CoalgebraError(f"transition for undeclared state {sorted(extra)[0]!r}")
    for s in c.states:
        try:
            check_shape(c.functor, c.transition[s], state_set)
        except ShapeError as err:
            raise CoalgebraError(f"state {s!r}: {err}") from None
    if c.point is not None and c.point not in state_set:
        raise CoalgebraError(f"point {c.point!r} is not a state")


def successors(c: Coalgebra, s: str) -> list[str]:
    """Successor states in canonical traversal order, without duplicates."""
    seen: list[str] = []
    for t in carrier_leaves(c.value(s)):
        if t not in seen:
            seen.append(t)
    return seen


def reachable(c: Coalgebra, s: str) -> Coalgebra:
    """The subcoalgebra generated by s (breadth-first state order)."""
    if s not in c.transition:
        raise CoalgebraError(f"unknown state {s!r}")
    order: list[str] = [s]
    frontier = [s]
    while frontier:
        nxt: list[str] = []
        for q in frontier:
            for t in successors(c, q):
                if t not in order:
                    order.append(t)
                    nxt.append(t)
        frontier = nxt
    return Coalgebra(
        functor=c.functor,
        states=tuple(order),
        transition={q: c.transition[q] for q in order},
        point=s,
        labels={q: c.labels[q] for q in order if q in c.labels},
    )


def renamed(c: Coalgebra, mapping: dict[str, str]) -> Coalgebra:
    """Bijectively rename states (order preserved)."""
    from .fvalue import fmap

    return Coalgebra(
        functor=c.functor,
        states=tuple(mapping[s] for s in c.states),
        transition={
            mapping[s]: fmap(c.functor, lambda t: mapping[t], v)
            for s, v in c.transition.items()
        },
        point=mapping[c.point] if c.point is not None else None,
        labels={mapping[s]: text for s, text in c.labels.items()},
    )
