"""Expression extraction from finite machine states.

Each reachable state gets a fixed-point template over one variable per state;
the templates are then combined by a staged syntactic-replacement schedule
(variable k+1 is replaced at stage k+1 by that stage's term for it).  The
replacement is deliberately capture-permitting; that is what ties the
recursive knots.  The resulting expression is closed, well typed at the
ambient type, and bisimilar to the chosen state.
"""
from __future__ import annotations

from functools import reduce

from .coalgebra import Coalgebra, reachable
from .expr import (
    Empty,
    Expr,
    LatElem,
    Mu,
    Plus,
    ProdL,
    ProdR,
    Act,
    Single,
    SumL,
    SumR,
    Var,
    OrderContext,
    order_context_for,
    replace,
    term_key,
)
from .functor import (
    BiasedSum,
    Const,
    Exponent,
    FinPowerset,
    FunctorExpr,
    Id,
    Product,
)
from .fvalue import (
    FBot,
    FCarrier,
    FConst,
    FFun,
    FInl,
    FInr,
    FPair,
    FSet,
    FTop,
    FValue,
    ShapeError,
)


def _sum_right(terms: list[Expr]) -> Expr:
    if not terms:
        return Empty()
    return reduce(lambda a, b: Plus(b, a), reversed(terms))


def gamma_of(
    f: FunctorExpr,
    c: FValue,
    varmap: dict[str, str],
    order: OrderContext | None = None,
) -> Expr:
    """Expression template for a value over states; carrier leaves become variables.

    Sum folds are right-nested: exponent entries in alphabet order, set members
    in the global term order of their templates; top is rendered canonically as
    the sum of both injections of empty.
    """
    match f, c:
        case Id(), FCarrier(s):
            try:
                return Var(varmap[s])
            except KeyError:
                raise ShapeError(f"no variable for state {s!r}") from None
        case Const(_), FConst(_, element):
            return LatElem(element)
        case Product(f1, f2), FPair(l, r):
            return Plus(
                ProdL(gamma_of(f1, l, varmap, order)),
                ProdR(gamma_of(f2, r, varmap, order)),
            )
        case BiasedSum(f1, _), FInl(i):
            return SumL(gamma_of(f1, i, varmap, order))
        case BiasedSum(_, f2), FInr(i):
            return SumR(gamma_of(f2, i, varmap, order))
        case BiasedSum(_, _), FBot():
            return Empty()
        case BiasedSum(_, _), FTop():
            return Plus(SumL(Empty()), SumR(Empty()))
        case Exponent(base, alphabet), FFun(_):
            return _sum_right(
                [Act(a, gamma_of(base, c(a), varmap, order)) for a in alphabet]
            )
        case FinPowerset(base), FSet(members):
            parts = [Single(gamma_of(base, m, varmap, order)) for m in members]
            parts.sort(key=lambda t: term_key(t, order))
            return _sum_right(parts)
    raise ShapeError(f"value {c!r} does not match ingredient {f!r}")


def _solve(c: Coalgebra, order_states: tuple[str, ...]) -> dict[str, Expr]:
    """Run the replacement schedule over the given state enumeration."""
    order = order_context_for(c.functor)
    varmap = {s: f"x{i + 1}" for i, s in enumerate(order_states)}
    current = {
        s: Mu(varmap[s], gamma_of(c.functor, c.value(s), varmap, order))
        for s in order_states
    }
    for sk in order_states:
        stage_term = current[sk]
        x = varmap[sk]
        # replacing into stage_term itself is a no-op: x is bound there
        current = {s: replace(t, x, stage_term) for s, t in current.items()}
    return current


def extract(c: Coalgebra, s: str) -> Expr:
    """Closed expression bisimilar to state s.

    States are enumerated breadth-first from s; variables x1..xn follow the
    discovery order, which makes outputs deterministic.  When the ambient type
    is the identity, every state denotes the empty behaviour.
    """
    if c.functor == Id():
        return Empty()
    sub = reachable(c, s)
    return _solve(sub, sub.states)[s]


def extract_all(c: Coalgebra) -> dict[str, Expr]:
    """Expressions for every state, from one schedule over the declared order.

    This is the whole-system view: all states share a single variable
    assignment x1..xn in declared state order, so the results for different
    states agree with reading off one solved equation system.
    """
    if c.functor == Id():
        return {s: Empty() for s in c.states}
    return _solve(c, c.states)
