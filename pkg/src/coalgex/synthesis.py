"""Finite machine synthesis from an expression, via canonical sum normal forms.

Deriving an expression repeatedly generates syntactically fresh states without
bound; normalizing each state modulo associativity, commutativity, idempotency
and the empty summand keeps the state space finite.  The normal form flattens
sums to a duplicate-free list sorted by the global term order, drops empty
summands, and re-associates to the right; it is computed under binders too,
so syntactic identity detects more duplicates than top-level normalization
would (the machines come out smaller, the finiteness bound is unaffected).
"""
from __future__ import annotations

from functools import reduce

from .coalgebra import Coalgebra
from .derivative import delta
from .expr import (
    Act,
    Empty,
    Expr,
    Mu,
    OrderContext,
    Plus,
    ProdL,
    ProdR,
    Single,
    SumL,
    SumR,
    order_context_for,
    pretty,
    term_key,
)
from .functor import FunctorExpr
from .fvalue import fmap
from .typecheck import typecheck


def acie_normal_form(e: Expr, order: OrderContext | None = None) -> Expr:
    """Canonical representative of the expression modulo sum laws.

    Idempotent; the result is provably equivalent to the input (each rewrite
    is an instance of associativity, commutativity, idempotency or unit).
    """

    def nf(e: Expr) -> Expr:
        match e:
            case Plus(_, _):
                summands: list[Expr] = []
                stack = [e]
                while stack:
                    t = stack.pop()
                    if isinstance(t, Plus):
                        stack.append(t.right)
                        stack.append(t.left)
                    else:
                        t = nf(t)
                        if not isinstance(t, Empty) and t not in summands:
                            summands.append(t)
                summands.sort(key=lambda t: term_key(t, order))
                if not summands:
                    return Empty()
                return reduce(lambda a, b: Plus(b, a), reversed(summands))
            case Mu(binder, body):
                return Mu(binder, nf(body))
            case ProdL(i):
                return ProdL(nf(i))
            case ProdR(i):
                return ProdR(nf(i))
            case SumL(i):
                return SumL(nf(i))
            case SumR(i):
                return SumR(nf(i))
            case Act(a, i):
                return Act(a, nf(i))
            case Single(i):
                return Single(nf(i))
            case _:
                return e

    return nf(e)


def synthesize(g: FunctorExpr, e: Expr) -> Coalgebra:
    """Finite pointed machine whose point is bisimilar to the expression.

    Worklist closure: each pending state is derived, the resulting value is
    normalized carrier-wise, and every carrier leaf becomes a state.  States
    are named s1, s2, ... in discovery order and labelled with their
    expression text.
    """
    typecheck(e, g, g)
    order = order_context_for(g)
    memo: dict = {}

    def nf(t: Expr) -> Expr:
        return acie_normal_form(t, order)

    start = nf(e)
    index: dict[Expr, str] = {start: "s1"}
    exprs: list[Expr] = [start]
    transition: dict[str, object] = {}
    pending = [start]
    while pending:
        state = pending.pop(0)
        value = fmap(g, nf, delta(g, g, state, memo, _checked=True))

        def intern(t: Expr) -> str:
            name = index.get(t)
            if name is None:
                name = f"s{len(exprs) + 1}"
                index[t] = name
                exprs.append(t)
                pending.append(t)
            return name

        transition[index[state]] = fmap(g, intern, value)

    states = tuple(f"s{i + 1}" for i in range(len(exprs)))
    return Coalgebra(
        functor=g,
        states=states,
        transition=transition,  # type: ignore[arg-type]
        point="s1",
        labels={name: pretty(t) for t, name in index.items()},
    )
