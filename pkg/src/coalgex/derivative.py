"""The coalgebra structure on expressions: a generalized Brzozowski derivative.

For an ingredient F of an ambient type G, the derivative sends a well-typed
expression to a value of F over expression carriers.  Fixed points are
unfolded with capture-avoiding substitution; termination follows from the
lexicographic order on (ingredient position, measure of unguarded nesting).
"""
from __future__ import annotations

from .expr import (
    Act,
    Empty,
    Expr,
    LatElem,
    Mu,
    Plus,
    ProdL,
    ProdR,
    Single,
    SumL,
    SumR,
    substitute,
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
    FCarrier,
    FConst,
    FInl,
    FInr,
    FPair,
    FSet,
    FValue,
    ShapeError,
    empty_lift,
    make_ffun,
    plus_lift,
)
from .typecheck import TypecheckError, typecheck


def delta(
    f: FunctorExpr,
    g: FunctorExpr,
    e: Expr,
    memo: dict | None = None,
    _checked: bool = False,
) -> FValue:
    """Derivative of e at ingredient f of g.

    The memo table, when supplied, is keyed per (ingredient, expression) and
    is intended to live for a single synthesis run only.
    """
    if not _checked:
        typecheck(e, f, g)
    if memo is not None:
        key = (f, e)
        hit = memo.get(key)
        if hit is not None:
            return hit
    v = _delta(f, g, e, memo)
    if memo is not None:
        memo[(f, e)] = v
    return v


def _delta(f: FunctorExpr, g: FunctorExpr, e: Expr, memo: dict | None) -> FValue:
    if f == Id() and g != Id():
        # consistent with the empty/sum clauses where they overlap
        return FCarrier(e)
    match e:
        case Empty():
            return empty_lift(f, g)
        case Plus(l, r):
            return plus_lift(
                f, g, delta(f, g, l, memo, True), delta(f, g, r, memo, True)
            )
        case Mu(binder, body) if f == g:
            return delta(g, g, substitute(body, binder, e), memo, True)

    match f, e:
        case Const(lat), LatElem(el):
            return FConst(lat.name, el)
        case Product(f1, f2), ProdL(inner):
            return FPair(delta(f1, g, inner, memo, True), empty_lift(f2, g))
        case Product(f1, f2), ProdR(inner):
            return FPair(empty_lift(f1, g), delta(f2, g, inner, memo, True))
        case BiasedSum(f1, _), SumL(inner):
            return FInl(delta(f1, g, inner, memo, True))
        case BiasedSum(_, f2), SumR(inner):
            return FInr(delta(f2, g, inner, memo, True))
        case Exponent(base, _), Act(letter, inner):
            inner_v = delta(base, g, inner, memo, True)
            return make_ffun(
                f, lambda a: inner_v if a == letter else empty_lift(base, g)
            )
        case FinPowerset(base), Single(inner):
            return FSet((delta(base, g, inner, memo, True),))

    raise TypecheckError(f"no derivative clause applies at {f!r}", e)
