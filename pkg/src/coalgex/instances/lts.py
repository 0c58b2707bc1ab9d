"""Process terms for transition systems with explicit termination.

The system type is 1 (+) Pow(Id)^A: a state is either successfully terminated
(left injection) or maps each action to a set of successors; bottom stands for
the fully unspecified process and top for an inconsistent one.

Surface syntax: `nil`, `P + P`, `a.P`, `dead`, `tick`, `mu x. P`, variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..expr import (
    Act,
    Empty,
    Expr,
    LatElem,
    Mu,
    Plus,
    Single,
    SumL,
    SumR,
    Var,
    pretty,
)
from ..functor import BiasedSum, Const, Exponent, FinPowerset, FunctorExpr, Id
from ..lattice import JoinSemilattice, unit
from ..typecheck import TypecheckError


@dataclass(frozen=True)
class LNil:
    pass


@dataclass(frozen=True)
class LSum:
    left: "LtsTerm"
    right: "LtsTerm"


@dataclass(frozen=True)
class LPrefix:
    action: str
    body: "LtsTerm"


@dataclass(frozen=True)
class LDead:
    pass


@dataclass(frozen=True)
class LTick:
    pass


@dataclass(frozen=True)
class LMu:
    binder: str
    body: "LtsTerm"


@dataclass(frozen=True)
class LVar:
    name: str


LtsTerm = Union[LNil, LSum, LPrefix, LDead, LTick, LMu, LVar]

_KEYWORDS = frozenset({"nil", "dead", "tick", "mu"})


class LtsSyntaxError(ValueError):
    pass


def lts_functor(alphabet: list[str] | tuple[str, ...]) -> tuple[FunctorExpr, dict[str, JoinSemilattice]]:
    one = unit()
    return BiasedSum(Const(one), Exponent(FinPowerset(Id()), tuple(alphabet))), {
        "unit": one
    }


def pretty_lts(p: LtsTerm) -> str:
    def pp(p: LtsTerm, left_of_sum: bool) -> str:
        match p:
            case LNil():
                return "nil"
            case LDead():
                return "dead"
            case LTick():
                return "tick"
            case LVar(x):
                return x
            case LPrefix(a, body):
                return f"{a}.{pp(body, True)}"
            case LSum(l, r):
                s = f"{pp(l, True)} + {pp(r, False)}"
                return f"({s})" if left_of_sum else s
            case LMu(x, body):
                s = f"mu {x}. {pp(body, False)}"
                return f"({s})" if left_of_sum else s
        raise TypeError(f"not a process term: {p!r}")

    return pp(p, False)


class _LtsParser:
    _ident = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message: str) -> LtsSyntaxError:
        return LtsSyntaxError(f"{message} (at position {self.pos})")

    def ident(self) -> str:
        self.skip()
        m = self._ident.match(self.text, self.pos)
        if m is None:
            raise self.error("expected identifier")
        self.pos = m.end()
        return m.group()

    def parse(self) -> LtsTerm:
        p = self.sum()
        if self.peek():
            raise self.error(f"trailing input {self.text[self.pos:]!r}")
        return p

    def sum(self) -> LtsTerm:
        left = self.item()
        if self.peek() == "+":
            self.pos += 1
            return LSum(left, self.sum())
        return left

    def item(self) -> LtsTerm:
        self.skip()
        m = self._ident.match(self.text, self.pos)
        if m and m.group() == "mu":
            self.pos = m.end()
            binder = self.ident()
            if binder in _KEYWORDS:
                raise self.error(f"{binder!r} cannot be a variable")
            self.skip()
            if self.peek() != ".":
                raise self.error("expected '.' after binder")
            self.pos += 1
            return LMu(binder, self.sum())
        return self.primary()

    def primary(self) -> LtsTerm:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            p = self.sum()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return p
        name = self.ident()
        if name == "nil":
            return LNil()
        if name == "dead":
            return LDead()
        if name == "tick":
            return LTick()
        if name == "mu":
            raise self.error("'mu' needs a binder and '.'")
        if self.peek() == ".":
            self.pos += 1
            return LPrefix(name, self.item())
        return LVar(name)


def parse_lts(text: str) -> LtsTerm:
    return _LtsParser(text).parse()


def lts_free_vars(p: LtsTerm) -> frozenset[str]:
    match p:
        case LVar(x):
            return frozenset({x})
        case LSum(l, r):
            return lts_free_vars(l) | lts_free_vars(r)
        case LPrefix(_, body):
            return lts_free_vars(body)
        case LMu(x, body):
            return lts_free_vars(body) - {x}
        case _:
            return frozenset()


def _unguarded(p: LtsTerm) -> frozenset[str]:
    match p:
        case LVar(x):
            return frozenset({x})
        case LSum(l, r):
            return _unguarded(l) | _unguarded(r)
        case LMu(x, body):
            return _unguarded(body) - {x}
        case _:
            return frozenset()


def check_lts(p: LtsTerm) -> None:
    """Closed, and every variable occurrence under an action prefix."""
    fv = lts_free_vars(p)
    if fv:
        raise TypecheckError(f"free variable {sorted(fv)[0]!r} in {pretty_lts(p)!r}")

    def guards(p: LtsTerm) -> None:
        match p:
            case LMu(x, body):
                if x in _unguarded(body):
                    raise TypecheckError(
                        f"variable {x!r} occurs unguarded in {pretty_lts(p)!r}"
                    )
                guards(body)
            case LSum(l, r):
                guards(l)
                guards(r)
            case LPrefix(_, body):
                guards(body)
            case _:
                pass

    guards(p)


def lts_to_core(p: LtsTerm) -> Expr:
    """Translate a process term into the derived expression language."""
    check_lts(p)

    def go(p: LtsTerm) -> Expr:
        match p:
            case LNil():
                return Empty()
            case LSum(l, r):
                return Plus(go(l), go(r))
            case LMu(x, body):
                return Mu(x, go(body))
            case LVar(x):
                return Var(x)
            case LPrefix(a, body):
                return SumR(Act(a, Single(go(body))))
            case LTick():
                return SumL(LatElem("*"))
            case LDead():
                return SumR(Empty())
        raise TypeError(f"not a process term: {p!r}")

    return go(p)


def core_to_lts(e: Expr) -> LtsTerm:
    """Translate an expression of the transition-system type back to a process term."""

    def go(e: Expr) -> LtsTerm:
        match e:
            case Empty():
                return LNil()
            case Plus(l, r):
                return LSum(go(l), go(r))
            case Mu(x, body):
                return LMu(x, go(body))
            case Var(x):
                return LVar(x)
            case SumL(Empty()) | SumL(LatElem("*")):
                return LTick()
            case SumL(Plus(e1, e2)):
                return LSum(go(SumL(e1)), go(SumL(e2)))
            case SumR(Empty()):
                return LDead()
            case SumR(Plus(e1, e2)):
                return LSum(go(SumR(e1)), go(SumR(e2)))
            case SumR(Act(_, Empty())):
                return LDead()
            case SumR(Act(a, Plus(e1, e2))):
                return LSum(go(SumR(Act(a, e1))), go(SumR(Act(a, e2))))
            case SumR(Act(a, Single(inner))):
                return LPrefix(a, go(inner))
        raise TypecheckError("no translation clause applies", e)

    return go(e)
