"""Guarded-string process terms over a free Boolean algebra of tests.

States of the acceptor type B x Id^{At x Sigma} observe an output in B (the
powerset lattice over the atoms) and step on atom/action pairs.  A guard
`b -> a.P` contributes one step per atom below b; the translation into the
expression language spells this out as a sum over those atoms.

Surface syntax: `nil`, `<b>`, `P + P`, `b -> a.P`, `mu x. P`, variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..expr import Act, Empty, Expr, LatElem, Mu, Plus, ProdL, ProdR, Var
from ..functor import FunctorExpr
from ..lattice import JoinSemilattice
from ..typecheck import TypecheckError
from .presets import preset


@dataclass(frozen=True)
class GNil:
    pass


@dataclass(frozen=True)
class GOut:
    element: str


@dataclass(frozen=True)
class GSum:
    left: "GsTerm"
    right: "GsTerm"


@dataclass(frozen=True)
class GGuard:
    element: str
    action: str
    body: "GsTerm"


@dataclass(frozen=True)
class GMu:
    binder: str
    body: "GsTerm"


@dataclass(frozen=True)
class GVar:
    name: str


GsTerm = Union[GNil, GOut, GSum, GGuard, GMu, GVar]


class GsSyntaxError(ValueError):
    pass


def guarded_functor(
    atoms: list[str] | tuple[str, ...], actions: list[str] | tuple[str, ...]
) -> tuple[FunctorExpr, dict[str, JoinSemilattice]]:
    return preset("guarded", atoms=atoms, actions=actions)


class _GsParser:
    _ident = re.compile(r"[a-zA-Z0-9_*]+")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message: str) -> GsSyntaxError:
        return GsSyntaxError(f"{message} (at position {self.pos})")

    def ident(self) -> str:
        self.skip()
        m = self._ident.match(self.text, self.pos)
        if m is None:
            raise self.error("expected identifier")
        self.pos = m.end()
        return m.group()

    def parse(self) -> GsTerm:
        p = self.sum()
        if self.peek():
            raise self.error(f"trailing input {self.text[self.pos:]!r}")
        return p

    def sum(self) -> GsTerm:
        left = self.item()
        if self.peek() == "+":
            self.pos += 1
            return GSum(left, self.sum())
        return left

    def item(self) -> GsTerm:
        self.skip()
        start = self.pos
        m = self._ident.match(self.text, self.pos)
        if m and m.group() == "mu":
            self.pos = m.end()
            binder = self.ident()
            self.skip()
            if self.peek() != ".":
                raise self.error("expected '.' after binder")
            self.pos += 1
            return GMu(binder, self.sum())
        if m:
            # possible guard: elem -> action . P
            self.pos = m.end()
            self.skip()
            if self.text.startswith("->", self.pos):
                self.pos += 2
                action = self.ident()
                self.skip()
                if self.peek() != ".":
                    raise self.error("expected '.' after action")
                self.pos += 1
                return GGuard(m.group(), action, self.item())
            self.pos = start
        return self.primary()

    def primary(self) -> GsTerm:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            p = self.sum()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return p
        if ch == "<":
            self.pos += 1
            element = self.ident()
            self.skip()
            if self.peek() != ">":
                raise self.error("expected '>'")
            self.pos += 1
            return GOut(element)
        name = self.ident()
        if name == "nil":
            return GNil()
        if name == "mu":
            raise self.error("'mu' needs a binder and '.'")
        return GVar(name)


def parse_gs(text: str) -> GsTerm:
    return _GsParser(text).parse()


def gs_free_vars(p: GsTerm) -> frozenset[str]:
    match p:
        case GVar(x):
            return frozenset({x})
        case GSum(l, r):
            return gs_free_vars(l) | gs_free_vars(r)
        case GGuard(_, _, body):
            return gs_free_vars(body)
        case GMu(x, body):
            return gs_free_vars(body) - {x}
        case _:
            return frozenset()


def _unguarded(p: GsTerm) -> frozenset[str]:
    match p:
        case GVar(x):
            return frozenset({x})
        case GSum(l, r):
            return _unguarded(l) | _unguarded(r)
        case GMu(x, body):
            return _unguarded(body) - {x}
        case _:
            return frozenset()


def gs_to_core(
    p: GsTerm,
    lattice: JoinSemilattice,
    atoms: list[str] | tuple[str, ...],
    actions: list[str] | tuple[str, ...],
) -> Expr:
    """Translate a guarded term into the expression language.

    A guard `b -> a.P` becomes the sum over atoms alpha <= b of steps on the
    encoded letter "alpha.a"; an empty sum (b the bottom test) is empty.
    """
    fv = gs_free_vars(p)
    if fv:
        raise TypecheckError(f"free variable {sorted(fv)[0]!r}")

    def check(p: GsTerm) -> None:
        match p:
            case GMu(x, body):
                if x in _unguarded(body):
                    raise TypecheckError(f"variable {x!r} occurs unguarded")
                check(body)
            case GSum(l, r):
                check(l)
                check(r)
            case GGuard(_, _, body):
                check(body)
            case _:
                pass

    check(p)

    def go(p: GsTerm) -> Expr:
        match p:
            case GNil():
                return Empty()
            case GOut(b):
                if b not in lattice.elements:
                    raise TypecheckError(f"unknown test element {b!r}")
                return ProdL(LatElem(b))
            case GSum(l, r):
                return Plus(go(l), go(r))
            case GMu(x, body):
                return Mu(x, go(body))
            case GVar(x):
                return Var(x)
            case GGuard(b, a, body):
                if b not in lattice.elements:
                    raise TypecheckError(f"unknown test element {b!r}")
                if a not in actions:
                    raise TypecheckError(f"unknown action {a!r}")
                inner = go(body)
                below = [al for al in atoms if lattice.leq(al, b)]
                steps: Expr = Empty()
                for al in reversed(below):
                    step = ProdR(Act(f"{al}.{a}", inner))
                    steps = step if isinstance(steps, Empty) else Plus(step, steps)
                return steps
        raise TypeError(f"not a guarded term: {p!r}")

    return go(p)
