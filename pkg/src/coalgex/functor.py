"""System-type ASTs and the ingredient relation.

A system type is built from the identity, lattice constants, binary product,
biased sum (disjoint union extended with bottom/top), finite exponents and
finite powerset.  The ingredients of a type G are the sub-types used in its
construction; they type the expression language.

Concrete syntax: ``Id``, ``const(NAME)``, ``F1 * F2``, ``F1 (+) F2``,
``F ^ {a,b}``, ``Pow(F)``, parentheses.  ``*`` binds tighter than ``(+)``;
``^`` and ``Pow`` bind tightest.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .lattice import JoinSemilattice


@dataclass(frozen=True)
class Id:
    pass


@dataclass(frozen=True)
class Const:
    lattice: JoinSemilattice


@dataclass(frozen=True)
class Product:
    left: "FunctorExpr"
    right: "FunctorExpr"


@dataclass(frozen=True)
class BiasedSum:
    left: "FunctorExpr"
    right: "FunctorExpr"


@dataclass(frozen=True)
class Exponent:
    base: "FunctorExpr"
    alphabet: tuple[str, ...]


@dataclass(frozen=True)
class FinPowerset:
    base: "FunctorExpr"


FunctorExpr = Union[Id, Const, Product, BiasedSum, Exponent, FinPowerset]


class FunctorSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def ingredients(g: FunctorExpr) -> tuple[FunctorExpr, ...]:
    """All ingredients of g (including g itself), in first-visit order."""
    seen: list[FunctorExpr] = []

    def visit(f: FunctorExpr) -> None:
        if f in seen:
            return
        seen.append(f)
        match f:
            case Product(l, r) | BiasedSum(l, r):
                visit(l)
                visit(r)
            case Exponent(base, _) | FinPowerset(base):
                visit(base)
            case _:
                pass

    visit(g)
    return tuple(seen)


def ingredient_check(f: FunctorExpr, g: FunctorExpr) -> bool:
    """True iff f is an ingredient of g (reflexive-transitive closure)."""
    return f in ingredients(g)


def pretty_functor(f: FunctorExpr) -> str:
    # precedence: 0 biased sum, 1 product, 2 postfix/atom
    def pp(f: FunctorExpr, level: int) -> str:
        match f:
            case Id():
                return "Id"
            case Const(lat):
                return f"const({lat.name})"
            case FinPowerset(base):
                return f"Pow({pp(base, 0)})"
            case Exponent(base, alphabet):
                return f"{pp(base, 2)} ^ {{{','.join(alphabet)}}}"
            case Product(l, r):
                s = f"{pp(l, 2)} * {pp(r, 1)}"
                return f"({s})" if level > 1 else s
            case BiasedSum(l, r):
                s = f"{pp(l, 1)} (+) {pp(r, 0)}"
                return f"({s})" if level > 0 else s
        raise TypeError(f"not a functor: {f!r}")

    return pp(f, 0)


_TOKEN = re.compile(
    r"\s*(?:(?P<oplus>\(\+\))|(?P<ident>[a-zA-Z][a-zA-Z0-9_.]*)"
    r"|(?P<punct>[*^{},()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise FunctorSyntaxError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group("oplus"):
            tokens.append(("oplus", "(+)", m.start("oplus")))
        elif m.group("ident"):
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("punct", m.group("punct"), m.start("punct")))
        pos = m.end()
    return tokens


class _FunctorParser:
    def __init__(self, text: str, lattices: Mapping[str, JoinSemilattice]):
        self.tokens = _tokenize(text)
        self.lattices = lattices
        self.i = 0
        self.text = text

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise FunctorSyntaxError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        tok = self.next()
        if tok[1] != value:
            raise FunctorSyntaxError(f"expected {value!r}, found {tok[1]!r}", tok[2])

    def parse(self) -> FunctorExpr:
        f = self.sum()
        if self.peek() is not None:
            tok = self.peek()
            raise FunctorSyntaxError(f"trailing input {tok[1]!r}", tok[2])
        return f

    def sum(self) -> FunctorExpr:
        left = self.product()
        if self.peek() and self.peek()[0] == "oplus":
            self.next()
            return BiasedSum(left, self.sum())
        return left

    def product(self) -> FunctorExpr:
        left = self.postfix()
        if self.peek() and self.peek()[1] == "*":
            self.next()
            return Product(left, self.product())
        return left

    def postfix(self) -> FunctorExpr:
        f = self.atom()
        while self.peek() and self.peek()[1] == "^":
            self.next()
            f = Exponent(f, self.alphabet())
        return f

    def alphabet(self) -> tuple[str, ...]:
        self.expect("{")
        letters: list[str] = []
        while True:
            kind, value, pos = self.next()
            if kind != "ident":
                raise FunctorSyntaxError(f"expected letter, found {value!r}", pos)
            if value in letters:
                raise FunctorSyntaxError(f"duplicate letter {value!r}", pos)
            letters.append(value)
            kind, value, pos = self.next()
            if value == "}":
                break
            if value != ",":
                raise FunctorSyntaxError(f"expected ',' or '}}', found {value!r}", pos)
        if not letters:
            raise FunctorSyntaxError("empty alphabet", 0)
        return tuple(letters)

    def atom(self) -> FunctorExpr:
        kind, value, pos = self.next()
        if value == "(":
            f = self.sum()
            self.expect(")")
            return f
        if kind != "ident":
            raise FunctorSyntaxError(f"expected functor, found {value!r}", pos)
        if value == "Id":
            return Id()
        if value == "Pow":
            self.expect("(")
            base = self.sum()
            self.expect(")")
            return FinPowerset(base)
        if value == "const":
            self.expect("(")
            kind2, name, pos2 = self.next()
            if kind2 != "ident":
                raise FunctorSyntaxError(f"expected lattice name, found {name!r}", pos2)
            self.expect(")")
            if name not in self.lattices:
                raise FunctorSyntaxError(f"unknown lattice {name!r}", pos2)
            return Const(self.lattices[name])
        raise FunctorSyntaxError(f"unknown functor {value!r}", pos)


def parse_functor(text: str, lattices: Mapping[str, JoinSemilattice]) -> FunctorExpr:
    """Parse the functor DSL; lattice names are resolved against `lattices`."""
    return _FunctorParser(text, lattices).parse()
