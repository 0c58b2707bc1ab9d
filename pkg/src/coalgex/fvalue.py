"""Values of an ingredient applied to a carrier, and their structure maps.

An FValue is an element of F(X) for an ingredient F and carrier X; carriers
are either expressions (when deriving) or state identifiers (in machines).
This module provides the lifted empty/sum constants, the functorial action on
carrier maps, and relation lifting (the membership test used by bisimulation).

Document encoding (used by the machine file format):
    {"id": s}, {"const": [lat, e]}, {"pair": [u, v]}, {"inl": u}, {"inr": u},
    {"bot": true}, {"top": true}, {"fun": {letter: value, ...}}, {"set": [..]}
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Union

from .expr import Empty, Expr, Plus, term_key
from .functor import (
    BiasedSum,
    Const,
    Exponent,
    FinPowerset,
    FunctorExpr,
    Id,
    Product,
    pretty_functor,
)

Carrier = Any  # Expr or state identifier (str)


class ShapeError(ValueError):
    """Value does not match the shape prescribed by the ingredient."""


@dataclass(frozen=True)
class FCarrier:
    item: Carrier


@dataclass(frozen=True)
class FConst:
    lattice: str
    element: str


@dataclass(frozen=True)
class FPair:
    left: "FValue"
    right: "FValue"


@dataclass(frozen=True)
class FInl:
    inner: "FValue"


@dataclass(frozen=True)
class FInr:
    inner: "FValue"


@dataclass(frozen=True)
class FBot:
    pass


@dataclass(frozen=True)
class FTop:
    pass


@dataclass(frozen=True)
class FFun:
    entries: tuple[tuple[str, "FValue"], ...]

    def __call__(self, letter: str) -> "FValue":
        for a, v in self.entries:
            if a == letter:
                return v
        raise KeyError(letter)

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.entries)


@dataclass(frozen=True)
class FSet:
    members: tuple["FValue", ...]


FValue = Union[FCarrier, FConst, FPair, FInl, FInr, FBot, FTop, FFun, FSet]


def value_key(v: FValue):
    """Total order on values; expression carriers follow the term order."""
    match v:
        case FCarrier(item):
            if isinstance(item, str):
                return (0, ("s", item))
            try:
                return (0, ("e", term_key(item)))
            except TypeError:
                return (0, ("r", repr(item)))
        case FConst(lat, el):
            return (1, lat, el)
        case FBot():
            return (2,)
        case FTop():
            return (3,)
        case FInl(i):
            return (4, value_key(i))
        case FInr(i):
            return (5, value_key(i))
        case FPair(l, r):
            return (6, value_key(l), value_key(r))
        case FFun(entries):
            return (7, tuple((a, value_key(x)) for a, x in entries))
        case FSet(members):
            return (8, tuple(value_key(m) for m in members))
    raise TypeError(f"not a value: {v!r}")


def make_fset(members: Iterable[FValue]) -> FSet:
    """Duplicate-free, canonically ordered set value."""
    unique = list(dict.fromkeys(members))
    unique.sort(key=value_key)
    return FSet(tuple(unique))


def make_ffun(g: Exponent, table: Callable[[str], FValue]) -> FFun:
    """Total function value over the exponent's alphabet, in declared order."""
    return FFun(tuple((a, table(a)) for a in g.alphabet))


def empty_lift(f: FunctorExpr, g: FunctorExpr) -> FValue:
    """The lifting of the empty expression to F(Exp_G)."""
    match f:
        case Id():
            return FCarrier(Empty())
        case Const(lat):
            return FConst(lat.name, lat.bottom)
        case Product(f1, f2):
            return FPair(empty_lift(f1, g), empty_lift(f2, g))
        case BiasedSum(_, _):
            return FBot()
        case Exponent(base, _):
            return make_ffun(f, lambda _a: empty_lift(base, g))
        case FinPowerset(_):
            return FSet(())
    raise TypeError(f"not a functor: {f!r}")


def plus_lift(f: FunctorExpr, g: FunctorExpr, u: FValue, v: FValue) -> FValue:
    """The lifting of expression sum to F(Exp_G).

    On biased sums, equal injections combine recursively, mixed injections
    yield top, top absorbs and bottom is neutral.
    """
    match f, u, v:
        case Id(), FCarrier(e1), FCarrier(e2):
            return FCarrier(Plus(e1, e2))
        case Const(lat), FConst(n1, b1), FConst(n2, b2) if n1 == lat.name and n2 == lat.name:
            return FConst(lat.name, lat.join(b1, b2))
        case Product(f1, f2), FPair(l1, r1), FPair(l2, r2):
            return FPair(plus_lift(f1, g, l1, l2), plus_lift(f2, g, r1, r2))
        case BiasedSum(f1, _), FInl(a), FInl(b):
            return FInl(plus_lift(f1, g, a, b))
        case BiasedSum(_, f2), FInr(a), FInr(b):
            return FInr(plus_lift(f2, g, a, b))
        case BiasedSum(_, _), (FInl(_) | FInr(_)), (FInl(_) | FInr(_)):
            return FTop()
        case BiasedSum(_, _), FTop(), _:
            return FTop()
        case BiasedSum(_, _), _, FTop():
            return FTop()
        case BiasedSum(_, _), FBot(), x:
            return x
        case BiasedSum(_, _), x, FBot():
            return x
        case Exponent(base, _), FFun(_), FFun(_):
            return make_ffun(f, lambda a: plus_lift(base, g, u(a), v(a)))
        case FinPowerset(_), FSet(m1), FSet(m2):
            return make_fset(m1 + m2)
    raise ShapeError(
        f"cannot sum {u!r} and {v!r} at ingredient {pretty_functor(f)}"
    )


def fmap(f: FunctorExpr, h: Callable[[Carrier], Carrier], v: FValue) -> FValue:
    """Apply a carrier map under the value's structure."""
    match f, v:
        case Id(), FCarrier(item):
            return FCarrier(h(item))
        case Const(_), FConst(_, _):
            return v
        case Product(f1, f2), FPair(l, r):
            return FPair(fmap(f1, h, l), fmap(f2, h, r))
        case BiasedSum(f1, _), FInl(i):
            return FInl(fmap(f1, h, i))
        case BiasedSum(_, f2), FInr(i):
            return FInr(fmap(f2, h, i))
        case BiasedSum(_, _), (FBot() | FTop()):
            return v
        case Exponent(base, _), FFun(entries):
            return FFun(tuple((a, fmap(base, h, x)) for a, x in entries))
        case FinPowerset(base), FSet(members):
            return make_fset(fmap(base, h, m) for m in members)
    raise ShapeError(f"value {v!r} does not match ingredient {pretty_functor(f)}")


def lifted_related(
    f: FunctorExpr,
    rel: set[tuple[Carrier, Carrier]] | Callable[[Carrier, Carrier], bool],
    u: FValue,
    v: FValue,
) -> bool:
    """Membership in the relation lifting of `rel` along the ingredient.

    Set values match when every member of one side is related to some member
    of the other side and conversely.
    """
    related = rel if callable(rel) else (lambda a, b: (a, b) in rel)

    def go(f: FunctorExpr, u: FValue, v: FValue) -> bool:
        match f, u, v:
            case Id(), FCarrier(a), FCarrier(b):
                return related(a, b)
            case Const(_), FConst(n1, b1), FConst(n2, b2):
                return n1 == n2 and b1 == b2
            case Product(f1, f2), FPair(l1, r1), FPair(l2, r2):
                return go(f1, l1, l2) and go(f2, r1, r2)
            case BiasedSum(f1, _), FInl(a), FInl(b):
                return go(f1, a, b)
            case BiasedSum(_, f2), FInr(a), FInr(b):
                return go(f2, a, b)
            case BiasedSum(_, _), FBot(), FBot():
                return True
            case BiasedSum(_, _), FTop(), FTop():
                return True
            case BiasedSum(_, _), _, _:
                return False
            case Exponent(base, alphabet), FFun(_), FFun(_):
                return all(go(base, u(a), v(a)) for a in alphabet)
            case FinPowerset(base), FSet(m1), FSet(m2):
                return all(any(go(base, a, b) for b in m2) for a in m1) and all(
                    any(go(base, a, b) for a in m1) for b in m2
                )
        raise ShapeError(
            f"values {u!r}, {v!r} do not match ingredient {pretty_functor(f)}"
        )

    return go(f, u, v)


def carrier_leaves(v: FValue) -> Iterator[Carrier]:
    """Carrier elements in canonical traversal order (with repetitions)."""
    match v:
        case FCarrier(item):
            yield item
        case FPair(l, r):
            yield from carrier_leaves(l)
            yield from carrier_leaves(r)
        case FInl(i) | FInr(i):
            yield from carrier_leaves(i)
        case FFun(entries):
            for _, x in entries:
                yield from carrier_leaves(x)
        case FSet(members):
            for m in members:
                yield from carrier_leaves(m)
        case _:
            return


def check_shape(f: FunctorExpr, v: FValue, states: set[str] | None = None) -> None:
    """Validate that v is shaped by f; optionally check carrier references."""
    match f, v:
        case Id(), FCarrier(item):
            if states is not None and item not in states:
                raise ShapeError(f"unknown state {item!r}")
        case Const(lat), FConst(name, element):
            if name != lat.name:
                raise ShapeError(f"constant of lattice {name!r}, expected {lat.name!r}")
            if element not in lat.elements:
                raise ShapeError(f"element {element!r} not in lattice {lat.name}")
        case Product(f1, f2), FPair(l, r):
            check_shape(f1, l, states)
            check_shape(f2, r, states)
        case BiasedSum(f1, _), FInl(i):
            check_shape(f1, i, states)
        case BiasedSum(_, f2), FInr(i):
            check_shape(f2, i, states)
        case BiasedSum(_, _), (FBot() | FTop()):
            pass
        case Exponent(base, alphabet), FFun(entries):
            letters = tuple(a for a, _ in entries)
            if letters != tuple(alphabet):
                missing = [a for a in alphabet if a not in letters]
                if missing:
                    raise ShapeError(f"fun not total, missing letter {missing[0]!r}")
                raise ShapeError(
                    f"fun letters {letters} do not match alphabet {tuple(alphabet)}"
                )
            for _, x in entries:
                check_shape(base, x, states)
        case FinPowerset(base), FSet(members):
            for m in members:
                check_shape(base, m, states)
        case _:
            raise ShapeError(
                f"value {v!r} does not match ingredient {pretty_functor(f)}"
            )


def encode_value(v: FValue) -> Any:
    """Document encoding of a value over state identifiers."""
    match v:
        case FCarrier(item):
            return {"id": item if isinstance(item, str) else str(item)}
        case FConst(lat, el):
            return {"const": [lat, el]}
        case FPair(l, r):
            return {"pair": [encode_value(l), encode_value(r)]}
        case FInl(i):
            return {"inl": encode_value(i)}
        case FInr(i):
            return {"inr": encode_value(i)}
        case FBot():
            return {"bot": True}
        case FTop():
            return {"top": True}
        case FFun(entries):
            return {"fun": {a: encode_value(x) for a, x in entries}}
        case FSet(members):
            return {"set": [encode_value(m) for m in members]}
    raise TypeError(f"not a value: {v!r}")


def decode_value(f: FunctorExpr, doc: Any, path: str = "$") -> FValue:
    """Decode a document into a value shaped by f; errors carry the field path."""
    if not isinstance(doc, dict) or len(doc) != 1:
        raise ShapeError(f"{path}: expected a single-key object, got {doc!r}")
    (key, payload), = doc.items()
    match f, key:
        case Id(), "id":
            if not isinstance(payload, str):
                raise ShapeError(f"{path}.id: expected state name")
            return FCarrier(payload)
        case Const(lat), "const":
            if (
                not isinstance(payload, list)
                or len(payload) != 2
                or payload[0] != lat.name
            ):
                raise ShapeError(f"{path}.const: expected [{lat.name!r}, element]")
            if payload[1] not in lat.elements:
                raise ShapeError(f"{path}.const: unknown element {payload[1]!r}")
            return FConst(payload[0], payload[1])
        case Product(f1, f2), "pair":
            if not isinstance(payload, list) or len(payload) != 2:
                raise ShapeError(f"{path}.pair: expected [left, right]")
            return FPair(
                decode_value(f1, payload[0], f"{path}.pair[0]"),
                decode_value(f2, payload[1], f"{path}.pair[1]"),
            )
        case BiasedSum(f1, _), "inl":
            return FInl(decode_value(f1, payload, f"{path}.inl"))
        case BiasedSum(_, f2), "inr":
            return FInr(decode_value(f2, payload, f"{path}.inr"))
        case BiasedSum(_, _), "bot":
            return FBot()
        case BiasedSum(_, _), "top":
            return FTop()
        case Exponent(base, alphabet), "fun":
            if not isinstance(payload, dict):
                raise ShapeError(f"{path}.fun: expected an object")
            entries = []
            for a in alphabet:
                if a not in payload:
                    raise ShapeError(f"{path}.fun: not total, missing letter {a!r}")
                entries.append((a, decode_value(base, payload[a], f"{path}.fun.{a}")))
            extra = set(payload) - set(alphabet)
            if extra:
                raise ShapeError(f"{path}.fun: unknown letter {sorted(extra)[0]!r}")
            return FFun(tuple(entries))
        case FinPowerset(base), "set":
            if not isinstance(payload, list):
                raise ShapeError(f"{path}.set: expected an array")
            return make_fset(
                decode_value(base, m, f"{path}.set[{i}]") for i, m in enumerate(payload)
            )
    raise ShapeError(
        f"{path}: key {key!r} does not match ingredient {pretty_functor(f)}"
    )
