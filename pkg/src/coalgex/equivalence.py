"""Bisimilarity checking, minimization, and the expression decision procedure.

Bisimilarity of two machine states is decided by greatest-fixpoint refinement
of the all-pairs relation under the relation lifting; the axiomatization of
expression equivalence is sound and complete for bisimilarity, so deciding
bisimilarity of synthesized machines decides provable equivalence.

Refinement is the naive iterated kind (all pairs per round); machines here
stay small enough that the simplicity is worth more than a partition index.
"""
from __future__ import annotations

from dataclasses import dataclass

from .coalgebra import Coalgebra, CoalgebraError, reachable, renamed
from .expr import Expr
from .extraction import extract
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
    fmap,
    lifted_related,
)
from .synthesis import acie_normal_form, synthesize


@dataclass(frozen=True)
class Certificate:
    """Outcome of a bisimilarity query.

    For a positive verdict the witness is a bisimulation containing the query
    pair; for a negative one the trace walks to the first observable mismatch.
    """

    bisimilar: bool
    witness: tuple[tuple[str, str], ...] | None = None
    trace: tuple[str, ...] | None = None
    reason: str | None = None

    @property
    def verdict(self) -> str:
        return "bisimilar" if self.bisimilar else "distinguished"

    def __str__(self) -> str:
        if self.bisimilar:
            pairs = ", ".join(f"({a},{b})" for a, b in self.witness or ())
            return f"bisimilar; witness {{{pairs}}}"
        path = " -> ".join(self.trace or ())
        return f"distinguished at [{path}]: {self.reason}"


def _disjoint_union(c1: Coalgebra, c2: Coalgebra) -> tuple[Coalgebra, dict, dict]:
    m1 = {s: f"L.{s}" for s in c1.states}
    m2 = {s: f"R.{s}" for s in c2.states}
    r1 = renamed(c1, m1)
    r2 = renamed(c2, m2)
    union = Coalgebra(
        functor=c1.functor,
        states=r1.states + r2.states,
        transition={**r1.transition, **r2.transition},
    )
    return union, m1, m2


def greatest_bisimulation(c: Coalgebra) -> set[tuple[str, str]]:
    """Largest relation on the state set closed under the relation lifting."""
    rel = {(s, t) for s in c.states for t in c.states}
    while True:
        keep = {
            (s, t)
            for (s, t) in rel
            if lifted_related(c.functor, rel, c.value(s), c.value(t))
        }
        if keep == rel:
            return rel
        rel = keep


def _explain(
    c: Coalgebra, s: str, t: str, rel: set[tuple[str, str]]
) -> tuple[tuple[str, ...], str]:
    """Path to the first mismatch for a pair outside the greatest bisimulation."""
    visited: set[tuple[str, str]] = set()
    trace: list[str] = [f"({s},{t})"]

    def descend(f: FunctorExpr, u: FValue, v: FValue) -> str:
        match f, u, v:
            case Id(), FCarrier(a), FCarrier(b):
                if (a, b) in rel:
                    return ""
                if (a, b) in visited:
                    return f"states {a!r}, {b!r} already under inspection"
                visited.add((a, b))
                trace.append(f"({a},{b})")
                return descend(c.functor, c.value(a), c.value(b))
            case Const(_), FConst(_, b1), FConst(_, b2):
                if b1 != b2:
                    return f"constant {b1} vs {b2}"
                return ""
            case Product(f1, f2), FPair(l1, r1), FPair(l2, r2):
                trace.append("l<>")
                why = descend(f1, l1, l2)
                if why:
                    return why
                trace.pop()
                trace.append("r<>")
                why = descend(f2, r1, r2)
                if why:
                    return why
                trace.pop()
                return ""
            case BiasedSum(f1, _), FInl(a), FInl(b):
                trace.append("l[]")
                why = descend(f1, a, b)
                if why:
                    return why
                trace.pop()
                return ""
            case BiasedSum(_, f2), FInr(a), FInr(b):
                trace.append("r[]")
                why = descend(f2, a, b)
                if why:
                    return why
                trace.pop()
                return ""
            case BiasedSum(_, _), _, _:
                if type(u) is not type(v):
                    return f"injection {type(u).__name__} vs {type(v).__name__}"
                return ""
            case Exponent(base, alphabet), FFun(_), FFun(_):
                for a in alphabet:
                    trace.append(f"{a}(-)")
                    why = descend(base, u(a), v(a))
                    if why:
                        return why
                    trace.pop()
                return ""
            case FinPowerset(base), FSet(m1), FSet(m2):
                for i, a in enumerate(m1):
                    if not any(lifted_related(base, rel, a, b) for b in m2):
                        trace.append(f"set-member#{i} (left)")
                        if m2:
                            return descend(base, a, m2[0]) or "unmatched set member"
                        return "unmatched set member (other side empty)"
                for i, b in enumerate(m2):
                    if not any(lifted_related(base, rel, a, b) for a in m1):
                        trace.append(f"set-member#{i} (right)")
                        if m1:
                            return descend(base, m1[0], b) or "unmatched set member"
                        return "unmatched set member (other side empty)"
                return ""
        return "shape mismatch"

    reason = descend(c.functor, c.value(s), c.value(t)) or "no bisimulation contains the pair"
    return tuple(trace), reason


def bisimilar(c1: Coalgebra, s1: str, c2: Coalgebra, s2: str) -> Certificate:
    """Decide whether two states of same-type machines are bisimilar."""
    if c1.functor != c2.functor:
        raise CoalgebraError(
            f"functor mismatch: {pretty_functor(c1.functor)} vs "
            f"{pretty_functor(c2.functor)}"
        )
    if s1 not in c1.transition:
        raise CoalgebraError(f"unknown state {s1!r}")
    if s2 not in c2.transition:
        raise CoalgebraError(f"unknown state {s2!r}")
    union, m1, m2 = _disjoint_union(c1, c2)
    rel = greatest_bisimulation(union)
    a, b = m1[s1], m2[s2]
    if (a, b) in rel:
        witness = tuple(
            sorted(
                (p.removeprefix("L."), q.removeprefix("R."))
                for (p, q) in rel
                if p.startswith("L.") and q.startswith("R.")
            )
        )
        return Certificate(True, witness=witness)
    trace, reason = _explain(union, a, b, rel)
    return Certificate(False, trace=trace, reason=reason)


def minimize(c: Coalgebra) -> Coalgebra:
    """Quotient by the bisimilarity partition (representatives keep their names)."""
    rel = greatest_bisimulation(c)
    repr_of: dict[str, str] = {}
    reps: list[str] = []
    for s in c.states:
        for r in reps:
            if (r, s) in rel:
                repr_of[s] = r
                break
        else:
            reps.append(s)
            repr_of[s] = s
    transition = {
        r: fmap(c.functor, lambda t: repr_of[t], c.transition[r]) for r in reps
    }
    return Coalgebra(
        functor=c.functor,
        states=tuple(reps),
        transition=transition,
        point=repr_of[c.point] if c.point is not None else None,
        labels={r: c.labels[r] for r in reps if r in c.labels},
    )


def equiv(g: FunctorExpr, e1: Expr, e2: Expr) -> Certificate:
    """Decide provable equivalence of two expressions of ambient type g.

    Soundness and completeness of the axiomatization make this coincide with
    bisimilarity of the synthesized machines' points.
    """
    m1 = synthesize(g, e1)
    m2 = synthesize(g, e2)
    return bisimilar(m1, m1.point, m2, m2.point)


def _signature(f: FunctorExpr, v: FValue, rank: dict[str, int]) -> object:
    match f, v:
        case Id(), FCarrier(s):
            return ("c", rank[s])
        case Const(_), FConst(lat, el):
            return ("k", lat, el)
        case Product(f1, f2), FPair(l, r):
            return ("p", _signature(f1, l, rank), _signature(f2, r, rank))
        case BiasedSum(f1, _), FInl(i):
            return ("il", _signature(f1, i, rank))
        case BiasedSum(_, f2), FInr(i):
            return ("ir", _signature(f2, i, rank))
        case BiasedSum(_, _), FBot():
            return ("bot",)
        case BiasedSum(_, _), FTop():
            return ("top",)
        case Exponent(base, alphabet), FFun(_):
            return ("f", tuple((a, _signature(base, v(a), rank)) for a in alphabet))
        case FinPowerset(base), FSet(members):
            sigs = sorted(repr(_signature(base, m, rank)) for m in members)
            return ("s", tuple(sigs))
    raise CoalgebraError(f"value {v!r} does not match the machine type")


def canonical_order(c: Coalgebra) -> Coalgebra:
    """Relabel states s1..sn in an order depending only on machine structure.

    Iterated signature refinement assigns isomorphism-invariant ranks; on a
    minimal machine the ranks become total, so isomorphic machines relabel to
    the identical machine.  Set values are re-sorted into the new naming.
    """
    rank = {s: 0 for s in c.states}
    for _ in range(len(c.states) + 1):
        keyed = {
            s: (rank[s], repr(_signature(c.functor, c.value(s), rank)))
            for s in c.states
        }
        ordered = sorted(set(keyed.values()))
        new_rank = {s: ordered.index(keyed[s]) for s in c.states}
        if new_rank == rank:
            break
        rank = new_rank
    # stable tie-break on the incoming order keeps the result deterministic
    by_rank = sorted(c.states, key=lambda s: (rank[s], c.states.index(s)))
    mapping = {s: f"s{i + 1}" for i, s in enumerate(by_rank)}
    out = renamed(c, mapping)
    out.states = tuple(sorted(out.states, key=lambda s: int(s[1:])))
    return out


def canonical_form(g: FunctorExpr, e: Expr) -> Expr:
    """Canonical representative of the expression's equivalence class.

    Built by synthesizing, minimizing, canonically ordering the machine,
    extracting (breadth-first variable naming) and normalizing; two
    expressions get the identical representative exactly when they are
    provably equivalent.
    """
    from .expr import order_context_for

    machine = canonical_order(minimize(synthesize(g, e)))
    return acie_normal_form(extract(machine, machine.point), order_context_for(g))
