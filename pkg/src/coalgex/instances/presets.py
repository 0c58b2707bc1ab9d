"""Preset system types for the standard automata models."""
from __future__ import annotations

from ..functor import BiasedSum, Const, Exponent, FinPowerset, FunctorExpr, Id, Product
from ..lattice import JoinSemilattice, bool2, powerset, unit

PRESET_NAMES = ("dfa", "partial", "nfa", "mealy", "lts", "guarded")


class PresetError(ValueError):
    pass


def preset(
    name: str,
    alphabet: list[str] | tuple[str, ...] | None = None,
    lattice: JoinSemilattice | None = None,
    atoms: list[str] | tuple[str, ...] | None = None,
    actions: list[str] | tuple[str, ...] | None = None,
) -> tuple[FunctorExpr, dict[str, JoinSemilattice]]:
    """System type (and the lattices it uses) for a named automaton model.

    dfa      2 x Id^A                 deterministic acceptors
    partial  (1 (+) Id)^A             partial deterministic automata
    nfa      2 x Pow(Id)^A            non-deterministic acceptors
    mealy    (B x Id)^A               Mealy machines (default output B = bool2)
    lts      1 (+) Pow(Id)^A          transition systems with termination
    guarded  B x Id^{At x Sigma}      guarded-string acceptors; B is the
                                      powerset lattice of the atoms, letters
                                      are encoded "atom.sigma"
    """
    if name == "guarded":
        if not atoms or not actions:
            raise PresetError("guarded preset needs atoms and actions")
        lat = powerset(atoms)
        letters = tuple(f"{at}.{sg}" for at in atoms for sg in actions)
        return Product(Const(lat), Exponent(Id(), letters)), {lat.name: lat}

    if not alphabet:
        raise PresetError(f"preset {name!r} needs an alphabet")
    a = tuple(alphabet)
    match name:
        case "dfa":
            two = bool2()
            return Product(Const(two), Exponent(Id(), a)), {"bool2": two}
        case "partial":
            one = unit()
            return Exponent(BiasedSum(Const(one), Id()), a), {"unit": one}
        case "nfa":
            two = bool2()
            return Product(Const(two), Exponent(FinPowerset(Id()), a)), {"bool2": two}
        case "mealy":
            out = lattice or bool2()
            return Exponent(Product(Const(out), Id()), a), {out.name: out}
        case "lts":
            one = unit()
            return (
                BiasedSum(Const(one), Exponent(FinPowerset(Id()), a)),
                {"unit": one},
            )
    raise PresetError(f"unknown preset {name!r} (expected one of {PRESET_NAMES})")
