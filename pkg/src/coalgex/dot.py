"""DOT export of finite machines.

One node per state in breadth-first order from the point; accepting states
(any two-element constant component at its top value "1") get a doubled
border; edges carry the function letters met on the path to each target, with
parallel edges between the same pair of nodes merged into one comma label.
Bottom/top values show as square pseudo-nodes reached by dashed edges.
Output is deterministic, byte for byte.
"""
from __future__ import annotations

from .coalgebra import Coalgebra, reachable
from .fvalue import (
    FBot,
    FCarrier,
    FFun,
    FInl,
    FInr,
    FPair,
    FSet,
    FConst,
    FTop,
    FValue,
)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _accepting(v: FValue) -> bool:
    match v:
        case FConst("bool2", "1"):
            return True
        case FPair(l, r):
            return _accepting(l) or _accepting(r)
        case FInl(i) | FInr(i):
            return _accepting(i)
        case _:
            return False


def _edges(v: FValue, letters: tuple[str, ...]) -> list[tuple[str, tuple[str, ...]]]:
    """(kind:target, letter path) for every carrier/bottom/top leaf."""
    out: list[tuple[str, tuple[str, ...]]] = []
    match v:
        case FCarrier(item):
            out.append((f"state:{item}", letters))
        case FBot():
            out.append(("pseudo:bot", letters))
        case FTop():
            out.append(("pseudo:top", letters))
        case FPair(l, r):
            out.extend(_edges(l, letters))
            out.extend(_edges(r, letters))
        case FInl(i) | FInr(i):
            out.extend(_edges(i, letters))
        case FFun(entries):
            for a, x in entries:
                out.extend(_edges(x, letters + (a,)))
        case FSet(members):
            for m in members:
                out.extend(_edges(m, letters))
        case _:
            pass
    return out


def write_dot(c: Coalgebra) -> str:
    """Render the machine (restricted to the reachable part when pointed)."""
    if c.point is not None:
        c = reachable(c, c.point)
    lines = ["digraph machine {", "  rankdir=LR;"]
    pseudo_used: dict[str, bool] = {}
    edge_lines: list[str] = []
    for s in c.states:
        label = c.labels.get(s, s)
        shape = ' peripheries=2' if _accepting(c.value(s)) else ""
        lines.append(f"  {_quote(s)} [label={_quote(label)} shape=ellipse{shape}];")
        merged: dict[str, list[str]] = {}
        for target, letters in _edges(c.value(s), ()):
            merged.setdefault(target, []).append(".".join(letters) if letters else "")
        for target in sorted(merged, key=lambda t: (t.startswith("pseudo"), t)):
            label_text = ",".join(dict.fromkeys(merged[target]))
            kind, _, name = target.partition(":")
            if kind == "pseudo":
                pseudo_used[name] = True
                edge_lines.append(
                    f"  {_quote(s)} -> {_quote('__' + name)} "
                    f"[label={_quote(label_text)} style=dashed];"
                )
            else:
                edge_lines.append(
                    f"  {_quote(s)} -> {_quote(name)} [label={_quote(label_text)}];"
                )
    for name, symbol in (("bot", "⊥"), ("top", "⊤")):
        if pseudo_used.get(name):
            lines.append(
                f"  {_quote('__' + name)} [label={_quote(symbol)} shape=square];"
            )
    lines.extend(edge_lines)
    lines.append("}")
    return "\n".join(lines) + "\n"
