"""Preset system types, surface languages, and independent oracles."""
from .presets import PRESET_NAMES, PresetError, preset
from .regex import (
    Regex,
    RCat,
    RLetter,
    ROne,
    RStar,
    RSum,
    RZero,
    det_accepts,
    det_to_regex,
    parse_regex,
    pretty_regex,
    regex_accepts,
    regex_to_det,
)
from .lts import (
    LtsTerm,
    LDead,
    LMu,
    LNil,
    LPrefix,
    LSum,
    LTick,
    LVar,
    core_to_lts,
    lts_functor,
    lts_to_core,
    parse_lts,
    pretty_lts,
)
from .guarded import (
    GsTerm,
    GGuard,
    GMu,
    GNil,
    GOut,
    GSum,
    GVar,
    gs_to_core,
    guarded_functor,
    parse_gs,
)

__all__ = [
    "PRESET_NAMES",
    "PresetError",
    "preset",
    "Regex",
    "RZero",
    "ROne",
    "RLetter",
    "RSum",
    "RCat",
    "RStar",
    "parse_regex",
    "pretty_regex",
    "regex_to_det",
    "det_to_regex",
    "regex_accepts",
    "det_accepts",
    "LtsTerm",
    "LNil",
    "LSum",
    "LPrefix",
    "LDead",
    "LTick",
    "LMu",
    "LVar",
    "parse_lts",
    "pretty_lts",
    "lts_functor",
    "lts_to_core",
    "core_to_lts",
    "GsTerm",
    "GNil",
    "GOut",
    "GSum",
    "GGuard",
    "GMu",
    "GVar",
    "parse_gs",
    "guarded_functor",
    "gs_to_core",
]
