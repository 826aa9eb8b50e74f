"""Exact Goldman bracket, framed Turaev cobracket and framing invariants
for loops on punctured surfaces, in a one-vertex ribbon graph model."""

from .bialgebra import BiLoopCombo, LoopCombo, goldman_bracket, turaev_cobracket, unframed_cobracket
from .completion import (
    CyclicSeries,
    Expansion,
    Series,
    boundary_defect,
    exp_expansion,
    expand_loop,
    expand_word,
    filtration_report,
    weight_level,
)
from .errors import GTError
from .framings import (
    FreeGroupAuto,
    a_invariant,
    arf_invariant,
    framing_cocycle,
    point_push_automorphism,
    pushforward_framing,
    quasi_algebraic_framing_exists,
    same_mcg_orbit,
)
from .loops import (
    CyclicWord,
    DoublePoint,
    Framing,
    cyclic_reduce_word,
    homology_class,
    intersections,
    local_degrees,
    rotation_number,
    self_intersections,
)
from .surface import Surface, boundary_words, build_surface

__all__ = [
    "BiLoopCombo",
    "LoopCombo",
    "goldman_bracket",
    "turaev_cobracket",
    "unframed_cobracket",
    "CyclicSeries",
    "Expansion",
    "Series",
    "boundary_defect",
    "exp_expansion",
    "expand_loop",
    "expand_word",
    "filtration_report",
    "weight_level",
    "GTError",
    "FreeGroupAuto",
    "a_invariant",
    "arf_invariant",
    "framing_cocycle",
    "point_push_automorphism",
    "pushforward_framing",
    "quasi_algebraic_framing_exists",
    "same_mcg_orbit",
    "CyclicWord",
    "DoublePoint",
    "Framing",
    "cyclic_reduce_word",
    "homology_class",
    "intersections",
    "local_degrees",
    "rotation_number",
    "self_intersections",
    "Surface",
    "boundary_words",
    "build_surface",
]
