"""Scripted derivations of the left-right mirrored relations.

Only one orientation of the del/swap/merge relations is in the rule table;
the mirrored ones follow from it.  Each entry lists a start slice form,
the steps as ``(rule, reverse, slice_index, offset)`` and the slice form
the steps must produce.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

from ..diagram import Generator, GeneratorKind, Slice, SliceForm
from .engine import replay

_LAM = Fraction(1, 3)


def _form(dom: int, *slices) -> SliceForm:
    out = []
    for left, kind, right in slices:
        gen = Generator(GeneratorKind.C, _LAM) if kind == "c" else Generator(GeneratorKind(kind))
        out.append(Slice(left, gen, right))
    return SliceForm(dom, tuple(out))


class Derivation(NamedTuple):
    equation: str
    start: SliceForm
    steps: Tuple[Tuple[str, bool, int, int], ...]
    target: SliceForm

    def run(self) -> List[SliceForm]:
        return replay(self.start, self.steps)


MIRROR_DERIVATIONS: Dict[str, Derivation] = {
    "D14.mirror": Derivation(
        "s(id⊗∂) = ∂⊗id",
        _form(1, (1, "del", 0), (0, "s", 0)),
        (("D14", True, 0, 0), ("R4", False, 1, 0)),
        _form(1, (0, "del", 1)),
    ),
    "D13.mirror": Derivation(
        "e(id⊗∂) = id",
        _form(1, (1, "del", 0), (0, "e", 0)),
        (("R2", True, 1, 0), ("D14", True, 0, 0), ("R4", False, 1, 0), ("D13", False, 0, 0)),
        _form(1),
    ),
    "R3.mirror": Derivation(
        "s(e⊗id) = (id⊗e)(s⊗id)(id⊗s)",
        _form(3, (0, "e", 1), (0, "s", 0)),
        (("R4", True, 0, 1), ("R4", True, 1, 0), ("R3", True, 2, 0), ("R4", False, 3, 0)),
        _form(3, (1, "s", 0), (0, "s", 1), (1, "e", 0)),
    ),
    "R10.mirror": Derivation(
        "(c_λ⊗id)s = (id⊗s)(s⊗id)(id⊗c_λ)",
        _form(2, (0, "s", 0), (0, "c", 1)),
        (("R4", True, 2, 1), ("R4", True, 3, 0), ("R10", True, 1, 0), ("R4", False, 0, 0)),
        _form(2, (1, "c", 0), (0, "s", 1), (1, "s", 0)),
    ),
}
