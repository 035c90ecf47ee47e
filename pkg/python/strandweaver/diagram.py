"""Diagram terms over the generators ``del``, ``e``, ``s`` and ``c(λ)``.

Two representations live here:

* the free term tree (:class:`Id`, :class:`Gen`, :class:`Tensor`,
  :class:`Compose`) that users build, and
* :class:`SliceForm`, a flat list of whiskered generators read from the
  input strands to the output strands, which the rewriter and the renderer
  work on.

All values are immutable.  Tree walks use explicit stacks so long slice
chains do not hit the interpreter's recursion limit.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .errors import CompositionError, DimensionError, ParameterDomainError
from .matrix import format_scalar, probability


class GeneratorKind(str, enum.Enum):
    DEL = "del"
    E = "e"
    S = "s"
    C = "c"


_ARITY = {
    GeneratorKind.DEL: (0, 1),
    GeneratorKind.E: (2, 1),
    GeneratorKind.S: (2, 2),
    GeneratorKind.C: (1, 2),
}


@dataclass(frozen=True)
class Generator:
    """One of the four generators; ``param`` is set exactly for ``c``."""

    kind: GeneratorKind
    param: Optional[Fraction] = None

    def __post_init__(self):
        kind = GeneratorKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is GeneratorKind.C:
            if self.param is None:
                raise ParameterDomainError("c needs a probability parameter")
            object.__setattr__(self, "param", probability(self.param))
        elif self.param is not None:
            raise ParameterDomainError(f"{kind.value} takes no parameter")

    @property
    def dom(self) -> int:
        return _ARITY[self.kind][0]

    @property
    def cod(self) -> int:
        return _ARITY[self.kind][1]

    def __str__(self):
        if self.kind is GeneratorKind.C:
            return f"c({format_scalar(self.param)})"
        return self.kind.value


class Diagram:
    """Base class of diagram terms.

    ``a * b`` is the tensor product, ``a >> b`` reads "a, then b".
    """

    dom: int
    cod: int

    def __mul__(self, other: "Diagram") -> "Diagram":
        return tensor(self, other)

    def __rshift__(self, other: "Diagram") -> "Diagram":
        return compose(other, self)

    def __str__(self):
        from .expr_parser import format_diagram

        return format_diagram(self)


@dataclass(frozen=True)
class Id(Diagram):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ParameterDomainError(f"negative arity {self.n}")

    @property
    def dom(self) -> int:
        return self.n

    @property
    def cod(self) -> int:
        return self.n


@dataclass(frozen=True)
class Gen(Diagram):
    gen: Generator

    @property
    def dom(self) -> int:
        return self.gen.dom

    @property
    def cod(self) -> int:
        return self.gen.cod


@dataclass(frozen=True)
class Tensor(Diagram):
    left: Diagram
    right: Diagram
    dom: int = field(init=False, repr=False, compare=False)
    cod: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dom", self.left.dom + self.right.dom)
        object.__setattr__(self, "cod", self.left.cod + self.right.cod)


@dataclass(frozen=True)
class Compose(Diagram):
    """``after ∘ before``: *before* is applied first."""

    after: Diagram
    before: Diagram
    dom: int = field(init=False, repr=False, compare=False)
    cod: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.before.cod != self.after.dom:
            raise CompositionError(
                f"cannot compose: first part ends with {self.before.cod} strands, "
                f"second part starts with {self.after.dom}"
            )
        object.__setattr__(self, "dom", self.before.dom)
        object.__setattr__(self, "cod", self.after.cod)


# ---- constructors ----

def make_gen(kind, param=None) -> Gen:
    """Diagram consisting of a single generator.

    >>> make_gen("c", "1/3").cod
    2
    """
    return Gen(Generator(GeneratorKind(kind), param))


def make_id(n: int) -> Id:
    return Id(n)


def tensor(a: Diagram, b: Diagram) -> Tensor:
    return Tensor(a, b)


def compose(after: Diagram, before: Diagram) -> Compose:
    """Run *before*, then *after* (``after ∘ before``)."""
    return Compose(after, before)


def c(param) -> Gen:
    return make_gen(GeneratorKind.C, param)


DEL = make_gen(GeneratorKind.DEL)
E = make_gen(GeneratorKind.E)
S = make_gen(GeneratorKind.S)


def whisker(left: int, gen: Generator, right: int) -> Diagram:
    """``id(left) * gen * id(right)``, omitting empty identities."""
    d: Diagram = Gen(gen)
    if left:
        d = Tensor(Id(left), d)
    if right:
        d = Tensor(d, Id(right))
    return d


def tensor_all(diagrams: Iterable[Diagram], width: int = 0) -> Diagram:
    """Left-folded tensor product; ``id(width)`` for no factors."""
    result: Optional[Diagram] = None
    for d in diagrams:
        result = d if result is None else Tensor(result, d)
    return Id(width) if result is None else result


def tensor_power(f: Diagram, k: int) -> Diagram:
    """``f ⊗ (f ⊗ (... ⊗ f))``, right-nested; ``id(0)`` for ``k == 0``."""
    if k < 0:
        raise ParameterDomainError(f"negative tensor power {k}")
    if k == 0:
        return Id(0)
    result = f
    for _ in range(k - 1):
        result = Tensor(f, result)
    return result


def generator_count(d: Diagram) -> int:
    count = 0
    stack = [d]
    while stack:
        node = stack.pop()
        if isinstance(node, Gen):
            count += 1
        elif isinstance(node, Tensor):
            stack.extend((node.left, node.right))
        elif isinstance(node, Compose):
            stack.extend((node.after, node.before))
    return count


# ---- slice form ----

class Slice(NamedTuple):
    """``id(left) ⊗ gen ⊗ id(right)``."""

    left: int
    gen: Generator
    right: int

    @property
    def dom(self) -> int:
        return self.left + self.gen.dom + self.right

    @property
    def cod(self) -> int:
        return self.left + self.gen.cod + self.right

    def __str__(self):
        return f"({self.left},{self.gen},{self.right})"


@dataclass(frozen=True)
class SliceForm:
    """Layered form: *slices* applied in order to *dom* input strands."""

    dom: int
    slices: Tuple[Slice, ...] = ()
    cod: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        if self.dom < 0:
            raise ParameterDomainError(f"negative arity {self.dom}")
        slices = tuple(
            s if isinstance(s, Slice) else Slice(*s) for s in self.slices
        )
        object.__setattr__(self, "slices", slices)
        running = self.dom
        for index, s in enumerate(slices):
            if s.left < 0 or s.right < 0:
                raise DimensionError(f"slice {index} has a negative whisker")
            if s.dom != running:
                raise DimensionError(
                    f"slice {index} expects {s.dom} strands but {running} arrive"
                )
            running = s.cod
        object.__setattr__(self, "cod", running)

    def __len__(self) -> int:
        return len(self.slices)

    def __iter__(self) -> Iterator[Slice]:
        return iter(self.slices)

    def __getitem__(self, index):
        return self.slices[index]

    def arities(self) -> List[int]:
        """Running strand count before each slice, plus the final count."""
        out = [self.dom]
        for s in self.slices:
            out.append(s.cod)
        return out

    def counts(self) -> Counter:
        return Counter(s.gen.kind for s in self.slices)

    def splice(self, start: int, stop: int, replacement: Sequence[Slice]) -> "SliceForm":
        """Replace ``slices[start:stop]`` by *replacement* (re-checked)."""
        return SliceForm(
            self.dom, self.slices[:start] + tuple(replacement) + self.slices[stop:]
        )

    def __str__(self):
        body = " ".join(str(s) for s in self.slices)
        return f"SliceForm({self.dom}: {body})"


def to_slices(d: Diagram) -> SliceForm:
    """Flatten a term into slices; the left tensor factor's slices come first."""
    out: List[Slice] = []
    stack = [(d, 0, 0)]
    while stack:
        node, left, right = stack.pop()
        if isinstance(node, Gen):
            out.append(Slice(left, node.gen, right))
        elif isinstance(node, Compose):
            stack.append((node.after, left, right))
            stack.append((node.before, left, right))
        elif isinstance(node, Tensor):
            stack.append((node.right, left + node.left.cod, right))
            stack.append((node.left, left, right + node.right.dom))
    return SliceForm(d.dom, tuple(out))


def from_slices(s: SliceForm) -> Diagram:
    """Rebuild ``s_n ∘ (... ∘ (s_2 ∘ s_1))`` from whiskered generators."""
    if not s.slices:
        return Id(s.dom)
    result = whisker(*s.slices[0])
    for sl in s.slices[1:]:
        result = Compose(whisker(*sl), result)
    return result


__all__ = [
    "GeneratorKind",
    "Generator",
    "Diagram",
    "Id",
    "Gen",
    "Tensor",
    "Compose",
    "make_gen",
    "make_id",
    "tensor",
    "compose",
    "c",
    "DEL",
    "E",
    "S",
    "whisker",
    "tensor_all",
    "tensor_power",
    "generator_count",
    "Slice",
    "SliceForm",
    "to_slices",
    "from_slices",
]
