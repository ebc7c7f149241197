"""
Shape of the fibration graph, amalgam presentations and birational words.

The graph of A^1-fibrations of a surface satisfying condition (*) is either
a loop at one vertex (the surface admits a reversion onto itself) or two
vertices joined by one edge. Aut(V) is the corresponding amalgamated
product.

Example:
    >>> toric_report(8, 3).summary()
    "e' = 3; shape: Loop; Aut = A ⋆_{A∩J} J"
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import count
from typing import Dict, Iterable, List, Tuple, Union

from .configinv import CStarPoint, self_reversal_witness
from .errors import InvariantViolation, ToricError, UnknownShapeError
from .extdiv import ExtendedDivisor, Feather
from .serieslift import TriangularMap
from .zigzag import HJFraction, WeightedChain, contract_chain, hj_expand, is_palindrome_tail

logger = logging.getLogger(__name__)


class Shape(str, Enum):
    LOOP = "Loop"
    TWO_VERTICES = "TwoVertices"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class GraphShape:
    """``witness`` holds the scalars gamma_i for a loop, or the failing condition."""

    shape: Shape
    witness: Union[Dict[int, CStarPoint], str, None] = field(default=None, compare=False)

    def __str__(self) -> str:
        return self.shape.value


def _failing_condition(div: ExtendedDivisor) -> str:
    if not is_palindrome_tail(div.chain):
        return f"D^{{>=2}} = {list(div.chain.tail)} is not a palindrome"
    for i in range(2, div.n + 1):
        dual = div.dual_index(i)
        if div.r(i) != div.r(dual):
            return f"r_{i} = {div.r(i)} differs from r_{dual} = {div.r(dual)}"
    for i in div.feathered_indices():
        dual = div.dual_index(i)
        if i <= dual:
            return f"A_{dual} is not a C*-multiple of A_{i}"
    return "base points are not C*-equivalent"


def fibration_graph_shape(div: ExtendedDivisor) -> GraphShape:
    witness = self_reversal_witness(div)
    if witness is None:
        return GraphShape(Shape.TWO_VERTICES, _failing_condition(div))
    if len(witness) <= 2:
        return GraphShape(Shape.LOOP, witness)
    logger.debug("%d feathered components: the loop criterion is only necessary", len(witness))
    return GraphShape(Shape.UNKNOWN, witness)


def is_special_chain(div: ExtendedDivisor) -> bool:
    """Gamma_D = [[0,-1,-2,-2,-2]], standard or 1-standard."""
    return div.chain.weights[:2] in ((0, 0), (0, -1)) and div.chain.tail == (-2, -2, -2)


def aut_generated_by_fibrations(div: ExtendedDivisor) -> bool:
    shape = fibration_graph_shape(div)
    if shape.shape is Shape.UNKNOWN:
        raise UnknownShapeError(f"fibration graph of {div.chain} is undetermined")
    if is_special_chain(div):
        return True
    return shape.shape is Shape.TWO_VERTICES


@dataclass(frozen=True)
class AmalgamPresentation:
    text: str
    factors: Tuple[str, str]
    edge_group: str
    roles: Dict[str, str] = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        return self.text


def presentation_for_shape(shape: Union[GraphShape, Shape]) -> AmalgamPresentation:
    kind = shape.shape if isinstance(shape, GraphShape) else Shape(shape)
    if kind is Shape.LOOP:
        return AmalgamPresentation(
            "A ⋆_{A∩J} J",
            ("A", "J"),
            "A∩J",
            {"A": "⟨Aut(X,D), ψ⟩", "J": "Aut(V,π)", "A∩J": "Aut(X,D)"},
        )
    if kind is Shape.TWO_VERTICES:
        return AmalgamPresentation(
            "J ⋆_A J^∨",
            ("J", "J^∨"),
            "A",
            {"J": "Aut(V,π)", "J^∨": "Aut(V,π^∨)", "A": "Aut(X,D)"},
        )
    raise UnknownShapeError("no presentation for an undetermined fibration graph")


def amalgam_presentation(div: ExtendedDivisor) -> AmalgamPresentation:
    return presentation_for_shape(fibration_graph_shape(div))


# ============================================================================
# Birational words
# ============================================================================

Center = Union[Fraction, str]


@dataclass(frozen=True)
class Rev:
    """A reversion centred at a point of A^1; string centres are formal."""

    center: Center

    def __post_init__(self) -> None:
        center = self.center
        if isinstance(center, str):
            try:
                center = Fraction(center)
            except ValueError:
                return
        object.__setattr__(self, "center", Fraction(center))

    def __str__(self) -> str:
        return f"Rev({self.center})"


@dataclass(frozen=True)
class Fib:
    """The fibered modification lifting a triangular map."""

    map: TriangularMap

    @classmethod
    def of(cls, a, b, polynomial: str) -> "Fib":
        return cls(TriangularMap.parse(a, b, polynomial))

    def __str__(self) -> str:
        return f"Fib({self.map})"


BiratLetter = Union[Rev, Fib]


@dataclass(frozen=True)
class BiratWord:
    letters: Tuple[BiratLetter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return " . ".join(str(letter) for letter in self.letters) or "id"

    def reversions(self) -> Tuple[Rev, ...]:
        return tuple(letter for letter in self.letters if isinstance(letter, Rev))

    def is_alternating(self) -> bool:
        return all(type(x) is not type(y) for x, y in zip(self.letters, self.letters[1:]))


def _fresh_index(letters: Iterable[BiratLetter]) -> int:
    used = [0]
    for letter in letters:
        if isinstance(letter, Rev) and isinstance(letter.center, str) and letter.center.startswith("λ'"):
            suffix = letter.center[2:]
            if suffix.isdigit():
                used.append(int(suffix))
    return max(used) + 1


def reduce_birational_word(
    word: Union[BiratWord, Iterable[BiratLetter]], all_weights_geq_minus_2: bool = False
) -> BiratWord:
    """Cancel, merge and compose adjacent letters until nothing changes.

    With ``all_weights_geq_minus_2`` two reversions at different centres
    merge into one reversion with a fresh formal centre.
    """
    letters = tuple(word)
    fresh = count(_fresh_index(letters))
    stack: List[BiratLetter] = []
    for letter in letters:
        top = stack[-1] if stack else None
        if isinstance(letter, Fib):
            if isinstance(top, Fib):
                stack.pop()
                letter = Fib(top.map.then(letter.map))
            if not letter.map.is_affine():
                stack.append(letter)
        elif isinstance(top, Rev):
            if top.center == letter.center:
                stack.pop()
            elif all_weights_geq_minus_2:
                stack.pop()
                stack.append(Rev(f"λ'{next(fresh)}"))
            else:
                stack.append(letter)
        else:
            stack.append(letter)
    return BiratWord(tuple(stack))


# ============================================================================
# Toric surfaces V_{d,e}
# ============================================================================


@dataclass(frozen=True)
class ToricReport:
    d: int
    e: int
    e_prime: int
    boundary: HJFraction
    feather: HJFraction
    shape: Shape
    divisor: ExtendedDivisor = field(compare=False)

    @property
    def presentation(self) -> AmalgamPresentation:
        return presentation_for_shape(self.shape)

    def assembled_chain(self) -> Tuple[int, ...]:
        """D_ext as one linear chain: boundary, bridge, reversed feather box."""
        (f,) = self.divisor.feathers
        return self.divisor.chain.weights + (f.bridge,) + f.tail

    def summary(self) -> str:
        return f"e' = {self.e_prime}; shape: {self.shape.value}; Aut = {self.presentation.text}"


def toric_report(d: int, e: int) -> ToricReport:
    if d < 2:
        raise ToricError(f"d must be at least 2, got {d}")
    if not 0 <= e < d:
        raise ToricError(f"e must lie in [0, {d}), got {e}")
    if math.gcd(d, e) != 1:
        raise ToricError(f"gcd({d}, {e}) = {math.gcd(d, e)} != 1")
    e_prime = pow(e, -1, d)
    boundary = hj_expand(d, d - e)
    feather = hj_expand(d, e)
    chain = WeightedChain((0, 0) + boundary.weights)
    tail = tuple(reversed(feather.weights))
    divisor = ExtendedDivisor(chain, (Feather(chain.n, CStarPoint(1), -1, tail),))
    report = ToricReport(d, e, e_prime, boundary, feather, Shape.LOOP if e * e % d == 1 else Shape.TWO_VERTICES, divisor)
    contracted = contract_chain(report.assembled_chain(), protect=3)
    if contracted != (0, 0, 0):
        raise InvariantViolation(f"V_{{{d},{e}}}: D_ext contracts to {list(contracted)}, not [0, 0, 0]")
    logger.debug("V_{%d,%d}: boxes %s / %s", d, e, boundary.expansion, feather.expansion)
    return report


def toric_partner(report: ToricReport) -> ToricReport:
    """V_{d,e'}, the surface obtained by reversing V_{d,e}."""
    return toric_report(report.d, report.e_prime)
