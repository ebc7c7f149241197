"""
Exact points of C*, their roots-of-unity stabilizers and configuration classes.

Points are kept in polar-rational form ``modulus * exp(2*pi*i*angle)`` with
rational modulus and angle, so every root of unity and every product of
such points is exact.

Example:
    >>> A = PointSet.of(CStarPoint(1), CStarPoint(1, "1/2"), CStarPoint(2, "1/4"), CStarPoint(2, "3/4"))
    >>> data = symmetry_group(A)
    >>> data.d, data.m
    (2, 2)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ, QQ_I

from .errors import PointError
from .zigzag import is_palindrome_tail

if TYPE_CHECKING:
    from .extdiv import ExtendedDivisor

logger = logging.getLogger(__name__)

RationalLike = Union[int, str, Fraction]


@dataclass(frozen=True, order=True)
class CStarPoint:
    modulus: Fraction
    angle: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        try:
            modulus = Fraction(self.modulus)
            angle = Fraction(self.angle)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise PointError(f"point coordinates must be rationals: {exc}") from None
        if modulus <= 0:
            raise PointError(f"modulus must be positive, got {modulus}")
        if not 0 <= angle < 1:
            raise PointError(f"angle must lie in [0,1), got {angle}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "angle", angle)

    @classmethod
    def from_real(cls, value: RationalLike) -> "CStarPoint":
        value = Fraction(value)
        if value == 0:
            raise PointError("0 is not a point of C*")
        return cls(abs(value), Fraction(0) if value > 0 else Fraction(1, 2))

    @classmethod
    def root_of_unity(cls, k: int, order: int) -> "CStarPoint":
        return cls(1, Fraction(k, order) % 1)

    def __mul__(self, other: "CStarPoint") -> "CStarPoint":
        return CStarPoint(self.modulus * other.modulus, (self.angle + other.angle) % 1)

    def __truediv__(self, other: "CStarPoint") -> "CStarPoint":
        return self * other.inverse()

    def inverse(self) -> "CStarPoint":
        return CStarPoint(1 / self.modulus, (-self.angle) % 1)

    def __pow__(self, exponent: int) -> "CStarPoint":
        return CStarPoint(self.modulus**exponent, (self.angle * exponent) % 1)

    @property
    def is_real(self) -> bool:
        return self.angle in (0, Fraction(1, 2))

    def real_value(self) -> Fraction:
        if not self.is_real:
            raise PointError(f"{self} is not real")
        return self.modulus if self.angle == 0 else -self.modulus

    def to_sympy(self) -> sympy.Expr:
        return sympy.Rational(self.modulus.numerator, self.modulus.denominator) * sympy.exp(
            2 * sympy.pi * sympy.I * sympy.Rational(self.angle.numerator, self.angle.denominator)
        )

    def __str__(self) -> str:
        if self.is_real:
            return str(self.real_value())
        return f"{self.modulus}*e(2pi*i*{self.angle})"


ONE = CStarPoint(1)


@dataclass(frozen=True)
class PointSet:
    elements: FrozenSet[CStarPoint] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", frozenset(self.elements))

    @classmethod
    def of(cls, *points: CStarPoint) -> "PointSet":
        return cls(frozenset(points))

    @classmethod
    def reals(cls, values: Iterable[RationalLike]) -> "PointSet":
        return cls(frozenset(CStarPoint.from_real(v) for v in values))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[CStarPoint]:
        return iter(sorted(self.elements))

    def __contains__(self, point: object) -> bool:
        return point in self.elements

    def __bool__(self) -> bool:
        return bool(self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self) + "}"


def scale_set(alpha: CStarPoint, points: PointSet) -> PointSet:
    return PointSet(frozenset(alpha * p for p in points.elements))


@dataclass(frozen=True)
class SymmetryData:
    """G(A) = W_d and the partition of A into its orbits.

    ``d = 0`` and ``m = 0`` encode A = {} with G = C*.
    """

    d: int
    m: int
    orbits: Tuple[Tuple[CStarPoint, ...], ...] = ()
    group: Tuple[CStarPoint, ...] = ()

    def cosets(self) -> Tuple[Tuple[CStarPoint, int], ...]:
        """A as a disjoint union of cosets c * W_d, one per orbit."""
        return tuple((orbit[0], self.d) for orbit in self.orbits)

    def orbit_of(self, point: CStarPoint) -> int:
        """1-based number of the orbit containing ``point``."""
        for number, orbit in enumerate(self.orbits, start=1):
            if point in orbit:
                return number
        raise PointError(f"{point} is not in the set")


def symmetry_group(points: PointSet) -> SymmetryData:
    """Compute the stabilizer {alpha : alpha * A = A} and its orbits.

    Any stabilizing alpha sends the smallest point a_0 onto some b in A,
    so the ratios b / a_0 are the only candidates.
    """
    if not points:
        return SymmetryData(0, 0)
    ordered = sorted(points.elements)
    anchor = ordered[0]
    group = sorted(
        {b / anchor for b in ordered if scale_set(b / anchor, points) == points},
        key=lambda g: g.angle,
    )
    orbits: List[Tuple[CStarPoint, ...]] = []
    assigned = set()
    for p in ordered:
        if p in assigned:
            continue
        orbit = tuple(sorted({g * p for g in group}))
        assigned.update(orbit)
        orbits.append(orbit)
    d = len(group)
    logger.debug("|A| = %d: d = %d, m = %d", len(points), d, len(orbits))
    return SymmetryData(d, len(orbits), tuple(orbits), tuple(group))


def star_class_equal(a: PointSet, b: PointSet) -> Optional[CStarPoint]:
    """Return some alpha with alpha * A = B, or None when A and B lie in different classes."""
    if len(a) != len(b):
        return None
    if not a:
        return ONE
    anchor = min(a.elements)
    for target in sorted(b.elements):
        alpha = target / anchor
        if scale_set(alpha, a) == b:
            return alpha
    return None


# ============================================================================
# Points of A^1 modulo Aut(A^1)
# ============================================================================

AffinePointLike = Union[RationalLike, Tuple[RationalLike, RationalLike], complex]


def _qq(value: RationalLike):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def gaussian(point: AffinePointLike):
    """Convert a rational or a (re, im) pair to an element of QQ_I."""
    if isinstance(point, tuple):
        re, im = point
        return QQ_I(_qq(re), _qq(im))
    return QQ_I(_qq(point), QQ(0))


def plus_class_equal(a: Iterable[AffinePointLike], b: Iterable[AffinePointLike]) -> bool:
    """Whether B = s * A + t for some s != 0 and t, over the Gaussian rationals."""
    left = sorted({gaussian(p) for p in a})
    right = {gaussian(p) for p in b}
    if len(left) != len(right):
        return False
    if len(left) <= 1:
        return True
    a1, a2 = left[0], left[1]
    for b1 in sorted(right):
        for b2 in sorted(right):
            if b1 == b2:
                continue
            s = (b1 - b2) / (a1 - a2)
            t = b1 - s * a1
            if {s * p + t for p in left} == right:
                return True
    return False


# ============================================================================
# Q(X, D) = Q(X^v, D^v)
# ============================================================================


def _simultaneous_scale(pairs: Sequence[Tuple[PointSet, PointSet]]) -> Optional[CStarPoint]:
    if any(len(x) != len(y) for x, y in pairs):
        return None
    nonempty = [(x, y) for x, y in pairs if x]
    if not nonempty:
        return ONE
    first, target = nonempty[0]
    anchor = min(first.elements)
    for b in sorted(target.elements):
        alpha = b / anchor
        if all(scale_set(alpha, x) == y for x, y in nonempty):
            return alpha
    return None


def self_reversal_witness(div: "ExtendedDivisor") -> Optional[Dict[int, CStarPoint]]:
    """The scalars gamma_i with A_{i^v, s} = gamma_i * A_{i, s}, or None.

    Keys are the feathered indices. Requires condition (*).
    """
    div.require_condition_star()
    if not is_palindrome_tail(div.chain):
        return None
    n = div.n
    witness: Dict[int, CStarPoint] = {}
    for i in range(2, n + 1):
        dual = n + 2 - i
        if div.r(i) != div.r(dual):
            return None
        if div.r(i) == 0:
            continue
        lengths = sorted(set(div.tail_lengths(i)) | set(div.tail_lengths(dual)))
        gamma = _simultaneous_scale([(div.points(i, s), div.points(dual, s)) for s in lengths])
        if gamma is None:
            return None
        witness[i] = gamma
    return witness


def q_self_reversed(div: "ExtendedDivisor") -> bool:
    return self_reversal_witness(div) is not None
