"""
Truncated power series and the lifting of triangular automorphisms.

A triangular map psi(x, y) = (a x + P(y), b y) of the plane lifts through
each blowup of the boundary chain. In the chart at the active
intersection its lift has the form

    Psi(u, v) = (alpha u (1 + u^k v^l R), beta v (1 + u^k v^l S))

with alpha, beta monomials in a, b. This module computes the lift
exactly, by series substitution, and checks the exponents against the
recurrence L: k += l, R: l += k.

Series are stored in the reference coordinates (p, q) of the first chart
and truncated at total degree N there. Every later chart is reached by a
monomial substitution, recorded as a unimodular exponent matrix, so no
precision is lost when the charts pile up.

Example:
    >>> lift_word_exponents("LR")
    (1, 2)
"""

from __future__ import annotations

import logging
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.polyerrors import BasePolynomialError

from . import config
from .configinv import CStarPoint, PointSet
from .errors import CorrespondenceError, InvariantViolation, LiftFactorizationError
from .extdiv import ExtendedDivisor
from .zigzag import BlowupWord, Letter, creation_order, exceptional_components, words_for_order

logger = logging.getLogger(__name__)

Exponent = Tuple[int, int]
Chart = Tuple[Exponent, Exponent]
IDENTITY_CHART: Chart = ((1, 0), (0, 1))
RationalLike = Union[int, str, Fraction]


def _substitute_exponent(e: Exponent, letter: str) -> Exponent:
    # R: (s, t) = (s't', t');  L: (s, t) = (s', s't')
    i, j = e
    if letter == "R":
        return (i, i + j)
    if letter == "L":
        return (i + j, j)
    return e


class TruncatedSeries2:
    """Bivariate series over Q, exact modulo total degree N + 1 in (p, q)."""

    __slots__ = ("coeffs", "order", "chart", "shift")

    def __init__(
        self,
        coeffs: Mapping[Exponent, RationalLike],
        order: int,
        chart: Chart = IDENTITY_CHART,
        shift: Exponent = (0, 0),
    ):
        if order < 0:
            raise ValueError(f"truncation order must be non-negative, got {order}")
        cleaned: Dict[Exponent, Fraction] = {}
        for (i, j), c in coeffs.items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j}) in a power series")
            c = Fraction(c)
            if c and i + j <= order:
                cleaned[(i, j)] = c
        self.coeffs = cleaned
        self.order = order
        self.chart = chart
        self.shift = shift

    @classmethod
    def constant(cls, value: RationalLike, order: int, chart: Chart = IDENTITY_CHART) -> "TruncatedSeries2":
        return cls({(0, 0): value}, order, chart)

    def _like(self, coeffs: Mapping[Exponent, RationalLike], shift: Optional[Exponent] = None) -> "TruncatedSeries2":
        return TruncatedSeries2(coeffs, self.order, self.chart, self.shift if shift is None else shift)

    def _check(self, other: "TruncatedSeries2", same_shift: bool) -> None:
        if self.order != other.order or self.chart != other.chart:
            raise ValueError("series live in different charts or have different truncation orders")
        if same_shift and self.shift != other.shift:
            raise ValueError("cannot add series with different monomial factors")

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def __add__(self, other: Union["TruncatedSeries2", RationalLike]) -> "TruncatedSeries2":
        if not isinstance(other, TruncatedSeries2):
            other = TruncatedSeries2.constant(other, self.order, self.chart)
        self._check(other, same_shift=True)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries2":
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: Union["TruncatedSeries2", RationalLike]) -> "TruncatedSeries2":
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "TruncatedSeries2":
        return (-self) + other

    def __mul__(self, other: Union["TruncatedSeries2", RationalLike]) -> "TruncatedSeries2":
        if not isinstance(other, TruncatedSeries2):
            factor = Fraction(other)
            return self._like({e: c * factor for e, c in self.coeffs.items()})
        self._check(other, same_shift=False)
        out: Dict[Exponent, Fraction] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                if i1 + i2 + j1 + j2 <= self.order:
                    key = (i1 + i2, j1 + j2)
                    out[key] = out.get(key, 0) + c1 * c2
        shift = (self.shift[0] + other.shift[0], self.shift[1] + other.shift[1])
        return self._like(out, shift)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries2":
        c0 = self.coeffs.get((0, 0))
        if self.shift != (0, 0) or not c0:
            raise ZeroDivisionError("only unit series (non-zero constant term) are invertible")
        rest = [(e, c) for e, c in self.coeffs.items() if e != (0, 0)]
        inv: Dict[Exponent, Fraction] = {(0, 0): 1 / c0}
        for degree in range(1, self.order + 1):
            for i in range(degree + 1):
                j = degree - i
                acc = Fraction(0)
                for (a, b), c in rest:
                    if a <= i and b <= j:
                        acc += c * inv.get((i - a, j - b), 0)
                if acc:
                    inv[(i, j)] = -acc / c0
        return self._like(inv)

    def __truediv__(self, other: Union["TruncatedSeries2", RationalLike]) -> "TruncatedSeries2":
        if not isinstance(other, TruncatedSeries2):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "TruncatedSeries2":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TruncatedSeries2.constant(1, self.order, self.chart)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries2):
            return NotImplemented
        return (self.order, self.chart, self.shift, self.coeffs) == (
            other.order,
            other.chart,
            other.shift,
            other.coeffs,
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TruncatedSeries2({self.terms()!r}, order={self.order})"

    # ------------------------------------------------------------------
    # Charts
    # ------------------------------------------------------------------

    def substitute(self, letter: str) -> "TruncatedSeries2":
        """Pass to the chart of the next blowup (R, L; J keeps the chart)."""
        if letter not in ("R", "L", "J"):
            raise ValueError(f"unknown coordinate change {letter!r}")
        row_p, row_q = self.chart
        chart = (_substitute_exponent(row_p, letter), _substitute_exponent(row_q, letter))
        return TruncatedSeries2(self.coeffs, self.order, chart, _substitute_exponent(self.shift, letter))

    def image(self, e: Exponent) -> Exponent:
        """Current exponents of the reference monomial p^e0 q^e1 (without shift)."""
        (a, b), (c, d) = self.chart
        return (e[0] * a + e[1] * c, e[0] * b + e[1] * d)

    def terms(self) -> Dict[Exponent, Fraction]:
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.coeffs.items():
            u, v = self.image(e)
            key = (u + self.shift[0], v + self.shift[1])
            out[key] = out.get(key, 0) + c
        return {e: c for e, c in sorted(out.items()) if c}

    def min_support(self) -> Optional[Exponent]:
        terms = self.terms()
        if not terms:
            return None
        return (min(e[0] for e in terms), min(e[1] for e in terms))

    def times_monomial(self, k: int, l: int) -> "TruncatedSeries2":
        return self._like(self.coeffs, (self.shift[0] + k, self.shift[1] + l))

    def is_power_series(self) -> bool:
        return all(u >= 0 and v >= 0 for u, v in self.terms())

    def restrict_v0(self) -> Dict[int, Fraction]:
        """Coefficients of u^i in the restriction to v = 0."""
        return {u: c for (u, v), c in self.terms().items() if v == 0}

    def is_zero(self) -> bool:
        return not self.coeffs


# ============================================================================
# Triangular maps
# ============================================================================


@dataclass(frozen=True)
class TriangularMap:
    """psi(x, y) = (a x + P(y), b y) with P(y) = sum c_j y^j, j >= 1."""

    a: Fraction
    b: Fraction
    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        a, b = Fraction(self.a), Fraction(self.b)
        if a == 0 or b == 0:
            raise ValueError("triangular maps need a != 0 and b != 0")
        coefficients = [Fraction(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def parse(cls, a: RationalLike, b: RationalLike, polynomial: str) -> "TriangularMap":
        y = sympy.Symbol("y")
        try:
            poly = sympy.Poly(sympy.sympify(polynomial, locals={"y": y}), y, domain="QQ")
        except (sympy.SympifyError, BasePolynomialError, TypeError) as exc:
            raise ValueError(f"P must be a polynomial in y with rational coefficients: {exc}") from None
        coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(poly.all_coeffs())]
        if coeffs and coeffs[0] != 0:
            raise ValueError("P(0) must vanish so that the base point stays fixed")
        return cls(Fraction(a), Fraction(b), tuple(coeffs[1:]))

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def is_affine(self) -> bool:
        return self.degree <= 1

    def then(self, other: "TriangularMap") -> "TriangularMap":
        """other o self."""
        size = max(self.degree, other.degree)
        coeffs = []
        for j in range(1, size + 1):
            mine = self.coefficients[j - 1] if j <= self.degree else 0
            theirs = other.coefficients[j - 1] if j <= other.degree else 0
            coeffs.append(other.a * mine + theirs * self.b**j)
        return TriangularMap(self.a * other.a, self.b * other.b, tuple(coeffs))

    compose = then

    def unit_series(self, order: int) -> TruncatedSeries2:
        """U_0 = 1 + (1/a) sum c_j p^(j-1) q^j in the first chart."""
        coeffs: Dict[Exponent, Fraction] = {(0, 0): Fraction(1)}
        for j, c in enumerate(self.coefficients, start=1):
            coeffs[(j - 1, j)] = c / self.a
        return TruncatedSeries2(coeffs, order)

    def sympy_polynomial(self, y: sympy.Symbol) -> sympy.Expr:
        return sum(
            (_rational(c) * y**j for j, c in enumerate(self.coefficients, start=1)),
            sympy.Integer(0),
        )

    def __str__(self) -> str:
        terms = " + ".join(f"{c}*y^{j}" for j, c in enumerate(self.coefficients, start=1) if c)
        return f"(x, y) -> ({self.a}*x{' + ' + terms if terms else ''}, {self.b}*y)"


# ============================================================================
# Lifting
# ============================================================================

WordLike = Union[str, BlowupWord, Sequence[Union[str, Letter]]]


def lift_letters(word: WordLike) -> Tuple[str, ...]:
    """Normalize a word to letters R, L, J; a leading OuterStart is dropped."""
    if isinstance(word, BlowupWord):
        letters = [str(letter) for letter in word.inner()]
    elif isinstance(word, str):
        letters = [str(letter) for letter in BlowupWord.parse("O" + word.lstrip("O")).inner()] if word else []
    else:
        letters = [str(letter) for letter in word]
    out = []
    for letter in letters:
        if letter in ("L", "R"):
            out.append(letter)
        elif letter.startswith("J"):
            out.append("J")
        elif letter != "O":
            raise ValueError(f"unknown letter {letter!r} in lift word")
    return tuple(out)


def lift_word_exponents(word: WordLike) -> Tuple[int, int]:
    k, l = 0, 1
    for letter in lift_letters(word):
        if letter == "L":
            k += l
        elif letter == "R":
            l += k
    return k, l


def _rational(q: Fraction) -> sympy.Rational:
    return sympy.Rational(q.numerator, q.denominator)


def _monomial(a: Fraction, b: Fraction, e: Exponent) -> Fraction:
    return a ** e[0] * b ** e[1]


@dataclass(frozen=True, eq=False)
class LiftForm:
    alpha: Fraction
    beta: Fraction
    alpha_exponents: Exponent
    beta_exponents: Exponent
    k: int
    l: int
    R: TruncatedSeries2
    S: TruncatedSeries2
    order: int

    def units(self) -> Tuple[TruncatedSeries2, TruncatedSeries2]:
        """(1 + u^k v^l R, 1 + u^k v^l S)."""
        return (
            self.R.times_monomial(self.k, self.l) + 1,
            self.S.times_monomial(self.k, self.l) + 1,
        )

    def observed_exponents(self) -> Optional[Exponent]:
        """Lowest (u, v) exponents actually present in the perturbation."""
        supports = [s for s in (self.R.min_support(), self.S.min_support()) if s is not None]
        if not supports:
            return None
        return (min(s[0] for s in supports) + self.k, min(s[1] for s in supports) + self.l)


def _lift(psi: TriangularMap, letters: Sequence[str], order: int) -> LiftForm:
    u1 = psi.unit_series(order)
    u2 = u1.inverse()
    alpha_e, beta_e = (1, 0), (-1, 1)
    for letter in letters:
        if letter == "R":
            u1 = u1 / u2
            alpha_e = (alpha_e[0] - beta_e[0], alpha_e[1] - beta_e[1])
        elif letter == "L":
            u2 = u2 / u1
            beta_e = (beta_e[0] - alpha_e[0], beta_e[1] - alpha_e[1])
        u1, u2 = u1.substitute(letter), u2.substitute(letter)
    k, l = u1.image((0, 1))
    r_series = (u1 - 1).times_monomial(-k, -l)
    s_series = (u2 - 1).times_monomial(-k, -l)
    if not (r_series.is_power_series() and s_series.is_power_series()):
        raise LiftFactorizationError(f"lift along {''.join(letters)} is not divisible by u^{k} v^{l}")
    if (k, l) != lift_word_exponents(letters):
        raise InvariantViolation(f"chart exponents ({k}, {l}) disagree with the recurrence")
    return LiftForm(
        alpha=_monomial(psi.a, psi.b, alpha_e),
        beta=_monomial(psi.a, psi.b, beta_e),
        alpha_exponents=alpha_e,
        beta_exponents=beta_e,
        k=k,
        l=l,
        R=r_series,
        S=s_series,
        order=order,
    )


class Lifter:
    """Builder for lift computations.

    Example:
        >>> form = Lifter().order(8).run(TriangularMap(1, 1, (1,)), "LR")
        >>> (form.k, form.l)
        (1, 2)
    """

    def __init__(self) -> None:
        self._order = config.Settings.from_env().series_order

    def order(self, order: int) -> "Lifter":
        if order < 4:
            raise ValueError(f"series order must be at least 4, got {order}")
        self._order = order
        return self

    def run(self, psi: TriangularMap, word: WordLike) -> LiftForm:
        letters = lift_letters(word)
        try:
            return _lift(psi, letters, self._order)
        except LiftFactorizationError as exc:
            logger.warning("%s; retrying at order %d", exc, 2 * self._order)
        return _lift(psi, letters, 2 * self._order)


def lift_word_series(psi: TriangularMap, word: WordLike, order: Optional[int] = None) -> LiftForm:
    lifter = Lifter()
    if order is not None:
        lifter.order(order)
    return lifter.run(psi, word)


def lift_closed_form(psi: TriangularMap, word: WordLike, order: int) -> Tuple[TruncatedSeries2, TruncatedSeries2]:
    """The lifted units as powers U_0^e of the first unit, carried to the final chart."""
    letters = lift_letters(word)
    alpha_e, beta_e = (1, 0), (-1, 1)
    for letter in letters:
        if letter == "R":
            alpha_e = (alpha_e[0] - beta_e[0], alpha_e[1] - beta_e[1])
        elif letter == "L":
            beta_e = (beta_e[0] - alpha_e[0], beta_e[1] - alpha_e[1])
    u0 = psi.unit_series(order)
    u1, u2 = u0 ** alpha_e[0], u0 ** beta_e[0]
    for letter in letters:
        u1, u2 = u1.substitute(letter), u2.substitute(letter)
    return u1, u2


def lift_rational(psi: TriangularMap, word: WordLike) -> Tuple[sympy.Expr, sympy.Expr, sympy.Symbol, sympy.Symbol]:
    """The lift as exact rational functions of the final chart coordinates (u, v)."""
    u, v = sympy.symbols("u v")
    a, b = _rational(psi.a), _rational(psi.b)
    y = sympy.Symbol("y")
    p_tilde = sympy.cancel(psi.sympy_polynomial(y) / y) if psi.coefficients else sympy.Integer(0)
    unit = 1 + p_tilde.subs(y, u * v) * v / a
    image = (sympy.cancel(a * u * unit), sympy.cancel(b / a * v / unit))
    for letter in lift_letters(word):
        if letter == "R":
            pulled = [e.subs({u: u * v}, simultaneous=True) for e in image]
            image = (sympy.cancel(pulled[0] / pulled[1]), sympy.cancel(pulled[1]))
        elif letter == "L":
            pulled = [e.subs({v: u * v}, simultaneous=True) for e in image]
            image = (sympy.cancel(pulled[0]), sympy.cancel(pulled[1] / pulled[0]))
    return image[0], image[1], u, v


# ============================================================================
# Valuations and component exponents
# ============================================================================

Valuation = Tuple[int, int]


def chain_valuations(word: Union[BlowupWord, str]) -> Tuple[Valuation, ...]:
    """(ord x_0, ord y_0) along every component C_2, ..., C_n of the chain."""
    if isinstance(word, str):
        word = BlowupWord.parse(word)
    if not word.letters:
        return ((0, 1),)
    nus: List[Valuation] = [(0, 1), (1, 1)]
    active = 0
    for letter in word.inner():
        gap = active if letter.kind in ("L", "R") else letter.gap
        left, right = nus[gap], nus[gap + 1]
        nus.insert(gap + 1, (left[0] + right[0], left[1] + right[1]))
        if letter.kind == "R":
            active = gap + 1
        elif letter.kind == "J" and gap < active:
            active += 1
    return tuple(nus)


def _det(left: Valuation, right: Valuation) -> int:
    return right[0] * left[1] - left[0] * right[1]


def creation_path(left: Valuation, right: Valuation) -> Tuple[str, ...]:
    """L/R word leading from the first chart to the chart at left/right."""
    s, t = (0, 1), (1, 1)
    path: List[str] = []
    while (s, t) != (left, right):
        if len(path) > left[0] + left[1] + right[0] + right[1]:
            raise InvariantViolation(f"{left}, {right} is not an intersection of the chain")
        m = (s[0] + t[0], s[1] + t[1])
        if left[0] * m[1] >= m[0] * left[1]:
            path.append("R")
            s = m
        else:
            path.append("L")
            t = m
    return tuple(path)


@dataclass(frozen=True)
class ComponentScaling:
    """The torus (a, b) acts on the coordinate of C_index by a^p b^q."""

    index: int
    p: int
    q: int
    factor: Optional[Fraction] = None


def component_scaling_exponents(
    torus: Tuple[RationalLike, RationalLike], word: Union[BlowupWord, str]
) -> List[ComponentScaling]:
    a, b = Fraction(torus[0]), Fraction(torus[1])
    nus = chain_valuations(word)
    out: List[ComponentScaling] = []
    for pos in range(len(nus) - 1):
        det = _det(nus[pos], nus[pos + 1])
        if det not in (1, -1):
            raise InvariantViolation(f"adjacent components C_{pos + 2}, C_{pos + 3} have determinant {det}")
        p, q = nus[pos][1] * det, -nus[pos][0] * det
        factor = _monomial(a, b, (p, q)) if a and b else None
        out.append(ComponentScaling(pos + 2, p, q, factor))
    for i, first in enumerate(out):
        for second in out[i + 1:]:
            if first.p * second.q - second.p * first.q == 0:
                raise InvariantViolation(f"C_{first.index} and C_{second.index} scale alike")
    return out


# ============================================================================
# Feathers
# ============================================================================


@dataclass(frozen=True)
class FeatherMap:
    """z -> scale * z + translation on the feather coordinate."""

    scale: Fraction
    translation: sympy.Expr

    def fixes_atom(self) -> bool:
        return sympy.simplify(self.translation) == 0

    def __call__(self, z):
        return _rational(self.scale) * z + self.translation


def feather_action(form: LiftForm, gamma: CStarPoint) -> FeatherMap:
    scale = form.alpha / form.beta
    if form.l >= 2:
        return FeatherMap(scale, sympy.Integer(0))
    g = gamma.to_sympy()
    value = sum(
        (_rational(c) * g**i for i, c in form.R.restrict_v0().items()),
        sympy.Integer(0),
    )
    shift = _rational(scale) * g ** (form.k + 1) * value
    return FeatherMap(scale, sympy.expand(shift))


def exceptional_translation(a: RationalLike, gamma: Union[CStarPoint, RationalLike], p: int) -> Fraction:
    """Translation p * a * gamma induced on a feather over an exceptional component."""
    if isinstance(gamma, CStarPoint):
        gamma = gamma.real_value()
    return p * Fraction(a) * Fraction(gamma)


# ============================================================================
# Chart exponents against exceptionality, and the correspondence fibration
# ============================================================================


@dataclass(frozen=True)
class Claim3Row:
    component: int
    k: int
    l: int
    exceptional: bool

    @property
    def holds(self) -> bool:
        return (self.l >= 2) == (not self.exceptional)


def verify_claim3(div: ExtendedDivisor) -> Tuple[Claim3Row, ...]:
    """Compare l >= 2 with non-exceptionality for C_3, ..., C_{n-1}."""
    div.require_condition_star()
    tail = div.pre_feather_tail()
    order = creation_order(tail)
    word = words_for_order(order)[0]
    nus = chain_valuations(word)
    exceptional = exceptional_components(tail)
    rows = []
    for j in range(3, div.n):
        left, right = nus[j - 2], nus[j - 1]
        k, l = lift_word_exponents(creation_path(left, right))
        if l != left[1] - left[0]:
            raise InvariantViolation(f"C_{j}: chart exponent l = {l}, valuation {left[1] - left[0]}")
        rows.append(Claim3Row(j, k, l, j in exceptional))
    failed = [row.component for row in rows if not row.holds]
    if failed:
        logger.warning("l >= 2 disagrees with exceptionality on components %s of %s", failed, div.chain)
    return tuple(rows)


def correspondence_check(
    m: int, basepoints: Union[PointSet, Iterable[RationalLike]], a: RationalLike
) -> Tuple[Fraction, Fraction]:
    """Where the correspondence fibration meets the new component: (1/a, 0)."""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    a = Fraction(a)
    if a == 0:
        raise CorrespondenceError("a must be non-zero")
    if isinstance(basepoints, PointSet):
        values = [p.real_value() for p in basepoints]
    else:
        values = [Fraction(p) for p in basepoints]
    t, s = sympy.symbols("t s")
    x_prev = t**m * _rational(a) * reduce(operator.mul, (t - _rational(ai) for ai in values), sympy.Integer(1))
    y_prev = 1 / t
    w0, z0 = 1 / x_prev, y_prev
    w, z = w0 / z0 ** (m + len(values)), z0
    point = []
    for expr in (w, z):
        local = sympy.cancel(expr.subs(t, 1 / s))
        _, den = sympy.fraction(local)
        if den.subs(s, 0) == 0:
            raise CorrespondenceError(f"{local} has a pole at s = 0")
        value = sympy.nsimplify(local.subs(s, 0))
        if not value.is_Rational:
            raise CorrespondenceError(f"non-rational limit {value}")
        point.append(Fraction(int(value.p), int(value.q)))
    return point[0], point[1]
