"""
Exhaustive sweeps over blowup words.

Every chain reachable by at most K blowups is generated once, turned into
a divisor with canonical feathers where one exists, and run through a
property check. A check that fails records a counterexample instead of
raising, so one sweep reports every failure.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import config
from .configinv import CStarPoint
from .errors import GizatullinError
from .extdiv import ExtendedDivisor, Feather, exceptional_set, reversed_divisor_data, reversed_exceptional_set
from .serieslift import component_scaling_exponents, verify_claim3
from .zigzag import LEFT, OUTER_START, BlowupWord, Letter, Weights, generate_chain

logger = logging.getLogger(__name__)


def realizable_tails(max_blowups: int) -> List[Tuple[Weights, BlowupWord]]:
    """Distinct pre-feather tails of words with at most ``max_blowups`` letters.

    Each tail comes with the first word (in breadth-first gap order) that
    produces it.
    """
    if max_blowups < 1:
        return []
    start = BlowupWord((OUTER_START,))
    found: Dict[Weights, BlowupWord] = {generate_chain(start).weights: start}
    level = [(start, 0)]
    for _ in range(max_blowups - 1):
        grown = []
        for word, active in level:
            weights = generate_chain(word).weights
            for gap in range(len(weights) - 1):
                if gap == active:
                    letter, next_active = LEFT, active
                else:
                    letter, next_active = Letter.jump(gap), active + 1 if gap < active else active
                child = BlowupWord(word.letters + (letter,))
                tail = generate_chain(child).weights
                if tail not in found:
                    found[tail] = child
                    grown.append((child, next_active))
        level = grown
    logger.debug("%d distinct tails within %d blowups", len(found), max_blowups)
    return list(found.items())


def canonical_divisor(tail: Weights) -> Optional[ExtendedDivisor]:
    """Fewest feathers turning ``tail`` into a standard chain, or None.

    C_i receives r_i = max(0, v_i + 2) feathers at the unit points with
    angles j / (r_i + 1).
    """
    tail = tuple(tail)
    if len(tail) < 2 or tail[0] > -2 or tail[-1] > -2:
        return None
    weights: List[int] = [0, 0]
    feathers: List[Feather] = []
    for i, v in enumerate(tail, start=2):
        r = max(0, v + 2)
        weights.append(v - r)
        feathers.extend(Feather(i, CStarPoint(1, Fraction(j, r + 1))) for j in range(1, r + 1))
    div = ExtendedDivisor(tuple(weights), tuple(feathers))
    if not div.satisfies_condition_star():
        return None
    return div


@dataclass(frozen=True)
class CensusRow:
    length: int
    chains: int
    lr_words: int
    all_words: int


@dataclass(frozen=True)
class Counterexample:
    word: str
    message: str


@dataclass(frozen=True)
class SweepSummary:
    property: str
    max_blowups: int
    checked: int
    counterexamples: Tuple[Counterexample, ...] = ()
    census: Tuple[CensusRow, ...] = field(default=(), compare=False)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        return (
            f"{self.property} up to {self.max_blowups} blowups: "
            f"{self.checked} checked, {len(self.counterexamples)} counterexamples"
        )


def _check_claim3(tail: Weights, word: BlowupWord) -> Optional[str]:
    div = canonical_divisor(tail)
    if div is None:
        return None
    failed = [row.component for row in verify_claim3(div) if not row.holds]
    return f"l >= 2 disagrees with non-exceptionality on {failed}" if failed else None


def _check_odd_symmetry(tail: Weights, word: BlowupWord) -> Optional[str]:
    n = len(tail) + 1
    if n < 5 or n % 2 == 0 or tail != tail[::-1]:
        return None
    if canonical_divisor(tail) is None:
        return None
    return f"symmetric extended divisor with odd n = {n}"


def _check_exceptional(tail: Weights, word: BlowupWord) -> Optional[str]:
    div = canonical_divisor(tail)
    if div is None:
        return None
    forward = exceptional_set(div)
    found = forward | reversed_exceptional_set(div)
    if not found <= set(range(3, div.n)):
        return f"exceptional components {sorted(found)} leave C_3..C_{div.n - 1}"
    backward = reversed_divisor_data(div)
    twice = exceptional_set(backward.reversed())
    if twice != forward:
        return f"reversing twice moves E_D from {sorted(forward)} to {sorted(twice)}"
    r = div.r_vector
    if tail == tail[::-1] and r == r[::-1] and exceptional_set(backward) != forward:
        return f"symmetric divisor with E_D = {sorted(forward)} != E_Dv = {sorted(exceptional_set(backward))}"
    return None


def _check_determinants(tail: Weights, word: BlowupWord) -> Optional[str]:
    component_scaling_exponents((2, 3), word)
    return None


PROPERTIES: Dict[str, Callable[[Weights, BlowupWord], Optional[str]]] = {
    "claim3": _check_claim3,
    "odd-n-symmetry": _check_odd_symmetry,
    "exceptional-invariants": _check_exceptional,
    "determinants": _check_determinants,
}


def word_counts(max_blowups: int) -> Dict[int, Tuple[int, int]]:
    """Number of L/R-only words and of all words per length.

    Counted over the word tree by active gap: a word of length k has k
    gaps, L and R blow up the active one and every other gap takes a
    Jump, which shifts the active gap when it lies to its left.
    """
    counts: Dict[int, Tuple[int, int]] = {}
    lr: Dict[int, int] = {0: 1}
    every: Dict[int, int] = {0: 1}
    for k in range(1, max_blowups + 1):
        counts[k] = (sum(lr.values()), sum(every.values()))
        next_lr: Dict[int, int] = {}
        next_every: Dict[int, int] = {}
        for active, n in lr.items():
            for target in (active, active + 1):
                next_lr[target] = next_lr.get(target, 0) + n
        for active, n in every.items():
            targets = [active, active + 1]
            targets.extend(active + 1 if gap < active else active for gap in range(k) if gap != active)
            for target in targets:
                next_every[target] = next_every.get(target, 0) + n
        lr, every = next_lr, next_every
    return counts


def census(max_blowups: int, tails: Optional[List[Tuple[Weights, BlowupWord]]] = None) -> Tuple[CensusRow, ...]:
    """Distinct chains, L/R-only words and all words per word length."""
    tails = realizable_tails(max_blowups) if tails is None else tails
    chains: Dict[int, int] = {}
    for _, word in tails:
        chains[len(word)] = chains.get(len(word), 0) + 1
    words = word_counts(max_blowups)
    return tuple(CensusRow(k, chains.get(k, 0), *words[k]) for k in range(1, max_blowups + 1))


def enumerate_sweep(max_blowups: int, property_name: str, bound: Optional[int] = None) -> SweepSummary:
    if property_name not in PROPERTIES:
        raise ValueError(f"unknown property {property_name!r}; choose from {sorted(PROPERTIES)}")
    bound = config.Settings.from_env().max_blowups if bound is None else bound
    if max_blowups > bound:
        raise ValueError(f"max blowups {max_blowups} exceeds the configured bound {bound}")
    check = PROPERTIES[property_name]
    tails = realizable_tails(max_blowups)
    failures: List[Counterexample] = []
    for tail, word in tails:
        try:
            message = check(tail, word)
        except GizatullinError as exc:
            message = str(exc)
        if message is not None:
            logger.warning("%s fails on %s: %s", property_name, word, message)
            failures.append(Counterexample(str(word), message))
    return SweepSummary(property_name, max_blowups, len(tails), tuple(failures), census(max_blowups, tails))
