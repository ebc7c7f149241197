"""
Oriented weighted linear chains.

A zigzag is encoded by the self-intersection numbers of its components,
read left to right. This module implements the elementary moves on such
chains, the search for standard forms, reversion, Hirzebruch-Jung
expansions, and the dictionary between chains and the blowup words that
create them from a single curve.

Example:
    >>> standardize([0, -1, -2, -3]).chain
    WeightedChain(weights=(0, 0, -2, -3))
    >>> generate_chain(BlowupWord.parse("ORR")).weights
    (-2, -2, -1, -3)
"""

from __future__ import annotations

import logging
import math
import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from . import config
from .errors import (
    ChainError,
    ExceptionalSetError,
    HJError,
    InvariantViolation,
    StandardizationError,
    UnrealizableError,
    WordError,
)

logger = logging.getLogger(__name__)

Weights = Tuple[int, ...]


# ============================================================================
# Chains
# ============================================================================


@dataclass(frozen=True)
class WeightedChain:
    weights: Weights

    def __post_init__(self) -> None:
        weights = tuple(self.weights)
        if not weights:
            raise ChainError("a chain needs at least one vertex")
        for w in weights:
            if isinstance(w, bool) or not isinstance(w, int):
                raise ChainError(f"chain weights must be integers, got {w!r}")
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[int]:
        return iter(self.weights)

    def __getitem__(self, index: int) -> int:
        return self.weights[index]

    def __str__(self) -> str:
        return "[[" + ", ".join(str(w) for w in self.weights) + "]]"

    @property
    def n(self) -> int:
        """Index of the last component C_n."""
        return len(self.weights) - 1

    @property
    def tail(self) -> Weights:
        """The weights w_2, ..., w_n."""
        return self.weights[2:]

    def is_standard(self) -> bool:
        w = self.weights
        if len(w) <= 3 and all(x == 0 for x in w):
            return True
        return len(w) >= 2 and w[0] == 0 and w[1] == 0 and all(x <= -2 for x in w[2:])

    def m_standard_index(self) -> Optional[int]:
        """Return m when the chain is [[0, -m, w_2, ..., w_n]] with w_i <= -2."""
        w = self.weights
        if len(w) < 2 or w[0] != 0 or w[1] > 0:
            return None
        if any(x > -2 for x in w[2:]):
            return None
        return -w[1]


ChainLike = Union[WeightedChain, Sequence[int]]


def as_chain(chain: ChainLike) -> WeightedChain:
    if isinstance(chain, WeightedChain):
        return chain
    return WeightedChain(tuple(chain))


class Direction(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Move:
    """One logged step of a standardization."""

    kind: str  # "shift" or "blowdown"
    vertex: int
    direction: Optional[Direction] = None

    def __str__(self) -> str:
        if self.direction is None:
            return f"{self.kind}@{self.vertex}"
        return f"{self.kind}@{self.vertex}:{self.direction.value}"


class StandardForm(NamedTuple):
    chain: WeightedChain
    log: Tuple[Move, ...]


def elementary_shift(chain: ChainLike, vertex: int, direction: Union[Direction, str]) -> WeightedChain:
    """Apply the blowup/blowdown pair at a weight-0 vertex.

    Shifting left lowers the left neighbour and raises the right one;
    shifting right does the opposite. At an end vertex only the existing
    neighbour changes.
    """
    c = as_chain(chain)
    direction = Direction(direction)
    w = list(c.weights)
    if not 0 <= vertex < len(w):
        raise ChainError(f"vertex {vertex} out of range for a chain of length {len(w)}")
    if w[vertex] != 0:
        raise ChainError(f"elementary shift needs weight 0 at vertex {vertex}, found {w[vertex]}")
    if direction is Direction.LEFT:
        lowered, raised = vertex - 1, vertex + 1
    else:
        lowered, raised = vertex + 1, vertex - 1
    if 0 <= lowered < len(w):
        w[lowered] -= 1
    if 0 <= raised < len(w):
        w[raised] += 1
    return WeightedChain(tuple(w))


def blow_down(weights: Sequence[int], vertex: int) -> Weights:
    """Contract the (-1)-vertex at ``vertex``; inner neighbours are joined."""
    w = list(weights)
    if w[vertex] != -1:
        raise ChainError(f"only (-1)-vertices can be blown down, vertex {vertex} has weight {w[vertex]}")
    if len(w) == 1:
        raise ChainError("cannot blow down the last remaining vertex")
    for nb in (vertex - 1, vertex + 1):
        if 0 <= nb < len(w):
            w[nb] += 1
    del w[vertex]
    return tuple(w)


def _shift_moves(weights: Weights) -> Iterator[Tuple[Move, Weights]]:
    chain = WeightedChain(weights)
    for i, w in enumerate(weights):
        if w != 0:
            continue
        for direction in (Direction.LEFT, Direction.RIGHT):
            moved = elementary_shift(chain, i, direction).weights
            if moved != weights:
                yield Move("shift", i, direction), moved


def _blowdown_moves(weights: Weights) -> Iterator[Tuple[Move, Weights]]:
    if len(weights) < 2:
        return
    for i, w in enumerate(weights):
        if w == -1:
            yield Move("blowdown", i), blow_down(weights, i)


class Standardizer:
    """Bounded breadth-first search for a standard form.

    Elementary shifts are tried first. Only if no standard chain of the
    original length is found are blowdowns of (-1)-vertices admitted too.
    The orientation of the chain is never flipped.

    Example:
        >>> Standardizer().max_depth(4).run([-2, 0, 0, -3]).chain.weights
        (0, 0, -2, -3)
    """

    def __init__(self) -> None:
        settings = config.Settings.from_env()
        self._max_depth = settings.max_depth
        self._max_states = settings.max_states

    def max_depth(self, depth: int) -> "Standardizer":
        if depth < 0:
            raise ValueError(f"max_depth must be non-negative, got {depth}")
        self._max_depth = depth
        return self

    def max_states(self, states: int) -> "Standardizer":
        if states <= 0:
            raise ValueError(f"max_states must be positive, got {states}")
        self._max_states = states
        return self

    def run(self, chain: ChainLike) -> StandardForm:
        start = as_chain(chain)
        if start.is_standard():
            return StandardForm(start, ())
        found, frontier = self._search(start.weights, with_blowdowns=False)
        if found is None:
            logger.debug("no shift-only standard form for %s, admitting blowdowns", start)
            found, frontier = self._search(start.weights, with_blowdowns=True)
        if found is None:
            preview = ", ".join(str(list(f)) for f in frontier[:5])
            raise StandardizationError(
                f"{start} is not reducible to standard form within depth {self._max_depth}"
                f" (frontier: {preview})",
                frontier,
            )
        weights, log = found
        return StandardForm(WeightedChain(weights), log)

    def _search(self, start: Weights, with_blowdowns: bool):
        parents: Dict[Weights, Optional[Tuple[Weights, Move]]] = {start: None}
        level = [start]
        for depth in range(self._max_depth):
            nxt: List[Weights] = []
            for state in level:
                moves = list(_shift_moves(state))
                if with_blowdowns:
                    moves.extend(_blowdown_moves(state))
                for move, target in moves:
                    if target in parents:
                        continue
                    parents[target] = (state, move)
                    if WeightedChain(target).is_standard():
                        logger.debug("standard form after %d moves, %d states", depth + 1, len(parents))
                        return (target, _unwind(parents, target)), []
                    nxt.append(target)
                    if len(parents) >= self._max_states:
                        logger.debug("state budget %d exhausted", self._max_states)
                        return None, sorted(nxt)
            if not nxt:
                return None, sorted(level)
            level = nxt
        return None, sorted(level)


def _unwind(parents, target: Weights) -> Tuple[Move, ...]:
    log: List[Move] = []
    node = target
    while parents[node] is not None:
        node, move = parents[node]
        log.append(move)
    return tuple(reversed(log))


def standardize(chain: ChainLike, max_depth: Optional[int] = None) -> StandardForm:
    standardizer = Standardizer()
    if max_depth is not None:
        standardizer.max_depth(max_depth)
    return standardizer.run(chain)


def reverse_chain(chain: ChainLike) -> WeightedChain:
    """[[0, 0, w_2, ..., w_n]] -> [[0, 0, w_n, ..., w_2]], same for 1-standard chains."""
    c = as_chain(chain)
    if not (c.is_standard() or c.m_standard_index() == 1):
        raise ChainError(f"reverse_chain expects a standard or 1-standard chain, got {c}")
    w = c.weights
    return WeightedChain(w[:2] + tuple(reversed(w[2:])))


def is_palindrome_tail(chain: ChainLike) -> bool:
    tail = as_chain(chain).tail
    return tail == tail[::-1]


# ============================================================================
# Hirzebruch-Jung continued fractions
# ============================================================================


def hj_value(expansion: Sequence[int]) -> Fraction:
    """Evaluate k_1 - 1/(k_2 - 1/(... - 1/k_n))."""
    if not expansion:
        raise HJError("empty Hirzebruch-Jung expansion")
    value = Fraction(expansion[-1])
    for k in reversed(expansion[:-1]):
        if value == 0:
            raise HJError(f"expansion {list(expansion)} divides by zero")
        value = k - 1 / value
    return value


@dataclass(frozen=True)
class HJFraction:
    numerator: int
    denominator: int
    expansion: Tuple[int, ...]

    @property
    def value(self) -> Fraction:
        return hj_value(self.expansion)

    @property
    def weights(self) -> Weights:
        return tuple(-k for k in self.expansion)


def hj_expand(num: int, den: int) -> HJFraction:
    """
    >>> hj_expand(5, 3).expansion
    (2, 3)
    """
    if not (isinstance(num, int) and isinstance(den, int)):
        raise HJError(f"numerator and denominator must be integers, got {num!r}/{den!r}")
    if not num > den >= 1:
        raise HJError(f"need num > den >= 1, got {num}/{den}")
    if math.gcd(num, den) != 1:
        raise HJError(f"{num}/{den} is not in lowest terms")
    expansion = []
    p, q = num, den
    while q:
        k = -(-p // q)
        expansion.append(k)
        p, q = q, k * q - p
    return HJFraction(num, den, tuple(expansion))


# ============================================================================
# Blowup words
# ============================================================================


_LETTER_RE = re.compile(r"O|L|R|J(\d+)")


@dataclass(frozen=True)
class Letter:
    kind: str  # "O", "L", "R" or "J"
    gap: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in ("O", "L", "R", "J"):
            raise WordError(f"unknown letter kind {self.kind!r}")
        if (self.kind == "J") != (self.gap is not None):
            raise WordError("only Jump letters carry a gap index")
        if self.gap is not None and self.gap < 0:
            raise WordError(f"gap index must be non-negative, got {self.gap}")

    @classmethod
    def jump(cls, gap: int) -> "Letter":
        return cls("J", gap)

    def __str__(self) -> str:
        return f"J{self.gap}" if self.kind == "J" else self.kind


OUTER_START = Letter("O")
LEFT = Letter("L")
RIGHT = Letter("R")


@dataclass(frozen=True)
class BlowupWord:
    """Blowup sequence: OuterStart, then inner blowups L, R or Jump(gap).

    The active intersection starts as C_2 with the curve of the outer
    blowup. L and R blow it up; after R the new curve is the left member
    of the next active pair, after L the right member. Jump(g) blows up
    the g-th intersection from the left and keeps the active pair.
    """

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        if letters and letters[0] != OUTER_START:
            raise WordError("a blowup word must start with OuterStart")
        if any(letter == OUTER_START for letter in letters[1:]):
            raise WordError("OuterStart may only appear as the first letter")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "BlowupWord":
        text = text.replace(" ", "").replace(",", "")
        letters = []
        pos = 0
        while pos < len(text):
            m = _LETTER_RE.match(text, pos)
            if m is None:
                raise WordError(f"malformed blowup word {text!r} at position {pos}")
            letters.append(Letter.jump(int(m.group(1))) if m.group(1) else Letter(m.group(0)))
            pos = m.end()
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(str(letter) for letter in self.letters)

    def inner(self) -> Tuple[Letter, ...]:
        """Letters after OuterStart."""
        return self.letters[1:]

    def initial_r_run(self) -> int:
        run = 0
        for letter in self.inner():
            if letter != RIGHT:
                break
            run += 1
        return run


@dataclass(frozen=True)
class GeneratedChain:
    """Result of replaying a blowup word from the single curve C_2.

    ``creation[p]`` is the letter index that created position ``p``
    (``None`` for C_2); ``centers[s]`` is the gap blown up by letter ``s``
    (``None`` for OuterStart). Position p is the component C_{p+2}.
    """

    weights: Weights
    creation: Tuple[Optional[int], ...]
    centers: Tuple[Optional[int], ...] = ()
    active_gap: Optional[int] = None

    def component_of_step(self, step: int) -> int:
        return self.creation.index(step) + 2


def generate_chain(word: Union[BlowupWord, str]) -> GeneratedChain:
    if isinstance(word, str):
        word = BlowupWord.parse(word)
    if not word.letters:
        return GeneratedChain((0,), (None,))
    weights = [-1, -1]
    creation: List[Optional[int]] = [None, 0]
    centers: List[Optional[int]] = [None]
    active = 0
    for step, letter in enumerate(word.letters[1:], start=1):
        if letter.kind in ("L", "R"):
            gap = active
        else:
            gap = letter.gap
            if gap >= len(weights) - 1:
                raise WordError(f"letter {step} jumps to gap {gap}, chain has {len(weights) - 1} gaps")
            if gap == active:
                raise WordError(f"letter {step} jumps to the active gap {gap}; use L or R")
        weights[gap] -= 1
        weights[gap + 1] -= 1
        weights.insert(gap + 1, -1)
        creation.insert(gap + 1, step)
        centers.append(gap)
        if letter == RIGHT:
            active = gap + 1
        elif letter.kind == "J" and gap < active:
            active += 1
    return GeneratedChain(tuple(weights), tuple(creation), tuple(centers), active)


# ============================================================================
# Recovering creation orders
# ============================================================================


def _contract_step(weights: Weights) -> Iterator[Tuple[int, Weights]]:
    """Reverse blowups available on a chain tail: (position, contracted tail)."""
    if len(weights) == 2:
        if weights == (-1, -1):
            yield 1, (0,)
        return
    for p in range(1, len(weights) - 1):
        if weights[p] == -1:
            yield p, blow_down(weights, p)


@lru_cache(maxsize=4096)
def _orders(tail: Weights) -> Tuple[Tuple[Optional[int], ...], ...]:
    if tail == (0,):
        return ((),)
    found = []
    for p, smaller in _contract_step(tail):
        center = None if smaller == (0,) else p - 1
        for prefix in _orders(smaller):
            found.append(prefix + (center,))
    return tuple(found)


def creation_orders(tail: Sequence[int]) -> Tuple[Tuple[Optional[int], ...], ...]:
    """All blowup orders producing ``tail``, as sequences of gap indices.

    The first entry of each order is ``None`` (the outer blowup).
    """
    return _orders(tuple(tail))


def words_for_order(order: Sequence[Optional[int]]) -> List[BlowupWord]:
    if not order:
        return [BlowupWord()]
    words: List[Tuple[Tuple[Letter, ...], int]] = [((OUTER_START,), 0)]
    for gap in order[1:]:
        grown = []
        for letters, active in words:
            if gap == active:
                grown.append((letters + (LEFT,), active))
                grown.append((letters + (RIGHT,), active + 1))
            else:
                grown.append((letters + (Letter.jump(gap),), active + 1 if gap < active else active))
        words = grown
    return [BlowupWord(letters) for letters, _ in words]


def recover_words(tail: Sequence[int]) -> FrozenSet[BlowupWord]:
    """Every blowup word whose replay yields ``tail``; empty if none does."""
    words = set()
    for order in creation_orders(tail):
        words.update(words_for_order(order))
    return frozenset(words)


class ContractionState(NamedTuple):
    survivors: Tuple[int, ...]
    weights: Weights


@lru_cache(maxsize=4096)
def _contraction_states(tail: Weights) -> Tuple[ContractionState, ...]:
    start = ContractionState(tuple(range(len(tail))), tail)
    seen = {start.survivors: start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for p, smaller in _contract_step(state.weights):
            survivors = state.survivors[:p] + state.survivors[p + 1:]
            if survivors not in seen:
                seen[survivors] = ContractionState(survivors, smaller)
                queue.append(seen[survivors])
    logger.debug("tail %s: %d contraction states", tail, len(seen))
    return tuple(seen.values())


def is_realizable(tail: Sequence[int]) -> bool:
    """Whether one outer blowup followed by inner blowups produces ``tail``."""
    tail = tuple(tail)
    if tail == (0,):
        return True
    return any(s.weights == (0,) for s in _contraction_states(tail))


def creation_order(tail: Sequence[int]) -> Optional[Tuple[Optional[int], ...]]:
    """One creation order of ``tail`` (the first in search order), or None."""
    tail = tuple(tail)
    order: List[Optional[int]] = []
    current = tail
    while current != (0,):
        for p, smaller in _contract_step(current):
            if is_realizable(smaller):
                order.append(None if smaller == (0,) else p - 1)
                current = smaller
                break
        else:
            return None
    return tuple(reversed(order))


def _r_run_pattern(m: int) -> Weights:
    return (-2,) * m + (-1, -(m + 1))


def exceptional_components(tail: Sequence[int]) -> FrozenSet[int]:
    """Indices of the components created by the longest initial R-run.

    ``tail`` holds the pre-feather weights v_2, ..., v_n. A creation order
    starts with an R-run of length m exactly when it passes through the
    intermediate tail [-2, ..., -2, -1, -(m+1)]; the components surviving
    there, apart from C_2 and the outer curve, are the exceptional ones.

    >>> sorted(exceptional_components((-2, -3, -1, -2, -3)))
    [3, 5]
    """
    tail = tuple(tail)
    if not is_realizable(tail):
        raise UnrealizableError(f"pre-feather tail {list(tail)} is not obtainable by inner blowups")
    if len(tail) < 2:
        return frozenset()
    best = -1
    candidates: set = set()
    for state in _contraction_states(tail):
        m = len(state.weights) - 2
        if m < best or state.weights != _r_run_pattern(m):
            continue
        labels = frozenset(p + 2 for p in state.survivors[1:-1])
        if m > best:
            best, candidates = m, set()
        candidates.add(labels)
    if len(candidates) != 1:
        raise ExceptionalSetError(
            f"maximal R-runs of length {best} on {list(tail)} disagree: "
            + "; ".join(str(sorted(c)) for c in sorted(candidates, key=sorted))
        )
    result = candidates.pop()
    n = len(tail) + 1
    if len(tail) >= 3 and n - 1 not in result:
        raise InvariantViolation(f"C_{n - 1} is not exceptional for {list(tail)}: {sorted(result)}")
    return result


def contract_chain(weights: Sequence[int], protect: int = 0) -> Weights:
    """Blow down (-1)-vertices at positions >= ``protect`` until none is left."""
    w = tuple(weights)
    while True:
        for p in range(protect, len(w)):
            if w[p] == -1 and len(w) > 1:
                w = blow_down(w, p)
                break
        else:
            return w
