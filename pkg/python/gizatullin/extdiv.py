"""
Extended divisors: a standard boundary chain with feathers attached.

Components of the chain are C_0, ..., C_n. A feather is a pendant chain
(bridge curve plus an optional tail) attached to some C_i with i >= 2 at
a point of C_i minus its neighbours, recorded as a ``CStarPoint``. The
l-th feather on C_i (in input order) carries the label (i, l).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .configinv import CStarPoint, PointSet
from .errors import ConditionStarError, InvariantViolation, NonSmoothError
from .zigzag import WeightedChain, as_chain, exceptional_components, is_realizable

logger = logging.getLogger(__name__)

Label = Tuple[int, int]


@dataclass(frozen=True)
class Feather:
    component: int
    point: CStarPoint
    bridge: int = -1
    tail: Tuple[int, ...] = ()
    mother: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tail", tuple(self.tail))

    @property
    def is_irreducible(self) -> bool:
        return not self.tail

    @property
    def is_ak(self) -> bool:
        """Bridge -1 followed by (-2)-curves only."""
        return self.bridge == -1 and all(w == -2 for w in self.tail)

    @property
    def mother_component(self) -> int:
        return self.component if self.mother is None else self.mother


@dataclass(frozen=True, order=True)
class Diagnostic:
    code: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.where}: {self.message} [{self.code}]"


class Tau(str, Enum):
    STAR = "star"
    PLUS = "plus"


@dataclass(frozen=True)
class ComponentType:
    """Tags tau_2, ..., tau_n."""

    tags: Tuple[Tau, ...]

    def __getitem__(self, index: int) -> Tau:
        if not 2 <= index < len(self.tags) + 2:
            raise IndexError(f"no component C_{index}")
        return self.tags[index - 2]

    def indices(self, tau: Tau) -> Tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.tags, start=2) if t is tau)

    def reversed(self) -> "ComponentType":
        return ComponentType(tuple(reversed(self.tags)))


@dataclass(frozen=True)
class DivisorSkeleton:
    """What survives of a divisor under reversion without the reversion map.

    ``classes[i]`` is A_i up to C*-scaling, represented by A_i itself and
    therefore excluded from equality.
    """

    chain: WeightedChain
    r: Tuple[int, ...]
    tau: ComponentType
    classes: Dict[int, PointSet] = field(default_factory=dict, compare=False)

    def pre_feather_tail(self) -> Tuple[int, ...]:
        return tuple(w + r for w, r in zip(self.chain.tail, self.r))

    def reversed(self) -> "DivisorSkeleton":
        """The skeleton of the reversed divisor; C_i moves to C_{n+2-i}."""
        n = len(self.chain) - 1
        return DivisorSkeleton(
            WeightedChain(self.chain.weights[:2] + tuple(reversed(self.chain.tail))),
            tuple(reversed(self.r)),
            self.tau.reversed(),
            {n + 2 - i: points for i, points in self.classes.items()},
        )


@dataclass(frozen=True)
class ExtendedDivisor:
    chain: WeightedChain
    feathers: Tuple[Feather, ...] = ()
    expect_smooth: Optional[bool] = None
    expect_condition_star: Optional[bool] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "chain", as_chain(self.chain))
        object.__setattr__(self, "feathers", tuple(self.feathers))

    @property
    def n(self) -> int:
        return self.chain.n

    def dual_index(self, i: int) -> int:
        return self.n + 2 - i

    def r(self, i: int) -> int:
        return sum(1 for f in self.feathers if f.component == i)

    @property
    def r_vector(self) -> Tuple[int, ...]:
        """(r_2, ..., r_n)."""
        return tuple(self.r(i) for i in range(2, self.n + 1))

    def feathered_indices(self) -> Tuple[int, ...]:
        return tuple(sorted({f.component for f in self.feathers}))

    def labelled(self) -> List[Tuple[Label, Feather]]:
        seen: Dict[int, int] = {}
        out = []
        for f in self.feathers:
            seen[f.component] = seen.get(f.component, 0) + 1
            out.append(((f.component, seen[f.component]), f))
        return out

    def labels(self) -> Tuple[Label, ...]:
        return tuple(label for label, _ in self.labelled())

    def points(self, i: int, tail_length: Optional[int] = None) -> PointSet:
        """A_i, or A_{i,s} when ``tail_length`` is given."""
        return PointSet(
            frozenset(
                f.point
                for f in self.feathers
                if f.component == i and (tail_length is None or len(f.tail) == tail_length)
            )
        )

    def tail_lengths(self, i: int) -> Tuple[int, ...]:
        return tuple(sorted({len(f.tail) for f in self.feathers if f.component == i}))

    def pre_feather_tail(self) -> Tuple[int, ...]:
        """v_i = w_i + r_i for i = 2..n."""
        return tuple(w + r for w, r in zip(self.chain.tail, self.r_vector))

    def is_smooth(self) -> bool:
        return all(f.is_irreducible for f in self.feathers)

    def is_ak(self) -> bool:
        return all(f.is_ak for f in self.feathers)

    # ------------------------------------------------------------------
    # Graph views
    # ------------------------------------------------------------------

    def tree(self) -> nx.Graph:
        """D_ext as a networkx tree with a ``weight`` attribute per vertex.

        Chain vertices are ("C", i); the bridge of feather (i, l) is
        ("F", i, l, 0) and its tail curves ("F", i, l, 1), ...
        """
        g = nx.Graph()
        for i, w in enumerate(self.chain.weights):
            g.add_node(("C", i), weight=w)
            if i:
                g.add_edge(("C", i - 1), ("C", i))
        for (i, l), f in self.labelled():
            prev: Hashable = ("C", i)
            for k, w in enumerate((f.bridge,) + f.tail):
                node = ("F", i, l, k)
                g.add_node(node, weight=w)
                g.add_edge(prev, node)
                prev = node
        return g

    def sub_divisor(self, i: int) -> nx.Graph:
        """D_ext^{>= i}: components C_j, j >= i, with the feathers attached to them."""
        tree = self.tree()
        keep = [v for v in tree.nodes if v[1] >= i]
        return tree.subgraph(keep).copy()

    # ------------------------------------------------------------------
    # Condition (*)
    # ------------------------------------------------------------------

    def condition_star_violations(self) -> List[Diagnostic]:
        out = []
        n = self.n
        if n < 3:
            out.append(Diagnostic("condition-star", "chain", f"condition (*) needs n >= 3, got n = {n}"))
            return out
        for i in (2, n):
            if self.r(i):
                out.append(Diagnostic("condition-star", f"C_{i}", f"no feather may be attached to C_{i}"))
        if not is_realizable(self.pre_feather_tail()):
            out.append(
                Diagnostic(
                    "unrealizable",
                    "chain",
                    f"pre-feather weights {list(self.pre_feather_tail())} are not obtainable by inner blowups",
                )
            )
        if not out:
            tau = classify_components(self)
            for i in range(3, n):
                if tau[i] is not Tau.STAR:
                    out.append(Diagnostic("condition-star", f"C_{i}", f"C_{i} is a +-component"))
        return out

    def satisfies_condition_star(self) -> bool:
        return not self.condition_star_violations()

    def require_condition_star(self) -> None:
        problems = self.condition_star_violations()
        if problems:
            raise ConditionStarError("condition (*) violated: " + "; ".join(str(p) for p in problems))

    def require_smooth(self) -> None:
        if not self.is_smooth():
            bad = [label for label, f in self.labelled() if f.tail]
            raise NonSmoothError(f"feathers {bad} are reducible; the surface is singular")


def validate(div: ExtendedDivisor) -> List[Diagnostic]:
    """Check the divisor invariants; an empty list means valid."""
    out: List[Diagnostic] = []
    chain = div.chain
    if len(chain) < 3:
        message = f"an extended divisor needs n >= 2 (components C_0, C_1, C_2); got {chain} with n = {len(chain) - 1}"
        if chain.is_standard():
            message += "; standard zigzags shorter than [[0, 0, 0]] carry no feathers"
        out.append(Diagnostic("chain-length", "chain", message))
    elif chain.m_standard_index() is None:
        out.append(Diagnostic("chain-form", "chain", f"chain {chain} is not m-standard"))
    n = div.n
    seen: Dict[int, set] = {}
    for (i, l), f in div.labelled():
        where = f"F_{i},{l}"
        if not 2 <= i <= n:
            out.append(Diagnostic("attach-range", where, f"attach component must lie in 2..{n}, got {i}"))
        if f.bridge > -1:
            out.append(Diagnostic("bridge-weight", where, f"bridge weight <= -1 required, got {f.bridge}"))
        for w in f.tail:
            if w > -2:
                out.append(Diagnostic("tail-weight", where, f"tail weight <= -2 required, got {w}"))
        if f.mother is not None and not 2 <= f.mother <= n:
            out.append(Diagnostic("mother-range", where, f"mother component must lie in 2..{n}, got {f.mother}"))
        if f.point in seen.setdefault(i, set()):
            out.append(Diagnostic("coincident-points", where, f"coincident base points on C_{i} at {f.point}"))
        seen[i].add(f.point)
    if div.expect_smooth and not div.is_smooth():
        out.append(Diagnostic("not-smooth", "feathers", "divisor flagged smooth has reducible feathers"))
    if div.expect_condition_star and not out:
        out.extend(div.condition_star_violations())
    return out


def is_contractible(subdivisor: Union[nx.Graph, Sequence[int]]) -> bool:
    """Whether iterated blowdowns of (-1)-vertices of degree <= 2 empty the tree.

    (-1)-vertices of degree >= 3 are never contracted.
    """
    if isinstance(subdivisor, nx.Graph):
        g = subdivisor.copy()
    else:
        g = nx.path_graph(len(subdivisor))
        nx.set_node_attributes(g, dict(enumerate(subdivisor)), "weight")
    while g.number_of_nodes():
        for v in list(g.nodes):
            if g.nodes[v]["weight"] == -1 and g.degree(v) <= 2:
                break
        else:
            return False
        neighbours = list(g.neighbors(v))
        for u in neighbours:
            g.nodes[u]["weight"] += 1
        if len(neighbours) == 2:
            g.add_edge(*neighbours)
        g.remove_node(v)
    return True


def classify_components(div: ExtendedDivisor) -> ComponentType:
    """tau_i for i = 2..n; C_2 and C_n are always +-components."""
    n = div.n
    tags = []
    for i in range(2, n + 1):
        if i in (2, n):
            tags.append(Tau.PLUS)
            continue
        upper = div.sub_divisor(i + 1)
        star = not is_contractible(upper)
        if star:
            for (j, l), f in div.labelled():
                if j >= i + 1 and f.mother_component < i:
                    without = upper.copy()
                    without.remove_nodes_from([v for v in upper.nodes if v[:3] == ("F", j, l)])
                    if is_contractible(without):
                        star = False
                        break
        tags.append(Tau.STAR if star else Tau.PLUS)
    return ComponentType(tuple(tags))


def reversed_divisor_data(div: ExtendedDivisor) -> DivisorSkeleton:
    """Weights, feather counts, tags and point classes of D^v.

    Exact reversed base points are not available; ``classes`` holds the
    representative A_{i^v} of the class of A^v_i.
    """
    div.require_condition_star()
    n = div.n
    chain = WeightedChain(div.chain.weights[:2] + tuple(reversed(div.chain.tail)))
    r = tuple(reversed(div.r_vector))
    tau = classify_components(div).reversed()
    classes = {i: div.points(div.dual_index(i)) for i in range(2, n + 1) if div.r(div.dual_index(i))}
    return DivisorSkeleton(chain, r, tau, classes)


def skeleton(div: ExtendedDivisor) -> DivisorSkeleton:
    classes = {i: div.points(i) for i in div.feathered_indices()}
    return DivisorSkeleton(div.chain, div.r_vector, classify_components(div), classes)


def exceptional_set(div: Union[ExtendedDivisor, DivisorSkeleton]) -> FrozenSet[int]:
    """E_D from the pre-feather weights, checking the symmetric-divisor invariant."""
    tail = div.pre_feather_tail()
    result = exceptional_components(tail)
    n = len(tail) + 1
    r = div.r_vector if isinstance(div, ExtendedDivisor) else div.r
    symmetric = div.chain.tail == div.chain.tail[::-1] and r == r[::-1]
    if symmetric and n >= 4 and n // 2 + 1 not in result:
        raise InvariantViolation(f"middle component C_{n // 2 + 1} of a symmetric divisor is not exceptional")
    return result


def reversed_exceptional_set(div: ExtendedDivisor) -> FrozenSet[int]:
    """{j : j^v in E_{D^v}}, i.e. the exceptional set of D^v read in D's indices."""
    reversed_set = exceptional_set(reversed_divisor_data(div))
    return frozenset(div.dual_index(j) for j in reversed_set)


@dataclass(frozen=True)
class MatchingAtom:
    """The point F_{i,l} meets its dual feather; no coordinates are kept."""

    label: Label

    def __str__(self) -> str:
        return f"({self.label[0]},{self.label[1]})"


def matching_pairs(div: ExtendedDivisor) -> List[Tuple[Label, Label, MatchingAtom]]:
    """One atom per feather; the dual feather shares the label."""
    div.require_smooth()
    return [(label, label, MatchingAtom(label)) for label in div.labels()]
