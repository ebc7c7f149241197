"""
Invariant subsets of a smooth Gizatullin surface under Aut(V).

Every feather F_{i,l} meets its dual feather in a single matching atom.
Atoms on non-exceptional components split into the invariant sets O_{i,j},
one per orbit of the stabilizer G(A_i); everything else is the big orbit
candidate O_0.

For [[0,0,-2,-3,-2,-2,-3]] with one feather on C_4 the single atom is a
fixed point and the surface has exactly two orbits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from .configinv import SymmetryData, self_reversal_witness, symmetry_group
from .errors import InvariantViolation
from .extdiv import ExtendedDivisor, Label, MatchingAtom, exceptional_set, reversed_exceptional_set

logger = logging.getLogger(__name__)

PartKey = Tuple[int, int]


class Verdict(str, Enum):
    TRANSITIVE = "Transitive"
    NOT_TRANSITIVE = "NotTransitive"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class OrbitReport:
    """The sets O_{i,j} (keyed by (i, j)), the fixed atoms and the verdict."""

    atoms: Tuple[MatchingAtom, ...]
    parts: Dict[PartKey, FrozenSet[MatchingAtom]]
    o0: str
    fixed_points: FrozenSet[MatchingAtom]
    verdict: Verdict
    exact: bool
    exceptional: FrozenSet[int] = frozenset()
    self_reversed: bool = False
    symmetry: Dict[int, SymmetryData] = field(default_factory=dict, compare=False)

    @property
    def orbit_count(self) -> Optional[int]:
        """Number of Aut(V)-orbits when the parts are exactly the small orbits."""
        return 1 + len(self.parts) if self.exact else None

    def summary(self) -> str:
        orbits = f"{self.orbit_count} (exact)" if self.exact else "unknown"
        return f"verdict: {self.verdict.value}; fixed points: {len(self.fixed_points)}; orbits: {orbits}"


def _part_name(key: PartKey) -> str:
    return f"O_{{{key[0]},{key[1]}}}"


def _o0_descriptor(parts: Dict[PartKey, FrozenSet[MatchingAtom]]) -> str:
    if not parts:
        return "V"
    return "V \\ (" + " u ".join(_part_name(key) for key in sorted(parts)) + ")"


def _exceptional_union(div: ExtendedDivisor) -> FrozenSet[int]:
    return exceptional_set(div) | reversed_exceptional_set(div)


def _atoms_by_component(div: ExtendedDivisor) -> Dict[int, List[Tuple[Label, MatchingAtom]]]:
    out: Dict[int, List[Tuple[Label, MatchingAtom]]] = {}
    for (i, l), f in div.labelled():
        out.setdefault(i, []).append(((i, l), MatchingAtom((i, l))))
    return out


def orbit_decomposition(div: ExtendedDivisor) -> OrbitReport:
    div.require_smooth()
    div.require_condition_star()
    n = div.n
    exceptional = _exceptional_union(div)
    witness = self_reversal_witness(div)
    points_of = {label: f.point for label, f in div.labelled()}
    by_component = _atoms_by_component(div)
    atoms = tuple(atom for i in sorted(by_component) for _, atom in by_component[i])

    parts: Dict[PartKey, FrozenSet[MatchingAtom]] = {}
    fixed: set = set()
    symmetry: Dict[int, SymmetryData] = {}

    for i in sorted(by_component):
        if i in exceptional:
            continue
        data = symmetry_group(div.points(i))
        symmetry[i] = data
        if witness is None:
            for j, orbit in enumerate(data.orbits, start=1):
                members = frozenset(atom for label, atom in by_component[i] if points_of[label] in orbit)
                parts[(i, j)] = members
            if data.d == 1:
                fixed.update(atom for _, atom in by_component[i])
            continue

        dual = div.dual_index(i)
        if i == dual:
            raise InvariantViolation(f"middle component C_{i} of a self-reversed divisor is not exceptional")
        if i > dual:
            # counted together with its partner
            continue
        if dual in exceptional:
            raise InvariantViolation(f"C_{i} is not exceptional but its dual C_{dual} is")
        gamma = witness[i]
        for j, orbit in enumerate(data.orbits, start=1):
            image = {gamma * p for p in orbit}
            members = {atom for label, atom in by_component[i] if points_of[label] in orbit}
            members.update(atom for label, atom in by_component.get(dual, ()) if points_of[label] in image)
            parts[(i, j)] = frozenset(members)

    exact = sum(1 for i in range(2, n + 1) if div.r(i)) == 1
    if parts:
        verdict = Verdict.NOT_TRANSITIVE
    elif exact or all(i in exceptional for i in by_component):
        verdict = Verdict.TRANSITIVE
    else:
        verdict = Verdict.UNDETERMINED
    logger.debug("E = %s, parts = %s, verdict %s", sorted(exceptional), sorted(parts), verdict.value)
    return OrbitReport(
        atoms=atoms,
        parts=parts,
        o0=_o0_descriptor(parts),
        fixed_points=frozenset(fixed),
        verdict=verdict,
        exact=exact,
        exceptional=exceptional,
        self_reversed=witness is not None,
        symmetry=symmetry,
    )


@dataclass(frozen=True)
class ComplementBound:
    """Atoms that may lie outside the big orbit.

    ``cross_caveat`` is set when two distinct feathers exist: the points
    F_i n F_j^v with i != j are not described and may add to V \\ O.
    """

    atoms: FrozenSet[MatchingAtom]
    cross_caveat: bool

    def __iter__(self):
        return iter(sorted(self.atoms, key=lambda atom: atom.label))

    def __len__(self) -> int:
        return len(self.atoms)


def big_orbit_complement_bound(div: ExtendedDivisor) -> ComplementBound:
    div.require_smooth()
    atoms = frozenset(MatchingAtom(label) for label in div.labels())
    return ComplementBound(atoms, len(atoms) >= 2)


def feathers_on_exceptional_in_O(div: ExtendedDivisor) -> List[Label]:
    """Labels of the feathers whose points off D lie in the big orbit."""
    div.require_smooth()
    div.require_condition_star()
    exceptional = _exceptional_union(div)
    return [label for label in div.labels() if label[0] in exceptional]
