"""
Finite group substrate
Multiplication-table groups, subgroups, conjugacy classes of subgroups,
Weyl groups, coset spaces and finite G-sets
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .constants import FULL_ASSOCIATIVITY_LIMIT, MAX_GROUP_ORDER
from .errors import GroupValidationError

logger = logging.getLogger(__name__)


class FiniteGroup:
    """A finite group given by its full multiplication table (identity at index 0)"""

    def __init__(self, mul: Sequence[Sequence[int]], name: str = "", validate: bool = True):
        """
        Initialize a finite group.

        Args:
            mul: order x order table, mul[a][b] is the index of the product a*b
            name: Display name
            validate: Check the group axioms
        """
        table = np.array(mul, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupValidationError(f"multiplication table must be square and nonempty, got shape {table.shape}")
        if table.shape[0] > MAX_GROUP_ORDER:
            raise GroupValidationError(f"group order {table.shape[0]} exceeds desk-scale bound {MAX_GROUP_ORDER}")
        table.flags.writeable = False
        self.mul = table
        self.order = int(table.shape[0])
        self.name = name or f"G{self.order}"
        if validate:
            self.validate()

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def same_table(self, other: 'FiniteGroup') -> bool:
        """True iff other has the same multiplication table (element for element)"""
        return self is other or (self.order == other.order and np.array_equal(self.mul, other.mul))

    def validate(self):
        """
        Check identity, inverses (Latin square) and associativity.

        Raises:
            GroupValidationError: If an axiom fails
        """
        n = self.order
        mul = self.mul
        if mul.min() < 0 or mul.max() >= n:
            raise GroupValidationError("table entries out of range")
        ident = np.arange(n)
        if not (np.array_equal(mul[0], ident) and np.array_equal(mul[:, 0], ident)):
            raise GroupValidationError("index 0 is not a two-sided identity")
        for axis in (0, 1):
            if not np.all(np.sort(mul, axis=axis) == (ident[:, None] if axis == 0 else ident[None, :])):
                raise GroupValidationError("table is not a Latin square (missing inverses)")

        if n <= FULL_ASSOCIATIVITY_LIMIT:
            left = mul[mul]
            right = mul[ident[:, None, None], mul[None, :, :]]
            if not np.array_equal(left, right):
                raise GroupValidationError("multiplication is not associative")
        else:
            # Light's test over a generating set
            for g in self.generating_set():
                if not np.array_equal(mul[mul[:, g], :], mul[:, mul[g, :]]):
                    raise GroupValidationError(f"multiplication is not associative (fails at generator {g})")

    @cached_property
    def inverse(self) -> np.ndarray:
        """Inverse of every element"""
        inv = np.argmin(self.mul, axis=1)
        inv.flags.writeable = False
        return inv

    def product(self, a: int, b: int) -> int:
        """Product a*b"""
        return int(self.mul[a, b])

    def conjugate_element(self, g: int, x: int) -> int:
        """g x g^-1"""
        return int(self.mul[self.mul[g, x], self.inverse[g]])

    def element_order(self, g: int) -> int:
        """Order of an element"""
        k, x = 1, g
        while x != 0:
            x = int(self.mul[x, g])
            k += 1
        return k

    def closure(self, generators: Iterable[int]) -> Tuple[int, ...]:
        """
        Subgroup generated by a set of elements.

        Args:
            generators: Element indices

        Returns:
            Sorted tuple of element indices
        """
        gens = sorted(set(int(g) for g in generators) - {0})
        elements = {0}
        frontier = [0]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = int(self.mul[x, g])
                    if y not in elements:
                        elements.add(y)
                        new.append(y)
            frontier = new
        return tuple(sorted(elements))

    def generating_set(self) -> List[int]:
        """Greedy generating set (at most log2(order) elements)"""
        gens: List[int] = []
        generated = {0}
        for g in range(self.order):
            if g not in generated:
                gens.append(g)
                generated = set(self.closure(gens))
                if len(generated) == self.order:
                    break
        return gens

    def subgroup(self, elements: Iterable[int]) -> 'Subgroup':
        """
        Wrap a set of elements as a Subgroup after checking closure.

        Raises:
            GroupValidationError: If the set is not a subgroup
        """
        elems = tuple(sorted(set(int(e) for e in elements)))
        if not elems or elems[0] != 0:
            raise GroupValidationError("subgroup must contain the identity")
        members = set(elems)
        for a in elems:
            if int(self.inverse[a]) not in members:
                raise GroupValidationError(f"subset not closed under inverses at {a}")
            for b in elems:
                if int(self.mul[a, b]) not in members:
                    raise GroupValidationError(f"subset not closed under multiplication at {a}*{b}")
        return Subgroup(self, elems)

    def generated_subgroup(self, generators: Iterable[int]) -> 'Subgroup':
        """Subgroup generated by the given elements"""
        return Subgroup(self, self.closure(generators))

    @cached_property
    def trivial_subgroup(self) -> 'Subgroup':
        return Subgroup(self, (0,))

    @cached_property
    def whole(self) -> 'Subgroup':
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def subgroups(self) -> Tuple['Subgroup', ...]:
        """All subgroups, by exhaustive joins of prime-power cyclic subgroups"""
        found: Dict[Tuple[int, ...], List[int]] = {(0,): []}
        seeds: Dict[Tuple[int, ...], int] = {}
        for g in range(1, self.order):
            if _is_prime_power(self.element_order(g)):
                cyc = self.closure([g])
                seeds.setdefault(cyc, g)
        for cyc, g in seeds.items():
            found.setdefault(cyc, [g])

        frontier = list(found.keys())
        while frontier:
            new = []
            for elems in frontier:
                members = set(elems)
                for cyc, g in seeds.items():
                    if g in members:
                        continue
                    gens = found[elems] + [g]
                    joined = self.closure(gens)
                    if joined not in found:
                        found[joined] = gens
                        new.append(joined)
            frontier = new

        result = tuple(Subgroup(self, elems) for elems in sorted(found, key=lambda e: (len(e), e)))
        logger.debug("%s: %d subgroups", self.name, len(result))
        return result

    @cached_property
    def subgroup_classes(self) -> Tuple['SubgroupClass', ...]:
        """Conjugacy classes of subgroups ordered by (order, canonical representative)"""
        assigned = set()
        classes = []
        for sub in self.subgroups:
            if sub.elements in assigned:
                continue
            members = sorted({self.conjugate_subgroup(g, sub).elements for g in range(self.order)})
            assigned.update(members)
            rep = Subgroup(self, members[0])
            classes.append(SubgroupClass(rep, tuple(Subgroup(self, m) for m in members)))
        classes.sort(key=lambda c: (c.representative.order, c.representative.elements))
        return tuple(classes)

    def conjugate_subgroup(self, g: int, sub: 'Subgroup') -> 'Subgroup':
        """g H g^-1"""
        return Subgroup(self, tuple(sorted(self.conjugate_element(g, h) for h in sub.elements)))

    def class_index(self, sub: 'Subgroup') -> int:
        """Index of the conjugacy class containing sub in subgroup_classes"""
        return self._class_lookup[sub.elements]

    @cached_property
    def _class_lookup(self) -> Dict[Tuple[int, ...], int]:
        lookup = {}
        for i, cls in enumerate(self.subgroup_classes):
            for member in cls.members:
                lookup[member.elements] = i
        return lookup

    def conjugator(self, sub: 'Subgroup', target: 'Subgroup') -> Optional[int]:
        """Least g with g sub g^-1 = target, or None"""
        for g in range(self.order):
            if self.conjugate_subgroup(g, sub).elements == target.elements:
                return g
        return None


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a FiniteGroup, as a sorted tuple of element indices"""
    parent: FiniteGroup = field(compare=False, repr=False)
    elements: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def is_subgroup_of(self, other: 'Subgroup') -> bool:
        return self._members <= other._members

    def index_in(self, other: 'Subgroup') -> int:
        return other.order // self.order

    @cached_property
    def local_index(self) -> Dict[int, int]:
        """Parent element index -> index in as_group()"""
        return {g: i for i, g in enumerate(self.elements)}

    @cached_property
    def as_group(self) -> FiniteGroup:
        """This subgroup as a FiniteGroup; element i corresponds to elements[i]"""
        mul = self.parent.mul
        table = [[self.local_index[int(mul[a, b])] for b in self.elements] for a in self.elements]
        return FiniteGroup(table, name=f"{self.parent.name}>{self.order}", validate=False)

    def inclusion(self) -> 'GroupInclusion':
        """The inclusion as_group() -> parent"""
        return GroupInclusion(self.as_group, self.parent, self.elements)

    def to_local(self, sub: 'Subgroup') -> 'Subgroup':
        """Express a subgroup of the parent contained in self as a subgroup of as_group()"""
        return Subgroup(self.as_group, tuple(sorted(self.local_index[g] for g in sub.elements)))


@dataclass(frozen=True)
class SubgroupClass:
    """Conjugacy class of subgroups with its canonical (lexicographically least) representative"""
    representative: Subgroup
    members: Tuple[Subgroup, ...]

    @property
    def order(self) -> int:
        return self.representative.order

    def __contains__(self, sub: Subgroup) -> bool:
        return any(m.elements == sub.elements for m in self.members)


@dataclass(frozen=True)
class GroupInclusion:
    """Injective homomorphism source -> target given by element images"""
    source: FiniteGroup
    target: FiniteGroup
    images: Tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.order or len(set(self.images)) != self.source.order:
            raise GroupValidationError("inclusion must be injective on all source elements")
        img = np.asarray(self.images)
        if not np.array_equal(img[self.source.mul], self.target.mul[img[:, None], img[None, :]]):
            raise GroupValidationError("inclusion is not a homomorphism")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def image(self, sub: Optional[Subgroup] = None) -> Subgroup:
        """Image of a subgroup (default: the whole source)"""
        elems = sub.elements if sub is not None else range(self.source.order)
        return Subgroup(self.target, tuple(sorted(self.images[g] for g in elems)))

    @property
    def index(self) -> int:
        return self.target.order // self.source.order


@dataclass(frozen=True)
class Orbit:
    """An orbit of a G-set"""
    representative: int
    elements: Tuple[int, ...]
    isotropy_order: int


@dataclass(frozen=True)
class GSet:
    """A finite left G-set; action[g] is the permutation of {0..size-1} induced by g"""
    group: FiniteGroup
    size: int
    action: np.ndarray = field(compare=False)

    def __post_init__(self):
        action = np.asarray(self.action, dtype=np.int64).reshape(self.group.order, self.size)
        action.flags.writeable = False
        object.__setattr__(self, 'action', action)

    def validate(self) -> List[str]:
        """Return a list of violations of the action axioms"""
        problems = []
        act = self.action
        if self.size and (act.min() < 0 or act.max() >= self.size):
            return ["action entries out of range"]
        if self.size and not np.array_equal(act[0], np.arange(self.size)):
            problems.append("identity does not act trivially")
        for g in range(self.group.order):
            if len(set(act[g].tolist())) != self.size:
                problems.append(f"element {g} does not act by a permutation")
        if not problems and self.size:
            if not np.array_equal(act[self.group.mul], act[:, act]):
                problems.append("action is not a homomorphism")
        return problems

    def __call__(self, g: int, x: int) -> int:
        return int(self.action[g, x])

    def isotropy(self, x: int) -> Tuple[int, ...]:
        """Stabilizer of a point, as element indices"""
        return tuple(int(g) for g in np.flatnonzero(self.action[:, x] == x))


def orbits(gset: GSet) -> List[Orbit]:
    """
    Orbit decomposition of a G-set.

    Args:
        gset: The G-set

    Returns:
        Orbits ordered by least element, each with its isotropy order
    """
    seen = np.zeros(gset.size, dtype=bool)
    result = []
    for x in range(gset.size):
        if seen[x]:
            continue
        members = np.unique(gset.action[:, x])
        seen[members] = True
        isotropy = int(np.count_nonzero(gset.action[:, x] == x))
        assert isotropy * len(members) == gset.group.order
        result.append(Orbit(x, tuple(int(m) for m in members), isotropy))
    return result


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets G/H with representatives (least element of each coset)"""
    gset: GSet
    representatives: Tuple[int, ...]
    coset_of: np.ndarray = field(compare=False)


def coset_space(group: FiniteGroup, sub: Subgroup) -> CosetSpace:
    """
    The G-set G/H of left cosets.

    Args:
        group: Ambient group
        sub: Subgroup H

    Returns:
        CosetSpace with coset 0 = H
    """
    coset_of = np.full(group.order, -1, dtype=np.int64)
    reps = []
    for g in range(group.order):
        if coset_of[g] < 0:
            coset_of[group.mul[g, list(sub.elements)]] = len(reps)
            reps.append(g)
    action = coset_of[group.mul[:, reps]]
    coset_of.flags.writeable = False
    return CosetSpace(GSet(group, len(reps), action), tuple(reps), coset_of)


@dataclass(frozen=True)
class WeylGroup:
    """W H = N H / H with the projection from the normalizer"""
    parent: FiniteGroup = field(repr=False)
    subgroup: Subgroup
    normalizer: Subgroup
    group: FiniteGroup = field(repr=False)
    projection: Dict[int, int] = field(compare=False, repr=False)
    representatives: Tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return self.group.order


def normalizer(group: FiniteGroup, sub: Subgroup) -> Subgroup:
    """N H by brute force"""
    return Subgroup(group, tuple(g for g in range(group.order)
                                 if group.conjugate_subgroup(g, sub).elements == sub.elements))


def weyl_group(group: FiniteGroup, sub: Subgroup) -> WeylGroup:
    """
    Weyl group N H / H.

    Args:
        group: Ambient group G
        sub: Subgroup H

    Returns:
        WeylGroup whose element i is the coset representatives[i] H
    """
    sub = group.subgroup(sub.elements)
    norm = normalizer(group, sub)
    projection: Dict[int, int] = {}
    reps: List[int] = []
    for n in norm.elements:
        if n not in projection:
            for h in sub.elements:
                projection[int(group.mul[n, h])] = len(reps)
            reps.append(n)
    table = [[projection[int(group.mul[a, b])] for b in reps] for a in reps]
    quotient = FiniteGroup(table, name=f"W({sub.order})<{group.name}", validate=False)
    assert quotient.order * sub.order == norm.order
    return WeylGroup(group, sub, norm, quotient, projection, tuple(reps))


def subgroup_classes(group: FiniteGroup) -> Tuple[SubgroupClass, ...]:
    """
    Conjugacy classes of subgroups.

    Ordered by subgroup order then canonical representative, so that (H_i)
    subconjugate to (H_j) implies i <= j.
    """
    return group.subgroup_classes


@dataclass(frozen=True)
class FixedCosets:
    """(G/H)^K with the restricted left action of N K"""
    cosets: Tuple[int, ...]
    representatives: Tuple[int, ...]
    normalizer: Subgroup
    action: GSet


def fixed_cosets(group: FiniteGroup, sub: Subgroup, fixer: Subgroup) -> FixedCosets:
    """
    Cosets gH with K gH = gH, i.e. g^-1 K g contained in H.

    Args:
        group: Ambient group G
        sub: Subgroup H
        fixer: Subgroup K

    Returns:
        FixedCosets; action is over fixer's normalizer (as_group indexing)
    """
    space = coset_space(group, sub)
    inv = group.inverse
    members = set(sub.elements)
    fixed = []
    for idx, r in enumerate(space.representatives):
        if all(int(group.mul[group.mul[inv[r], k], r]) in members for k in fixer.elements):
            fixed.append(idx)
    norm = normalizer(group, fixer)
    position = {c: i for i, c in enumerate(fixed)}
    action = [[position[int(space.gset.action[n, c])] for c in fixed] for n in norm.elements]
    gset = GSet(norm.as_group, len(fixed), np.array(action, dtype=np.int64).reshape(norm.order, len(fixed)))
    return FixedCosets(tuple(fixed), tuple(space.representatives[c] for c in fixed), norm, gset)


def is_subconjugate(group: FiniteGroup, sub: Subgroup, other: Subgroup) -> bool:
    """True iff some conjugate of sub is contained in other"""
    if other.order % sub.order:
        return False
    target = set(other.elements)
    return any(all(group.conjugate_element(g, h) in target for h in sub.elements)
               for g in range(group.order))


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


# Group constructors


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """
    Closure of a permutation group, converted to a multiplication table.

    Args:
        degree: Number of points permuted
        generators: Permutations as image lists of range(degree)

    Returns:
        FiniteGroup with the identity permutation at index 0
    """
    identity = tuple(range(degree))
    gens = []
    for perm in generators:
        perm = tuple(int(p) for p in perm)
        if sorted(perm) != list(identity):
            raise GroupValidationError(f"not a permutation of {degree} points: {perm}")
        gens.append(perm)

    index = {identity: 0}
    elements = [identity]
    frontier = [identity]
    while frontier:
        new = []
        for p in frontier:
            for s in gens:
                q = tuple(p[s[i]] for i in range(degree))
                if q not in index:
                    if len(elements) >= MAX_GROUP_ORDER:
                        raise GroupValidationError(f"generated group exceeds order {MAX_GROUP_ORDER}")
                    index[q] = len(elements)
                    elements.append(q)
                    new.append(q)
        frontier = new

    table = [[index[tuple(p[q[i]] for i in range(degree))] for q in elements] for p in elements]
    return FiniteGroup(table, name=name or f"Perm{degree}[{len(elements)}]")


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], name="1")


def cyclic_group(n: int) -> FiniteGroup:
    """Z/n with element k = k mod n"""
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}")


def direct_product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    """first x second with element (a, b) at index a * |second| + b"""
    m = second.order
    pairs = list(itertools.product(range(first.order), range(m)))
    table = [[int(first.mul[a, c]) * m + int(second.mul[b, d]) for (c, d) in pairs] for (a, b) in pairs]
    return FiniteGroup(table, name=f"{first.name}x{second.name}")


def symmetric_group(n: int) -> FiniteGroup:
    """S_n as a permutation group"""
    if n == 1:
        return trivial_group()
    transposition = [1, 0] + list(range(2, n))
    cycle = list(range(1, n)) + [0]
    return group_from_permutations(n, [transposition, cycle], name=f"S{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon (order 2n)"""
    rotation = [(i + 1) % n for i in range(n)]
    reflection = [(-i) % n for i in range(n)]
    return group_from_permutations(n, [rotation, reflection], name=f"D{2 * n}")
