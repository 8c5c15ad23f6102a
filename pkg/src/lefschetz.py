"""
Global equivariant invariants
Group-ring traces, orbifold Lefschetz numbers, the group U^G(X), equivariant
Lefschetz classes, universal Euler characteristics and the character map
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy

from .burnside import BurnsideElement, class_labels
from .errors import VertexStabilizerMismatch
from .fingroup import (FiniteGroup, GroupInclusion, GSet, Subgroup, coset_space, orbits)
from .gcw import (CellularGMap, GCWComplex, RelativePair, fixed_subcomplex, incidence_number,
                  relative_pair)
from .utils import Number, format_fraction, format_terms

logger = logging.getLogger(__name__)

GroupRingElement = Dict[int, Fraction]


# Group-ring endomorphisms of sums of coset modules


def _ring_product(group: FiniteGroup, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> GroupRingElement:
    out: GroupRingElement = {}
    for x, u in a.items():
        for y, v in b.items():
            z = int(group.mul[x, y])
            out[z] = out.get(z, Fraction(0)) + u * v
    return {z: c for z, c in out.items() if c}


def _ring_sum(a: Mapping[int, Fraction], b: Mapping[int, Fraction], scale: Number = 1) -> GroupRingElement:
    out = dict(a)
    for z, c in b.items():
        out[z] = out.get(z, Fraction(0)) + scale * c
    return {z: c for z, c in out.items() if c}


class GroupRingEndomorphism:
    """
    An endomorphism u of the QG-module sum_j Q[G/H_j].

    entries[i][j] is a group-ring element w with u(1H_j) having component
    w.1H_i in Q[G/H_i].
    """

    def __init__(self, group: FiniteGroup, subgroups: Sequence[Subgroup],
                 entries: Sequence[Sequence[Mapping[int, Number]]]):
        self.group = group
        self.subgroups: Tuple[Subgroup, ...] = tuple(subgroups)
        m = len(self.subgroups)
        if len(entries) != m or any(len(row) != m for row in entries):
            raise ValueError(f"entries must form a {m}x{m} matrix")
        self.entries: Tuple[Tuple[GroupRingElement, ...], ...] = tuple(
            tuple({int(g): Fraction(c) for g, c in entry.items() if c} for entry in row) for row in entries
        )

    @property
    def size(self) -> int:
        return len(self.subgroups)

    @classmethod
    def identity(cls, group: FiniteGroup, subgroups: Sequence[Subgroup]) -> 'GroupRingEndomorphism':
        m = len(subgroups)
        return cls(group, subgroups, [[{0: 1} if i == j else {} for j in range(m)] for i in range(m)])

    def coset_image(self, i: int, j: int) -> Dict[int, Fraction]:
        """Component of u(1H_j) in Q[G/H_i], as coset index -> coefficient"""
        space = coset_space(self.group, self.subgroups[i])
        out: Dict[int, Fraction] = {}
        for g, c in self.entries[i][j].items():
            k = int(space.coset_of[g])
            out[k] = out.get(k, Fraction(0)) + c
        return {k: c for k, c in out.items() if c}

    def is_valid(self) -> bool:
        """Every u(1H_j) is left H_j-invariant"""
        for j, sub in enumerate(self.subgroups):
            for i in range(self.size):
                space = coset_space(self.group, self.subgroups[i])
                image = self.coset_image(i, j)
                for h in sub.elements:
                    moved = {int(space.gset.action[h, k]): c for k, c in image.items()}
                    if moved != image:
                        return False
        return True

    def _same_modules(self, other: 'GroupRingEndomorphism'):
        if not self.group.same_table(other.group) or [s.elements for s in other.subgroups] != \
                [s.elements for s in self.subgroups]:
            raise ValueError("endomorphisms act on different modules")

    def __add__(self, other: 'GroupRingEndomorphism') -> 'GroupRingEndomorphism':
        self._same_modules(other)
        return GroupRingEndomorphism(self.group, self.subgroups, [
            [_ring_sum(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def scale(self, factor: Number) -> 'GroupRingEndomorphism':
        return GroupRingEndomorphism(self.group, self.subgroups, [
            [{g: c * factor for g, c in entry.items()} for entry in row] for row in self.entries])

    def then(self, other: 'GroupRingEndomorphism') -> 'GroupRingEndomorphism':
        """other o self"""
        self._same_modules(other)
        m = self.size
        entries = []
        for k in range(m):
            row = []
            for j in range(m):
                acc: GroupRingElement = {}
                for i in range(m):
                    acc = _ring_sum(acc, _ring_product(self.group, self.entries[i][j], other.entries[k][i]))
                row.append(acc)
            entries.append(row)
        return GroupRingEndomorphism(self.group, self.subgroups, entries)

    def direct_sum(self, other: 'GroupRingEndomorphism') -> 'GroupRingEndomorphism':
        if not self.group.same_table(other.group):
            raise ValueError("direct sum over different groups")
        m, n = self.size, other.size
        entries = [[{} for _ in range(m + n)] for _ in range(m + n)]
        for i in range(m):
            for j in range(m):
                entries[i][j] = self.entries[i][j]
        for i in range(n):
            for j in range(n):
                entries[m + i][m + j] = other.entries[i][j]
        return GroupRingEndomorphism(self.group, self.subgroups + other.subgroups, entries)

    def induce(self, inclusion: GroupInclusion) -> 'GroupRingEndomorphism':
        """Q[K] tensor over Q[G]"""
        return GroupRingEndomorphism(
            inclusion.target, [inclusion.image(s) for s in self.subgroups],
            [[{inclusion(g): c for g, c in entry.items()} for entry in row] for row in self.entries])

    def restrict(self, sub: Subgroup) -> 'GroupRingEndomorphism':
        """
        Restrict to a subgroup H, splitting each Q[G/L] into the H-orbits of G/L.

        Returns:
            Endomorphism over sub.as_group
        """
        G = self.group
        summands = []  # per module: list of (orbit rep element, stabilizer local subgroup)
        locate = []  # per module: coset -> (orbit index, h with coset = h.rep)
        for L in self.subgroups:
            space = coset_space(G, L)
            where: Dict[int, Tuple[int, int]] = {}
            parts = []
            for r in range(space.gset.size):
                if r in where:
                    continue
                a = len(parts)
                stab = []
                for h in sub.elements:
                    c = int(space.gset.action[h, r])
                    if c not in where:
                        where[c] = (a, h)
                    if c == r:
                        stab.append(sub.local_index[h])
                parts.append((space.representatives[r], Subgroup(sub.as_group, tuple(sorted(stab)))))
            summands.append(parts)
            locate.append((space, where))

        index = {}
        subgroups = []
        for i, parts in enumerate(summands):
            for a, (_rep, stab) in enumerate(parts):
                index[(i, a)] = len(subgroups)
                subgroups.append(stab)
        entries: List[List[GroupRingElement]] = [[{} for _ in subgroups] for _ in subgroups]
        for j, parts in enumerate(summands):
            for b, (t, _stab) in enumerate(parts):
                col = index[(j, b)]
                for i in range(self.size):
                    space, where = locate[i]
                    for g, c in self.entries[i][j].items():
                        a, h = where[int(space.coset_of[int(G.mul[t, g])])]
                        row = index[(i, a)]
                        local = sub.local_index[h]
                        entries[row][col][local] = entries[row][col].get(local, Fraction(0)) + c
        return GroupRingEndomorphism(sub.as_group, subgroups, entries)


def trace_group_ring(u: GroupRingEndomorphism) -> Fraction:
    """
    The QG-trace: sum_i |H_i|^-1 times the coefficient of 1H_i in u(1H_i).

    Args:
        u: Endomorphism of a sum of coset modules

    Returns:
        Exact rational trace
    """
    total = Fraction(0)
    for i, sub in enumerate(u.subgroups):
        diagonal = u.entries[i][i]
        total += Fraction(sum((diagonal.get(h, Fraction(0)) for h in sub.elements), Fraction(0)), sub.order)
    return total


def chain_endomorphism(f: CellularGMap, p: int) -> GroupRingEndomorphism:
    """
    C_p(f) as an endomorphism of sum_j Q[G/G_{e_j}] over orbit representatives e_j.

    The cell g.e_j corresponds to the coset g G_{e_j}.
    """
    X = f.complex
    reps = [e for e in X.orbit_representatives if X.cells[e].dim == p]
    position = {e: j for j, e in enumerate(reps)}
    carrier_of: Dict[int, Tuple[int, int]] = {}
    for g in range(X.group.order - 1, -1, -1):
        for e in reps:
            carrier_of[int(X.action[g, e])] = (position[e], g)
    entries: List[List[GroupRingElement]] = [[{} for _ in reps] for _ in reps]
    for j, e in enumerate(reps):
        for cell, coeff in f.chain[e].items():
            i, g = carrier_of[cell]
            entries[i][j][g] = entries[i][j].get(g, Fraction(0)) + coeff
    return GroupRingEndomorphism(X.group, [X.stabilizer(e) for e in reps], entries)


def orbifold_lefschetz_via_trace(f: CellularGMap) -> Fraction:
    """sum_p (-1)^p tr_QG(C_p(f))"""
    return sum((Fraction((-1) ** p) * trace_group_ring(chain_endomorphism(f, p))
                for p in range(f.complex.dim + 1)), Fraction(0))


def orbifold_lefschetz(f: CellularGMap, pair: Optional[RelativePair] = None) -> Fraction:
    """
    Orbifold Lefschetz number by the incidence formula.

    Args:
        f: Cellular G-map
        pair: If given, the relative number of (C, C meet X^{>H}) over W H_x

    Returns:
        sum_p (-1)^p sum over orbits of |isotropy|^-1 inc(f, e)
    """
    X = f.complex
    if pair is None:
        return sum((Fraction((-1) ** X.cells[e].dim * incidence_number(f, e), X.stabilizer(e).order)
                    for e in X.orbit_representatives), Fraction(0))
    # W H_x acts freely on free cells
    return Fraction(sum((-1) ** X.cells[e].dim * incidence_number(f, e)
                        for e in pair.free_orbit_representatives()))


def orbifold_euler(X: GCWComplex) -> Fraction:
    """chi^QG(X) = sum_p (-1)^p sum over orbits |G_e|^-1"""
    return sum((Fraction((-1) ** X.cells[e].dim, X.stabilizer(e).order) for e in X.orbit_representatives),
               Fraction(0))


def nonequivariant_lefschetz(f: CellularGMap) -> int:
    """Ordinary Lefschetz number of the underlying map"""
    return sum((-1) ** f.complex.cells[e].dim * incidence_number(f, e) for e in range(f.complex.n_cells))


# U^G(X)


@dataclass(frozen=True)
class UGClass:
    """An isomorphism class [x: G/H -> X]: a subgroup class and a W H-orbit of components of X^H"""
    class_index: int
    subgroup: Subgroup
    component: int
    cells: Tuple[int, ...]
    label: str

    @property
    def base_cell(self) -> int:
        return self.cells[0]


class UGBasis:
    """The classes of Is Pi_0(G, X), ordered by descending subgroup class then least cell"""

    def __init__(self, complex_: GCWComplex, classes: Sequence[UGClass]):
        self.complex = complex_
        self.classes: Tuple[UGClass, ...] = tuple(classes)
        self.labels: Tuple[str, ...] = tuple(c.label for c in self.classes)
        self._lookup: Dict[Tuple[int, int], int] = {}
        for i, cls in enumerate(self.classes):
            fixed = fixed_subcomplex(complex_, cls.subgroup)
            for member in fixed.weyl_action.action[:, cls.component]:
                self._lookup[(cls.class_index, int(member))] = i

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i: int) -> UGClass:
        return self.classes[i]

    def index(self, class_index: int, component: int) -> int:
        return self._lookup[(class_index, component)]

    def locate(self, sub: Subgroup, cell: int) -> int:
        """
        Basis index of the class of (H, component of X^H containing cell).

        Args:
            sub: Subgroup H of the complex's group with H in G_cell
            cell: A cell of X^H
        """
        X = self.complex
        group = X.group
        k = group.class_index(sub)
        rep = group.subgroup_classes[k].representative
        g = group.conjugator(sub, rep)
        moved = int(X.action[g, cell])
        fixed = fixed_subcomplex(X, rep)
        return self.index(k, fixed.component_of[moved])

    def zero(self) -> 'UGElement':
        return UGElement(self, [0] * len(self))

    def basis_element(self, i: int) -> 'UGElement':
        coeffs = [0] * len(self)
        coeffs[i] = 1
        return UGElement(self, coeffs)


class UGElement:
    """A rational combination of basis classes; integral for Lambda^G and chi^G"""

    def __init__(self, basis, coeffs: Sequence[Number]):
        if len(coeffs) != len(basis.labels):
            raise ValueError(f"expected {len(basis.labels)} coefficients, got {len(coeffs)}")
        self.basis = basis
        self.coeffs: Tuple[Fraction, ...] = tuple(Fraction(c) for c in coeffs)

    def _check(self, other: 'UGElement'):
        if other.basis is not self.basis:
            raise ValueError("elements over different bases")

    def __add__(self, other: 'UGElement') -> 'UGElement':
        self._check(other)
        return UGElement(self.basis, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: 'UGElement') -> 'UGElement':
        self._check(other)
        return UGElement(self.basis, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> 'UGElement':
        return UGElement(self.basis, [-a for a in self.coeffs])

    def __mul__(self, factor: Number) -> 'UGElement':
        return UGElement(self.basis, [a * factor for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, UGElement) and other.basis is self.basis and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((id(self.basis), self.coeffs))

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_dict(self) -> Dict[str, str]:
        """Label -> reduced fraction string, over the whole basis"""
        return {label: format_fraction(c) for label, c in zip(self.basis.labels, self.coeffs)}

    def __str__(self) -> str:
        return format_terms([(c, label) for c, label in zip(self.coeffs, self.basis.labels) if c])

    def __repr__(self) -> str:
        return f"UGElement({self})"


def _class_label(X: GCWComplex, k: int, cells: Sequence[int]) -> str:
    return f"[{class_labels(X.group)[k]}:{X.label(cells[0])}]"


def enumerate_classes(X: GCWComplex) -> UGBasis:
    """
    One class per subgroup class (H) and W H-orbit of components of X^H.

    Args:
        X: Complex

    Returns:
        UGBasis in descending class order
    """
    classes = []
    for k in range(len(X.group.subgroup_classes) - 1, -1, -1):
        rep = X.group.subgroup_classes[k].representative
        fixed = fixed_subcomplex(X, rep)
        if not fixed.n_components:
            continue
        for orbit in orbits(fixed.weyl_action):
            cells = fixed.components[orbit.representative]
            classes.append(UGClass(k, rep, orbit.representative, cells, _class_label(X, k, cells)))
    logger.debug("U^G basis of %r: %d classes", X, len(classes))
    return UGBasis(X, classes)


def equivariant_lefschetz_class(f: CellularGMap, basis: Optional[UGBasis] = None) -> UGElement:
    """
    Lambda^G(f): at [x] the relative Lefschetz number of the pair at x, when
    f maps the component to itself, and zero otherwise.
    """
    basis = basis or enumerate_classes(f.complex)
    coeffs = []
    for cls in basis.classes:
        pair = relative_pair(f.complex, cls.subgroup, cls.component)
        if all(f.carrier[e] in pair.cells for e in pair.cells):
            coeffs.append(orbifold_lefschetz(f, pair))
        else:
            coeffs.append(Fraction(0))
    result = UGElement(basis, coeffs)
    assert result.is_integral()
    logger.debug("Lambda^G = %s", result)
    return result


def universal_euler(X: GCWComplex, basis: Optional[UGBasis] = None) -> UGElement:
    """
    chi^G(X) by counting equivariant cells: each G-orbit of p-cells of type
    G/H contributes (-1)^p to the class of the component of X^H it lies in.
    """
    basis = basis or enumerate_classes(X)
    coeffs = [0] * len(basis)
    for e in X.orbit_representatives:
        coeffs[basis.locate(X.stabilizer(e), e)] += (-1) ** X.cells[e].dim
    return UGElement(basis, coeffs)


def component_pair(basis: UGBasis, y: int) -> RelativePair:
    cls = basis.classes[y]
    return relative_pair(basis.complex, cls.subgroup, cls.component)


def component_orbifold_lefschetz(f: CellularGMap, basis: UGBasis, y: int) -> Optional[Fraction]:
    """L^{Q W K_y}(f restricted to X^K(y)), or None if f does not preserve that component"""
    pair = component_pair(basis, y)
    absolute = pair.absolute()
    restricted = pair.restrict_map(f, absolute)
    if restricted is None:
        return None
    return orbifold_lefschetz(restricted)


def component_orbifold_euler(basis: UGBasis, y: int) -> Fraction:
    """chi^{Q W K_y}(X^K(y))"""
    return orbifold_euler(component_pair(basis, y).absolute())


def mor_set(basis: UGBasis, y: int, x: int) -> GSet:
    """
    mor(y, x) as a W K_y-set.

    The cosets gH in (G/H)^K with g.C_x inside D_y, where y = (K, D_y) and
    x = (H, C_x); W K_y acts by left translation.
    """
    X = basis.complex
    G = X.group
    cls_y, cls_x = basis.classes[y], basis.classes[x]
    K, H = cls_y.subgroup, cls_x.subgroup
    fixed_k = fixed_subcomplex(X, K)
    space = coset_space(G, H)
    inv = G.inverse
    members = set(H.elements)
    target = cls_y.component
    cosets = []
    for c, r in enumerate(space.representatives):
        if not all(int(G.mul[G.mul[inv[r], k], r]) in members for k in K.elements):
            continue
        if fixed_k.component_of.get(int(X.action[r, cls_x.base_cell])) == target:
            cosets.append(c)

    stab = fixed_k.component_stabilizer(target)
    reps = [fixed_k.weyl.representatives[w] for w in stab.elements]
    position = {c: i for i, c in enumerate(cosets)}
    action = [[position[int(space.gset.action[n, c])] for c in cosets] for n in reps]
    return GSet(stab.as_group, len(cosets), np.array(action, dtype=np.int64).reshape(len(reps), len(cosets)))


class CharacterMatrix:
    """Exact rational matrix with rows and columns indexed by the same labels"""

    def __init__(self, labels: Sequence[str], entries: Sequence[Sequence[Number]]):
        self.labels: Tuple[str, ...] = tuple(labels)
        self.entries: Tuple[Tuple[Fraction, ...], ...] = tuple(tuple(Fraction(v) for v in row) for row in entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, CharacterMatrix) and other.entries == self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def rows(self) -> List[List[Fraction]]:
        return [list(row) for row in self.entries]

    def apply(self, coeffs: Sequence[Number]) -> Tuple[Fraction, ...]:
        """(M a)_y = sum_x M[y][x] a_x"""
        return tuple(sum((m * Fraction(a) for m, a in zip(row, coeffs)), Fraction(0)) for row in self.entries)

    def is_lower_unitriangular(self) -> bool:
        n = len(self.entries)
        return all(self.entries[i][i] == 1 for i in range(n)) and \
            all(self.entries[i][j] == 0 for i in range(n) for j in range(i + 1, n))

    def rank(self) -> int:
        if not self.entries:
            return 0
        return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row]
                             for row in self.entries]).rank()

    def format_rows(self) -> List[List[str]]:
        return [[label] + [format_fraction(v) for v in row] for label, row in zip(self.labels, self.entries)]


def character_entry(basis: UGBasis, y: int, x: int) -> Fraction:
    """ch^G([x])_{[y]}: sum over W K_y-orbits of mor(y, x) of |isotropy|^-1"""
    return sum((Fraction(1, o.isotropy_order) for o in orbits(mor_set(basis, y, x))), Fraction(0))


def character_map(X: GCWComplex, basis: Optional[UGBasis] = None) -> CharacterMatrix:
    """
    The character map ch^G as a matrix M[y][x] = ch^G([x])_{[y]}.

    Lower unitriangular in basis order.
    """
    basis = basis or enumerate_classes(X)
    n = len(basis)
    entries = [[character_entry(basis, y, x) for x in range(n)] for y in range(n)]
    return CharacterMatrix(basis.labels, entries)


def character(element: UGElement, matrix: Optional[CharacterMatrix] = None) -> Tuple[Fraction, ...]:
    """ch^G applied to an element"""
    matrix = matrix or character_map(element.basis.complex, element.basis)
    return matrix.apply(element.coeffs)


def ug_induction(inclusion: GroupInclusion, element: BurnsideElement, vertex: int, basis: UGBasis) -> UGElement:
    """
    Send [G_x/L] to the class of (L, component of X^L containing the vertex).

    Args:
        inclusion: G_x into G, with G_x the stabilizer of the vertex
        element: Burnside element over G_x
        vertex: The vertex x
        basis: U^G basis of the complex

    Raises:
        VertexStabilizerMismatch: If the image of G_x is not the vertex stabilizer
    """
    X = basis.complex
    if inclusion.image().elements != X.stabilizer(vertex).elements:
        raise VertexStabilizerMismatch(
            f"stabilizer {list(inclusion.image().elements)} is not the stabilizer of {X.label(vertex)}")
    coeffs = [Fraction(0)] * len(basis)
    for k, c in enumerate(element.coeffs):
        if c:
            rep = inclusion.source.subgroup_classes[k].representative
            coeffs[basis.locate(inclusion.image(rep), vertex)] += c
    return UGElement(basis, coeffs)


@dataclass(frozen=True)
class UGMap:
    """A homomorphism between U^G groups given on basis classes"""
    source: object
    target: object
    images: Tuple[int, ...]

    def __call__(self, element: UGElement) -> UGElement:
        coeffs = [Fraction(0)] * len(self.target.labels)
        for i, c in enumerate(element.coeffs):
            coeffs[self.images[i]] += c
        return UGElement(self.target, coeffs)


def ug_pushforward(f: CellularGMap, basis: Optional[UGBasis] = None) -> UGMap:
    """U^G(f): (H, C) goes to (H, component of X^H containing f(C))"""
    basis = basis or enumerate_classes(f.complex)
    images = tuple(basis.locate(cls.subgroup, f.carrier[cls.base_cell]) for cls in basis.classes)
    return UGMap(basis, basis, images)


def induced_class_map(source: UGBasis, target: UGBasis, inclusion: GroupInclusion) -> UGMap:
    """alpha_* from U^G(X) to U^K(K x_G X); cell e of X is cell e of the induced complex"""
    images = tuple(target.locate(inclusion.image(cls.subgroup), cls.base_cell) for cls in source.classes)
    return UGMap(source, target, images)
