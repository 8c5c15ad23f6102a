"""
Finite proper G-CW complexes
Cells, cellular G-actions, fixed subcomplexes with their components and Weyl
actions, equivariant cellular self-maps, restriction and induction
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .constants import MAX_CELLS
from .errors import ComplexValidationError, InputFormatError, MapValidationError, ValidationReport
from .fingroup import (FiniteGroup, GroupInclusion, GSet, Subgroup, WeylGroup,
                       coset_space, orbits, weyl_group)

logger = logging.getLogger(__name__)

Chain = Dict[int, int]


@dataclass(frozen=True)
class Cell:
    """A cell: dimension, closure (all lower cells in its boundary) and algebraic boundary"""
    id: int
    dim: int
    faces: frozenset = frozenset()
    boundary: Tuple[Tuple[int, int], ...] = ()

    def boundary_chain(self) -> Chain:
        chain: Chain = {}
        for cell, coeff in self.boundary:
            chain[cell] = chain.get(cell, 0) + coeff
        return {c: v for c, v in chain.items() if v}


class GCWComplex:
    """A finite proper G-CW complex with cells numbered 0..n-1"""

    def __init__(self, group: FiniteGroup, cells: Sequence[Cell], action, labels: Optional[Sequence[str]] = None,
                 validate: bool = True):
        """
        Initialize a complex.

        Args:
            group: Acting finite group
            cells: Cells; cells[i].id must equal i
            action: order x n_cells array, action[g][e] = g.e
            labels: Optional display names of cells
            validate: Check all invariants and raise on violation
        """
        self.group = group
        self.cells: Tuple[Cell, ...] = tuple(cells)
        n = len(self.cells)
        table = np.array(action, dtype=np.int64).reshape(group.order, n)
        table.flags.writeable = False
        self.action = table
        self.labels: Tuple[str, ...] = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(n))
        self._fixed_cache: Dict[Tuple[Tuple[int, ...], bool], 'FixedSubcomplex'] = {}
        if validate:
            validate_complex(self).raise_if_invalid(ComplexValidationError)

    def __repr__(self) -> str:
        return f"GCWComplex({self.group.name}, cells={self.n_cells}, dim={self.dim})"

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @cached_property
    def dims(self) -> np.ndarray:
        return np.array([c.dim for c in self.cells], dtype=np.int64)

    @property
    def dim(self) -> int:
        return int(self.dims.max()) if self.n_cells else -1

    def cells_of_dim(self, p: int) -> List[int]:
        return [int(i) for i in np.flatnonzero(self.dims == p)]

    def label(self, cell: int) -> str:
        return self.labels[cell]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputFormatError(f"unknown cell {label!r}") from None

    @cached_property
    def gset(self) -> GSet:
        return GSet(self.group, self.n_cells, self.action)

    @cached_property
    def stabilizers(self) -> Tuple[Subgroup, ...]:
        return tuple(Subgroup(self.group, self.gset.isotropy(e)) for e in range(self.n_cells))

    def stabilizer(self, cell: int) -> Subgroup:
        """G_e"""
        return self.stabilizers[cell]

    def orbit(self, cell: int) -> Tuple[int, ...]:
        return tuple(sorted(set(int(c) for c in self.action[:, cell])))

    @cached_property
    def orbit_representatives(self) -> Tuple[int, ...]:
        """Least cell of every G-orbit"""
        return tuple(o.representative for o in orbits(self.gset))

    def translate(self, g: int, chain: Mapping[int, int]) -> Chain:
        """g.chain"""
        return {int(self.action[g, c]): v for c, v in chain.items()}

    def boundary(self, chain: Mapping[int, int]) -> Chain:
        """Algebraic boundary of a chain"""
        out: Chain = {}
        for c, v in chain.items():
            for face, coeff in self.cells[c].boundary:
                out[face] = out.get(face, 0) + v * coeff
        return {c: v for c, v in out.items() if v}

    def boundary_matrix(self, p: int, cells: Optional[Iterable[int]] = None) -> Tuple[np.ndarray, List[int], List[int]]:
        """
        Integer matrix of the boundary C_p -> C_{p-1}.

        Args:
            p: Dimension
            cells: Restrict to these cells (both rows and columns)

        Returns:
            (matrix, row cell ids, column cell ids)
        """
        allowed = set(cells) if cells is not None else None
        cols = [c for c in self.cells_of_dim(p) if allowed is None or c in allowed]
        rows = [c for c in self.cells_of_dim(p - 1) if allowed is None or c in allowed]
        row_index = {c: i for i, c in enumerate(rows)}
        matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for j, c in enumerate(cols):
            for face, coeff in self.cells[c].boundary:
                if face in row_index:
                    matrix[row_index[face], j] += coeff
        return matrix, rows, cols

    def fixed_subcomplex(self, sub: Subgroup, strict: bool = False) -> 'FixedSubcomplex':
        return fixed_subcomplex(self, sub, strict)


def validate_complex(X: GCWComplex) -> ValidationReport:
    """
    Check every invariant of a G-CW complex.

    Args:
        X: Complex to check

    Returns:
        ValidationReport listing violations
    """
    report = ValidationReport("complex")
    n = X.n_cells
    if n > MAX_CELLS:
        report.add(f"{n} cells exceed the desk-scale bound {MAX_CELLS}")
        return report
    for i, cell in enumerate(X.cells):
        if cell.id != i:
            report.add(f"cell at position {i} has id {cell.id}")
    if not report.ok:
        return report

    action_problems = X.gset.validate()
    if action_problems:
        report.extend(action_problems)
        return report

    dims = X.dims
    for cell in X.cells:
        if cell.dim < 0:
            report.add(f"cell {X.label(cell.id)} has negative dimension")
        for face in cell.faces:
            if not 0 <= face < n:
                report.add(f"cell {X.label(cell.id)} has unknown face {face}")
                continue
            if dims[face] >= cell.dim:
                report.add(f"face {X.label(face)} of {X.label(cell.id)} is not lower-dimensional")
            if not X.cells[face].faces <= cell.faces:
                report.add(f"faces of {X.label(cell.id)} are not downward closed at {X.label(face)}")
        for face, _coeff in cell.boundary:
            if face not in cell.faces:
                report.add(f"boundary of {X.label(cell.id)} meets {face} outside its faces")
            elif dims[face] != cell.dim - 1:
                report.add(f"boundary of {X.label(cell.id)} has a cell of dimension {dims[face]}")
    if not report.ok:
        return report

    for g in range(1, X.group.order):
        perm = X.action[g]
        for cell in X.cells:
            image = X.cells[int(perm[cell.id])]
            if image.dim != cell.dim:
                report.add(f"element {g} changes the dimension of {X.label(cell.id)}")
                continue
            if frozenset(int(perm[f]) for f in cell.faces) != image.faces:
                report.add(f"element {g} does not preserve faces of {X.label(cell.id)}")
            if X.translate(g, cell.boundary_chain()) != image.boundary_chain():
                report.add(f"element {g} does not preserve boundary coefficients of {X.label(cell.id)}")

    for p in range(1, X.dim + 1):
        for cell in X.cells_of_dim(p):
            if X.boundary(X.boundary({cell: 1})):
                report.add(f"boundary of boundary of {X.label(cell)} is nonzero")

    for cell in X.cells:
        stab = X.stabilizer(cell.id)
        for face in cell.faces:
            if not stab.is_subgroup_of(X.stabilizer(face)):
                report.add(f"stabilizer of {X.label(cell.id)} does not fix its face {X.label(face)}")

    logger.debug("validated %r: %d violations", X, len(report.violations))
    return report


class FixedSubcomplex:
    """X^H (or X^{>H}) with its components and the induced W H action on them"""

    def __init__(self, parent: GCWComplex, subgroup: Subgroup, strict: bool = False):
        self.parent = parent
        self.subgroup = subgroup
        self.strict = strict
        stabs = parent.stabilizers
        self.cells: Tuple[int, ...] = tuple(
            e for e in range(parent.n_cells)
            if subgroup.is_subgroup_of(stabs[e]) and not (strict and stabs[e].order == subgroup.order)
        )
        self.components, self.component_of = _components(parent, self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: int) -> bool:
        return cell in self.component_of

    @property
    def n_components(self) -> int:
        return len(self.components)

    @cached_property
    def weyl(self) -> WeylGroup:
        return weyl_group(self.parent.group, self.subgroup)

    @cached_property
    def weyl_action(self) -> GSet:
        """W H acting on components through normalizer representatives"""
        action = self.parent.action
        table = [[self.component_of[int(action[n, comp[0]])] for comp in self.components]
                 for n in self.weyl.representatives]
        return GSet(self.weyl.group, self.n_components,
                    np.array(table, dtype=np.int64).reshape(self.weyl.order, self.n_components))

    def component_stabilizer(self, component: int) -> Subgroup:
        """W H_x, the stabilizer of a component in the Weyl group"""
        return Subgroup(self.weyl.group, self.weyl_action.isotropy(component))


def _components(X: GCWComplex, cells: Sequence[int]) -> Tuple[Tuple[Tuple[int, ...], ...], Dict[int, int]]:
    """Connected components of a subcomplex under the face relation, ordered by least cell"""
    if not cells:
        return (), {}
    position = {c: i for i, c in enumerate(cells)}
    rows, cols = [], []
    for c in cells:
        for face in X.cells[c].faces:
            if face in position:
                rows.append(position[c])
                cols.append(position[face])
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(cells), len(cells)))
    count, labels = connected_components(graph, directed=False)
    groups: Dict[int, List[int]] = {}
    for c in cells:
        groups.setdefault(int(labels[position[c]]), []).append(c)
    components = tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda comp: comp[0]))
    assert len(components) == count
    component_of = {c: k for k, comp in enumerate(components) for c in comp}
    return components, component_of


def fixed_subcomplex(X: GCWComplex, sub: Subgroup, strict: bool = False) -> FixedSubcomplex:
    """
    The fixed subcomplex X^H = {e : H in G_e}, or X^{>H} when strict.

    Args:
        X: Complex
        sub: Subgroup H of X.group
        strict: Only cells whose stabilizer strictly contains H

    Returns:
        FixedSubcomplex with components and Weyl action
    """
    key = (sub.elements, strict)
    if key not in X._fixed_cache:
        X._fixed_cache[key] = FixedSubcomplex(X, Subgroup(X.group, sub.elements), strict)
        logger.debug("X^%s%s: %d cells, %d components", "(>)" if strict else "", sub.order,
                     len(X._fixed_cache[key]), X._fixed_cache[key].n_components)
    return X._fixed_cache[key]


class RelativePair:
    """A component C of X^H with its subcomplex C meet X^{>H}; free cells have G_e = H"""

    def __init__(self, fixed: FixedSubcomplex, component: int):
        self.fixed = fixed
        self.component = component
        self.cells: Tuple[int, ...] = fixed.components[component]
        stabs = fixed.parent.stabilizers
        order = fixed.subgroup.order
        self.free_cells: Tuple[int, ...] = tuple(e for e in self.cells if stabs[e].order == order)
        self.weyl_stabilizer = fixed.component_stabilizer(component)

    @property
    def complex(self) -> GCWComplex:
        return self.fixed.parent

    @property
    def subgroup(self) -> Subgroup:
        return self.fixed.subgroup

    def weyl_elements(self) -> List[int]:
        """Normalizer representatives of the elements of W H_x"""
        return [self.fixed.weyl.representatives[w] for w in self.weyl_stabilizer.elements]

    def free_orbit_representatives(self) -> List[int]:
        """Least cell of each W H_x-orbit of free cells"""
        action = self.complex.action
        reps, seen = [], set()
        normalizers = self.weyl_elements()
        for e in self.free_cells:
            if e in seen:
                continue
            reps.append(e)
            seen.update(int(action[n, e]) for n in normalizers)
        return reps

    def is_free(self) -> bool:
        """No nontrivial element of W H_x fixes a free cell"""
        action = self.complex.action
        return all(int(action[n, e]) != e
                   for n in self.weyl_elements()[1:] for e in self.free_cells)

    def absolute(self) -> GCWComplex:
        """The component C as a complex over W H_x"""
        X = self.complex
        position = {e: i for i, e in enumerate(self.cells)}
        cells = [Cell(position[e], X.cells[e].dim,
                      frozenset(position[f] for f in X.cells[e].faces),
                      tuple((position[f], c) for f, c in X.cells[e].boundary))
                 for e in self.cells]
        action = [[position[int(X.action[n, e])] for e in self.cells] for n in self.weyl_elements()]
        group = self.weyl_stabilizer.as_group
        return GCWComplex(group, cells, np.array(action, dtype=np.int64).reshape(group.order, len(cells)),
                          labels=[X.label(e) for e in self.cells], validate=False)

    def restrict_map(self, f: 'CellularGMap', absolute: Optional[GCWComplex] = None) -> Optional['CellularGMap']:
        """f restricted to C, or None if f does not map C into itself"""
        if not all(f.carrier[e] in self._members for e in self.cells):
            return None
        target = absolute if absolute is not None else self.absolute()
        position = {e: i for i, e in enumerate(self.cells)}
        carrier = [position[f.carrier[e]] for e in self.cells]
        chain = [{position[c]: v for c, v in f.chain[e].items()} for e in self.cells]
        return CellularGMap(target, carrier, chain, validate=False)

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.cells)


def relative_pair(X: GCWComplex, sub: Subgroup, component: int) -> RelativePair:
    """The pair (X^H(x), X^{>H}(x)) for the given component of X^H"""
    return RelativePair(fixed_subcomplex(X, sub), component)


class CellularGMap:
    """An equivariant cellular self-map given by carriers and integer chain images"""

    def __init__(self, complex_: GCWComplex, carrier: Sequence[int], chain: Sequence[Mapping[int, int]],
                 validate: bool = True):
        self.complex = complex_
        self.carrier: Tuple[int, ...] = tuple(int(c) for c in carrier)
        self.chain: Tuple[Chain, ...] = tuple({int(c): int(v) for c, v in ch.items() if v} for ch in chain)
        if validate:
            validate_map(self).raise_if_invalid(MapValidationError)

    @classmethod
    def identity(cls, X: GCWComplex) -> 'CellularGMap':
        return cls(X, list(range(X.n_cells)), [{e: 1} for e in range(X.n_cells)], validate=False)

    def __repr__(self) -> str:
        return f"CellularGMap({self.complex!r})"

    def chain_image(self, chain: Mapping[int, int]) -> Chain:
        out: Chain = {}
        for c, v in chain.items():
            for d, w in self.chain[c].items():
                out[d] = out.get(d, 0) + v * w
        return {c: v for c, v in out.items() if v}


def validate_map(f: CellularGMap) -> ValidationReport:
    """
    Check every invariant of a cellular G-map.

    Besides equivariance, stabilizer compatibility, cellularity and the
    chain-map law, the chain image of e must lie in the component of X^{G_e}
    containing carrier(e).
    """
    X = f.complex
    report = ValidationReport("map")
    n = X.n_cells
    if len(f.carrier) != n or len(f.chain) != n:
        report.add(f"map must give carrier and chain for all {n} cells")
        return report
    dims = X.dims
    for e in range(n):
        c = f.carrier[e]
        if not 0 <= c < n:
            report.add(f"carrier of {X.label(e)} is not a cell")
            continue
        if dims[c] > dims[e]:
            report.add(f"carrier of {X.label(e)} has higher dimension")
        for d in f.chain[e]:
            if not 0 <= d < n or dims[d] != dims[e]:
                report.add(f"chain image of {X.label(e)} has a cell of the wrong dimension")
        if not X.stabilizer(e).is_subgroup_of(X.stabilizer(c)):
            report.add(f"stabilizer of {X.label(e)} does not fix its carrier {X.label(c)}")
        allowed = X.cells[c].faces | {c}
        for face in X.cells[e].faces:
            if f.carrier[face] not in allowed:
                report.add(f"carrier of face {X.label(face)} is not in the closure of the carrier of {X.label(e)}")
    if not report.ok:
        return report

    for g in range(1, X.group.order):
        perm = X.action[g]
        for e in range(n):
            ge = int(perm[e])
            if f.carrier[ge] != int(perm[f.carrier[e]]):
                report.add(f"carrier is not equivariant at {X.label(e)} under element {g}")
            if f.chain[ge] != X.translate(g, f.chain[e]):
                report.add(f"chain is not equivariant at {X.label(e)} under element {g}")

    for e in range(n):
        if X.boundary(f.chain[e]) != f.chain_image(X.cells[e].boundary_chain()):
            report.add(f"chain-map law fails at {X.label(e)}")

    for e in range(n):
        if not f.chain[e]:
            continue
        fixed = fixed_subcomplex(X, X.stabilizer(e))
        home = fixed.component_of.get(f.carrier[e])
        if any(fixed.component_of.get(d) != home for d in f.chain[e]):
            report.add(f"chain image of {X.label(e)} leaves the fixed component of its carrier")
    return report


def incidence_number(f: CellularGMap, cell: int) -> int:
    """inc(f, e): the coefficient of e in the chain image of e"""
    return f.chain[cell].get(cell, 0)


def restrict_group(X: GCWComplex, sub: Subgroup) -> GCWComplex:
    """The same complex with the action restricted to H (as H.as_group)"""
    return GCWComplex(sub.as_group, X.cells, X.action[list(sub.elements)], labels=X.labels, validate=False)


def restrict_map(f: CellularGMap, restricted: GCWComplex) -> CellularGMap:
    return CellularGMap(restricted, f.carrier, f.chain, validate=False)


def induce_group(X: GCWComplex, inclusion: GroupInclusion) -> GCWComplex:
    """
    Induce a G-complex to K = inclusion.target: K x_G X.

    Cell (t, e) has index t * n + e, where t runs over left cosets of the
    image of G, coset 0 being the image itself.
    """
    K = inclusion.target
    image = inclusion.image()
    space = coset_space(K, image)
    to_source = {g: i for i, g in enumerate(inclusion.images)}
    n = X.n_cells
    reps = space.representatives
    inv = K.inverse

    cells = []
    labels = []
    for t in range(len(reps)):
        for cell in X.cells:
            cells.append(Cell(t * n + cell.id, cell.dim,
                              frozenset(t * n + f for f in cell.faces),
                              tuple((t * n + f, c) for f, c in cell.boundary)))
            labels.append(X.label(cell.id) if t == 0 else f"{X.label(cell.id)}@{t}")

    action = np.zeros((K.order, len(cells)), dtype=np.int64)
    for k in range(K.order):
        for t, rep in enumerate(reps):
            target = int(space.gset.action[k, t])
            g = to_source[int(K.mul[K.mul[inv[reps[target]], k], rep])]
            action[k, t * n:(t + 1) * n] = target * n + X.action[g]
    return GCWComplex(K, cells, action, labels=labels, validate=False)


def induce_map(f: CellularGMap, induced: GCWComplex) -> CellularGMap:
    """K x_G f on the induced complex"""
    n = f.complex.n_cells
    copies = induced.n_cells // n
    carrier = [t * n + f.carrier[e] for t in range(copies) for e in range(n)]
    chain = [{t * n + c: v for c, v in f.chain[e].items()} for t in range(copies) for e in range(n)]
    return CellularGMap(induced, carrier, chain, validate=False)
