"""
Local fixed-point data
Fixed subspaces of representations, determinant signs, equivariant degrees,
the local equivariant Lefschetz class and the equivariant index of a vector field
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import sympy

from .burnside import BurnsideElement, from_marks
from .constants import MODE_FIELD, MODE_MAP
from .errors import DegenerateFixedPoint, InputFormatError, VertexStabilizerMismatch
from .fingroup import FiniteGroup, Subgroup
from .gcw import GCWComplex
from .lefschetz import UGBasis, UGElement, enumerate_classes, ug_induction
from .utils import parse_fraction

logger = logging.getLogger(__name__)


def rational_matrix(rows: Sequence[Sequence]) -> sympy.Matrix:
    """Build an exact sympy matrix from ints, Fractions or 'p/q' strings"""
    converted = []
    for row in rows:
        out = []
        for v in row:
            q = parse_fraction(v)
            out.append(sympy.Rational(q.numerator, q.denominator))
        converted.append(out)
    if not converted:
        return sympy.zeros(0, 0)
    return sympy.Matrix(converted)


class OrthogonalRepresentation:
    """A rational representation of a finite group; matrices[g] is rho(g)"""

    def __init__(self, group: FiniteGroup, matrices: Sequence[sympy.Matrix], validate: bool = True):
        self.group = group
        self.matrices: List[sympy.Matrix] = [sympy.Matrix(m) for m in matrices]
        self.dim = self.matrices[0].rows if self.matrices else 0
        if validate:
            self.validate()

    @classmethod
    def trivial(cls, group: FiniteGroup, dim: int) -> 'OrthogonalRepresentation':
        return cls(group, [sympy.eye(dim) for _ in range(group.order)], validate=False)

    def validate(self):
        """
        Check the homomorphism law and invertibility.

        Raises:
            InputFormatError: If rho is not a representation
        """
        n = self.dim
        if len(self.matrices) != self.group.order:
            raise InputFormatError(f"representation needs {self.group.order} matrices, got {len(self.matrices)}")
        if any(m.shape != (n, n) for m in self.matrices):
            raise InputFormatError("representation matrices must all be square of the same size")
        if self.matrices[0] != sympy.eye(n):
            raise InputFormatError("identity element must act by the identity matrix")
        for a in range(self.group.order):
            if n and self.matrices[a].det() == 0:
                raise InputFormatError(f"rho({a}) is not invertible")
            for b in range(self.group.order):
                if self.matrices[a] * self.matrices[b] != self.matrices[int(self.group.mul[a, b])]:
                    raise InputFormatError(f"rho({a}) rho({b}) != rho({a}*{b})")
        if any(m.T * m != sympy.eye(n) for m in self.matrices):
            logger.warning("representation of %s is invertible but not orthogonal", self.group.name)

    def __call__(self, g: int) -> sympy.Matrix:
        return self.matrices[g]


def fixed_subspace(rep: OrthogonalRepresentation, sub: Subgroup) -> sympy.Matrix:
    """
    Basis of V^H as the columns of a matrix.

    Args:
        rep: Representation of the group containing H
        sub: Subgroup H of rep.group

    Returns:
        dim x k matrix spanning the image of the averaging projector
    """
    n = rep.dim
    if n == 0:
        return sympy.zeros(0, 0)
    projector = sympy.zeros(n, n)
    for h in sub.elements:
        projector += rep(h)
    projector = projector / sub.order
    columns = projector.columnspace()
    if not columns:
        return sympy.zeros(n, 0)
    return sympy.Matrix.hstack(*columns)


def sign_det_on_fixed(operator: sympy.Matrix, basis: sympy.Matrix) -> int:
    """
    Sign of the determinant of an operator restricted to the span of basis.

    Args:
        operator: n x n matrix preserving the subspace
        basis: n x k matrix of basis columns

    Returns:
        +1 or -1 (and +1 for a zero-dimensional subspace)

    Raises:
        DegenerateFixedPoint: If the restricted determinant vanishes
    """
    if basis.cols == 0:
        return 1
    gram = basis.T * basis
    restricted = gram.inv() * basis.T * operator * basis
    if operator * basis != basis * restricted:
        raise ValueError("operator does not preserve the subspace")
    det = restricted.det(method="bareiss")
    if det == 0:
        raise DegenerateFixedPoint("restricted determinant vanishes")
    return 1 if det > 0 else -1


@dataclass
class FixedPointDatum:
    """A fixed point (or zero) anchored at a vertex, with its stabilizer representation and differential"""
    vertex: int
    stabilizer: Subgroup
    rep: OrthogonalRepresentation
    differential: sympy.Matrix
    mode: str = MODE_MAP

    def operator(self, mode: Optional[str] = None) -> sympy.Matrix:
        """I - A for maps, A for vector fields"""
        mode = mode or self.mode
        if mode == MODE_MAP:
            return sympy.eye(self.rep.dim) - self.differential
        if mode == MODE_FIELD:
            return self.differential
        raise ValueError(f"unknown fixed-point mode {mode!r}")

    def validate(self, X: Optional[GCWComplex] = None):
        """
        Check equivariance of the differential and anchoring at the vertex.

        Raises:
            VertexStabilizerMismatch: If the stabilizer differs from that of the vertex
            InputFormatError: If the differential does not commute with rho
        """
        if self.rep.group.order != self.stabilizer.order:
            raise InputFormatError("representation group does not match the stabilizer")
        if self.differential.shape != (self.rep.dim, self.rep.dim):
            raise InputFormatError("differential has the wrong size")
        for g in range(self.rep.group.order):
            if self.rep(g) * self.differential != self.differential * self.rep(g):
                raise InputFormatError(f"differential at vertex {self.vertex} is not equivariant")
        if X is not None:
            if X.cells[self.vertex].dim != 0:
                raise InputFormatError(f"{X.label(self.vertex)} is not a vertex")
            if X.stabilizer(self.vertex).elements != self.stabilizer.elements:
                raise VertexStabilizerMismatch(
                    f"datum stabilizer {list(self.stabilizer.elements)} differs from the stabilizer of "
                    f"{X.label(self.vertex)}")


def degree_marks(datum: FixedPointDatum, mode: Optional[str] = None) -> List[int]:
    """Sign of the operator on V^L for every subgroup class (L) of the stabilizer"""
    op = datum.operator(mode)
    K = datum.rep.group
    return [sign_det_on_fixed(op, fixed_subspace(datum.rep, cls.representative)) for cls in K.subgroup_classes]


def equivariant_degree(datum: FixedPointDatum, mode: Optional[str] = None) -> BurnsideElement:
    """
    Deg_0^K: the Burnside element whose marks are the restricted determinant signs.

    Raises:
        DegenerateFixedPoint: If some restricted determinant vanishes
        NonIntegralMarks: If the signs are inconsistent (non-equivariant input)
    """
    marks = degree_marks(datum, mode)
    degree = from_marks(datum.rep.group, marks)
    logger.debug("degree at vertex %d: marks %s -> %s", datum.vertex, marks, degree)
    return degree


def _induced_sum(X: GCWComplex, data: Sequence[FixedPointDatum], mode: str,
                 basis: Optional[UGBasis]) -> UGElement:
    basis = basis or enumerate_classes(X)
    total = basis.zero()
    for datum in data:
        datum.validate(X)
        degree = equivariant_degree(datum, mode)
        total = total + ug_induction(datum.stabilizer.inclusion(), degree, datum.vertex, basis)
    return total


def local_lefschetz_class(X: GCWComplex, data: Sequence[FixedPointDatum],
                          basis: Optional[UGBasis] = None) -> UGElement:
    """
    Lambda_loc^G: sum over orbits of fixed points of the induced equivariant degree of I - A.

    Args:
        X: Complex
        data: One datum per G-orbit of fixed points
        basis: U^G basis (computed if omitted)
    """
    return _induced_sum(X, data, MODE_MAP, basis)


def vector_field_index(X: GCWComplex, zeros: Sequence[FixedPointDatum],
                       basis: Optional[UGBasis] = None) -> UGElement:
    """i^G: sum over orbits of zeros of the induced equivariant degree of d_x Xi"""
    return _induced_sum(X, zeros, MODE_FIELD, basis)


def local_orbifold_lefschetz(data: Sequence[FixedPointDatum]) -> Fraction:
    """sum over orbits of |G_x|^-1 sign det(I - T_x f)"""
    total = Fraction(0)
    for datum in data:
        full = sympy.eye(datum.rep.dim)
        total += Fraction(sign_det_on_fixed(datum.operator(MODE_MAP), full), datum.stabilizer.order)
    return total


def local_character_value(X: GCWComplex, data: Sequence[FixedPointDatum], basis: UGBasis, y: int,
                          mode: str = MODE_MAP) -> Fraction:
    """
    Weyl-orbit sum of fixed-subspace signs over the fixed points in X^K(y).

    Each point p = g.x with K in G_p inside the component D_y contributes
    |(W K_y)_p|^-1 times the sign of the operator on T_x^{g^-1 K g}.
    """
    G = X.group
    cls = basis.classes[y]
    K = cls.subgroup
    fixed = X.fixed_subcomplex(K)
    stab = fixed.component_stabilizer(cls.component)
    normalizers = [fixed.weyl.representatives[w] for w in stab.elements]
    inv = G.inverse

    total = Fraction(0)
    for datum in data:
        datum.validate(X)
        points = {}
        for g in range(G.order):
            p = int(X.action[g, datum.vertex])
            if p not in points and fixed.component_of.get(p) == cls.component:
                points[p] = g
        seen = set()
        for p in sorted(points):
            if p in seen:
                continue
            orbit = {int(X.action[n, p]) for n in normalizers}
            seen.update(orbit)
            isotropy = len(normalizers) // len(orbit)
            g = points[p]
            conj = tuple(sorted(int(G.mul[G.mul[inv[g], k], g]) for k in K.elements))
            local = datum.stabilizer.to_local(Subgroup(G, conj))
            sign = sign_det_on_fixed(datum.operator(mode), fixed_subspace(datum.rep, local))
            total += Fraction(sign, isotropy)
    return total
