"""Tests for fixed-point data, equivariant degrees and local classes"""

import unittest
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import sympy

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.burnside import BurnsideElement
from src.constants import MODE_FIELD, MODE_MAP
from src.corpus import standard_group
from src.errors import DegenerateFixedPoint, InputFormatError, VertexStabilizerMismatch
from src.fingroup import cyclic_group
from src.fixtures import FixtureManager
from src.lefschetz import enumerate_classes, universal_euler
from src.localfix import (FixedPointDatum, OrthogonalRepresentation, degree_marks, equivariant_degree,
                          fixed_subspace, local_character_value, local_lefschetz_class, local_orbifold_lefschetz,
                          rational_matrix, sign_det_on_fixed, vector_field_index)


def sign_rep(group):
    """Z2 acting on a line by -1"""
    return OrthogonalRepresentation(group, [rational_matrix([[1]]), rational_matrix([[-1]])])


class TestFixedSubspace(unittest.TestCase):
    """Test fixed subspaces and restricted determinant signs"""

    def setUp(self):
        """Set up Z2 acting on the plane by swapping coordinates"""
        self.z2 = cyclic_group(2)
        self.swap = OrthogonalRepresentation(self.z2, [sympy.eye(2), rational_matrix([[0, 1], [1, 0]])])

    def test_trivial_subgroup(self):
        """Test the trivial subgroup fixes everything"""
        self.assertEqual(fixed_subspace(self.swap, self.z2.trivial_subgroup).rank(), 2)

    def test_swap(self):
        """Test the swap fixes the diagonal"""
        basis = fixed_subspace(self.swap, self.z2.whole)
        self.assertEqual(basis.cols, 1)
        self.assertEqual(basis[0, 0], basis[1, 0])

    def test_sign_rep(self):
        """Test the sign representation has no fixed vectors"""
        self.assertEqual(fixed_subspace(sign_rep(self.z2), self.z2.whole).cols, 0)

    def test_signs(self):
        """Test restricted determinant signs"""
        self.assertEqual(sign_det_on_fixed(2 * sympy.eye(2), sympy.eye(2)), 1)
        self.assertEqual(sign_det_on_fixed(-sympy.eye(3), sympy.eye(3)), -1)
        self.assertEqual(sign_det_on_fixed(-sympy.eye(2), sympy.zeros(2, 0)), 1)
        diagonal = fixed_subspace(self.swap, self.z2.whole)
        self.assertEqual(sign_det_on_fixed(rational_matrix([[-3, 1], [1, -3]]), diagonal), -1)

    def test_degenerate(self):
        """Test a vanishing determinant is reported"""
        with self.assertRaises(DegenerateFixedPoint):
            sign_det_on_fixed(sympy.zeros(1, 1), sympy.eye(1))

    def test_not_preserved(self):
        """Test an operator leaving the subspace is rejected"""
        with self.assertRaises(ValueError):
            sign_det_on_fixed(rational_matrix([[0, 0], [1, 0]]), rational_matrix([[1], [0]]))

    def test_not_a_representation(self):
        """Test matrices violating the homomorphism law are rejected"""
        with self.assertRaises(InputFormatError):
            OrthogonalRepresentation(self.z2, [sympy.eye(1), rational_matrix([[2]])])


class TestEquivariantDegree(unittest.TestCase):
    """Test equivariant degrees of fixed points and zeros"""

    def setUp(self):
        """Set up Z2 and its sign representation"""
        self.z2 = cyclic_group(2)
        self.rep = sign_rep(self.z2)

    def datum(self, value, mode):
        return FixedPointDatum(0, self.z2.whole, self.rep, rational_matrix([[value]]), mode)

    def test_squaring_fixed_point(self):
        """Test the fixed point of z -> z^2 has degree [K/K] - [K/1]"""
        datum = self.datum(2, MODE_MAP)
        self.assertEqual(degree_marks(datum), [-1, 1])
        self.assertEqual(equivariant_degree(datum).coeffs, (-1, 1))

    def test_field_zeros(self):
        """Test source and sink zeros of a field on the sign line"""
        self.assertEqual(equivariant_degree(self.datum(1, MODE_FIELD)), BurnsideElement.one(self.z2))
        self.assertEqual(equivariant_degree(self.datum(-1, MODE_FIELD)).coeffs, (-1, 1))

    def test_degenerate_map(self):
        """Test a fixed point with differential the identity is degenerate"""
        trivial = OrthogonalRepresentation.trivial(self.z2, 1)
        datum = FixedPointDatum(0, self.z2.whole, trivial, rational_matrix([[1]]), MODE_MAP)
        with self.assertRaises(DegenerateFixedPoint):
            equivariant_degree(datum)

    def test_odd_order(self):
        """Test an odd-order stabilizer yields +-[K/K]"""
        z3 = cyclic_group(3)
        rotation = rational_matrix([[0, -1], [1, -1]])
        matrices = [sympy.diag(1, m) for m in (sympy.eye(2), rotation, rotation * rotation)]
        rep = OrthogonalRepresentation(z3, matrices)
        datum = FixedPointDatum(0, z3.whole, rep, 2 * sympy.eye(3), MODE_MAP)
        self.assertEqual(degree_marks(datum), [-1, -1])
        self.assertEqual(equivariant_degree(datum), -BurnsideElement.one(z3))

    def test_not_equivariant(self):
        """Test a differential that does not commute with the action is rejected"""
        swap = OrthogonalRepresentation(self.z2, [sympy.eye(2), rational_matrix([[0, 1], [1, 0]])])
        datum = FixedPointDatum(0, self.z2.whole, swap, rational_matrix([[1, 0], [0, 2]]), MODE_MAP)
        with self.assertRaises(InputFormatError):
            datum.validate()


def regular_rep(group):
    """Left regular representation: rho(g) sends e_h to e_gh"""
    matrices = []
    for g in range(group.order):
        m = sympy.zeros(group.order, group.order)
        for h in range(group.order):
            m[int(group.mul[g, h]), h] = 1
        matrices.append(m)
    return OrthogonalRepresentation(group, matrices)


def right_multiplication(group, k):
    """e_h -> e_hk, which commutes with the left regular representation"""
    m = sympy.zeros(group.order, group.order)
    for h in range(group.order):
        m[int(group.mul[h, k]), h] = 1
    return m


class TestDegreeConjugationInvariance(unittest.TestCase):
    """Test the degree is unchanged when the representation and differential are conjugated"""

    def setUp(self):
        """Set up S3 with its regular representation and a seeded generator"""
        self.s3 = standard_group('S3')
        self.rep = regular_rep(self.s3)
        self.rng = np.random.default_rng(11)

    def random_datum(self, mode):
        while True:
            coeffs = self.rng.integers(-2, 3, size=self.s3.order)
            A = sympy.zeros(self.s3.order, self.s3.order)
            for k, c in enumerate(coeffs):
                A += int(c) * right_multiplication(self.s3, k)
            datum = FixedPointDatum(0, self.s3.whole, self.rep, A, mode)
            try:
                return datum, equivariant_degree(datum)
            except DegenerateFixedPoint:
                continue

    def random_invertible(self):
        while True:
            P = sympy.Matrix(self.s3.order, self.s3.order,
                             [int(v) for v in self.rng.integers(-2, 3, size=self.s3.order ** 2)])
            if P.det() != 0:
                return P

    def conjugated(self, datum, P):
        P_inv = P.inv()
        rep = OrthogonalRepresentation(self.s3, [P * m * P_inv for m in datum.rep.matrices])
        return FixedPointDatum(0, self.s3.whole, rep, P * datum.differential * P_inv, datum.mode)

    def test_conjugation_by_group_elements(self):
        """Test conjugating by rho(g) for every g keeps the degree"""
        for mode in (MODE_MAP, MODE_FIELD):
            for _ in range(3):
                datum, degree = self.random_datum(mode)
                for g in range(self.s3.order):
                    self.assertEqual(equivariant_degree(self.conjugated(datum, self.rep(g))), degree)

    def test_conjugation_by_invertible_matrices(self):
        """Test conjugating by random invertible integer matrices keeps the degree"""
        for mode in (MODE_MAP, MODE_FIELD):
            for _ in range(3):
                datum, degree = self.random_datum(mode)
                conjugate = self.conjugated(datum, self.random_invertible())
                conjugate.validate()
                self.assertEqual(equivariant_degree(conjugate), degree)


class TestLocalClasses(unittest.TestCase):
    """Test local Lefschetz classes and vector-field indices on fixtures"""

    def test_squaring_local_class(self):
        """Test the local class of the squaring map is [2:x1] - [1:x0]"""
        fixture = FixtureManager.get_fixture('degree2')
        basis = enumerate_classes(fixture.complex)
        value = local_lefschetz_class(fixture.complex, fixture.fixed_points, basis)
        self.assertEqual(value.coeffs, (0, 1, -1))
        self.assertEqual(local_orbifold_lefschetz(fixture.fixed_points), Fraction(-1, 2))

    def test_local_character(self):
        """Test the Weyl-orbit sign sums of the squaring map's fixed point"""
        fixture = FixtureManager.get_fixture('degree2')
        basis = enumerate_classes(fixture.complex)
        values = [local_character_value(fixture.complex, fixture.fixed_points, basis, y) for y in range(len(basis))]
        self.assertEqual(values, [0, 1, Fraction(-1, 2)])

    def test_no_fixed_points(self):
        """Test empty data gives the zero class"""
        X = FixtureManager.get_fixture('reflection_circle').complex
        self.assertTrue(local_lefschetz_class(X, []).is_zero())

    def test_field_index_is_euler(self):
        """Test the index of the gradient-like field equals chi^G"""
        fixture = FixtureManager.get_fixture('reflection_circle_field')
        basis = enumerate_classes(fixture.complex)
        self.assertEqual(vector_field_index(fixture.complex, fixture.zeros, basis),
                         universal_euler(fixture.complex, basis))

    def test_stabilizer_mismatch(self):
        """Test a datum claiming a larger stabilizer than its vertex has"""
        X = FixtureManager.get_fixture('free_pair').complex
        datum = FixedPointDatum(0, X.group.whole, sign_rep(X.group.whole.as_group), rational_matrix([[2]]))
        with self.assertRaises(VertexStabilizerMismatch):
            datum.validate(X)
        with self.assertRaises(VertexStabilizerMismatch):
            local_lefschetz_class(X, [datum])


if __name__ == '__main__':
    unittest.main()
