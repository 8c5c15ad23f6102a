"""Tests for presented component categories and the dihedral family"""

import unittest
import sys
from fractions import Fraction
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import NonIntegralMarks, PresentationError
from src.fingroup import cyclic_group
from src.fixtures import FixtureManager
from src.lefschetz import character_map, enumerate_classes
from src.localfix import vector_field_index
from src.presented import (ZeroRecord, dihedral_presentation, export_presentation, presented_character_map,
                           presented_euler, presented_index, presented_orbifold_euler)


class TestDihedralPresentation(unittest.TestCase):
    """Test the infinite dihedral group acting on the line"""

    def setUp(self):
        """Set up the presentation with one interval"""
        self.P = dihedral_presentation(1)

    def test_valid(self):
        """Test the presentation validates"""
        self.assertTrue(self.P.validate().ok)

    def test_euler(self):
        """Test chi^G = x0 + x1 - y"""
        self.assertEqual(presented_euler(self.P).as_dict(), {"x0": "1", "x1": "1", "y": "-1"})

    def test_character_matrix(self):
        """Test the character matrix from mor-orbit data"""
        half = Fraction(1, 2)
        self.assertEqual(presented_character_map(self.P).rows(), [[1, 0, 0], [0, 1, 0], [half, half, 1]])

    def test_orbifold_euler(self):
        """Test the orbifold Euler characteristics of the components"""
        self.assertEqual(presented_orbifold_euler(self.P), {"x0": 1, "x1": 1, "y": 0})
        self.assertEqual(presented_orbifold_euler(self.P, "y"), 0)

    def test_index_equals_euler(self):
        """Test the index equals chi^G for every alternating zero pattern up to nine zeros"""
        for r in range(1, 9):
            for delta0 in (1, -1):
                P = dihedral_presentation(r, delta0)
                self.assertEqual(presented_index(P).coeffs, (1, 1, -1), f"r={r}, delta0={delta0}")
                self.assertEqual(len(P.zeros), r + 1)

    def test_bad_parameters(self):
        """Test r < 1 and a bad starting sign are rejected"""
        with self.assertRaises(PresentationError):
            dihedral_presentation(0)
        with self.assertRaises(PresentationError):
            dihedral_presentation(2, 3)

    def test_unknown_label(self):
        """Test index lookup of an unknown class"""
        with self.assertRaises(PresentationError):
            self.P.index("w")


class TestPresentationValidation(unittest.TestCase):
    """Test rejected presentations"""

    def setUp(self):
        """Set up the presentation with one interval"""
        self.P = dihedral_presentation(1)

    def test_bad_sign(self):
        """Test a sign other than +-1 is reported"""
        self.P.zeros = (ZeroRecord(cyclic_group(2), (2, 1), ("y", "x0")),)
        self.assertFalse(self.P.validate().ok)

    def test_unknown_localization(self):
        """Test a localization to an unknown class is reported"""
        self.P.zeros = (ZeroRecord(cyclic_group(2), (1, 1), ("y", "w")),)
        self.assertFalse(self.P.validate().ok)

    def test_wrong_order(self):
        """Test classes listed against subconjugacy order are reported"""
        self.P.labels = ("y", "x0", "x1")
        self.assertFalse(self.P.validate().ok)

    def test_non_integral_signs(self):
        """Test signs that are not marks of a Burnside element"""
        self.P.zeros = (ZeroRecord(cyclic_group(3), (1, -1), ("y", "x0")),)
        with self.assertRaises(NonIntegralMarks):
            presented_index(self.P)


class TestExport(unittest.TestCase):
    """Test exporting a finite-group complex as a presentation"""

    def test_reflection_circle_field(self):
        """Test the exported presentation reproduces chi^G, the index and the character matrix"""
        fixture = FixtureManager.get_fixture('reflection_circle_field')
        X = fixture.complex
        basis = enumerate_classes(X)
        P = export_presentation(X, fixture.zeros)
        self.assertTrue(P.validate().ok)
        self.assertEqual(P.labels, basis.labels)
        self.assertEqual(presented_euler(P).coeffs, (1, 1, -1))
        self.assertEqual(presented_index(P).coeffs, vector_field_index(X, fixture.zeros, basis).coeffs)
        self.assertEqual(presented_character_map(P), character_map(X, basis))

    def test_s3_triangle(self):
        """Test a complex without zero data exports its Euler characteristic"""
        X = FixtureManager.get_fixture('s3_triangle').complex
        P = export_presentation(X)
        self.assertEqual(presented_euler(P).coeffs, (1, 1, -1))
        self.assertEqual(presented_orbifold_euler(P, "[1:v0]"), 0)


if __name__ == '__main__':
    unittest.main()
