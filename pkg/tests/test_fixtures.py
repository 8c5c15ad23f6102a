"""Tests for the built-in fixtures"""

import unittest
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import ComplexValidationError
from src.fixtures import FixtureManager, complex_from_geometry, permutation_group
from src.fingroup import cyclic_group
from src.gcw import validate_complex, validate_map


class TestFixtureManager(unittest.TestCase):
    """Test the fixture registry"""

    def test_get_fixture(self):
        """Test getting a fixture by name"""
        fixture = FixtureManager.get_fixture('degree2')
        self.assertEqual(fixture.name, 'degree2')
        self.assertIs(FixtureManager.get_fixture('degree2'), fixture)

    def test_invalid_fixture(self):
        """Test getting an unknown fixture"""
        with self.assertRaises(ValueError):
            FixtureManager.get_fixture('nonexistent')

    def test_get_fixture_names(self):
        """Test the registered names"""
        names = FixtureManager.get_fixture_names()
        for name in ['point', 'reflection_circle', 'degree2', 'reflection_disk', 's3_triangle', 'dihedral']:
            self.assertIn(name, names)

    def test_complexes_are_valid(self):
        """Test every fixture complex and map satisfies its invariants"""
        for fixture in FixtureManager.complexes():
            self.assertTrue(validate_complex(fixture.complex).ok, fixture.name)
            self.assertTrue(validate_map(fixture.map).ok, fixture.name)
            for datum in fixture.fixed_points + fixture.zeros:
                datum.validate(fixture.complex)

    def test_presentation_fixture(self):
        """Test the dihedral fixture carries a presentation and no complex"""
        fixture = FixtureManager.get_fixture('dihedral')
        self.assertIsNone(fixture.complex)
        self.assertTrue(fixture.presentation.validate().ok)


class TestBuilders(unittest.TestCase):
    """Test the geometric builders"""

    def test_permutation_group(self):
        """Test S3 from image tuples"""
        group, elements = permutation_group(3)
        self.assertEqual(group.order, 6)
        self.assertEqual(elements[0], (0, 1, 2))

    def test_complex_from_geometry(self):
        """Test a flip reversing a fixed segment is rejected"""
        group = cyclic_group(2)
        specs = [('a', 0, []), ('b', 0, []), ('s', 1, [('b', 1), ('a', -1)])]
        swap = {'a': 'b', 'b': 'a', 's': 's'}
        with self.assertRaises(ComplexValidationError):
            complex_from_geometry(group, [0, 1], specs, lambda g, key: swap[key] if g else key)

    def test_free_segment_pair(self):
        """Test two segments swapped by Z2"""
        group = cyclic_group(2)
        specs = [('a0', 0, []), ('b0', 0, []), ('a1', 0, []), ('b1', 0, []),
                 ('s0', 1, [('b0', 1), ('a0', -1)]), ('s1', 1, [('b1', 1), ('a1', -1)])]

        def act(g, key):
            return key if not g else key[0] + str(1 - int(key[1]))

        X = complex_from_geometry(group, [0, 1], specs, act)
        self.assertEqual(X.n_cells, 6)
        self.assertEqual(X.label(int(X.action[1, 4])), 's1')


if __name__ == '__main__':
    unittest.main()
