"""Tests for orbit-category sets and their realization"""

import json
import unittest
import sys
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.corpus import random_orbit_set, standard_group
from src.errors import RealizationError
from src.fixtures import FixtureManager, reflection_circle
from src.loaders import load_orbit_set, parse_orbit_set
from src.realize import (orbit_set_of_complex, realize_orbit_set, subconjugating_elements, validate_orbit_set,
                         verify_realization)

FIXTURES = Path(__file__).parent.parent / 'fixtures'


class TestOrbitSets(unittest.TestCase):
    """Test orbit-category sets read off complexes and files"""

    def setUp(self):
        """Load the orbit set of the reflection circle"""
        self.S = load_orbit_set(FIXTURES / 'reflection_circle_orbits.json')

    def test_file_matches_complex(self):
        """Test the file agrees with pi_0 of the fixed sets of the reflection circle"""
        T = orbit_set_of_complex(reflection_circle())
        self.assertEqual(T.maps, self.S.maps)
        self.assertEqual([T.size(i) for i in range(2)], [1, 2])

    def test_valid(self):
        """Test the loaded orbit set is a functor"""
        self.assertTrue(validate_orbit_set(self.S).ok)

    def test_subconjugating_elements(self):
        """Test which elements give G-maps between the coset spaces of Z2"""
        group = self.S.group
        self.assertEqual(subconjugating_elements(group, 0, 1), [0, 1])
        self.assertEqual(subconjugating_elements(group, 1, 0), [])

    def test_missing_map(self):
        """Test a missing structure map is reported and blocks realization"""
        del self.S.maps[(0, 0, 1)]
        self.assertFalse(validate_orbit_set(self.S).ok)
        with self.assertRaises(RealizationError):
            realize_orbit_set(self.S)

    def test_not_invariant(self):
        """Test a structure map depending on the coset representative is reported"""
        self.S.maps[(1, 1, 1)] = (1, 0)
        self.assertFalse(validate_orbit_set(self.S).ok)


class TestRealization(unittest.TestCase):
    """Test realization by one-dimensional complexes"""

    def test_reflection_circle_orbits(self):
        """Test the reflection circle's orbit set is realized"""
        S = load_orbit_set(FIXTURES / 'reflection_circle_orbits.json')
        X = realize_orbit_set(S)
        self.assertLessEqual(X.dim, 1)
        self.assertTrue(verify_realization(X, S))

    def test_fixture_complexes(self):
        """Test the orbit set of every fixture complex is realized"""
        for fixture in FixtureManager.complexes():
            S = orbit_set_of_complex(fixture.complex)
            X = realize_orbit_set(S)
            self.assertLessEqual(X.dim, 1, fixture.name)
            self.assertTrue(verify_realization(X, S), fixture.name)

    def test_mismatch_detected(self):
        """Test a complex with the wrong fixed components is not a realization"""
        S = orbit_set_of_complex(reflection_circle())
        other = FixtureManager.get_fixture('reflection_disk').complex
        self.assertFalse(verify_realization(other, S))

    def test_group_given_as_table(self):
        """Test an orbit set over an equal but separately built group is accepted"""
        document = json.loads((FIXTURES / 'reflection_circle_orbits.json').read_text())
        X = realize_orbit_set(parse_orbit_set(document))
        document['group'] = {'order': 2, 'mul': [[0, 1], [1, 0]]}
        S = parse_orbit_set(document)
        self.assertIsNot(S.group, X.group)
        self.assertTrue(verify_realization(X, S))

    def test_different_groups_refused(self):
        """Test a complex and an orbit set over different groups of the same order"""
        rng = np.random.default_rng(3)
        X = realize_orbit_set(random_orbit_set(standard_group('Z4'), rng))
        S = random_orbit_set(standard_group('Z2xZ2'), rng)
        with self.assertRaises(RealizationError):
            verify_realization(X, S)
        with self.assertRaises(RealizationError):
            verify_realization(reflection_circle(), random_orbit_set(standard_group('Z3'), rng))

    def test_random_orbit_sets(self):
        """Test fifty seeded random orbit sets are realized"""
        rng = np.random.default_rng(99)
        count = 0
        for name in ['Z2', 'Z3', 'Z4', 'Z2xZ2', 'S3']:
            group = standard_group(name)
            for _ in range(10):
                S = random_orbit_set(group, rng)
                X = realize_orbit_set(S)
                self.assertLessEqual(X.dim, 1)
                self.assertTrue(verify_realization(X, S), name)
                count += 1
        self.assertEqual(count, 50)


if __name__ == '__main__':
    unittest.main()
