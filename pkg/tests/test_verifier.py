"""Tests for the identity verifier"""

import copy
import unittest
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.constants import DEFAULT_CONFIG, VERDICT_FAIL, VERDICT_PASS
from src.fixtures import FixtureManager
from src.presented import dihedral_presentation
from src.verifier import IdentityVerifier


def small_config():
    """Default configuration with a reduced corpus"""
    config = copy.deepcopy(DEFAULT_CONFIG)
    config['verification']['triples_per_group'] = 2
    config['verification']['realization_sets_per_group'] = 1
    return config


class TestIdentityVerifier(unittest.TestCase):
    """Test single verifications on fixtures"""

    def setUp(self):
        """Set up the verifier"""
        self.verifier = IdentityVerifier(small_config())

    def test_agree_squaring_map(self):
        """Test global and local classes of the squaring map agree"""
        fixture = FixtureManager.get_fixture('degree2')
        result = self.verifier.verify_agree(fixture.complex, fixture.map, fixture.fixed_points)
        self.assertEqual(result['verdict'], VERDICT_PASS)
        self.assertEqual(result['global'], "[2:x1] - [1:x0]")
        self.assertEqual(result['diffs'], [])

    def test_disagree_without_data(self):
        """Test the identity with no fixed-point data is reported with its differences"""
        fixture = FixtureManager.get_fixture('identity_no_data')
        result = self.verifier.verify_agree(fixture.complex, fixture.map, [])
        self.assertEqual(result['verdict'], VERDICT_FAIL)
        self.assertEqual(result['local'], "0")
        self.assertEqual([d['class'] for d in result['diffs']], ["[2:x0]", "[2:x1]", "[1:x0]"])

    def test_presented(self):
        """Test the dihedral presentation passes"""
        self.assertEqual(self.verifier.verify_presented(dihedral_presentation(3, -1))['verdict'], VERDICT_PASS)

    def test_character_checks(self):
        """Test the character identities on the squaring map"""
        fixture = FixtureManager.get_fixture('degree2')
        lefschetz = self.verifier.character_lefschetz(fixture.map)
        self.assertEqual(lefschetz['failed'], 0)
        self.assertEqual(lefschetz['total'], 2)
        self.assertEqual(self.verifier.character_local(fixture.complex, fixture.fixed_points)['failed'], 0)
        self.assertEqual(self.verifier.character_euler(fixture.complex)['total'], 3)

    def test_orbifold_fixed_points(self):
        """Test the orbifold Lefschetz number against the fixed-point sum"""
        fixture = FixtureManager.get_fixture('degree2')
        result = self.verifier.orbifold_fixed_points(fixture.map, fixture.fixed_points)
        self.assertEqual(result['details'][0]['actual'], "-1/2")
        self.assertEqual(result['failed'], 0)

    def test_index(self):
        """Test the field index check on the reflection circle"""
        fixture = FixtureManager.get_fixture('reflection_circle_field')
        self.assertEqual(self.verifier.index_check(fixture.complex, fixture.zeros)['failed'], 0)


class TestSuite(unittest.TestCase):
    """Test the batch suite on a reduced corpus"""

    @classmethod
    def setUpClass(cls):
        """Run the suite once"""
        cls.progress = []
        verifier = IdentityVerifier(small_config())
        cls.results = verifier.suite(progress_callback=lambda *args: cls.progress.append(args))

    def test_sections(self):
        """Test every section is reported"""
        for section in ['fixtures', 'dihedral', 'character_lefschetz', 'character_euler', 'characters', 'traces',
                        'realization', 'multiplicative_induction', 'overall']:
            self.assertIn(section, self.results)
        self.assertEqual(len(self.progress), 8)

    def test_all_pass(self):
        """Test nothing fails"""
        failures = {name: r for name, r in self.results.items() if name != 'overall' and r['failed']}
        self.assertEqual(failures, {})
        self.assertEqual(self.results['overall']['failed'], 0)

    def test_counts(self):
        """Test section sizes follow the configuration"""
        self.assertEqual(self.results['dihedral']['total'], 16)
        self.assertEqual(self.results['character_lefschetz']['total'], 10)
        self.assertEqual(self.results['realization']['total'], 5)
        self.assertEqual(self.results['multiplicative_induction']['total'], 24)


if __name__ == '__main__':
    unittest.main()
