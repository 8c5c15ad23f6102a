"""Tests for the finite group substrate"""

import unittest
import sys
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import GroupValidationError
from src.fingroup import (FiniteGroup, GSet, coset_space, cyclic_group, dihedral_group, direct_product,
                          fixed_cosets, group_from_permutations, is_subconjugate, normalizer, orbits,
                          symmetric_group, trivial_group, weyl_group)


class TestFiniteGroup(unittest.TestCase):
    """Test group construction and validation"""

    def setUp(self):
        """Set up test groups"""
        self.z4 = cyclic_group(4)
        self.s3 = symmetric_group(3)

    def test_cyclic_group(self):
        """Test Z/4 has order 4 and the expected inverses"""
        self.assertEqual(self.z4.order, 4)
        self.assertEqual(list(self.z4.inverse), [0, 3, 2, 1])
        self.assertEqual(self.z4.element_order(1), 4)
        self.assertEqual(self.z4.element_order(2), 2)

    def test_same_table(self):
        """Test groups compare by multiplication table rather than identity"""
        self.assertTrue(self.z4.same_table(cyclic_group(4)))
        self.assertFalse(self.z4.same_table(direct_product(cyclic_group(2), cyclic_group(2))))
        self.assertFalse(self.z4.same_table(self.s3))

    def test_permutation_group(self):
        """Test S3 from generators has order 6 with identity at index 0"""
        group = group_from_permutations(3, [[1, 0, 2], [1, 2, 0]], name="S3")
        self.assertEqual(group.order, 6)
        self.assertEqual(list(group.mul[0]), list(range(6)))

    def test_not_a_permutation(self):
        """Test a generator that is not a permutation is rejected"""
        with self.assertRaises(GroupValidationError):
            group_from_permutations(3, [[0, 0, 1]])

    def test_not_latin_square(self):
        """Test a table with a repeated entry is rejected"""
        with self.assertRaises(GroupValidationError):
            FiniteGroup([[0, 1], [1, 1]])

    def test_non_associative_loop(self):
        """Test a Latin square with identity that is not associative is rejected"""
        loop = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with self.assertRaises(GroupValidationError):
            FiniteGroup(loop)

    def test_large_group_uses_generators(self):
        """Test validation of a group above the full associativity limit"""
        group = cyclic_group(70)
        self.assertEqual(group.order, 70)
        self.assertEqual(group.generating_set(), [1])

    def test_direct_product(self):
        """Test Z/2 x Z/2 has exponent 2"""
        klein = direct_product(cyclic_group(2), cyclic_group(2))
        self.assertEqual(klein.order, 4)
        self.assertTrue(all(klein.element_order(g) <= 2 for g in range(4)))

    def test_dihedral_group(self):
        """Test the dihedral group of the square has order 8"""
        self.assertEqual(dihedral_group(4).order, 8)
        self.assertEqual(dihedral_group(4).name, "D8")


class TestSubgroups(unittest.TestCase):
    """Test subgroup enumeration, conjugacy classes and Weyl groups"""

    def setUp(self):
        """Set up test groups"""
        self.s3 = symmetric_group(3)
        self.klein = direct_product(cyclic_group(2), cyclic_group(2))

    def test_subgroup_counts(self):
        """Test the numbers of subgroups and of their conjugacy classes"""
        self.assertEqual(len(cyclic_group(4).subgroups), 3)
        self.assertEqual(len(self.s3.subgroups), 6)
        self.assertEqual(len(self.s3.subgroup_classes), 4)
        self.assertEqual(len(self.klein.subgroups), 5)
        self.assertEqual(len(self.klein.subgroup_classes), 5)
        self.assertEqual(len(trivial_group().subgroup_classes), 1)

    def test_class_order(self):
        """Test classes are sorted by order, trivial first and whole group last"""
        orders = [c.order for c in self.s3.subgroup_classes]
        self.assertEqual(orders, [1, 2, 3, 6])
        self.assertEqual(self.s3.subgroup_classes[0].representative.elements, (0,))
        self.assertEqual(self.s3.subgroup_classes[-1].representative.order, 6)
        self.assertEqual(len(self.s3.subgroup_classes[1].members), 3)

    def test_subgroup_closure(self):
        """Test a subset that is not closed is rejected"""
        with self.assertRaises(GroupValidationError):
            cyclic_group(4).subgroup([0, 1])
        self.assertEqual(cyclic_group(4).subgroup([0, 2]).order, 2)

    def test_weyl_groups(self):
        """Test Weyl groups of the subgroups of S3"""
        classes = self.s3.subgroup_classes
        self.assertEqual(weyl_group(self.s3, classes[0].representative).order, 6)
        self.assertEqual(weyl_group(self.s3, classes[1].representative).order, 1)
        self.assertEqual(weyl_group(self.s3, classes[2].representative).order, 2)
        self.assertEqual(weyl_group(self.s3, classes[3].representative).order, 1)

    def test_normalizer(self):
        """Test a transposition subgroup is self-normalizing"""
        rep = self.s3.subgroup_classes[1].representative
        self.assertEqual(normalizer(self.s3, rep).elements, rep.elements)

    def test_subconjugacy(self):
        """Test subconjugacy between the subgroup classes of S3"""
        c = self.s3.subgroup_classes
        self.assertTrue(is_subconjugate(self.s3, c[0].representative, c[2].representative))
        self.assertFalse(is_subconjugate(self.s3, c[1].representative, c[2].representative))
        for member in c[1].members:
            self.assertTrue(is_subconjugate(self.s3, member, c[1].representative))

    def test_as_group(self):
        """Test a subgroup viewed as a group, with its inclusion"""
        rep = self.s3.subgroup_classes[2].representative
        local = rep.as_group
        self.assertEqual(local.order, 3)
        inclusion = rep.inclusion()
        self.assertEqual(inclusion.image().elements, rep.elements)
        self.assertEqual(inclusion.index, 2)


class TestGSets(unittest.TestCase):
    """Test coset spaces, orbits and fixed cosets"""

    def setUp(self):
        """Set up S3"""
        self.s3 = symmetric_group(3)

    def test_coset_space(self):
        """Test S3/C2 has three cosets, the first being C2"""
        rep = self.s3.subgroup_classes[1].representative
        space = coset_space(self.s3, rep)
        self.assertEqual(space.gset.size, 3)
        self.assertEqual(space.representatives[0], 0)
        self.assertEqual(space.gset.validate(), [])
        for h in rep.elements:
            self.assertEqual(space.coset_of[h], 0)

    def test_orbits(self):
        """Test a coset space is one orbit with isotropy of the subgroup's order"""
        rep = self.s3.subgroup_classes[2].representative
        result = orbits(coset_space(self.s3, rep).gset)
        self.assertEqual(len(result), 1)
        self.assertEqual(result[0].isotropy_order, 3)
        self.assertEqual(len(result[0].elements), 2)

    def test_invalid_action(self):
        """Test an action that is not a homomorphism is reported"""
        z3 = cyclic_group(3)
        action = np.array([[0, 1, 2], [1, 0, 2], [1, 0, 2]])
        self.assertTrue(GSet(z3, 3, action).validate())

    def test_fixed_cosets(self):
        """Test (S3/C2)^C2 has one point and (S3/1)^C3 is empty"""
        classes = self.s3.subgroup_classes
        c2, c3 = classes[1].representative, classes[2].representative
        self.assertEqual(len(fixed_cosets(self.s3, c2, c2).cosets), 1)
        self.assertEqual(len(fixed_cosets(self.s3, classes[0].representative, c3).cosets), 0)
        self.assertEqual(len(fixed_cosets(self.s3, c3, c3).cosets), 2)

    def test_fixed_cosets_conjugate_fixer(self):
        """Test (G/H)^(gKg^-1) is the translate g (G/H)^K and N K preserves (G/H)^K"""
        rng = np.random.default_rng(7)
        klein = direct_product(cyclic_group(2), cyclic_group(2))
        for group in (self.s3, dihedral_group(4), klein):
            subgroups = group.subgroups
            for _ in range(25):
                H = subgroups[int(rng.integers(len(subgroups)))]
                K = subgroups[int(rng.integers(len(subgroups)))]
                g = int(rng.integers(group.order))
                space = coset_space(group, H)
                fixed = fixed_cosets(group, H, K)
                moved = fixed_cosets(group, H, group.conjugate_subgroup(g, K))
                self.assertEqual(moved.cosets, tuple(sorted(int(space.gset.action[g, c]) for c in fixed.cosets)))
                for n in normalizer(group, K).elements:
                    self.assertEqual(sorted(int(space.gset.action[n, c]) for c in fixed.cosets), list(fixed.cosets))
                self.assertEqual(fixed.action.validate(), [])


if __name__ == '__main__':
    unittest.main()
