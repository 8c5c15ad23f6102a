"""Tests for the JSON/YAML input and output formats"""

import json
import tempfile
import unittest
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import ComplexValidationError, InputFormatError, MapValidationError
from src.lefschetz import enumerate_classes, equivariant_lefschetz_class
from src.loaders import (KIND_COMPLEX, KIND_GROUP, KIND_ORBIT_SET, KIND_PRESENTATION, complex_to_dict,
                         document_kind, load_complex, load_fixed_points, load_group, load_map,
                         load_orbit_set, load_presentation, orbit_set_to_dict, parse_complex,
                         parse_fixed_points, parse_group, parse_map, parse_orbit_set, parse_presentation,
                         read_document, write_json)
from src.localfix import local_lefschetz_class
from src.presented import presented_index

FIXTURES = Path(__file__).parent.parent / 'fixtures'


class TestGroupLoading(unittest.TestCase):
    """Test the group formats"""

    def test_names(self):
        """Test short group names"""
        self.assertEqual(parse_group('S3').order, 6)
        self.assertEqual(parse_group('D8').order, 8)
        self.assertEqual(parse_group('Z2xZ3').order, 6)
        self.assertEqual(parse_group('1').order, 1)

    def test_unknown_name(self):
        """Test an unknown group name"""
        with self.assertRaises(InputFormatError):
            parse_group('Q8x')

    def test_files(self):
        """Test a YAML multiplication table and a JSON permutation group"""
        self.assertEqual(load_group(FIXTURES / 'z2.yaml').order, 2)
        s3 = load_group(FIXTURES / 's3.json')
        self.assertEqual(s3.order, 6)
        self.assertEqual(s3.name, 'S3')

    def test_order_mismatch(self):
        """Test a declared order that disagrees with the table"""
        with self.assertRaises(InputFormatError):
            parse_group({'order': 3, 'mul': [[0, 1], [1, 0]]})

    def test_unsupported_suffix(self):
        """Test files other than JSON and YAML are refused"""
        with self.assertRaises(InputFormatError):
            read_document(FIXTURES / 'reflection_circle.txt')

    def test_missing_file(self):
        """Test a missing file"""
        with self.assertRaises(InputFormatError):
            load_complex(FIXTURES / 'missing.json')


class TestComplexLoading(unittest.TestCase):
    """Test complexes, maps and fixed-point data from files"""

    def setUp(self):
        """Load the reflection circle"""
        self.X = load_complex(FIXTURES / 'reflection_circle.json')

    def test_complex(self):
        """Test labels and action of the loaded circle"""
        self.assertEqual(self.X.labels, ('x0', 'x1', 'y0', 'y1'))
        self.assertEqual(self.X.action.tolist(), [[0, 1, 2, 3], [0, 1, 3, 2]])

    def test_document_kinds(self):
        """Test documents are classified by their keys"""
        self.assertEqual(document_kind(read_document(FIXTURES / 'reflection_circle.json')), KIND_COMPLEX)
        self.assertEqual(document_kind(read_document(FIXTURES / 'dihedral.json')), KIND_PRESENTATION)
        self.assertEqual(document_kind(read_document(FIXTURES / 'reflection_circle_orbits.json')), KIND_ORBIT_SET)
        self.assertEqual(document_kind(read_document(FIXTURES / 's3.json')), KIND_GROUP)
        with self.assertRaises(InputFormatError):
            document_kind([1, 2])

    def test_map_and_fixed_points(self):
        """Test the squaring map files give matching global and local classes"""
        f = load_map(FIXTURES / 'degree2_map.json', self.X)
        self.assertEqual(f.carrier, (1, 1, 2, 3))
        data = load_fixed_points(FIXTURES / 'degree2_fixedpoints.json', self.X)
        self.assertEqual(len(data), 1)
        basis = enumerate_classes(self.X)
        self.assertEqual(equivariant_lefschetz_class(f, basis), local_lefschetz_class(self.X, data, basis))

    def test_empty_fixed_points(self):
        """Test an empty point list"""
        self.assertEqual(load_fixed_points(FIXTURES / 'no_fixedpoints.json', self.X), [])

    def test_unknown_cell(self):
        """Test a map naming a cell that does not exist"""
        document = {'carrier': {'x0': 'x0', 'x1': 'x1', 'y0': 'z', 'y1': 'y1'}, 'chain': {}}
        with self.assertRaises(InputFormatError):
            parse_map(document, self.X)

    def test_invalid_map(self):
        """Test a map that is not equivariant"""
        document = {'carrier': {'x0': 'x0', 'x1': 'x1', 'y0': 'y0', 'y1': 'y1'},
                    'chain': {'x0': {'x0': 1}, 'x1': {'x1': 1}, 'y0': {'y0': 1}, 'y1': {'y0': 1}}}
        with self.assertRaises(MapValidationError):
            parse_map(document, self.X)

    def test_invalid_complex(self):
        """Test a complex whose action is not a permutation"""
        document = json.loads((FIXTURES / 'reflection_circle.json').read_text())
        document['action'][1] = ['x0', 'x1', 'y1', 'x1']
        with self.assertRaises(ComplexValidationError):
            parse_complex(document)

    def test_ragged_action_row(self):
        """Test an action row shorter than the cell list"""
        document = json.loads((FIXTURES / 'reflection_circle.json').read_text())
        document['action'][1] = ['x0', 'x1', 'y1']
        with self.assertRaises(InputFormatError):
            parse_complex(document)

    def test_fixed_point_unknown_vertex(self):
        """Test fixed-point data naming a vertex that does not exist"""
        document = json.loads((FIXTURES / 'degree2_fixedpoints.json').read_text())
        document['points'][0]['vertex'] = 'x7'
        with self.assertRaises(InputFormatError):
            parse_fixed_points(document, self.X)

    def test_fixed_point_bad_entries(self):
        """Test non-numeric stabilizer and differential entries"""
        document = json.loads((FIXTURES / 'degree2_fixedpoints.json').read_text())
        document['points'][0]['stabilizer'] = [0, 'one']
        with self.assertRaises(InputFormatError):
            parse_fixed_points(document, self.X)
        document = json.loads((FIXTURES / 'degree2_fixedpoints.json').read_text())
        document['points'][0]['stabilizer'] = [0, 9]
        with self.assertRaises(InputFormatError):
            parse_fixed_points(document, self.X)

    def test_write_and_reload(self):
        """Test a written complex reloads with the same cells and action"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'circle.json'
            write_json(complex_to_dict(self.X), path)
            again = load_complex(path)
        self.assertEqual(again.labels, self.X.labels)
        self.assertEqual(again.action.tolist(), self.X.action.tolist())
        self.assertEqual(again.cells, self.X.cells)


class TestPresentationLoading(unittest.TestCase):
    """Test presentation files"""

    def test_dihedral_file(self):
        """Test the dihedral presentation file"""
        P = load_presentation(FIXTURES / 'dihedral.json')
        self.assertEqual(P.labels, ('x0', 'x1', 'y'))
        self.assertEqual(presented_index(P).as_dict(), {'x0': '1', 'x1': '1', 'y': '-1'})

    def test_invalid_presentation(self):
        """Test a presentation with a bad sign is refused"""
        document = json.loads((FIXTURES / 'dihedral.json').read_text())
        document['zeros'][0]['signs'] = [3, 1]
        with self.assertRaises(InputFormatError):
            parse_presentation(document)


class TestOrbitSetLoading(unittest.TestCase):
    """Test orbit-category set files"""

    def setUp(self):
        """Read the reflection circle orbit set"""
        self.document = json.loads((FIXTURES / 'reflection_circle_orbits.json').read_text())

    def test_write_and_reload(self):
        """Test a written orbit set reloads with the same values and maps"""
        S = load_orbit_set(FIXTURES / 'reflection_circle_orbits.json')
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'orbits.json'
            write_json(orbit_set_to_dict(S), path)
            again = load_orbit_set(path)
        self.assertEqual(again.group.order, S.group.order)
        self.assertEqual(again.maps, S.maps)
        for i, value in S.values.items():
            self.assertEqual(again.values[i].size, value.size)
            self.assertEqual(again.values[i].action.tolist(), value.action.tolist())

    def test_class_out_of_range(self):
        """Test a value for a subgroup class the group does not have"""
        self.document['values'][1]['class'] = 5
        with self.assertRaises(InputFormatError):
            parse_orbit_set(self.document)

    def test_map_missing_key(self):
        """Test a map record without its source class"""
        del self.document['maps'][0]['k']
        with self.assertRaises(InputFormatError):
            parse_orbit_set(self.document)

    def test_action_wrong_shape(self):
        """Test an action table that does not fit the declared size"""
        self.document['values'][1]['action'] = [[0, 1, 2]]
        with self.assertRaises(InputFormatError):
            parse_orbit_set(self.document)


if __name__ == '__main__':
    unittest.main()
