"""
Command-line front door
Loads inputs, dispatches computations and verifications, prints tables or JSON
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from .burnside import BurnsideElement, class_labels, multiply, table_of_marks
from .config import load_config
from .constants import (EXIT_COMPUTATION_ERROR, EXIT_OK, EXIT_USAGE_ERROR, FORMAT_JSON, FORMAT_TABLE, MODE_FIELD,
                        OUTPUT_FORMATS, SUPPORTED_INPUT_FORMATS, VERDICT_PASS)
from .errors import EquilefError
from .fixtures import FixtureManager
from .gcw import CellularGMap, GCWComplex
from .lefschetz import (UGElement, character_map, component_orbifold_euler, component_orbifold_lefschetz,
                        enumerate_classes, equivariant_lefschetz_class, orbifold_euler, orbifold_lefschetz,
                        universal_euler)
from .loaders import (KIND_COMPLEX, KIND_ORBIT_SET, KIND_PRESENTATION, complex_to_dict, document_kind,
                      load_group, parse_complex, parse_fixed_points, parse_group, parse_map, parse_orbit_set,
                      parse_presentation, read_document, write_json)
from .localfix import FixedPointDatum, local_lefschetz_class, vector_field_index
from .presented import (ComponentPresentation, presented_character_map, presented_euler, presented_index,
                        presented_orbifold_euler)
from .realize import realize_orbit_set, verify_realization
from .utils import format_fraction, format_table, setup_logging
from .verifier import IdentityVerifier

logger = logging.getLogger(__name__)

COMPUTE_TARGETS = ['euler', 'lefschetz', 'character', 'orbifold', 'index', 'local']
VERIFY_TARGETS = ['agree', 'character-lefschetz', 'character-euler', 'character-local', 'orbifold', 'suite']
BURNSIDE_TARGETS = ['marks', 'mul']


class UsageError(Exception):
    """Bad command-line input (exit code 2)"""


@dataclass
class Inputs:
    """Everything named on the command line, after loading"""
    complex: Optional[GCWComplex] = None
    map: Optional[CellularGMap] = None
    fixed_points: List[FixedPointDatum] = field(default_factory=list)
    zeros: List[FixedPointDatum] = field(default_factory=list)
    presentation: Optional[ComponentPresentation] = None

    def require_complex(self) -> GCWComplex:
        if self.complex is None:
            raise UsageError("this command needs a complex")
        return self.complex

    def map_or_identity(self) -> CellularGMap:
        return self.map or CellularGMap.identity(self.require_complex())


def resolve_path(name: str) -> Optional[Path]:
    """An existing file, trying the supported extensions when none is given"""
    path = Path(name)
    if path.is_file():
        return path
    if not path.suffix:
        for suffix in SUPPORTED_INPUT_FORMATS:
            candidate = path.with_suffix(suffix)
            if candidate.is_file():
                return candidate
    return None


def load_inputs(names: Sequence[str]) -> Inputs:
    """
    Load a primary input (complex, presentation or built-in fixture) and
    secondary map and fixed-point files.
    """
    if not names:
        raise UsageError("no input given")
    inputs = Inputs()
    primary, rest = names[0], names[1:]
    path = resolve_path(primary)
    if path is None:
        if primary not in FixtureManager.get_fixture_names():
            raise UsageError(f"no such file or fixture: {primary}")
        fixture = FixtureManager.get_fixture(primary)
        inputs.complex, inputs.map, inputs.presentation = fixture.complex, fixture.map, fixture.presentation
        inputs.fixed_points, inputs.zeros = list(fixture.fixed_points), list(fixture.zeros)
    else:
        document = read_document(path)
        kind = document_kind(document)
        if kind == KIND_PRESENTATION:
            inputs.presentation = parse_presentation(document, path.parent)
        elif kind == KIND_COMPLEX:
            inputs.complex = parse_complex(document, path.parent)
            if 'map' in document:
                inputs.map = parse_map(document['map'], inputs.complex)
            if 'points' in document:
                _add_points(inputs, parse_fixed_points(document['points'], inputs.complex))
        else:
            raise UsageError(f"{path} holds a {kind}, not a complex or presentation")

    for name in rest:
        path = resolve_path(name)
        if path is None:
            raise UsageError(f"no such file: {name}")
        X = inputs.require_complex()
        document = read_document(path)
        if isinstance(document, dict) and 'carrier' in document:
            inputs.map = parse_map(document, X)
        else:
            _add_points(inputs, parse_fixed_points(document, X))
    return inputs


def _add_points(inputs: Inputs, data: List[FixedPointDatum]):
    for datum in data:
        (inputs.zeros if datum.mode == MODE_FIELD else inputs.fixed_points).append(datum)


def _element_output(title: str, element: UGElement) -> Dict:
    return {
        'title': title,
        'headers': ['class', 'coefficient'],
        'rows': [[label, format_fraction(c)] for label, c in zip(element.basis.labels, element.coeffs)],
        'json': {'classes': list(element.basis.labels), 'coefficients': element.as_dict(), 'element': str(element)},
    }


def compute(target: str, inputs: Inputs) -> Dict:
    """Run one compute target and return its printable output"""
    P = inputs.presentation
    if target == 'euler':
        if P is not None:
            return _element_output("chi^G", presented_euler(P))
        return _element_output("chi^G", universal_euler(inputs.require_complex()))

    if target == 'lefschetz':
        return _element_output("Lambda^G", equivariant_lefschetz_class(inputs.map_or_identity()))

    if target == 'character':
        matrix = presented_character_map(P) if P is not None else character_map(inputs.require_complex())
        return {
            'title': "ch^G",
            'headers': ['class'] + list(matrix.labels),
            'rows': matrix.format_rows(),
            'json': {'classes': list(matrix.labels),
                     'matrix': [[format_fraction(v) for v in row] for row in matrix.entries]},
        }

    if target == 'orbifold':
        if P is not None:
            values = presented_orbifold_euler(P)
            rows = [[label, format_fraction(values[label])] for label in P.labels]
            return {'title': "orbifold Euler characteristics", 'headers': ['class', 'euler'], 'rows': rows,
                    'json': {'classes': list(P.labels), 'euler': {k: format_fraction(v) for k, v in values.items()}}}
        X = inputs.require_complex()
        f = inputs.map_or_identity()
        basis = enumerate_classes(X)
        rows, euler, lefschetz = [], {}, {}
        for y, label in enumerate(basis.labels):
            euler[label] = format_fraction(component_orbifold_euler(basis, y))
            value = component_orbifold_lefschetz(f, basis, y)
            lefschetz[label] = format_fraction(value) if value is not None else None
            rows.append([label, euler[label], lefschetz[label] if value is not None else '-'])
        rows.append(['total', format_fraction(orbifold_euler(X)), format_fraction(orbifold_lefschetz(f))])
        return {'title': "orbifold Euler characteristics and Lefschetz numbers",
                'headers': ['class', 'euler', 'lefschetz'], 'rows': rows,
                'json': {'classes': list(basis.labels), 'euler': euler, 'lefschetz': lefschetz,
                         'total': {'euler': format_fraction(orbifold_euler(X)),
                                   'lefschetz': format_fraction(orbifold_lefschetz(f))}}}

    if target == 'index':
        if P is not None:
            return _element_output("i^G", presented_index(P))
        return _element_output("i^G", vector_field_index(inputs.require_complex(), inputs.zeros))

    if target == 'local':
        return _element_output("Lambda_loc^G", local_lefschetz_class(inputs.require_complex(), inputs.fixed_points))

    raise UsageError(f"unknown compute target {target!r}")


def verify(target: str, inputs: Optional[Inputs], verifier: IdentityVerifier) -> Dict:
    """Run one verification; the output carries a 'passed' flag"""
    if target == 'suite':
        results = verifier.suite()
        rows = [[name, r['passed'], r['failed'], r['total']] for name, r in results.items()]
        return {'title': "verification suite", 'headers': ['section', 'passed', 'failed', 'total'], 'rows': rows,
                'json': results, 'passed': results['overall']['failed'] == 0}

    if target == 'agree':
        if inputs.presentation is not None:
            result = verifier.verify_presented(inputs.presentation)
        else:
            result = verifier.verify_agree(inputs.require_complex(), inputs.map_or_identity(), inputs.fixed_points)
        rows = [['global', result['global']], ['local', result['local']]]
        rows += [[d['class'], f"{d['global']} != {d['local']}"] for d in result['diffs']]
        rows.append(['verdict', result['verdict']])
        return {'title': "global and local classes", 'headers': ['side', 'value'], 'rows': rows, 'json': result,
                'passed': result['verdict'] == VERDICT_PASS}

    X = inputs.require_complex()
    if target == 'character-lefschetz':
        result = verifier.character_lefschetz(inputs.map_or_identity())
    elif target == 'character-euler':
        result = verifier.character_euler(X)
    elif target == 'character-local':
        result = verifier.character_local(X, inputs.fixed_points)
    elif target == 'orbifold':
        result = verifier.orbifold_fixed_points(inputs.map_or_identity(), inputs.fixed_points)
    else:
        raise UsageError(f"unknown verify target {target!r}")
    rows = [[d['name'], d.get('expected', ''), d.get('actual', ''), d['status']] for d in result['details']]
    return {'title': target, 'headers': ['class', 'expected', 'actual', 'status'], 'rows': rows, 'json': result,
            'passed': result['failed'] == 0}


def _parse_coefficients(text: str, size: int) -> List[int]:
    try:
        values = [int(v) for v in text.split(',')]
    except ValueError as e:
        raise UsageError(f"coefficients must be comma-separated integers: {text!r}") from e
    if len(values) != size:
        raise UsageError(f"expected {size} coefficients, got {len(values)}")
    return values


def burnside(target: str, group_name: str, operands: Sequence[str]) -> Dict:
    path = resolve_path(group_name)
    group = load_group(path) if path is not None else parse_group(group_name)
    labels = class_labels(group)
    if target == 'marks':
        marks = table_of_marks(group)
        return {'title': f"table of marks of {group.name or 'group'}", 'headers': ['K/H'] + labels,
                'rows': [[label] + row for label, row in zip(labels, marks.rows())],
                'json': {'classes': labels, 'marks': marks.rows()}}
    if target == 'mul':
        if len(operands) != 2:
            raise UsageError("burnside mul needs two coefficient lists")
        a = BurnsideElement(group, _parse_coefficients(operands[0], len(labels)))
        b = BurnsideElement(group, _parse_coefficients(operands[1], len(labels)))
        product = multiply(a, b)
        rows = [[name, str(e), ' '.join(str(m) for m in e.marks())]
                for name, e in (('a', a), ('b', b), ('a*b', product))]
        return {'title': "Burnside product", 'headers': ['', 'element', 'marks'], 'rows': rows,
                'json': {'classes': labels, 'product': list(product.coeffs), 'element': str(product),
                         'marks': list(product.marks())}}
    raise UsageError(f"unknown burnside target {target!r}")


def realize(orbit_set_name: str, output: Optional[str]) -> Dict:
    path = resolve_path(orbit_set_name)
    if path is None:
        raise UsageError(f"no such file: {orbit_set_name}")
    document = read_document(path)
    if document_kind(document) != KIND_ORBIT_SET:
        raise UsageError(f"{path} is not an orbit-category set")
    S = parse_orbit_set(document, path.parent)
    X = realize_orbit_set(S)
    verified = verify_realization(X, S)
    if output:
        write_json(complex_to_dict(X), output)
    counts = [len(X.cells_of_dim(p)) for p in range(X.dim + 1)] if X.n_cells else []
    rows = [[f"{p}-cells", n] for p, n in enumerate(counts)] + [['verified', 'yes' if verified else 'no']]
    return {'title': "realization", 'headers': ['item', 'value'], 'rows': rows,
            'json': {'complex': complex_to_dict(X), 'verified': verified}, 'passed': verified}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='equilef',
                                     description="Exact equivariant Lefschetz classes for finite proper G-CW complexes")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('--config', help="Path to a YAML configuration file")
    parser.add_argument('--format', choices=OUTPUT_FORMATS, help="Output format (default from config)")
    parser.add_argument('-v', '--verbose', action='store_true', help="Debug logging")
    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('compute', help="Compute an invariant")
    p.add_argument('target', choices=COMPUTE_TARGETS)
    p.add_argument('inputs', nargs='+', help="Complex or presentation (file or fixture name), then map/point files")

    p = commands.add_parser('verify', help="Check an identity")
    p.add_argument('target', choices=VERIFY_TARGETS)
    p.add_argument('inputs', nargs='*', help="Complex or presentation, then map/point files (none for suite)")

    p = commands.add_parser('realize', help="Realize an orbit-category set by a 1-dimensional complex")
    p.add_argument('orbit_set')
    p.add_argument('-o', '--output', help="Write the realized complex as JSON")

    p = commands.add_parser('burnside', help="Burnside ring tables and products")
    p.add_argument('target', choices=BURNSIDE_TARGETS)
    p.add_argument('group', help="Group name (Z2, S3, D8, Z2xZ2, ...) or group file")
    p.add_argument('operands', nargs='*', help="For mul: two comma-separated coefficient lists")

    commands.add_parser('fixtures', help="List built-in fixtures")
    return parser


def render(output: Dict, fmt: str) -> str:
    if fmt == FORMAT_JSON:
        return json.dumps(output['json'], sort_keys=True, indent=2, default=str)
    return f"{output['title']}\n{format_table(output['headers'], output['rows'])}"


def run(args: argparse.Namespace, config: Dict) -> Dict:
    if args.command == 'compute':
        return compute(args.target, load_inputs(args.inputs))
    if args.command == 'verify':
        inputs = load_inputs(args.inputs) if args.target != 'suite' else None
        return verify(args.target, inputs, IdentityVerifier(config))
    if args.command == 'realize':
        return realize(args.orbit_set, args.output)
    if args.command == 'burnside':
        return burnside(args.target, args.group, args.operands)
    names = FixtureManager.get_fixture_names()
    rows = [[name, FixtureManager.get_fixture(name).description] for name in names]
    return {'title': "built-in fixtures", 'headers': ['name', 'description'], 'rows': rows,
            'json': {name: description for name, description in rows}}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Returns:
        0 on success, 1 on a computational error or failed verification, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE_ERROR

    try:
        config = load_config(args.config)
    except EquilefError as e:
        print(f"equilef: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    level = 'DEBUG' if args.verbose else config['logging']['level']
    setup_logging(level, config['logging']['format'])
    fmt = args.format or config['defaults']['output_format']
    if fmt not in OUTPUT_FORMATS:
        fmt = FORMAT_TABLE

    try:
        output = run(args, config)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"equilef: error: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except EquilefError as e:
        logger.debug("computation failed", exc_info=True)
        print(f"equilef: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_COMPUTATION_ERROR

    print(render(output, fmt))
    if not output.get('passed', True):
        return EXIT_COMPUTATION_ERROR
    return EXIT_OK
