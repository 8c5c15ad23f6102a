"""
Input and output file formats
Groups, complexes, maps, fixed-point data, component presentations and
orbit-category sets as JSON/YAML documents
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .constants import FIXED_POINT_MODES, MODE_MAP, SUPPORTED_INPUT_FORMATS
from .corpus import standard_group
from .errors import InputFormatError
from .fingroup import FiniteGroup, GSet, Subgroup, group_from_permutations, weyl_group
from .gcw import Cell, CellularGMap, GCWComplex
from .localfix import FixedPointDatum, OrthogonalRepresentation, rational_matrix
from .presented import ComponentPresentation, ZeroRecord
from .realize import OrbitCategorySet
from .utils import load_structured

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

KIND_GROUP = 'group'
KIND_COMPLEX = 'complex'
KIND_PRESENTATION = 'presentation'
KIND_ORBIT_SET = 'orbit_set'


def read_document(filepath: PathLike) -> Any:
    path = Path(filepath)
    if path.suffix.lower() not in SUPPORTED_INPUT_FORMATS:
        raise InputFormatError(f"unsupported input format {path.suffix!r} for {path}")
    return load_structured(path)


def document_kind(document: Any) -> str:
    """Classify a parsed document by its keys"""
    if not isinstance(document, dict):
        raise InputFormatError("top level of an input document must be an object")
    if 'mor' in document:
        return KIND_PRESENTATION
    if 'cells' in document and 'action' in document:
        return KIND_COMPLEX
    if 'values' in document:
        return KIND_ORBIT_SET
    if 'mul' in document or 'generators' in document or 'name' in document:
        return KIND_GROUP
    raise InputFormatError(f"cannot tell what kind of document has keys {sorted(document)}")


def _require(document: Dict, key: str, where: str) -> Any:
    if key not in document:
        raise InputFormatError(f"{where}: missing key {key!r}")
    return document[key]


def parse_group(source: Any, base_dir: Optional[Path] = None) -> FiniteGroup:
    """
    A group from a name ("S3"), a path, {"order", "mul"}, {"degree", "generators"} or {"name"}.
    """
    if isinstance(source, str):
        candidate = (base_dir / source) if base_dir is not None else Path(source)
        if candidate.suffix.lower() in SUPPORTED_INPUT_FORMATS:
            return parse_group(read_document(candidate), candidate.parent)
        try:
            return standard_group(source)
        except ValueError as e:
            raise InputFormatError(str(e)) from e
    if not isinstance(source, dict):
        raise InputFormatError("group must be a name, a path or an object")
    name = str(source.get('name', ''))
    if 'mul' in source:
        mul = source['mul']
        if 'order' in source and int(source['order']) != len(mul):
            raise InputFormatError(f"group order {source['order']} does not match a table with {len(mul)} rows")
        return FiniteGroup(mul, name=name)
    if 'generators' in source:
        return group_from_permutations(int(_require(source, 'degree', 'group')), source['generators'], name=name)
    if name:
        return parse_group(name)
    raise InputFormatError("group object needs 'mul', 'generators' or 'name'")


def load_group(filepath: PathLike) -> FiniteGroup:
    path = Path(filepath)
    return parse_group(read_document(path), path.parent)


def parse_complex(document: Dict, base_dir: Optional[Path] = None) -> GCWComplex:
    """
    A complex from {"group", "cells": [{"id", "dim", "faces", "boundary"}], "action"}.

    Cell ids may be any strings or integers; action rows list the image of each
    cell (in cell order) under each group element.
    """
    group = parse_group(_require(document, 'group', 'complex'), base_dir)
    raw_cells = _require(document, 'cells', 'complex')
    labels = [str(_require(c, 'id', 'cell')) for c in raw_cells]
    if len(set(labels)) != len(labels):
        raise InputFormatError("cell ids are not distinct")
    index = {label: i for i, label in enumerate(labels)}

    def ref(value) -> int:
        key = str(value)
        if key not in index:
            raise InputFormatError(f"unknown cell {value!r}")
        return index[key]

    cells = []
    for i, raw in enumerate(raw_cells):
        boundary = tuple((ref(face), int(coeff)) for face, coeff in raw.get('boundary', []))
        cells.append(Cell(i, int(_require(raw, 'dim', 'cell')), frozenset(ref(f) for f in raw.get('faces', [])),
                          boundary))
    action = _require(document, 'action', 'complex')
    if len(action) != group.order:
        raise InputFormatError(f"action needs one row per group element ({group.order}), got {len(action)}")
    for g, row in enumerate(action):
        if len(row) != len(cells):
            raise InputFormatError(f"action row {g} has {len(row)} entries, expected one per cell ({len(cells)})")
    table = np.array([[ref(v) for v in row] for row in action], dtype=np.int64).reshape(group.order, len(cells))
    return GCWComplex(group, cells, table, labels=labels)


def load_complex(filepath: PathLike) -> GCWComplex:
    path = Path(filepath)
    return parse_complex(read_document(path), path.parent)


def parse_map(document: Dict, X: GCWComplex) -> CellularGMap:
    """A map from {"carrier": {cell: cell}, "chain": {cell: {cell: coefficient}}}"""
    carrier_doc = _require(document, 'carrier', 'map')
    chain_doc = _require(document, 'chain', 'map')
    try:
        carrier = [X.index_of(str(carrier_doc[label])) for label in X.labels]
        chain = [{X.index_of(str(c)): int(v) for c, v in (chain_doc.get(label) or {}).items()}
                 for label in X.labels]
    except (KeyError, ValueError) as e:
        raise InputFormatError(f"map does not cover the complex: {e}") from e
    return CellularGMap(X, carrier, chain)


def load_map(filepath: PathLike, X: GCWComplex) -> CellularGMap:
    return parse_map(read_document(filepath), X)


def parse_fixed_points(document: Any, X: GCWComplex) -> List[FixedPointDatum]:
    """
    Fixed-point data from a list (or {"points": [...]}) of
    {"vertex", "stabilizer", "rep": {element: matrix}, "differential", "mode"}.
    """
    records = document.get('points', []) if isinstance(document, dict) else document
    if not isinstance(records, list):
        raise InputFormatError("fixed-point data must be a list")
    data = []
    for record in records:
        try:
            datum = _parse_fixed_point(record, X)
        except (IndexError, KeyError, TypeError, ValueError) as e:
            raise InputFormatError(f"malformed fixed-point record: {e}") from e
        datum.validate(X)
        data.append(datum)
    return data


def _parse_fixed_point(record: Dict, X: GCWComplex) -> FixedPointDatum:
    if not isinstance(record, dict):
        raise InputFormatError("a fixed-point record must be an object")
    vertex = X.index_of(str(_require(record, 'vertex', 'fixed point')))
    elements = [int(g) for g in _require(record, 'stabilizer', 'fixed point')]
    stabilizer = X.group.subgroup(elements)
    rep_doc = _require(record, 'rep', 'fixed point')
    if not isinstance(rep_doc, dict):
        raise InputFormatError("a representation must map elements to matrices")
    matrices = []
    for g in stabilizer.elements:
        if str(g) not in {str(k) for k in rep_doc}:
            raise InputFormatError(f"representation misses element {g}")
        matrices.append(rational_matrix(next(v for k, v in rep_doc.items() if str(k) == str(g))))
    rep = OrthogonalRepresentation(stabilizer.as_group, matrices)
    mode = record.get('mode', MODE_MAP)
    if mode not in FIXED_POINT_MODES:
        raise InputFormatError(f"unknown mode {mode!r}")
    differential = rational_matrix(_require(record, 'differential', 'fixed point'))
    return FixedPointDatum(vertex, stabilizer, rep, differential, mode)


def load_fixed_points(filepath: PathLike, X: GCWComplex) -> List[FixedPointDatum]:
    return parse_fixed_points(read_document(filepath), X)


def parse_presentation(document: Dict, base_dir: Optional[Path] = None) -> ComponentPresentation:
    """
    A presentation from {"classes", "mor": [{"y", "x", "orbits"}], "cells", "zeros"}.

    "classes" lists the labels in subconjugacy-compatible order.
    """
    labels = tuple(str(c) for c in _require(document, 'classes', 'presentation'))
    mor = {}
    for record in _require(document, 'mor', 'presentation'):
        key = (str(_require(record, 'y', 'mor')), str(_require(record, 'x', 'mor')))
        mor[key] = mor.get(key, ()) + tuple(int(n) for n in _require(record, 'orbits', 'mor'))
    cells = {str(k): tuple(int(n) for n in v) for k, v in (document.get('cells') or {}).items()}
    zeros = []
    for record in document.get('zeros') or []:
        zeros.append(ZeroRecord(parse_group(_require(record, 'group', 'zero'), base_dir),
                                tuple(int(s) for s in _require(record, 'signs', 'zero')),
                                tuple(str(c) for c in _require(record, 'localization', 'zero')),
                                name=str(record.get('name', ''))))
    presentation = ComponentPresentation(labels, mor, cells, tuple(zeros), name=str(document.get('name', '')))
    presentation.validate().raise_if_invalid(InputFormatError)
    return presentation


def load_presentation(filepath: PathLike) -> ComponentPresentation:
    path = Path(filepath)
    return parse_presentation(read_document(path), path.parent)


def parse_orbit_set(document: Dict, base_dir: Optional[Path] = None) -> OrbitCategorySet:
    """
    An orbit-category set from {"group", "values": [{"class", "size", "action"}],
    "maps": [{"k", "h", "g", "images"}]}; action rows are indexed by Weyl group elements.
    """
    group = parse_group(_require(document, 'group', 'orbit set'), base_dir)
    values: Dict[int, GSet] = {}
    for record in _require(document, 'values', 'orbit set'):
        i = int(_require(record, 'class', 'value'))
        if not 0 <= i < len(group.subgroup_classes):
            raise InputFormatError(f"value class {i} out of range (group has {len(group.subgroup_classes)} classes)")
        weyl = weyl_group(group, group.subgroup_classes[i].representative)
        size = int(_require(record, 'size', 'value'))
        action = record.get('action') or [list(range(size))] * weyl.order
        try:
            table = np.array(action, dtype=np.int64).reshape(weyl.order, size)
        except ValueError as e:
            raise InputFormatError(f"value class {i}: action is not a {weyl.order}x{size} table") from e
        values[i] = GSet(weyl.group, size, table)
    for i in range(len(group.subgroup_classes)):
        if i not in values:
            weyl = weyl_group(group, group.subgroup_classes[i].representative)
            values[i] = GSet(weyl.group, 0, np.zeros((weyl.order, 0), dtype=np.int64))
    maps = {}
    for record in document.get('maps') or []:
        key = tuple(int(_require(record, name, 'map')) for name in ('k', 'h', 'g'))
        maps[key] = tuple(int(v) for v in record.get('images', []))
    return OrbitCategorySet(group, values, maps)


def load_orbit_set(filepath: PathLike) -> OrbitCategorySet:
    path = Path(filepath)
    return parse_orbit_set(read_document(path), path.parent)


# Writers


def group_to_dict(group: FiniteGroup) -> Dict:
    return {'name': group.name, 'order': group.order, 'mul': group.mul.tolist()}


def complex_to_dict(X: GCWComplex) -> Dict:
    return {
        'group': group_to_dict(X.group),
        'cells': [{'id': X.label(c.id), 'dim': c.dim,
                   'faces': sorted(X.label(f) for f in c.faces),
                   'boundary': [[X.label(f), v] for f, v in c.boundary]} for c in X.cells],
        'action': [[X.label(int(v)) for v in row] for row in X.action],
    }


def orbit_set_to_dict(S: OrbitCategorySet) -> Dict:
    return {
        'group': group_to_dict(S.group),
        'values': [{'class': i, 'size': v.size, 'action': v.action.tolist()} for i, v in sorted(S.values.items())],
        'maps': [{'k': k, 'h': h, 'g': g, 'images': list(images)} for (k, h, g), images in sorted(S.maps.items())],
    }


def write_json(document: Any, filepath: PathLike):
    """Deterministic JSON (sorted keys, two-space indent)"""
    path = Path(filepath)
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump(document, fh, sort_keys=True, indent=2)
        fh.write('\n')
    logger.info("wrote %s", path)
