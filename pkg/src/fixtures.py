"""Built-in named instances: complexes, maps, fixed-point data and presentations"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .constants import MODE_FIELD, MODE_MAP
from .fingroup import FiniteGroup, cyclic_group, trivial_group
from .gcw import Cell, CellularGMap, GCWComplex
from .localfix import FixedPointDatum, OrthogonalRepresentation, rational_matrix
from .presented import ComponentPresentation, dihedral_presentation

logger = logging.getLogger(__name__)


@dataclass
class Fixture:
    """A named instance with whatever data it carries"""
    name: str
    description: str
    complex: Optional[GCWComplex] = None
    map: Optional[CellularGMap] = None
    fixed_points: List[FixedPointDatum] = field(default_factory=list)
    zeros: List[FixedPointDatum] = field(default_factory=list)
    presentation: Optional[ComponentPresentation] = None


def _sign_datum(X: GCWComplex, vertex: int, differential: int, mode: str) -> FixedPointDatum:
    """A vertex fixed by Z/2, which acts by -1 on the tangent line"""
    stabilizer = X.stabilizer(vertex)
    rep = OrthogonalRepresentation(stabilizer.as_group, [rational_matrix([[1]]), rational_matrix([[-1]])])
    return FixedPointDatum(vertex, stabilizer, rep, rational_matrix([[differential]]), mode)


def reflection_circle() -> GCWComplex:
    """
    The circle with Z/2 acting by complex conjugation.

    Fixed vertices x0 (at -1) and x1 (at 1); the upper and lower arcs y0, y1
    run from x0 to x1 and are swapped.
    """
    cells = [
        Cell(0, 0),
        Cell(1, 0),
        Cell(2, 1, frozenset({0, 1}), ((1, 1), (0, -1))),
        Cell(3, 1, frozenset({0, 1}), ((1, 1), (0, -1))),
    ]
    action = [[0, 1, 2, 3], [0, 1, 3, 2]]
    return GCWComplex(cyclic_group(2), cells, action, labels=["x0", "x1", "y0", "y1"])


def degree2_map(X: GCWComplex) -> CellularGMap:
    """z -> z^2 on the reflection circle: both vertices go to x1, each arc wraps once around"""
    carrier = [1, 1, 2, 3]
    chain = [{1: 1}, {1: 1}, {2: 1, 3: -1}, {3: 1, 2: -1}]
    return CellularGMap(X, carrier, chain)


def _point() -> Fixture:
    X = GCWComplex(trivial_group(), [Cell(0, 0)], [[0]], labels=["p"])
    return Fixture("point", "A point with the trivial group", complex=X, map=CellularGMap.identity(X))


def _reflection_circle() -> Fixture:
    X = reflection_circle()
    return Fixture("reflection_circle", "Circle with a reflection, identity map", complex=X,
                   map=CellularGMap.identity(X))


def _degree2() -> Fixture:
    X = reflection_circle()
    return Fixture("degree2", "Squaring map on the reflection circle with its single fixed point",
                   complex=X, map=degree2_map(X), fixed_points=[_sign_datum(X, 1, 2, MODE_MAP)])


def _reflection_circle_field() -> Fixture:
    X = reflection_circle()
    zeros = [_sign_datum(X, 0, 1, MODE_FIELD), _sign_datum(X, 1, -1, MODE_FIELD)]
    return Fixture("reflection_circle_field", "Gradient-like field on the reflection circle, zeros at x0 and x1",
                   complex=X, map=CellularGMap.identity(X), zeros=zeros)


def _identity_without_data() -> Fixture:
    X = reflection_circle()
    return Fixture("identity_no_data", "Identity on the reflection circle with no fixed-point data",
                   complex=X, map=CellularGMap.identity(X))


def _reflection_disk() -> Fixture:
    """Disk with a reflection: a fixed diameter d and two swapped half-disks"""
    cells = [
        Cell(0, 0),
        Cell(1, 0),
        Cell(2, 1, frozenset({0, 1}), ((1, 1), (0, -1))),
        Cell(3, 1, frozenset({0, 1}), ((1, 1), (0, -1))),
        Cell(4, 1, frozenset({0, 1}), ((1, 1), (0, -1))),
        Cell(5, 2, frozenset({0, 1, 2, 4}), ((2, 1), (4, -1))),
        Cell(6, 2, frozenset({0, 1, 3, 4}), ((3, 1), (4, -1))),
    ]
    action = [[0, 1, 2, 3, 4, 5, 6], [0, 1, 3, 2, 4, 6, 5]]
    X = GCWComplex(cyclic_group(2), cells, action, labels=["x0", "x1", "y0", "y1", "d", "D0", "D1"])
    return Fixture("reflection_disk", "Disk with a reflection", complex=X, map=CellularGMap.identity(X))


def _free_pair() -> Fixture:
    X = GCWComplex(cyclic_group(2), [Cell(0, 0), Cell(1, 0)], [[0, 1], [1, 0]], labels=["p0", "p1"])
    return Fixture("free_pair", "Z/2 swapping two points", complex=X, map=CellularGMap.identity(X))


def permutation_group(degree: int, name: str = "") -> Tuple[FiniteGroup, List[Tuple[int, ...]]]:
    """The full symmetric group with its elements as image tuples (identity first)"""
    elements = sorted(itertools.permutations(range(degree)))
    index = {p: i for i, p in enumerate(elements)}
    mul = [[index[tuple(a[b[x]] for x in range(degree))] for b in elements] for a in elements]
    return FiniteGroup(mul, name=name or f"S{degree}"), elements


def complex_from_geometry(group: FiniteGroup, elements: Sequence, specs: Sequence[Tuple[Hashable, int, Sequence]],
                          act: Callable[[object, Hashable], Hashable]) -> GCWComplex:
    """
    Build a complex from named cells and a rule for moving names.

    Args:
        group: Acting group
        elements: Group elements in table order, as understood by act
        specs: (key, dim, [(face key, coefficient), ...]) per cell, lower cells first
        act: act(element, key) -> key of the translated cell
    """
    index = {key: i for i, (key, _dim, _bd) in enumerate(specs)}
    cells = []
    for i, (key, dim, boundary) in enumerate(specs):
        faces = set()
        for face, _coeff in boundary:
            faces.add(index[face])
            faces |= cells[index[face]].faces
        cells.append(Cell(i, dim, frozenset(faces), tuple((index[face], int(c)) for face, c in boundary)))
    action = np.array([[index[act(g, key)] for key, _d, _b in specs] for g in elements], dtype=np.int64)
    return GCWComplex(group, cells, action, labels=[str(key) for key, _d, _b in specs])


def s3_triangle() -> GCWComplex:
    """
    Boundary of a triangle with S3 permuting its corners.

    Corners v_i and the midpoints m_i of the opposite sides are fixed by one
    reflection each; half-edges h_ji run from v_j to m_i and are permuted freely.
    """
    group, elements = permutation_group(3)
    specs = [(f"v{i}", 0, []) for i in range(3)] + [(f"m{i}", 0, []) for i in range(3)]
    specs += [(f"h{j}{i}", 1, [(f"m{i}", 1), (f"v{j}", -1)]) for j in range(3) for i in range(3) if i != j]

    def act(perm, key: str) -> str:
        if key[0] == 'h':
            return f"h{perm[int(key[1])]}{perm[int(key[2])]}"
        return f"{key[0]}{perm[int(key[1])]}"

    return complex_from_geometry(group, elements, specs, act)


def _s3_triangle() -> Fixture:
    X = s3_triangle()
    return Fixture("s3_triangle", "Triangle boundary with the full symmetry group S3", complex=X,
                   map=CellularGMap.identity(X))


def _dihedral() -> Fixture:
    return Fixture("dihedral", "Infinite dihedral group on the line, three zeros per fundamental domain",
                   presentation=dihedral_presentation(2))


class FixtureManager:
    """Registry of built-in fixtures"""

    BUILDERS: Dict[str, Callable[[], Fixture]] = {
        'point': _point,
        'reflection_circle': _reflection_circle,
        'degree2': _degree2,
        'reflection_circle_field': _reflection_circle_field,
        'identity_no_data': _identity_without_data,
        'reflection_disk': _reflection_disk,
        'free_pair': _free_pair,
        's3_triangle': _s3_triangle,
        'dihedral': _dihedral,
    }

    _cache: Dict[str, Fixture] = {}

    @classmethod
    def get_fixture(cls, name: str) -> Fixture:
        """
        Get a fixture by name.

        Raises:
            ValueError: If the fixture is not registered
        """
        if name not in cls.BUILDERS:
            raise ValueError(f"Fixture '{name}' not found")
        if name not in cls._cache:
            logger.debug("building fixture %s", name)
            cls._cache[name] = cls.BUILDERS[name]()
        return cls._cache[name]

    @classmethod
    def get_fixture_names(cls) -> list:
        return list(cls.BUILDERS.keys())

    @classmethod
    def complexes(cls) -> List[Fixture]:
        """All fixtures that carry a finite complex"""
        return [f for f in (cls.get_fixture(n) for n in cls.BUILDERS) if f.complex is not None]
