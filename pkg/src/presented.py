"""
Presented component categories
Finite certified data standing in for a proper G-CW complex of a possibly
infinite discrete group: classes, mor-set orbit data, equivariant cell counts
and zeros of a vector field with their localizations
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .burnside import from_marks
from .constants import MODE_FIELD
from .errors import PresentationError, ValidationReport
from .fingroup import FiniteGroup, cyclic_group, orbits
from .gcw import GCWComplex
from .lefschetz import CharacterMatrix, UGElement, enumerate_classes, mor_set, universal_euler
from .localfix import FixedPointDatum, degree_marks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZeroRecord:
    """A zero (or fixed point) with its stabilizer, marks and localization into classes"""
    group: FiniteGroup
    signs: Tuple[int, ...]
    localization: Tuple[str, ...]
    name: str = ""


@dataclass
class ComponentPresentation:
    """
    Presentation of Is Pi_0(G, X) with the data the invariants need.

    labels are listed in a subconjugacy-compatible order (larger isotropy
    first); mor[(y, x)] lists the isotropy orders of the W K_y-orbits of
    mor(y, x); cells[x] lists the equivariant cell counts per dimension.
    """
    labels: Tuple[str, ...]
    mor: Dict[Tuple[str, str], Tuple[int, ...]]
    cells: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    zeros: Tuple[ZeroRecord, ...] = ()
    name: str = ""

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise PresentationError(f"unknown class {label!r}") from e

    def validate(self) -> ValidationReport:
        """Check labels, isotropy orders, unit diagonal, triangularity and zero data"""
        report = ValidationReport("presentation")
        known = set(self.labels)
        if len(known) != len(self.labels):
            report.add("class labels are not distinct")
        for (y, x), isotropy in self.mor.items():
            if y not in known or x not in known:
                report.add(f"mor data names unknown classes ({y}, {x})")
            if any(int(n) <= 0 for n in isotropy):
                report.add(f"mor({y}, {x}) has a non-positive isotropy order")
        for label in self.cells:
            if label not in known:
                report.add(f"cell counts given for unknown class {label}")
        for zero in self.zeros:
            n = len(zero.group.subgroup_classes)
            if len(zero.signs) != n or len(zero.localization) != n:
                report.add(f"zero {zero.name or '?'} needs {n} signs and localizations")
            if any(s not in (1, -1) for s in zero.signs):
                report.add(f"zero {zero.name or '?'} has a sign other than +1 or -1")
            for label in zero.localization:
                if label not in known:
                    report.add(f"zero {zero.name or '?'} localizes to unknown class {label}")
        if not report.ok:
            return report

        matrix = presented_character_map(self)
        for i, label in enumerate(self.labels):
            if matrix.entries[i][i] != 1:
                report.add(f"diagonal character entry at {label} is {matrix.entries[i][i]}, not 1")
        if not all(matrix.entries[i][j] == 0 for i in range(len(self.labels)) for j in range(i + 1, len(self.labels))):
            report.add("character matrix is not lower triangular in the declared order")
        return report


def presented_character_map(P: ComponentPresentation) -> CharacterMatrix:
    """
    Character matrix from mor-orbit data.

    Returns:
        M with M[y][x] = sum over orbit records of mor(y, x) of isotropy^-1
    """
    entries = [[sum((Fraction(1, int(n)) for n in P.mor.get((y, x), ())), Fraction(0)) for x in P.labels]
               for y in P.labels]
    return CharacterMatrix(P.labels, entries)


def presented_euler(P: ComponentPresentation) -> UGElement:
    """chi^G as sum_p (-1)^p #_p([x]) per class"""
    coeffs = [sum((-1) ** p * int(n) for p, n in enumerate(P.cells.get(label, ()))) for label in P.labels]
    return UGElement(P, coeffs)


def presented_orbifold_euler(P: ComponentPresentation, label: Optional[str] = None):
    """
    Orbifold Euler characteristics of the components, as ch^G(chi^G).

    Args:
        P: Presentation
        label: Single class to report; all classes if omitted

    Returns:
        Fraction for one class, or a label -> Fraction dict
    """
    values = presented_character_map(P).apply(presented_euler(P).coeffs)
    if label is not None:
        return values[P.index(label)]
    return dict(zip(P.labels, values))


def presented_index(P: ComponentPresentation) -> UGElement:
    """
    i^G: each zero's Burnside degree (from its marks) pushed through its localization.

    Raises:
        NonIntegralMarks: If a sign vector is not the marks of a Burnside element
    """
    coeffs = [Fraction(0)] * len(P.labels)
    for zero in P.zeros:
        degree = from_marks(zero.group, zero.signs)
        for k, c in enumerate(degree.coeffs):
            if c:
                coeffs[P.index(zero.localization[k])] += c
    return UGElement(P, coeffs)


def dihedral_presentation(r: int = 1, delta0: int = 1) -> ComponentPresentation:
    """
    The infinite dihedral group acting on the real line, with fundamental
    domain the interval from x0 to x1 (both with isotropy Z/2) and a vector
    field with zeros z_0 = x0 < z_1 < ... < z_r = x1.

    The tangent signs alternate, starting from delta0 at z_0.

    Args:
        r: Number of intervals between consecutive zeros (r >= 1)
        delta0: Sign of the derivative at z_0
    """
    if r < 1:
        raise PresentationError("the fundamental domain needs at least the two endpoint zeros (r >= 1)")
    if delta0 not in (1, -1):
        raise PresentationError("delta0 must be +1 or -1")
    z2 = cyclic_group(2)
    trivial = FiniteGroup([[0]], name="1")
    labels = ("x0", "x1", "y")
    mor = {
        ("x0", "x0"): (1,),
        ("x1", "x1"): (1,),
        ("y", "y"): (1,),
        ("y", "x0"): (2,),
        ("y", "x1"): (2,),
    }
    cells = {"x0": (1,), "x1": (1,), "y": (0, 1)}

    deltas = [delta0 * (-1) ** i for i in range(r + 1)]
    zeros = [ZeroRecord(z2, (deltas[0], 1), ("y", "x0"), name="z0")]
    for i in range(1, r):
        zeros.append(ZeroRecord(trivial, (deltas[i],), ("y",), name=f"z{i}"))
    zeros.append(ZeroRecord(z2, (deltas[r], 1), ("y", "x1"), name=f"z{r}"))
    return ComponentPresentation(labels, mor, cells, tuple(zeros), name=f"dihedral(r={r})")


def export_presentation(X: GCWComplex, zeros: Sequence[FixedPointDatum] = (),
                        mode: str = MODE_FIELD) -> ComponentPresentation:
    """
    Export a finite-group complex (and optional zero data) as a presentation.

    Cell counts per dimension follow the equivariant cell count of chi^G.
    """
    basis = enumerate_classes(X)
    labels = basis.labels
    mor: Dict[Tuple[str, str], Tuple[int, ...]] = {}
    for y in range(len(basis)):
        for x in range(len(basis)):
            records = tuple(o.isotropy_order for o in orbits(mor_set(basis, y, x)))
            if records:
                mor[(labels[y], labels[x])] = records

    counts: Dict[str, List[int]] = {label: [0] * (X.dim + 1) for label in labels}
    for e in X.orbit_representatives:
        label = labels[basis.locate(X.stabilizer(e), e)]
        counts[label][X.cells[e].dim] += 1

    records = []
    for datum in zeros:
        datum.validate(X)
        K = datum.rep.group
        localization = tuple(labels[basis.locate(datum.stabilizer.inclusion().image(c.representative), datum.vertex)]
                             for c in K.subgroup_classes)
        records.append(ZeroRecord(K, tuple(degree_marks(datum, mode)), localization, name=X.label(datum.vertex)))

    presentation = ComponentPresentation(labels, mor, {k: tuple(v) for k, v in counts.items()}, tuple(records),
                                         name=f"export({X.group.name})")
    assert presented_euler(presentation).coeffs == universal_euler(X, basis).coeffs
    return presentation
