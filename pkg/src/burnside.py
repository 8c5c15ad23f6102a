"""
Burnside ring A(K) of a finite group
Table of marks, mark (character) map, mark inversion and ring multiplication
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import NonIntegralMarks
from .fingroup import FiniteGroup, coset_space
from .utils import Number, format_terms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MarkMatrix:
    """M[(H),(L)] = |(K/H)^L| over the subgroup class ordering"""
    group: FiniteGroup
    entries: np.ndarray = field(compare=False)

    @property
    def size(self) -> int:
        return int(self.entries.shape[0])

    def is_lower_triangular(self) -> bool:
        return bool(np.all(np.triu(self.entries, k=1) == 0)) and bool(np.all(np.diag(self.entries) > 0))

    def rows(self) -> List[List[int]]:
        return self.entries.tolist()


def class_labels(group: FiniteGroup) -> List[str]:
    """
    Short labels for the subgroup classes of a group.

    Classes are named by order; repeated orders get a, b, ... suffixes.
    """
    classes = group.subgroup_classes
    orders = [c.order for c in classes]
    labels = []
    for i, n in enumerate(orders):
        if orders.count(n) == 1:
            labels.append(str(n))
        else:
            labels.append(f"{n}{chr(ord('a') + orders[:i].count(n))}")
    return labels


@lru_cache(maxsize=128)
def table_of_marks(group: FiniteGroup) -> MarkMatrix:
    """
    Compute the table of marks of a finite group.

    Args:
        group: The group K

    Returns:
        MarkMatrix whose row (H) is the marks vector of [K/H]
    """
    classes = group.subgroup_classes
    n = len(classes)
    entries = np.zeros((n, n), dtype=np.int64)
    inv = group.inverse
    for i, cls_h in enumerate(classes):
        space = coset_space(group, cls_h.representative)
        members = set(cls_h.representative.elements)
        for j, cls_l in enumerate(classes[:i + 1]):
            fixer = cls_l.representative.elements
            entries[i, j] = sum(
                1 for r in space.representatives
                if all(int(group.mul[group.mul[inv[r], k], r]) in members for k in fixer)
            )
    entries.flags.writeable = False
    logger.debug("table of marks for %s: %d classes", group.name, n)
    return MarkMatrix(group, entries)


class BurnsideElement:
    """An integer combination of the transitive K-sets [K/H]"""

    def __init__(self, group: FiniteGroup, coeffs: Sequence[int]):
        if len(coeffs) != len(group.subgroup_classes):
            raise ValueError(f"expected {len(group.subgroup_classes)} coefficients, got {len(coeffs)}")
        self.group = group
        self.coeffs: Tuple[int, ...] = tuple(int(c) for c in coeffs)

    @classmethod
    def zero(cls, group: FiniteGroup) -> 'BurnsideElement':
        return cls(group, [0] * len(group.subgroup_classes))

    @classmethod
    def one(cls, group: FiniteGroup) -> 'BurnsideElement':
        """The unit [K/K]"""
        return cls.basis(group, len(group.subgroup_classes) - 1)

    @classmethod
    def basis(cls, group: FiniteGroup, index: int) -> 'BurnsideElement':
        coeffs = [0] * len(group.subgroup_classes)
        coeffs[index] = 1
        return cls(group, coeffs)

    def _check(self, other: 'BurnsideElement'):
        if not self.group.same_table(other.group):
            raise ValueError("Burnside elements over different groups")

    def __add__(self, other: 'BurnsideElement') -> 'BurnsideElement':
        self._check(other)
        return BurnsideElement(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: 'BurnsideElement') -> 'BurnsideElement':
        return self + (-other)

    def __neg__(self) -> 'BurnsideElement':
        return BurnsideElement(self.group, [-a for a in self.coeffs])

    def __mul__(self, other: Union['BurnsideElement', int]) -> 'BurnsideElement':
        if isinstance(other, BurnsideElement):
            return multiply(self, other)
        return BurnsideElement(self.group, [a * int(other) for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, BurnsideElement) and other.coeffs == self.coeffs
                and self.group.same_table(other.group))

    def __hash__(self) -> int:
        return hash((self.group.order, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def marks(self) -> Tuple[int, ...]:
        return tuple(int(m) for m in ch0(self))

    def __str__(self) -> str:
        labels = class_labels(self.group)
        terms = [(c, f"[K/{labels[i]}]") for i, c in enumerate(self.coeffs) if c]
        return format_terms(terms)

    def __repr__(self) -> str:
        return f"BurnsideElement({self.group.name}, {list(self.coeffs)})"


def ch0(element: BurnsideElement) -> Tuple[Fraction, ...]:
    """
    Mark (character) map of a Burnside element.

    Args:
        element: Element of A(K)

    Returns:
        Fixed-point counts |S^L| per subgroup class (L)
    """
    table = table_of_marks(element.group).entries
    n = table.shape[0]
    return tuple(
        Fraction(sum(element.coeffs[h] * int(table[h, l]) for h in range(l, n)))
        for l in range(n)
    )


def from_marks(group: FiniteGroup, marks: Sequence[Number]) -> BurnsideElement:
    """
    Invert the mark map by back-substitution through the triangular table.

    Args:
        group: The group K
        marks: Value per subgroup class

    Returns:
        The unique BurnsideElement with these marks

    Raises:
        NonIntegralMarks: If some coefficient is not an integer
    """
    table = table_of_marks(group).entries
    n = table.shape[0]
    if len(marks) != n:
        raise ValueError(f"expected {n} marks, got {len(marks)}")
    coeffs = [0] * n
    for l in range(n - 1, -1, -1):
        rest = sum(coeffs[h] * int(table[h, l]) for h in range(l + 1, n))
        value = (Fraction(marks[l]) - rest) / int(table[l, l])
        if value.denominator != 1:
            raise NonIntegralMarks(l, value)
        coeffs[l] = value.numerator
    return BurnsideElement(group, coeffs)


def multiply(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Ring product, via pointwise multiplication of marks"""
    a._check(b)
    product = [x * y for x, y in zip(ch0(a), ch0(b))]
    try:
        return from_marks(a.group, product)
    except NonIntegralMarks as e:
        raise AssertionError(f"product of integral Burnside elements is not integral: {e}") from e

