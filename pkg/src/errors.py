"""Exception types raised by the equilef library"""

from fractions import Fraction
from typing import List, Optional


class EquilefError(Exception):
    """Base class for all computational errors (CLI exit code 1)"""


class GroupValidationError(EquilefError):
    """A multiplication table or permutation group failed validation"""


class ComplexValidationError(EquilefError):
    """A G-CW complex violates one of its invariants"""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        preview = "; ".join(self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"invalid complex: {preview}{more}")


class MapValidationError(ComplexValidationError):
    """A cellular G-map violates one of its invariants"""


class NonIntegralMarks(EquilefError):
    """A marks vector is not the character of an integral Burnside element"""

    def __init__(self, class_index: int, value: Fraction, message: Optional[str] = None):
        self.class_index = class_index
        self.value = value
        super().__init__(
            message or f"marks do not invert integrally: coefficient {value} at class {class_index}"
        )


class DegenerateFixedPoint(EquilefError):
    """A restricted determinant vanished (nondegeneracy hypothesis violated)"""


class VertexStabilizerMismatch(EquilefError):
    """A fixed-point datum names a stabilizer different from its vertex stabilizer"""


class PresentationError(EquilefError):
    """A component presentation is inconsistent"""


class RealizationError(EquilefError):
    """An orbit-category set cannot be realized or is not a functor"""


class InputFormatError(EquilefError):
    """An input file does not follow the documented structure"""


class ConfigError(EquilefError):
    """The configuration file is malformed"""


class ValidationReport:
    """Outcome of a report-based validation"""

    def __init__(self, subject: str = ""):
        self.subject = subject
        self.violations: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str):
        self.violations.append(message)

    def extend(self, messages: List[str]):
        self.violations.extend(messages)

    def raise_if_invalid(self, error_type=ComplexValidationError):
        """Raise error_type carrying the violations, if there are any"""
        if not self.violations:
            return
        if issubclass(error_type, ComplexValidationError):
            raise error_type(self.violations)
        raise error_type(f"invalid {self.subject or 'input'}: " + "; ".join(self.violations))

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"ValidationReport({self.subject or 'report'}: {status})"
