"""Utility functions shared across equilef modules"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

import yaml

from .errors import InputFormatError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


def parse_fraction(value: Any) -> Fraction:
    """
    Parse an exact rational from a file value.

    Args:
        value: int, or a string such as "3", "-1/2"

    Returns:
        Reduced Fraction
    """
    if isinstance(value, bool):
        raise InputFormatError(f"expected a number, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip().replace('−', '-'))
        except (ValueError, ZeroDivisionError) as e:
            raise InputFormatError(f"cannot parse fraction {value!r}: {e}") from e
    raise InputFormatError(f"floating or unknown numeric value {value!r}; use 'p/q' strings")


def format_fraction(value: Number) -> str:
    """Format a rational as a reduced fraction string"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def load_structured(filepath: Union[str, Path]) -> Any:
    """
    Load a structured-text input file (JSON or YAML).

    Args:
        filepath: Path to the file

    Returns:
        Parsed document
    """
    path = Path(filepath)
    if not path.exists():
        raise InputFormatError(f"input file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as fh:
            document = yaml.safe_load(fh)
    except yaml.YAMLError as e:
        raise InputFormatError(f"cannot parse {path}: {e}") from e
    logger.debug("loaded %s", path)
    return document


def format_table(headers: Sequence[str], rows: List[Sequence[Any]]) -> str:
    """
    Render rows as an aligned text table.

    Args:
        headers: Column headers
        rows: Table rows (cells are converted with str)

    Returns:
        Table text without trailing newline
    """
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = []
    for n, row in enumerate(cells):
        lines.append("  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def setup_logging(level: str = 'WARNING', fmt: str = '%(levelname)s %(name)s: %(message)s'):
    """
    Configure the root logger once.

    Args:
        level: Logging level name
        fmt: Log record format
    """
    numeric = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric, int):
        raise ValueError(f"unknown logging level {level!r}")
    root = logging.getLogger()
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(fmt))
        root.addHandler(handler)
    root.setLevel(numeric)


def deep_merge(base: Dict, override: Dict) -> Dict:
    """Recursively merge override into a copy of base"""
    merged = dict(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def format_terms(terms: List[Tuple[Number, str]]) -> str:
    """Render [(coefficient, basis name)] as 'a - 2b + 1/2c'; empty is '0'"""
    if not terms:
        return "0"
    parts = []
    for n, (coeff, name) in enumerate(terms):
        magnitude = abs(coeff)
        body = name if magnitude == 1 else f"{format_fraction(magnitude)}{name}"
        if n == 0:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"{'-' if coeff < 0 else '+'} {body}")
    return " ".join(parts)
