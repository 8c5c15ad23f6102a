"""equilef: exact equivariant Lefschetz classes and Euler characteristics"""

__version__ = "1.0.0"
