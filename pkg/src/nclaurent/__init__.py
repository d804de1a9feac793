"""Exact noncommutative Laurent polynomials and the rank-2 noncommutative
cluster recursions of affine type (2,2), (1,4), (4,1)."""

from nclaurent.freegroup import Word, format_word, parse_word
from nclaurent.ncpoly import CommPoly, NCPoly, QPoly, NotAUnit
from nclaurent.report import VerifyReport

__all__ = [
    "Word",
    "format_word",
    "parse_word",
    "NCPoly",
    "CommPoly",
    "QPoly",
    "NotAUnit",
    "VerifyReport",
]

__version__ = "0.1.0"
