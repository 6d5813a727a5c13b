"""Berge k-books in 3-uniform hypergraphs: detection with certificates,
book extraction, extremal constructions and exact small Turán numbers."""

__version__ = "0.1.0"

from .core import Hypergraph, build, partition, shadow  # noqa: E402
from .detect import (BookCertificate, find_berge_book, find_berge_triangle,  # noqa: E402
                     oracle_contains_book, verify_book)

__all__ = [
    "Hypergraph", "build", "partition", "shadow", "BookCertificate",
    "find_berge_book", "find_berge_triangle", "oracle_contains_book", "verify_book",
]
