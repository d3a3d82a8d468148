"""Self-hosted terminology browsing server.

Ingests SCT-TSV release files into an indexed directed labeled graph and
serves authenticated neighborhood, search and diagram queries over HTTP.
"""

from .model import (
    Concept,
    Description,
    Relationship,
    TerminologyStore,
    build_store,
)
from .ingest import ReleaseBundle, parse_bundle, validate_bundle
from .indexfile import load_index, save_index
from .query import Neighborhood, SearchHit, neighborhood, search
from .dotgen import DotDocument, neighborhood_diagram

__all__ = [
    "Concept",
    "Description",
    "Relationship",
    "TerminologyStore",
    "build_store",
    "ReleaseBundle",
    "parse_bundle",
    "validate_bundle",
    "load_index",
    "save_index",
    "Neighborhood",
    "SearchHit",
    "neighborhood",
    "search",
    "DotDocument",
    "neighborhood_diagram",
]

__version__ = "0.1.0"
