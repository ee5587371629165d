"""Text normalization and the inverted search index."""

from cybok.index.normalize import normalize, split_compound
from cybok.index.porter import stem
from cybok.index.search import (
    INDEX_FILENAME,
    SearchIndex,
    build_index,
    load_index,
    query,
    save_index,
)
from cybok.index.stopwords import STOPWORDS

__all__ = [
    "INDEX_FILENAME",
    "STOPWORDS",
    "SearchIndex",
    "build_index",
    "load_index",
    "normalize",
    "query",
    "save_index",
    "split_compound",
    "stem",
]
