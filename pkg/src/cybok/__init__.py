"""CYBOK: design-phase vulnerability exploration for system models.

The package ingests attack-vector databases (CAPEC, CWE, CVE), indexes
their text, and evaluates GraphML system models against them: which
elements match known attack vectors, which assets form the attack
surface, and which exploit chains reach a chosen target.
"""

from cybok.analysis import (
    AbstractionRollup,
    AttackSurfaceElement,
    ChainResult,
    EvidenceRecord,
    ExploitChain,
    RollupEntry,
    associate,
    attack_surface,
    enumerate_simple_paths,
    exploit_chains,
    rollup,
)
from cybok.corpus import (
    AttackVectorEntry,
    CorpusSnapshot,
    build_snapshot,
    load_snapshot,
    save_snapshot,
)
from cybok.errors import (
    CorpusError,
    CybokError,
    FetchError,
    ParseError,
    PersistenceError,
    StaleIndexError,
    ValidationError,
)
from cybok.index import SearchIndex, build_index, load_index, normalize, save_index
from cybok.model import (
    CATEGORIES,
    Asset,
    DependencyEdge,
    DescriptorSet,
    SystemModel,
    load_graphml,
    save_graphml,
)
from cybok.report import build_report, dump_report, emit_results_table, render_graph

__version__ = "0.1.0"

__all__ = [
    "AbstractionRollup",
    "Asset",
    "AttackSurfaceElement",
    "AttackVectorEntry",
    "CATEGORIES",
    "ChainResult",
    "CorpusError",
    "CorpusSnapshot",
    "CybokError",
    "DependencyEdge",
    "DescriptorSet",
    "EvidenceRecord",
    "ExploitChain",
    "FetchError",
    "ParseError",
    "PersistenceError",
    "RollupEntry",
    "SearchIndex",
    "StaleIndexError",
    "SystemModel",
    "ValidationError",
    "associate",
    "attack_surface",
    "build_index",
    "build_report",
    "build_snapshot",
    "dump_report",
    "emit_results_table",
    "enumerate_simple_paths",
    "exploit_chains",
    "load_graphml",
    "load_index",
    "load_snapshot",
    "normalize",
    "render_graph",
    "rollup",
    "save_graphml",
    "save_index",
    "save_snapshot",
    "__version__",
]
