"""Typed-graph models, version histories, and multi-version analyses.

The package keeps every version of a model inside one graph: versions are
id sets over a shared element store, histories are acyclic successor
graphs of maximally preserving modifications, and the folded encoding
lets constraint checking, merge-conflict detection, and merge previews
run once over the whole history instead of once per version.
"""

from .analysis import mcheck_mv, pcheck_m_mv, pcheck_mv
from .baseline import svm_check, svm_conflicts, svm_merge_check
from .bench import BenchParams, BenchReport, parse_bench_params, run_bench
from .core import (
    ElementStore,
    Match,
    Model,
    Pattern,
    TypeGraph,
    find_monomorphisms,
    graph_union,
    pcheck,
    validate_model,
    validate_pattern,
)
from .corpus import (
    parse_constraints,
    parse_corpus,
    write_constraints,
    write_corpus,
    write_model,
    write_mv_encoding,
)
from .errors import (
    BenchMismatch,
    CorpusSyntaxError,
    CycleDetected,
    DanglingEdge,
    ImproperResult,
    IncompleteStrategy,
    InvalidVersion,
    ModelError,
    NoCommonRoot,
    NotStructural,
    ParamError,
    SameVersion,
    SourceMismatch,
    StoreMismatch,
    TooManyConflicts,
    TypeGraphMismatch,
    TypeMismatch,
    UnknownType,
    UnknownVersion,
    ValidationError,
)
from .generate import (
    GeneratorParams,
    generate_versioning,
    parse_generator_params,
    write_generator_params,
)
from .merge import (
    Conflict,
    ConflictKind,
    Decision,
    MergeResult,
    Resolution,
    enumerate_strategies,
    insert_delete_conflicts,
    mcheck,
    merge,
    merge_min,
)
from .mvm import AdaptedTypeGraph, MultiVersionModel, adapt_type_graph, comb, trans_mv
from .oo import oo_constraint_patterns, oo_type_graph
from .reports import MergeConflictReport, MergeViolationReport, VersionedViolation
from .versioning import ModelModification, ModelVersioning, validate_versioning

__version__ = "0.1.0"

__all__ = [
    "AdaptedTypeGraph",
    "BenchMismatch",
    "BenchParams",
    "BenchReport",
    "Conflict",
    "ConflictKind",
    "CorpusSyntaxError",
    "CycleDetected",
    "DanglingEdge",
    "Decision",
    "ElementStore",
    "GeneratorParams",
    "ImproperResult",
    "IncompleteStrategy",
    "InvalidVersion",
    "Match",
    "MergeConflictReport",
    "MergeResult",
    "MergeViolationReport",
    "Model",
    "ModelError",
    "ModelModification",
    "ModelVersioning",
    "MultiVersionModel",
    "NoCommonRoot",
    "NotStructural",
    "ParamError",
    "Pattern",
    "Resolution",
    "SameVersion",
    "SourceMismatch",
    "StoreMismatch",
    "TooManyConflicts",
    "TypeGraph",
    "TypeGraphMismatch",
    "TypeMismatch",
    "UnknownType",
    "UnknownVersion",
    "ValidationError",
    "VersionedViolation",
    "adapt_type_graph",
    "comb",
    "enumerate_strategies",
    "find_monomorphisms",
    "generate_versioning",
    "graph_union",
    "insert_delete_conflicts",
    "mcheck",
    "mcheck_mv",
    "merge",
    "merge_min",
    "oo_constraint_patterns",
    "oo_type_graph",
    "parse_bench_params",
    "parse_constraints",
    "parse_corpus",
    "parse_generator_params",
    "pcheck",
    "pcheck_m_mv",
    "pcheck_mv",
    "run_bench",
    "svm_check",
    "svm_conflicts",
    "svm_merge_check",
    "trans_mv",
    "validate_model",
    "validate_pattern",
    "validate_versioning",
    "write_constraints",
    "write_corpus",
    "write_generator_params",
    "write_model",
    "write_mv_encoding",
]
