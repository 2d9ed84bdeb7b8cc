"""Per-version analyses computed the straightforward way.

These walk the stored version models directly: check every version on
its own, check every merge pair on its own. They are the reference
route; the folded route in ``analysis`` must produce identical reports,
and the oracle command diffs the two.
"""

from __future__ import annotations

from .core import Pattern, pcheck
from .merge import insert_delete_conflicts, merge_min
from .reports import (
    MergeConflictReport,
    MergeViolationReport,
    VersionedViolation,
    check_lcp_mode,
)
from .versioning import ModelVersioning


def svm_check(versioning: ModelVersioning, pattern: Pattern) -> list[VersionedViolation]:
    """Pattern embeddings of every version, checked one model at a time."""
    out: list[VersionedViolation] = []
    for vid in versioning.versions:
        for m in pcheck(versioning.versions[vid], pattern):
            out.append(VersionedViolation(vid, m))
    out.sort()
    return out


def _merge_triplets(versioning: ModelVersioning, lcp_mode: str):
    """Yield (left, right, base) for every mergeable pair, base drawn per mode."""
    check_lcp_mode(lcp_mode)
    table = versioning.latest_common_predecessor_table()
    for (i, j), bases in sorted(table.items()):
        if not bases:
            continue
        if lcp_mode == "single":
            yield i, j, min(bases)
        else:
            for c in sorted(bases):
                yield i, j, c


def svm_conflicts(versioning: ModelVersioning, lcp_mode: str = "all") -> list[MergeConflictReport]:
    """Insert-delete conflicts of every mergeable version pair."""
    out: set[MergeConflictReport] = set()
    for i, j, c in _merge_triplets(versioning, lcp_mode):
        m1 = versioning.max_preserving_mod(c, i)
        m2 = versioning.max_preserving_mod(c, j)
        for conflict in insert_delete_conflicts(m1, m2):
            out.add(MergeConflictReport(i, j, c, conflict.edge, conflict.node))
    return sorted(out)


def svm_merge_check(
    versioning: ModelVersioning, pattern: Pattern, lcp_mode: str = "all"
) -> list[MergeViolationReport]:
    """Violations of the deletion-prioritising merge of every mergeable pair."""
    out: set[MergeViolationReport] = set()
    for i, j, c in _merge_triplets(versioning, lcp_mode):
        m1 = versioning.max_preserving_mod(c, i)
        m2 = versioning.max_preserving_mod(c, j)
        merged = merge_min(m1, m2).merged
        for m in pcheck(merged, pattern):
            out.add(MergeViolationReport(i, j, c, m))
    return sorted(out)
