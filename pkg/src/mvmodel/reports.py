"""Report types shared by the folded analyses and the per-version baseline.

All reports are normalised: version pairs are ordered by id, and report
lists are sorted, so the two analysis routes can be compared with plain
equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Match

LCP_MODES = ("all", "single")


def check_lcp_mode(mode: str) -> None:
    if mode not in LCP_MODES:
        raise ValueError(f"lcp mode must be one of {LCP_MODES}, got {mode!r}")


@dataclass(frozen=True, order=True)
class VersionedViolation:
    """A pattern embedding found in one version."""

    version: str
    match: Match


@dataclass(frozen=True, order=True)
class MergeConflictReport:
    """An insert-delete conflict for the merge of two versions over a base.

    ``left`` < ``right`` by id order; ``base`` is a latest common
    predecessor of the pair; ``edge`` is the created edge whose endpoint
    ``node`` the other side deleted.
    """

    left: str
    right: str
    base: str
    edge: str
    node: str


@dataclass(frozen=True, order=True)
class MergeViolationReport:
    """A pattern embedding that survives the deletion-prioritising merge."""

    left: str
    right: str
    base: str
    match: Match
