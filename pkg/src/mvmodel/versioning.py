"""Version histories: DAGs of models linked by difference spans.

A modification between two models is stored as nothing more than the
ordered pair of version ids; because all versions share one element
store, the span between any two versions is recovered as the
componentwise intersection (the largest preserved subgraph). That span
is maximally preserving by construction: an element survives exactly
when it is in both versions.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping

from .core import ElementStore, Model, TypeGraph
from .errors import (
    CycleDetected,
    InvalidVersion,
    NoCommonRoot,
    SameVersion,
    StoreMismatch,
    UnknownVersion,
    ValidationError,
)
from . import core

VersionId = str


class ModelModification:
    """Difference between two models, read as source-to-target evolution.

    The preserved part is the intersection of the two membership sets;
    created elements are target-only, deleted elements source-only.
    """

    __slots__ = ("source", "target", "source_id", "target_id", "_preserved")

    def __init__(self, source: Model, target: Model, source_id: str = "", target_id: str = ""):
        if source.store is not target.store:
            raise StoreMismatch("modification endpoints use different element stores")
        if source.type_graph != target.type_graph:
            raise ValidationError("modification endpoints use different type graphs")
        self.source = source
        self.target = target
        self.source_id = source_id
        self.target_id = target_id
        self._preserved: Model | None = None

    @property
    def preserved(self) -> Model:
        if self._preserved is None:
            self._preserved = Model(
                self.source.store,
                self.source.type_graph,
                self.source.node_set & self.target.node_set,
                self.source.edge_set & self.target.edge_set,
            )
        return self._preserved

    @property
    def created_nodes(self) -> frozenset[str]:
        return self.target.node_set - self.source.node_set

    @property
    def created_edges(self) -> frozenset[str]:
        return self.target.edge_set - self.source.edge_set

    @property
    def deleted_nodes(self) -> frozenset[str]:
        return self.source.node_set - self.target.node_set

    @property
    def deleted_edges(self) -> frozenset[str]:
        return self.source.edge_set - self.target.edge_set

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ModelModification)
            and self.source == other.source
            and self.target == other.target
            and self.source_id == other.source_id
            and self.target_id == other.target_id
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.source_id, self.target_id))

    def __repr__(self) -> str:
        return f"ModelModification({self.source_id!r} -> {self.target_id!r})"


class ModelVersioning:
    """A rooted DAG of model versions over one element store."""

    def __init__(
        self,
        versions: Mapping[VersionId, Model],
        modifications: Iterable[tuple[VersionId, VersionId]],
        root: VersionId,
    ):
        self.versions: dict[VersionId, Model] = dict(sorted(versions.items()))
        self.modifications: frozenset[tuple[VersionId, VersionId]] = frozenset(
            (a, b) for a, b in modifications
        )
        self.root = root
        succ: dict[VersionId, list[VersionId]] = {v: [] for v in self.versions}
        pred: dict[VersionId, list[VersionId]] = {v: [] for v in self.versions}
        for a, b in sorted(self.modifications):
            if a in succ and b in pred:
                succ[a].append(b)
                pred[b].append(a)
        self._succ = {v: tuple(ws) for v, ws in succ.items()}
        self._pred = {v: tuple(ws) for v, ws in pred.items()}
        self._pre_cache: dict[VersionId, frozenset[VersionId]] = {}
        self._lcp_table: dict[tuple[VersionId, VersionId], frozenset[VersionId]] | None = None

    # -- basic access ---------------------------------------------------

    def version(self, version_id: VersionId) -> Model:
        try:
            return self.versions[version_id]
        except KeyError:
            raise UnknownVersion(version_id) from None

    @property
    def store(self) -> "ElementStore":
        return self.version(self.root).store

    @property
    def type_graph(self) -> "TypeGraph":
        return self.version(self.root).type_graph

    def version_ids(self) -> list[VersionId]:
        return list(self.versions)

    def successors(self, version_id: VersionId) -> tuple[VersionId, ...]:
        if version_id not in self.versions:
            raise UnknownVersion(version_id)
        return self._succ[version_id]

    def __eq__(self, other: object) -> bool:
        """Value equality: same shape and same element content.

        Unlike Model equality this does not require store identity, so a
        versioning equals its serialization round trip.
        """
        if not isinstance(other, ModelVersioning):
            return NotImplemented
        if (
            self.root != other.root
            or self.modifications != other.modifications
            or list(self.versions) != list(other.versions)
        ):
            return False
        for vid, m in self.versions.items():
            o = other.versions[vid]
            if m.node_set != o.node_set or m.edge_set != o.edge_set:
                return False
            if m.type_graph != o.type_graph:
                return False
        if self.versions:
            a = next(iter(self.versions.values()))
            b = next(iter(other.versions.values()))
            return a.store.snapshot() == b.store.snapshot()
        return True

    def __hash__(self):  # pragma: no cover - versionings are not hashed
        return NotImplemented

    def __repr__(self) -> str:
        return (
            f"ModelVersioning({len(self.versions)} versions, "
            f"{len(self.modifications)} modifications, root={self.root!r})"
        )

    # -- validation -----------------------------------------------------

    def validate(self) -> None:
        """Check the whole versioning; raises the first violation found."""
        if not self.versions:
            raise ValidationError("a versioning needs at least one version")
        if self.root not in self.versions:
            raise UnknownVersion(self.root)
        for a, b in sorted(self.modifications):
            if a not in self.versions:
                raise UnknownVersion(a)
            if b not in self.versions:
                raise UnknownVersion(b)
            if a == b:
                raise CycleDetected([a, b])
        ref = next(iter(self.versions.values()))
        for vid, m in self.versions.items():
            if m.store is not ref.store:
                raise StoreMismatch(f"version {vid!r} uses a different element store")
            if m.type_graph != ref.type_graph:
                raise InvalidVersion(vid, ValidationError("type graph differs between versions"))
        for vid in self.versions:
            try:
                core.validate_model(self.versions[vid])
            except Exception as err:
                raise InvalidVersion(vid, err) from err
        cycle = self._find_cycle()
        if cycle:
            raise CycleDetected(cycle)
        reached = self._forward_reach(self.root)
        missing = sorted(set(self.versions) - reached)
        if missing:
            raise NoCommonRoot(missing)

    def _find_cycle(self) -> list[VersionId] | None:
        # Iterative DFS with colouring; returns one cycle path if any.
        WHITE, GREY, BLACK = 0, 1, 2
        colour = {v: WHITE for v in self.versions}
        parent: dict[VersionId, VersionId] = {}
        for start in self.versions:
            if colour[start] != WHITE:
                continue
            stack: list[tuple[VersionId, int]] = [(start, 0)]
            colour[start] = GREY
            while stack:
                v, i = stack[-1]
                if i < len(self._succ[v]):
                    stack[-1] = (v, i + 1)
                    w = self._succ[v][i]
                    if colour[w] == GREY:
                        cycle = [w, v]
                        cur = v
                        while cur != w:
                            cur = parent[cur]
                            cycle.append(cur)
                        cycle.reverse()
                        return cycle
                    if colour[w] == WHITE:
                        colour[w] = GREY
                        parent[w] = v
                        stack.append((w, 0))
                else:
                    colour[v] = BLACK
                    stack.pop()
        return None

    def _forward_reach(self, start: VersionId) -> set[VersionId]:
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in self._succ[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    # -- predecessor structure -------------------------------------------

    def predecessors(self, version_id: VersionId) -> frozenset[VersionId]:
        """All strict ancestors of a version (transitive, not reflexive)."""
        if version_id not in self.versions:
            raise UnknownVersion(version_id)
        cached = self._pre_cache.get(version_id)
        if cached is not None:
            return cached
        seen: set[VersionId] = set()
        queue = deque(self._pred[version_id])
        seen.update(queue)
        while queue:
            v = queue.popleft()
            for w in self._pred[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        result = frozenset(seen)
        self._pre_cache[version_id] = result
        return result

    def latest_common_predecessors(self, i: VersionId, j: VersionId) -> frozenset[VersionId]:
        """Maximal common strict ancestors of two versions.

        Empty when one version is an ancestor of the other (or equal to
        it would be an error): such pairs have nothing to merge.
        """
        if i == j:
            raise SameVersion(i)
        pre_i = self.predecessors(i)
        pre_j = self.predecessors(j)
        if i in pre_j or j in pre_i:
            return frozenset()
        common = pre_i & pre_j
        if not common:
            return frozenset()
        # Maximal elements: not an ancestor of any other common ancestor.
        shadowed = set().union(*(self.predecessors(x) for x in common))
        return frozenset(common - shadowed)

    def single_latest_common_predecessor(self, i: VersionId, j: VersionId) -> VersionId | None:
        """One representative merge base: the lexicographically least id."""
        lcps = self.latest_common_predecessors(i, j)
        return min(lcps) if lcps else None

    def latest_common_predecessor_table(
        self,
    ) -> dict[tuple[VersionId, VersionId], frozenset[VersionId]]:
        """Merge-base sets for every unordered version pair, keyed (i, j) with i < j."""
        if self._lcp_table is None:
            ids = list(self.versions)
            table = {}
            for a in range(len(ids)):
                for b in range(a + 1, len(ids)):
                    i, j = ids[a], ids[b]
                    table[(i, j)] = self.latest_common_predecessors(i, j)
            self._lcp_table = table
        return self._lcp_table

    # -- spans ------------------------------------------------------------

    def max_preserving_mod(self, i: VersionId, j: VersionId) -> ModelModification:
        """The span from version i to version j that preserves their intersection."""
        return ModelModification(self.version(i), self.version(j), i, j)


def validate_versioning(versioning: ModelVersioning) -> None:
    versioning.validate()
