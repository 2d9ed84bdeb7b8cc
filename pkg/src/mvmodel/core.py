"""Typed graphs over a shared element registry, and monomorphism search.

Graphs here are plain sets of node and edge ids drawn from one
ElementStore. The store fixes each element's type and each edge's
endpoints once, at registration, so the same edge has the same endpoints
in every graph that contains it. Two graphs over one store are equal
exactly when their id sets are equal.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import (
    DanglingEdge,
    StoreMismatch,
    TypeGraphMismatch,
    TypeMismatch,
    UnknownType,
    ValidationError,
)

NodeId = str
EdgeId = str
TypeId = str


class TypeGraph:
    """Node and edge type declarations.

    Each edge type fixes the node types of its source and target. Node
    type ids and edge type ids live in one namespace and must not collide.
    """

    __slots__ = ("_node_types", "_edge_types", "_key", "_hash")

    def __init__(
        self,
        node_types: Iterable[TypeId],
        edge_types: Mapping[TypeId, tuple[TypeId, TypeId]],
    ):
        self._node_types = frozenset(node_types)
        self._edge_types = {t: (s, g) for t, (s, g) in dict(edge_types).items()}
        shared = self._node_types & set(self._edge_types)
        if shared:
            raise ValueError(f"type ids declared as both node and edge types: {sorted(shared)}")
        for t, (src, tgt) in self._edge_types.items():
            if src not in self._node_types or tgt not in self._node_types:
                raise ValueError(f"edge type {t!r} references an undeclared node type")
        self._key = (self._node_types, tuple(sorted(self._edge_types.items())))
        self._hash = hash(self._key)

    @property
    def node_types(self) -> frozenset[TypeId]:
        return self._node_types

    @property
    def edge_types(self) -> Mapping[TypeId, tuple[TypeId, TypeId]]:
        return MappingProxyType(self._edge_types)

    def endpoint_types(self, edge_type: TypeId) -> tuple[TypeId, TypeId]:
        return self._edge_types[edge_type]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TypeGraph) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"TypeGraph({len(self._node_types)} node types, {len(self._edge_types)} edge types)"


class ElementStore:
    """Registry of node and edge identities shared by many graphs.

    Ids are unique across both namespaces. Registration is append-only:
    an element's type, and an edge's endpoints, never change afterwards.
    """

    __slots__ = ("_nodes", "_edges")

    def __init__(self) -> None:
        self._nodes: dict[NodeId, TypeId] = {}
        self._edges: dict[EdgeId, tuple[TypeId, NodeId, NodeId]] = {}

    def add_node(self, node_id: NodeId, node_type: TypeId) -> None:
        if node_id in self._nodes or node_id in self._edges:
            raise ValueError(f"duplicate element id {node_id!r}")
        self._nodes[node_id] = node_type

    def add_edge(self, edge_id: EdgeId, edge_type: TypeId, source: NodeId, target: NodeId) -> None:
        if edge_id in self._nodes or edge_id in self._edges:
            raise ValueError(f"duplicate element id {edge_id!r}")
        if source not in self._nodes:
            raise ValueError(f"edge {edge_id!r}: source {source!r} is not a registered node")
        if target not in self._nodes:
            raise ValueError(f"edge {edge_id!r}: target {target!r} is not a registered node")
        self._edges[edge_id] = (edge_type, source, target)

    def is_node(self, elem_id: str) -> bool:
        return elem_id in self._nodes

    def is_edge(self, elem_id: str) -> bool:
        return elem_id in self._edges

    def has(self, elem_id: str) -> bool:
        return elem_id in self._nodes or elem_id in self._edges

    def elem_type(self, elem_id: str) -> TypeId:
        if elem_id in self._nodes:
            return self._nodes[elem_id]
        return self._edges[elem_id][0]

    def endpoint(self, edge_id: EdgeId) -> tuple[NodeId, NodeId]:
        _, src, tgt = self._edges[edge_id]
        return src, tgt

    def node_ids(self) -> Iterator[NodeId]:
        return iter(self._nodes)

    def edge_ids(self) -> Iterator[EdgeId]:
        return iter(self._edges)

    def snapshot(self) -> tuple:
        """Canonical content tuple, for value comparison across stores."""
        return (tuple(sorted(self._nodes.items())), tuple(sorted(self._edges.items())))

    def __len__(self) -> int:
        return len(self._nodes) + len(self._edges)

    def __repr__(self) -> str:
        return f"ElementStore({len(self._nodes)} nodes, {len(self._edges)} edges)"


class Model:
    """A typed graph: node and edge id sets over one store.

    Models are immutable. Equality requires the same store object and
    equal id sets; endpoints are invariant across all models of a store,
    so equal id sets mean equal graphs.
    """

    __slots__ = ("store", "type_graph", "node_set", "edge_set", "_index")

    def __init__(
        self,
        store: ElementStore,
        type_graph: TypeGraph,
        nodes: Iterable[NodeId] = (),
        edges: Iterable[EdgeId] = (),
    ):
        self.store = store
        self.type_graph = type_graph
        self.node_set: frozenset[NodeId] = frozenset(nodes)
        self.edge_set: frozenset[EdgeId] = frozenset(edges)
        for n in self.node_set:
            if not store.is_node(n):
                raise ValueError(f"{n!r} is not a registered node")
        for e in self.edge_set:
            if not store.is_edge(e):
                raise ValueError(f"{e!r} is not a registered edge")
        self._index: _ModelIndex | None = None

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Model)
            and self.store is other.store
            and self.type_graph == other.type_graph
            and self.node_set == other.node_set
            and self.edge_set == other.edge_set
        )

    def __hash__(self) -> int:
        return hash((id(self.store), self.type_graph, self.node_set, self.edge_set))

    def __repr__(self) -> str:
        return f"Model({len(self.node_set)} nodes, {len(self.edge_set)} edges)"

    def elements(self) -> frozenset[str]:
        return self.node_set | self.edge_set

    def index(self) -> "_ModelIndex":
        # Built at most once; rebuilding under a race would be identical.
        if self._index is None:
            self._index = _ModelIndex(self)
        return self._index


class _ModelIndex:
    """Adjacency and type indices for one model, used by the matcher."""

    __slots__ = (
        "nodes_by_type",
        "out_adj",
        "in_adj",
        "out_type_count",
        "in_type_count",
        "edges_by_key",
    )

    def __init__(self, model: Model):
        store = model.store
        by_type: dict[str, list[str]] = {}
        out_adj: dict[str, list[tuple[str, str, str]]] = {n: [] for n in model.node_set}
        in_adj: dict[str, list[tuple[str, str, str]]] = {n: [] for n in model.node_set}
        out_count: dict[str, Counter] = {n: Counter() for n in model.node_set}
        in_count: dict[str, Counter] = {n: Counter() for n in model.node_set}
        by_key: dict[tuple[str, str, str], list[str]] = {}
        for n in model.node_set:
            by_type.setdefault(store.elem_type(n), []).append(n)
        for e in model.edge_set:
            t = store.elem_type(e)
            src, tgt = store.endpoint(e)
            out_adj[src].append((e, tgt, t))
            in_adj[tgt].append((e, src, t))
            out_count[src][t] += 1
            in_count[tgt][t] += 1
            by_key.setdefault((t, src, tgt), []).append(e)
        self.nodes_by_type = {t: tuple(sorted(ns)) for t, ns in by_type.items()}
        self.out_adj = {n: tuple(sorted(v)) for n, v in out_adj.items()}
        self.in_adj = {n: tuple(sorted(v)) for n, v in in_adj.items()}
        self.out_type_count = out_count
        self.in_type_count = in_count
        self.edges_by_key = {k: tuple(sorted(v)) for k, v in by_key.items()}


def validate_model(model: Model) -> None:
    """Check properness and type conformance.

    Raises DanglingEdge, UnknownType, or TypeMismatch naming the first
    offending element in id order; properness is checked first.
    """
    store = model.store
    tg = model.type_graph
    for e in sorted(model.edge_set):
        src, tgt = store.endpoint(e)
        if src not in model.node_set or tgt not in model.node_set:
            raise DanglingEdge(e)
    for n in sorted(model.node_set):
        if store.elem_type(n) not in tg.node_types:
            raise UnknownType(n)
    for e in sorted(model.edge_set):
        t = store.elem_type(e)
        if t not in tg.edge_types:
            raise UnknownType(e)
        src, tgt = store.endpoint(e)
        if (store.elem_type(src), store.elem_type(tgt)) != tg.endpoint_types(t):
            raise TypeMismatch(e)


@dataclass(frozen=True)
class Pattern:
    """A forbidden configuration; a host that embeds it violates the constraint."""

    name: str
    graph: Model


def validate_pattern(pattern: Pattern) -> None:
    validate_model(pattern.graph)
    if not pattern.graph.node_set:
        raise ValidationError(f"pattern {pattern.name!r} is empty")


@dataclass(frozen=True, order=True)
class Match:
    """An injective, type and structure preserving embedding of a pattern.

    Stored as pairs sorted by pattern element id, which makes comparison
    of two matches of the same pattern a comparison of their images.
    """

    nodes: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str], ...]

    @classmethod
    def from_maps(cls, node_map: Mapping[str, str], edge_map: Mapping[str, str]) -> "Match":
        return cls(tuple(sorted(node_map.items())), tuple(sorted(edge_map.items())))

    @property
    def node_map(self) -> dict[str, str]:
        return dict(self.nodes)

    @property
    def edge_map(self) -> dict[str, str]:
        return dict(self.edges)


def find_monomorphisms(pattern: Pattern, host: Model) -> list[Match]:
    """Enumerate all embeddings of the pattern into the host.

    An embedding maps pattern nodes and edges injectively to host nodes
    and edges of the same types, preserving every edge's source and
    target. The result is sorted by the tuple of host images taken in
    pattern id order, so callers see a stable order.

    Backtracks over pattern nodes in static degree-descending order;
    candidates are pruned by type, by per-type degree counts, and by
    parallel-edge counts towards already-placed neighbours. Edge images
    are assigned after the node map is complete, since they are only
    ambiguous between parallel edges.
    """
    q = pattern.graph
    if q.type_graph != host.type_graph:
        raise TypeGraphMismatch("pattern and host use different type graphs")
    q_nodes = sorted(q.node_set)
    if not q_nodes:
        return [Match((), ())] if not q.edge_set else []
    if len(q_nodes) > len(host.node_set):
        return []

    store = q.store
    q_idx = q.index()
    h_idx = host.index()
    h_store = host.store

    # Static order: highest total degree first, id as tie-break.
    degree = {
        n: len(q_idx.out_adj.get(n, ())) + len(q_idx.in_adj.get(n, ())) for n in q_nodes
    }
    order = sorted(q_nodes, key=lambda n: (-degree[n], n))

    # Parallel-edge multiplicities within the pattern, keyed by
    # (type, source, target).
    q_pair_count: Counter = Counter()
    for e in q.edge_set:
        src, tgt = store.endpoint(e)
        q_pair_count[(store.elem_type(e), src, tgt)] += 1

    assignment: dict[str, str] = {}
    used: set[str] = set()
    node_maps: list[dict[str, str]] = []

    def candidates(qv: str) -> list[str]:
        qv_type = store.elem_type(qv)
        pool: list[str] | None = None
        for (_, other, t) in q_idx.out_adj.get(qv, ()):
            if other in assignment:
                hits = [s for (_, s, ht) in h_idx.in_adj.get(assignment[other], ()) if ht == t]
                pool = hits if pool is None else [h for h in pool if h in set(hits)]
        for (_, other, t) in q_idx.in_adj.get(qv, ()):
            if other in assignment:
                hits = [g for (_, g, ht) in h_idx.out_adj.get(assignment[other], ()) if ht == t]
                pool = hits if pool is None else [h for h in pool if h in set(hits)]
        if pool is None:
            pool = list(h_idx.nodes_by_type.get(qv_type, ()))
        out = []
        q_out = q_idx.out_type_count.get(qv, Counter())
        q_in = q_idx.in_type_count.get(qv, Counter())
        for h in sorted(set(pool)):
            if h in used or h_store.elem_type(h) != qv_type:
                continue
            h_out = h_idx.out_type_count.get(h, Counter())
            h_in = h_idx.in_type_count.get(h, Counter())
            if any(h_out[t] < c for t, c in q_out.items()):
                continue
            if any(h_in[t] < c for t, c in q_in.items()):
                continue
            ok = True
            for (_, other, t) in q_idx.out_adj.get(qv, ()):
                if other == qv:
                    need = q_pair_count[(t, qv, qv)]
                    if len(h_idx.edges_by_key.get((t, h, h), ())) < need:
                        ok = False
                        break
                elif other in assignment:
                    need = q_pair_count[(t, qv, other)]
                    if len(h_idx.edges_by_key.get((t, h, assignment[other]), ())) < need:
                        ok = False
                        break
            if ok:
                for (_, other, t) in q_idx.in_adj.get(qv, ()):
                    if other != qv and other in assignment:
                        need = q_pair_count[(t, other, qv)]
                        if len(h_idx.edges_by_key.get((t, assignment[other], h), ())) < need:
                            ok = False
                            break
            if ok:
                out.append(h)
        return out

    def extend(k: int) -> None:
        if k == len(order):
            node_maps.append(dict(assignment))
            return
        qv = order[k]
        for h in candidates(qv):
            assignment[qv] = h
            used.add(h)
            extend(k + 1)
            del assignment[qv]
            used.discard(h)

    extend(0)

    # Assign edge images: within each (type, mapped source, mapped target)
    # group the pattern's parallel edges may hit the host's parallel edges
    # in any injective way.
    matches: list[Match] = []
    q_edges = sorted(q.edge_set)
    for nm in node_maps:
        groups: dict[tuple[str, str, str], list[str]] = {}
        for e in q_edges:
            src, tgt = store.endpoint(e)
            groups.setdefault((store.elem_type(e), nm[src], nm[tgt]), []).append(e)
        options: list[list[tuple[tuple[str, str], ...]]] = []
        feasible = True
        for key in sorted(groups):
            members = groups[key]
            hosts = h_idx.edges_by_key.get(key, ())
            if len(hosts) < len(members):
                feasible = False
                break
            options.append(
                [tuple(zip(members, perm)) for perm in itertools.permutations(hosts, len(members))]
            )
        if not feasible:
            continue
        node_pairs = tuple(sorted(nm.items()))
        if not options:
            matches.append(Match(node_pairs, ()))
            continue
        for combo in itertools.product(*options):
            edge_map: dict[str, str] = {}
            for part in combo:
                edge_map.update(part)
            matches.append(Match(node_pairs, tuple(sorted(edge_map.items()))))
    matches.sort()
    return matches


def pcheck(model: Model, pattern: Pattern) -> list[Match]:
    """All embeddings of the violation pattern; empty means the model conforms."""
    return find_monomorphisms(pattern, model)


def graph_union(models: Iterable[Model]) -> Model:
    """Componentwise union of models over one store and type graph."""
    ms = list(models)
    if not ms:
        raise ValueError("graph_union needs at least one model")
    first = ms[0]
    nodes: set[str] = set()
    edges: set[str] = set()
    for m in ms:
        if m.store is not first.store:
            raise StoreMismatch("models are drawn from different element stores")
        if m.type_graph != first.type_graph:
            raise TypeGraphMismatch("models use different type graphs")
        nodes |= m.node_set
        edges |= m.edge_set
    return Model(first.store, first.type_graph, nodes, edges)
