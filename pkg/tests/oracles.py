"""Slow reference implementations the fast code is checked against.

Everything here trades speed for obviousness: exhaustive permutation
search instead of backtracking, so a bug in the real matcher cannot
hide in shared logic.
"""

from __future__ import annotations

import itertools

from mvmodel import Match, Model, Pattern


def brute_force_monomorphisms(pattern: Pattern, host: Model) -> list[Match]:
    q = pattern.graph
    q_nodes = sorted(q.node_set)
    q_edges = sorted(q.edge_set)
    h_nodes = sorted(host.node_set)
    found: list[Match] = []
    for combo in itertools.permutations(h_nodes, len(q_nodes)):
        node_map = dict(zip(q_nodes, combo))
        if any(host.store.elem_type(node_map[n]) != q.store.elem_type(n) for n in q_nodes):
            continue
        pools: list[list[str]] = []
        for e in q_edges:
            t = q.store.elem_type(e)
            s, g = q.store.endpoint(e)
            pool = sorted(
                h
                for h in host.edge_set
                if host.store.elem_type(h) == t
                and host.store.endpoint(h) == (node_map[s], node_map[g])
            )
            pools.append(pool)
        for edges in itertools.product(*pools):
            if len(set(edges)) != len(edges):
                continue
            found.append(Match.from_maps(node_map, dict(zip(q_edges, edges))))
    return sorted(found)
