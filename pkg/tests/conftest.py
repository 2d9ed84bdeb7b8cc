from __future__ import annotations

from pathlib import Path

import pytest

from mvmodel import ElementStore, Model, Pattern, TypeGraph

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# one line per acceptance criterion, echoed after the test summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


def build_store(type_graph: TypeGraph, nodes: dict[str, str], edges: dict[str, tuple[str, str, str]]) -> ElementStore:
    """Store from literal dicts: nodes id->type, edges id->(type, src, tgt)."""
    store = ElementStore()
    for n, t in nodes.items():
        store.add_node(n, t)
    for e, (t, s, g) in edges.items():
        store.add_edge(e, t, s, g)
    return store


def full_model(store: ElementStore, type_graph: TypeGraph) -> Model:
    return Model(store, type_graph, store.node_ids(), store.edge_ids())


def make_pattern(name: str, type_graph: TypeGraph, nodes: dict[str, str], edges: dict[str, tuple[str, str, str]]) -> Pattern:
    store = build_store(type_graph, nodes, edges)
    return Pattern(name, full_model(store, type_graph))
