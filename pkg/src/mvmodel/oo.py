"""A small object-oriented modelling domain.

Used by the generator, the shipped corpora, and the benchmark presets:
classes with single inheritance, methods with owners, return types, and
override relationships, plus the three well-formedness constraints that
go with them.
"""

from __future__ import annotations

from .core import ElementStore, Model, Pattern, TypeGraph

CLASS = "Class"
METHOD = "Method"
TYPEREF = "TypeRef"

SUPERCLASS = "superclass"
OWNS = "owns"
RETURN_TYPE = "returnType"
OVERRIDES = "overrides"


def oo_type_graph() -> TypeGraph:
    return TypeGraph(
        [CLASS, METHOD, TYPEREF],
        {
            SUPERCLASS: (CLASS, CLASS),
            OWNS: (CLASS, METHOD),
            RETURN_TYPE: (METHOD, TYPEREF),
            OVERRIDES: (METHOD, METHOD),
        },
    )


def _pattern(name: str, nodes: dict[str, str], edges: dict[str, tuple[str, str, str]]) -> Pattern:
    store = ElementStore()
    for nid, t in nodes.items():
        store.add_node(nid, t)
    for eid, (t, src, tgt) in edges.items():
        store.add_edge(eid, t, src, tgt)
    return Pattern(name, Model(store, oo_type_graph(), nodes, edges))


def unique_superclass_pattern() -> Pattern:
    """A class extending two distinct classes at once."""
    return _pattern(
        "unique-superclass",
        {"cls": CLASS, "sup_a": CLASS, "sup_b": CLASS},
        {
            "ext_a": (SUPERCLASS, "cls", "sup_a"),
            "ext_b": (SUPERCLASS, "cls", "sup_b"),
        },
    )


def unique_return_type_pattern() -> Pattern:
    """A method declaring two distinct return types at once."""
    return _pattern(
        "unique-return-type",
        {"meth": METHOD, "ret_a": TYPEREF, "ret_b": TYPEREF},
        {
            "rt_a": (RETURN_TYPE, "meth", "ret_a"),
            "rt_b": (RETURN_TYPE, "meth", "ret_b"),
        },
    )


def consistent_override_pattern() -> Pattern:
    """An override whose return type differs from the overridden method's."""
    return _pattern(
        "consistent-override",
        {"meth_sub": METHOD, "meth_super": METHOD, "ret_sub": TYPEREF, "ret_super": TYPEREF},
        {
            "ovr": (OVERRIDES, "meth_sub", "meth_super"),
            "rt_sub": (RETURN_TYPE, "meth_sub", "ret_sub"),
            "rt_super": (RETURN_TYPE, "meth_super", "ret_super"),
        },
    )


def oo_constraint_patterns() -> list[Pattern]:
    return [
        consistent_override_pattern(),
        unique_return_type_pattern(),
        unique_superclass_pattern(),
    ]
