"""Folded analyses against per-version baselines, plus frozen examples."""

from __future__ import annotations

import pytest

from mvmodel import (
    GeneratorParams,
    Match,
    MergeConflictReport,
    MergeViolationReport,
    Model,
    ModelVersioning,
    TypeGraph,
    VersionedViolation,
    comb,
    generate_versioning,
    mcheck_mv,
    oo_constraint_patterns,
    pcheck_m_mv,
    pcheck_mv,
    svm_check,
    svm_conflicts,
    svm_merge_check,
)
from mvmodel.reports import check_lcp_mode
from conftest import build_store, make_pattern

CLS_TG = TypeGraph({"Class"}, {"superclass": ("Class", "Class")})


def unique_superclass_pattern():
    return make_pattern(
        "unique-superclass",
        CLS_TG,
        {"cls": "Class", "sup_a": "Class", "sup_b": "Class"},
        {"ext_a": ("superclass", "cls", "sup_a"), "ext_b": ("superclass", "cls", "sup_b")},
    )


def running_example() -> ModelVersioning:
    store = build_store(
        CLS_TG,
        {"c1": "Class", "c2": "Class", "c3": "Class", "c4": "Class"},
        {
            "sup_c1_c3": ("superclass", "c1", "c3"),
            "sup_c1_c2": ("superclass", "c1", "c2"),
            "sup_c4_c2": ("superclass", "c4", "c2"),
        },
    )
    versions = {
        "M_1": Model(store, CLS_TG, {"c1", "c2", "c3", "c4"}, set()),
        "M_2": Model(store, CLS_TG, {"c1", "c2", "c3"}, {"sup_c1_c3"}),
        "M_3": Model(store, CLS_TG, {"c1", "c2", "c3", "c4"}, {"sup_c1_c2", "sup_c4_c2"}),
    }
    v = ModelVersioning(versions, {("M_1", "M_2"), ("M_1", "M_3")}, root="M_1")
    v.validate()
    return v


def acceptance_params(seed: int, base: int = 8) -> GeneratorParams:
    return GeneratorParams(
        seed=seed,
        base_size=base,
        branch_factor=1 + seed % 3,
        version_count=1 + seed % 8,
        edits_per_modification=seed % 5,
        deletion_bias=(seed % 4) * 0.25,
    )


def test_lcp_mode_is_checked():
    check_lcp_mode("all")
    check_lcp_mode("single")
    with pytest.raises(ValueError):
        check_lcp_mode("first")


def test_no_version_violates_in_the_fork_example():
    versioning = running_example()
    pattern = unique_superclass_pattern()
    assert pcheck_mv(comb(versioning), pattern) == []
    assert svm_check(versioning, pattern) == []


def test_fork_example_has_exactly_one_conflict():
    versioning = running_example()
    expected = [
        MergeConflictReport(
            left="M_2", right="M_3", base="M_1", edge="sup_c4_c2", node="c4"
        )
    ]
    assert mcheck_mv(comb(versioning)) == expected
    assert mcheck_mv(comb(versioning), "single") == expected
    assert svm_conflicts(versioning) == expected


def test_fork_example_merge_violations_root_at_c1():
    versioning = running_example()
    pattern = unique_superclass_pattern()
    expected = [
        MergeViolationReport(
            left="M_2",
            right="M_3",
            base="M_1",
            match=Match(
                nodes=(("cls", "c1"), ("sup_a", "c2"), ("sup_b", "c3")),
                edges=(("ext_a", "sup_c1_c2"), ("ext_b", "sup_c1_c3")),
            ),
        ),
        MergeViolationReport(
            left="M_2",
            right="M_3",
            base="M_1",
            match=Match(
                nodes=(("cls", "c1"), ("sup_a", "c3"), ("sup_b", "c2")),
                edges=(("ext_a", "sup_c1_c3"), ("ext_b", "sup_c1_c2")),
            ),
        ),
    ]
    assert pcheck_m_mv(comb(versioning), pattern) == expected
    assert svm_merge_check(versioning, pattern) == expected


def test_pcheck_mv_reports_per_version():
    store = build_store(
        CLS_TG,
        {"c1": "Class", "c2": "Class", "c3": "Class"},
        {"e12": ("superclass", "c1", "c2"), "e13": ("superclass", "c1", "c3")},
    )
    clean = Model(store, CLS_TG, {"c1", "c2", "c3"}, {"e12"})
    dirty = Model(store, CLS_TG, {"c1", "c2", "c3"}, {"e12", "e13"})
    versioning = ModelVersioning(
        {"r": clean, "bad": dirty}, {("r", "bad")}, root="r"
    )
    versioning.validate()
    hits = pcheck_mv(comb(versioning), unique_superclass_pattern())
    assert [h.version for h in hits] == ["bad", "bad"]
    assert all(isinstance(h, VersionedViolation) for h in hits)
    assert hits == svm_check(versioning, unique_superclass_pattern())


def test_pcheck_mv_ignores_matches_spanning_versions():
    """Pattern parts that never coexist in one version must not be reported."""
    store = build_store(
        CLS_TG,
        {"c1": "Class", "c2": "Class", "c3": "Class"},
        {"e12": ("superclass", "c1", "c2"), "e13": ("superclass", "c1", "c3")},
    )
    base = Model(store, CLS_TG, {"c1", "c2", "c3"}, set())
    only12 = Model(store, CLS_TG, {"c1", "c2", "c3"}, {"e12"})
    only13 = Model(store, CLS_TG, {"c1", "c2", "c3"}, {"e13"})
    versioning = ModelVersioning(
        {"r": base, "a": only12, "b": only13},
        {("r", "a"), ("r", "b")},
        root="r",
    )
    versioning.validate()
    mvm = comb(versioning)
    # both edges are in the folded graph, so the structural match exists
    assert "e12" in mvm.structural.node_set and "e13" in mvm.structural.node_set
    assert pcheck_mv(mvm, unique_superclass_pattern()) == []
    assert svm_check(versioning, unique_superclass_pattern()) == []


def test_merge_preview_applies_deletions_before_matching():
    """A violation avoided by one side's deletion must not be predicted."""
    store = build_store(
        CLS_TG,
        {"c1": "Class", "c2": "Class", "c3": "Class"},
        {"e12": ("superclass", "c1", "c2"), "e13": ("superclass", "c1", "c3")},
    )
    base = Model(store, CLS_TG, {"c1", "c2", "c3"}, {"e12"})
    drop = Model(store, CLS_TG, {"c1", "c2", "c3"}, set())
    add = Model(store, CLS_TG, {"c1", "c2", "c3"}, {"e12", "e13"})
    versioning = ModelVersioning(
        {"r": base, "a": drop, "b": add}, {("r", "a"), ("r", "b")}, root="r"
    )
    versioning.validate()
    # merged result keeps only e13: a deleted e12, b created e13
    assert pcheck_m_mv(comb(versioning), unique_superclass_pattern()) == []
    assert svm_merge_check(versioning, unique_superclass_pattern()) == []


@pytest.mark.parametrize("seed", range(25))
def test_folded_check_equals_per_version_check(seed):
    versioning = generate_versioning(acceptance_params(seed))
    mvm = comb(versioning)
    for pattern in oo_constraint_patterns():
        assert pcheck_mv(mvm, pattern) == svm_check(versioning, pattern)


@pytest.mark.parametrize("seed", range(25))
@pytest.mark.parametrize("mode", ["all", "single"])
def test_folded_conflicts_equal_pairwise_conflicts(seed, mode):
    versioning = generate_versioning(acceptance_params(seed))
    mvm = comb(versioning)
    assert mcheck_mv(mvm, mode) == svm_conflicts(versioning, mode)


@pytest.mark.parametrize("seed", range(25))
@pytest.mark.parametrize("mode", ["all", "single"])
def test_folded_merge_check_equals_pairwise_merge_check(seed, mode):
    versioning = generate_versioning(acceptance_params(seed))
    mvm = comb(versioning)
    for pattern in oo_constraint_patterns():
        assert pcheck_m_mv(mvm, pattern, mode) == svm_merge_check(
            versioning, pattern, mode
        )


def test_single_mode_picks_one_base_in_criss_cross():
    """With two merge bases, single mode must use the lexicographic least."""
    store = build_store(
        CLS_TG,
        {"c1": "Class", "c2": "Class", "c3": "Class"},
        {"e12": ("superclass", "c1", "c2"), "e13": ("superclass", "c1", "c3")},
    )
    plain = Model(store, CLS_TG, {"c1", "c2", "c3"}, set())
    both = Model(store, CLS_TG, {"c1", "c2", "c3"}, {"e12", "e13"})
    versioning = ModelVersioning(
        {"r": plain, "a": plain, "b": plain, "c": both, "d": plain},
        {("r", "a"), ("r", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")},
        root="r",
    )
    versioning.validate()
    assert versioning.latest_common_predecessors("c", "d") == {"a", "b"}
    mvm = comb(versioning)
    pattern = unique_superclass_pattern()
    for mode in ("all", "single"):
        got = pcheck_m_mv(mvm, pattern, mode)
        assert got == svm_merge_check(versioning, pattern, mode)
        assert {r.base for r in got} == ({"a", "b"} if mode == "all" else {"a"})
