"""Command line behaviour: output formats, exit codes, determinism."""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from mvmodel.cli import main

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
RUNNING = str(DATA_DIR / "running.corpus.json")
RUNNING_K = str(DATA_DIR / "running_constraints.json")
PROJECT = str(DATA_DIR / "oo_project.corpus.json")
PROJECT_K = str(DATA_DIR / "oo_constraints.json")


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_summarises_corpus(capsys, data_dir):
    code, out, err = run_cli(capsys, "validate", str(data_dir / "running.corpus.json"))
    assert code == 0 and err == ""
    assert out == "ok versions=3 elements=7\n"


def test_validate_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run_cli(capsys, "validate", str(tmp_path / "absent.json"))
    assert code == 2
    assert "error:" in err


def test_validate_bad_format_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "nope"}')
    code, _, err = run_cli(capsys, "validate", str(bad))
    assert code == 1
    assert "error:" in err


def test_bad_usage_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check"])  # missing corpus and --constraints
    assert exc.value.code == 2


def test_project_writes_model_document(capsys, data_dir):
    code, out, _ = run_cli(
        capsys, "project", str(data_dir / "running.corpus.json"), "--version", "M_2"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["version"] == "M_2"
    assert set(doc["nodes"]) == {"c1", "c2", "c3"}
    assert list(doc["edges"]) == ["sup_c1_c3"]


def test_project_unknown_version_exits_1(capsys, data_dir):
    code, _, err = run_cli(
        capsys, "project", str(data_dir / "running.corpus.json"), "--version", "M_9"
    )
    assert code == 1 and "M_9" in err


def test_check_text_format(capsys, data_dir):
    code, out, _ = run_cli(
        capsys,
        "check",
        str(data_dir / "oo_project.corpus.json"),
        "--constraints",
        str(data_dir / "oo_constraints.json"),
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "total 9"
    assert lines[0] == (
        "violation pattern=consistent-override version=v2"
        " nodes=meth_sub:foo_b,meth_super:foo_a,ret_sub:t_str,ret_super:t_int"
        " edges=ovr:ovr_bfoo_afoo,rt_sub:rt_bfoo_str,rt_super:rt_afoo_int"
    )
    assert all(l.startswith("violation pattern=") for l in lines[:-1])


def test_check_modes_agree(capsys, data_dir):
    corpus = str(data_dir / "oo_project.corpus.json")
    constraints = str(data_dir / "oo_constraints.json")
    _, out_mvm, _ = run_cli(capsys, "check", corpus, "--constraints", constraints)
    _, out_svm, _ = run_cli(
        capsys, "check", corpus, "--constraints", constraints, "--mode", "svm"
    )
    assert out_mvm == out_svm


def test_check_json_is_canonical(capsys, data_dir):
    code, out, _ = run_cli(
        capsys,
        "check",
        str(data_dir / "oo_project.corpus.json"),
        "--constraints",
        str(data_dir / "oo_constraints.json"),
        "--json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["format"] == "mv-report/1"
    assert doc["total"] == 9 and len(doc["violations"]) == 9
    assert out == json.dumps(doc, indent=2, sort_keys=True) + "\n"


def test_conflicts_text_format(capsys, data_dir):
    code, out, _ = run_cli(capsys, "conflicts", str(data_dir / "oo_project.corpus.json"))
    assert code == 0
    assert out == (
        "conflict left=v3 right=v5 base=v1 edge=sup_c_a node=cls_c\n"
        "conflict left=v4 right=v5 base=v2 edge=sup_c_a node=cls_c\n"
        "total 2\n"
    )


def test_merge_check_text_format(capsys, data_dir):
    code, out, _ = run_cli(
        capsys,
        "merge-check",
        str(data_dir / "running.corpus.json"),
        "--constraints",
        str(data_dir / "running_constraints.json"),
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "total 2"
    assert lines[0] == (
        "merge-violation pattern=unique-superclass left=M_2 right=M_3 base=M_1"
        " nodes=cls:c1,sup_a:c2,sup_b:c3 edges=ext_a:sup_c1_c2,ext_b:sup_c1_c3"
    )


def test_merge_check_lcp_single(capsys, data_dir):
    corpus = str(data_dir / "oo_project.corpus.json")
    constraints = str(data_dir / "oo_constraints.json")
    _, out_all, _ = run_cli(capsys, "merge-check", corpus, "--constraints", constraints)
    _, out_single, _ = run_cli(
        capsys, "merge-check", corpus, "--constraints", constraints, "--lcp", "single"
    )
    # every pair here has exactly one merge base, so the modes agree
    assert out_all == out_single
    assert out_all.splitlines()[-1] == "total 7"


def test_oracle_passes_on_shipped_corpora(capsys, data_dir):
    for corpus, constraints in (
        ("running.corpus.json", "running_constraints.json"),
        ("oo_project.corpus.json", "oo_constraints.json"),
    ):
        code, out, _ = run_cli(
            capsys,
            "oracle",
            str(data_dir / corpus),
            "--constraints",
            str(data_dir / constraints),
        )
        assert code == 0, corpus
        lines = out.splitlines()
        assert len(lines) == 5
        assert all(" ok results=" in l for l in lines)


def test_generate_round_trips_through_cli(capsys, tmp_path, data_dir):
    params = tmp_path / "params.json"
    params.write_text(
        json.dumps(
            {
                "format": "mv-generator/1",
                "seed": 4,
                "base_size": 8,
                "branch_factor": 2,
                "version_count": 5,
                "edits_per_modification": 2,
                "deletion_bias": 0.25,
            }
        )
    )
    out1 = tmp_path / "c1.json"
    out2 = tmp_path / "c2.json"
    assert run_cli(capsys, "generate", "--params", str(params), "-o", str(out1))[0] == 0
    assert run_cli(capsys, "generate", "--params", str(params), "-o", str(out2))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    code, _, _ = run_cli(capsys, "validate", str(out1))
    assert code == 0


def test_export_mvm_document(capsys, data_dir):
    code, out, _ = run_cli(capsys, "export-mvm", str(data_dir / "running.corpus.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["format"] == "mv-encoding/1"
    assert "version:M_1" in doc["nodes"]


def test_bench_small_corpus(capsys, data_dir):
    code, out, _ = run_cli(
        capsys,
        "bench",
        "--params",
        str(data_dir / "bench_small_all.params.json"),
        "--repeat",
        "1",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["task", "mvm_s", "svm_s", "speedup", "results"]
    assert [l.split()[0] for l in lines[1:]] == ["check", "conflicts", "merge-check"]


def test_bench_json_fields(capsys, data_dir):
    code, out, _ = run_cli(
        capsys,
        "bench",
        "--params",
        str(data_dir / "bench_small_all.params.json"),
        "--repeat",
        "1",
        "--json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["format"] == "mv-bench-report/1"
    assert [t["task"] for t in doc["tasks"]] == ["check", "conflicts", "merge-check"]
    for t in doc["tasks"]:
        assert t["mvm_time"] >= 0 and t["svm_time"] >= 0
        assert isinstance(t["results"], int)


@pytest.mark.parametrize(
    "argv",
    [
        ("validate", RUNNING),
        ("project", RUNNING, "--version", "M_3"),
        ("check", PROJECT, "--constraints", PROJECT_K),
        ("check", PROJECT, "--constraints", PROJECT_K, "--json"),
        ("check", PROJECT, "--constraints", PROJECT_K, "--mode", "svm"),
        ("conflicts", PROJECT),
        ("conflicts", PROJECT, "--lcp", "single"),
        ("conflicts", PROJECT, "--mode", "svm", "--json"),
        ("merge-check", PROJECT, "--constraints", PROJECT_K),
        ("merge-check", RUNNING, "--constraints", RUNNING_K, "--json"),
        ("oracle", PROJECT, "--constraints", PROJECT_K),
        ("export-mvm", RUNNING),
    ],
)
def test_commands_are_byte_deterministic(capsys, argv):
    first = run_cli(capsys, *argv)
    second = run_cli(capsys, *argv)
    assert first == second
    assert first[0] == 0


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "mvmodel.cli", "validate", RUNNING],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "ok versions=3 elements=7\n"
