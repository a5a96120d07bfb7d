"""
Test Command Line
=================

Subcommands, output formats and exit codes through main(argv).
"""

import json
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.cli import build_parser, main, parse_corpus
from src.config import DEFAULT_FORMAT, DEFAULT_THREADS, ELEMENT_CAP, SUBGROUP_CAP
from src.errors import CorpusError
from src.models import RunConfig, Verdict

FAST = ["--no-cache", "--threads", "1"]


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_json(capsys):
    code, out, _ = _run(capsys, "analyze", "sym:3", "--format", "json", *FAST)
    assert code == 0
    payload = json.loads(out)
    assert payload["spec"] == "sym:3"
    assert payload["order"] == 6
    assert payload["subgroup_count"] == 6
    assert payload["class_count"] == 4
    assert payload["normal_subgroup_count"] == 3
    assert payload["verdict"] == "pass"
    assert payload["minimal_simple"] is False


def test_analyze_human(capsys):
    code, out, _ = _run(capsys, "analyze", "alt:5", *FAST)
    assert code == 0
    assert "subgroups" in out and "59" in out
    assert "verdict: pass" in out


def test_verify_pass(capsys):
    code, out, _ = _run(capsys, "verify", "alt:5", "dihedral:8", *FAST)
    assert code == 0
    assert "alt:5: pass" in out
    assert "dihedral:8: pass" in out


def test_verify_csv_header(capsys):
    code, out, _ = _run(capsys, "verify", "sym:3", "--format", "csv", *FAST)
    assert code == 0
    assert out.splitlines()[0].startswith("spec,class,rep_order,class_size,mu,lambda")


def test_verify_bad_spec(capsys):
    code, _, err = _run(capsys, "verify", "nonsense:3", *FAST)
    assert code == 2
    assert "error:" in err


def test_bad_thread_count(capsys):
    code, _, err = _run(capsys, "verify", "sym:3", "--no-cache", "--threads", "0")
    assert code == 2
    assert "thread count" in err


def test_family_regime_error(capsys):
    code, _, err = _run(capsys, "family", "l2", "--q", "9", *FAST)
    assert code == 2
    assert "q = 9" in err


def test_family_sz(capsys):
    code, out, _ = _run(capsys, "family", "sz", "--q", "8", "--format", "json", *FAST)
    assert code == 0
    payload = json.loads(out)
    assert payload["self_check"] is True
    assert any(row["label"] == "{1}" and row["mu"] == -29120 for row in payload["rows"])


def test_family_cross_check(capsys):
    code, out, _ = _run(capsys, "family", "l2", "--q", "8", "--cross-check", *FAST)
    assert code == 0
    assert "self-check: pass" in out
    assert "cross-check against order 504: match" in out


def test_family_ree_cross_check_unavailable(capsys):
    code, _, err = _run(capsys, "family", "ree", "--q", "27", "--cross-check", *FAST)
    assert code == 2
    assert "cross-check unavailable" in err


# ============================================================================
# Suites
# ============================================================================

def test_suite_all_met(capsys, tmp_path):
    corpus = tmp_path / "ok.txt"
    corpus.write_text("# small groups\nsym:3 EXPECT pass\n\ncyclic:4   EXPECT pass\nalt:4\n")
    code, out, _ = _run(capsys, "suite", str(corpus), *FAST)
    assert code == 0
    assert "3/3 expectations met" in out


def test_suite_unmet_expectation(capsys, tmp_path):
    corpus = tmp_path / "wrong.txt"
    corpus.write_text("sym:3 EXPECT fail\n")
    code, out, _ = _run(capsys, "suite", str(corpus), "--format", "json", *FAST)
    assert code == 1
    payload = json.loads(out)
    assert payload["all_met"] is False
    assert payload["entries"][0]["observed"] == "pass"


def test_suite_empty(capsys, tmp_path):
    corpus = tmp_path / "empty.txt"
    corpus.write_text("# nothing here\n")
    code, out, _ = _run(capsys, "suite", str(corpus), *FAST)
    assert code == 0
    assert "0/0 expectations met" in out


def test_suite_entry_error(capsys, tmp_path):
    corpus = tmp_path / "broken.txt"
    corpus.write_text("sym:3 EXPECT pass\nsym:0 EXPECT pass\n")
    code, _, _ = _run(capsys, "suite", str(corpus), *FAST)
    assert code == 2


def test_suite_missing_file(capsys, tmp_path):
    code, _, err = _run(capsys, "suite", str(tmp_path / "absent.txt"), *FAST)
    assert code == 2
    assert "cannot read corpus" in err


def test_suite_parallel_keeps_order(capsys, tmp_path):
    specs = ["sym:4", "cyclic:2", "alt:4", "dihedral:6", "cyclic:9"]
    corpus = tmp_path / "order.txt"
    corpus.write_text("".join(f"{s} EXPECT pass\n" for s in specs))
    code, out, _ = _run(capsys, "suite", str(corpus), "--format", "json", "--no-cache", "--threads", "4")
    assert code == 0
    assert [e["spec"] for e in json.loads(out)["entries"]] == specs


def test_parse_corpus(tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("alt:5 EXPECT PASS  # simple\nu3:3 EXPECT fail\nsym:3\n")
    assert parse_corpus(str(corpus)) == [("alt:5", Verdict.PASS), ("u3:3", Verdict.FAIL), ("sym:3", None)]


def test_parse_corpus_malformed(tmp_path):
    corpus = tmp_path / "bad.txt"
    corpus.write_text("EXPECT pass\n")
    with pytest.raises(CorpusError):
        parse_corpus(str(corpus))


def test_shipped_corpora_parse():
    root = os.path.join(os.path.dirname(__file__), '..', 'corpora')
    for name in ("solvable.txt", "nonsolvable.txt"):
        entries = parse_corpus(os.path.join(root, name))
        assert entries and all(expected is not None for _, expected in entries)


@pytest.mark.slow
def test_nonsolvable_corpus_meets_every_expectation(capsys):
    corpus = os.path.join(os.path.dirname(__file__), '..', 'corpora', "nonsolvable.txt")
    code, out, err = _run(capsys, "suite", corpus, "--format", "json", "--no-cache", "--threads", "2")
    assert code == 0, err
    entries = json.loads(out)["entries"]
    assert len(entries) == len(parse_corpus(corpus))
    by_spec = {e["spec"]: e for e in entries}
    assert by_spec["u3:3"]["observed"] == "fail"
    assert by_spec["sz:8"]["observed"] == "pass"


# ============================================================================
# Cache
# ============================================================================

def test_cache_info_and_clear(capsys, tmp_path):
    cache_dir = str(tmp_path / "cache")
    code, out, _ = _run(capsys, "cache", "info", "--cache-dir", cache_dir, "--format", "json")
    assert code == 0
    assert json.loads(out)["files"] == 0

    _run(capsys, "verify", "sym:4", "--cache-dir", cache_dir, "--threads", "1")
    code, out, _ = _run(capsys, "cache", "info", "--cache-dir", cache_dir, "--format", "json")
    assert json.loads(out)["files"] == 1

    code, out, _ = _run(capsys, "cache", "clear", "--cache-dir", cache_dir, "--format", "json")
    assert code == 0
    assert json.loads(out)["removed"] == 1


def test_cold_and_warm_cache_agree(capsys, tmp_path):
    argv = ["analyze", "sym:4", "--format", "csv", "--cache-dir", str(tmp_path), "--threads", "1"]
    cold_code, cold, _ = _run(capsys, *argv)
    warm_code, warm, _ = _run(capsys, *argv)
    assert cold_code == warm_code == 0
    assert cold == warm, "a cached lattice should reproduce the same table"


# ============================================================================
# Parser and run configuration
# ============================================================================

def test_help_documents_exit_codes():
    text = build_parser().format_help()
    assert "exit codes:" in text
    assert "2  operational error" in text
    assert "suite entry that raised an error" in text

    suite = build_parser().parse_args(["suite", "c.txt"])
    assert suite.command == "suite"


def test_run_config_defaults_follow_environment_config():
    config = RunConfig(command="verify")
    assert config.output_format == DEFAULT_FORMAT
    assert config.element_cap == ELEMENT_CAP
    assert config.subgroup_cap == SUBGROUP_CAP
    assert config.threads == DEFAULT_THREADS
