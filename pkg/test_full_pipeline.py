"""
Test Full Mulambda Pipeline
===========================
Tests the complete verification pipeline:
1. Group construction from spec text
2. Subgroup lattice and class poset
3. mu / lambda tables and the property check per class
4. Corpus suite through the engine and the command line
"""

import json
import os
import sys
import tempfile
import time

# Add src to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import MulambdaEngine, main, parse_corpus
from src.models import RunConfig

CORPORA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpora")


def test_full_pipeline():
    """Test the complete Mulambda pipeline."""
    print("=" * 70)
    print("MULAMBDA - FULL PIPELINE TEST")
    print("=" * 70)

    # Initialize engine with an in-memory cache
    print("\n[1] Initializing Mulambda Engine (memory cache)...")
    engine = MulambdaEngine(RunConfig(command="suite", use_cache=False, threads=2))
    print("    ✓ Engine initialized")

    # Test single group
    print("\n[2] Testing single group (alt:5)...")
    start = time.time()
    result = engine.process_spec("alt:5")
    elapsed = time.time() - start

    print(f"    ✓ Processed in {elapsed:.3f} seconds")
    print(f"    ✓ Success: {result['success']}")
    assert result["success"], result["error"]

    report = result["report"]
    print(f"\n    PROPERTY REPORT:")
    print(f"    - Order: {report.order}")
    print(f"    - Subgroups: {report.subgroup_count} in {report.class_count} classes")
    print(f"    - |Phi|: {report.frattini_order}, |G'|: {report.derived_order}")
    print(f"    - Verdict: {report.verdict.value}")
    assert report.subgroup_count == 59
    assert report.verdict.value == "pass"

    # Test solvable corpus
    print("\n[3] Testing solvable corpus...")
    entries = parse_corpus(os.path.join(CORPORA, "solvable.txt"))
    start = time.time()
    results = engine.process_corpus(entries, parallel=True)
    elapsed = time.time() - start

    errors = [r for r in results if r.error is not None]
    met = [r for r in results if r.met]
    print(f"    ✓ Processed {len(results)} groups in {elapsed:.3f} seconds")
    print(f"    ✓ Expectations met: {len(met)}/{len(results)}")
    print(f"    ✓ Errors: {len(errors)}")

    print("\n    INDIVIDUAL RESULTS:")
    for r in results:
        if r.error is None:
            print(f"    - {r.spec}: {r.observed.value} ({r.processing_time:.2f}s)")
        else:
            print(f"    - {r.spec}: ERROR - {r.error}")
    assert not errors
    assert len(met) == len(results)

    # Save full results
    output_path = os.path.join(tempfile.gettempdir(), "mulambda_pipeline_results.json")
    with open(output_path, "w") as f:
        json.dump([r.to_dict() for r in results], f, indent=2)

    print(f"\n{'=' * 70}")
    print(f"Full results saved to: {output_path}")
    print("=" * 70)


def test_command_line():
    """Test the suite subcommand end to end."""
    print("\n" + "=" * 70)
    print("COMMAND LINE - SOLVABLE SUITE")
    print("=" * 70)

    start = time.time()
    exit_code = main(["suite", os.path.join(CORPORA, "solvable.txt"), "--no-cache", "--threads", "4"])
    elapsed = time.time() - start

    print(f"\n    Total time: {elapsed:.2f} seconds")
    print(f"    Exit code: {exit_code}")
    if exit_code == 0:
        print("\n    ✓ PASSED: every expectation met")
    else:
        print("\n    ✗ FAILED: see the table above")
    assert exit_code == 0


if __name__ == "__main__":
    test_full_pipeline()
    test_command_line()
