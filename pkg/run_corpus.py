#!/usr/bin/env python3
"""
Corpus runner for the standard resolution

Runs every corpus entry through the command line front end and compares
its exit code with the expected one.

Usage:
    python run_corpus.py [--workers N] [--reports DIR]
"""

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from admissible_pairs.standard_resolution.cli.cli import EXIT_GATE, EXIT_PASS, parse_job, run_and_report

FIXTURES = Path(__file__).resolve().parent / "admissible_pairs" / "fixtures"

# (name, command, fixture, expected exit code)
CORPUS = [
    ("Flagship point", "resolve", "flagship.json", EXIT_PASS),
    ("Wrong quotient datum", "resolve", "wrong_quotient.json", EXIT_GATE),
    ("Two point ideal sheaf", "resolve", "two_points_sheaf.json", EXIT_PASS),
    ("Rank two smoothing", "resolve", "smoothing.json", EXIT_PASS),
    ("Point center", "blowup", "point_center.json", EXIT_PASS),
    ("Two points", "blowup", "two_points.json", EXIT_PASS),
    ("Length two point", "blowup", "double_point.json", EXIT_PASS),
    ("Point moving over the dual numbers", "resolve-family", "dual_family.json", EXIT_PASS),
    ("Special fiber over the dual numbers", "flatcheck", "special_fiber.json", EXIT_GATE),
]


def run_entry(command, fixture, report=None):
    """Exit code and report of one corpus entry"""
    argv = [command, "--input", str(FIXTURES / fixture)]
    if report:
        argv += ["--report", str(report)]
    job = parse_job(argv)
    return run_and_report(job, write=bool(report))


def report_path(reports, name):
    if not reports:
        return None
    return Path(reports) / (name.lower().replace(" ", "_") + ".json")


def run_corpus(entries=None, reports=None, workers=1):
    """Run the corpus; returns the reports by name and the names that missed their exit code"""
    entries = CORPUS if entries is None else entries
    if reports:
        Path(reports).mkdir(parents=True, exist_ok=True)

    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    pending = {}
    if executor is not None:
        for name, command, fixture, _ in entries:
            pending[name] = executor.submit(run_entry, command, fixture, report_path(reports, name))

    results, failures = {}, []
    try:
        for name, command, fixture, expected in entries:
            print(f"📋 {name}...")
            try:
                if executor is not None:
                    code, report = pending[name].result()
                else:
                    code, report = run_entry(command, fixture, report_path(reports, name))
            except Exception as e:
                print(f"❌ {name} failed: {str(e)}")
                failures.append(name)
                continue

            results[name] = report
            if code == expected:
                print(f"✅ {name} exited {code} as expected")
            else:
                print(f"❌ {name} exited {code}, expected {expected}")
                failures.append(name)
    finally:
        if executor is not None:
            executor.shutdown()

    return results, failures


def main():
    """Main corpus function"""
    parser = argparse.ArgumentParser(description="Run the standard resolution corpus")
    parser.add_argument("--workers", type=int, default=1, help="Worker processes")
    parser.add_argument("--reports", help="Directory for the JSON reports")
    parser.add_argument("--verbose", action="store_true", help="Log at INFO level")
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    print("🚀 Running the standard resolution corpus...")
    _, failures = run_corpus(reports=args.reports, workers=args.workers)

    if failures:
        print(f"\n💥 Corpus failed: {', '.join(failures)}")
        return 1

    print("\n🎉 Corpus completed successfully!")
    if args.reports:
        print(f"\n📊 Reports written to {args.reports}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
