"""Write every verification table to a directory, with wall times.

    python3 scripts/regenerate_tables.py [--out results] [--jobs N] [suite ...]

Each suite goes to ``<out>/<suite>.md``; a summary of status and seconds
per suite is printed to stdout.
"""

import argparse
import sys
import time
from pathlib import Path

from fatpoints.cli import _render
from fatpoints.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("suites", nargs="*", default=SUITES)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    failed = False
    for name in args.suites:
        start = time.perf_counter()
        res = run_suite(name, jobs=args.jobs)
        elapsed = time.perf_counter() - start
        (args.out / f"{name}.md").write_text(f"### {name}\n\n" + _render(res.header, res.rows, "md"))
        status = "ok" if res.ok else "FAIL"
        failed = failed or not res.ok
        print(f"{name}: {status} {elapsed:.1f}s")
        for err in res.errors:
            print(f"  error: {err}")
        sys.stdout.flush()
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
