"""
Report output: the JSON document and a human-readable summary table.
"""

import json


def to_json(report):
    """Serialize a report deterministically (sorted keys, fixed indentation)."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(report, path=None, stream=None):
    """
    Write the JSON report to a file, or to stream when no path is given.

    Args:
        report: Report dict from harness.run_suite
        path: Output file path (optional)
        stream: Text stream used when path is None
    """
    text = to_json(report)
    if path is None:
        stream.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _short(value, width):
    text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
    return text if len(text) <= width else text[:width - 3] + "..."


def print_report_table(report):
    """
    Print a formatted table of check results.

    Args:
        report: Report dict from harness.run_suite
    """
    checks = report["checks"]
    failed = [c for c in checks if c["status"] != "pass"]
    print("\n" + "=" * 100)
    print(f"VERIFICATION REPORT: suite={report['suite']}")
    print("=" * 100)
    print(f"{'Check':<50} {'Status':<8} {'Inputs':<40}")
    print("-" * 100)
    for check in checks:
        print(f"{_short(check['name'], 50):<50} {check['status']:<8} "
              f"{_short(check['inputs'], 40):<40}")
    print("=" * 100)
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        print(f"First failure: {failed[0]['name']}")
        print(f"      witness: {_short(failed[0]['witness'], 90)}")
    if report.get("elapsed_ms") is not None:
        print(f"Elapsed: {report['elapsed_ms']:.1f} ms")
    print("=" * 100 + "\n")
