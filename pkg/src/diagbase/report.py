"""Deterministic JSON/CSV report serialization and the run manifest.

Reports are byte-stable across runs: keys are sorted and no timing data is
included.  Timings and invocation details live only in the manifest written
next to a report.
"""

from __future__ import annotations

import csv
import hashlib
import json
import sys
import time

from . import __version__

REPORT_SCHEMA = "diagbase-report/1"


def stable_json(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def write_json(doc, path):
    with open(path, "w") as fh:
        fh.write(stable_json(doc))


def digest(doc):
    return hashlib.sha256(stable_json(doc).encode()).hexdigest()


def suite_report(suite, checks):
    """A verification report: one row per paper claim checked."""
    return {
        "schema": REPORT_SCHEMA,
        "suite": suite,
        "checks": checks,
        "n_checks": len(checks),
        "n_failed": sum(1 for c in checks if not c["pass"]),
        "passed": all(c["pass"] for c in checks),
    }


CSV_COLUMNS = ("suite", "name", "computed", "predicted", "pass")


def checks_to_csv(report, path_or_file):
    """Flatten a suite report to CSV (columns documented in CSV_COLUMNS)."""
    close = False
    if isinstance(path_or_file, str):
        fh = open(path_or_file, "w", newline="")
        close = True
    else:
        fh = path_or_file
    try:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for c in report["checks"]:
            w.writerow(
                [
                    report["suite"],
                    c["name"],
                    json.dumps(c.get("computed"), sort_keys=True),
                    json.dumps(c.get("predicted"), sort_keys=True),
                    int(c["pass"]),
                ]
            )
    finally:
        if close:
            fh.close()


def checks_from_csv(path_or_file):
    """The bundled parser: read back rows written by checks_to_csv."""
    close = False
    if isinstance(path_or_file, str):
        fh = open(path_or_file, newline="")
        close = True
    else:
        fh = path_or_file
    try:
        rows = list(csv.reader(fh))
    finally:
        if close:
            fh.close()
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError("unrecognized report CSV header")
    out = []
    for row in rows[1:]:
        out.append(
            {
                "suite": row[0],
                "name": row[1],
                "computed": json.loads(row[2]),
                "predicted": json.loads(row[3]),
                "pass": bool(int(row[4])),
            }
        )
    return out


def rows_to_csv(rows, columns, path_or_file):
    close = False
    if isinstance(path_or_file, str):
        fh = open(path_or_file, "w", newline="")
        close = True
    else:
        fh = path_or_file
    try:
        w = csv.writer(fh)
        w.writerow(columns)
        for r in rows:
            w.writerow([r[c] for c in columns])
    finally:
        if close:
            fh.close()


class Manifest:
    """Reproducibility record for one CLI run; the only home for timings."""

    def __init__(self, argv=None):
        self.t0 = time.perf_counter()
        self.doc = {
            "schema": "diagbase-manifest/1",
            "version": __version__,
            "argv": list(argv if argv is not None else sys.argv[1:]),
            "config_digest": None,
            "outputs": [],
            "assertions": {"passed": 0, "failed": 0},
        }

    def set_config(self, config_doc):
        self.doc["config_digest"] = digest(config_doc)

    def add_output(self, path):
        self.doc["outputs"].append(path)

    def record(self, report):
        self.doc["assertions"]["passed"] += report["n_checks"] - report["n_failed"]
        self.doc["assertions"]["failed"] += report["n_failed"]

    def finish(self, path=None):
        self.doc["elapsed_ms"] = round((time.perf_counter() - self.t0) * 1000, 3)
        if path:
            write_json(self.doc, path)
        return self.doc
