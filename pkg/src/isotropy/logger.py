"""This module implements the Logger class, which collects the records of one run and writes them to disk.

RESULTS FILES
=============

At construction, an output path is provided to the Logger object. On `close()` it writes:

    1. The JSON report at that path: the run configuration and every record, sorted by task order.
    2. A file with the same stem and the suffix `.csv`, one summary row per record.

JSON is written with sorted keys and fixed indentation, so identical configurations give byte-identical reports.
Wall times are only part of verification records when the run asks for timings.

RECORD KINDS
============

    verification     VerificationResult of a theorem or property check
    table            recomputation of one classical or exceptional table row
    equivalence      one tested pair of Tits indices
    interpretation   a K~ construction and its certification
    index            the folded description of one Tits index
    atlas            the classification of one closed subset
"""

import csv
import json
import os

import numpy as np

from .errors import WiringError
from .verify import VerificationResult

KINDS = ("verification", "table", "equivalence", "interpretation", "index", "atlas")


def record_kind(record):
    """
    Infers the kind of a record.
    @param record: VerificationResult or report dict
    @return: one of KINDS
    """
    if isinstance(record, VerificationResult):
        return "verification"
    if "mismatches" in record:
        return "table"
    if "pair" in record:
        return "equivalence"
    if "families" in record:
        return "interpretation"
    if "bitmask" in record:
        return "atlas"
    if "relative" in record:
        return "index"
    raise WiringError("cannot infer the kind of record with keys " + str(sorted(record)))


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)
    return str(value)


def outcome_of(kind, record):
    """pass / fail / inconclusive / skipped for any record kind; info for an equivalence asked without expectation"""
    if kind == "verification":
        return record["outcome"]
    if kind == "table":
        return "pass" if record["pass"] else "fail"
    if kind == "equivalence":
        if record.get("inconclusive"):
            return "inconclusive"
        if record.get("expected") is None:
            return "info"
        return "pass" if record["pass"] else "fail"
    if kind == "interpretation":
        if record.get("skipped"):
            return "skipped"
        if record.get("inconclusive"):
            return "inconclusive"
        return "pass" if record["isomorphic"] else "fail"
    return "pass"


def summary_row(task, kind, record):
    """[id, kind, instance, mode, outcome, counts] for the summary table"""
    if kind == "verification":
        instance = record["theorem"] + " " + " ".join(str(v) for _, v in sorted(record["instance"].items()))
        return [task, kind, instance, record["mode"], outcome_of(kind, record),
                json.dumps(record["counts"], sort_keys=True, default=_json_default)]
    if kind == "equivalence":
        instance = " ~ ".join(record["pair"]) + " (" + record["relation"] + ")"
        return [task, kind, instance, "search", outcome_of(kind, record),
                record["result"]["status"] + " nodes=" + str(record["result"]["nodes"])]
    if kind == "interpretation":
        return [task, kind, record["index"] + " " + record["ring"], "exhaustive", outcome_of(kind, record),
                "families=" + str(record["families"])]
    if kind == "table":
        return [task, kind, record["index"], "exhaustive", outcome_of(kind, record),
                "mismatches=" + ",".join(record["mismatches"])]
    if kind == "atlas":
        flags = [k for k in ("unipotent", "parabolic", "saturated", "subsystem") if record.get(k)]
        return [task, kind, "bitmask " + str(record["bitmask"]), "exhaustive", "pass", ",".join(flags)]
    return [task, kind, record.get("index", ""), "exhaustive", "pass", str(record.get("relative", ""))]


class Logger:
    """
    Logger objects collect the records of a run and write the JSON report and its summary.
    """

    def __init__(self, output_path=None, config=None, timings=False):
        """
        Instantiates a Logger object.
        @param output_path: path of the JSON report, or None to keep records in memory only
        @param config: run configuration recorded in the report header (dict)
        @param timings: include wall times of verification records
        """
        self.output_path = output_path
        self.config = dict(config or {})
        self.timings = timings
        self.records = []
        self._next_task = 0
        if output_path is not None:
            directory = os.path.dirname(os.path.abspath(output_path))
            if not os.path.exists(directory):
                os.makedirs(directory)

    def log(self, record, task=None):
        """
        Adds one record.
        @param record: VerificationResult or report dict
        @param task: task order (defaults to the order of calls)
        @return: the JSON-ready record
        """
        kind = record_kind(record)
        if task is None:
            task = self._next_task
        self._next_task = max(self._next_task, task + 1)
        if kind == "verification":
            data = record.as_dict(timings=self.timings)
        else:
            data = dict(record)
        self.records.append((task, kind, data))
        return data

    def log_all(self, records):
        for record in records:
            self.log(record)

    def sorted_records(self):
        return sorted(self.records, key=lambda item: item[0])

    def outcomes(self):
        return [outcome_of(kind, data) for _, kind, data in self.sorted_records()]

    def report(self):
        return {"config": self.config,
                "records": [{"id": task, "kind": kind, "record": data}
                            for task, kind, data in self.sorted_records()]}

    def dumps(self):
        return json.dumps(self.report(), sort_keys=True, indent=2, default=_json_default) + "\n"

    def summary(self):
        """One line per record: id, kind, instance, mode, outcome, counts."""
        lines = []
        for task, kind, data in self.sorted_records():
            row = summary_row(task, kind, data)
            lines.append(str(row[0]).rjust(4) + "  " + row[1].ljust(14) + " " + row[2].ljust(40) + " "
                         + row[3].ljust(18) + " " + row[4].ljust(12) + " " + row[5])
        return "\n".join(lines)

    def close(self):
        """Writes the JSON report and the summary CSV when an output path was given."""
        if self.output_path is None:
            return
        with open(self.output_path, "w") as handle:
            handle.write(self.dumps())
        summary_path = os.path.splitext(self.output_path)[0] + ".csv"
        with open(summary_path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["id", "kind", "instance", "mode", "outcome", "counts"])
            for task, kind, data in self.sorted_records():
                writer.writerow(summary_row(task, kind, data))
