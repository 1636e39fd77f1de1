"""The experiments module runs batteries of checks and collects their records in a Logger.

Suites
======

quick
-----

Every check that finishes in seconds: the classical tables on a small grid and the exceptional table, the listed
equivalences, every theorem on the smallest instance it applies to (split A_2, C_2 and the quasi-split BC_2 of
type 2A over F_2), the realization properties and the K~ constructions for split A_2 over Z/2, Z/3, Z/4 and
Z/2 x Z/3.

full
----

The quick suite plus the default table grid, larger rings (F_3, Z/4, Z/2 x Z/3), sampled runs of the BC
instances and K~ for the d = 2 instances over F_2.

Run Parameters
==============

Seed
----
B{Parameter:} C{seed}

Seed of every random choice (sampled words, sampled closed subsets, sampled 2-step module pairs). Two runs with
the same parameters write the same report.

Sampled
-------
B{Parameter:} C{sampled}

Number of random words per sampled check. None runs every check exhaustively when the point group is small
enough and falls back to DEFAULT_SAMPLES words otherwise.

Cap
---
B{Parameter:} C{cap}

Largest number of group elements any enumeration may produce. Enumerations above the cap yield inconclusive
records, never wrong verdicts.

Workers
-------
B{Parameter:} C{workers}

Number of worker processes. Tasks are independent; records are written in task order whatever the number of
workers.
"""

from concurrent.futures import ProcessPoolExecutor
from datetime import timedelta
import time

from . import groups, index, interpret, logger, realize, verify
from .errors import CapExceededError, ParameterError, SearchBudgetError, UnsupportedError
from .ring import parse_ring

QUICK_LIMITS = {"1A": 4, "2A": 4, "B": 3, "C": 3, "1D": 4, "2D": 4}

QUICK_THEOREMS = [
    ("long-norm", "1A(2,2,1)", "F2"),
    ("long-norm", "C(2,2,1)", "F2"),
    ("dbl-centzer", "1A(2,2,1)", "F2"),
    ("dbl-centzer", "C(2,2,1)", "F2"),
    ("cent-norm", "1A(2,2,1)", "F2"),
    ("urad-cent", "1A(2,2,1)", "F2"),
    ("urad-cent", "C(2,2,1)", "F2"),
    ("diophantine", "1A(2,2,1)", "F2"),
    ("diophantine", "C(2,2,1)", "F2"),
    ("cent-us", "2A(5,2,1)", "F2"),
    ("cent-us", "2A(4,2,1)", "F2"),
    ("gauss", "1A(2,2,1)", "F2"),
    ("gauss", "1A(1,1,1)", "Z4"),
    ("subgr-int", "1A(2,2,1)", "F2"),
    ("nondeg", "1A(2,2,1)", "F3"),
    ("nondeg", "2A(4,2,1)", "F2"),
    ("two-step", "2A(4,2,1)", "F2"),
    ("commutator", "C(2,2,1)", "F2"),
    ("weyl", "1A(2,2,1)", "F3"),
    ("weyl", "C(2,2,1)", "F2"),
]

QUICK_INTERPRETATIONS = [("1A(2,2,1)", "Z2"), ("1A(2,2,1)", "Z3"), ("1A(2,2,1)", "Z4"), ("1A(2,2,1)", "Z2xZ3")]

# SL_3(F_3), SL_3(Z/4), Sp_4(F_2), Sp_4(F_3) and SL_4(F_2), each small enough to enumerate
EXHAUSTIVE_INSTANCES = [("1A(2,2,1)", "F3"), ("1A(2,2,1)", "Z4"), ("C(2,2,1)", "F2"), ("C(2,2,1)", "F3"),
                        ("1A(3,3,1)", "F2")]

FULL_THEOREMS = QUICK_THEOREMS + [
    (theorem, index_name, ring_spec)
    for index_name, ring_spec in EXHAUSTIVE_INSTANCES
    for theorem in verify.GROUP_THEOREMS
    if (theorem, index_name, ring_spec) not in QUICK_THEOREMS
] + [
    ("dbl-centzer", "2A(4,2,1)", "F2"),
    ("diophantine", "2A(4,2,1)", "F2"),
    ("cent-us", "C(5,2,2)", "F3"),
    ("cent-us", "2A(5,2,1)", "Z2xZ3"),
    ("gauss", "C(2,2,1)", "F2"),
    ("subgr-int", "1A(2,2,1)", "Z4"),
    ("nondeg", "C(2,2,1)", "F3"),
    ("two-step", "2A(4,2,1)", "Z4"),
    ("two-step", "C(3,1,2)", "F3"),
    ("commutator", "2A(4,2,1)", "F2"),
    ("weyl", "2A(4,2,1)", "F2"),
]

FULL_SAMPLED = [
    ("long-norm", "C(2,2,1)", "F3"),
    ("dbl-centzer", "2A(4,2,1)", "F3"),
]

FULL_INTERPRETATIONS = QUICK_INTERPRETATIONS + [("1A(2,2,1)", "F5"), ("1A(5,2,2)", "F2"), ("C(4,2,2)", "F2")]

SUITES = ("quick", "full")


def check_run_parameters(seed=0, sampled=None, cap=groups.DEFAULT_CAP, workers=1):
    """
    Checks the run parameters before any work starts.
    @return: True if the parameters are valid
    """
    if not isinstance(seed, int) or seed < 0:
        raise ParameterError("seed must be a non-negative integer, got " + repr(seed))
    if sampled is not None and (not isinstance(sampled, int) or sampled < 1):
        raise ParameterError("sampled must be a positive number of words, got " + repr(sampled))
    if not isinstance(cap, int) or cap < 1:
        raise ParameterError("cap must be a positive integer, got " + repr(cap))
    if not isinstance(workers, int) or workers < 1:
        raise ParameterError("workers must be at least 1, got " + repr(workers))
    return True


def skipped_result(theorem, name, ring_spec, outcome, error):
    """A record for a check that did not run to a verdict."""
    return verify.VerificationResult(theorem=theorem, instance={"index": name, "ring": ring_spec},
                                     mode="exhaustive", outcome=outcome, detail=str(error))


def run_theorem(theorem, name, ring_spec, sampled=None, seed=0, cap=groups.DEFAULT_CAP, verbose=False):
    """
    Runs one theorem on one instance. Unsupported instances become skipped records; cap and budget overruns become
    inconclusive records.
    @return: VerificationResult
    """
    try:
        realization = realize.realize(index.parse_index(name), parse_ring(ring_spec))
        return verify.run_theorem(theorem, realization, sampled=sampled, seed=seed, cap=cap, verbose=verbose)
    except UnsupportedError as error:
        return skipped_result(theorem, name, ring_spec, "skipped", error)
    except (CapExceededError, SearchBudgetError) as error:
        return skipped_result(theorem, name, ring_spec, "inconclusive", error)


def run_interpretation(name, ring_spec, budget=interpret.DEFAULT_NODE_BUDGET, verbose=False):
    """
    Builds and certifies K~ for one instance.
    @return: interpretation record (dict)
    """
    try:
        realization = realize.realize(index.parse_index(name), parse_ring(ring_spec))
        kt = interpret.build_ktilde(realization, budget=budget, verbose=verbose)
    except UnsupportedError as error:
        return {"index": name, "ring": ring_spec, "families": None, "checks": {}, "isomorphic": False,
                "skipped": True, "detail": str(error)}
    except SearchBudgetError as error:
        return {"index": name, "ring": ring_spec, "families": None, "checks": {}, "isomorphic": False,
                "inconclusive": True, "detail": str(error)}
    return interpret.interpretation_record(kt)


def _run_task(task):
    kind, args = task[0], task[1:]
    if kind == "tables":
        return index.verify_tables(limits=args[0])
    if kind == "equivalences":
        return index.equivalence_list(n_max=args[0])
    if kind == "theorem":
        return [run_theorem(*args)]
    return [run_interpretation(*args)]


def suite_tasks(name, sampled=None, seed=0, cap=groups.DEFAULT_CAP):
    """
    The tasks of a suite, in report order.
    @param name: quick or full
    @return: list of task tuples
    """
    if name not in SUITES:
        raise ParameterError("unknown suite " + repr(name) + "; choose from " + ", ".join(SUITES))
    full = name == "full"
    tasks = [("tables", None if full else QUICK_LIMITS), ("equivalences", 6 if full else 5)]
    for theorem, index_name, ring_spec in (FULL_THEOREMS if full else QUICK_THEOREMS):
        tasks.append(("theorem", theorem, index_name, ring_spec, sampled, seed, cap))
    if full:
        for theorem, index_name, ring_spec in FULL_SAMPLED:
            tasks.append(("theorem", theorem, index_name, ring_spec, sampled or verify.DEFAULT_SAMPLES, seed, cap))
    for index_name, ring_spec in (FULL_INTERPRETATIONS if full else QUICK_INTERPRETATIONS):
        tasks.append(("interpretation", index_name, ring_spec))
    return tasks


def run_suite(name, results_path=None, sampled=None, seed=0, cap=groups.DEFAULT_CAP, workers=1, timings=False,
              verbose=True, log=None):
    """
    Runs a suite.

    @param name: quick or full
    @param results_path: path of the JSON report (None keeps the records in memory)
    @param sampled: number of random words for sampled checks
    @param seed: seed of every random choice
    @param cap: enumeration cap
    @param workers: number of worker processes
    @param timings: include wall times in the report
    @param verbose: if True, will print progress to screen
    @param log: Logger to collect into (a new one writing to results_path by default)
    @return: Logger holding the records
    """
    check_run_parameters(seed=seed, sampled=sampled, cap=cap, workers=workers)
    tasks = suite_tasks(name, sampled=sampled, seed=seed, cap=cap)
    owned = log is None
    if owned:
        log = logger.Logger(results_path, config={"suite": name, "sampled": sampled, "seed": seed, "cap": cap},
                            timings=timings)
    start_time = time.monotonic()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_task, tasks))
    else:
        batches = []
        for position, task in enumerate(tasks):
            batches.append(_run_task(task))
            if verbose:
                print("Task " + str(position + 1) + "/" + str(len(tasks)) + ": " + task[0] + " "
                      + " ".join(str(a) for a in task[1:3] if a is not None))
                print("Time elapsed: %s seconds " % timedelta(seconds=time.monotonic() - start_time))
    for batch in batches:
        log.log_all(batch)
    if owned:
        log.close()
    return log
