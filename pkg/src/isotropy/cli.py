"""
Command-line front end.

    isotropy index [NAME ...] [--verify-all]
    isotropy equiv NAME1 NAME2 [--strict] [--expect equiv|iso|none] [--budget B]
    isotropy verify THEOREM --index NAME --ring SPEC [--sampled N] [--seed S] [--cap M] [--root C] [--grading G]
    isotropy interpret --index NAME --ring SPEC [--budget B]
    isotropy subsets TYPE RANK [--count C] [--seed S]
    isotropy suite quick|full [--workers W]

Every command accepts --out PATH (JSON report), --verbose and --timings. Exit codes: 0 pass, 1 fail, 2 usage,
3 inconclusive only.
"""

import argparse
from dataclasses import asdict, dataclass, field
import sys

from . import experiments, groups, index, interpret, realize, roots, subsets, verify
from .errors import (CapExceededError, ConstructionError, ParameterError, PreconditionError, SearchBudgetError,
                     UnsupportedError)
from .logger import Logger
from .ring import parse_ring
from .roots import Root

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

COMMANDS = ("index", "equiv", "verify", "interpret", "subsets", "suite")


@dataclass
class RunConfig:
    command: str
    names: list = field(default_factory=list)
    rings: list = field(default_factory=list)
    theorem: str = None
    suite: str = None
    root: tuple = None
    grading: tuple = None
    type_label: str = None
    rank: int = None
    count: int = 200
    strict: bool = False
    expect: str = None
    verify_all: bool = False
    sampled: int = None
    seed: int = 0
    cap: int = groups.DEFAULT_CAP
    budget: int = index.DEFAULT_BUDGET
    out: str = None
    workers: int = 1
    verbose: bool = False
    timings: bool = False

    def header(self):
        """The configuration as written into the report (without the output path)."""
        out = asdict(self)
        out.pop("out")
        return out


def _int_tuple(text):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got " + repr(text))


def build_parser():
    parser = argparse.ArgumentParser(prog="isotropy",
                                     description="Root systems, Tits indices and matrix models of isotropic "
                                                 "reductive groups over finite rings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="path of the JSON report")
    common.add_argument("--verbose", action="store_true", help="print progress")
    common.add_argument("--timings", action="store_true", help="include wall times in the report")
    common.add_argument("--seed", type=int, default=0, help="seed of every random choice")
    common.add_argument("--cap", type=int, default=groups.DEFAULT_CAP, help="enumeration cap")
    commands = parser.add_subparsers(dest="command")

    p = commands.add_parser("index", parents=[common], help="fold Tits indices")
    p.add_argument("names", nargs="*", help="index names such as 2A(4,2,1) or E_{8,2}^{66}")
    p.add_argument("--verify-all", action="store_true", help="recompute the classical and exceptional tables")
    p.add_argument("--workers", type=int, default=1)

    p = commands.add_parser("equiv", parents=[common], help="test equivalence of two indices")
    p.add_argument("names", nargs=2)
    p.add_argument("--strict", action="store_true", help="also conjugate the *-actions")
    p.add_argument("--expect", choices=("equiv", "iso", "none"), default=None,
                   help="expected relation; without it the answer is only reported")
    p.add_argument("--budget", type=int, default=index.DEFAULT_BUDGET, help="search node budget")

    p = commands.add_parser("verify", parents=[common], help="check a theorem on a realization")
    p.add_argument("theorem", choices=sorted(verify.THEOREMS))
    p.add_argument("--index", dest="index_name", required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--sampled", type=int, default=None, help="number of random words")
    p.add_argument("--root", type=_int_tuple, default=None, help="relative root coordinates, e.g. 1,1")
    p.add_argument("--grading", type=_int_tuple, default=None, help="grading values on the relative basis")

    p = commands.add_parser("interpret", parents=[common], help="build K~ and certify it")
    p.add_argument("--index", dest="index_name", required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--budget", type=int, default=interpret.DEFAULT_NODE_BUDGET, help="search node budget")

    p = commands.add_parser("subsets", parents=[common], help="closed-subset atlas of a root system")
    p.add_argument("type_label")
    p.add_argument("rank", type=int)
    p.add_argument("--count", type=int, default=200, help="sample size for large systems")

    p = commands.add_parser("suite", parents=[common], help="run a battery of checks")
    p.add_argument("suite", choices=experiments.SUITES)
    p.add_argument("--sampled", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    return parser


def make_config(args):
    config = RunConfig(command=args.command, seed=args.seed, cap=args.cap, out=args.out, verbose=args.verbose,
                       timings=args.timings)
    if args.command in ("index", "equiv"):
        config.names = list(args.names)
    if args.command in ("verify", "interpret"):
        config.names = [args.index_name]
        config.rings = [args.ring]
    if args.command == "index":
        config.verify_all = args.verify_all
        config.workers = args.workers
    elif args.command == "equiv":
        config.strict = args.strict
        config.expect = args.expect
        config.budget = args.budget
    elif args.command == "verify":
        config.theorem = args.theorem
        config.sampled = args.sampled
        config.root = args.root
        config.grading = args.grading
    elif args.command == "interpret":
        config.budget = args.budget
    elif args.command == "subsets":
        config.type_label = args.type_label
        config.rank = args.rank
        config.count = args.count
    elif args.command == "suite":
        config.suite = args.suite
        config.sampled = args.sampled
        config.workers = args.workers
    return config


def check_run_parameters(config):
    """
    Validates a RunConfig before any work starts.
    @return: True if the configuration is valid
    """
    if config.command not in COMMANDS:
        raise ParameterError("a command is required: " + ", ".join(COMMANDS))
    experiments.check_run_parameters(seed=config.seed, sampled=config.sampled, cap=config.cap,
                                     workers=config.workers)
    if config.budget < 1:
        raise ParameterError("budget must be positive, got " + str(config.budget))
    if config.command == "index" and not config.names and not config.verify_all:
        raise ParameterError("index needs at least one name or --verify-all")
    if config.command == "subsets" and config.count < 1:
        raise ParameterError("count must be positive, got " + str(config.count))
    return True


# Commands

def cmd_index(config, log):
    for name in config.names:
        log.log(index.describe(index.parse_index(name)))
    if config.verify_all:
        log.log_all(index.verify_tables(workers=config.workers))


def cmd_equiv(config, log):
    first, second = config.names
    strict = config.strict or config.expect == "iso"
    result = index.equivalent(index.parse_index(first), index.parse_index(second), budget=config.budget,
                              strict=strict)
    inconclusive = result.status == "inconclusive"
    expected = None if config.expect is None else config.expect != "none"
    passed = not inconclusive and (expected is None or result.equivalent == expected)
    log.log({"pair": [first, second], "relation": "iso" if strict else "equiv", "expected": expected,
             "result": result.as_dict(), "pass": passed, "inconclusive": inconclusive})


def _realization(config):
    return realize.realize(index.parse_index(config.names[0]), parse_ring(config.rings[0]))


def cmd_verify(config, log):
    realization = _realization(config)
    theorem = config.theorem
    try:
        if theorem in ("long-norm", "dbl-centzer") and config.root is not None:
            ctx = verify.Context(realization, sampled=config.sampled, seed=config.seed, cap=config.cap,
                                 verbose=config.verbose)
            result = verify.THEOREMS[theorem](realization, alpha=Root(config.root), ctx=ctx)
        elif theorem == "urad-cent" and config.grading is not None:
            ctx = verify.Context(realization, sampled=config.sampled, seed=config.seed, cap=config.cap,
                                 verbose=config.verbose)
            result = verify.check_urad_cent(realization, grading=verify.Grading(config.grading), ctx=ctx)
        else:
            result = verify.run_theorem(theorem, realization, sampled=config.sampled, seed=config.seed,
                                        cap=config.cap, verbose=config.verbose)
    except (CapExceededError, SearchBudgetError) as error:
        result = experiments.skipped_result(theorem, config.names[0], config.rings[0], "inconclusive", error)
    log.log(result)


def cmd_interpret(config, log):
    realization = _realization(config)
    try:
        kt = interpret.build_ktilde(realization, budget=config.budget, verbose=config.verbose)
    except SearchBudgetError as error:
        log.log({"index": config.names[0], "ring": config.rings[0], "families": None, "checks": {},
                 "isomorphic": False, "inconclusive": True, "detail": str(error)})
        return
    record = interpret.interpretation_record(kt)
    log.log(record)
    if config.verbose:
        labels = record["labels"]
        print("  +  " + " ".join(labels))
        for i, row in enumerate(record["add"]):
            print(labels[i].rjust(3) + "  " + " ".join("?" if v is None else labels[v] for v in row))
        print("  *  " + " ".join(labels))
        for i, row in enumerate(record["mul"]):
            print(labels[i].rjust(3) + "  " + " ".join("?" if v is None else labels[v] for v in row))


def cmd_subsets(config, log):
    system = roots.build(config.type_label, config.rank)
    log.log_all(subsets.atlas(system, count=config.count, seed=config.seed))


def cmd_suite(config, log):
    experiments.run_suite(config.suite, sampled=config.sampled, seed=config.seed, cap=config.cap,
                          workers=config.workers, timings=config.timings, verbose=config.verbose, log=log)


HANDLERS = {"index": cmd_index, "equiv": cmd_equiv, "verify": cmd_verify, "interpret": cmd_interpret,
            "subsets": cmd_subsets, "suite": cmd_suite}


def exit_code(outcomes):
    if "fail" in outcomes:
        return EXIT_FAIL
    if "inconclusive" in outcomes:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def run(config):
    """
    Runs a validated configuration.
    @return: (Logger, exit code)
    """
    log = Logger(config.out, config=config.header(), timings=config.timings)
    HANDLERS[config.command](config, log)
    log.close()
    return log, exit_code(log.outcomes())


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return EXIT_USAGE if exit_request.code else EXIT_PASS
    if args.command is None:
        parser.print_usage()
        return EXIT_USAGE
    try:
        config = make_config(args)
        check_run_parameters(config)
        log, code = run(config)
    except (ParameterError, UnsupportedError, ConstructionError, PreconditionError) as error:
        print("error: " + str(error), file=sys.stderr)
        return EXIT_USAGE
    print(log.summary())
    return code
