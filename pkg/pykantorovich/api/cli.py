import argparse
import os
import sys

from pykantorovich.api import experiment
from pykantorovich.api.experiment import ExperimentConfig
from pykantorovich.engine.errors import KantorovichError
from pykantorovich.engine.report_summarizer import ReportSummarizer
from pykantorovich.utils.report_utils import write_report

COMMANDS = {
    "eval": experiment.run_eval,
    "moments": experiment.run_moment_audit,
    "certify": experiment.run_certificates,
    "converge": experiment.run_convergence,
    "weighted": experiment.run_weighted
}

def build_parser():
    parser = argparse.ArgumentParser(prog="pykantorovich",
        description="Numerical lab for Kantorovich-type Jakimovski-Leviatan operators")
    subparsers = parser.add_subparsers(dest="command")
    for command in sorted(COMMANDS):
        sub = subparsers.add_parser(command)
        sub.add_argument("--config", help="JSON experiment config (defaults are used when omitted)")
        sub.add_argument("--out", help="output directory (overrides the config's outputs)")
        sub.add_argument("--threads", type=int, default=1, help="worker threads for the (f, n, x) cells")
        sub.add_argument("--seed", type=int, default=0, help="reserved, the core paths draw no random numbers")
        sub.add_argument("--strict", action="store_true", help="exit with 2 when a certificate fails")
        sub.add_argument("--verbose", type=int, choices=[0, 1, 2], default=1)
        if command == "certify":
            sub.add_argument("--theorems", help="comma separated subset of T2,T3,T4,T5")
    return parser

def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return 1
    try:
        return _run(args)
    except (KantorovichError, ValueError, IOError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 1

def _run(args):
    config = ExperimentConfig.from_file(args.config) if args.config else ExperimentConfig.from_dict({})
    if args.threads < 1:
        raise ValueError("--threads must be >= 1 (got %d)" % args.threads)
    kwargs = { "threads": args.threads, "verbose": args.verbose }
    if args.command == "certify" and args.theorems:
        kwargs["theorems"] = [t.strip() for t in args.theorems.split(",") if t.strip()]
    report = COMMANDS[args.command](config, **kwargs)
    report.metadata["seed"] = args.seed
    out_dir = args.out if args.out else config.outputs
    paths = write_report(out_dir, report.command, report.columns, report.rows, report.metadata)
    summarizer = ReportSummarizer(args.verbose)
    summarizer.report(summarizer.summarize_checks(report.checks))
    summarizer.report("Wrote %s" % ", ".join(os.path.normpath(p) for p in paths))
    return report.exit_code(args.strict)

if __name__ == "__main__":
    sys.exit(main())
