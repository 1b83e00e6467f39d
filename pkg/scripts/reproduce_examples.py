"""Run the CLI pipeline on the three worked fixtures and print the reports.

    python3 scripts/reproduce_examples.py [--format json]
"""
import argparse
import pathlib
import sys
import time

from dastacked.cli import RunConfig, render, run

FIX = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

JOBS = [
    ("classify", "stacked_4_2_cycle", {"hom_cutoff": 10}),
    ("resolve", "stacked_4_2_cycle", {"hom_cutoff": 10}),
    ("obstruct", "stacked_4_2_cycle", {"hom_cutoff": 6}),
    ("classify", "monomial_line_11", {}),
    ("ext", "monomial_line_11", {}),
    ("koszul", "monomial_line_11", {}),
    ("obstruct", "monomial_line_11", {"hom_cutoff": 8}),
    ("classify", "stacked_6_2", {"hom_cutoff": 8}),
    ("yoneda", "stacked_6_2", {"product": (2, 6, 4, 1)}),
    ("verify-ext", "stacked_6_2", {"hom_cutoff": 9, "candidate": str(FIX / "stacked_6_2_ext_candidate.alg")}),
    ("koszul", "stacked_6_2", {"hom_cutoff": 9, "candidate": str(FIX / "stacked_6_2_ext_candidate.alg")}),
    ("gb", "stacked_6_2_ext_candidate", {"gb_action": "verify"}),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("text", "json"), default="text")
    args = ap.parse_args(argv)
    worst = 0
    for cmd, name, kw in JOBS:
        t = time.time()
        code, rep = run(RunConfig(cmd, str(FIX / f"{name}.alg"), format=args.format, **kw))
        sys.stdout.write(f"### {cmd} {name}  (exit {code}, {time.time() - t:.2f}s)\n")
        sys.stdout.write(render(rep, args.format) + "\n")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
