"""Command-line entry point for the verification suites.

Exit codes: 0 all checks passed, 1 at least one counterexample,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .suites import SUITE_ORDER, ConfigError, SuiteConfig, run_suite

_SUITE_HELP = {
    "axioms": "exact-structure closure axioms (identities, composition, pullback/pushout stability)",
    "prop1": "purity via dual-splits against the tensor oracle",
    "flat-equiv": "flatness equivalences and section extraction",
    "enough-pi": "double-dual pure-injective embedding",
    "complexes": "four-way flat-complex equivalence",
    "all": "run every suite",
}


def build_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--modulus",
        type=int,
        action="append",
        dest="moduli",
        metavar="N",
        help="base ring modulus; repeatable (default: 4 8 9 12)",
    )
    parent.add_argument("--max-order", type=int, default=64, metavar="B",
                        help="largest module order enumerated (default 64)")
    parent.add_argument("--max-kernel", type=int, default=16, metavar="B",
                        help="largest kernel order in conflation walks (default 16)")
    parent.add_argument("--span", type=int, default=4, metavar="K",
                        help="largest complex window span (default 4)")
    parent.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    parent.add_argument("--samples", type=int, default=200, metavar="C",
                        help="sample size per quantifier in sample mode")
    parent.add_argument("--seed", type=int, default=None,
                        help="seed for sample mode (required there)")
    parent.add_argument("--format", choices=("text", "json"), default="text")
    parent.add_argument("--out", default=None, metavar="PATH",
                        help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="modcat",
        description="Exhaustive desk-scale verification of the exact structure, "
        "purity, flatness, and complex-level properties of finite modules over Z/n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (*SUITE_ORDER, "all"):
        sub.add_parser(name, parents=[parent], help=_SUITE_HELP[name])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = SuiteConfig(
            moduli=tuple(args.moduli) if args.moduli else (4, 8, 9, 12),
            max_module_order=args.max_order,
            max_kernel_order=args.max_kernel,
            max_complex_span=args.span,
            mode=args.mode,
            sample_count=args.samples,
            seed=args.seed,
            output_format=args.format,
            output_path=args.out,
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    names = SUITE_ORDER if args.command == "all" else (args.command,)
    report = run_suite(config, names=names)
    rendered = report.to_json() if config.output_format == "json" else report.to_text()
    if config.output_path:
        with open(config.output_path, "w") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
