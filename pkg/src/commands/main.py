#!/usr/bin/env python3
"""
mildp CLI - class groups, linking numbers and mildness certificates for
pro-p Galois groups of imaginary quadratic fields.
"""

import argparse
import sys
from typing import List, Optional

from src.commands.config import MildpConfig
from src.commands.handlers import certify, classgroup, linking, prop34, search, version
from src.commands.utils.utils import EXIT_NEGATIVE, CLIResult, Colors, Output
from src.mildp.core.exceptions import MildpError

EXIT_ERROR = 2
EXIT_INTERRUPTED = 130


def create_parser() -> argparse.ArgumentParser:
    """Create the main argument parser."""
    parser = argparse.ArgumentParser(
        prog="mildp",
        description="mildp - mildness certificates for G_S over imaginary quadratic fields",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  mildp classgroup -d -23 -p 3
  mildp linking -d -23 -p 3 --places 13:4,211:71,67,31:15
  mildp certify -d -23 -p 3 --places 13:4,211:71,67,31:15 --ordering 1,211:71,67,31:15
  mildp prop34 -d -23 -p 3 --places v0=13:4,v1=211:71,v2=67,v3=31:15
  mildp search -d -23 -p 3 --bound 250 --max-results 3

Exit codes: 0 success or certified, 1 not certified, 2 input or precondition error.
""",
    )

    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {MildpConfig.VERSION}",
    )

    parser.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Enable verbose output",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    create_classgroup_parser(subparsers)
    create_linking_parser(subparsers)
    create_certify_parser(subparsers)
    create_prop34_parser(subparsers)
    create_search_parser(subparsers)
    create_version_parser(subparsers)

    return parser


def _add_field_arguments(parser: argparse.ArgumentParser, places: bool = True):
    parser.add_argument(
        "-d",
        type=int,
        required=True,
        help="Squarefree negative radicand d of k = Q(sqrt(d))",
    )
    parser.add_argument(
        "-p",
        type=int,
        required=True,
        help="Odd prime p",
    )
    if places:
        parser.add_argument(
            "--places",
            required=True,
            help="Comma separated places: ell for inert primes, ell:r with r^2 = d mod ell otherwise",
        )
    parser.add_argument(
        "--json",
        action="store_true",
        help="Print a machine-readable document",
    )
    parser.add_argument(
        "--verbose", "-v",
        action="store_true",
        default=argparse.SUPPRESS,
        help="Enable verbose output",
    )


def create_classgroup_parser(subparsers) -> argparse.ArgumentParser:
    """Create parser for 'classgroup' command."""
    parser = subparsers.add_parser(
        "classgroup",
        help="Class group, p-rank and the a1-prime",
        description="Enumerate Cl(k) by reduced forms and choose the prime a1 generating Cl/p",
    )
    _add_field_arguments(parser, places=False)
    parser.set_defaults(handler=classgroup.handle_classgroup)
    return parser


def create_linking_parser(subparsers) -> argparse.ArgumentParser:
    """Create parser for 'linking' command."""
    parser = subparsers.add_parser(
        "linking",
        help="Linking numbers and the Koch presentation of G_S",
        description="Compute z(1, v), l(w, v), l(w, 1) and the corrected table for S",
    )
    _add_field_arguments(parser)
    parser.set_defaults(handler=linking.handle_linking)
    return parser


def create_certify_parser(subparsers) -> argparse.ArgumentParser:
    """Create parser for 'certify' command."""
    parser = subparsers.add_parser(
        "certify",
        help="Certify that G_S is mild",
        description="Search circular orderings of S and certify mildness",
    )
    _add_field_arguments(parser)
    parser.add_argument(
        "--ordering",
        help="Replay one circular ordering, e.g. 1,211:71,67,31:15",
    )
    parser.add_argument(
        "--lenient",
        action="store_true",
        help="Report odd |S| or a set without singular place as not certified instead of failing",
    )
    parser.set_defaults(handler=certify.handle_certify)
    return parser


def create_prop34_parser(subparsers) -> argparse.ArgumentParser:
    """Create parser for 'prop34' command."""
    parser = subparsers.add_parser(
        "prop34",
        help="Check the five conditions of the four-place criterion",
        description="Places are taken as v0, v1, v2, v3 in order, or by role tags v0=...",
    )
    _add_field_arguments(parser)
    parser.set_defaults(handler=prop34.handle_prop34)
    return parser


def create_search_parser(subparsers) -> argparse.ArgumentParser:
    """Create parser for 'search' command."""
    parser = subparsers.add_parser(
        "search",
        help="Search for sets S with G_S certified mild",
        description="Scan places above primes up to a bound, in deterministic order",
    )
    _add_field_arguments(parser, places=False)
    parser.add_argument(
        "--bound",
        type=int,
        required=True,
        help="Largest rational prime under a candidate place",
    )
    parser.add_argument(
        "--mode",
        choices=["prop34", "theorem32"],
        default="prop34",
        help="Four-place criterion or full ordering search over k-subsets",
    )
    parser.add_argument(
        "--max-results",
        type=int,
        help="Stop after this many hits and print a checkpoint",
    )
    parser.add_argument(
        "--workers",
        type=int,
        help="Number of workers",
    )
    parser.add_argument(
        "--executor",
        choices=["thread", "process"],
        help="Worker pool kind (default from config search.executor)",
    )
    parser.add_argument(
        "--checkpoint",
        help="Resume strictly after this token, e.g. 13:4/211:71/67:i/31:15",
    )
    parser.add_argument(
        "--cardinality",
        type=int,
        help="|S| in theorem32 mode",
    )
    parser.add_argument(
        "--any-order",
        action="store_true",
        help="Certify the sorted set instead of the role order",
    )
    parser.set_defaults(handler=search.handle_search)
    return parser


def create_version_parser(subparsers) -> argparse.ArgumentParser:
    """Create parser for 'version' command."""
    parser = subparsers.add_parser(
        "version",
        help="Show version information",
    )
    parser.add_argument(
        "--verbose", "-v",
        action="store_true",
        default=argparse.SUPPRESS,
        help="Show detailed version information",
    )
    parser.set_defaults(handler=version.handle_version)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run the handler and return the exit code."""
    Colors.disable_if_not_tty()

    parser = create_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 0

    handler = getattr(args, "handler", None)
    if not handler:
        parser.print_help()
        return 1

    try:
        result: CLIResult = handler(args)

        if result.message:
            if result.success:
                Output.success(result.message)
            elif result.exit_code == EXIT_NEGATIVE:
                Output.warning(result.message)
            else:
                Output.error(result.message)

        return result.exit_code

    except KeyboardInterrupt:
        Output.warning("\nInterrupted by user")
        return EXIT_INTERRUPTED
    except MildpError as e:
        Output.error(str(e))
        return EXIT_ERROR
    except Exception as e:
        Output.error(f"Unexpected error: {e}")
        if args.verbose:
            import traceback
            traceback.print_exc()
        return EXIT_ERROR


def main():
    """Main entry point for the CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
