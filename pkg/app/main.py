"""
Main application entry point for the sutured Floer toolkit
"""
import argparse
import logging
import sys
from typing import List, Optional

from app.cli import texts
from app.cli.commands import COMMANDS, Options, run
from app.cli.parser import load_document
from app.cli.reports import MACHINE, TEXT
from app.config.settings import get_settings
from app.core.errors import SFHError
from app.core.floer.differential import CountMode
from app.core.floer.variants import Variant, variant_named

logger = logging.getLogger(__name__)


def configure_logging() -> None:
    """Log to stderr so reports on stdout stay byte-identical"""
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def _variant_arg(text: str) -> Variant:
    try:
        return variant_named(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfh",
        description=texts.USAGE_DESCRIPTION,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("file", nargs="?", help="input document (not needed for selftest)")
    parser.add_argument("--mode", choices=[m.value for m in CountMode], default=CountMode.AUTO.value,
                        help="differential count: nice, brute, both (oracle check) or auto")
    parser.add_argument("--format", dest="fmt", choices=[TEXT, MACHINE], default=TEXT)
    parser.add_argument("--bound", type=int, help="brute-force multiplicity bound")
    parser.add_argument("--seed", type=int, default=0, help="first selftest fuzz seed")
    parser.add_argument("--count", type=int, help="number of selftest fuzz instances")
    parser.add_argument("--variant", type=_variant_arg, default=Variant.SAME, metavar="VARIANT",
                        help="orientation variant for homology: same, flip-suture, flip-manifold, flip-both "
                             "(or --variant=-M,G style values)")
    parser.add_argument("--arcs", nargs="+", default=[], help="arc names (right-veering, slide MOVING OVER)")
    parser.add_argument("--k", type=int, default=2, help="glue-check: one more than the curves removed")
    parser.add_argument("--pinned", nargs="+", default=[], help="glue-check: pinned point names")
    parser.add_argument("--along", help="stabilize: arc literal 'P.i@k ... Q.j@k'")
    parser.add_argument("--p1", help="bypass: first endpoint P.i@k")
    parser.add_argument("--p2", help="bypass: second endpoint P.i@k")
    parser.add_argument("--c-plus", dest="c_plus", help="bypass: arc literal from p1")
    parser.add_argument("--c-minus", dest="c_minus", help="bypass: arc literal ending at p2")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command and print its report

    Returns:
        Exit code: 0 success, 1 input error, 2 property failure, 3 internal error
    """
    args = build_parser().parse_args(argv)
    configure_logging()
    settings = get_settings()
    opts = Options(
        mode=CountMode(args.mode),
        fmt=args.fmt,
        bound=args.bound,
        seed=args.seed,
        count=args.count,
        variant=args.variant,
        arcs=args.arcs,
        k=args.k,
        pinned=args.pinned,
        along=args.along,
        p1=args.p1,
        p2=args.p2,
        c_plus=args.c_plus,
        c_minus=args.c_minus,
    )
    try:
        doc = load_document(args.file) if args.file else None
        report = run(args.command, doc, opts)
    except SFHError as e:
        where = f"{args.file}: " if args.file else ""
        logger.error(f"{args.command} failed: {e}")
        print(f"{where}{e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"{args.command} crashed")
        print(texts.CRASH.format(error=e), file=sys.stderr)
        return 3

    sys.stdout.write(report.render(opts.fmt, settings.output_width))
    if getattr(report, "passed", True) is False:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
