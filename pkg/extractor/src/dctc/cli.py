"""Command line wrapper: extract a container from a JPEG, or verify one.

Exit code 0 on success, 1 when the input is rejected or the container does
not match, 2 on I/O failures.
"""

from __future__ import annotations

import argparse
import sys

from .extract import ExtractorError, extract, verify
from .jpegdec import JpegError


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dctc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("extract", help="decode a baseline JPEG into a container")
    p.add_argument("jpeg", help="input JPEG file")
    p.add_argument("container", help="output container path")
    p = sub.add_parser("verify", help="check a container against its JPEG")
    p.add_argument("jpeg", help="input JPEG file")
    p.add_argument("container", help="container to verify")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    try:
        if args.command == "extract":
            record = extract(args.jpeg, args.container)
            print(f"wrote {args.container} from {record.describe()}")
        else:
            record = verify(args.jpeg, args.container)
            print(f"verified {args.container} against {record.describe()}")
        return 0
    except (JpegError, ExtractorError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
