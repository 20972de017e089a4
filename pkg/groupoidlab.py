#!/usr/bin/env python3
"""
groupoidlab
Finite groupoids, Haar systems, morphisms and their C*-norms from JSON files
"""

import argparse
import logging
import sys

sys.path.insert(0, 'src')

from cli.commands import add_subcommands
from groupoid_core.errors import GroupoidLabError


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="groupoidlab", description=__doc__.strip().splitlines()[1])
    ap.add_argument("-v", "--verbose", action="store_true", help="Log suite progress")
    ap.add_argument("-q", "--quiet", action="store_true", help="Only log errors")
    sub = ap.add_subparsers(dest="cmd", required=True)
    add_subcommands(sub)

    args = ap.parse_args(argv)
    level = logging.INFO if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except GroupoidLabError as exc:
        print(f"error: {exc.describe()}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
