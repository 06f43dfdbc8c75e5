"""Run one or more canned presets into an output directory.

Equivalent to calling the CLI once per preset; kept as a script so a full
study can be kicked off and left alone. Example:

    python3 scripts/run_presets.py --out results central_activation dist_range
"""

import argparse
import sys

from aoisim.cli import main as cli_main
from aoisim.presets import preset_names


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("presets", nargs="*", default=[],
                        help="preset names (default: all)")
    parser.add_argument("--out", default="results", help="output directory")
    parser.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    parser.add_argument("--slots", type=int, help="slot-count override")
    parser.add_argument("--seed", type=int, help="base seed override")
    args = parser.parse_args()

    names = args.presets or preset_names()
    unknown = [n for n in names if n not in preset_names()]
    if unknown:
        print(f"unknown presets: {' '.join(unknown)}", file=sys.stderr)
        print("available: " + " ".join(preset_names()), file=sys.stderr)
        return 1
    for name in names:
        argv = ["preset", name, "--out", args.out, "--format", args.format]
        if args.slots is not None:
            argv += ["--slots", str(args.slots)]
        if args.seed is not None:
            argv += ["--seed", str(args.seed)]
        code = cli_main(argv)
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
