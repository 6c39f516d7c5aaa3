"""Command line entry point: ``esplab run|replay|check``."""
import argparse
import sys

import yaml

from .checks import run_checks
from .config import load_config
from .exceptions import ConfigError, NumericError
from .experiments import replay, run_experiment

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


def _parse_overrides(extra):
    """Turn ``--grid.spacing 0.01 --M 30`` into ``{"grid.spacing": 0.01, "M": 30}``."""
    overrides, errors = {}, []
    i = 0
    while i < len(extra):
        tok = extra[i]
        if not tok.startswith("--") or len(tok) < 3:
            errors.append(f"unexpected argument {tok!r}; overrides take the form --key value")
            i += 1
            continue
        key = tok[2:]
        if "=" in key:
            key, value = key.split("=", 1)
            i += 1
        elif i + 1 < len(extra):
            value = extra[i + 1]
            i += 2
        else:
            errors.append(f"override {tok} is missing a value")
            break
        overrides[key] = yaml.safe_load(value)
    if errors:
        raise ConfigError(errors)
    return overrides


def build_parser():
    parser = argparse.ArgumentParser(prog="esplab", description="Echo-state-property and edge-of-criticality experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run an experiment from a YAML config; --key value overrides config keys")
    run.add_argument("config")
    rep = sub.add_parser("replay", help="re-run a manifest and compare CSV digests")
    rep.add_argument("manifest")
    rep.add_argument("--outdir", default=None, help="write the replay here instead of the original location")
    sub.add_parser("check", help="run the built-in invariant suite")
    return parser


def main(argv=None):
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and args.command != "run":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        if args.command == "check":
            return EXIT_OK if run_checks() == 0 else EXIT_MISMATCH
        if args.command == "run":
            cfg = load_config(args.config, _parse_overrides(extra))
            manifest = run_experiment(cfg)
            for out in manifest.outputs:
                print(out["path"])
            for key, value in manifest.results.items():
                print(f"{key}: {value}")
            return EXIT_OK
        manifest, mismatched = replay(args.manifest, args.outdir)
        if mismatched:
            for path in mismatched:
                print(f"digest mismatch: {path}", file=sys.stderr)
            return EXIT_MISMATCH
        print(f"replay reproduced {len(manifest.digests())} CSV file(s)")
        return EXIT_OK
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
