"""Command-line batch runner.

Examples::

    photonqc --experiment hom
    photonqc --experiment double-heralding --trials 10000 --param eta=[0.5,1.0] --format csv --out dh.csv
    photonqc --config run.json --seed 7

A config file is a JSON object with any of the keys ``experiment``,
``params``, ``seed``, ``trials``, ``out`` and ``format``; command-line flags
override it.  Exit codes: 0 success, 2 usage or configuration error, 3 I/O
error.  Wall time goes to stderr only, so output files are reproducible.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time

from . import experiments
from .errors import InvalidParams
from .seeding import DEFAULT_SEED

log = logging.getLogger("photonqc")

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 2, 3
FORMATS = ("json", "csv")
CONFIG_KEYS = {"experiment", "params", "seed", "trials", "out", "format"}


def parse_param(text: str) -> tuple[str, object]:
    """``key=value``; the value is read as JSON when possible, else kept as a string."""
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise InvalidParams(f"--param expects key=value, got {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


def render(record: experiments.ResultRecord, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record.to_json(), indent=2, sort_keys=True, allow_nan=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(record.header)
        writer.writerows(["" if v is None else repr(float(v)) if isinstance(v, float) else v for v in row]
                         for row in record.rows)
        return buf.getvalue()
    raise InvalidParams(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def emit(record: experiments.ResultRecord, fmt: str, path: str | None) -> None:
    text = render(record, fmt)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="photonqc", description="Run optical quantum computing experiments.")
    p.add_argument("--experiment", choices=sorted(experiments.EXPERIMENTS), help="experiment to run")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--seed", type=int, help=f"master seed (default {DEFAULT_SEED})")
    p.add_argument("--trials", type=int, help="number of trials (default depends on experiment)")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", help="json or csv (default json)")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="experiment parameter, repeatable")
    p.add_argument("--list", action="store_true", help="list experiments and their parameters")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidParams(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InvalidParams("config must be a JSON object")
    unknown = sorted(set(data) - CONFIG_KEYS)
    if unknown:
        raise InvalidParams(f"unknown config key(s): {', '.join(unknown)}")
    if not isinstance(data.get("params", {}), dict):
        raise InvalidParams("config 'params' must be an object")
    return data


def describe() -> str:
    lines = []
    for exp in experiments.EXPERIMENTS.values():
        lines.append(f"{exp.name}: {exp.doc} (default trials {exp.default_trials})")
        for name, spec in exp.params.items():
            lines.append(f"    {name} ({spec.kind}, default {spec.default!r}) {spec.doc}".rstrip())
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.list:
        sys.stdout.write(describe())
        return EXIT_OK
    try:
        config = load_config(args.config) if args.config else {}
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        name = args.experiment or config.get("experiment")
        if name is None:
            raise InvalidParams("no experiment given (use --experiment or a config file)")
        params = dict(config.get("params", {}))
        params.update(parse_param(p) for p in args.param)
        seed = args.seed if args.seed is not None else config.get("seed", DEFAULT_SEED)
        trials = args.trials if args.trials is not None else config.get("trials")
        fmt = args.format or config.get("format", "json")
        if fmt not in FORMATS:
            raise InvalidParams(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
        out = args.out or config.get("out")
        start = time.perf_counter()
        record = experiments.run(name, params, seed, trials)
        log.info("%s finished in %.3f s", name, time.perf_counter() - start)
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        emit(record, fmt, out)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
