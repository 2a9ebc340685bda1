"""Deterministic command-line front-end.

Subcommands: sample-fock, sample-passv, compare, decompose, embed,
bench-permanent. Every artifact embeds the run configuration, files are
written atomically (temp file plus rename), and a repeated invocation with
identical flags produces byte-identical output. The one exception is
bench-permanent, whose nanosecond column is a wall-clock measurement.

Exit codes: 0 success, 1 validation failure or bad usage, 2 size-limit guard.
The PASSV_LOG environment variable (quiet, info, debug) sets stderr verbosity.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
import time

import numpy as np

from .configurations import ModeConfiguration
from .distributions import OutputDistribution, draw_samples
from .errors import SizeLimitError, ValidationError
from .evolution import (
    apply_network,
    as_squeezing,
    build_passv_input,
    parity_distribution,
    required_cutoff,
)
from .experiments import run_equivalence_experiment
from .networks import (
    LinearNetwork,
    embed_unitary_as_orthogonal,
    haar_special_orthogonal,
    haar_unitary,
    ORTHOGONAL,
    reck_decompose,
    reconstruct,
    UNITARY,
)
from .permanents import NAIVE_LIMIT, permanent_naive, permanent_ryser
from .sampling import output_distribution, uniform_input

logger = logging.getLogger("passv")

LOG_LEVELS = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}


def _configure_logging():
    level_name = os.environ.get("PASSV_LOG", "info").lower()
    level = LOG_LEVELS.get(level_name)
    if level is None:
        level = logging.INFO
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    logger.handlers = [handler]
    logger.setLevel(level)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="passv",
        description="Permanent-based boson sampling and its parity-measurement "
        "equivalence harness for squeezed-vacuum inputs.",
    )
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")

    def add_matrix_source(p, need_n=True):
        if need_n:
            p.add_argument("--n", type=int, required=True, help="photon count")
        p.add_argument("--m", type=int, help="mode count (required unless --matrix is given)")
        p.add_argument("--matrix", help="path to a matrix JSON file; wins over --kind/--seed")
        p.add_argument("--kind", choices=[UNITARY, ORTHOGONAL], default=ORTHOGONAL,
                       help="random network kind when no --matrix file is given")
        p.add_argument("--seed", type=int, help="seed for random network generation")

    p = sub.add_parser("sample-fock", help="exact permanent-based output distribution")
    add_matrix_source(p)
    p.add_argument("--shots", type=int, default=0, help="also draw this many samples")
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("sample-passv", help="brute-force parity distribution of a "
                                            "photon-added/subtracted squeezed input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--xi", type=float, required=True, help="squeezing magnitude")
    p.add_argument("--variant", choices=["added", "subtracted"], default="added")
    p.add_argument("--seed", type=int, required=True, help="network seed")
    p.add_argument("--epsilon-tail", type=float, default=1e-8)
    p.add_argument("--cutoff", type=int, help="override the computed occupation cutoff")
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("compare", help="equivalence report: permanents vs brute force")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--xi", required=True, help="comma-separated squeezing magnitudes")
    p.add_argument("--variant", choices=["added", "subtracted"], default="added")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--epsilon-tail", type=float, default=1e-8)
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("decompose", help="triangular two-mode decomposition of a network")
    add_matrix_source(p, need_n=False)
    p.add_argument("--output", help="output path (default: stdout)")

    p = sub.add_parser("embed", help="realify a unitary into a doubled rotation matrix")
    add_matrix_source(p, need_n=False)
    p.add_argument("--output", help="output path (default: stdout)")

    p = sub.add_parser("bench-permanent", help="time the permanent kernels")
    p.add_argument("--sizes", default="2,4,6,8", help="comma-separated matrix sizes")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", help="output path (default: stdout)")
    return parser


def execute(argv) -> int:
    """Run one invocation; returns the process exit code."""
    _configure_logging()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    handlers = {
        "sample-fock": _run_sample_fock,
        "sample-passv": _run_sample_passv,
        "compare": _run_compare,
        "decompose": _run_decompose,
        "embed": _run_embed,
        "bench-permanent": _run_bench,
    }
    try:
        handlers[args.command](args)
    except ValidationError as exc:
        logger.error("validation: %s", exc)
        return 1
    except SizeLimitError as exc:
        logger.error("size limit: %s", exc)
        return 2
    except OSError as exc:
        logger.error("i/o: %s", exc)
        return 1
    return 0


def main():
    sys.exit(execute(sys.argv[1:]))


def _resolve_network(args) -> tuple[LinearNetwork, dict]:
    """Load a matrix file or generate one from (kind, m, seed); the file wins."""
    if args.matrix:
        if args.seed is not None:
            logger.warning("--matrix file wins over --kind/--seed generation")
        try:
            with open(args.matrix, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read matrix file {args.matrix}: {exc}") from exc
        net = LinearNetwork.from_json_dict(data)
        return net, {"matrix": args.matrix, "m": net.dimension, "kind": net.kind}
    if args.m is None:
        raise ValidationError("either --matrix or --m is required")
    if args.seed is None:
        raise ValidationError("--seed is required when generating a network")
    if args.kind == UNITARY:
        net = haar_unitary(args.m, args.seed)
    else:
        net = haar_special_orthogonal(args.m, args.seed)
    return net, {"m": args.m, "kind": args.kind, "seed": args.seed}


def _write_artifact(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".passv-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.info("wrote %s", path)


def _config_comment(config: dict) -> str:
    return "# config " + json.dumps(config, sort_keys=True)


def _distribution_csv(dist: OutputDistribution, config: dict) -> str:
    buf = io.StringIO()
    buf.write(_config_comment(config) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "probability"])
    for key, p in dist.items():
        writer.writerow([key.serialize(), repr(float(p))])
    return buf.getvalue()


def _distribution_json(dist: OutputDistribution, config: dict) -> str:
    record = {
        "config": config,
        "normalization_defect": dist.normalization_defect,
        "distribution": [[key.serialize(), float(p)] for key, p in dist.items()],
    }
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def _run_sample_fock(args):
    net, source = _resolve_network(args)
    if args.shots and args.seed is None:
        raise ValidationError("--seed is required to draw samples")
    pump = uniform_input(args.n, net.dimension)
    dist = output_distribution(net, pump)
    config = {"subcommand": "sample-fock", "n": args.n, "input": pump.serialize(),
              "shots": args.shots, **source}
    if args.format == "csv":
        _write_artifact(args.output, _distribution_csv(dist, config))
    else:
        _write_artifact(args.output, _distribution_json(dist, config))
    if args.shots:
        samples = draw_samples(dist, int(args.seed) + 1, args.shots)
        buf = io.StringIO()
        buf.write(_config_comment(config) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["sample"])
        for key in samples:
            writer.writerow([key.serialize()])
        _write_artifact(_samples_path(args.output), buf.getvalue())


def _samples_path(path: str | None) -> str | None:
    if path is None:
        return None
    stem, ext = os.path.splitext(path)
    return f"{stem}.samples{ext or '.csv'}"


def _run_sample_passv(args):
    sq = as_squeezing(args.xi)
    cutoff = args.cutoff if args.cutoff is not None else required_cutoff(
        sq, args.epsilon_tail, headroom=args.n
    )
    state = build_passv_input(args.n, args.m, sq, args.variant, cutoff)
    apply_network(state, reck_decompose(haar_special_orthogonal(args.m, args.seed)))
    dist = parity_distribution(state)
    config = {
        "subcommand": "sample-passv", "n": args.n, "m": args.m, "xi": args.xi,
        "variant": args.variant, "seed": args.seed, "cutoff": cutoff,
        "epsilon_tail": args.epsilon_tail, "truncation_loss": state.truncation_loss,
    }
    if args.format == "csv":
        _write_artifact(args.output, _distribution_csv(dist, config))
    else:
        _write_artifact(args.output, _distribution_json(dist, config))


def _parse_xi_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in str(text).split(",")]
    except ValueError as exc:
        raise ValidationError(f"cannot parse --xi list {text!r}") from exc
    if not values:
        raise ValidationError("--xi needs at least one value")
    return values


def _run_compare(args):
    report = run_equivalence_experiment(
        args.n, args.m, _parse_xi_list(args.xi), args.variant,
        seed=args.seed, epsilon_tail=args.epsilon_tail,
    )
    config = {
        "subcommand": "compare", "n": args.n, "m": args.m, "xi": report.xi_values,
        "variant": args.variant, "seed": args.seed, "epsilon_tail": args.epsilon_tail,
    }
    if args.format == "json":
        record = {"config": config, "report": report.to_json_dict()}
        _write_artifact(args.output, json.dumps(record, sort_keys=True, indent=2) + "\n")
    else:
        buf = io.StringIO()
        buf.write(_config_comment(config) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        for row in report.to_csv_rows():
            writer.writerow(row)
        _write_artifact(args.output, buf.getvalue())


def _run_decompose(args):
    net, source = _resolve_network(args)
    dec = reck_decompose(net)
    rebuilt = reconstruct(dec)
    err = float(np.max(np.abs(
        rebuilt.entries.astype(np.complex128) - net.entries.astype(np.complex128)
    )))
    record = {
        "config": {"subcommand": "decompose", **source},
        **dec.to_json_dict(),
        "kind": net.kind,
        "reconstruction_error": err,
    }
    _write_artifact(args.output, json.dumps(record, sort_keys=True, indent=2) + "\n")


def _run_embed(args):
    net, source = _resolve_network(args)
    if net.kind != UNITARY:
        raise ValidationError("embed expects a unitary network")
    doubled = embed_unitary_as_orthogonal(net)
    record = {"config": {"subcommand": "embed", **source}, **doubled.to_json_dict()}
    _write_artifact(args.output, json.dumps(record, sort_keys=True, indent=2) + "\n")


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in str(text).split(",") if part != ""]
    except ValueError as exc:
        raise ValidationError(f"cannot parse --sizes list {text!r}") from exc
    if not sizes or any(s < 0 for s in sizes):
        raise ValidationError("--sizes needs non-negative integers")
    return sizes


def _run_bench(args):
    sizes = _parse_sizes(args.sizes)
    if args.repeats < 1:
        raise ValidationError("--repeats must be at least 1")
    rng = np.random.default_rng(int(args.seed))
    config = {"subcommand": "bench-permanent", "sizes": sizes,
              "repeats": args.repeats, "seed": args.seed}
    buf = io.StringIO()
    buf.write(_config_comment(config) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "kernel", "nanoseconds", "checksum"])
    for n in sizes:
        matrix = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        kernels = [("ryser", permanent_ryser)]
        if n <= NAIVE_LIMIT:
            kernels.insert(0, ("naive", permanent_naive))
        for name, kernel in kernels:
            best = None
            value = None
            for _ in range(args.repeats):
                start = time.perf_counter_ns()
                value = kernel(matrix)
                elapsed = time.perf_counter_ns() - start
                best = elapsed if best is None else min(best, elapsed)
            writer.writerow([n, name, best, f"{abs(value):.9e}"])
    _write_artifact(args.output, buf.getvalue())


if __name__ == "__main__":
    main()
