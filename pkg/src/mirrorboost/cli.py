"""Command-line surface: train boosters, verify traces, project vectors, bench.

Exit codes: 0 success, 1 usage or parse error, 2 no weak learnability.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bench
from .boosting import (
    Algorithm,
    AlphaMode,
    BoosterConfig,
    MadaEta,
    run,
    save_model,
)
from .data import Dataset, gen_blobs, gen_combined, gen_noisy, load_csv, load_libsvm
from .errors import (
    ConfigurationError,
    MirrorBoostError,
    NoWeakLearnabilityError,
    ParseError,
    UsageError,
)
from .geometry import NEGATIVE_ENTROPY, QUADRATIC, Geometry
from .projection import (
    SIMPLEX,
    UNIT_HYPERCUBE,
    project_capped_simplex,
    project_double,
    project_hypercube_entropic,
    project_orthant_l1,
    project_simplex,
)
from .trace_io import read_trace, write_trace
from .verify import verify_trace

_GEOMETRIES = {"quadratic": QUADRATIC, "entropy": NEGATIVE_ENTROPY}
_FORCED_GEOMETRY = {Algorithm.SPARSE: "quadratic", Algorithm.MADA: "entropy"}


def _parse_gen(spec: str) -> Dataset:
    parts = spec.split(":")
    try:
        if parts[0] == "blobs" and len(parts) == 4:
            return gen_blobs(int(parts[1]), int(parts[2]), float(parts[3]))
        if parts[0] == "noisy" and len(parts) == 4:
            return gen_noisy(int(parts[1]), int(parts[2]), float(parts[3]))
        if parts[0] == "combined" and len(parts) == 5:
            return gen_combined(int(parts[1]), int(parts[2]), int(parts[3]), float(parts[4]))
    except ValueError as exc:
        raise UsageError(f"bad --gen spec {spec!r}: {exc}") from None
    raise UsageError(
        f"bad --gen spec {spec!r}; expected blobs:<seed>:<N>:<margin>, "
        "noisy:<seed>:<N>:<flip> or combined:<seed>:<Na>:<Nb>:<flip>"
    )


def _load_dataset(args) -> Dataset:
    if (args.data is None) == (args.gen is None):
        raise UsageError("exactly one of --data or --gen is required")
    if args.gen is not None:
        return _parse_gen(args.gen)
    if args.data.endswith((".libsvm", ".svm", ".svmlight")):
        return load_libsvm(args.data)
    return load_csv(args.data, args.label_column, args.subset_column)


def _resolve_geometry(algorithm: Algorithm, flag: str | None) -> Geometry:
    forced = _FORCED_GEOMETRY.get(algorithm)
    if forced is not None:
        if flag is not None and flag != forced:
            raise UsageError(
                f"--algo {algorithm.value} requires --geometry {forced}"
            )
        return _GEOMETRIES[forced]
    return _GEOMETRIES[flag or "entropy"]


def cmd_train(args) -> int:
    algorithm = Algorithm(args.algo)
    geometry = _resolve_geometry(algorithm, args.geometry)
    dataset = _load_dataset(args)

    target = args.target_eps
    if target is None:
        target = 1.0 / args.k if algorithm is Algorithm.SMOOTH and args.k else 0.0
    config = BoosterConfig(
        algorithm=algorithm,
        geometry=geometry,
        rounds=args.rounds,
        target_error=target,
        k=args.k,
        alpha_mode=AlphaMode(args.alpha_mode) if args.alpha_mode else None,
        mada_eta=MadaEta(args.mada_eta),
    )
    config.validate()

    result = run(config, dataset)
    if args.trace:
        n_b = (
            int(dataset.subset_flags.sum())
            if algorithm is Algorithm.COMBINED and dataset.subset_flags is not None
            else None
        )
        write_trace(
            result,
            dataset.n,
            args.trace,
            k=args.k,
            alpha_mode=args.alpha_mode,
            n_b=n_b,
        )
    if args.model:
        save_model(result, args.model)
    final = result.traces[-1] if result.traces else None
    err = final.train_error if final else 1.0
    bound = final.bound if final else None
    print(f"rounds={len(result.traces)} train_error={err!r} bound={bound!r}")
    return 0


def cmd_verify(args) -> int:
    trace = read_trace(args.trace)
    reports = verify_trace(trace)
    if len(reports) == 1 and reports[0].family == "empty-trace":
        print("WARNING: trace has no rounds")
    for report in reports:
        print(report.line())
    return 0 if all(r.passed for r in reports) else 1


def cmd_project(args) -> int:
    geometry = _GEOMETRIES[args.geometry]
    try:
        vec = np.asarray(json.loads(sys.stdin.read()), dtype=float)
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"stdin must hold a JSON array of numbers: {exc}") from None
    spec = args.set
    if spec == "simplex":
        out = project_simplex(geometry, vec)
    elif spec.startswith("capped:"):
        out = project_capped_simplex(geometry, vec, float(spec.split(":", 1)[1]))
    elif spec == "hypercube":
        out = project_hypercube_entropic(vec)
    elif spec == "double":
        out = project_double(geometry, vec, UNIT_HYPERCUBE, SIMPLEX)
    elif spec.startswith("orthant-l1:"):
        out = project_orthant_l1(vec, float(spec.split(":", 1)[1]))
    else:
        raise UsageError(f"unknown --set {spec!r}")
    print(json.dumps(list(out)))
    return 0


def cmd_bench(args) -> int:
    results = bench.run_bench(args.criterion)
    width = max(len(r.name) for r in results)
    all_passed = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        all_passed &= r.passed
        print(f"{r.name:<{width}}  expected {r.expected}  observed {r.observed}  {status}")
    print("bench:", "ALL PASS" if all_passed else "FAILURES PRESENT")
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mirrorboost")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="run a booster and write trace/model files")
    train.add_argument("--algo", required=True, choices=[a.value for a in Algorithm])
    train.add_argument("--geometry", choices=sorted(_GEOMETRIES))
    train.add_argument("--data", help="CSV (header row) or LIBSVM file")
    train.add_argument("--gen", help="blobs:<seed>:<N>:<margin> | noisy:... | combined:...")
    train.add_argument("--label-column", default="label")
    train.add_argument("--subset-column", default=None)
    train.add_argument("--rounds", type=int, required=True)
    train.add_argument("--target-eps", type=float, default=None)
    train.add_argument("--k", type=float, default=None)
    train.add_argument("--alpha-mode", choices=[m.value for m in AlphaMode])
    train.add_argument(
        "--mada-eta",
        choices=[m.value for m in MadaEta],
        default=MadaEta.PREVIOUS_ERROR.value,
    )
    train.add_argument("--trace")
    train.add_argument("--model")
    train.set_defaults(func=cmd_train)

    verify = sub.add_parser("verify", help="recheck every bound stored in a trace")
    verify.add_argument("trace")
    verify.set_defaults(func=cmd_verify)

    project = sub.add_parser("project", help="project a JSON vector from stdin")
    project.add_argument("--geometry", required=True, choices=sorted(_GEOMETRIES))
    project.add_argument(
        "--set",
        required=True,
        help="simplex | capped:<cap> | hypercube | double | orthant-l1:<lambda>",
    )
    project.set_defaults(func=cmd_project)

    bench_p = sub.add_parser("bench", help="run the acceptance criteria")
    bench_p.add_argument("--criterion", default=None, help="run a single named criterion")
    bench_p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoWeakLearnabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ConfigurationError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MirrorBoostError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
