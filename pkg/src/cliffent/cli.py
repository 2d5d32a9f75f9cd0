"""Command-line entry point.

Subcommands cover every computation and experiment; each run embeds its
resolved configuration and seed in a leading CSV comment line so outputs
are replayable.  Exit codes: 0 success, 2 input-format error, 3
precondition violation.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .entropy import (
    choi_relation_residual,
    clifford_entropy,
    h2_upper_bound,
    is_clifford,
    shannon_clifford_entropy,
)
from .errors import (
    CliffentError,
    MatrixFormatError,
    ParameterError,
    UnitarityError,
)
from .haar import (
    HaarAverageVariant,
    RngStream,
    analytic_avg_H2,
    mc_avg_H2,
    variant_for_system,
)
from .matrix_io import load_unitary, save_matrix
from .optimize import lipschitz_probe, maximize_H2
from .parallel import default_threads
from .phase_space import QuditSystem
from .experiments import (
    predicted_sic_purity,
    sic_fiducial_search,
    sic_subsystem_purity,
    subadditivity_violation_rate,
    tcount_bound_experiment,
)

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_PRECONDITION = 3


def fmt(x: float) -> str:
    """17 significant digits; round-trips binary64 exactly."""
    return format(float(x), ".17g")


def parse_dims(text: str) -> list[int]:
    """'3' -> [3]; '2..9' -> [2, ..., 9]; '2,3,5' -> [2, 3, 5]."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ParameterError(f"bad dimension range {text!r}")
        return list(range(lo, hi + 1))
    if "," in text:
        return [int(p) for p in text.split(",")]
    return [int(text)]


def parse_qudits(text: str) -> QuditSystem:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParameterError(f"--qudits expects 'dL,n', got {text!r}")
    return QuditSystem(int(parts[0]), int(parts[1]))


def write_csv(path: str, comment: str, header: list[str], rows: list[list[str]]):
    with open(path, "w", newline="") as fh:
        fh.write(f"# {comment}\r\n")
        fh.write(",".join(header) + "\r\n")
        for row in rows:
            fh.write(",".join(row) + "\r\n")


def config_comment(subcommand: str, **kv) -> str:
    parts = [f"cliffent {__version__}", f"subcommand={subcommand}"]
    parts += [f"{k}={v}" for k, v in kv.items()]
    return " ".join(parts)


def cmd_entropy(args) -> int:
    um = load_unitary(args.matrix)
    U = um.matrix
    alpha = args.alpha
    if alpha == 1.0:
        value = shannon_clifford_entropy(U)
        label = "H_1 (Shannon limit)"
    else:
        value = clifford_entropy(U, alpha)
        label = f"H_{alpha:g}"
    verdict = "clifford" if is_clifford(U) else "non-clifford"
    print(f"d = {um.dimension}")
    print(f"{label} = {fmt(value)}")
    print(f"verdict: {verdict}")
    if alpha != 1.0:
        resid = choi_relation_residual(U, alpha)
        print(f"choi relation residual = {fmt(resid)}")
    print(f"unitarity defect = {fmt(um.defect)}")
    return EXIT_OK


def cmd_haar_avg(args) -> int:
    dims = parse_dims(args.d)
    rows = []
    for d in dims:
        if args.qudits is not None:
            system = parse_qudits(args.qudits)
            if system.dimension != d and len(dims) > 1:
                raise ParameterError(
                    "--qudits cannot be combined with a dimension sweep"
                )
            if system.dimension != d:
                raise ParameterError(
                    f"--qudits gives dimension {system.dimension}, --d says {d}"
                )
        else:
            system = QuditSystem.single(d)
        variant = variant_for_system(system)
        analytic = analytic_avg_H2(d, variant)
        stream = RngStream(args.seed)
        mean, stderr = mc_avg_H2(system, args.samples, stream, threads=args.threads)
        rows.append(
            [
                str(d),
                variant.value,
                str(args.samples),
                str(args.seed),
                fmt(mean),
                fmt(stderr),
                fmt(analytic),
            ]
        )
    comment = config_comment(
        "haar-avg",
        d=args.d,
        qudits=args.qudits or "-",
        samples=args.samples,
        seed=args.seed,
    )
    write_csv(
        args.out,
        comment,
        ["d", "variant", "n_samples", "seed", "mc_mean", "mc_stderr", "analytic"],
        rows,
    )
    return EXIT_OK


def cmd_maximize(args) -> int:
    dims = parse_dims(args.d)
    if args.save_unitary and len(dims) > 1:
        raise ParameterError("--save-unitary needs a single dimension")
    rows = []
    best_for_save = None
    for d in dims:
        stream = RngStream(args.seed)
        result = maximize_H2(
            d, restarts=args.restarts, max_iters=args.max_iters,
            stream=stream, threads=args.threads,
        )
        analytic = analytic_avg_H2(
            d, variant_for_system(QuditSystem.single(d))
        )
        rows.append(
            [
                str(d),
                str(args.restarts),
                str(args.seed),
                fmt(result.best_value),
                fmt(result.bound),
                fmt(analytic),
                fmt(result.gap_to_bound),
            ]
        )
        best_for_save = result
    comment = config_comment(
        "maximize", d=args.d, restarts=args.restarts,
        max_iters=args.max_iters, seed=args.seed,
    )
    write_csv(
        args.out,
        comment,
        ["d", "restarts", "seed", "best_H2", "bound", "analytic_avg", "gap_to_bound"],
        rows,
    )
    if args.save_unitary:
        save_matrix(args.save_unitary, best_for_save.best_unitary)
    return EXIT_OK


def cmd_subadd(args) -> int:
    dims = parse_dims(args.d)
    rows = []
    for d in dims:
        stream = RngStream(args.seed)
        report = subadditivity_violation_rate(
            d, args.pairs, args.reps, stream, threads=args.threads
        )
        for r in range(args.reps):
            rows.append(
                [
                    str(d),
                    str(r),
                    str(args.pairs),
                    str(args.seed),
                    str(report.violations[r]),
                    fmt(report.frequencies[r]),
                ]
            )
    comment = config_comment(
        "subadd", d=args.d, pairs=args.pairs, reps=args.reps, seed=args.seed
    )
    write_csv(
        args.out,
        comment,
        ["d", "rep", "n_pairs", "seed", "violations", "frequency"],
        rows,
    )
    return EXIT_OK


def cmd_tcount(args) -> int:
    dims = parse_dims(args.d)
    rows = []
    for d in dims:
        system = QuditSystem.single(d)
        stream = RngStream(args.seed)
        report = tcount_bound_experiment(
            system, args.t, args.circuits, stream,
            word_length=args.word_length, threads=args.threads,
        )
        for i, (h2_u, ratio) in enumerate(zip(report.h2_values, report.ratios)):
            rows.append(
                [
                    str(d),
                    str(args.t),
                    str(i),
                    fmt(h2_u),
                    fmt(report.h2_magic),
                    fmt(ratio),
                    str(int(ratio <= args.t)),
                ]
            )
    comment = config_comment(
        "tcount", d=args.d, t=args.t, circuits=args.circuits,
        word_length=args.word_length, seed=args.seed,
    )
    write_csv(
        args.out,
        comment,
        ["d", "t", "circuit_index", "H2_U", "H2_T", "ratio", "bound_holds"],
        rows,
    )
    return EXIT_OK


def cmd_sic(args) -> int:
    stream = RngStream(args.seed)
    fid = sic_fiducial_search(args.dim, restarts=args.restarts, stream=stream)
    root = int(round(np.sqrt(args.dim)))
    if root * root == args.dim and fid.accepted:
        avg_purity = sic_subsystem_purity(fid, root)
        predicted = predicted_sic_purity(root)
    else:
        avg_purity = float("nan")
        predicted = float("nan")
    comment = config_comment(
        "sic", dim=args.dim, restarts=args.restarts, seed=args.seed
    )
    write_csv(
        args.out,
        comment,
        [
            "dim",
            "restarts",
            "seed",
            "frame_potential",
            "max_overlap_dev",
            "avg_purity",
            "predicted_purity",
        ],
        [
            [
                str(args.dim),
                str(args.restarts),
                str(args.seed),
                fmt(fid.frame_potential),
                fmt(fid.max_overlap_deviation),
                fmt(avg_purity),
                fmt(predicted),
            ]
        ],
    )
    if not fid.accepted:
        print(
            f"search failed: best overlap deviation {fid.max_overlap_deviation:.3e}",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_lipschitz(args) -> int:
    dims = parse_dims(args.d)
    rows = []
    for d in dims:
        stream = RngStream(args.seed)
        probe = lipschitz_probe(d, args.pairs, stream)
        rows.append(
            [
                str(d),
                str(args.pairs),
                str(args.seed),
                fmt(probe.max_ratio),
                fmt(probe.bound),
                fmt(probe.max_ratio_pairwise),
                fmt(probe.bound_pairwise),
            ]
        )
    comment = config_comment(
        "lipschitz", d=args.d, pairs=args.pairs, seed=args.seed
    )
    write_csv(
        args.out,
        comment,
        ["d", "n_pairs", "seed", "max_ratio", "bound", "max_ratio_pairwise",
         "bound_pairwise"],
        rows,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffent",
        description="Clifford entropy computations and experiments",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, out=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--threads", type=int, default=default_threads(),
            help="worker pool size; results are independent of it",
        )
        if out:
            p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("entropy", help="entropy of a unitary from a matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--alpha", type=float, default=2.0)
    p.set_defaults(fn=cmd_entropy)

    p = sub.add_parser("haar-avg", help="Monte Carlo Haar average vs closed form")
    p.add_argument("--d", required=True, help="dimension, range 'a..b', or list")
    p.add_argument("--qudits", default=None, help="group as 'dL,n' (default: single qudit)")
    p.add_argument("--samples", type=int, default=25000)
    common(p)
    p.set_defaults(fn=cmd_haar_avg)

    p = sub.add_parser("maximize", help="maximize the 2-entropy over unitaries")
    p.add_argument("--d", required=True)
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--max-iters", type=int, default=300)
    p.add_argument("--save-unitary", default=None, help="write best unitary as JSON")
    common(p)
    p.set_defaults(fn=cmd_maximize)

    p = sub.add_parser("subadd", help="subadditivity violation frequency")
    p.add_argument("--d", required=True)
    p.add_argument("--pairs", type=int, default=25000)
    p.add_argument("--reps", type=int, default=25)
    common(p)
    p.set_defaults(fn=cmd_subadd)

    p = sub.add_parser("tcount", help="depth lower bound on doped circuits")
    p.add_argument("--d", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--circuits", type=int, default=1000)
    p.add_argument("--word-length", type=int, default=20)
    common(p)
    p.set_defaults(fn=cmd_tcount)

    p = sub.add_parser("sic", help="fiducial search and subsystem purity")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--restarts", type=int, default=20)
    common(p)
    p.set_defaults(fn=cmd_sic)

    p = sub.add_parser("lipschitz", help="difference-quotient bound probes")
    p.add_argument("--d", required=True)
    p.add_argument("--pairs", type=int, default=10000)
    common(p)
    p.set_defaults(fn=cmd_lipschitz)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except UnitarityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CliffentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
