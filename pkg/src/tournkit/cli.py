"""Command-line interface.

Subcommands: gen, kings, superking, bracket, playout, domset, experiment.
stdout carries machine-parseable output only; diagnostics go to stderr.
Exit codes: 0 success, 1 bracket infeasible-by-method, 2 invalid input,
3 oracle-certified non-winner.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .core import Tournament
from .errors import TournamentError
from .experiments import ExperimentConfig, run_grid, write_csv
from .models import (
    CONDORCET,
    GAP,
    GENERALIZED,
    UNIFORM,
    ModelSpec,
    RngStream,
    load_probability_matrix,
    probability_matrix,
    sample,
)
from .single_elim import (
    Bracket,
    is_superking,
    playout,
    se_winners_exhaustive,
    winning_bracket,
)
from .solutions import MAX, k_kings, r_dominating_set


def _atomic_write(path: str, payload: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(path: str | None, payload: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(payload)
    else:
        _atomic_write(path, payload)


def _read_tournament(path: str) -> Tournament:
    with open(path, "r", encoding="ascii") as fh:
        return Tournament.from_text(fh.read())


def _parse_k(token: str):
    if token == "max":
        return MAX
    return int(token)


def _parse_p_grid(token: str) -> list[float]:
    """start:end:step, endpoints included when step divides the range."""
    parts = token.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"p-grid must be start:end:step, got {token!r}")
    start, end, step = (float(v) for v in parts)
    if step <= 0 and start != end:
        raise argparse.ArgumentTypeError("p-grid step must be positive")
    if start == end:
        return [start]
    # integer micro-probability stepping avoids float accumulation
    start_u, end_u, step_u = round(start * 1e6), round(end * 1e6), round(step * 1e6)
    if step_u <= 0:
        raise argparse.ArgumentTypeError("p-grid step too small")
    values = []
    v = start_u
    while v <= end_u:
        values.append(v / 1e6)
        v += step_u
    return values


def _model_spec(args) -> ModelSpec:
    if args.model == GENERALIZED:
        if not getattr(args, "matrix", None):
            raise TournamentError("generalized model requires --matrix FILE")
        return ModelSpec(GENERALIZED, matrix=load_probability_matrix(args.matrix))
    if args.model == UNIFORM:
        return ModelSpec(UNIFORM)
    p = getattr(args, "p", None)
    if p is None:
        raise TournamentError(f"model {args.model} requires --p")
    return ModelSpec(args.model, p=p)


# -- subcommands -------------------------------------------------------------


def _cmd_gen(args) -> int:
    spec = _model_spec(args)
    matrix = probability_matrix(spec, args.n)
    tournament = sample(matrix, RngStream(args.seed, 0))
    _emit(args.out, tournament.to_text())
    return 0


def _cmd_kings(args) -> int:
    tournament = _read_tournament(args.infile)
    kings = k_kings(tournament, args.k)
    _emit(args.out, "".join(f"{v}\n" for v in sorted(kings.members)))
    return 0


def _cmd_superking(args) -> int:
    tournament = _read_tournament(args.infile)
    ids = [x for x in range(tournament.n) if is_superking(tournament, x)]
    _emit(args.out, "".join(f"{v}\n" for v in ids))
    return 0


def _cmd_domset(args) -> int:
    tournament = _read_tournament(args.infile)
    dom = r_dominating_set(tournament, args.r)
    _emit(args.out, "".join(f"{v}\n" for v in sorted(dom.members)))
    return 0


def _cmd_playout(args) -> int:
    tournament = _read_tournament(args.infile)
    with open(args.bracket, "r", encoding="ascii") as fh:
        bracket = Bracket.from_text(fh.read())
    winner = playout(tournament, bracket)
    _emit(args.out, f"{winner}\n")
    return 0


def _cmd_bracket(args) -> int:
    tournament = _read_tournament(args.infile)
    stream = RngStream(args.seed, args.target)
    bracket = winning_bracket(tournament, args.target, stream=stream, retries=args.retries)
    if bracket is not None:
        _emit(args.out, bracket.to_text())
        return 0
    if tournament.n <= 16:
        winners = se_winners_exhaustive(tournament)
        if args.target not in winners:
            print(f"not a single-elimination winner: {args.target}", file=sys.stderr)
            return 3
    sys.stdout.write("infeasible-by-method\n")
    return 1


def _cmd_experiment(args) -> int:
    if args.model == GENERALIZED:
        if not args.matrix:
            raise TournamentError("generalized model requires --matrix FILE")
        spec = ModelSpec(GENERALIZED, matrix=load_probability_matrix(args.matrix))
    elif args.model == UNIFORM:
        spec = ModelSpec(UNIFORM)
    else:
        if not args.p_grid:
            raise TournamentError("empty p grid")
        spec = ModelSpec(args.model, p=min(max(args.p_grid[0], 0.0), 0.5))
    config = ExperimentConfig(
        model=spec,
        p_values=args.p_grid,
        n_values=args.n,
        k_values=args.k,
        trials=args.trials,
        master_seed=args.seed,
        fresh_per_k=args.fresh_per_k,
    )

    def progress(done: int, total: int) -> None:
        print(f"cell {done}/{total}", file=sys.stderr)

    rows = run_grid(config, workers=args.threads, progress=progress)
    if args.out is None or args.out == "-":
        write_csv(rows, sys.stdout)
    else:
        write_csv(rows, args.out)
    return 0


def _int_list(token: str) -> list[int]:
    return [int(v) for v in token.split(",")]


def _k_list(token: str) -> list:
    return [_parse_k(v) for v in token.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tournkit",
        description="tournament generation, k-king solving, brackets, and Monte Carlo sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    models = [UNIFORM, CONDORCET, GAP, GENERALIZED]

    gen = sub.add_parser("gen", help="generate one random tournament")
    gen.add_argument("--model", choices=models, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, default=None)
    gen.add_argument("--matrix", help="probability matrix file (generalized model)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default="-")
    gen.set_defaults(func=_cmd_gen)

    kings = sub.add_parser("kings", help="list the k-kings of a tournament file")
    kings.add_argument("--in", dest="infile", required=True)
    kings.add_argument("--k", type=_parse_k, required=True, help="integer >= 2 or 'max'")
    kings.add_argument("--out", default="-")
    kings.set_defaults(func=_cmd_kings)

    superking = sub.add_parser("superking", help="list superkings")
    superking.add_argument("--in", dest="infile", required=True)
    superking.add_argument("--out", default="-")
    superking.set_defaults(func=_cmd_superking)

    domset = sub.add_parser("domset", help="greedy r-dominating set")
    domset.add_argument("--in", dest="infile", required=True)
    domset.add_argument("--r", type=int, default=1)
    domset.add_argument("--out", default="-")
    domset.set_defaults(func=_cmd_domset)

    playout_p = sub.add_parser("playout", help="evaluate a bracket file")
    playout_p.add_argument("--in", dest="infile", required=True)
    playout_p.add_argument("--bracket", required=True)
    playout_p.add_argument("--out", default="-")
    playout_p.set_defaults(func=_cmd_playout)

    bracket = sub.add_parser("bracket", help="synthesize a winning bracket")
    bracket.add_argument("--in", dest="infile", required=True)
    bracket.add_argument("--target", type=int, required=True)
    bracket.add_argument("--seed", type=int, default=0)
    bracket.add_argument("--retries", type=int, default=32)
    bracket.add_argument("--out", default="-")
    bracket.set_defaults(func=_cmd_bracket)

    experiment = sub.add_parser("experiment", help="Monte Carlo sweep to CSV")
    experiment.add_argument("--model", choices=models, required=True)
    experiment.add_argument("--matrix", help="probability matrix file (generalized model)")
    experiment.add_argument("--n", type=_int_list, required=True, help="comma list, e.g. 10,20")
    experiment.add_argument(
        "--p-grid",
        dest="p_grid",
        type=_parse_p_grid,
        default=[0.5],
        help="start:end:step inclusive, e.g. 0:0.5:0.02",
    )
    experiment.add_argument("--k", type=_k_list, required=True, help="comma list, e.g. 2,3,4,max")
    experiment.add_argument("--trials", type=int, required=True)
    experiment.add_argument("--seed", type=int, default=0)
    experiment.add_argument("--fresh-per-k", action="store_true", dest="fresh_per_k")
    experiment.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    experiment.add_argument("--out", default="-")
    experiment.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TournamentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
