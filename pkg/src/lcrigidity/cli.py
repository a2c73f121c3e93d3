"""Command-line front end.  Every command reads graph JSON
(``{"n": .., "edges": [[u, v], ..], "loops": [v, ..]}``) from ``--input``
or stdin and writes JSON to stdout.

Exit codes: 0 result computed, 1 counterexample found (verify, sweep),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import balancedness, constructions, harness, matroid, rigidity, sparsity
from ._kernels import active_backend
from .errors import LCRigidityError
from .graph import LoopedSimpleGraph

log = logging.getLogger("lcrigidity")


class UsageError(Exception):
    pass


def _read_graph(args) -> LoopedSimpleGraph:
    if args.input and args.input != "-":
        with open(args.input) as fh:
            text = fh.read()
    else:
        if sys.stdin.isatty():
            raise UsageError("no graph given: pipe graph JSON on stdin or pass --input FILE")
        text = sys.stdin.read()
    try:
        return LoopedSimpleGraph.loads(text)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"could not parse graph JSON: {exc}") from exc


def _read_json_arg(value: str):
    """A JSON literal, or a path to a JSON file."""
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        try:
            with open(value) as fh:
                return json.load(fh)
        except OSError as exc:
            raise UsageError(f"{value!r} is neither JSON nor a readable file") from exc


def _emit(obj):
    json.dump(obj, sys.stdout, default=_default)
    sys.stdout.write("\n")


def _default(o):
    if hasattr(o, "to_dict"):
        return o.to_dict()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


# ---------------------------------------------------------------------------
# commands

def cmd_rank(args):
    g = _read_graph(args)
    rep = rigidity.generic_rank(g, args.d, args.trials, args.seed)
    _emit(rep.to_dict())
    return 0


def cmd_rigid(args):
    g = _read_graph(args)
    v = rigidity.is_Ld_rigid(g, args.d, args.trials, args.seed)
    _emit({"rigid": v.value, "d": args.d, "report": v.report.to_dict()})
    return 0


def cmd_redundant(args):
    g = _read_graph(args)
    v = rigidity.is_redundantly_Ld_rigid(g, args.d, args.trials, args.seed)
    fe = None if v.failing_element is None else rigidity._element_dict(v.failing_element)
    _emit({"redundantly_rigid": v.value, "d": args.d, "failing_element": fe,
           "report": v.report.to_dict()})
    return 0


def cmd_global2(args):
    g = _read_graph(args)
    v = rigidity.is_globally_L2_rigid_char(g, args.trials, args.seed)
    _emit({"globally_rigid": v.value, **v.detail})
    return 0


def cmd_balanced(args):
    g = _read_graph(args)
    _emit(balancedness.check(g, args.kind, args.k, args.budget).to_dict())
    return 0


def cmd_sparse(args):
    g = _read_graph(args)
    _emit(sparsity.is_t_sparse(g, args.t).to_dict())
    return 0


def cmd_tight_witness(args):
    if args.S:
        g = _read_graph(args)
        S = [int(x) for x in args.S.split(",")]
    else:
        g, S = None, list(range(2 * args.t))
    w = sparsity.build_t_tight_witness(S, args.t, g)
    _emit({"graph": w.to_dict(), "vertices": sorted(S),
           "certificate": sparsity.is_t_sparse(w, args.t).to_dict()})
    return 0


def cmd_dtight_search(args):
    g = _read_graph(args)
    h = sparsity.find_spanning_d_tight_Kd2_free(g, args.d, args.budget)
    _emit({"found": h is not None, "d": args.d, "subgraph": None if h is None else h.to_dict()})
    return 0


def cmd_cover_rank(args):
    g = _read_graph(args)
    rep = matroid.rank_by_cover(g, args.d, args.t, args.budget)
    _emit(rep.to_dict())
    return 0


def cmd_thin_value(args):
    g = _read_graph(args)
    cover = matroid.ThinCover2D.from_dict(_read_json_arg(args.cover), g)
    _emit({"value": matroid.thin_cover_value(g, cover), "cover": cover.to_dict()})
    return 0


def cmd_generate(args):
    g = constructions.generate(args.family, k=args.k, t=args.t, s=args.s, n=args.n,
                               loops=args.loops)
    _emit(g.to_dict())
    return 0


def cmd_verify(args):
    th = args.theorem
    if th == "d_geq2":
        run = harness.verify_thm_d_geq2(args.d, args.t, args.n_max, args.samples, args.seed,
                                        trials=args.trials)
    elif th == "weak6":
        run = harness.verify_thm_weak6(args.n_max, args.samples, args.seed, trials=args.trials)
    else:
        run = harness.verify_thm_main(args.n_max, args.samples, args.seed, trials=args.trials)
    _emit(run.to_dict())
    return 0 if run.ok else 1


def cmd_sweep(args):
    run = harness.cross_oracle_sweep(args.d, args.t, args.n_max, args.max_loops, args.trials,
                                     args.seed)
    _emit(run.to_dict())
    return 0 if run.ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lcrig", description=__doc__.split("\n\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--input", "-i", help="graph JSON file (default: stdin)")
        sp.set_defaults(fn=fn)
        return sp

    def rank_opts(sp):
        sp.add_argument("--trials", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)

    for name, fn, help_ in [("rank", cmd_rank, "generic rank of the rigidity matrix"),
                            ("rigid", cmd_rigid, "is the graph L_d-rigid"),
                            ("redundant", cmd_redundant, "is the graph redundantly L_d-rigid")]:
        sp = graph_cmd(name, fn, help_)
        sp.add_argument("-d", type=int, required=True)
        rank_opts(sp)

    sp = graph_cmd("global2", cmd_global2, "global L_2-rigidity characterisation")
    rank_opts(sp)

    sp = graph_cmd("balanced", cmd_balanced, "balancedness predicates")
    sp.add_argument("--kind", choices=balancedness.KINDS, default="k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None)

    sp = graph_cmd("sparse", cmd_sparse, "t-sparsity by pebble game")
    sp.add_argument("-t", type=int, required=True)

    sp = graph_cmd("tight-witness", cmd_tight_witness, "t-tight graph on a looped 2t-clique")
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--S", help="comma-separated clique vertices of the input graph")

    sp = graph_cmd("dtight-search", cmd_dtight_search, "spanning d-tight K_{d+2}-free subgraph")
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None)

    sp = graph_cmd("cover-rank", cmd_cover_rank, "rank of G^[d-t] from the cover formula")
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None)

    sp = graph_cmd("thin-value", cmd_thin_value, "value of a 1-thin cover (plane rank bound)")
    sp.add_argument("--cover", required=True,
                    help='JSON {"X0": [..], "parts": [[..]], "Lprime": [..]} or a file path')

    sp = sub.add_parser("generate", help="emit a named graph")
    sp.add_argument("--family", required=True, choices=constructions.FAMILIES)
    sp.add_argument("--k", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--loops", type=int, default=0, help="loops per vertex (Kn only)")
    sp.set_defaults(fn=cmd_generate)

    sp = sub.add_parser("verify", help="sampled counterexample hunt for a theorem")
    sp.add_argument("--theorem", choices=("d_geq2", "weak6", "main"), required=True)
    sp.add_argument("-d", type=int, default=2)
    sp.add_argument("-t", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=7)
    sp.add_argument("--samples", type=int, default=30)
    rank_opts(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("sweep", help="exhaustive cover formula vs matrix rank")
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--n-max", type=int, default=5)
    sp.add_argument("--max-loops", type=int, default=1)
    rank_opts(sp)
    sp.set_defaults(fn=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    log.info("rank backend: %s", active_backend())
    if getattr(args, "seed", None) is not None:
        log.info("seed: %s", args.seed)
    try:
        return args.fn(args)
    except (UsageError, LCRigidityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
