"""Command-line entry point ``clusterfn``.

Exit status is 0 on success, 1 on a data error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import __version__
from .active import adjust_ground_set, expected_mean_degree, memoryless_active, sample_active
from .clustering import STRATEGIES, clustering_profile
from .graph import GraphError, project_bipartite
from .inhomogeneous import memoryless_inhomogeneous, sample_inhomogeneous
from .io import (
    DataError,
    parse_bipartite,
    parse_edge_list,
    read_bipartite,
    read_sizes,
    write_bipartite,
    write_edge_list,
    write_profile,
    _open_text,
)
from .pmf import DiscretePMF, PMFError
from .sampling import subgraph_degree_biased, subgraph_degree_cap, subgraph_uniform
from .theory import (
    ActiveTheoryInputs,
    InhomTheoryInputs,
    TheoryError,
    asymptotic_degree_pmf,
    moments_from_size_pmf,
    remark1_predict,
    theorem1_predict,
    theorem2_predict,
    theorem3_predict,
)

DATA_ERRORS = (DataError, GraphError, PMFError, TheoryError, ValueError, OSError)


def _pmf(text: str) -> DiscretePMF:
    """``value:prob,...`` or ``@file`` with one ``value prob`` pair per line."""
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            items = [ln.split("#", 1)[0].split() for ln in fh]
        text = ",".join(f"{a}:{b}" for a, b in (it for it in items if it))
    return DiscretePMF.parse(text)


def _real(text: str) -> float:
    """A nonnegative real; ``inf`` is accepted where a limit may be infinite."""
    return math.inf if text.lower() in ("inf", "infinity") else float(text)


def _read_any(path: str, kind: str):
    """Read a graph or bipartite file; returns ``(graph, incidence_or_None, metadata)``."""
    with _open_text(path) as fh:
        text = fh.read()
    lines = text.splitlines(keepends=True)
    if kind == "auto":
        kind = "graph"
        for line in lines[:1]:
            if line.startswith("# clusterfn "):
                kind = json.loads(line[len("# clusterfn "):]).get("kind", "graph")
    if kind == "bipartite":
        inc, meta = parse_bipartite(lines)
        return project_bipartite(inc), inc, meta
    g, meta = parse_edge_list(lines)
    return g, None, meta


def _write_table(rows, columns, fmt: str, out, metadata=None) -> None:
    with _open_text(out, "w") as fh:
        if fmt == "json":
            payload = {"rows": [dict(zip(columns, r)) for r in rows]}
            if metadata:
                payload["metadata"] = metadata
            fh.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
            return
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow("" if v is None else (format(v, ".12g") if isinstance(v, float) else v) for v in r)


# ----------------------------------------------------------------- commands

def cmd_clustfn(args) -> int:
    g, inc, meta = _read_any(args.input, args.input_kind)
    metadata = {"input": {"n": g.n, "edges": g.num_edges}}
    if inc is not None:
        metadata["input"].update(m=inc.m, M=inc.total_links)
    if meta:
        metadata["source"] = meta
    profile = clustering_profile(g, args.strategy, threads=args.threads, backend=args.backend,
                                 metadata=metadata)
    write_profile(profile, args.output, args.format)
    return 0


def _emit_generated(args, inc, meta) -> int:
    meta = dict(meta, seed=args.seed)
    if inc.clamped:
        meta["clamped"] = inc.clamped
    if args.clamp_report:
        print(f"clamped cells: {inc.clamped}", file=sys.stderr)
    if args.as_graph:
        write_edge_list(project_bipartite(inc), args.output, dict(meta, kind="graph"))
    else:
        write_bipartite(inc, args.output, dict(meta, kind="bipartite"))
    return 0


def cmd_gen_active(args) -> int:
    P = _pmf(args.pmf)
    inc = sample_active(args.n, args.m, P, args.seed, threads=args.threads)
    return _emit_generated(args, inc, {"model": "active", "n": args.n, "m": args.m, "pmf": str(P)})


def cmd_gen_inhom(args) -> int:
    P1, P2 = _pmf(args.pmf1), _pmf(args.pmf2)
    inc = sample_inhomogeneous(args.n, args.m, P1, P2, args.seed, fast=not args.no_fast,
                               threads=args.threads)
    return _emit_generated(args, inc, {"model": "inhomogeneous", "n": args.n, "m": args.m,
                                       "pmf1": str(P1), "pmf2": str(P2)})


def cmd_gen_memoryless_active(args) -> int:
    if args.bipartite:
        source = read_bipartite(args.bipartite)
        sizes = source.set_sizes
    else:
        source, sizes = None, read_sizes(args.sizes)
    params = {"model": "memoryless-active", "n": int(sizes.size)}
    if args.m_tilde is not None:
        m_tilde = args.m_tilde
    else:
        target = args.target_degree
        if target is None:
            if source is None:
                raise DataError("--adjusted with --sizes needs --target-degree")
            g = project_bipartite(source)
            target = 2 * g.num_edges / g.n
        m_tilde = adjust_ground_set(sizes, target)
        params["target_degree"] = target
    params["m_tilde"] = int(m_tilde)
    params["expected_mean_degree"] = expected_mean_degree(sizes, m_tilde)
    inc = memoryless_active(sizes, m_tilde, args.seed, threads=args.threads)
    return _emit_generated(args, inc, params)


def cmd_gen_memoryless_inhom(args) -> int:
    if args.bipartite:
        source = read_bipartite(args.bipartite)
        a, b = source.set_sizes, source.attribute_degrees
    else:
        if not (args.a and args.b):
            raise DataError("give --bipartite or both --a and --b")
        a, b = read_sizes(args.a), read_sizes(args.b)
    inc = memoryless_inhomogeneous(a, b, args.seed, fast=not args.no_fast, threads=args.threads)
    return _emit_generated(args, inc, {"model": "memoryless-inhomogeneous", "n": int(a.size),
                                       "m": int(b.size), "M": int(a.sum())})


def cmd_fit_adjust_m(args) -> int:
    sizes = read_sizes(args.sizes)
    m_prime = adjust_ground_set(sizes, args.target_degree)
    with _open_text(args.output, "w") as fh:
        fh.write(f"{m_prime}\n")
    return 0


def _active_inputs(args, *, infinite_beta: bool) -> ActiveTheoryInputs:
    if args.pmf:
        if args.n is None or args.m is None:
            raise DataError("--pmf needs -n and -m")
        base = moments_from_size_pmf(_pmf(args.pmf), args.n, args.m)
        z, beta_n = base.z, base.beta_n
    else:
        if args.z1 is None or args.z2 is None:
            raise DataError("give --z1 and --z2, or --pmf with -n and -m")
        z = {1: args.z1, 2: args.z2}
        beta_n = getattr(args, "beta_n", None)
    beta = math.inf if infinite_beta else (args.beta if args.beta is not None else beta_n)
    if beta is None:
        raise DataError("--beta is required")
    return ActiveTheoryInputs(z, beta, args.n, beta_n)


def cmd_predict(args) -> int:
    which = args.which
    if which == "t1":
        pred = theorem1_predict(_active_inputs(args, infinite_beta=False), alpha=args.alpha)
    elif which == "t2":
        inputs = _active_inputs(args, infinite_beta=True)
        if args.beta_n is not None:
            inputs = ActiveTheoryInputs(inputs.z, math.inf, inputs.n, args.beta_n)
        pred = theorem2_predict(inputs, args.beta_star)
    elif which == "t3":
        if args.beta is None:
            raise DataError("--beta is required")
        pred = theorem3_predict(InhomTheoryInputs.from_pmfs(_pmf(args.pmf1), _pmf(args.pmf2), args.beta),
                                args.n)
    else:
        z = {1: args.z1, 2: args.z2}
        if args.r > 2:
            if args.zr is None:
                raise DataError("remark1 needs --zr for r > 2")
            z[args.r] = args.zr
        value = remark1_predict(args.r, args.beta_star, ActiveTheoryInputs(z, math.inf))
        _write_table([(f"c({args.r},beta*)", value, "conjectural, heuristic c(r, beta*)")],
                     ("quantity", "value", "regime"), args.format, args.output)
        return 0
    _write_table(pred.rows(), ("quantity", "value", "regime"), args.format, args.output)
    return 0


def cmd_sample(args) -> int:
    g, _, meta = _read_any(args.input, args.input_kind)
    if args.how == "cap":
        if args.cap is None:
            raise DataError("sample cap needs --cap")
        sub, _ = subgraph_degree_cap(g, args.cap)
        params = {"cap": args.cap}
    elif args.how == "uniform":
        if args.n0 is None:
            raise DataError("sample uniform needs --n0")
        sub, _ = subgraph_uniform(g, args.n0, args.seed, cap=args.cap)
        params = {"n0": args.n0, "cap": args.cap, "seed": args.seed}
    else:
        if args.tau is None:
            raise DataError("sample biased needs --tau")
        sub, _ = subgraph_degree_biased(g, args.tau, args.seed)
        params = {"tau": args.tau, "seed": args.seed}
    write_edge_list(sub, args.output, {"kind": "graph", "sample": args.how, **params})
    return 0


def cmd_degree_dist(args) -> int:
    g, inc, _ = _read_any(args.input, args.input_kind)
    if args.pmf:
        if args.n is None or args.m is None:
            raise DataError("--pmf needs -n and -m")
        P, n, m = _pmf(args.pmf), args.n, args.m
    elif inc is not None:
        vals, counts = np.unique(inc.set_sizes, return_counts=True)
        P = DiscretePMF(tuple(int(v) for v in vals), tuple(counts / counts.sum()))
        n, m = inc.n, inc.m
    else:
        raise DataError("a plain graph needs --pmf, -n and -m for the predicted law")
    scale = math.sqrt(n / m)
    Z = DiscretePMF(tuple(float(v) * scale for v in P.values), P.probs)
    deg = g.degrees
    k_max = args.k_max if args.k_max is not None else int(deg.max())
    ks = np.arange(k_max + 1)
    emp = np.bincount(deg, minlength=k_max + 1)[: k_max + 1] / g.n
    pred = np.atleast_1d(asymptotic_degree_pmf(Z, ks))
    rows = [(int(k), float(e), float(p)) for k, e, p in zip(ks, emp, pred)]
    _write_table(rows, ("k", "empirical", "predicted"), args.format, args.output,
                 {"n": n, "m": m, "pmf": str(P)})
    return 0


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--strategy", choices=STRATEGIES, default="wedge_map")
    common.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")
    common.add_argument("-o", "--output", default="-", help="output path (default stdout)")

    parser = argparse.ArgumentParser(prog="clusterfn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("clustfn", parents=[common], help="clustering profile of a graph or bipartite file")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--input-kind", choices=("auto", "graph", "bipartite"), default="auto")
    p.set_defaults(func=cmd_clustfn)

    gen = sub.add_parser("gen", help="random intersection graph generators")
    gsub = gen.add_subparsers(dest="model", required=True)
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--as-graph", action="store_true", help="emit the projected graph instead of pairs")
    out.add_argument("--clamp-report", action="store_true", help="print the clamped-cell count to stderr")
    out.add_argument("--no-fast", action="store_true", help="plain Bernoulli trials for every cell")

    p = gsub.add_parser("active", parents=[common, out])
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--pmf", required=True, help="set-size law, value:prob[,value:prob...] or @file")
    p.set_defaults(func=cmd_gen_active)

    p = gsub.add_parser("inhom", parents=[common, out])
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--pmf1", required=True, help="vertex weight law")
    p.add_argument("--pmf2", required=True, help="attribute weight law")
    p.set_defaults(func=cmd_gen_inhom)

    p = gsub.add_parser("memoryless-active", parents=[common, out])
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--sizes", help="file of set sizes")
    src.add_argument("--bipartite", help="observed vertex-attribute pairs")
    gm = p.add_mutually_exclusive_group(required=True)
    gm.add_argument("--m-tilde", type=int, help="ground set size")
    gm.add_argument("--adjusted", action="store_true", help="fit the ground set size to a mean degree")
    p.add_argument("--target-degree", type=float, help="mean degree to match (default: observed)")
    p.set_defaults(func=cmd_gen_memoryless_active)

    p = gsub.add_parser("memoryless-inhom", parents=[common, out])
    p.add_argument("--bipartite", help="observed vertex-attribute pairs")
    p.add_argument("--a", help="file of vertex degrees a_i")
    p.add_argument("--b", help="file of attribute degrees b_j")
    p.set_defaults(func=cmd_gen_memoryless_inhom)

    fit = sub.add_parser("fit", help="fit surrogate parameters")
    fsub = fit.add_subparsers(dest="what", required=True)
    p = fsub.add_parser("adjust-m", parents=[common])
    p.add_argument("--sizes", required=True)
    p.add_argument("--target-degree", type=float, required=True)
    p.set_defaults(func=cmd_fit_adjust_m)

    pred = sub.add_parser("predict", help="leading-order theoretical predictions")
    psub = pred.add_subparsers(dest="which", required=True)
    moments = argparse.ArgumentParser(add_help=False)
    moments.add_argument("--z1", type=float)
    moments.add_argument("--z2", type=float)
    moments.add_argument("--pmf", help="set-size law; moments of X sqrt(n/m) are used")
    moments.add_argument("-n", type=int)
    moments.add_argument("-m", type=int)
    p = psub.add_parser("t1", parents=[common, moments])
    p.add_argument("--beta", type=float)
    p.add_argument("--alpha", type=float, help="override the limiting clustering coefficient")
    p = psub.add_parser("t2", parents=[common, moments])
    p.set_defaults(beta=None)
    p.add_argument("--beta-n", type=float, help="finite ratio m/n")
    p.add_argument("--beta-star", type=_real, required=True, help="limit of beta_n/n: 0, positive, or inf")
    p = psub.add_parser("t3", parents=[common])
    p.add_argument("--pmf1", required=True)
    p.add_argument("--pmf2", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("-n", type=int)
    p = psub.add_parser("remark1", parents=[common])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--beta-star", type=_real, required=True)
    p.add_argument("--z1", type=float, required=True)
    p.add_argument("--z2", type=float, required=True)
    p.add_argument("--zr", type=float)
    for name in ("t1", "t2", "t3", "remark1"):
        psub.choices[name].set_defaults(func=cmd_predict)

    samp = sub.add_parser("sample", help="induced-subgraph samplers")
    ssub = samp.add_subparsers(dest="how", required=True)
    for how in ("cap", "uniform", "biased"):
        p = ssub.add_parser(how, parents=[common])
        p.add_argument("input", nargs="?", default="-")
        p.add_argument("--input-kind", choices=("auto", "graph", "bipartite"), default="auto")
        p.add_argument("--cap", type=int, help="degree cap")
        if how == "uniform":
            p.add_argument("--n0", type=int, required=True)
        else:
            p.set_defaults(n0=None)
        if how == "biased":
            p.add_argument("--tau", type=float, required=True)
        else:
            p.set_defaults(tau=None)
        p.set_defaults(func=cmd_sample)

    p = sub.add_parser("degree-dist", parents=[common], help="empirical vs asymptotic degree law")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--input-kind", choices=("auto", "graph", "bipartite"), default="auto")
    p.add_argument("--pmf", help="set-size law of the model")
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("--k-max", type=int)
    p.set_defaults(func=cmd_degree_dist)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DATA_ERRORS as exc:
        print(f"clusterfn: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
