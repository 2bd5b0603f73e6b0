"""Command-line front end: solvers, formulas, certificates, and reports.

Exit codes: 0 success, 1 computation refused as infeasible (size caps,
memo cap), 2 usage error. Output is deterministic for a fixed argv.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import families, spectral, threshold
from .contraction import bipartite_contraction, max_matching
from .game import (
    CacheLimitError,
    InfeasibleError,
    TokenSpend,
    z_number,
    zq_chain,
    zq_number,
)
from .graphs import Graph, mask_of, parse_edge_list, parse_graph6, to_graph6, vertices_of

GAME_GUARD_N = 16


class UsageError(Exception):
    pass


def _read_graph(args) -> tuple[Graph, dict]:
    sources = [s for s in ("graph6", "edges_file", "seq") if getattr(args, s, None)]
    if len(sources) != 1:
        raise UsageError("exactly one of --graph6 / --edges-file / --seq is required")
    kind = sources[0]
    if kind == "graph6":
        text = args.graph6
        if text == "-":
            text = sys.stdin.readline()
        return parse_graph6(text), {"graph6": text.strip()}
    if kind == "edges_file":
        if args.edges_file == "-":
            text = sys.stdin.read()
        else:
            with open(args.edges_file, "r", encoding="utf-8") as fh:
                text = fh.read()
        return parse_edge_list(text), {"edges_file": args.edges_file}
    seq = threshold.parse_creation_sequence(args.seq)
    return threshold.build_threshold_graph(seq), {"seq": seq.to_bits()}


def _cache_mb() -> int | None:
    raw = os.environ.get("ZQ_CACHE_MB")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"ZQ_CACHE_MB must be an integer, got {raw!r}") from exc


def _render_strategy(strategy, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for move in strategy:
        if isinstance(move, TokenSpend):
            lines.append(f"{pad}spend token on vertex {move.vertex}")
        else:
            fam = " | ".join(str(vertices_of(c)) for c in move.family)
            lines.append(f"{pad}offer components {fam}")
            # responses with identical continuations are printed once
            groups: dict[tuple[str, ...], list] = {}
            conts: dict[tuple[str, ...], tuple] = {}
            for resp, cont in move.responses.items():
                key = tuple(_render_strategy(cont, indent + 2))
                groups.setdefault(key, []).append(resp)
                conts[key] = cont
            for key, resps in sorted(groups.items(), key=lambda kv: sorted(kv[1])[0]):
                labels = ", ".join(
                    "{" + "; ".join(str(vertices_of(c)) for c in resp) + "}"
                    for resp in sorted(resps)
                )
                lines.append(f"{pad}  if oracle returns {labels}:")
                lines.extend(key)
    return lines or [f"{pad}(already coloured)"]


def _strategy_json(strategy):
    out = []
    for move in strategy:
        if isinstance(move, TokenSpend):
            out.append({"type": "token", "vertex": move.vertex})
        else:
            out.append(
                {
                    "type": "oracle",
                    "family": [vertices_of(c) for c in move.family],
                    "responses": {
                        ",".join(str(move.family.index(c)) for c in resp): _strategy_json(cont)
                        for resp, cont in sorted(move.responses.items())
                    },
                }
            )
    return out


def _csv_cell(value) -> str:
    s = str(value)
    if "," in s or '"' in s or "\n" in s:
        s = '"' + s.replace('"', '""') + '"'
    return s


def _emit(args, record: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(record, indent=2))
    elif args.format == "csv":
        keys = [k for k, v in record.items() if not isinstance(v, (dict, list))]
        print(",".join(keys))
        print(",".join(_csv_cell(record[k]) for k in keys))
    else:
        print("\n".join(text_lines))


def _cmd_compute(args) -> int:
    g, source = _read_graph(args)
    if args.q is None and not args.chain and not args.z:
        raise UsageError("compute needs --q, --chain, or --z")
    if not args.z and g.n > GAME_GUARD_N and not args.force:
        print(
            f"refusing exact game solve for n={g.n} > {GAME_GUARD_N} "
            f"(up to 2^{g.n} = {2**g.n} states); pass --force to override",
            file=sys.stderr,
        )
        return 1
    record: dict = {"input": source}
    lines = [f"n: {g.n}"]
    if args.z:
        value = z_number(g)
        record.update({"q": None, "value": value})
        lines.append(f"z: {value}")
    elif args.chain is not None:
        chain = zq_chain(g, args.chain, cache_mb=_cache_mb())
        record.update({"q": f"0..{args.chain}", "value": chain})
        lines.append(f"chain: {chain}")
    else:
        res = zq_number(g, args.q, build_strategy=args.trace, cache_mb=_cache_mb())
        record.update({"q": args.q, "value": res.value})
        lines += [f"q: {args.q}", f"value: {res.value}"]
        if args.trace:
            record["strategy"] = _strategy_json(res.strategy)
            lines.append("strategy:")
            lines += _render_strategy(res.strategy, 1)
    _emit(args, record, lines)
    return 0


def _cmd_threshold(args) -> int:
    seq = threshold.parse_creation_sequence(args.seq)
    if args.q is None:
        raise UsageError("threshold needs --q")
    value = threshold.zq_formula(seq, args.q)
    record = {"input": {"seq": seq.to_bits()}, "q": args.q, "value": value}
    lines = [f"seq: {seq.to_bits()}", f"q: {args.q}", f"formula: {value}"]
    lines.append(f"z_classical: {threshold.z_classical(seq)}")
    if args.verify:
        g = threshold.build_threshold_graph(seq)
        if g.n > GAME_GUARD_N and not args.force:
            print(f"refusing exact verification for n={g.n}; pass --force", file=sys.stderr)
            return 1
        game = zq_number(g, args.q, build_strategy=False, cache_mb=_cache_mb()).value
        verdict = "PASS" if game == value else "FAIL"
        record.update({"game": game, "verify": verdict})
        lines += [f"game: {game}", f"verify: {verdict}"]
    if args.certificate:
        if not 1 <= args.q <= seq.s:
            raise UsageError(f"--certificate needs 1 <= q <= s = {seq.s}")
        m = threshold.certificate_matrix(seq, args.q)
        record["certificate"] = [list(map(float, row)) for row in m]
        inert = spectral.inertia(m)
        record["inertia"] = inert.as_tuple()
        lines.append(f"certificate inertia (neg, zero, pos): {inert.as_tuple()}")
        lines += _matrix_lines(m)
    _emit(args, record, lines)
    return 0


def _matrix_lines(m: np.ndarray) -> list[str]:
    return [" ".join(f"{x:.6g}" for x in row) for row in np.asarray(m)]


def _cmd_contract(args) -> int:
    g, source = _read_graph(args)
    try:
        coloured = mask_of(int(t) for t in args.coloured.split(",") if t != "")
    except ValueError as exc:
        raise UsageError(f"bad --coloured list: {exc}") from exc
    cb = bipartite_contraction(g, coloured)
    matching = max_matching(cb)
    record = {
        "input": source,
        "coloured": vertices_of(coloured),
        "coloured_nodes": [vertices_of(c) for c in cb.coloured_nodes],
        "uncoloured_nodes": [vertices_of(c) for c in cb.uncoloured_nodes],
        "multiplicity": [list(row) for row in cb.multiplicity],
        "max_matching": matching,
    }
    lines = [
        f"coloured nodes: {[vertices_of(c) for c in cb.coloured_nodes]}",
        f"uncoloured nodes: {[vertices_of(c) for c in cb.uncoloured_nodes]}",
        "multiplicities:",
    ]
    lines += ["  " + " ".join(map(str, row)) for row in cb.multiplicity]
    lines.append(f"max matching: {matching}")
    _emit(args, record, lines)
    return 0


def _cmd_certify(args) -> int:
    name = args.name
    if name == "book":
        m = spectral.book_certificate(args.n)
        g = families.book(args.n)
        q = 1
    elif name == "kneser2":
        m = spectral.kneser_certificate(args.n)
        g = families.kneser2(args.n)
        q = 1
    elif name == "bipartite_prism":
        if args.m is None:
            raise UsageError("bipartite_prism certificate needs --m")
        m = spectral.bipartite_prism_certificate(args.n, args.m)
        g = families.bipartite_prism(args.n, args.m)
        q = 1
    elif name == "threshold":
        if not args.seq or args.q is None:
            raise UsageError("threshold certificate needs --seq and --q")
        seq = threshold.parse_creation_sequence(args.seq)
        m = threshold.certificate_matrix(seq, args.q)
        g = threshold.build_threshold_graph(seq)
        q = args.q
    elif name == "srg":
        g, _ = _read_graph(args)
        if args.theta is None or args.tau is None:
            raise UsageError("srg certificate needs --theta and --tau")
        psd, m = spectral.srg_certificate(g, args.theta, args.tau)
        q = 1
        if args.psd:
            m, q = psd, 0
    else:
        raise UsageError(f"unknown certificate family {name!r}")
    inert = spectral.inertia(m)
    ok = spectral.in_Sq(m, g, q)
    record = {
        "input": {"certificate": name},
        "q": q,
        "value": inert.n_zero,
        "inertia": inert.as_tuple(),
        "edge_support_ok": ok,
    }
    lines = [
        f"certificate: {name}",
        f"inertia (neg, zero, pos): {inert.as_tuple()}",
        f"nullity: {inert.n_zero}",
        f"edge support + q negative eigenvalues: {'OK' if ok else 'MISMATCH'}",
    ]
    if args.matrix:
        record["matrix"] = [list(map(float, row)) for row in m]
        lines += _matrix_lines(m)
    if args.matrix and args.format == "csv":
        _emit(args, record, lines)
        for row in np.asarray(m):
            print(",".join(f"{x:.12g}" for x in row))
        return 0
    _emit(args, record, lines)
    return 0


def _cmd_family(args) -> int:
    spec = _family_spec(args)
    g = families.generate(spec)
    record: dict = {"input": {"family": spec.label(), "n_vertices": g.n}}
    lines = [f"family: {spec.label()}", f"vertices: {g.n}", f"edges: {g.num_edges()}"]
    anchors = []
    if args.chain is not None:
        if g.n > GAME_GUARD_N and not args.force:
            print(f"refusing exact game solve for n={g.n}; pass --force", file=sys.stderr)
            return 1
        chain = zq_chain(g, args.chain, cache_mb=_cache_mb())
        record.update({"q": f"0..{args.chain}", "value": chain})
        lines.append(f"chain: {chain}")
        anchors = [kv.anchor for q in range(args.chain + 1)
                   for kv in [families.lookup(spec, q)] if kv]
    elif args.q is not None:
        if g.n > GAME_GUARD_N and not args.force:
            print(f"refusing exact game solve for n={g.n}; pass --force", file=sys.stderr)
            return 1
        value = zq_number(g, args.q, build_strategy=False, cache_mb=_cache_mb()).value
        record.update({"q": args.q, "value": value})
        lines.append(f"Z_{args.q}: {value}")
        kv = families.lookup(spec, args.q)
        anchors = [kv.anchor] if kv else []
    elif args.z:
        value = z_number(g, max_subsets=families.Z_SUBSET_BUDGET)
        record.update({"q": None, "value": value})
        lines.append(f"z: {value}")
        kv = families.lookup(spec, None)
        anchors = [kv.anchor] if kv else []
    else:
        record["graph6"] = to_graph6(g)
        lines.append(f"graph6: {record['graph6']}")
    if anchors:
        uniq = sorted(set(anchors))
        record["anchors"] = uniq
        lines += [f"known: {a}" for a in uniq]
    _emit(args, record, lines)
    return 0


def _family_spec(args) -> families.FamilySpec:
    params = [p for p in (args.n, args.m) if p is not None]
    try:
        return families.FamilySpec(args.name, tuple(params))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_reproduce(args) -> int:
    rows = families.reproduce_report(args.max_n, jobs=args.jobs)
    print(families.render_report(rows, args.format), end="")
    return 0


def _cmd_probe(args) -> int:
    if args.name == "kneser_structure":
        if args.n is None:
            raise UsageError("kneser_structure probe needs --n")
        rep = families.kneser_structure_check(args.n, sample=args.sample, seed=args.seed)
        if args.format == "json":
            print(json.dumps({
                "input": {"probe": "kneser_structure", "n": rep.n},
                "mode": rep.mode,
                "subsets_checked": rep.subsets_checked,
                "violations": list(rep.violations),
            }, indent=2))
        else:
            print(f"kneser structure n={rep.n}: {rep.mode}, {rep.subsets_checked} subsets, "
                  f"{len(rep.violations)} violations")
            for v in rep.violations:
                print("  " + v)
        return 0
    params = tuple(p for p in (args.n, args.m) if p is not None)
    rep = families.probe_conjecture(args.name, params)
    if args.format == "json":
        print(json.dumps({
            "input": {"probe": rep.name, "params": list(rep.params)},
            "lines": [
                {"label": ln.label, "conjectured": ln.conjectured,
                 "computed": ln.computed, "agree": ln.agree}
                for ln in rep.lines
            ],
        }, indent=2))
    else:
        print(rep.render(), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zqforce",
        description="Exact zero forcing, PSD zero forcing, and oracle-game Z_q solvers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_inputs(p):
        p.add_argument("--graph6", help="graph6 string, or '-' to read one line from stdin")
        p.add_argument("--edges-file", help="edge list file ('n m' header), or '-' for stdin")
        p.add_argument("--seq", help="threshold creation sequence (raw 0/1 or run-length)")

    def add_format(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("compute", help="exact Z_q / chain for a graph")
    add_graph_inputs(p)
    p.add_argument("--q", type=int)
    p.add_argument("--chain", type=int, metavar="Q_MAX")
    p.add_argument("--z", action="store_true", help="classical zero forcing number only")
    p.add_argument("--trace", action="store_true", help="print the move strategy")
    p.add_argument("--force", action="store_true", help="override the size guard")
    add_format(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("threshold", help="closed-form Z_q of a creation sequence")
    p.add_argument("--seq", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="cross-check with the game solver")
    p.add_argument("--certificate", action="store_true", help="print the nullity certificate")
    p.add_argument("--force", action="store_true")
    add_format(p)
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("contract", help="bipartite contraction and max matching")
    add_graph_inputs(p)
    p.add_argument("--coloured", required=True, help="comma-separated coloured vertices")
    add_format(p)
    p.set_defaults(func=_cmd_contract)

    p = sub.add_parser("certify", help="matrix certificates for named families")
    p.add_argument("--name", required=True,
                   choices=("book", "kneser2", "bipartite_prism", "threshold", "srg"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--seq")
    p.add_argument("--q", type=int)
    p.add_argument("--theta", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--psd", action="store_true", help="emit the PSD half of the srg pair")
    p.add_argument("--matrix", action="store_true", help="print matrix entries")
    p.add_argument("--graph6")
    p.add_argument("--edges-file")
    add_format(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("family", help="generate a named family and solve it")
    p.add_argument("--name", required=True, choices=sorted(families._FAMILIES))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--chain", type=int, metavar="Q_MAX")
    p.add_argument("--z", action="store_true")
    p.add_argument("--force", action="store_true")
    add_format(p)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("reproduce", help="solve the registry and report PASS/FAIL")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    add_format(p)
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("probe", help="conjecture probes and structure checks")
    p.add_argument("--name", required=True,
                   choices=("bipartite_prism", "multipartite", "kneser_z0", "kneser_structure"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    add_format(p)
    p.set_defaults(func=_cmd_probe)
    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InfeasibleError, CacheLimitError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
