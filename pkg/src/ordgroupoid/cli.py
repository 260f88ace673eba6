"""Command-line front end.

Every verdict printed here is produced by a library call that can be
reproduced directly.  JSON and DOT artifacts are byte-identical across
runs on the same input: all orderings are canonical and timing is written
to stderr only, never into artifacts.

Exit codes: 0 success, 1 property violation found, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import completion, corpus, graphs, groupoids, ideals, semigroups


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _emit(args, report, dot=None):
    if getattr(args, "json", None):
        _write(args.json, json.dumps(report, indent=2, sort_keys=True) + "\n")
    if getattr(args, "dot", None):
        if dot is None:
            print("no DOT artifact for this subcommand", file=sys.stderr)
        else:
            _write(args.dot, dot)
    for key in sorted(report):
        print(f"{key}: {report[key]}")


def _names(S, idx_iter):
    return [S.names[k] for k in sorted(idx_iter)]


# ---------------------------------------------------------------------------
# semigroup pipelines
# ---------------------------------------------------------------------------


def _sg_check(S, args):
    report = {
        "valid": True,
        "n": S.n,
        "zero": None if S.zero is None else S.names[S.zero],
        "idempotents": _names(S, S.idempotent_set),
        "minimal": _names(S, S.minimal_set),
    }
    return 0, report, semigroups.order_hasse_dot(S)


def _sg_order(S, args):
    rel = semigroups.natural_order(S)
    pairs = sorted(
        [S.names[a], S.names[b]] for (a, b) in rel.pairs if a != b
    )
    report = {"strict_pairs": pairs, "n": S.n}
    return 0, report, semigroups.order_hasse_dot(S)


def _sg_props(S, args):
    rep = semigroups.classify(S)
    return 0, rep.as_dict(), semigroups.order_hasse_dot(S)


def _sg_groupoid(S, args):
    Gu = completion.universal_groupoid(S)
    Gm = completion.minimal_groupoid(S)
    report = {
        "universal_size": len(Gu),
        "universal_units": _names(S, Gu.units),
        "minimal_size": len(Gm),
        "minimal_units": _names(S, Gm.units),
        "invariant_unit_subsets_of_minimal": [
            _names(S, E) for E in groupoids.invariant_unit_subsets(Gm)
        ],
    }
    return 0, report, groupoids.orbit_graph_dot(Gm)


def _sg_quotient(S, args):
    q = completion.quotient_tilde(S)
    report = {
        "size": q.semigroup.n,
        "classes": [[S.names[x] for x in cls] for cls in q.classes],
    }
    return 0, report, semigroups.order_hasse_dot(q.semigroup)


def _sg_ideals(S, args):
    warnings = []
    lat = ideals.enumerate_ideal_lattice(S, warn=warnings.append)
    report = {
        "nodes": [[S.names[p] for p in sorted(node)] for node in lat.nodes],
        "node_count": len(lat.nodes),
        "warnings": warnings,
    }
    flags = semigroups.classify(S)
    report["LC"] = flags.LC
    if flags.LC:
        su, si, verdict = ideals.lattice_maps(S)
        report["lattice_maps_ok"] = verdict.ok
        if not verdict.ok:
            report["lattice_maps_detail"] = verdict.detail
            return 1, report, ideals.ideal_lattice_dot(S, lat)
    else:
        report["lattice_maps_ok"] = "skipped: LC fails"
    return 0, report, ideals.ideal_lattice_dot(S, lat)


def _sg_minimal(S, args):
    rep = ideals.minimality_report(S, force=args.force)
    report = {
        "no_nontrivial_ideals": rep.no_nontrivial_ideals,
        "condition_ii": rep.condition_ii,
        "groupoid_minimal": rep.groupoid_minimal,
        "all_equal": rep.all_equal,
        "minimal": rep.all_equal and rep.groupoid_minimal,
    }
    return (0 if rep.all_equal else 1), report, None


def _sg_simplicity(S, args):
    rep = ideals.simplicity_report(
        S,
        assume_essentially_principal=args.assume_essentially_principal,
        force=args.force,
    )
    report = {
        "verdict": rep.verdict,
        "condition": rep.condition,
        "minimal": rep.minimal,
        "principal": rep.principal,
        "essentially_principal": rep.essentially_principal,
        "assumed": rep.assumed,
    }
    return 0, report, None


_SG_DISPATCH = {
    "check": _sg_check,
    "order": _sg_order,
    "props": _sg_props,
    "groupoid": _sg_groupoid,
    "quotient": _sg_quotient,
    "ideals": _sg_ideals,
    "minimal": _sg_minimal,
    "simplicity": _sg_simplicity,
}


def cmd_semigroup(args):
    try:
        S = semigroups.load_cayley(args.path)
    except (OSError, semigroups.SemigroupError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    try:
        code, report, dot = _SG_DISPATCH[args.subcommand](S, args)
    except ideals.LCViolated as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return 1
    report["input"] = args.path
    report["subcommand"] = args.subcommand
    _emit(args, report, dot)
    return code


# ---------------------------------------------------------------------------
# graph pipelines
# ---------------------------------------------------------------------------


def _pair_name(T, k):
    e = T.elements[k]
    if e is graphs.ZERO:
        return "0"
    return f"({e.alpha.start}:{','.join(e.alpha.edges)}|{e.beta.start}:{','.join(e.beta.edges)})"


def _g_check(g, args):
    report = {
        "valid": True,
        "vertices": list(g.vertices),
        "edges": [[e, g.src[e], g.dst[e]] for e in g.edges],
    }
    return 0, report, graphs.graph_dot(g)


def _g_semigroup(g, args):
    T = graphs.graph_semigroup(g, args.max_len)
    mismatch = None
    for i in range(len(T.elements)):
        for j in range(len(T.elements)):
            if T.leq(i, j) != graphs.pair_leq_mu(
                g, T.elements[i], T.elements[j]
            ):
                mismatch = (_pair_name(T, i), _pair_name(T, j))
                break
        if mismatch:
            break
    report = {
        "maxlen": args.max_len,
        "elements": len(T.elements),
        "idempotents": len(T.idempotent_indices()),
        "order_matches_prefix_characterization": mismatch is None,
    }
    if mismatch:
        report["order_mismatch_witness"] = list(mismatch)
        return 1, report, None
    return 0, report, None


def _g_groupoid(g, args):
    triples = graphs.enumerate_triples(g, args.prefix_max, args.cycle_max, args.k_max)
    viol = graphs.check_triple_axioms(g, triples[:60])
    report = {
        "lassos": len(graphs.enumerate_lassos(g, args.prefix_max, args.cycle_max)),
        "triples": len(triples),
        "axioms_ok_on_sample": viol is None,
    }
    if viol is not None:
        report["axiom_violation"] = viol[0]
        return 1, report, None
    return 0, report, None


def _g_hs_lattice(g, args):
    lat = graphs.hereditary_saturated_lattice(g)
    report = {
        "nodes": [sorted(H) for H in lat.nodes],
        "node_count": len(lat.nodes),
    }
    return 0, report, graphs.hs_lattice_dot(g, lat)


def _g_iso(g, args):
    rep = graphs.graphiso_check(
        g,
        prefix_max=args.prefix_max,
        cycle_max=args.cycle_max,
        k_max=args.k_max,
        hom_pairs_min=args.hom_pairs_min,
    )
    report = {
        "ok": rep.ok,
        "lassos": rep.lassos,
        "triples": rep.triples,
        "roundtrips": rep.roundtrips,
        "hom_pairs": rep.hom_pairs,
    }
    if not rep.ok:
        report["detail"] = rep.detail
    return (0 if rep.ok else 1), report, None


def _g_ideals(g, args):
    try:
        rep = graphs.lemma_it_check(g, args.max_len)
    except graphs.NotStabilized as exc:
        report = {
            "stabilized": False,
            "at_maxlen": repr(exc.at_maxlen),
            "at_next": repr(exc.at_next),
        }
        return 1, report, None
    simp = graphs.graph_simplicity_report(g)
    report = {
        "maxlen": args.max_len,
        "stabilized": True,
        "bijection_ok": rep.ok,
        "ideal_nodes": rep.ideal_nodes,
        "hs_nodes": rep.hs_nodes,
        "vertex_images": [sorted(H) for H in rep.vertex_images],
        "cycle_exit": simp.cycles_have_exits,
        "simplicity_verdict": simp.verdict,
        "simplicity_note": simp.note,
    }
    lat = graphs.hereditary_saturated_lattice(g)
    return (0 if rep.ok else 1), report, graphs.hs_lattice_dot(g, lat)


_G_DISPATCH = {
    "check": _g_check,
    "semigroup": _g_semigroup,
    "groupoid": _g_groupoid,
    "hs-lattice": _g_hs_lattice,
    "iso": _g_iso,
    "ideals": _g_ideals,
}


def cmd_graph(args):
    try:
        with open(args.path) as fh:
            g = graphs.parse_edge_list(fh.read())
    except (OSError, graphs.GraphError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    try:
        code, report, dot = _G_DISPATCH[args.subcommand](g, args)
    except graphs.BoundTooSmall as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return 1
    report["input"] = args.path
    report["subcommand"] = args.subcommand
    _emit(args, report, dot)
    return code


# ---------------------------------------------------------------------------
# corpus matrix
# ---------------------------------------------------------------------------


def cmd_corpus(args):
    rows = []
    ok_all = True
    for name, S in corpus.corpus().items():
        try:
            flags = semigroups.classify(S)
            cell = dict(n=S.n, valid=True, LC=flags.LC)
            if flags.LC:
                _, _, verdict = ideals.lattice_maps(S)
                cell["lattice_maps"] = verdict.ok
                ok_all = ok_all and verdict.ok
            rows.append((f"semigroup:{name}", True, cell))
        except (AssertionError, semigroups.SemigroupError, ideals.IdealError) as exc:
            ok_all = False
            rows.append((f"semigroup:{name}", False, {"error": str(exc)}))
    for name, edges in corpus.graph_corpus().items():
        try:
            g = graphs.load_graph(edges)
            lat = graphs.hereditary_saturated_lattice(g)
            simp = graphs.graph_simplicity_report(g)
            cell = dict(
                hs_nodes=len(lat.nodes),
                cycle_exit=simp.cycles_have_exits,
                verdict=simp.verdict,
            )
            rows.append((f"graph:{name}", True, cell))
        except graphs.GraphError as exc:
            ok_all = False
            rows.append((f"graph:{name}", False, {"error": str(exc)}))
    width = max(len(r[0]) for r in rows)
    for label, passed, cell in rows:
        mark = "PASS" if passed else "FAIL"
        detail = " ".join(f"{k}={v}" for k, v in cell.items())
        print(f"{label:<{width}}  {mark}  {detail}")
    if getattr(args, "json", None):
        report = {label: dict(cell, passed=passed) for label, passed, cell in rows}
        _write(args.json, json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0 if ok_all else 1


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="ordgroupoid",
        description="order-based groupoids from finite inverse semigroups",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sg = sub.add_parser("semigroup", help="analyze a Cayley-table file")
    sg.add_argument("path")
    sg.add_argument("subcommand", choices=sorted(_SG_DISPATCH))
    sg.add_argument("--json", metavar="FILE", help="write the report as JSON")
    sg.add_argument("--dot", metavar="FILE", help="write the DOT artifact")
    sg.add_argument(
        "--assume-essentially-principal",
        action="store_true",
        help="treat the groupoid as essentially principal in simplicity verdicts",
    )
    sg.add_argument(
        "--force",
        action="store_true",
        help="run lattice pipelines even when the LC precondition fails",
    )
    sg.set_defaults(func=cmd_semigroup)

    gr = sub.add_parser("graph", help="analyze an edge-list file")
    gr.add_argument("path")
    gr.add_argument("subcommand", choices=sorted(_G_DISPATCH))
    gr.add_argument("--json", metavar="FILE")
    gr.add_argument("--dot", metavar="FILE")
    gr.add_argument("--max-len", type=int, default=3, help="leg-length cap (default 3)")
    gr.add_argument("--prefix-max", type=int, default=3, help="lasso prefix cap")
    gr.add_argument("--cycle-max", type=int, default=2, help="lasso cycle cap")
    gr.add_argument("--k-max", type=int, default=4, help="lag cap for triples")
    gr.add_argument(
        "--hom-pairs-min",
        type=int,
        default=0,
        help="fail unless at least this many composable pairs are checked",
    )
    gr.set_defaults(func=cmd_graph)

    co = sub.add_parser("corpus", help="run the bundled corpus and print a matrix")
    co.add_argument("--json", metavar="FILE")
    co.set_defaults(func=cmd_corpus)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    t0 = time.monotonic()
    code = args.func(args)
    print(f"elapsed: {time.monotonic() - t0:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
