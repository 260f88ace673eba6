#!/usr/bin/env python3
"""Run the full corpus pipeline and print a summary matrix.

Equivalent to `ordgroupoid corpus`, plus per-entry detail: order sizes,
groupoid sizes, lattice nodes and simplicity verdicts.
"""

import sys

from ordgroupoid import completion, corpus, graphs, ideals, semigroups


def main():
    for name, S in corpus.corpus().items():
        flags = semigroups.classify(S)
        Gm = completion.minimal_groupoid(S)
        line = (
            f"{name:<12} n={S.n:<3} idem={len(S.idempotent_set):<3} "
            f"min={len(S.minimal_set):<3} |G_m|={len(Gm):<3} "
            f"E={int(flags.E_unitary)} 0E={int(flags.zero_E_unitary)} "
            f"L={int(flags.L)} T={int(flags.T)} LC={int(flags.LC)}"
        )
        if flags.LC:
            lat = ideals.enumerate_ideal_lattice(S)
            rep = ideals.simplicity_report(S)
            line += f" lattice={len(lat.nodes)} verdict={rep.verdict}"
        print(line)
    for name, edges in corpus.graph_corpus().items():
        g = graphs.load_graph(edges)
        lat = graphs.hereditary_saturated_lattice(g)
        rep = graphs.graph_simplicity_report(g)
        print(
            f"graph:{name:<12} V={len(g.vertices)} E={len(g.edges)} "
            f"hs-nodes={len(lat.nodes)} cycle-exit={int(rep.cycles_have_exits)} "
            f"verdict={rep.verdict}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
