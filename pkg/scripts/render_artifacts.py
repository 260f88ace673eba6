#!/usr/bin/env python3
"""Render DOT and JSON artifacts for every bundled corpus entry.

Usage: python3 scripts/render_artifacts.py [outdir]   (default: artifacts/)

Output is deterministic: running twice produces byte-identical files.
"""

import pathlib
import sys

from ordgroupoid import cli

DATA = pathlib.Path(cli.__file__).parent / "data"


def main(outdir="artifacts"):
    out = pathlib.Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for sgp in sorted(DATA.glob("*.sgp")):
        for sub in ("check", "props", "groupoid"):
            cli.main([
                "semigroup", str(sgp), sub,
                "--json", str(out / f"{sgp.stem}-{sub}.json"),
                "--dot", str(out / f"{sgp.stem}-{sub}.dot"),
            ])
    for gph in sorted(DATA.glob("*.graph")):
        cli.main([
            "graph", str(gph), "hs-lattice",
            "--json", str(out / f"{gph.stem}-hs.json"),
            "--dot", str(out / f"{gph.stem}-hs.dot"),
        ])
    print(f"artifacts written to {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
