"""Regenerate the graph6 fixtures under tests/fixtures.

graphs4.g6  all 11 graphs on 4 vertices, one per isomorphism class
graphs8.g6  all 12346 graphs on 8 vertices, one per isomorphism class
bad.g6      three lines, the third with nonzero padding bits

Classes are produced by vertex augmentation with canonical-code dedup; the
script refuses to write a file whose count differs from the published one.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from graphfactors.enumeration import GRAPH_COUNTS, graph_classes
from graphfactors.graph6 import write_graph6_file


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "tests" / "fixtures")
    ap.add_argument("--orders", type=int, nargs="+", default=[4, 8])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for n in args.orders:
        classes = graph_classes(n)
        if len(classes) != GRAPH_COUNTS[n]:
            raise SystemExit(f"order {n}: got {len(classes)} classes, expected {GRAPH_COUNTS[n]}")
        count = write_graph6_file(args.out / f"graphs{n}.g6", classes)
        print(f"graphs{n}.g6: {count} graphs")
    (args.out / "bad.g6").write_text("Bw\nA_\nA`\nB?\n")
    print("bad.g6: written")


if __name__ == "__main__":
    main()
