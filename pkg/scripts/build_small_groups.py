"""Regenerate src/bracekit/data/small_groups.json.

Groups of order <= 16 are listed in the usual small-group-library numbering.
Each group is built from a standard construction; the script checks that groups
of the same order are pairwise non-isomorphic before writing anything.
"""

import json
import sys
from pathlib import Path

from bracekit import groups as G

C = G.cyclic_group
X = G.direct_product


def pauli_group():
    def mul(p, q):
        (a, b), (c, d) = p, q
        return ((a[0] * c[0] + a[1] * d[0], a[0] * c[1] + a[1] * d[1]),
                (b[0] * c[0] + b[1] * d[0], b[0] * c[1] + b[1] * d[1]))

    x = ((0, 1), (1, 0))
    z = ((1, 0), (0, -1))
    i = ((1j, 0), (0, 1j))
    ident = ((1, 0), (0, 1))
    return G.group_from_generators([x, z, i], mul, ident)


def g16_3():
    # <a, b, c | a^4 = b^2 = c^2 = 1, ab = ba, bc = cb, c a c = ab>
    n = X(C(4), C(2))
    swap = [(a % 4) * 2 + ((b + a) % 2) for a in range(4) for b in range(2)]
    # index a*2+b encodes (a, b); swap sends (a, b) to (a, a+b)
    action = [list(range(8)), swap]
    return G.semidirect_product(n, C(2), action)


def catalogue():
    return [
        (1, [("C1", C(1))]),
        (2, [("C2", C(2))]),
        (3, [("C3", C(3))]),
        (4, [("C4", C(4)), ("C2xC2", X(C(2), C(2)))]),
        (5, [("C5", C(5))]),
        (6, [("S3", G.semidirect_cyclic(3, 2, 2)), ("C6", C(6))]),
        (7, [("C7", C(7))]),
        (8, [("C8", C(8)), ("C4xC2", X(C(4), C(2))), ("D8", G.semidirect_cyclic(4, 2, 3)),
             ("Q8", G.dicyclic_group(2)), ("C2xC2xC2", X(X(C(2), C(2)), C(2)))]),
        (9, [("C9", C(9)), ("C3xC3", X(C(3), C(3)))]),
        (10, [("D10", G.semidirect_cyclic(5, 2, 4)), ("C10", C(10))]),
        (11, [("C11", C(11))]),
        (12, [("Dic3", G.dicyclic_group(3)), ("C12", C(12)), ("A4", G.alternating_group(4)),
              ("D12", G.semidirect_cyclic(6, 2, 5)), ("C6xC2", X(C(6), C(2)))]),
        (13, [("C13", C(13))]),
        (14, [("D14", G.semidirect_cyclic(7, 2, 6)), ("C14", C(14))]),
        (15, [("C15", C(15))]),
        (16, [("C16", C(16)), ("C4xC4", X(C(4), C(4))), ("(C4xC2):C2", g16_3()),
              ("C4:C4", G.semidirect_cyclic(4, 4, 3)), ("C8xC2", X(C(8), C(2))),
              ("M16", G.semidirect_cyclic(8, 2, 5)), ("D16", G.semidirect_cyclic(8, 2, 7)),
              ("QD16", G.semidirect_cyclic(8, 2, 3)), ("Q16", G.dicyclic_group(4)),
              ("C4xC2xC2", X(X(C(4), C(2)), C(2))), ("C2xD8", X(C(2), G.semidirect_cyclic(4, 2, 3))),
              ("C2xQ8", X(C(2), G.dicyclic_group(2))), ("C4oD8", pauli_group()),
              ("C2xC2xC2xC2", X(X(X(C(2), C(2)), C(2)), C(2)))]),
    ]


def main(out: Path) -> None:
    records = []
    for order, entries in catalogue():
        for i, (name, g) in enumerate(entries):
            assert g.order == order, (name, g.order)
            for other_name, other in entries[:i]:
                if G.is_isomorphic(g, other):
                    sys.exit(f"{name} is isomorphic to {other_name}")
            records.append({"order": order, "index": i + 1, "name": name,
                            "table": [list(r) for r in g.table]})
    out.write_text(json.dumps({"groups": records}, separators=(",", ":")) + "\n")
    print(f"wrote {len(records)} groups to {out}")


if __name__ == "__main__":
    here = Path(__file__).resolve().parent.parent
    main(here / "src" / "bracekit" / "data" / "small_groups.json")
